#include "drnet/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

namespace drnet {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      return out;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
}

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_name(const std::string& s) {
  if (s.empty() || !is_name_start(s[0])) return false;
  for (char c : s)
    if (!is_name_char(c)) return false;
  return true;
}

struct Statement {
  int line;
  std::string text;
};

// Accumulates parsed statements before the network can be assembled.
struct Builder {
  std::vector<std::string> species;
  std::map<std::string, int> species_index;
  std::map<std::string, int> species_line;
  struct RawReaction {
    Complex source, product;
    double rate;
    int line;
  };
  std::vector<RawReaction> reactions;
  std::map<std::string, std::pair<double, int>> init;  // name -> (value, line)
  bool saw_reaction_statement = false;
  bool saw_init_statement = false;
  std::vector<ParseDiagnostic> diags;

  void error(int line, std::string msg) { diags.push_back({Severity::error, line, std::move(msg)}); }
  void warn(int line, std::string msg) { diags.push_back({Severity::warning, line, std::move(msg)}); }
};

// A term is "[coeff] name" with optional whitespace between; the bare token
// "0" stands for the empty complex and may only appear alone.
bool parse_complex(Builder& b, const std::string& text, int line, Complex& out) {
  out.counts.assign(b.species.size(), 0);
  const auto terms = split(text, '+');
  if (terms.size() == 1 && trim(terms[0]) == "0") return true;
  bool ok = true;
  for (const auto& raw : terms) {
    std::string term = trim(raw);
    if (term.empty()) {
      b.error(line, "empty term in complex '" + trim(text) + "'");
      ok = false;
      continue;
    }
    if (term == "0") {
      b.error(line, "'0' denotes the empty complex and cannot be combined with other terms");
      ok = false;
      continue;
    }
    std::size_t i = 0;
    long coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(term[0]))) {
      char* end = nullptr;
      coeff = std::strtol(term.c_str(), &end, 10);
      i = static_cast<std::size_t>(end - term.c_str());
      if (coeff <= 0) {
        b.error(line, "stoichiometric coefficient must be a positive integer in '" + term + "'");
        ok = false;
        continue;
      }
    }
    while (i < term.size() && (term[i] == ' ' || term[i] == '\t')) ++i;
    std::string name = term.substr(i);
    if (!valid_name(name)) {
      b.error(line, "malformed species term '" + term + "'");
      ok = false;
      continue;
    }
    auto it = b.species_index.find(name);
    if (it == b.species_index.end()) {
      b.error(line, "unknown species '" + name + "'");
      ok = false;
      continue;
    }
    out.counts[static_cast<std::size_t>(it->second)] += static_cast<int>(coeff);
  }
  return ok;
}

bool parse_rate(Builder& b, const std::string& text, int line, double& out) {
  std::string t = trim(text);
  if (t.empty()) {
    b.error(line, "missing rate constant");
    return false;
  }
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || !std::isfinite(out)) {
    b.error(line, "rate constant '" + t + "' is not a finite number");
    return false;
  }
  if (out < 0.0) {
    b.error(line, "rate constant '" + t + "' is negative");
    return false;
  }
  return true;
}

void handle_species(Builder& b, const std::string& rest, int line) {
  for (const auto& raw : split(rest, ',')) {
    std::string name = trim(raw);
    if (!valid_name(name)) {
      b.error(line, name.empty() ? "empty species name" : "invalid species name '" + name + "'");
      continue;
    }
    if (b.species_index.count(name)) {
      b.error(line, "duplicate species declaration '" + name + "' (first declared on line " +
                        std::to_string(b.species_line[name]) + ")");
      continue;
    }
    b.species_index[name] = static_cast<int>(b.species.size());
    b.species_line[name] = line;
    b.species.push_back(name);
  }
}

void handle_init(Builder& b, const std::string& rest, int line) {
  b.saw_init_statement = true;
  for (const auto& raw : split(rest, ',')) {
    std::string item = trim(raw);
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      b.error(line, "init entry '" + item + "' is not of the form NAME = value");
      continue;
    }
    std::string name = trim(item.substr(0, eq));
    std::string val = trim(item.substr(eq + 1));
    if (!b.species_index.count(name)) {
      b.error(line, "unknown species '" + name + "' in init block");
      continue;
    }
    char* end = nullptr;
    double v = std::strtod(val.c_str(), &end);
    if (val.empty() || end != val.c_str() + val.size() || !std::isfinite(v)) {
      b.error(line, "init value '" + val + "' is not a finite number");
      continue;
    }
    if (v <= 0.0) {
      b.error(line, "init value for '" + name + "' must be strictly positive");
      continue;
    }
    if (b.init.count(name)) {
      b.error(line, "duplicate init entry for '" + name + "'");
      continue;
    }
    b.init[name] = {v, line};
  }
}

void handle_reaction(Builder& b, const std::string& text, int line) {
  b.saw_reaction_statement = true;
  bool reversible = false;
  std::size_t arrow = text.find("<->");
  std::size_t arrow_len = 3;
  if (arrow != std::string::npos) {
    reversible = true;
  } else {
    arrow = text.find("->");
    arrow_len = 2;
  }
  std::string lhs = text.substr(0, arrow);
  std::string rest = text.substr(arrow + arrow_len);
  auto colon = rest.find(':');
  if (colon == std::string::npos) {
    b.error(line, "reaction is missing ': rate'");
    return;
  }
  std::string rhs = rest.substr(0, colon);
  std::string rates = rest.substr(colon + 1);

  Complex src, dst;
  bool ok = parse_complex(b, lhs, line, src);
  ok = parse_complex(b, rhs, line, dst) && ok;

  auto rate_parts = split(rates, ',');
  const std::size_t want = reversible ? 2 : 1;
  if (rate_parts.size() != want) {
    b.error(line, reversible ? "'<->' needs two rates 'fwd, rev'" : "'->' needs exactly one rate");
    return;
  }
  std::vector<double> k(want);
  for (std::size_t i = 0; i < want; ++i) ok = parse_rate(b, rate_parts[i], line, k[i]) && ok;
  if (!ok) return;

  if (src == dst) {
    b.error(line, "reaction source equals product");
    return;
  }
  b.reactions.push_back({src, dst, k[0], line});
  if (reversible) b.reactions.push_back({dst, src, k[1], line});
}

}  // namespace

ParseResult parse_network(const NetworkSource& src, bool require_init) {
  Builder b;
  const auto lines = split(src.text, '\n');

  // First pass: species declarations can only be processed in order, so
  // gather statements with their line numbers and dispatch sequentially.
  std::vector<Statement> statements;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string line = lines[li];
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    for (const auto& stmt : split(line, ';')) {
      std::string t = trim(stmt);
      if (!t.empty()) statements.push_back({static_cast<int>(li) + 1, t});
    }
  }

  for (const auto& [line, text] : statements) {
    if (text.rfind("species", 0) == 0 && (text.size() == 7 || !is_name_char(text[7]))) {
      handle_species(b, text.substr(7), line);
    } else if (text.rfind("init", 0) == 0 && (text.size() == 4 || !is_name_char(text[4]))) {
      handle_init(b, text.substr(4), line);
    } else if (text.find("->") != std::string::npos) {
      handle_reaction(b, text, line);
    } else {
      b.error(line, "unrecognized statement '" + text + "'");
    }
  }

  const int last_line = lines.empty() ? 1 : static_cast<int>(lines.size());
  if (b.species.empty()) b.error(last_line, "no species declared");
  if (!b.saw_reaction_statement && !b.species.empty())
    b.error(last_line, "no reactions declared");

  ParseResult result;
  if (b.saw_init_statement) {
    for (const auto& name : b.species)
      if (!b.init.count(name)) b.error(last_line, "missing init value for species '" + name + "'");
  } else if (require_init) {
    b.error(last_line, "missing init block");
  }

  bool has_error = false;
  for (const auto& d : b.diags) has_error = has_error || d.severity == Severity::error;

  if (!has_error) {
    std::vector<Reaction> rs;
    rs.reserve(b.reactions.size());
    for (const auto& r : b.reactions) rs.push_back({r.source, r.product, r.rate});
    result.network.emplace(b.species, std::move(rs));
    if (b.saw_init_statement) {
      Eigen::VectorXd c0(static_cast<Eigen::Index>(b.species.size()));
      for (std::size_t i = 0; i < b.species.size(); ++i)
        c0[static_cast<Eigen::Index>(i)] = b.init.at(b.species[i]).first;
      result.init = c0;
    }
  }
  result.diagnostics = std::move(b.diags);
  return result;
}

std::vector<ParseDiagnostic> validate_network(const ReactionNetwork& net) {
  std::vector<ParseDiagnostic> out;
  const int d = net.dim();

  std::vector<bool> used(static_cast<std::size_t>(d), false);
  for (const auto& z : net.complexes())
    for (int i = 0; i < d; ++i)
      if (z.counts[static_cast<std::size_t>(i)] > 0) used[static_cast<std::size_t>(i)] = true;
  for (int i = 0; i < d; ++i)
    if (!used[static_cast<std::size_t>(i)])
      out.push_back({Severity::error, 1,
                     "species '" + net.species()[static_cast<std::size_t>(i)] +
                         "' appears in no complex"});

  std::vector<bool> in_reaction(net.complexes().size(), false);
  for (std::size_t k = 0; k < net.reactions().size(); ++k) {
    in_reaction[static_cast<std::size_t>(net.source_index(static_cast<int>(k)))] = true;
    in_reaction[static_cast<std::size_t>(net.product_index(static_cast<int>(k)))] = true;
  }
  for (std::size_t i = 0; i < net.complexes().size(); ++i)
    if (!in_reaction[i])
      out.push_back({Severity::error, 1,
                     "complex '" + net.format_complex(static_cast<int>(i)) +
                         "' appears in no reaction"});

  for (std::size_t k = 0; k < net.reactions().size(); ++k)
    if (net.reactions()[k].rate == 0.0)
      out.push_back({Severity::warning, 1,
                     "reaction " + net.format_complex(net.source_index(static_cast<int>(k))) +
                         " -> " + net.format_complex(net.product_index(static_cast<int>(k))) +
                         " has zero rate"});
  return out;
}

std::string pretty_print(const ReactionNetwork& net, const Eigen::VectorXd* init) {
  std::ostringstream os;
  os << "species ";
  for (int i = 0; i < net.dim(); ++i)
    os << (i ? ", " : "") << net.species()[static_cast<std::size_t>(i)];
  os << "\n";
  char buf[64];
  for (const auto& r : net.reactions()) {
    std::snprintf(buf, sizeof buf, "%.17g", r.rate);
    os << net.format_complex(r.source) << " -> " << net.format_complex(r.product) << " : " << buf
       << "\n";
  }
  if (init) {
    os << "init ";
    for (int i = 0; i < net.dim(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", (*init)[i]);
      os << (i ? ", " : "") << net.species()[static_cast<std::size_t>(i)] << " = " << buf;
    }
    os << "\n";
  }
  return os.str();
}

std::string to_string(const ParseDiagnostic& d, const std::string& origin) {
  std::ostringstream os;
  os << origin << ":" << d.line << ": " << (d.severity == Severity::error ? "error" : "warning")
     << ": " << d.message;
  return os.str();
}

}  // namespace drnet
