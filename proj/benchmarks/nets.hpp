#pragma once

#include <Eigen/Dense>

#include "drnet/network.hpp"

namespace benchnets {

inline drnet::ReactionNetwork decaying_dimerization() {
  using drnet::Complex;
  return drnet::ReactionNetwork({"X", "Y", "Z"},
                                {
                                    {Complex{{1, 0, 0}}, Complex{{0, 2, 0}}, 9.0},
                                    {Complex{{0, 2, 0}}, Complex{{1, 0, 0}}, 1.0},
                                    {Complex{{1, 0, 0}}, Complex{{0, 0, 1}}, 2.0},
                                    {Complex{{0, 1, 0}}, Complex{{0, 0, 0}}, 1.0},
                                });
}

inline drnet::ReactionNetwork squares_exchange() {
  using drnet::Complex;
  return drnet::ReactionNetwork({"X", "Y"}, {
                                                {Complex{{2, 0}}, Complex{{0, 2}}, 4.0},
                                                {Complex{{0, 2}}, Complex{{2, 0}}, 1.0},
                                                {Complex{{0, 0}}, Complex{{1, 0}}, 1.0},
                                                {Complex{{1, 0}}, Complex{{0, 0}}, 0.5},
                                                {Complex{{0, 0}}, Complex{{0, 1}}, 2.0},
                                                {Complex{{0, 1}}, Complex{{0, 0}}, 0.5},
                                            });
}

inline Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

inline Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

}  // namespace benchnets
