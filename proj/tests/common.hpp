#pragma once

#include <random>
#include <string>
#include <vector>

#include "atorus/algebra.hpp"
#include "atorus/prolong.hpp"

namespace atorus::testing {

inline const std::vector<std::string>& presets() {
  static const std::vector<std::string> names{"dual", "trunc:3", "trunc:4", "square:2"};
  return names;
}

// Smooth on x1 > 0, any x2.
inline const std::vector<std::string>& corpus() {
  static const std::vector<std::string> exprs{
      "x1^2 + sin(x2)",
      "exp(x1)*sin(x2)",
      "cos(x1*x2)",
      "log(x1) + x2^3",
      "1/(1 + x1^2)",
      "sin(x1^2)",
      "exp(sin(x1))*cos(x2)",
      "x1/(2 + cos(x2))",
      "(x1 + x2)^4 - 3*x1*x2",
      "log(2 + sin(x1)*x2)",
  };
  return exprs;
}

inline Element random_element(std::mt19937_64& rng, int n, double real_lo, double real_hi) {
  std::uniform_real_distribution<double> re(real_lo, real_hi), rad(-1.0, 1.0);
  Element e(Eigen::VectorXd::Zero(n));
  e[0] = re(rng);
  for (int i = 1; i < n; ++i) e[i] = rad(rng);
  return e;
}

inline APoint random_point(std::mt19937_64& rng, int n, int m) {
  APoint x;
  for (int j = 0; j < m; ++j) x.components.push_back(random_element(rng, n, 0.5, 2.0));
  return x;
}

inline Element random_radical(std::mt19937_64& rng, const LocalAlgebra& a) {
  Element e = random_element(rng, a.dim(), 0.0, 0.0);
  e[0] = 0.0;
  return e;
}

}  // namespace atorus::testing
