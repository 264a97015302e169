#pragma once

// Real trigonometric polynomials of degree <= d on the torus R^N / (2 pi Z)^N.
//
// Basis: index 0 is the constant 1; frequency representatives k (one per
// +-k pair, first nonzero entry positive) are enumerated lexicographically,
// and representative q >= 1 owns indices 2q-1 (cos k.theta) and 2q
// (sin k.theta). The space has (2d+1)^N elements.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace atorus {

class TrigSpace {
 public:
  TrigSpace(int dims, int degree);

  /// (2d+1)^N, or -1 when it does not fit in 63 bits.
  static std::int64_t count(int dims, int degree);

  int dims() const { return dims_; }
  int degree() const { return degree_; }
  int size() const { return size_; }

  const std::vector<int>& frequency(int t) const { return freqs_[(t + 1) / 2]; }
  bool is_constant(int t) const { return t == 0; }
  bool is_sine(int t) const { return t > 0 && t % 2 == 0; }
  /// cos <-> sin of the same frequency; the constant maps to itself.
  int partner(int t) const { return t == 0 ? 0 : (t % 2 == 1 ? t + 1 : t - 1); }

  /// d/dtheta^alpha of basis function t is factor * basis(partner(t)).
  double derivative_factor(int t, int alpha) const;

  /// True when the frequency vanishes on every coordinate >= first.
  bool supported_below(int t, int first) const;

  double eval(int t, std::span<const double> theta) const;

  /// Values of every basis function at theta.
  Eigen::VectorXd eval_all(std::span<const double> theta) const;

  /// Gradient of sum_t coef[t] basis_t at theta.
  Eigen::VectorXd gradient(const Eigen::VectorXd& coef, std::span<const double> theta) const;

  std::string label(int t) const;

 private:
  int dims_;
  int degree_;
  int size_;
  std::vector<std::vector<int>> freqs_;
};

}  // namespace atorus
