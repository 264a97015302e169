#include "atorus/trig.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "atorus/errors.hpp"

namespace atorus {

std::int64_t TrigSpace::count(int dims, int degree) {
  std::int64_t total = 1;
  for (int i = 0; i < dims; ++i) {
    if (total > (std::int64_t{1} << 62) / (2 * degree + 1)) return -1;
    total *= 2 * degree + 1;
  }
  return total;
}

TrigSpace::TrigSpace(int dims, int degree) : dims_(dims), degree_(degree) {
  if (dims < 0 || degree < 0) throw Error("trig space needs N >= 0 and d >= 0");
  const std::int64_t total = count(dims, degree);
  if (total < 0 || total > (1 << 26)) throw SizeCapExceeded("trig space too large");
  size_ = static_cast<int>(total);

  freqs_.push_back(std::vector<int>(dims, 0));
  // Odometer over [-d, d]^N in lexicographic order, keeping representatives.
  std::vector<int> k(dims, -degree);
  for (std::int64_t it = 0; it < total; ++it) {
    int first = 0;
    while (first < dims && k[first] == 0) ++first;
    if (first < dims && k[first] > 0) freqs_.push_back(k);
    for (int i = dims - 1; i >= 0; --i) {
      if (k[i] < degree) {
        ++k[i];
        break;
      }
      k[i] = -degree;
    }
  }
}

double TrigSpace::derivative_factor(int t, int alpha) const {
  if (t == 0) return 0.0;
  const double k = frequency(t)[alpha];
  return is_sine(t) ? k : -k;
}

bool TrigSpace::supported_below(int t, int first) const {
  const auto& k = frequency(t);
  for (int i = first; i < dims_; ++i) {
    if (k[i] != 0) return false;
  }
  return true;
}

double TrigSpace::eval(int t, std::span<const double> theta) const {
  if (t == 0) return 1.0;
  const auto& k = frequency(t);
  double phase = 0.0;
  for (int i = 0; i < dims_; ++i) phase += k[i] * theta[i];
  return is_sine(t) ? std::sin(phase) : std::cos(phase);
}

Eigen::VectorXd TrigSpace::eval_all(std::span<const double> theta) const {
  Eigen::VectorXd out(size_);
  out[0] = 1.0;
  for (std::size_t q = 1; q < freqs_.size(); ++q) {
    double phase = 0.0;
    for (int i = 0; i < dims_; ++i) phase += freqs_[q][i] * theta[i];
    out[2 * q - 1] = std::cos(phase);
    out[2 * q] = std::sin(phase);
  }
  return out;
}

Eigen::VectorXd TrigSpace::gradient(const Eigen::VectorXd& coef,
                                    std::span<const double> theta) const {
  const Eigen::VectorXd values = eval_all(theta);
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(dims_);
  for (int t = 1; t < size_; ++t) {
    if (coef[t] == 0.0) continue;
    for (int a = 0; a < dims_; ++a) {
      grad[a] += coef[t] * derivative_factor(t, a) * values[partner(t)];
    }
  }
  return grad;
}

std::string TrigSpace::label(int t) const {
  if (t == 0) return "1";
  std::string k;
  for (int i = 0; i < dims_; ++i) k += (i ? "," : "") + std::to_string(frequency(t)[i]);
  return fmt::format("{}({})", is_sine(t) ? "sin" : "cos", k);
}

}  // namespace atorus
