#include "atorus/prolong.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>

#include <fmt/format.h>

namespace atorus {

std::vector<double> APoint::real_parts() const {
  std::vector<double> x;
  x.reserve(components.size());
  for (const auto& c : components) x.push_back(real_part(c));
  return x;
}

int MultiIndex::order() const {
  int s = 0;
  for (int v : p) s += v;
  return s;
}

double MultiIndex::factorial() const {
  double f = 1.0;
  for (int v : p) {
    for (int i = 2; i <= v; ++i) f *= i;
  }
  return f;
}

namespace {

void grade(int remaining, int m, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (static_cast<int>(prefix.size()) == m - 1) {
    prefix.push_back(remaining);
    out.push_back({prefix});
    prefix.pop_back();
    return;
  }
  for (int s = remaining; s >= 0; --s) {
    prefix.push_back(s);
    grade(remaining - s, m, prefix, out);
    prefix.pop_back();
  }
}

void check_point(const APoint& x, const LocalAlgebra& a, const Expr& g) {
  for (const auto& c : x.components) {
    if (c.dim() != a.dim()) throw DimensionMismatch("point component has wrong dimension");
  }
  if (max_var(g) > x.m()) {
    throw UnknownVariable(fmt::format("expression uses x{} but the point has {} components",
                                      max_var(g), x.m()));
  }
}

}  // namespace

std::vector<MultiIndex> multi_indices(int m, int max_order) {
  std::vector<MultiIndex> out;
  if (m <= 0) return out;
  for (int order = 1; order <= max_order; ++order) {
    std::vector<int> prefix;
    grade(order, m, prefix, out);
  }
  return out;
}

Element taylor_lift(const Expr& g, const APoint& x, const LocalAlgebra& a) {
  check_point(x, a, g);
  const StructureConstants& alg = a.alg;
  const int m = x.m();
  const std::vector<double> base = x.real_parts();

  Element out = alg.scalar(eval_real(g, base));

  std::vector<Element> rad;
  for (const auto& c : x.components) rad.push_back(radical_part(c));

  // D^p g is built from D^{p - e_j} g where j is the first nonzero slot of p;
  // the graded enumeration guarantees the parent is already present.
  std::map<std::vector<int>, Expr> partials;
  partials.emplace(std::vector<int>(m, 0), g);
  for (const MultiIndex& mi : multi_indices(m, a.nu() - 1)) {
    int j = 0;
    while (mi.p[j] == 0) ++j;
    std::vector<int> parent = mi.p;
    --parent[j];
    const Expr d = diff(partials.at(parent), j + 1);
    partials.emplace(mi.p, d);
    if (d.is_constant(0.0)) continue;

    Element mono = alg.one();
    for (int s = 0; s < m; ++s) {
      if (mi.p[s] > 0) mono = mul(mono, power(rad[s], mi.p[s], alg), alg);
    }
    out += (eval_real(d, base) / mi.factorial()) * mono;
  }
  return out;
}

namespace {

// Algebra arithmetic for evaluate(). Each primitive f at c + r is the
// finite series sum_{k < nu} f^(k)(c) r^k / k!.
struct AlgebraOps {
  const StructureConstants& alg;
  int nu;

  Element constant(double v) const { return alg.scalar(v); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return atorus::mul(a, b, alg); }
  Element div(const Element& a, const Element& b) const {
    return atorus::mul(a, invert(b, alg), alg);
  }
  Element pow(const Element& a, int k) const { return power(a, k, alg); }

  template <typename Deriv>
  Element series(const Element& a, Deriv&& derivative) const {
    const Element r = radical_part(a);
    const double c = real_part(a);
    Element out = alg.scalar(derivative(c, 0));
    Element rk = alg.one();
    double fact = 1.0;
    for (int k = 1; k < nu; ++k) {
      rk = atorus::mul(rk, r, alg);
      fact *= k;
      out += (derivative(c, k) / fact) * rk;
    }
    return out;
  }

  Element sin(const Element& a) const {
    return series(a, [](double c, int k) { return std::sin(c + k * M_PI / 2); });
  }
  Element cos(const Element& a) const {
    return series(a, [](double c, int k) { return std::cos(c + k * M_PI / 2); });
  }
  Element exp(const Element& a) const {
    return series(a, [](double c, int) { return std::exp(c); });
  }
  Element log(const Element& a) const {
    const double c = real_part(a);
    if (!(c > 0.0)) {
      throw DomainError(fmt::format("log of element with non-positive real part {:.17g}", c));
    }
    return series(a, [](double c0, int k) {
      if (k == 0) return std::log(c0);
      // (k-1)! (-1)^{k-1} / c^k
      double v = 1.0;
      for (int i = 2; i < k; ++i) v *= i;
      return ((k - 1) % 2 == 0 ? v : -v) / std::pow(c0, k);
    });
  }
};

}  // namespace

Element lift_eval(const Expr& g, const APoint& x, const LocalAlgebra& a) {
  check_point(x, a, g);
  if (max_var(g) == 0) return a.alg.scalar(eval_real(g, {}));
  return evaluate<Element>(g, std::span<const Element>(x.components),
                           AlgebraOps{a.alg, a.nu()});
}

Eigen::VectorXd flatten(const APoint& x) {
  if (x.components.empty()) return {};
  const int n = x.components.front().dim();
  Eigen::VectorXd v(n * x.m());
  for (int j = 0; j < x.m(); ++j) v.segment(j * n, n) = x.components[j].coeffs;
  return v;
}

APoint unflatten(const Eigen::VectorXd& v, int n, int m) {
  if (v.size() != n * m) throw DimensionMismatch("flat point has wrong length");
  APoint x;
  for (int j = 0; j < m; ++j) x.components.emplace_back(v.segment(j * n, n));
  return x;
}

RealMap lifted_map(const Expr& g, const LocalAlgebra& a, int m) {
  return [g, a, m](const Eigen::VectorXd& v) {
    return taylor_lift(g, unflatten(v, a.dim(), m), a).coeffs;
  };
}

double adiff_defect(const RealMap& f, const APoint& x, const StructureConstants& alg,
                    double h) {
  const int n = alg.dim();
  const int m = x.m();
  const Eigen::VectorXd v0 = flatten(x);
  Eigen::MatrixXd jac(n, n * m);
  for (int c = 0; c < n * m; ++c) {
    Eigen::VectorXd plus = v0, minus = v0;
    plus[c] += h;
    minus[c] -= h;
    const Eigen::VectorXd fp = f(plus), fm = f(minus);
    if (fp.size() != n || fm.size() != n) throw DimensionMismatch("map must return n values");
    jac.col(c) = (fp - fm) / (2.0 * h);
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXd l = alg.regular_basis(i);
    for (int j = 0; j < m; ++j) {
      const Eigen::MatrixXd block = jac.middleCols(j * n, n);
      worst = std::max(worst, (block * l - l * block).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

double e1_component_identity(const Expr& g, const APoint& x, const LocalAlgebra& a) {
  if (a.dim() < 2 || a.info.pseudobasis.empty()) {
    throw Error("the e1 identity needs an algebra with a nonzero radical");
  }
  const int e1 = a.info.pseudobasis.front();
  const Element lift = taylor_lift(g, x, a);
  const std::vector<double> base = x.real_parts();
  double linear = 0.0;
  for (int j = 0; j < x.m(); ++j) {
    linear += eval_real(diff(g, j + 1), base) * x.components[j][e1];
  }
  return std::abs(lift[e1] - linear);
}

namespace {

int find_label(const StructureConstants& alg, const std::string& name) {
  const auto& labels = alg.labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == name) return static_cast<int>(i);
  }
  throw SyntaxError(fmt::format("unknown basis name '{}'", name), 0);
}

}  // namespace

Element parse_element(const std::string& text, const StructureConstants& alg) {
  Element out = alg.zero();
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  bool first = true;
  skip();
  if (pos == text.size()) throw SyntaxError("empty element literal", pos);
  while (true) {
    skip();
    if (pos == text.size()) break;
    double sign = 1.0;
    if (!first) {
      if (text[pos] != '+' && text[pos] != '-') throw SyntaxError("expected '+'", pos);
      sign = text[pos] == '-' ? -1.0 : 1.0;
      ++pos;
      skip();
    }
    first = false;
    const char* begin = text.c_str() + pos;
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin) throw SyntaxError("expected a real coefficient", pos);
    pos += static_cast<std::size_t>(end - begin);
    skip();
    int index = 0;
    if (pos < text.size() && text[pos] != '+' && text[pos] != '-') {
      const std::size_t start = pos;
      while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
             text[pos] != '+' && text[pos] != '-') {
        ++pos;
      }
      index = find_label(alg, text.substr(start, pos - start));
    }
    out[index] += sign * value;
  }
  return out;
}

APoint parse_point(const std::string& text, const StructureConstants& alg) {
  APoint x;
  std::size_t start = 0;
  while (true) {
    const auto semi = text.find(';', start);
    x.components.push_back(parse_element(text.substr(start, semi - start), alg));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return x;
}

std::string format_element(const Element& e, const StructureConstants& alg) {
  auto num = [](double v) { return fmt::format("{:.17g}", v + 0.0); };
  std::string out = num(e[0]);
  for (int k = 1; k < e.dim(); ++k) {
    if (e[k] == 0.0) continue;
    out += " + " + num(e[k]) + " " + alg.labels()[k];
  }
  return out;
}

}  // namespace atorus
