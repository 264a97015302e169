#include "atorus/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>

namespace atorus {

Element& Element::operator+=(const Element& o) {
  if (o.dim() != dim()) throw DimensionMismatch("element dimensions differ");
  coeffs += o.coeffs;
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (o.dim() != dim()) throw DimensionMismatch("element dimensions differ");
  coeffs -= o.coeffs;
  return *this;
}

Element& Element::operator*=(double s) {
  coeffs *= s;
  return *this;
}

Element operator+(Element a, const Element& b) { return a += b; }
Element operator-(Element a, const Element& b) { return a -= b; }
Element operator-(Element a) {
  a.coeffs = -a.coeffs;
  return a;
}
Element operator*(double s, Element a) { return a *= s; }
Element operator*(Element a, double s) { return a *= s; }

StructureConstants::StructureConstants(std::vector<std::string> labels)
    : n_(static_cast<int>(labels.size())),
      labels_(std::move(labels)),
      c_(static_cast<std::size_t>(n_) * n_ * n_, 0.0) {
  if (n_ < 1) throw DimensionMismatch("algebra needs at least the unit");
}

StructureConstants::StructureConstants(std::vector<std::string> labels,
                                       std::vector<double> tensor)
    : StructureConstants(std::move(labels)) {
  if (tensor.size() != c_.size()) {
    throw DimensionMismatch(fmt::format("structure tensor has {} entries, expected {}",
                                        tensor.size(), c_.size()));
  }
  c_ = std::move(tensor);
}

void StructureConstants::set_product(int i, int j, const Eigen::VectorXd& product) {
  if (product.size() != n_) throw DimensionMismatch("product vector has wrong length");
  for (int k = 0; k < n_; ++k) {
    (*this)(i, j, k) = product[k];
    (*this)(j, i, k) = product[k];
  }
}

void StructureConstants::set_unit_row() {
  for (int j = 0; j < n_; ++j) {
    set_product(0, j, Eigen::VectorXd::Unit(n_, j));
  }
}

Element StructureConstants::basis(int i) const {
  return Element(Eigen::VectorXd::Unit(n_, i));
}

Element StructureConstants::scalar(double c) const {
  Element e = zero();
  e[0] = c;
  return e;
}

Eigen::MatrixXd StructureConstants::regular(const Element& a) const {
  if (a.dim() != n_) throw DimensionMismatch("element does not belong to this algebra");
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n_, n_);
  for (int i = 0; i < n_; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < n_; ++j) {
      for (int k = 0; k < n_; ++k) l(k, j) += a[i] * (*this)(i, j, k);
    }
  }
  return l;
}

Eigen::MatrixXd StructureConstants::regular_basis(int i) const { return regular(basis(i)); }

std::string to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Commutativity: return "commutativity";
    case Violation::Kind::Associativity: return "associativity";
    case Violation::Kind::Unit: return "unit";
    case Violation::Kind::Locality: return "locality";
  }
  return "unknown";
}

std::vector<Violation> validate_algebra(const StructureConstants& a, double tol) {
  const int n = a.dim();
  double scale = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(a(i, j, k)));
  const double eps = tol * (1.0 + scale);

  std::vector<Violation> out;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const double want = j == k ? 1.0 : 0.0;
      const double dev = std::max(std::abs(a(0, j, k) - want), std::abs(a(j, 0, k) - want));
      if (dev > eps) {
        out.push_back({Violation::Kind::Unit, {0, j, k}, dev,
                       fmt::format("unit violated at (0,{},{}): C[0][{}][{}]={:.17g}", j, k, j,
                                   k, a(0, j, k))});
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        const double dev = std::abs(a(i, j, k) - a(j, i, k));
        if (dev > eps) {
          out.push_back({Violation::Kind::Commutativity, {i, j, k}, dev,
                         fmt::format("commutativity violated at ({},{},{}): {:.17g} != {:.17g}",
                                     i, j, k, a(i, j, k), a(j, i, k))});
        }
      }
    }
  }
  const double assoc_eps = tol * (1.0 + scale * scale * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int m = 0; m < n; ++m) {
          double left = 0.0, right = 0.0;
          for (int l = 0; l < n; ++l) {
            left += a(i, j, l) * a(l, k, m);
            right += a(j, k, l) * a(i, l, m);
          }
          const double dev = std::abs(left - right);
          if (dev > assoc_eps) {
            out.push_back({Violation::Kind::Associativity, {i, j, k, m}, dev,
                           fmt::format("associativity violated at ({},{},{},{}): {:.17g} != {:.17g}",
                                       i, j, k, m, left, right)});
          }
        }
      }
    }
  }
  const int rad = static_cast<int>(radical_subspace(a).cols());
  if (rad != n - 1) {
    out.push_back({Violation::Kind::Locality, {rad, n - 1}, static_cast<double>(n - 1 - rad),
                   fmt::format("locality violated: radical dim {} != n-1 = {}", rad, n - 1)});
  }
  return out;
}

Element mul(const Element& a, const Element& b, const StructureConstants& alg) {
  const int n = alg.dim();
  if (a.dim() != n || b.dim() != n) throw DimensionMismatch("element dimension mismatch in mul");
  Element out = alg.zero();
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double ab = a[i] * b[j];
      if (ab == 0.0) continue;
      for (int k = 0; k < n; ++k) out[k] += ab * alg(i, j, k);
    }
  }
  return out;
}

Element power(const Element& a, int k, const StructureConstants& alg) {
  Element out = alg.one();
  for (int i = 0; i < k; ++i) out = mul(out, a, alg);
  return out;
}

Element invert(const Element& a, const StructureConstants& alg) {
  if (a.dim() != alg.dim()) throw DimensionMismatch("element dimension mismatch in invert");
  const double c = a[0];
  if (!(std::abs(c) > 1e-9 * (1.0 + a.coeffs.norm()))) {
    throw NonUnit(fmt::format("element with real part {:.17g} is not a unit", c));
  }
  // a = c (1 + q) with q = r / c nilpotent: a^{-1} = (1/c) sum_k (-q)^k.
  const Element step = (-1.0 / c) * radical_part(a);
  Element term = alg.one();
  Element sum = alg.one();
  for (int k = 1; k < alg.dim(); ++k) {
    term = mul(term, step, alg);
    sum += term;
  }
  return (1.0 / c) * sum;
}

std::optional<int> nilpotency_index(const Element& a, const StructureConstants& alg, double tol) {
  const double base = std::max(1.0, a.coeffs.cwiseAbs().maxCoeff());
  Element p = a;
  for (int s = 1; s <= alg.dim(); ++s) {
    if (s > 1) p = mul(p, a, alg);
    if (p.coeffs.cwiseAbs().maxCoeff() <= tol * std::pow(base, s)) return s;
  }
  return std::nullopt;
}

double real_part(const Element& a) { return a[0]; }

Element radical_part(const Element& a) {
  Element r = a;
  r[0] = 0.0;
  return r;
}

namespace linalg {

namespace {

Eigen::MatrixXd svd_u(const Eigen::MatrixXd& m, Eigen::VectorXd& sigma) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  sigma = svd.singularValues();
  return svd.matrixU();
}

}  // namespace

Eigen::MatrixXd canonical(const Eigen::MatrixXd& q, double tol) {
  const int n = static_cast<int>(q.rows());
  const int k = static_cast<int>(q.cols());
  if (k == 0) return Eigen::MatrixXd(n, 0);
  // Pivoted Gram-Schmidt over the columns P e_i of the projector P = q q^T.
  // P e_i = q c_i with c_i = q^T e_i, and q is orthonormal, so the work is
  // done on the k-dimensional coefficient vectors c_i.
  Eigen::MatrixXd coef = q.transpose();
  std::vector<std::pair<int, Eigen::VectorXd>> picked;
  std::vector<bool> used(n, false);
  for (int step = 0; step < k; ++step) {
    const Eigen::VectorXd norms = coef.colwise().norm().transpose();
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!used[i]) best = std::max(best, norms[i]);
    }
    if (best <= tol) break;
    int pivot = 0;
    while (used[pivot] || norms[pivot] < best * (1.0 - 1e-9)) ++pivot;
    Eigen::VectorXd u = coef.col(pivot) / norms[pivot];
    used[pivot] = true;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& [idx, w] : picked) u -= w.dot(u) * w;
      u.normalize();
    }
    coef -= u * (u.transpose() * coef);
    picked.emplace_back(pivot, u);
  }
  std::sort(picked.begin(), picked.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Eigen::MatrixXd out(n, static_cast<int>(picked.size()));
  for (int i = 0; i < out.cols(); ++i) {
    Eigen::VectorXd v = q * picked[i].second;
    if (v[picked[i].first] < 0) v = -v;
    out.col(i) = v;
  }
  return out;
}

Eigen::MatrixXd orth(const Eigen::MatrixXd& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return Eigen::MatrixXd(m.rows(), 0);
  Eigen::VectorXd sigma;
  Eigen::MatrixXd u = svd_u(m, sigma);
  const double cut = tol * std::max(1.0, sigma.size() ? sigma[0] : 0.0);
  int r = 0;
  while (r < sigma.size() && sigma[r] > cut) ++r;
  return canonical(u.leftCols(r), tol);
}

Eigen::MatrixXd null(const Eigen::MatrixXd& m, double tol) {
  const int cols = static_cast<int>(m.cols());
  if (m.rows() == 0) return canonical(Eigen::MatrixXd::Identity(cols, cols), tol);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double smax = sigma.size() ? sigma[0] : 0.0;
  int r = 0;
  while (r < sigma.size() && sigma[r] > tol * smax && smax > 0.0) ++r;
  return canonical(svd.matrixV().rightCols(cols - r), tol);
}

int rank(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double cut = tol * std::max(1.0, sigma[0]);
  int r = 0;
  while (r < sigma.size() && sigma[r] > cut) ++r;
  return r;
}

double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  if (a.cols() == 0) return 0.0;
  const Eigen::MatrixXd resid = b - a * (a.transpose() * b);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(resid);
  return svd.singularValues()[0];
}

}  // namespace linalg

Eigen::MatrixXd radical_subspace(const StructureConstants& alg) {
  const int n = alg.dim();
  Eigen::VectorXd traces(n);
  for (int k = 0; k < n; ++k) traces[k] = alg.regular_basis(k).trace();
  Eigen::MatrixXd gram(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      double t = 0.0;
      for (int k = 0; k < n; ++k) t += alg(i, j, k) * traces[k];
      gram(i, j) = t;
    }
  }
  return linalg::null(gram, 1e-9);
}

namespace {

std::vector<Element> as_elements(const Eigen::MatrixXd& cols) {
  std::vector<Element> out;
  out.reserve(cols.cols());
  for (int i = 0; i < cols.cols(); ++i) out.emplace_back(cols.col(i));
  return out;
}

}  // namespace

std::vector<Element> radical_basis(const StructureConstants& alg) {
  return as_elements(radical_subspace(alg));
}

std::vector<int> RadicalFiltration::dims() const {
  std::vector<int> out;
  for (const auto& p : powers) out.push_back(static_cast<int>(p.cols()));
  return out;
}

RadicalFiltration radical_filtration(const StructureConstants& alg) {
  const int n = alg.dim();
  RadicalFiltration f;
  const Eigen::MatrixXd rad = radical_subspace(alg);
  f.powers.push_back(rad);
  Eigen::MatrixXd cur = rad;
  while (cur.cols() > 0 && static_cast<int>(f.powers.size()) <= n) {
    Eigen::MatrixXd products(n, cur.cols() * rad.cols());
    int c = 0;
    for (int i = 0; i < cur.cols(); ++i) {
      for (int j = 0; j < rad.cols(); ++j) {
        products.col(c++) = mul(Element(cur.col(i)), Element(rad.col(j)), alg).coeffs;
      }
    }
    cur = linalg::orth(products, 1e-9);
    f.powers.push_back(cur);
  }
  f.nu = static_cast<int>(f.powers.size());
  return f;
}

bool StandardBasisInfo::is_socle(int k) const {
  return std::find(socle.begin(), socle.end(), k) != socle.end();
}

namespace {

// Exponent vectors of total degree `degree` in r variables, in descending
// lexicographic order: (d,0,..,0) first.
void compositions(int degree, int r, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == r - 1) {
    prefix.push_back(degree);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int s = degree; s >= 0; --s) {
    prefix.push_back(s);
    compositions(degree - s, r, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

StandardBasisInfo standard_basis(const StructureConstants& alg) {
  const int n = alg.dim();
  const RadicalFiltration filt = radical_filtration(alg);
  const Eigen::MatrixXd& rad = filt.powers.front();
  const Eigen::MatrixXd rad2 =
      filt.powers.size() > 1 ? filt.powers[1] : Eigen::MatrixXd(n, 0);

  // Pseudobasis: orthogonal complement of rad^2 inside rad.
  const Eigen::MatrixXd complement = rad - rad2 * (rad2.transpose() * rad);
  const Eigen::MatrixXd gens = linalg::orth(complement, 1e-9);
  const int r = static_cast<int>(gens.cols());

  StandardBasisInfo info;
  info.nu = filt.nu;
  info.basis = Eigen::MatrixXd::Zero(n, n);
  info.basis(0, 0) = 1.0;

  Eigen::MatrixXd accepted(n, 0);
  int found = 0;
  for (int degree = 1; degree < filt.nu && found < n - 1; ++degree) {
    std::vector<std::vector<int>> exps;
    std::vector<int> prefix;
    compositions(degree, r, prefix, exps);
    for (const auto& s : exps) {
      if (found == n - 1) break;
      Element m = alg.one();
      for (int l = 0; l < r; ++l) m = mul(m, power(Element(gens.col(l)), s[l], alg), alg);
      const double norm = m.coeffs.norm();
      if (norm <= 1e-9) continue;
      Eigen::VectorXd resid = m.coeffs / norm;
      for (int pass = 0; pass < 2; ++pass) resid -= accepted * (accepted.transpose() * resid);
      if (resid.norm() <= 1e-9) continue;
      ++found;
      accepted.conservativeResize(n, found);
      accepted.col(found - 1) = resid.normalized();
      info.basis.col(found) = m.coeffs;
      info.monomial[found] = s;
    }
  }
  if (found != n - 1) {
    throw SpanFailure(fmt::format(
        "pseudobasis monomials span {} of {} radical dimensions; algebra is not local", found,
        n - 1));
  }
  for (int l = 1; l <= r; ++l) info.pseudobasis.push_back(l);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(info.basis);
  info.to_standard = lu.inverse();

  for (int k = 1; k < n; ++k) {
    const Element ek(info.basis.col(k));
    bool annihilates = true;
    for (int l = 0; l < r && annihilates; ++l) {
      const Element gl(info.basis.col(l + 1));
      const double scale = std::max(1.0, ek.coeffs.norm() * gl.coeffs.norm());
      annihilates = mul(ek, gl, alg).coeffs.cwiseAbs().maxCoeff() <= 1e-9 * scale;
    }
    (annihilates ? info.socle : info.breve).push_back(k);
  }
  return info;
}

StructureConstants in_standard_basis(const StructureConstants& alg,
                                     const StandardBasisInfo& info) {
  const int n = alg.dim();
  const bool same =
      (info.basis - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() <= 1e-12;
  std::vector<std::string> labels;
  labels.push_back(alg.labels().front());
  for (int k = 1; k < n; ++k) {
    labels.push_back(same ? alg.labels()[k] : fmt::format("e{}", k));
  }
  StructureConstants out(labels);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const Element p = mul(Element(info.basis.col(i)), Element(info.basis.col(j)), alg);
      Eigen::VectorXd q = info.to_standard * p.coeffs;
      for (int k = 0; k < n; ++k) {
        if (std::abs(q[k]) < 1e-14) q[k] = 0.0;
      }
      out.set_product(i, j, q);
    }
  }
  out.set_unit_row();
  return out;
}

std::vector<Element> socle_basis(const StructureConstants& alg, const StandardBasisInfo&) {
  const int n = alg.dim();
  const Eigen::MatrixXd rad = radical_subspace(alg);
  const int k = static_cast<int>(rad.cols());
  if (k == 0) return {};
  // x = rad * c with (L_{r_l} rad) c = 0 for every radical basis vector r_l.
  Eigen::MatrixXd stacked(n * k, k);
  for (int l = 0; l < k; ++l) {
    stacked.middleRows(l * n, n) = alg.regular(Element(rad.col(l))) * rad;
  }
  const Eigen::MatrixXd ker = linalg::null(stacked, 1e-9);
  return as_elements(linalg::orth(rad * ker, 1e-9));
}

LocalAlgebra make_local_algebra(const StructureConstants& input) {
  const auto violations = validate_algebra(input);
  if (!violations.empty()) {
    std::string msg = "invalid algebra:";
    for (const auto& v : violations) msg += "\n  " + v.message;
    throw Error(msg);
  }
  LocalAlgebra la;
  la.input = input;
  la.input_info = standard_basis(input);
  la.alg = in_standard_basis(input, la.input_info);

  const int n = input.dim();
  la.info = la.input_info;
  la.info.basis = Eigen::MatrixXd::Identity(n, n);
  la.info.to_standard = Eigen::MatrixXd::Identity(n, n);

  const auto socle = socle_basis(la.alg, la.info);
  la.socle = Eigen::MatrixXd(n, static_cast<int>(socle.size()));
  for (int i = 0; i < la.socle.cols(); ++i) la.socle.col(i) = socle[i].coeffs;
  return la;
}

StructureConstants truncated(int k) {
  if (k < 1) throw Error("trunc:k needs k >= 1");
  std::vector<std::string> labels{"1"};
  for (int i = 1; i < k; ++i) labels.push_back(fmt::format("e{}", i));
  StructureConstants c(labels);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      Eigen::VectorXd p = Eigen::VectorXd::Zero(k);
      if (i + j < k) p[i + j] = 1.0;
      c.set_product(i, j, p);
    }
  }
  return c;
}

StructureConstants dual_numbers() { return truncated(2); }

StructureConstants square_zero(int r) {
  if (r < 0) throw Error("square:r needs r >= 0");
  std::vector<std::string> labels{"1"};
  for (int i = 1; i <= r; ++i) labels.push_back(fmt::format("e{}", i));
  StructureConstants c(labels);
  c.set_unit_row();
  return c;
}

namespace {

int parse_positive(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty()) throw Error(fmt::format("bad {} '{}'", what, s));
  return v;
}

}  // namespace

StructureConstants preset(const std::string& name) {
  if (name == "dual") return dual_numbers();
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string kind = name.substr(0, colon);
    const int arg = parse_positive(name.substr(colon + 1), "preset parameter");
    if (kind == "trunc" && arg >= 1 && arg <= 16) return truncated(arg);
    if (kind == "square" && arg >= 0 && arg <= 15) return square_zero(arg);
  }
  throw Error(fmt::format("unknown preset '{}' (expected dual, trunc:k, square:r)", name));
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

StructureConstants parse_algebra_spec(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n = -1;
  std::vector<std::string> labels;
  std::optional<StructureConstants> alg;
  std::vector<std::vector<bool>> seen;

  auto fail = [&](const std::string& msg) -> SpecParseError {
    return SpecParseError(fmt::format("line {}: {}", lineno, msg));
  };
  auto find_label = [&](const std::string& name) {
    auto it = std::find(labels.begin(), labels.end(), name);
    if (it == labels.end()) throw fail(fmt::format("unknown basis name '{}'", name));
    return static_cast<int>(it - labels.begin());
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto tokens = split_ws(line);
    if (tokens.empty()) continue;

    if (n < 0) {
      if (tokens.size() != 2 || tokens[0] != "algebra" || tokens[1].rfind("n=", 0) != 0) {
        throw fail("expected 'algebra n=<int>'");
      }
      try {
        n = parse_positive(tokens[1].substr(2), "dimension");
      } catch (const Error& e) {
        throw fail(e.what());
      }
      if (n < 1) throw fail("dimension must be positive");
      continue;
    }
    if (labels.empty()) {
      if (tokens[0] != "basis") throw fail("expected 'basis <names...>'");
      labels.assign(tokens.begin() + 1, tokens.end());
      if (static_cast<int>(labels.size()) != n) {
        throw fail(fmt::format("basis lists {} names, expected {}", labels.size(), n));
      }
      if (labels[0] != "1") throw fail("first basis name must be '1'");
      for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if (labels[i] == labels[j]) throw fail("duplicate basis name '" + labels[i] + "'");
        }
      }
      alg.emplace(labels);
      alg->set_unit_row();
      seen.assign(n, std::vector<bool>(n, false));
      continue;
    }
    if (tokens[0] != "mul") throw fail("expected 'mul <a> <b> = ...'");
    // Re-split the right-hand side so "2*e1+3*e2" and "2*e1 + 3*e2" both parse.
    const auto eq = line.find('=');
    const auto lhs = split_ws(line.substr(0, eq == std::string::npos ? line.size() : eq));
    if (eq == std::string::npos || lhs.size() != 3) throw fail("expected 'mul <a> <b> = ...'");
    const int i = find_label(lhs[1]);
    const int j = find_label(lhs[2]);
    if (i == 0 || j == 0) throw fail("products with the unit are implicit");
    if (seen[i][j]) throw fail(fmt::format("product {} {} given twice", lhs[1], lhs[2]));
    seen[i][j] = seen[j][i] = true;

    Eigen::VectorXd product = Eigen::VectorXd::Zero(n);
    std::string rhs = line.substr(eq + 1);
    rhs.erase(std::remove_if(rhs.begin(), rhs.end(), [](unsigned char c) { return std::isspace(c); }),
              rhs.end());
    if (rhs.empty()) throw fail("empty product");
    std::size_t pos = 0;
    while (pos < rhs.size()) {
      double sign = 1.0;
      if (pos > 0) {
        if (rhs[pos] != '+' && rhs[pos] != '-') throw fail("expected '+' between terms");
        sign = rhs[pos] == '-' ? -1.0 : 1.0;
        ++pos;
      }
      const auto next = rhs.find_first_of("+-", rhs.find('*', pos) == std::string::npos
                                                     ? pos
                                                     : rhs.find('*', pos));
      const std::string term = rhs.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      const auto star = term.find('*');
      if (star == std::string::npos) throw fail("term '" + term + "' must be <coef>*<name>");
      double coef = 0.0;
      std::size_t used = 0;
      try {
        coef = std::stod(term.substr(0, star), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != star || star == 0) throw fail("bad coefficient in '" + term + "'");
      product[find_label(term.substr(star + 1))] += sign * coef;
      pos = next == std::string::npos ? rhs.size() : next;
    }
    alg->set_product(i, j, product);
  }
  if (!alg) throw SpecParseError("incomplete algebra spec: missing 'algebra' or 'basis' line");
  return *alg;
}

StructureConstants load_algebra_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open algebra spec '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_algebra_spec(ss.str());
}

}  // namespace atorus
