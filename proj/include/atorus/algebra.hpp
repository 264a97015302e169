#pragma once

// Finite-dimensional local commutative unital algebras over R, given by
// structure constants, and their structural invariants: radical, its power
// filtration, the standard (monomial) basis and the socle.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "atorus/errors.hpp"

namespace atorus {

/// An element of A as a coefficient vector in the algebra's basis.
/// coeffs[0] multiplies the unit.
struct Element {
  Eigen::VectorXd coeffs;

  Element() = default;
  explicit Element(Eigen::VectorXd c) : coeffs(std::move(c)) {}

  int dim() const { return static_cast<int>(coeffs.size()); }
  double operator[](int i) const { return coeffs[i]; }
  double& operator[](int i) { return coeffs[i]; }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(double s);
};

Element operator+(Element a, const Element& b);
Element operator-(Element a, const Element& b);
Element operator-(Element a);
Element operator*(double s, Element a);
Element operator*(Element a, double s);

/// mul(e_i, e_j) = sum_k C(i, j, k) e_k. Index 0 is the unit.
class StructureConstants {
 public:
  StructureConstants() = default;
  /// Zero tensor with the given labels; labels[0] names the unit.
  explicit StructureConstants(std::vector<std::string> labels);
  /// tensor holds n^3 entries in (i, j, k) row-major order.
  StructureConstants(std::vector<std::string> labels, std::vector<double> tensor);

  int dim() const { return n_; }
  const std::vector<std::string>& labels() const { return labels_; }

  double operator()(int i, int j, int k) const { return c_[index(i, j, k)]; }
  double& operator()(int i, int j, int k) { return c_[index(i, j, k)]; }

  /// Sets mul(e_i, e_j) = mul(e_j, e_i) = product.
  void set_product(int i, int j, const Eigen::VectorXd& product);
  /// Writes the implicit unit row: mul(e_0, e_j) = e_j.
  void set_unit_row();

  Element zero() const { return Element(Eigen::VectorXd::Zero(n_)); }
  Element one() const { return basis(0); }
  Element basis(int i) const;
  Element scalar(double c) const;

  /// Regular representation: column j of L_a is mul(a, e_j).
  Eigen::MatrixXd regular(const Element& a) const;
  Eigen::MatrixXd regular_basis(int i) const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
  }

  int n_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> c_;
};

struct Violation {
  enum class Kind { Commutativity, Associativity, Unit, Locality };
  Kind kind;
  std::vector<int> indices;
  double magnitude = 0.0;
  std::string message;
};

std::string to_string(Violation::Kind kind);

/// Every violated axiom; an empty list means the algebra is a valid local
/// commutative unital algebra.
std::vector<Violation> validate_algebra(const StructureConstants& a, double tol = 1e-10);

Element mul(const Element& a, const Element& b, const StructureConstants& alg);

/// Raises to a non-negative integer power by repeated multiplication.
Element power(const Element& a, int k, const StructureConstants& alg);

/// Unit threshold: |a_0| > 1e-9 * (1 + |a|). Throws NonUnit otherwise.
Element invert(const Element& a, const StructureConstants& alg);

/// Least S <= n with a^S = 0 (entries below tol relative to 1 + |a|^S).
std::optional<int> nilpotency_index(const Element& a, const StructureConstants& alg,
                                    double tol = 1e-10);

double real_part(const Element& a);
Element radical_part(const Element& a);

/// Orthonormal basis (columns) of the kernel of the trace form
/// T(i, j) = trace(L_{e_i e_j}). In characteristic zero this is the radical.
Eigen::MatrixXd radical_subspace(const StructureConstants& alg);
std::vector<Element> radical_basis(const StructureConstants& alg);

struct RadicalFiltration {
  /// powers[k] spans rad^{k+1}; the last entry is the zero subspace.
  std::vector<Eigen::MatrixXd> powers;
  int nu = 1;

  std::vector<int> dims() const;
};

RadicalFiltration radical_filtration(const StructureConstants& alg);

struct StandardBasisInfo {
  /// Columns are the standard basis elements in input coordinates;
  /// column 0 is the unit.
  Eigen::MatrixXd basis;
  /// Input coordinates -> standard coordinates (inverse of basis).
  Eigen::MatrixXd to_standard;
  /// Standard indices 1..r of the pseudobasis.
  std::vector<int> pseudobasis;
  /// Exponent vector (length r) of each standard radical index.
  std::map<int, std::vector<int>> monomial;
  /// Standard radical indices whose product with the radical vanishes.
  std::vector<int> socle;
  /// Remaining standard radical indices.
  std::vector<int> breve;
  int nu = 1;

  int rank() const { return static_cast<int>(pseudobasis.size()); }
  bool is_socle(int k) const;
};

StandardBasisInfo standard_basis(const StructureConstants& alg);

/// Structure constants of the same algebra rewritten in its standard basis.
/// Keeps the input labels when the standard basis coincides with the input one.
StructureConstants in_standard_basis(const StructureConstants& alg,
                                     const StandardBasisInfo& info);

/// Orthonormal basis of ann(rad) = {x in rad : x e = 0 for e in rad}, in
/// the coordinates of alg.
std::vector<Element> socle_basis(const StructureConstants& alg,
                                 const StandardBasisInfo& info);

/// A validated algebra together with its standard-basis form. All
/// downstream modules work in standard coordinates (alg), where index 0 is
/// the unit, 1..r the pseudobasis, and info.socle / info.breve partition the
/// remaining radical indices.
struct LocalAlgebra {
  StructureConstants input;
  StandardBasisInfo input_info;
  StructureConstants alg;
  StandardBasisInfo info;
  /// Orthonormal socle basis in standard coordinates (columns).
  Eigen::MatrixXd socle;

  int dim() const { return alg.dim(); }
  int nu() const { return info.nu; }
};

/// Validates and brings the algebra to standard form. Throws Error listing
/// the violations when the input is not a local algebra.
LocalAlgebra make_local_algebra(const StructureConstants& input);

// Presets and the plain-text spec format.

StructureConstants dual_numbers();
/// R[eps]/(eps^k), basis 1, e1 = eps, ..., e_{k-1}.
StructureConstants truncated(int k);
/// R[x_1..x_r]/(all degree-2 products), basis 1, e1..er.
StructureConstants square_zero(int r);

/// "dual", "trunc:k" or "square:r".
StructureConstants preset(const std::string& name);

StructureConstants parse_algebra_spec(const std::string& text);
StructureConstants load_algebra_spec(const std::string& path);

// Subspace helpers shared by the verification modules.
namespace linalg {

/// Orthonormal basis of the column space of m; singular values below
/// tol * max(1, sigma_max) are dropped. Canonicalised so the result only
/// depends on the subspace.
Eigen::MatrixXd orth(const Eigen::MatrixXd& m, double tol = 1e-9);

/// Orthonormal basis of the right kernel of m, relative tolerance tol.
Eigen::MatrixXd null(const Eigen::MatrixXd& m, double tol = 1e-9);

/// Canonical orthonormal basis of span(q) for q with orthonormal columns.
Eigen::MatrixXd canonical(const Eigen::MatrixXd& q, double tol = 1e-9);

int rank(const Eigen::MatrixXd& m, double tol = 1e-9);

/// Largest principal-angle sine between two subspaces given by orthonormal
/// bases; +inf when the dimensions differ.
double subspace_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

}  // namespace linalg

}  // namespace atorus
