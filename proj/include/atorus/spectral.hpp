#pragma once

// A-tori and the A-differentiability constraints on trigonometric ansatz
// functions G = sum_i e_i g^i, with checks of the constancy and
// decomposition results on the resulting solution spaces.
//
// Torus coordinates: theta in R^N, N = n m, with coordinate index
// b * m + j carrying the e_b-component of the j-th A-argument. The first m
// coordinates are transversal; leaves of the canonical foliation are the
// sub-tori with fixed transversal coordinates.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "atorus/algebra.hpp"
#include "atorus/constraints.hpp"
#include "atorus/prolong.hpp"
#include "atorus/report.hpp"
#include "atorus/trig.hpp"

namespace atorus {

inline constexpr std::int64_t kDefaultSizeCap = 20000;

struct TorusConfig {
  LocalAlgebra algebra;
  int m = 1;

  int n() const { return algebra.dim(); }
  int N() const { return algebra.dim() * m; }
  int coordinate(int component, int slot) const { return component * m + slot; }
};

/// n * (2d+1)^N, or -1 on overflow.
std::int64_t function_columns(const TorusConfig& cfg, int degree);

/// Rows: for every slot j, basis element e_a and matrix entry (p, q), the
/// trig coefficients of (J_j L_a - L_a J_j)(p, q), J_j(i, b) = dg^i/dx^{j,b}.
ConstraintSystem assemble_function_constraints(const TorusConfig& cfg, int degree,
                                               std::int64_t cap = kDefaultSizeCap);

/// The trig coefficients (length B) of component i of a solution vector.
Eigen::VectorXd component(const Eigen::VectorXd& coeffs, const ColumnLayout& layout, int i);

/// Value of G at theta as an algebra element.
Element evaluate_function(const Eigen::VectorXd& coeffs, const TrigSpace& space, int n,
                          std::span<const double> theta);

/// G as a real map in slot-major coordinates (see adiff_defect).
RealMap torus_map(const Eigen::VectorXd& coeffs, const TorusConfig& cfg, const TrigSpace& space);

/// Distance of the constant functions from span(solutions).
double constants_residual(const Nullspace& ns, const TorusConfig& cfg, const TrigSpace& space);

/// Worst of (system residual, distance to span(solutions)) over the
/// functions f(x) * s for every socle basis element s and every
/// transversal trig basis function f.
double socle_embedding_residual(const ConstraintSystem& sys, const Nullspace& ns,
                                const TorusConfig& cfg, const TrigSpace& space);

struct SolutionViolation {
  int solution = 0;
  std::string part;
  std::vector<int> frequency;
  double value = 0.0;
};

struct Theorem2Result {
  bool pass = true;
  /// Largest |coefficient| of the real part on a non-constant basis function.
  double real_mass = 0.0;
  /// Largest |coefficient| of the e_1-component on a non-transversal frequency.
  double e1_mass = 0.0;
  std::vector<SolutionViolation> violations;
};

/// solutions: one coefficient vector per column.
Theorem2Result verify_theorem2(const Eigen::MatrixXd& solutions, const TorusConfig& cfg,
                               const TrigSpace& space, double tol = 1e-8);

struct Corollary1Result {
  bool pass = true;
  /// sqrt of the non-constant coefficient mass outside socle components
  /// with transversal frequencies, worst solution.
  double residual = 0.0;
  int worst_solution = -1;
};

Corollary1Result verify_corollary1(const Eigen::MatrixXd& solutions, const TorusConfig& cfg,
                                   const TrigSpace& space, const Eigen::MatrixXd& socle,
                                   double tol = 1e-8);

struct MinLeafResult {
  bool pass = true;
  /// Grid index of the leaf minimising the leaf average of g^1.
  std::vector<int> leaf;
  double leaf_average = 0.0;
  /// max |dg| over the sample points of that leaf.
  double max_dg = 0.0;
  /// max g - min g over the transversal grid.
  double variation = 0.0;
  /// max |M c| when a constraint system is supplied, else -1.
  double constraint_residual = -1.0;
  bool dg_flag = false;
  bool adiff_flag = false;
};

MinLeafResult verify_theorem1_minleaf(const Eigen::VectorXd& solution, const TorusConfig& cfg,
                                      const TrigSpace& space, int grid, double tol = 1e-8,
                                      const ConstraintSystem* sys = nullptr);

struct VerifyOptions {
  double tol = 1e-8;
  int grid = 32;
  std::int64_t cap = kDefaultSizeCap;
};

/// assemble, solve, then every check above; the report backs `verify`.
Report run_verify(const TorusConfig& cfg, int degree, const VerifyOptions& opts = {});

std::string frequency_string(const std::vector<int>& k);

}  // namespace atorus
