#pragma once

// A-valued 1-forms with trigonometric coefficients on A-tori, the closed
// A-differentiable forms, the component spaces ZOmega^{1,j} and the
// injectivity of H^1_A -> A (x) H^1 within the ansatz.

#include <cstdint>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "atorus/constraints.hpp"
#include "atorus/report.hpp"
#include "atorus/spectral.hpp"
#include "atorus/trig.hpp"

namespace atorus {

/// omega = sum_alpha omega_alpha dtheta^alpha with each omega_alpha an
/// A-valued trig polynomial. Coefficient of e_i cos/sin t in omega_alpha
/// sits at column (alpha * n + i) * B + t.
struct AForm1 {
  int dims = 0;
  int n = 0;
  Eigen::VectorXd coeffs;

  ColumnLayout layout(int trig_size) const { return {dims * n, trig_size}; }
  static int field(int alpha, int i, int n) { return alpha * n + i; }
};

/// Entry (alpha, beta), alpha < beta, holds the n * B coefficients of
/// d_alpha omega_beta - d_beta omega_alpha.
struct TwoForm {
  int dims = 0;
  int n = 0;
  std::map<std::pair<int, int>, Eigen::VectorXd> entries;

  double max_abs() const;
};

TwoForm exterior_derivative(const AForm1& omega, const TrigSpace& space);

/// dG for a function coefficient vector (layout of the function system).
AForm1 differential(const Eigen::VectorXd& function_coeffs, int n, const TrigSpace& space);

/// The linear map G -> dG as a sparse matrix.
SparseRows differential_matrix(int n, const TrigSpace& space);

std::int64_t form_columns(const TorusConfig& cfg, int degree);

/// (i) for every slot j, e_a and entry (p, q): W_j L_a - L_a W_j = 0 with
/// W_j(i, b) = omega^i_{b m + j}; (ii) d omega = 0.
ConstraintSystem assemble_form_constraints(const TorusConfig& cfg, int degree,
                                           std::int64_t cap = kDefaultSizeCap);

/// Rank of the e_{j0}-components of the given forms. Throws IndexNotBreve
/// for the unit, socle indices and out-of-range indices.
int component_space_dim(const Eigen::MatrixXd& solutions, int j0, const TorusConfig& cfg,
                        const TrigSpace& space, double tol = 1e-8);

struct CohomologyReport {
  int dim_solutions = 0;
  /// dim ZOmega^{1,j} per breve index j.
  std::map<int, int> zbreve;
  /// Same dims one degree lower (absent for d = 0).
  std::map<int, int> zbreve_previous;
  int bound = 0;
  /// Rank of the e_j-components of function solutions, per breve j.
  std::map<int, int> degree0;
  int dim_h0 = 0;
  bool injective = false;
  double lemma1_residual = 0.0;
  int zero_mean_dim = 0;
  int class_rank = 0;

  bool bound_holds() const;
  bool degree0_holds() const;
  bool stabilized(int j) const;
};

struct Lemma1Result {
  bool injective = true;
  double worst_residual = 0.0;
  /// Dimension of the closed solutions with zero mean coefficients.
  int zero_mean_dim = 0;
  /// Rank of the class map (mean coefficients) on the solutions.
  int class_rank = 0;
};

struct FormsOptions {
  double tol = 1e-8;
  std::int64_t cap = kDefaultSizeCap;
};

/// Function plus form column count: what the forms analysis assembles.
std::int64_t forms_workload(const TorusConfig& cfg, int degree);

Lemma1Result verify_lemma1(const TorusConfig& cfg, int degree, const FormsOptions& opts = {});
CohomologyReport verify_theorem3(const TorusConfig& cfg, int degree,
                                 const FormsOptions& opts = {});

/// Backs the `forms` command.
Report run_forms(const TorusConfig& cfg, int degree, const FormsOptions& opts = {});

}  // namespace atorus
