#include "atorus/forms.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace atorus {

double TwoForm::max_abs() const {
  double worst = 0.0;
  for (const auto& [key, v] : entries) {
    if (v.size() > 0) worst = std::max(worst, v.cwiseAbs().maxCoeff());
  }
  return worst;
}

TwoForm exterior_derivative(const AForm1& omega, const TrigSpace& space) {
  const int nb = space.size();
  const int n = omega.n;
  const ColumnLayout layout = omega.layout(nb);
  if (omega.coeffs.size() != layout.cols()) throw DimensionMismatch("form has wrong size");
  TwoForm out{omega.dims, n, {}};
  for (int alpha = 0; alpha < omega.dims; ++alpha) {
    for (int beta = alpha + 1; beta < omega.dims; ++beta) {
      Eigen::VectorXd entry = Eigen::VectorXd::Zero(n * nb);
      for (int i = 0; i < n; ++i) {
        for (int out_t = 1; out_t < nb; ++out_t) {
          const int t = space.partner(out_t);
          entry[i * nb + out_t] =
              omega.coeffs[layout.column(AForm1::field(beta, i, n), t)] *
                  space.derivative_factor(t, alpha) -
              omega.coeffs[layout.column(AForm1::field(alpha, i, n), t)] *
                  space.derivative_factor(t, beta);
        }
      }
      out.entries.emplace(std::make_pair(alpha, beta), std::move(entry));
    }
  }
  return out;
}

AForm1 differential(const Eigen::VectorXd& function_coeffs, int n, const TrigSpace& space) {
  const int nb = space.size();
  if (function_coeffs.size() != n * nb) throw DimensionMismatch("function has wrong size");
  AForm1 omega{space.dims(), n, Eigen::VectorXd::Zero(static_cast<Eigen::Index>(space.dims()) * n * nb)};
  const ColumnLayout layout = omega.layout(nb);
  for (int alpha = 0; alpha < space.dims(); ++alpha) {
    for (int i = 0; i < n; ++i) {
      for (int out_t = 1; out_t < nb; ++out_t) {
        const int t = space.partner(out_t);
        omega.coeffs[layout.column(AForm1::field(alpha, i, n), out_t)] =
            function_coeffs[i * nb + t] * space.derivative_factor(t, alpha);
      }
    }
  }
  return omega;
}

SparseRows differential_matrix(int n, const TrigSpace& space) {
  const int nb = space.size();
  const ColumnLayout layout{space.dims() * n, nb};
  std::vector<Eigen::Triplet<double>> triplets;
  for (int alpha = 0; alpha < space.dims(); ++alpha) {
    for (int i = 0; i < n; ++i) {
      for (int out_t = 1; out_t < nb; ++out_t) {
        const int t = space.partner(out_t);
        const double f = space.derivative_factor(t, alpha);
        if (f != 0.0) {
          triplets.emplace_back(layout.column(AForm1::field(alpha, i, n), out_t), i * nb + t, f);
        }
      }
    }
  }
  SparseRows d(layout.cols(), n * nb);
  d.setFromTriplets(triplets.begin(), triplets.end());
  return d;
}

std::int64_t form_columns(const TorusConfig& cfg, int degree) {
  const std::int64_t b = TrigSpace::count(cfg.N(), degree);
  return b < 0 ? -1 : b * cfg.n() * cfg.N();
}

std::int64_t forms_workload(const TorusConfig& cfg, int degree) {
  const std::int64_t f = function_columns(cfg, degree);
  const std::int64_t w = form_columns(cfg, degree);
  return f < 0 || w < 0 ? -1 : f + w;
}

ConstraintSystem assemble_form_constraints(const TorusConfig& cfg, int degree, std::int64_t cap) {
  if (degree < 0) throw Error("degree must be non-negative");
  const std::int64_t cols = form_columns(cfg, degree);
  if (cols < 0 || cols > cap) {
    throw SizeCapExceeded(fmt::format("form system needs {} columns, cap is {}",
                                      cols < 0 ? std::string("too many") : std::to_string(cols),
                                      cap));
  }
  const int n = cfg.n();
  const int m = cfg.m;
  const int dims = cfg.N();
  const TrigSpace space(dims, degree);
  const int nb = space.size();
  ConstraintSystem sys;
  sys.layout = {dims * n, nb};
  auto col = [&](int alpha, int i, int t) {
    return sys.layout.column(AForm1::field(alpha, i, n), t);
  };

  std::vector<Eigen::MatrixXd> reg;
  for (int a = 0; a < n; ++a) reg.push_back(cfg.algebra.alg.regular_basis(a));

  RowBuilder rows(sys.layout.cols());
  // A-linearity, pointwise in theta, so coefficient by coefficient.
  for (int j = 0; j < m; ++j) {
    for (int a = 0; a < n; ++a) {
      const Eigen::MatrixXd& l = reg[a];
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
          for (int t = 0; t < nb; ++t) {
            for (int b = 0; b < n; ++b) {
              if (l(b, q) != 0.0) rows.add(col(cfg.coordinate(b, j), p, t), l(b, q));
              if (l(p, b) != 0.0) rows.add(col(cfg.coordinate(q, j), b, t), -l(p, b));
            }
            rows.finish_row();
          }
        }
      }
    }
  }
  // Closedness.
  for (int i = 0; i < n; ++i) {
    for (int alpha = 0; alpha < dims; ++alpha) {
      for (int beta = alpha + 1; beta < dims; ++beta) {
        for (int out_t = 1; out_t < nb; ++out_t) {
          const int t = space.partner(out_t);
          rows.add(col(beta, i, t), space.derivative_factor(t, alpha));
          rows.add(col(alpha, i, t), -space.derivative_factor(t, beta));
          rows.finish_row();
        }
      }
    }
  }
  sys.matrix = rows.build();
  return sys;
}

int component_space_dim(const Eigen::MatrixXd& solutions, int j0, const TorusConfig& cfg,
                        const TrigSpace& space, double tol) {
  const int n = cfg.n();
  if (j0 <= 0 || j0 >= n || cfg.algebra.info.is_socle(j0)) {
    throw IndexNotBreve(fmt::format("index {} is not a non-socle radical basis index", j0));
  }
  const int nb = space.size();
  const int dims = cfg.N();
  if (solutions.cols() == 0) return 0;
  const ColumnLayout layout{dims * n, nb};
  Eigen::MatrixXd stacked(static_cast<Eigen::Index>(dims) * nb, solutions.cols());
  for (int s = 0; s < solutions.cols(); ++s) {
    for (int alpha = 0; alpha < dims; ++alpha) {
      for (int t = 0; t < nb; ++t) {
        stacked(alpha * nb + t, s) = solutions(layout.column(AForm1::field(alpha, j0, n), t), s);
      }
    }
  }
  return linalg::rank(stacked, tol);
}

bool CohomologyReport::bound_holds() const {
  return std::all_of(zbreve.begin(), zbreve.end(),
                     [&](const auto& kv) { return kv.second <= bound; }) &&
         dim_solutions >= 0;
}

bool CohomologyReport::degree0_holds() const {
  return std::all_of(degree0.begin(), degree0.end(),
                     [](const auto& kv) { return kv.second == 1; });
}

bool CohomologyReport::stabilized(int j) const {
  const auto prev = zbreve_previous.find(j);
  const auto cur = zbreve.find(j);
  return prev != zbreve_previous.end() && cur != zbreve.end() && prev->second == cur->second;
}

namespace {

struct FormsAnalysis {
  TrigSpace space;
  ConstraintSystem functions;
  ConstraintSystem forms;
  Nullspace function_solutions;
  Nullspace form_solutions;
  Eigen::MatrixXd exact;  // d applied to the function solutions
};

FormsAnalysis analyze(const TorusConfig& cfg, int degree, const FormsOptions& opts) {
  const std::int64_t work = forms_workload(cfg, degree);
  if (work < 0 || work > opts.cap) {
    throw SizeCapExceeded(fmt::format(
        "forms analysis needs {} columns (functions + forms), cap is {}",
        work < 0 ? std::string("too many") : std::to_string(work), opts.cap));
  }
  FormsAnalysis a{TrigSpace(cfg.N(), degree),
                  assemble_function_constraints(cfg, degree, opts.cap),
                  assemble_form_constraints(cfg, degree, opts.cap),
                  {},
                  {},
                  {}};
  a.function_solutions = solve_nullspace(a.functions, opts.tol);
  a.form_solutions = solve_nullspace(a.forms, opts.tol);
  a.exact = differential_matrix(cfg.n(), a.space) * a.function_solutions.basis;
  return a;
}

Lemma1Result lemma1(const FormsAnalysis& a, const TorusConfig& cfg, const FormsOptions& opts) {
  const int fields = cfg.N() * cfg.n();
  const Eigen::MatrixXd& q = a.form_solutions.basis;
  Eigen::MatrixXd means(fields, q.cols());
  for (int f = 0; f < fields; ++f) means.row(f) = q.row(a.forms.layout.column(f, 0));

  Lemma1Result res;
  res.class_rank = linalg::rank(means, opts.tol);
  const Eigen::MatrixXd kernel = linalg::null(means, opts.tol);
  const Eigen::MatrixXd zero_mean = q * kernel;
  res.zero_mean_dim = static_cast<int>(zero_mean.cols());

  const Eigen::MatrixXd range = linalg::orth(a.exact, opts.tol);
  for (int c = 0; c < zero_mean.cols(); ++c) {
    const Eigen::VectorXd z = zero_mean.col(c);
    const double r = (z - range * (range.transpose() * z)).norm();
    res.worst_residual = std::max(res.worst_residual, r);
  }
  res.injective = res.worst_residual <= 1e-9;
  return res;
}

}  // namespace

Lemma1Result verify_lemma1(const TorusConfig& cfg, int degree, const FormsOptions& opts) {
  return lemma1(analyze(cfg, degree, opts), cfg, opts);
}

CohomologyReport verify_theorem3(const TorusConfig& cfg, int degree, const FormsOptions& opts) {
  const FormsAnalysis a = analyze(cfg, degree, opts);
  const int n = cfg.n();
  CohomologyReport rep;
  rep.dim_solutions = a.form_solutions.dim();
  rep.bound = n * cfg.N();
  const auto& breve = cfg.algebra.info.breve;
  for (int j : breve) {
    rep.zbreve[j] = component_space_dim(a.form_solutions.basis, j, cfg, a.space, opts.tol);
    Eigen::MatrixXd comps(a.space.size(), a.function_solutions.dim());
    for (int s = 0; s < a.function_solutions.dim(); ++s) {
      comps.col(s) = component(a.function_solutions.basis.col(s), a.functions.layout, j);
    }
    rep.degree0[j] = linalg::rank(comps, opts.tol);
  }
  if (degree >= 1 && !breve.empty()) {
    const ConstraintSystem prev = assemble_form_constraints(cfg, degree - 1, opts.cap);
    const Nullspace prev_ns = solve_nullspace(prev, opts.tol);
    const TrigSpace prev_space(cfg.N(), degree - 1);
    for (int j : breve) {
      rep.zbreve_previous[j] = component_space_dim(prev_ns.basis, j, cfg, prev_space, opts.tol);
    }
  }
  rep.dim_h0 = static_cast<int>(linalg::null(a.exact, opts.tol).cols());

  const Lemma1Result l1 = lemma1(a, cfg, opts);
  rep.injective = l1.injective;
  rep.lemma1_residual = l1.worst_residual;
  rep.zero_mean_dim = l1.zero_mean_dim;
  rep.class_rank = l1.class_rank;
  return rep;
}

Report run_forms(const TorusConfig& cfg, int degree, const FormsOptions& opts) {
  const CohomologyReport c = verify_theorem3(cfg, degree, opts);
  const auto& labels = cfg.algebra.alg.labels();
  Report rep;
  rep.set("N", cfg.N());
  rep.set("M", cfg.m);
  rep.set("DEGREE", degree);
  rep.set("COLUMNS_FUNCTIONS", static_cast<int>(function_columns(cfg, degree)));
  rep.set("COLUMNS_FORMS", static_cast<int>(form_columns(cfg, degree)));
  rep.set("DIM_SOLUTIONS", c.dim_solutions);
  rep.set("BOUND", c.bound);

  if (c.zbreve.empty()) {
    rep.note("no breve indices (the radical equals the socle): ZBREVE check is vacuous");
  }
  for (const auto& [j, dim] : c.zbreve) {
    rep.add(fmt::format("zbreve_bound[{}]", labels[j]), dim <= c.bound, std::to_string(dim));
    rep.set(fmt::format("DIM_ZBREVE[{}]", labels[j]), dim);
    if (c.zbreve_previous.count(j)) {
      rep.set(fmt::format("STABILIZED[{}]", labels[j]), c.stabilized(j) ? 1 : 0);
    }
  }
  for (const auto& [j, rank] : c.degree0) {
    rep.add(fmt::format("zbreve_degree0[{}]", labels[j]), rank == 1, std::to_string(rank));
  }
  rep.add("h0.constants", c.dim_h0 == cfg.n(), std::to_string(c.dim_h0));
  rep.add("class_map_injective", c.injective, c.lemma1_residual);
  rep.set("DIM_H0", c.dim_h0);
  rep.set("INJECTIVITY_RESIDUAL", c.lemma1_residual);
  rep.set("ZERO_MEAN_DIM", c.zero_mean_dim);
  rep.set("CLASS_RANK", c.class_rank);
  return rep;
}

}  // namespace atorus
