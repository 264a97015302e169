#include "atorus/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace atorus {

std::string frequency_string(const std::vector<int>& k) {
  std::string s = "(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  return s + ")";
}

std::int64_t function_columns(const TorusConfig& cfg, int degree) {
  const std::int64_t b = TrigSpace::count(cfg.N(), degree);
  return b < 0 ? -1 : b * cfg.n();
}

ConstraintSystem assemble_function_constraints(const TorusConfig& cfg, int degree,
                                               std::int64_t cap) {
  if (degree < 0) throw Error("degree must be non-negative");
  const std::int64_t cols = function_columns(cfg, degree);
  if (cols < 0 || cols > cap) {
    throw SizeCapExceeded(fmt::format("function system needs {} columns, cap is {}",
                                      cols < 0 ? std::string("too many") : std::to_string(cols),
                                      cap));
  }
  const int n = cfg.n();
  const int m = cfg.m;
  const TrigSpace space(cfg.N(), degree);
  const int nb = space.size();
  ConstraintSystem sys;
  sys.layout = {n, nb};

  std::vector<Eigen::MatrixXd> reg;
  for (int a = 0; a < n; ++a) reg.push_back(cfg.algebra.alg.regular_basis(a));

  RowBuilder rows(sys.layout.cols());
  for (int j = 0; j < m; ++j) {
    for (int a = 0; a < n; ++a) {
      const Eigen::MatrixXd& l = reg[a];
      for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
          for (int out = 1; out < nb; ++out) {
            const int t = space.partner(out);
            // (J L)(p, q) = sum_b dg^p/dx^{j,b} L(b, q)
            for (int b = 0; b < n; ++b) {
              if (l(b, q) == 0.0) continue;
              rows.add(sys.layout.column(p, t),
                       l(b, q) * space.derivative_factor(t, cfg.coordinate(b, j)));
            }
            // (L J)(p, q) = sum_b L(p, b) dg^b/dx^{j,q}
            for (int b = 0; b < n; ++b) {
              if (l(p, b) == 0.0) continue;
              rows.add(sys.layout.column(b, t),
                       -l(p, b) * space.derivative_factor(t, cfg.coordinate(q, j)));
            }
            rows.finish_row();
          }
        }
      }
    }
  }
  sys.matrix = rows.build();
  return sys;
}

Eigen::VectorXd component(const Eigen::VectorXd& coeffs, const ColumnLayout& layout, int i) {
  return coeffs.segment(static_cast<Eigen::Index>(i) * layout.trig_size, layout.trig_size);
}

Element evaluate_function(const Eigen::VectorXd& coeffs, const TrigSpace& space, int n,
                          std::span<const double> theta) {
  const Eigen::VectorXd values = space.eval_all(theta);
  Element out(Eigen::VectorXd::Zero(n));
  for (int i = 0; i < n; ++i) out[i] = coeffs.segment(i * space.size(), space.size()).dot(values);
  return out;
}

RealMap torus_map(const Eigen::VectorXd& coeffs, const TorusConfig& cfg, const TrigSpace& space) {
  const int n = cfg.n();
  const int m = cfg.m;
  return [coeffs, n, m, &space](const Eigen::VectorXd& v) {
    std::vector<double> theta(n * m);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) theta[i * m + j] = v[j * n + i];
    }
    return evaluate_function(coeffs, space, n, theta).coeffs;
  };
}

double constants_residual(const Nullspace& ns, const TorusConfig& cfg, const TrigSpace& space) {
  double worst = 0.0;
  for (int i = 0; i < cfg.n(); ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(ns.basis.rows());
    v[static_cast<Eigen::Index>(i) * space.size()] = 1.0;
    worst = std::max(worst, (v - ns.basis * (ns.basis.transpose() * v)).norm());
  }
  return worst;
}

double socle_embedding_residual(const ConstraintSystem& sys, const Nullspace& ns,
                                const TorusConfig& cfg, const TrigSpace& space) {
  const Eigen::MatrixXd& socle = cfg.algebra.socle;
  double worst = 0.0;
  for (int s = 0; s < socle.cols(); ++s) {
    for (int t = 1; t < space.size(); ++t) {
      if (!space.supported_below(t, cfg.m)) continue;
      Eigen::VectorXd v = Eigen::VectorXd::Zero(sys.cols());
      for (int i = 0; i < cfg.n(); ++i) v[sys.layout.column(i, t)] = socle(i, s);
      worst = std::max(worst, sys.residual(v));
      worst = std::max(worst, (v - ns.basis * (ns.basis.transpose() * v)).norm());
    }
  }
  return worst;
}

Theorem2Result verify_theorem2(const Eigen::MatrixXd& solutions, const TorusConfig& cfg,
                               const TrigSpace& space, double tol) {
  const ColumnLayout layout{cfg.n(), space.size()};
  Theorem2Result res;
  for (int s = 0; s < solutions.cols(); ++s) {
    const Eigen::VectorXd g = component(solutions.col(s), layout, 0);
    for (int t = 1; t < space.size(); ++t) {
      const double c = std::abs(g[t]);
      res.real_mass = std::max(res.real_mass, c);
      if (c > tol) res.violations.push_back({s, "real_part", space.frequency(t), c});
    }
    if (cfg.n() < 2) continue;
    const Eigen::VectorXd g1 = component(solutions.col(s), layout, cfg.algebra.info.pseudobasis[0]);
    for (int t = 1; t < space.size(); ++t) {
      if (space.supported_below(t, cfg.m)) continue;
      const double c = std::abs(g1[t]);
      res.e1_mass = std::max(res.e1_mass, c);
      if (c > tol) res.violations.push_back({s, "e1_basic", space.frequency(t), c});
    }
  }
  res.pass = res.violations.empty();
  return res;
}

Corollary1Result verify_corollary1(const Eigen::MatrixXd& solutions, const TorusConfig& cfg,
                                   const TrigSpace& space, const Eigen::MatrixXd& socle,
                                   double tol) {
  const int n = cfg.n();
  const ColumnLayout layout{n, space.size()};
  const Eigen::MatrixXd outside = Eigen::MatrixXd::Identity(n, n) - socle * socle.transpose();
  Corollary1Result res;
  for (int s = 0; s < solutions.cols(); ++s) {
    double mass = 0.0;
    for (int t = 1; t < space.size(); ++t) {
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v[i] = solutions(layout.column(i, t), s);
      mass += space.supported_below(t, cfg.m) ? (outside * v).squaredNorm() : v.squaredNorm();
    }
    const double r = std::sqrt(mass);
    if (r > res.residual || res.worst_solution < 0) {
      res.residual = std::max(res.residual, r);
      res.worst_solution = s;
    }
  }
  res.pass = res.residual <= tol;
  return res;
}

namespace {

// Decodes a flat lattice index into per-axis indices, first axis slowest.
std::vector<int> lattice_point(std::int64_t index, int axes, int per_axis) {
  std::vector<int> out(axes);
  for (int a = axes - 1; a >= 0; --a) {
    out[a] = static_cast<int>(index % per_axis);
    index /= per_axis;
  }
  return out;
}

std::int64_t ipow(int base, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

MinLeafResult verify_theorem1_minleaf(const Eigen::VectorXd& solution, const TorusConfig& cfg,
                                      const TrigSpace& space, int grid, double tol,
                                      const ConstraintSystem* sys) {
  if (grid < 1) throw Error("grid must be positive");
  const int n = cfg.n();
  const int m = cfg.m;
  const int dims = cfg.N();
  const ColumnLayout layout{n, space.size()};
  const Eigen::VectorXd g = component(solution, layout, 0);
  const int e1 = n > 1 ? cfg.algebra.info.pseudobasis[0] : 0;
  const Eigen::VectorXd g1 = component(solution, layout, e1);

  // Averaging g^1 over a leaf keeps exactly the basis functions whose
  // frequency vanishes along the leaf.
  Eigen::VectorXd g1_basic = Eigen::VectorXd::Zero(space.size());
  for (int t = 0; t < space.size(); ++t) {
    if (space.supported_below(t, m)) g1_basic[t] = g1[t];
  }

  MinLeafResult res;
  const double step = 2.0 * M_PI / grid;
  const std::int64_t leaves = ipow(grid, m);
  double best = std::numeric_limits<double>::infinity();
  double gmin = std::numeric_limits<double>::infinity();
  double gmax = -std::numeric_limits<double>::infinity();
  std::vector<double> theta(dims, 0.0);
  for (std::int64_t idx = 0; idx < leaves; ++idx) {
    const auto p = lattice_point(idx, m, grid);
    std::fill(theta.begin(), theta.end(), 0.0);
    for (int j = 0; j < m; ++j) theta[j] = step * p[j];
    const Eigen::VectorXd values = space.eval_all(theta);
    const double avg = g1_basic.dot(values);
    const double gv = g.dot(values);
    gmin = std::min(gmin, gv);
    gmax = std::max(gmax, gv);
    if (idx == 0 || avg < best - 1e-12 * (1.0 + std::abs(best))) {
      best = avg;
      res.leaf = p;
    }
  }
  res.leaf_average = best;
  res.variation = gmax - gmin;

  // Sample the minimising leaf on a lattice of at most ~4096 points.
  const int leaf_axes = dims - m;
  int per_axis = grid;
  if (leaf_axes > 0) {
    const int cap = std::max(2, static_cast<int>(std::floor(std::pow(4096.0, 1.0 / leaf_axes) + 1e-9)));
    per_axis = std::min(grid, cap);
  }
  const std::int64_t samples = ipow(per_axis, leaf_axes);
  const double leaf_step = 2.0 * M_PI / per_axis;
  for (std::int64_t idx = 0; idx < samples; ++idx) {
    const auto p = lattice_point(idx, leaf_axes, per_axis);
    for (int j = 0; j < m; ++j) theta[j] = step * res.leaf[j];
    for (int a = 0; a < leaf_axes; ++a) theta[m + a] = leaf_step * p[a];
    const Eigen::VectorXd grad = space.gradient(g, theta);
    res.max_dg = std::max(res.max_dg, grad.cwiseAbs().maxCoeff());
    const double gv = g.dot(space.eval_all(theta));
    gmin = std::min(gmin, gv);
    gmax = std::max(gmax, gv);
  }
  res.variation = gmax - gmin;
  res.dg_flag = res.max_dg > tol;

  if (sys != nullptr) {
    res.constraint_residual = sys->residual(solution);
    double scale = 0.0;
    for (int r = 0; r < sys->matrix.outerSize(); ++r) {
      for (SparseRows::InnerIterator it(sys->matrix, r); it; ++it) {
        scale = std::max(scale, std::abs(it.value()));
      }
    }
    res.adiff_flag = res.constraint_residual > tol * std::max(1.0, scale);
  }
  res.pass = !res.dg_flag && res.variation <= tol && !res.adiff_flag;
  return res;
}

namespace {

constexpr std::size_t kMaxNotes = 20;

}  // namespace

Report run_verify(const TorusConfig& cfg, int degree, const VerifyOptions& opts) {
  const ConstraintSystem sys = assemble_function_constraints(cfg, degree, opts.cap);
  const TrigSpace space(cfg.N(), degree);
  const Nullspace ns = solve_nullspace(sys, opts.tol);

  Report rep;
  rep.set("N", cfg.N());
  rep.set("M", cfg.m);
  rep.set("DEGREE", degree);
  rep.set("COLUMNS", sys.cols());
  rep.set("ROWS", sys.rows());
  rep.set("DIM_SOLUTIONS", ns.dim());
  rep.set("DIM_SOCLE", static_cast<int>(cfg.algebra.socle.cols()));
  rep.set("NONCONST_DIM", ns.dim() - cfg.n());
  rep.set("TRANSVERSAL_FUNCS", static_cast<int>(TrigSpace::count(cfg.m, degree) - 1));

  const double constants = constants_residual(ns, cfg, space);
  rep.add("constants_embed", constants <= 1e-10, constants);
  rep.set("CONSTANTS_RESIDUAL", constants);

  const Theorem2Result t2 = verify_theorem2(ns.basis, cfg, space, opts.tol);
  std::vector<std::string> real_notes, basic_notes;
  for (const auto& v : t2.violations) {
    auto& notes = v.part == "real_part" ? real_notes : basic_notes;
    if (notes.size() < kMaxNotes) {
      notes.push_back(fmt::format("solution={} freq={} coef={}", v.solution,
                                  frequency_string(v.frequency), num(v.value)));
    }
  }
  rep.add("real_part_constant", t2.real_mass <= opts.tol, t2.real_mass).notes =
      real_notes;
  rep.add("e1_basic_only", t2.e1_mass <= opts.tol, t2.e1_mass).notes = basic_notes;
  rep.set("MAX_REAL_NONCONST", t2.real_mass);
  rep.set("MAX_E1_NONBASIC", t2.e1_mass);

  const Corollary1Result c1 = verify_corollary1(ns.basis, cfg, space, cfg.algebra.socle, opts.tol);
  Check& dec = rep.add("socle_decomposition", c1.pass, c1.residual);
  if (!c1.pass) dec.notes.push_back(fmt::format("worst solution={}", c1.worst_solution));

  rep.set("DECOMP_RESIDUAL", c1.residual);

  const double embed = socle_embedding_residual(sys, ns, cfg, space);
  rep.add("socle_embedding", embed <= 1e-9, embed);
  rep.set("EMBED_RESIDUAL", embed);

  double max_dg = 0.0, max_var = 0.0;
  std::vector<std::string> leaf_notes;
  for (int s = 0; s < ns.dim(); ++s) {
    const MinLeafResult r =
        verify_theorem1_minleaf(ns.basis.col(s), cfg, space, opts.grid, opts.tol, &sys);
    max_dg = std::max(max_dg, r.max_dg);
    max_var = std::max(max_var, r.variation);
    if (!r.pass && leaf_notes.size() < kMaxNotes) {
      leaf_notes.push_back(fmt::format("solution={} leaf={} max_dg={} variation={}", s,
                                       frequency_string(r.leaf), num(r.max_dg),
                                       num(r.variation)));
    }
  }
  rep.add("min_leaf_constant", leaf_notes.empty(), max_dg).notes = leaf_notes;
  rep.set("MIN_LEAF_MAX_DG", max_dg);
  rep.set("MIN_LEAF_MAX_VARIATION", max_var);
  rep.set("GRID", opts.grid);
  return rep;
}

}  // namespace atorus
