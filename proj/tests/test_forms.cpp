#include <gtest/gtest.h>

#include <random>

#include "atorus/forms.hpp"

using namespace atorus;

namespace {

TorusConfig torus(const std::string& name, int m = 1) {
  return {make_local_algebra(preset(name)), m};
}

int find(const TrigSpace& s, bool sine, std::vector<int> k) {
  for (int t = 1; t < s.size(); ++t) {
    if (s.is_sine(t) == sine && s.frequency(t) == k) return t;
  }
  return -1;
}

Eigen::MatrixXd form_nullspace(const TorusConfig& cfg, int d) {
  return solve_nullspace(assemble_form_constraints(cfg, d)).basis;
}

}  // namespace

TEST(Forms, ExteriorDerivativeExamples) {
  const TrigSpace s(2, 1);
  const int nb = s.size();
  AForm1 w{2, 1, Eigen::VectorXd::Zero(2 * nb)};
  w.coeffs[0] = 1.0;  // dtheta^1
  EXPECT_EQ(exterior_derivative(w, s).max_abs(), 0.0);

  // cos(theta^2) dtheta^1 -> (d w)_{12} = -d/dtheta^2 cos(theta^2) = sin(theta^2).
  AForm1 c{2, 1, Eigen::VectorXd::Zero(2 * nb)};
  c.coeffs[find(s, false, {0, 1})] = 1.0;
  const TwoForm dc = exterior_derivative(c, s);
  const Eigen::VectorXd& e = dc.entries.at({0, 1});
  Eigen::VectorXd expect = Eigen::VectorXd::Zero(nb);
  expect[find(s, true, {0, 1})] = 1.0;
  EXPECT_EQ(e, expect);
}

TEST(Forms, DSquaredIsZero) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> nd;
  for (int dims : {2, 3}) {
    const TrigSpace s(dims, 2);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::VectorXd g(3 * s.size());
      for (auto& x : g) x = nd(rng);
      const AForm1 dg = differential(g, 3, s);
      EXPECT_LE(exterior_derivative(dg, s).max_abs(), 1e-10);
      const Eigen::VectorXd via_matrix = differential_matrix(3, s) * g;
      EXPECT_LE((via_matrix - dg.coeffs).cwiseAbs().maxCoeff(), 1e-14);
    }
  }
}

TEST(Forms, DifferentialMatchesGradient) {
  const TrigSpace s(2, 2);
  std::mt19937_64 rng(32);
  std::normal_distribution<double> nd;
  Eigen::VectorXd g(s.size());
  for (auto& x : g) x = nd(rng);
  const AForm1 dg = differential(g, 1, s);
  const std::vector<double> theta{0.9, -2.1};
  const Eigen::VectorXd grad = s.gradient(g, theta);
  const Eigen::VectorXd values = s.eval_all(theta);
  for (int a = 0; a < 2; ++a) {
    EXPECT_NEAR(dg.coeffs.segment(a * s.size(), s.size()).dot(values), grad[a], 1e-12);
  }
}

TEST(Forms, ConstantFormsOnDual) {
  EXPECT_EQ(form_nullspace(torus("dual"), 0).cols(), 2);
}

TEST(Forms, InjectedFormBreaksALinearity) {
  const TorusConfig cfg = torus("dual");
  const ConstraintSystem sys = assemble_form_constraints(cfg, 1);
  const TrigSpace s(2, 1);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(sys.cols());
  w[sys.layout.column(AForm1::field(0, 0, 2), find(s, false, {0, 1}))] = 1.0;
  EXPECT_GE(sys.residual(w), 1.0);
  // Pointwise: W = [[cos, 0], [0, 0]] does not commute with L_eps.
  const Eigen::Matrix2d W{{std::cos(0.3), 0.0}, {0.0, 0.0}};
  const Eigen::MatrixXd L = cfg.algebra.alg.regular_basis(1);
  EXPECT_GT((W * L - L * W).cwiseAbs().maxCoeff(), 0.5);
}

TEST(Forms, TruncatedBreveComponentIsConstant) {
  const TorusConfig cfg = torus("trunc:3");
  const TrigSpace s(3, 1);
  const Eigen::MatrixXd q = form_nullspace(cfg, 1);
  const ColumnLayout layout{9, s.size()};
  for (int k = 0; k < q.cols(); ++k) {
    for (int alpha = 0; alpha < 3; ++alpha) {
      for (int t = 1; t < s.size(); ++t) {
        EXPECT_LE(std::abs(q(layout.column(AForm1::field(alpha, 1, 3), t), k)), 1e-10);
      }
    }
  }
}

TEST(Forms, ComponentSpaceDim) {
  const TorusConfig cfg = torus("trunc:3");
  for (int d = 1; d <= 3; ++d) {
    const TrigSpace s(3, d);
    EXPECT_EQ(component_space_dim(form_nullspace(cfg, d), 1, cfg, s), 2) << d;
  }
  const TrigSpace s(3, 1);
  EXPECT_EQ(component_space_dim(Eigen::MatrixXd(27 * s.size(), 0), 1, cfg, s), 0);
  EXPECT_THROW(component_space_dim(form_nullspace(cfg, 1), 2, cfg, s), IndexNotBreve);
  EXPECT_THROW(component_space_dim(form_nullspace(cfg, 1), 0, cfg, s), IndexNotBreve);
  EXPECT_THROW(component_space_dim(form_nullspace(cfg, 1), 3, cfg, s), IndexNotBreve);

  const TorusConfig dual = torus("dual");
  const TrigSpace sd(2, 1);
  EXPECT_THROW(component_space_dim(form_nullspace(dual, 1), 1, dual, sd), IndexNotBreve);
}

TEST(Forms, ExactFormsAreClosedAndALinear) {
  for (const auto& [name, d] : std::vector<std::pair<std::string, int>>{
           {"dual", 2}, {"trunc:3", 2}, {"square:2", 1}}) {
    const TorusConfig cfg = torus(name);
    const TrigSpace s(cfg.N(), d);
    const Nullspace fns = solve_nullspace(assemble_function_constraints(cfg, d));
    const ConstraintSystem forms = assemble_form_constraints(cfg, d);
    for (int k = 0; k < fns.dim(); ++k) {
      const AForm1 dg = differential(fns.basis.col(k), cfg.n(), s);
      EXPECT_LE(forms.residual(dg.coeffs), 1e-9) << name;
    }
  }
}

TEST(Forms, BreveDimensionsAndBound) {
  const auto t3 = verify_theorem3(torus("trunc:3"), 2);
  EXPECT_EQ(t3.bound, 9);
  EXPECT_EQ(t3.zbreve.at(1), 2);
  EXPECT_EQ(t3.degree0.at(1), 1);
  EXPECT_EQ(t3.dim_h0, 3);
  EXPECT_TRUE(t3.bound_holds());
  EXPECT_TRUE(t3.degree0_holds());
  EXPECT_TRUE(t3.stabilized(1));

  const auto t4 = verify_theorem3(torus("trunc:4"), 1);
  EXPECT_EQ(t4.bound, 16);
  ASSERT_EQ(t4.zbreve.size(), 2u);
  for (const auto& [j, dim] : t4.zbreve) EXPECT_LE(dim, 16) << j;
  EXPECT_TRUE(t4.degree0_holds());
}

TEST(Forms, BreveDimsStabilize) {
  const TorusConfig cfg = torus("trunc:3");
  int prev = 0;
  bool reached = false;
  for (int d = 0; d <= 3; ++d) {
    const int dim = component_space_dim(form_nullspace(cfg, d), 1, cfg, TrigSpace(3, d));
    EXPECT_GE(dim, prev);
    if (reached) EXPECT_EQ(dim, prev);
    reached = reached || (d > 0 && dim == prev);
    EXPECT_LE(dim, 9);
    prev = dim;
  }
}

TEST(Forms, ClassMapInjective) {
  for (const auto& [name, d] : std::vector<std::pair<std::string, int>>{
           {"dual", 2}, {"trunc:3", 1}, {"trunc:3", 2}, {"square:2", 1}}) {
    const auto r = verify_lemma1(torus(name), d);
    EXPECT_TRUE(r.injective) << name;
    EXPECT_LE(r.worst_residual, 1e-9);
  }
}

TEST(Forms, ZeroMeanSolutionsAreExactByLeastSquares) {
  // Independent route: solve dG = w over the function nullspace with QR.
  const TorusConfig cfg = torus("dual");
  const int d = 2;
  const TrigSpace s(2, d);
  const Nullspace fns = solve_nullspace(assemble_function_constraints(cfg, d));
  const ConstraintSystem forms = assemble_form_constraints(cfg, d);
  const Eigen::MatrixXd q = solve_nullspace(forms).basis;
  const Eigen::MatrixXd dq = differential_matrix(2, s) * fns.basis;

  Eigen::MatrixXd means(4, q.cols());
  for (int f = 0; f < 4; ++f) means.row(f) = q.row(forms.layout.column(f, 0));
  Eigen::FullPivLU<Eigen::MatrixXd> lu(means);
  lu.setThreshold(1e-10);
  const Eigen::MatrixXd zero_mean = q * lu.kernel();
  EXPECT_EQ(zero_mean.cols(), 2 * d);  // d(eps c(x)) with c non-constant
  for (int c = 0; c < zero_mean.cols(); ++c) {
    const Eigen::VectorXd coef = dq.colPivHouseholderQr().solve(zero_mean.col(c));
    EXPECT_LE((dq * coef - zero_mean.col(c)).norm(), 1e-9);
  }
}

TEST(Forms, CohomologousFormsShareBreveComponents) {
  const TorusConfig cfg = torus("trunc:3");
  const int d = 2;
  const TrigSpace s(3, d);
  const Nullspace fns = solve_nullspace(assemble_function_constraints(cfg, d));
  const Eigen::MatrixXd q = form_nullspace(cfg, d);
  std::mt19937_64 rng(33);
  std::normal_distribution<double> nd;
  const ColumnLayout layout{9, s.size()};
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd a(q.cols()), b(fns.dim());
    for (auto& x : a) x = nd(rng);
    for (auto& x : b) x = nd(rng);
    const Eigen::VectorXd w = q * a;
    const Eigen::VectorXd v = w + differential(fns.basis * b, 3, s).coeffs;
    for (int alpha = 0; alpha < 3; ++alpha) {
      for (int t = 0; t < s.size(); ++t) {
        const int c = layout.column(AForm1::field(alpha, 1, 3), t);
        EXPECT_NEAR(v[c], w[c], 1e-9);
      }
    }
  }
}

TEST(Forms, ReportAndCap) {
  const Report r = run_forms(torus("trunc:3"), 2);
  EXPECT_TRUE(r.all_pass());
  const std::string text = r.render();
  EXPECT_NE(text.find("DIM_ZBREVE[e1]=2"), std::string::npos);
  EXPECT_NE(text.find("BOUND=9"), std::string::npos);
  EXPECT_EQ(text, run_forms(torus("trunc:3"), 2).render());

  const Report dual = run_forms(torus("dual"), 2);
  EXPECT_TRUE(dual.all_pass());
  EXPECT_FALSE(dual.notes.empty());

  EXPECT_THROW(run_forms(torus("trunc:3"), 6), SizeCapExceeded);
  EXPECT_EQ(form_columns(torus("trunc:3"), 6), 19773);
  EXPECT_THROW(assemble_form_constraints(torus("trunc:3"), 7), SizeCapExceeded);
}
