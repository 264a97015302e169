#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "atorus/errors.hpp"
#include "atorus/trig.hpp"

using namespace atorus;

TEST(Trig, SizeAndOrdering) {
  const TrigSpace s(1, 2);
  EXPECT_EQ(s.size(), 5);
  EXPECT_EQ(s.label(0), "1");
  EXPECT_EQ(s.label(1), "cos(1)");
  EXPECT_EQ(s.label(2), "sin(1)");
  EXPECT_EQ(s.label(3), "cos(2)");
  EXPECT_EQ(s.label(4), "sin(2)");

  const TrigSpace t(2, 1);
  EXPECT_EQ(t.size(), 9);
  // Representatives have a positive first nonzero entry.
  for (int i = 1; i < t.size(); ++i) {
    const auto& k = t.frequency(i);
    const int lead = k[0] != 0 ? k[0] : k[1];
    EXPECT_GT(lead, 0) << t.label(i);
  }
  EXPECT_EQ(t.frequency(1), (std::vector<int>{0, 1}));
  EXPECT_EQ(t.frequency(3), (std::vector<int>{1, -1}));
  EXPECT_EQ(TrigSpace::count(3, 2), 125);
  EXPECT_EQ(TrigSpace::count(200, 50), -1);
  EXPECT_THROW(TrigSpace(8, 6), SizeCapExceeded);
}

TEST(Trig, PartnersAndSupport) {
  const TrigSpace t(2, 1);
  for (int i = 1; i < t.size(); ++i) {
    EXPECT_EQ(t.partner(t.partner(i)), i);
    EXPECT_EQ(t.frequency(t.partner(i)), t.frequency(i));
    EXPECT_NE(t.is_sine(i), t.is_sine(t.partner(i)));
  }
  EXPECT_TRUE(t.supported_below(0, 1));
  EXPECT_FALSE(t.supported_below(1, 1));
  EXPECT_EQ(t.label(5), "cos(1,0)");
  EXPECT_TRUE(t.supported_below(5, 1));
}

TEST(Trig, GradientMatchesFiniteDifferences) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  const TrigSpace s(3, 2);
  Eigen::VectorXd coef(s.size());
  for (auto& c : coef) c = u(rng);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> theta{u(rng), u(rng), u(rng)};
    const Eigen::VectorXd g = s.gradient(coef, theta);
    for (int a = 0; a < 3; ++a) {
      auto p = theta, m = theta;
      const double h = 1e-5;
      p[a] += h;
      m[a] -= h;
      const double fd = (coef.dot(s.eval_all(p)) - coef.dot(s.eval_all(m))) / (2 * h);
      EXPECT_NEAR(g[a], fd, 1e-6 * (1.0 + std::abs(fd)));
    }
  }
}

TEST(Trig, BasisIsOrthogonalOnFineGrid) {
  const TrigSpace s(2, 1);
  const int grid = 8;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(s.size(), s.size());
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const std::vector<double> theta{2 * M_PI * i / grid, 2 * M_PI * j / grid};
      const Eigen::VectorXd v = s.eval_all(theta);
      gram += v * v.transpose();
    }
  }
  gram /= grid * grid;
  for (int i = 0; i < s.size(); ++i) {
    for (int j = 0; j < s.size(); ++j) {
      const double expect = i != j ? 0.0 : (i == 0 ? 1.0 : 0.5);
      EXPECT_NEAR(gram(i, j), expect, 1e-12);
    }
  }
}

TEST(Trig, EvalMatchesDefinition) {
  const TrigSpace s(2, 2);
  const std::vector<double> theta{0.3, -1.1};
  for (int t = 1; t < s.size(); ++t) {
    const auto& k = s.frequency(t);
    const double phase = k[0] * theta[0] + k[1] * theta[1];
    EXPECT_NEAR(s.eval(t, theta), s.is_sine(t) ? std::sin(phase) : std::cos(phase), 1e-15);
  }
}
