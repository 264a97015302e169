#include <gtest/gtest.h>

#include <random>

#include "atorus/algebra.hpp"
#include "atorus/constraints.hpp"

using namespace atorus;

namespace {

SparseRows sparse(const Eigen::MatrixXd& d) {
  SparseRows s = d.sparseView();
  s.makeCompressed();
  return s;
}

}  // namespace

TEST(Nullspace, ZeroMatrixIsFullSpace) {
  const Nullspace ns = solve_nullspace(sparse(Eigen::MatrixXd::Zero(3, 4)));
  EXPECT_EQ(ns.dim(), 4);
  EXPECT_LE((ns.basis - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-15);
}

TEST(Nullspace, IdentityHasNone) {
  EXPECT_EQ(solve_nullspace(sparse(Eigen::MatrixXd::Identity(5, 5))).dim(), 0);
  EXPECT_EQ(solve_nullspace(sparse(3.0 * Eigen::MatrixXd::Identity(5, 5))).dim(), 0);
}

TEST(Nullspace, MatchesDenseSvd) {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> nd;
  for (int trial = 0; trial < 20; ++trial) {
    // Block-diagonal with a planted kernel in each block plus a free column.
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(9, 10);
    for (int b = 0; b < 3; ++b) {
      Eigen::MatrixXd blk(3, 3);
      for (auto& x : blk.reshaped()) x = std::round(4 * nd(rng));
      blk.col(2) = blk.col(0) - 2 * blk.col(1);
      d.block(3 * b, 3 * b, 3, 3) = blk;
    }
    Eigen::PermutationMatrix<Eigen::Dynamic> perm(10);
    perm.setIdentity();
    std::shuffle(perm.indices().data(), perm.indices().data() + 10, rng);
    d = d * perm;

    const Nullspace ns = solve_nullspace(sparse(d));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeFullV);
    const int rank = static_cast<int>(
        (svd.singularValues().array() > 1e-8 * svd.singularValues()(0)).count());
    const Eigen::MatrixXd ref = svd.matrixV().rightCols(10 - rank);
    EXPECT_EQ(ns.dim(), 10 - rank);
    EXPECT_LE(linalg::subspace_distance(ns.basis, ref), 1e-10);
    EXPECT_LE((d * ns.basis).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LE((ns.basis.transpose() * ns.basis -
               Eigen::MatrixXd::Identity(ns.dim(), ns.dim())).norm(), 1e-12);
  }
}

TEST(Nullspace, Deterministic) {
  Eigen::MatrixXd d(2, 4);
  d << 1, -1, 0, 0, 0, 0, 2, 2;
  const Nullspace a = solve_nullspace(sparse(d));
  const Nullspace b = solve_nullspace(sparse(d));
  ASSERT_EQ(a.dim(), 2);
  EXPECT_EQ(a.basis, b.basis);
  // First vector comes from the block holding column 0.
  EXPECT_NEAR(a.basis(0, 0), a.basis(1, 0), 1e-15);
  EXPECT_EQ(a.basis(2, 0), 0.0);
}

TEST(RowBuilder, DropsZerosAndEmptyRows) {
  RowBuilder rb(3);
  rb.add(0, 1.0);
  rb.add(0, -1.0);
  rb.finish_row();
  rb.add(2, 5.0);
  rb.add(1, 0.0);
  rb.finish_row();
  const SparseRows m = rb.build();
  EXPECT_EQ(m.rows(), 1);
  EXPECT_EQ(m.nonZeros(), 1);
  EXPECT_EQ(m.coeff(0, 2), 5.0);

  ConstraintSystem sys{{1, 3}, m};
  EXPECT_EQ(sys.residual(Eigen::Vector3d(1.0, 1.0, -2.0)), 10.0);
}
