#include "atorus/constraints.hpp"

#include <algorithm>
#include <numeric>

#include "atorus/algebra.hpp"

namespace atorus {

double ConstraintSystem::residual(const Eigen::VectorXd& v) const {
  if (matrix.rows() == 0) return 0.0;
  const Eigen::VectorXd r = matrix * v;
  return r.cwiseAbs().maxCoeff();
}

void RowBuilder::finish_row() {
  bool any = false;
  for (const auto& [col, value] : row_) {
    if (value != 0.0) {
      triplets_.emplace_back(rows_, col, value);
      any = true;
    }
  }
  row_.clear();
  if (any) ++rows_;
}

SparseRows RowBuilder::build() const {
  SparseRows m(rows_, cols_);
  m.setFromTriplets(triplets_.begin(), triplets_.end());
  m.makeCompressed();
  return m;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) {
    parent[x] = parent[parent[x]];
    x = parent[x];
  }
  return x;
}

struct Block {
  std::vector<int> cols;
  std::vector<int> rows;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd v;
};

}  // namespace

Nullspace solve_nullspace(const SparseRows& m, double tol) {
  const int ncols = static_cast<int>(m.cols());
  std::vector<int> parent(ncols);
  std::iota(parent.begin(), parent.end(), 0);
  for (int r = 0; r < m.outerSize(); ++r) {
    int first = -1;
    for (SparseRows::InnerIterator it(m, r); it; ++it) {
      if (first < 0) {
        first = static_cast<int>(it.col());
        continue;
      }
      const int a = find_root(parent, first);
      const int b = find_root(parent, static_cast<int>(it.col()));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }

  // Roots are the smallest column of each block, so iterating columns in
  // order lists blocks by their lowest column.
  std::vector<int> block_of(ncols, -1);
  std::vector<Block> blocks;
  std::vector<int> root_block(ncols, -1);
  for (int c = 0; c < ncols; ++c) {
    const int root = find_root(parent, c);
    if (root_block[root] < 0) {
      root_block[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    block_of[c] = root_block[root];
    blocks[block_of[c]].cols.push_back(c);
  }
  for (int r = 0; r < m.outerSize(); ++r) {
    SparseRows::InnerIterator it(m, r);
    if (it) blocks[block_of[it.col()]].rows.push_back(r);
  }

  double sigma_max = 0.0;
  std::vector<int> local(ncols, -1);
  for (Block& b : blocks) {
    if (b.rows.empty()) continue;
    for (std::size_t i = 0; i < b.cols.size(); ++i) local[b.cols[i]] = static_cast<int>(i);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<int>(b.rows.size()),
                                                  static_cast<int>(b.cols.size()));
    for (std::size_t i = 0; i < b.rows.size(); ++i) {
      for (SparseRows::InnerIterator it(m, b.rows[i]); it; ++it) {
        dense(static_cast<int>(i), local[it.col()]) = it.value();
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(dense, Eigen::ComputeFullV);
    b.sigma = svd.singularValues();
    b.v = svd.matrixV();
    if (b.sigma.size() > 0) sigma_max = std::max(sigma_max, b.sigma[0]);
  }

  Nullspace out;
  out.sigma_max = sigma_max;
  std::vector<Eigen::VectorXd> vectors;
  for (const Block& b : blocks) {
    const int k = static_cast<int>(b.cols.size());
    Eigen::MatrixXd local;
    double worst = 0.0;
    if (b.rows.empty()) {
      local = Eigen::MatrixXd::Identity(k, k);
    } else {
      int rank = 0;
      while (rank < b.sigma.size() && sigma_max > 0.0 && b.sigma[rank] > tol * sigma_max) ++rank;
      if (rank < b.sigma.size()) worst = b.sigma[rank];
      local = linalg::canonical(b.v.rightCols(k - rank), 1e-12);
    }
    for (int j = 0; j < local.cols(); ++j) {
      Eigen::VectorXd v = Eigen::VectorXd::Zero(ncols);
      for (int i = 0; i < k; ++i) v[b.cols[i]] = local(i, j);
      vectors.push_back(std::move(v));
      out.singular_values.push_back(worst);
    }
  }
  out.basis.resize(ncols, static_cast<int>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) out.basis.col(static_cast<int>(j)) = vectors[j];
  return out;
}

Nullspace solve_nullspace(const ConstraintSystem& sys, double tol) {
  return solve_nullspace(sys.matrix, tol);
}

}  // namespace atorus
