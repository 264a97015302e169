#pragma once

#include <map>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace atorus {

/// Columns are (field, trig index) pairs: column = field * trig_size + t.
/// Function systems have one field per algebra component; form systems one
/// per (coordinate direction, component).
struct ColumnLayout {
  int fields = 0;
  int trig_size = 0;

  int cols() const { return fields * trig_size; }
  int column(int field, int t) const { return field * trig_size + t; }
  int field_of(int col) const { return col / trig_size; }
  int trig_of(int col) const { return col % trig_size; }
};

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct ConstraintSystem {
  ColumnLayout layout;
  SparseRows matrix;

  int rows() const { return static_cast<int>(matrix.rows()); }
  int cols() const { return static_cast<int>(matrix.cols()); }
  /// max |(M v)_r|.
  double residual(const Eigen::VectorXd& v) const;
};

/// Accumulates rows one at a time; zero entries and empty rows are dropped.
class RowBuilder {
 public:
  explicit RowBuilder(int cols) : cols_(cols) {}

  void add(int col, double value) { row_[col] += value; }
  void finish_row();
  SparseRows build() const;

 private:
  int cols_;
  int rows_ = 0;
  std::map<int, double> row_;
  std::vector<Eigen::Triplet<double>> triplets_;
};

struct Nullspace {
  /// Orthonormal columns spanning the solutions.
  Eigen::MatrixXd basis;
  /// Per basis vector: the largest singular value of its block that was
  /// classified as null.
  std::vector<double> singular_values;
  double sigma_max = 0.0;

  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Right-singular directions with singular value <= tol * sigma_max.
/// The matrix is split into column blocks that share no row, each block
/// is solved by a dense SVD, and the null vectors are ordered by block
/// (lowest column first) and canonicalised inside each block.
Nullspace solve_nullspace(const SparseRows& m, double tol = 1e-8);
Nullspace solve_nullspace(const ConstraintSystem& sys, double tol = 1e-8);

}  // namespace atorus
