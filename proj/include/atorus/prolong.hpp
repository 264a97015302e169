#pragma once

// Prolongation of real functions to A-differentiable functions on A^m.
//
// Two independent routes compute the same lift G(X) of g:
//   taylor_lift: g(x) + sum_{1 <= |p| < nu} D^p g(x) (X - x)^p / p!
//                with D^p g obtained symbolically and (X - x)^p as algebra
//                products of the radical parts;
//   lift_eval:   evaluates the expression tree directly in algebra
//                arithmetic, primitives expanded by their finite Taylor series.
// Terms with |p| >= nu vanish because (X - x)^p lies in rad^|p|.

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "atorus/algebra.hpp"
#include "atorus/expr.hpp"

namespace atorus {

/// A point of A^m in standard-basis coordinates.
struct APoint {
  std::vector<Element> components;

  int m() const { return static_cast<int>(components.size()); }
  std::vector<double> real_parts() const;
};

struct MultiIndex {
  std::vector<int> p;

  int order() const;
  double factorial() const;
};

/// All multi-indices over m variables with 1 <= |p| <= max_order, graded
/// by |p| and descending-lexicographic inside each grade.
std::vector<MultiIndex> multi_indices(int m, int max_order);

Element taylor_lift(const Expr& g, const APoint& x, const LocalAlgebra& a);
Element lift_eval(const Expr& g, const APoint& x, const LocalAlgebra& a);

/// Real map R^{n m} -> R^n. Input is slot-major: entry j*n + i is the
/// e_i-coordinate of the j-th argument.
using RealMap = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

Eigen::VectorXd flatten(const APoint& x);
APoint unflatten(const Eigen::VectorXd& v, int n, int m);

/// The lift of g as a real map, via taylor_lift.
RealMap lifted_map(const Expr& g, const LocalAlgebra& a, int m);

/// Largest entry of J_j L_{e_i} - L_{e_i} J_j over argument blocks j and
/// basis elements e_i, with J from central differences of step h.
double adiff_defect(const RealMap& f, const APoint& x, const StructureConstants& alg,
                    double h = 1e-5);

/// |(e_1-coefficient of the lift) - sum_j dg/dx_j(x) X^j_1|. The lift's
/// higher-order terms live in rad^2, which has no e_1 component in the
/// standard basis, so the residual is zero up to rounding.
double e1_component_identity(const Expr& g, const APoint& x, const LocalAlgebra& a);

// Literals: "<real> [ + <real> <name> ]*", points separated by ';'.
Element parse_element(const std::string& text, const StructureConstants& alg);
APoint parse_point(const std::string& text, const StructureConstants& alg);
std::string format_element(const Element& e, const StructureConstants& alg);

}  // namespace atorus
