#ifndef WAVESIM_BSWI_BASIS_HPP
#define WAVESIM_BSWI_BASIS_HPP

#include <Eigen/Dense>

#include <vector>

#include "wavesim/numerics.hpp"

namespace wavesim {

/// B-spline scaling-function space on [0,1]: order m B-splines of scale j on the
/// clamped knot vector with 2^j uniform interior spans. BSWI4,3 has 11 functions.
struct ScalingBasis {
  int order = 0;               // m
  int scale = 0;               // j
  std::vector<double> knots;   // clamped, nondecreasing, m copies at each end
  int n_funcs = 0;             // 2^j + m - 1

  static ScalingBasis bswi43();
};

/// Element node coordinates on [0,1], one per basis function.
struct NodeLayout {
  Eigen::VectorXd coords;  // strictly increasing, first 0, last 1

  static NodeLayout bswi43_default();
};

/// Nodal transform R: shape functions N(xi) = Phi(xi) * R interpolate nodal values.
struct TransformMatrix {
  Eigen::MatrixXd R;
  double condition_number = 0.0;  // of the node evaluation matrix
};

/// All scaling functions at xi by the Cox-de Boor recursion. Throws std::domain_error
/// outside [0,1].
Eigen::VectorXd eval_scaling_functions(const ScalingBasis& basis, double xi);

/// First derivatives dPhi/dxi. At interior knots the right-sided value is returned
/// (left-sided at xi = 1).
Eigen::VectorXd eval_scaling_derivatives(const ScalingBasis& basis, double xi);

/// Inverts the node evaluation matrix A (rows Phi(xi_j)). Throws NumericalError when A
/// is ill-conditioned (cond > 1e12) or the inversion residual exceeds 1e-9.
TransformMatrix build_transform_matrix(const ScalingBasis& basis, const NodeLayout& nodes);

/// N(xi) = Phi(xi) * R and its derivative. The (basis, nodes) overloads rebuild R.
Eigen::VectorXd eval_shape_functions(const ScalingBasis& basis, const TransformMatrix& transform,
                                     double xi);
Eigen::VectorXd eval_shape_derivatives(const ScalingBasis& basis, const TransformMatrix& transform,
                                       double xi);
Eigen::VectorXd eval_shape_functions(const ScalingBasis& basis, const NodeLayout& nodes, double xi);
Eigen::VectorXd eval_shape_derivatives(const ScalingBasis& basis, const NodeLayout& nodes,
                                       double xi);

/// Composite Gauss rule, one n-point panel per knot span; exact per span for
/// polynomial degree <= 2n-1.
struct QuadratureRule {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;

  static QuadratureRule per_span(const ScalingBasis& basis, int points_per_span = 4);
};

}  // namespace wavesim

#endif  // WAVESIM_BSWI_BASIS_HPP
