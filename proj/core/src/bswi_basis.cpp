#include "wavesim/bswi_basis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "wavesim/errors.hpp"

namespace wavesim {

namespace {

void check_domain(double xi, const char* op) {
  if (!(xi >= 0.0 && xi <= 1.0)) {
    std::ostringstream msg;
    msg << op << ": xi = " << xi << " outside [0, 1]";
    throw std::domain_error(msg.str());
  }
}

// Index i of the knot span [t_i, t_{i+1}) containing xi; xi = 1 maps to the last span.
int find_span(const std::vector<double>& t, int p, int n, double xi) {
  if (xi >= t[static_cast<std::size_t>(n)]) return n - 1;
  const auto first = t.begin() + p;
  const auto last = t.begin() + n;
  return static_cast<int>(std::upper_bound(first, last, xi) - t.begin()) - 1;
}

// Cox-de Boor triangle: writes N_{span-p+k, p}(xi) for k = 0..p into N.
void basis_funs(const std::vector<double>& t, int span, int p, double xi, double* N) {
  double left[8];
  double right[8];
  N[0] = 1.0;
  for (int r = 1; r <= p; ++r) {
    left[r] = xi - t[static_cast<std::size_t>(span + 1 - r)];
    right[r] = t[static_cast<std::size_t>(span + r)] - xi;
    double saved = 0.0;
    for (int k = 0; k < r; ++k) {
      const double tmp = N[k] / (right[k + 1] + left[r - k]);
      N[k] = saved + right[k + 1] * tmp;
      saved = left[r - k] * tmp;
    }
    N[r] = saved;
  }
}

}  // namespace

ScalingBasis ScalingBasis::bswi43() {
  ScalingBasis b;
  b.order = 4;
  b.scale = 3;
  const int spans = 1 << b.scale;
  b.knots.assign(static_cast<std::size_t>(b.order), 0.0);
  for (int k = 1; k < spans; ++k) b.knots.push_back(static_cast<double>(k) / spans);
  b.knots.insert(b.knots.end(), static_cast<std::size_t>(b.order), 1.0);
  b.n_funcs = spans + b.order - 1;
  return b;
}

NodeLayout NodeLayout::bswi43_default() {
  NodeLayout nodes;
  nodes.coords.resize(11);
  nodes.coords << 0.0, 1.0 / 16.0, 1.0 / 8.0, 2.0 / 8.0, 3.0 / 8.0, 4.0 / 8.0, 5.0 / 8.0,
      6.0 / 8.0, 7.0 / 8.0, 15.0 / 16.0, 1.0;
  return nodes;
}

Eigen::VectorXd eval_scaling_functions(const ScalingBasis& basis, double xi) {
  check_domain(xi, "eval_scaling_functions");
  const int p = basis.order - 1;
  const int span = find_span(basis.knots, p, basis.n_funcs, xi);
  double N[8];
  basis_funs(basis.knots, span, p, xi, N);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(basis.n_funcs);
  for (int k = 0; k <= p; ++k) out[span - p + k] = N[k];
  return out;
}

Eigen::VectorXd eval_scaling_derivatives(const ScalingBasis& basis, double xi) {
  check_domain(xi, "eval_scaling_derivatives");
  const int p = basis.order - 1;
  const auto& t = basis.knots;
  const int span = find_span(t, p, basis.n_funcs, xi);
  // Degree p-1 values N_{span-p+1+k, p-1}, k = 0..p-1, on the same span.
  double Nd[8];
  basis_funs(t, span, p - 1, xi, Nd);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(basis.n_funcs);
  for (int k = 0; k <= p; ++k) {
    const int idx = span - p + k;
    double d = 0.0;
    if (k >= 1) {
      const double den = t[static_cast<std::size_t>(idx + p)] - t[static_cast<std::size_t>(idx)];
      if (den > 0.0) d += Nd[k - 1] / den;
    }
    if (k <= p - 1) {
      const double den =
          t[static_cast<std::size_t>(idx + p + 1)] - t[static_cast<std::size_t>(idx + 1)];
      if (den > 0.0) d -= Nd[k] / den;
    }
    out[idx] = p * d;
  }
  return out;
}

TransformMatrix build_transform_matrix(const ScalingBasis& basis, const NodeLayout& nodes) {
  const int n = basis.n_funcs;
  if (nodes.coords.size() != n) {
    throw NumericalError("build_transform_matrix: node count does not match basis size");
  }
  for (int j = 1; j < n; ++j) {
    if (!(nodes.coords[j] > nodes.coords[j - 1])) {
      throw NumericalError("build_transform_matrix: node coordinates must increase strictly");
    }
  }
  Eigen::MatrixXd A(n, n);
  for (int j = 0; j < n; ++j) {
    A.row(j) = eval_scaling_functions(basis, nodes.coords[j]).transpose();
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const double smin = svd.singularValues()(n - 1);
  const double cond = smin > 0.0 ? svd.singularValues()(0) / smin
                                 : std::numeric_limits<double>::infinity();
  const auto describe_nodes = [&nodes]() {
    std::ostringstream msg;
    msg << "[";
    for (int j = 0; j < nodes.coords.size(); ++j) {
      if (j) msg << ", ";
      msg << nodes.coords[j];
    }
    msg << "]";
    return msg.str();
  };
  if (!(cond <= 1e12)) {
    std::ostringstream msg;
    msg << "build_transform_matrix: evaluation matrix ill-conditioned (cond = " << cond
        << ") for nodes " << describe_nodes();
    throw NumericalError(msg.str());
  }
  TransformMatrix transform;
  transform.R = A.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n));
  transform.condition_number = cond;
  const double residual =
      (A * transform.R - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(residual < 1e-9)) {
    std::ostringstream msg;
    msg << "build_transform_matrix: inversion residual " << residual << " for nodes "
        << describe_nodes();
    throw NumericalError(msg.str());
  }
  return transform;
}

Eigen::VectorXd eval_shape_functions(const ScalingBasis& basis, const TransformMatrix& transform,
                                     double xi) {
  return transform.R.transpose() * eval_scaling_functions(basis, xi);
}

Eigen::VectorXd eval_shape_derivatives(const ScalingBasis& basis, const TransformMatrix& transform,
                                       double xi) {
  return transform.R.transpose() * eval_scaling_derivatives(basis, xi);
}

Eigen::VectorXd eval_shape_functions(const ScalingBasis& basis, const NodeLayout& nodes,
                                     double xi) {
  return eval_shape_functions(basis, build_transform_matrix(basis, nodes), xi);
}

Eigen::VectorXd eval_shape_derivatives(const ScalingBasis& basis, const NodeLayout& nodes,
                                       double xi) {
  return eval_shape_derivatives(basis, build_transform_matrix(basis, nodes), xi);
}

QuadratureRule QuadratureRule::per_span(const ScalingBasis& basis, int points_per_span) {
  const GaussRule unit = gauss_legendre_unit(points_per_span);
  std::vector<double> pts;
  std::vector<double> wts;
  for (std::size_t i = 0; i + 1 < basis.knots.size(); ++i) {
    const double a = basis.knots[i];
    const double b = basis.knots[i + 1];
    if (!(b > a)) continue;
    for (int q = 0; q < points_per_span; ++q) {
      pts.push_back(a + (b - a) * unit.points[q]);
      wts.push_back((b - a) * unit.weights[q]);
    }
  }
  QuadratureRule rule;
  rule.points = Eigen::Map<Eigen::VectorXd>(pts.data(), static_cast<Eigen::Index>(pts.size()));
  rule.weights = Eigen::Map<Eigen::VectorXd>(wts.data(), static_cast<Eigen::Index>(wts.size()));
  return rule;
}

}  // namespace wavesim
