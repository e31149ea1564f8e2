#include "wavesim/element_library.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "wavesim/bswi_basis.hpp"
#include "wavesim/errors.hpp"
#include "wavesim/numerics.hpp"

namespace wavesim {

namespace {

// Unit-interval products of the BSWI4,3 shape functions, shared by all wavelet elements:
// S00 = int N^T N, S10 = int N'^T N, S11 = int N'^T N'.
struct ShapeIntegrals {
  Eigen::MatrixXd S00;
  Eigen::MatrixXd S10;
  Eigen::MatrixXd S11;
};

const ShapeIntegrals& shape_integrals() {
  static const ShapeIntegrals tables = [] {
    const ScalingBasis basis = ScalingBasis::bswi43();
    const NodeLayout nodes = NodeLayout::bswi43_default();
    const TransformMatrix transform = build_transform_matrix(basis, nodes);
    const QuadratureRule quad = QuadratureRule::per_span(basis);
    const int n = basis.n_funcs;
    Eigen::MatrixXd g00 = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd g10 = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd g11 = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index q = 0; q < quad.points.size(); ++q) {
      const double w = quad.weights[q];
      const Eigen::VectorXd phi = eval_scaling_functions(basis, quad.points[q]);
      const Eigen::VectorXd dphi = eval_scaling_derivatives(basis, quad.points[q]);
      g00.noalias() += w * phi * phi.transpose();
      g10.noalias() += w * dphi * phi.transpose();
      g11.noalias() += w * dphi * dphi.transpose();
    }
    g00 = 0.5 * (g00 + g00.transpose()).eval();
    g11 = 0.5 * (g11 + g11.transpose()).eval();
    ShapeIntegrals out;
    out.S00 = transform.R.transpose() * g00 * transform.R;
    out.S10 = transform.R.transpose() * g10 * transform.R;
    out.S11 = transform.R.transpose() * g11 * transform.R;
    out.S00 = 0.5 * (out.S00 + out.S00.transpose()).eval();
    out.S11 = 0.5 * (out.S11 + out.S11.transpose()).eval();
    return out;
  }();
  return tables;
}

void check_length(double l_e, const char* op) {
  if (!(l_e > 0.0)) {
    std::ostringstream msg;
    msg << op << ": element length " << l_e << " must be positive";
    throw std::domain_error(msg.str());
  }
}

}  // namespace

MaterialProps MaterialProps::make(double E, double nu, double rho) {
  if (!(E > 0.0)) throw std::domain_error("MaterialProps: E must be positive");
  if (!(rho > 0.0)) throw std::domain_error("MaterialProps: rho must be positive");
  if (!(nu > -1.0 && nu < 0.5)) throw std::domain_error("MaterialProps: nu outside (-1, 0.5)");
  MaterialProps m;
  m.E = E;
  m.nu = nu;
  m.rho = rho;
  m.G = E / (2.0 * (1.0 + nu));
  return m;
}

MaterialProps MaterialProps::steel() { return make(200e9, 0.3, 7800.0); }

MaterialProps MaterialProps::aluminum() { return make(70e9, 0.3, 2730.0); }

SectionProps SectionProps::rect(double b, double h, double k) {
  if (!(b > 0.0 && h > 0.0)) throw std::domain_error("SectionProps: b, h must be positive");
  if (!(k > 0.0)) throw std::domain_error("SectionProps: shear coefficient must be positive");
  SectionProps s;
  s.b = b;
  s.h = h;
  s.A = b * h;
  s.I_y = b * h * h * h / 12.0;
  s.k = k;
  return s;
}

ElementMatrices bswi_rod_matrices(const MaterialProps& mat, const SectionProps& sec, double l_e) {
  check_length(l_e, "bswi_rod_matrices");
  const ShapeIntegrals& S = shape_integrals();
  ElementMatrices el;
  el.K = (mat.E * sec.A / l_e) * S.S11;
  el.M = (mat.rho * sec.A * l_e) * S.S00;
  el.dof_order = DofOrder::RodAxial;
  return el;
}

ElementMatrices bswi_beam_matrices(const MaterialProps& mat, const SectionProps& sec, double l_e) {
  check_length(l_e, "bswi_beam_matrices");
  const ShapeIntegrals& S = shape_integrals();
  const int n = static_cast<int>(S.S00.rows());
  const double GAk = mat.G * sec.A / sec.k;
  ElementMatrices el;
  el.K.setZero(2 * n, 2 * n);
  el.M.setZero(2 * n, 2 * n);
  el.K.topLeftCorner(n, n) = (GAk / l_e) * S.S11;
  el.K.topRightCorner(n, n) = -GAk * S.S10;
  el.K.bottomLeftCorner(n, n) = el.K.topRightCorner(n, n).transpose();
  el.K.bottomRightCorner(n, n) = (mat.E * sec.I_y / l_e) * S.S11 + (GAk * l_e) * S.S00;
  el.M.topLeftCorner(n, n) = (mat.rho * sec.A * l_e) * S.S00;
  el.M.bottomRightCorner(n, n) = (mat.rho * sec.I_y * l_e) * S.S00;
  el.dof_order = DofOrder::BeamBlocks;
  return el;
}

ElementMatrices conventional_rod_matrices(const MaterialProps& mat, const SectionProps& sec,
                                          double l_e) {
  check_length(l_e, "conventional_rod_matrices");
  ElementMatrices el;
  el.K.resize(2, 2);
  el.K << 1.0, -1.0, -1.0, 1.0;
  el.K *= mat.E * sec.A / l_e;
  el.M.resize(2, 2);
  el.M << 2.0, 1.0, 1.0, 2.0;
  el.M *= mat.rho * sec.A * l_e / 6.0;
  el.dof_order = DofOrder::RodAxial;
  return el;
}

ElementMatrices conventional_beam_matrices(const MaterialProps& mat, const SectionProps& sec,
                                           double l_e) {
  check_length(l_e, "conventional_beam_matrices");
  ElementMatrices el;
  el.K.setZero(4, 4);
  el.M.setZero(4, 4);

  // Bending: theta' is constant, exact with any rule.
  const double kb = mat.E * sec.I_y / l_e;
  el.K(1, 1) += kb;
  el.K(3, 3) += kb;
  el.K(1, 3) -= kb;
  el.K(3, 1) -= kb;

  // Shear: one midpoint Gauss point, shear strain B_s u with B_s = [-1/l, -1/2, 1/l, -1/2].
  Eigen::RowVector4d Bs;
  Bs << -1.0 / l_e, -0.5, 1.0 / l_e, -0.5;
  el.K += (mat.G * sec.A / sec.k * l_e) * Bs.transpose() * Bs;

  // Consistent mass: translational on w DOFs, rotary on theta DOFs.
  Eigen::Matrix2d m2;
  m2 << 2.0, 1.0, 1.0, 2.0;
  const Eigen::Matrix2d mt = (mat.rho * sec.A * l_e / 6.0) * m2;
  const Eigen::Matrix2d mr = (mat.rho * sec.I_y * l_e / 6.0) * m2;
  const int wi[2] = {0, 2};
  const int ti[2] = {1, 3};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      el.M(wi[i], wi[j]) = mt(i, j);
      el.M(ti[i], ti[j]) = mr(i, j);
    }
  }
  el.dof_order = DofOrder::BeamNodal;
  return el;
}

double stress_intensity_correction(double depth_ratio) {
  const double r = depth_ratio;
  const double x = 0.5 * M_PI * r;  // pi*alpha/(2h)
  const double tan_over_x = x == 0.0 ? 1.0 : std::tan(x) / x;
  const double s = std::sin(x);
  const double poly = 0.752 + 2.02 * r + 0.37 * (1.0 - s) * (1.0 - s) * (1.0 - s);
  return std::sqrt(tan_over_x) * poly / std::cos(x);
}

CrackFlexibilities crack_flexibilities(const MaterialProps& mat, const SectionProps& sec,
                                       double a) {
  return crack_flexibilities(mat, sec, a, nullptr);
}

CrackFlexibilities crack_flexibilities(const MaterialProps& mat, const SectionProps& sec, double a,
                                       const std::function<double(double)>& shear_correction) {
  if (a < 0.0) throw std::domain_error("crack_flexibilities: negative depth");
  if (a >= sec.h) throw std::domain_error("crack_flexibilities: through-crack (a >= h)");
  CrackFlexibilities c;
  if (a == 0.0) return c;
  const double ratio = a / sec.h;
  // Both integrals are int_0^a (alpha/h^2) f^2(alpha/h) dalpha = int_0^{a/h} u f^2(u) du.
  const auto moment = [](const std::function<double(double)>& f, double upper) {
    return adaptive_simpson(
        [&f](double u) {
          const double v = f(u);
          return u * v * v;
        },
        0.0, upper, 1e-8);
  };
  const double I_bend = moment(stress_intensity_correction, ratio);
  const double I_shear =
      shear_correction ? moment(shear_correction, ratio) : I_bend;
  c.c_b = 72.0 * M_PI / (mat.E * sec.b * sec.h * sec.h) * I_bend;
  c.c_s = 2.0 * sec.k * sec.k * M_PI / (mat.E * sec.b) * I_shear;
  return c;
}

ElementMatrices crack_spring_matrices(double c_b, double c_s) {
  if (c_b < 0.0 || c_s < 0.0) throw std::domain_error("crack_spring_matrices: negative flexibility");
  if (c_b == 0.0 || c_s == 0.0) {
    throw NoCrackSignal("crack_spring_matrices: zero flexibility, merge the interface nodes");
  }
  const double kb = 1.0 / c_b;
  const double ks = 1.0 / c_s;
  ElementMatrices el;
  el.K.setZero(4, 4);
  el.K << ks, 0.0, -ks, 0.0,  //
      0.0, kb, 0.0, -kb,      //
      -ks, 0.0, ks, 0.0,      //
      0.0, -kb, 0.0, kb;
  el.M = Eigen::MatrixXd::Zero(4, 4);
  el.dof_order = DofOrder::CrackSpring;
  return el;
}

}  // namespace wavesim
