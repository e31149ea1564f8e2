#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "wavesim/bswi_basis.hpp"
#include "wavesim/element_library.hpp"
#include "wavesim/errors.hpp"

using namespace wavesim;

namespace {

const MaterialProps kSteel = MaterialProps::steel();
const SectionProps kSec = SectionProps::rect(0.02, 0.02);

// Trapezoid integration over a dense grid; same evaluator, independent integration.
Eigen::MatrixXd rod_stiffness_trapezoid(const MaterialProps& mat, const SectionProps& sec,
                                        double l_e, int n_grid) {
  const ScalingBasis basis = ScalingBasis::bswi43();
  const NodeLayout nodes = NodeLayout::bswi43_default();
  const TransformMatrix transform = build_transform_matrix(basis, nodes);
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(11, 11);
  for (int g = 0; g <= n_grid; ++g) {
    const double xi = static_cast<double>(g) / n_grid;
    const Eigen::VectorXd dN = eval_shape_derivatives(basis, transform, xi);
    const double w = (g == 0 || g == n_grid) ? 0.5 : 1.0;
    acc += w * dN * dN.transpose();
  }
  return mat.E * sec.A / l_e * acc / n_grid;
}

}  // namespace

TEST_CASE("material presets and validation") {
  CHECK(kSteel.E == 200e9);
  CHECK(kSteel.nu == 0.3);
  CHECK(kSteel.rho == 7800.0);
  CHECK(kSteel.G == doctest::Approx(200e9 / 2.6));
  const MaterialProps alu = MaterialProps::aluminum();
  CHECK(alu.E == 70e9);
  CHECK(alu.rho == 2730.0);
  CHECK_THROWS_AS((void)MaterialProps::make(-1.0, 0.3, 7800.0), std::domain_error);
  CHECK_THROWS_AS((void)MaterialProps::make(200e9, 0.5, 7800.0), std::domain_error);
  CHECK_THROWS_AS((void)MaterialProps::make(200e9, 0.3, 0.0), std::domain_error);
}

TEST_CASE("rectangular section properties") {
  CHECK(kSec.A == doctest::Approx(4e-4));
  CHECK(kSec.I_y == doctest::Approx(0.02 * std::pow(0.02, 3) / 12.0));
  CHECK(kSec.k == 1.2);
}

TEST_CASE("wavelet rod element: rigid body mode, strain energy, mass") {
  const double l = 0.075;
  const ElementMatrices el = bswi_rod_matrices(kSteel, kSec, l);
  REQUIRE(el.K.rows() == 11);
  REQUIRE(el.M.rows() == 11);
  CHECK((el.K - el.K.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((el.M - el.M.transpose()).cwiseAbs().maxCoeff() == 0.0);

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(11);
  const double k_scale = el.K.cwiseAbs().maxCoeff();
  CHECK((el.K * ones).cwiseAbs().maxCoeff() < 1e-12 * k_scale);

  // linear axial field u(x) = x/l has energy EA/(2l); quadratic x^2/l^2 has 4EA/(3l)/2
  const Eigen::VectorXd xi = NodeLayout::bswi43_default().coords;
  CHECK(xi.dot(el.K * xi) == doctest::Approx(kSteel.E * kSec.A / l).epsilon(1e-12));
  const Eigen::VectorXd xi2 = xi.cwiseProduct(xi);
  CHECK(xi2.dot(el.K * xi2) ==
        doctest::Approx(4.0 / 3.0 * kSteel.E * kSec.A / l).epsilon(1e-12));

  const double mass = ones.dot(el.M * ones);
  CHECK(mass == doctest::Approx(kSteel.rho * kSec.A * l).epsilon(1e-12));
  CHECK(ones.dot(el.M * xi) == doctest::Approx(kSteel.rho * kSec.A * l / 2.0).epsilon(1e-12));
}

TEST_CASE("wavelet rod stiffness agrees with dense trapezoid integration") {
  const double l = 0.075;
  const ElementMatrices el = bswi_rod_matrices(kSteel, kSec, l);
  const Eigen::MatrixXd oracle = rod_stiffness_trapezoid(kSteel, kSec, l, 20000);
  const double scale = el.K.cwiseAbs().maxCoeff();
  CHECK((el.K - oracle).cwiseAbs().maxCoeff() < 1e-6 * scale);
}

TEST_CASE("wavelet rod element reproduces clamped-free bar frequencies") {
  const double l = 0.4;
  const ElementMatrices el = bswi_rod_matrices(kSteel, kSec, l);
  // clamp the left node by dropping its row and column
  const Eigen::MatrixXd K = el.K.bottomRightCorner(10, 10);
  const Eigen::MatrixXd M = el.M.bottomRightCorner(10, 10);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(K, M);
  REQUIRE(eig.info() == Eigen::Success);
  const double c0 = std::sqrt(kSteel.E / kSteel.rho);
  const double w1 = std::sqrt(eig.eigenvalues()(0));
  const double w2 = std::sqrt(eig.eigenvalues()(1));
  CHECK(w1 == doctest::Approx(M_PI * c0 / (2.0 * l)).epsilon(1e-5));
  CHECK(w2 == doctest::Approx(3.0 * M_PI * c0 / (2.0 * l)).epsilon(1e-2));
}

TEST_CASE("wavelet beam element: rigid body modes, bending and shear energy, mass") {
  const double l = 0.04;
  const ElementMatrices el = bswi_beam_matrices(kSteel, kSec, l);
  REQUIRE(el.K.rows() == 22);
  CHECK((el.K - el.K.transpose()).cwiseAbs().maxCoeff() < 1e-12 * el.K.cwiseAbs().maxCoeff());

  const Eigen::VectorXd xi = NodeLayout::bswi43_default().coords;
  const double k_scale = el.K.cwiseAbs().maxCoeff();

  Eigen::VectorXd translate = Eigen::VectorXd::Zero(22);
  translate.head(11).setOnes();
  CHECK((el.K * translate).cwiseAbs().maxCoeff() < 1e-12 * k_scale);

  Eigen::VectorXd rotate = Eigen::VectorXd::Zero(22);
  rotate.head(11) = xi * l;  // w = x
  rotate.tail(11).setOnes();  // theta = 1
  CHECK((el.K * rotate).cwiseAbs().maxCoeff() < 1e-10 * k_scale);

  // gamma-free bending state: theta = x/l, w = x^2/(2l), curvature 1/l
  Eigen::VectorXd bend = Eigen::VectorXd::Zero(22);
  bend.head(11) = 0.5 * l * xi.cwiseProduct(xi);
  bend.tail(11) = xi;
  CHECK(bend.dot(el.K * bend) == doctest::Approx(kSteel.E * kSec.I_y / l).epsilon(1e-9));

  // pure shear state: w = x, theta = 0
  Eigen::VectorXd shear = Eigen::VectorXd::Zero(22);
  shear.head(11) = xi * l;
  CHECK(shear.dot(el.K * shear) ==
        doctest::Approx(kSteel.G * kSec.A * l / kSec.k).epsilon(1e-10));

  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(11);
  Eigen::VectorXd wt = Eigen::VectorXd::Zero(22);
  wt.head(11) = ones;
  CHECK(wt.dot(el.M * wt) == doctest::Approx(kSteel.rho * kSec.A * l).epsilon(1e-12));
  Eigen::VectorXd th = Eigen::VectorXd::Zero(22);
  th.tail(11) = ones;
  CHECK(th.dot(el.M * th) == doctest::Approx(kSteel.rho * kSec.I_y * l).epsilon(1e-12));
  CHECK(wt.dot(el.M * th) == doctest::Approx(0.0));
}

TEST_CASE("conventional rod element closed form") {
  const double l = 0.05;
  const ElementMatrices el = conventional_rod_matrices(kSteel, kSec, l);
  const double ka = kSteel.E * kSec.A / l;
  CHECK(el.K(0, 0) == doctest::Approx(ka));
  CHECK(el.K(0, 1) == doctest::Approx(-ka));
  const double m = kSteel.rho * kSec.A * l / 6.0;
  CHECK(el.M(0, 0) == doctest::Approx(2.0 * m));
  CHECK(el.M(0, 1) == doctest::Approx(m));
}

TEST_CASE("conventional beam element: rigid body modes and lock-free bending") {
  const double l = 0.01;
  const ElementMatrices el = conventional_beam_matrices(kSteel, kSec, l);
  REQUIRE(el.K.rows() == 4);
  const double k_scale = el.K.cwiseAbs().maxCoeff();

  const Eigen::Vector4d translate(1.0, 0.0, 1.0, 0.0);
  CHECK((el.K * translate).cwiseAbs().maxCoeff() < 1e-12 * k_scale);
  const Eigen::Vector4d rotate(0.0, 1.0, l, 1.0);
  CHECK((el.K * rotate).cwiseAbs().maxCoeff() < 1e-10 * k_scale);

  // nodal samples of the gamma-free bending state; one-point shear keeps it clean
  const Eigen::Vector4d bend(0.0, 0.0, 0.5 * l, 1.0);
  CHECK(bend.dot(el.K * bend) == doctest::Approx(kSteel.E * kSec.I_y / l).epsilon(1e-10));

  const Eigen::Vector4d wt(1.0, 0.0, 1.0, 0.0);
  CHECK(wt.dot(el.M * wt) == doctest::Approx(kSteel.rho * kSec.A * l).epsilon(1e-12));
  const Eigen::Vector4d th(0.0, 1.0, 0.0, 1.0);
  CHECK(th.dot(el.M * th) == doctest::Approx(kSteel.rho * kSec.I_y * l).epsilon(1e-12));
}

TEST_CASE("stress intensity correction: thin-crack limit and a hand value") {
  CHECK(stress_intensity_correction(0.0) == doctest::Approx(1.122).epsilon(1e-12));
  // x = pi/4: sqrt(4/pi) * (0.752 + 1.01 + 0.37 (1 - sin x)^3) / cos x
  CHECK(stress_intensity_correction(0.5) == doctest::Approx(2.8265810).epsilon(1e-5));
  for (double r = 0.05; r < 0.9; r += 0.05) {
    CHECK(stress_intensity_correction(r + 0.05) > stress_intensity_correction(r));
  }
}

TEST_CASE("crack flexibilities match trapezoid integration of the correction") {
  const double h = kSec.h;
  for (double ratio : {0.1, 0.2, 0.4}) {
    const CrackFlexibilities flex = crack_flexibilities(kSteel, kSec, ratio * h);
    const int n = 20000;
    double acc = 0.0;
    for (int g = 0; g <= n; ++g) {
      const double u = ratio * static_cast<double>(g) / n;
      const double f1 = stress_intensity_correction(u);
      const double w = (g == 0 || g == n) ? 0.5 : 1.0;
      acc += w * u * f1 * f1;
    }
    acc *= ratio / n;
    const double c_b_oracle = 72.0 * M_PI / (kSteel.E * kSec.b * h * h) * acc;
    const double c_s_oracle = 2.0 * kSec.k * kSec.k * M_PI / (kSteel.E * kSec.b) * acc;
    CHECK(flex.c_b == doctest::Approx(c_b_oracle).epsilon(1e-6));
    CHECK(flex.c_s == doctest::Approx(c_s_oracle).epsilon(1e-6));
  }
  CHECK(crack_flexibilities(kSteel, kSec, 0.3 * h).c_b >
        crack_flexibilities(kSteel, kSec, 0.2 * h).c_b);
}

TEST_CASE("crack flexibility edge cases") {
  const CrackFlexibilities none = crack_flexibilities(kSteel, kSec, 0.0);
  CHECK(none.c_b == 0.0);
  CHECK(none.c_s == 0.0);
  CHECK_THROWS_AS((void)crack_flexibilities(kSteel, kSec, -1e-3), std::domain_error);
  CHECK_THROWS_AS((void)crack_flexibilities(kSteel, kSec, kSec.h), std::domain_error);
}

TEST_CASE("crack spring matrices couple only the relative motion") {
  const double cb = 4e-6;
  const double cs = 3e-9;
  const ElementMatrices el = crack_spring_matrices(cb, cs);
  REQUIRE(el.K.rows() == 4);
  CHECK(el.M.cwiseAbs().maxCoeff() == 0.0);

  const Eigen::Vector4d same(0.7, -0.2, 0.7, -0.2);
  CHECK((el.K * same).cwiseAbs().maxCoeff() == 0.0);
  const Eigen::Vector4d dw(0.0, 0.0, 1.0, 0.0);
  CHECK(dw.dot(el.K * dw) == doctest::Approx(1.0 / cs));
  const Eigen::Vector4d dth(0.0, 0.0, 0.0, 1.0);
  CHECK(dth.dot(el.K * dth) == doctest::Approx(1.0 / cb));

  CHECK_THROWS_AS((void)crack_spring_matrices(0.0, 0.0), NoCrackSignal);
  CHECK_THROWS_AS((void)crack_spring_matrices(-1e-6, 1e-9), std::domain_error);
}
