#ifndef WAVESIM_ELEMENT_LIBRARY_HPP
#define WAVESIM_ELEMENT_LIBRARY_HPP

#include <Eigen/Dense>

#include <functional>

namespace wavesim {

struct MaterialProps {
  double E = 0.0;    // Young's modulus [Pa]
  double nu = 0.0;   // Poisson ratio
  double rho = 0.0;  // density [kg/m^3]
  double G = 0.0;    // shear modulus [Pa], E / (2(1+nu))

  static MaterialProps make(double E, double nu, double rho);
  static MaterialProps steel();     // 200 GPa, 0.3, 7800 kg/m^3
  static MaterialProps aluminum();  // 70 GPa, 0.3, 2730 kg/m^3
};

struct SectionProps {
  double b = 0.0;    // width [m]
  double h = 0.0;    // height [m]
  double A = 0.0;    // area b*h
  double I_y = 0.0;  // second moment b*h^3/12
  double k = 0.0;    // shear deformation coefficient (effective shear area A/k)

  static SectionProps rect(double b, double h, double k = 1.2);
};

/// DOF ordering of an element matrix pair.
enum class DofOrder {
  RodAxial,     // [u_1 ... u_n]
  BeamBlocks,   // [w_1 ... w_n, theta_1 ... theta_n]
  BeamNodal,    // [w_1, theta_1, w_2, theta_2]
  CrackSpring,  // [w_L, theta_L, w_R, theta_R]
};

struct ElementMatrices {
  Eigen::MatrixXd K;
  Eigen::MatrixXd M;
  DofOrder dof_order = DofOrder::RodAxial;
};

/// Open crack through a rectangular section, modeled as massless local springs.
struct CrackSpec {
  double position = 0.0;  // x_c from the left end [m]
  double depth = 0.0;     // a [m]
  double c_b = 0.0;       // rotational flexibility [rad/(N m)], filled by the mesher
  double c_s = 0.0;       // shearing flexibility [m/N]
};

/// 11-node wavelet rod element (axial DOFs).
ElementMatrices bswi_rod_matrices(const MaterialProps& mat, const SectionProps& sec, double l_e);

/// 11-node wavelet Timoshenko beam element, block DOF order [all w, all theta].
ElementMatrices bswi_beam_matrices(const MaterialProps& mat, const SectionProps& sec, double l_e);

/// 2-node linear rod element.
ElementMatrices conventional_rod_matrices(const MaterialProps& mat, const SectionProps& sec,
                                          double l_e);

/// 2-node linear Timoshenko beam element [w_1, theta_1, w_2, theta_2]; shear term
/// integrated with one reduced Gauss point to avoid locking.
ElementMatrices conventional_beam_matrices(const MaterialProps& mat, const SectionProps& sec,
                                           double l_e);

/// Mode-I stress intensity correction f_1 as a function of the depth ratio a/h.
double stress_intensity_correction(double depth_ratio);

struct CrackFlexibilities {
  double c_b = 0.0;
  double c_s = 0.0;
};

/// Rotational and shearing flexibilities of an open edge crack of depth a.
/// The optional shear_correction(alpha/h) replaces the mode-I correction inside the
/// shear integral only.
CrackFlexibilities crack_flexibilities(const MaterialProps& mat, const SectionProps& sec,
                                       double a);
CrackFlexibilities crack_flexibilities(const MaterialProps& mat, const SectionProps& sec, double a,
                                       const std::function<double(double)>& shear_correction);

/// Massless spring pair joining duplicated interface nodes [w_L, theta_L, w_R, theta_R].
/// Throws NoCrackSignal when either flexibility is zero (merge the nodes instead).
ElementMatrices crack_spring_matrices(double c_b, double c_s);

}  // namespace wavesim

#endif  // WAVESIM_ELEMENT_LIBRARY_HPP
