#ifndef WAVESIM_MESH_ASSEMBLY_HPP
#define WAVESIM_MESH_ASSEMBLY_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <vector>

#include "wavesim/element_library.hpp"

namespace wavesim {

enum class ElementKind { BswiRod, BswiBeam, ConventionalRod, ConventionalBeam, CrackSpring };

enum class BoundaryCondition { Free, Clamped };

struct Element {
  ElementKind kind = ElementKind::BswiRod;
  double x_left = 0.0;
  double length = 0.0;  // zero for crack springs
  double c_b = 0.0;     // crack springs only
  double c_s = 0.0;
};

struct Mesh1D {
  double length = 0.0;
  ElementKind kind = ElementKind::BswiRod;  // structural element kind
  MaterialProps material;
  SectionProps section;
  BoundaryCondition bc_left = BoundaryCondition::Free;
  BoundaryCondition bc_right = BoundaryCondition::Free;
  std::vector<Element> elements;  // left to right, springs between split interfaces
  std::vector<CrackSpec> cracks;  // resolved positions and flexibilities

  int components() const;  // DOFs per node: 1 (axial) or 2 (deflection, rotation)
};

/// Uniform mesh of n_elements over [0, L]; cracks are snapped onto element interfaces
/// by splitting the containing element, duplicate interface nodes joined by a spring.
/// Zero-depth cracks keep the split topology but merge the nodes (no spring).
Mesh1D build_mesh(double L, int n_elements, ElementKind kind, const MaterialProps& material,
                  const SectionProps& section, const std::vector<CrackSpec>& cracks = {},
                  BoundaryCondition bc_left = BoundaryCondition::Free,
                  BoundaryCondition bc_right = BoundaryCondition::Free);

/// Per-element DOF bookkeeping in the assembled (reduced) numbering.
struct ElementDofs {
  int template_id = 0;
  std::vector<int> dofs;            // local slot -> reduced DOF index, -1 if clamped away
  std::vector<int> interior_slots;  // local slots at element-interior nodes
  std::vector<int> boundary_slots;  // complementary local slots
};

struct GlobalSystem {
  Eigen::SparseMatrix<double> K;
  Eigen::SparseMatrix<double> M;
  int n_dof = 0;  // after clamped-DOF elimination
  int n_nodes = 0;
  int components = 1;
  std::vector<double> node_positions;
  std::vector<int> boundary_set;    // reduced DOFs at element-end nodes, ascending
  std::vector<int> interior_set;    // reduced DOFs at wavelet-element interior nodes
  std::vector<int> boundary_index;  // reduced DOF -> slot in boundary_set, -1 if interior
  std::vector<ElementDofs> element_dofs;      // one per mesh element
  std::vector<ElementMatrices> templates;     // unique element matrices
  std::vector<int> full_to_reduced;           // node*components+comp -> reduced DOF or -1

  /// Reduced DOF index of (node, component); -1 when clamped away.
  int dof_index(int node, int component) const;
  /// First node at minimal distance from x.
  int node_nearest(double x) const;
};

GlobalSystem assemble(const Mesh1D& mesh);

struct LoadSpec {
  int node = 0;
  int component = 0;  // 0 = axial/deflection, 1 = rotation
};

/// Point-load pattern: amplitude at the given DOF. The DOF must be an element-end
/// (boundary) DOF; interior loads are rejected because the frequency-domain solver
/// eliminates interior DOFs before loads are applied.
Eigen::VectorXd build_load_vector(const GlobalSystem& system, const LoadSpec& load,
                                  double amplitude);

}  // namespace wavesim

#endif  // WAVESIM_MESH_ASSEMBLY_HPP
