#include "wavesim/mesh_assembly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "wavesim/bswi_basis.hpp"
#include "wavesim/errors.hpp"

namespace wavesim {

namespace {

bool is_beam_kind(ElementKind kind) {
  return kind == ElementKind::BswiBeam || kind == ElementKind::ConventionalBeam;
}

bool is_bswi_kind(ElementKind kind) {
  return kind == ElementKind::BswiRod || kind == ElementKind::BswiBeam;
}

std::uint64_t bits_of(double x) {
  std::uint64_t u = 0;
  std::memcpy(&u, &x, sizeof(u));
  return u;
}

}  // namespace

int Mesh1D::components() const { return is_beam_kind(kind) ? 2 : 1; }

Mesh1D build_mesh(double L, int n_elements, ElementKind kind, const MaterialProps& material,
                  const SectionProps& section, const std::vector<CrackSpec>& cracks,
                  BoundaryCondition bc_left, BoundaryCondition bc_right) {
  if (!(L > 0.0)) throw std::domain_error("build_mesh: length must be positive");
  if (n_elements < 1) throw std::domain_error("build_mesh: need at least one element");
  if (kind == ElementKind::CrackSpring) {
    throw std::domain_error("build_mesh: crack springs are inserted by the mesher, not meshed");
  }
  if (!cracks.empty() && !is_beam_kind(kind)) {
    throw ConfigError("build_mesh: cracks require a beam mesh (the spring couples w and theta)");
  }

  const double tol = 1e-9 * L;
  std::vector<CrackSpec> sorted = cracks;
  std::sort(sorted.begin(), sorted.end(),
            [](const CrackSpec& a, const CrackSpec& b) { return a.position < b.position; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    if (!(sorted[i].position > 0.0 && sorted[i].position < L)) {
      throw std::domain_error("build_mesh: crack position must lie strictly inside (0, L)");
    }
    if (i > 0 && sorted[i].position - sorted[i - 1].position < tol) {
      throw std::domain_error("build_mesh: crack positions closer than 1e-9*L");
    }
  }

  // Interface coordinates of the uniform mesh, then crack positions snapped in by
  // splitting whichever segment contains them.
  std::vector<double> bounds(static_cast<std::size_t>(n_elements) + 1);
  for (int i = 0; i <= n_elements; ++i) {
    bounds[static_cast<std::size_t>(i)] = L * static_cast<double>(i) / n_elements;
  }
  Mesh1D mesh;
  mesh.length = L;
  mesh.kind = kind;
  mesh.material = material;
  mesh.section = section;
  mesh.bc_left = bc_left;
  mesh.bc_right = bc_right;

  for (const CrackSpec& crack : sorted) {
    CrackSpec resolved = crack;
    const auto at = std::lower_bound(bounds.begin(), bounds.end(), crack.position - tol);
    if (at != bounds.end() && std::abs(*at - crack.position) <= tol) {
      resolved.position = *at;  // existing interface
    } else {
      bounds.insert(at, crack.position);
    }
    if (resolved.depth > 0.0) {
      const CrackFlexibilities flex = crack_flexibilities(material, section, resolved.depth);
      resolved.c_b = flex.c_b;
      resolved.c_s = flex.c_s;
    }
    mesh.cracks.push_back(resolved);
  }

  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    Element el;
    el.kind = kind;
    el.x_left = bounds[i];
    el.length = bounds[i + 1] - bounds[i];
    mesh.elements.push_back(el);
    const double x_right = bounds[i + 1];
    for (const CrackSpec& crack : mesh.cracks) {
      if (std::abs(crack.position - x_right) <= tol && crack.depth > 0.0) {
        Element spring;
        spring.kind = ElementKind::CrackSpring;
        spring.x_left = x_right;
        spring.c_b = crack.c_b;
        spring.c_s = crack.c_s;
        mesh.elements.push_back(spring);
      }
    }
  }
  return mesh;
}

namespace {

struct NodeWalk {
  std::vector<std::vector<int>> element_nodes;
  std::vector<double> positions;
};

NodeWalk number_nodes(const Mesh1D& mesh) {
  NodeWalk walk;
  const NodeLayout layout = NodeLayout::bswi43_default();
  int last_node = -1;
  for (const Element& el : mesh.elements) {
    std::vector<int> nodes;
    if (el.kind == ElementKind::CrackSpring) {
      if (last_node < 0) throw NumericalError("assemble: spring before any structural element");
      nodes.push_back(last_node);
      walk.positions.push_back(el.x_left);
      nodes.push_back(static_cast<int>(walk.positions.size()) - 1);
    } else {
      const bool bswi = is_bswi_kind(el.kind);
      const int n_nodes = bswi ? static_cast<int>(layout.coords.size()) : 2;
      for (int i = 0; i < n_nodes; ++i) {
        if (i == 0 && last_node >= 0) {
          nodes.push_back(last_node);
          continue;
        }
        const double xi = bswi ? layout.coords[i] : static_cast<double>(i);
        walk.positions.push_back(el.x_left + xi * el.length);
        nodes.push_back(static_cast<int>(walk.positions.size()) - 1);
      }
    }
    last_node = nodes.back();
    walk.element_nodes.push_back(std::move(nodes));
  }
  return walk;
}

}  // namespace

int GlobalSystem::dof_index(int node, int component) const {
  return full_to_reduced[static_cast<std::size_t>(node * components + component)];
}

int GlobalSystem::node_nearest(double x) const {
  int best = 0;
  double best_d = std::abs(node_positions[0] - x);
  for (int i = 1; i < n_nodes; ++i) {
    const double d = std::abs(node_positions[static_cast<std::size_t>(i)] - x);
    if (d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

GlobalSystem assemble(const Mesh1D& mesh) {
  if (mesh.elements.empty()) throw std::domain_error("assemble: empty mesh");
  const int comps = mesh.components();
  const NodeWalk walk = number_nodes(mesh);
  const int n_nodes = static_cast<int>(walk.positions.size());

  GlobalSystem sys;
  sys.components = comps;
  sys.n_nodes = n_nodes;
  sys.node_positions = walk.positions;

  // Clamped ends eliminate all components of the first/last structural node.
  std::vector<bool> clamped(static_cast<std::size_t>(n_nodes * comps), false);
  if (mesh.bc_left == BoundaryCondition::Clamped) {
    for (int c = 0; c < comps; ++c) clamped[static_cast<std::size_t>(c)] = true;
  }
  if (mesh.bc_right == BoundaryCondition::Clamped) {
    const int last = walk.element_nodes.back().back();
    for (int c = 0; c < comps; ++c) clamped[static_cast<std::size_t>(last * comps + c)] = true;
  }
  sys.full_to_reduced.assign(static_cast<std::size_t>(n_nodes * comps), -1);
  int next = 0;
  for (int f = 0; f < n_nodes * comps; ++f) {
    if (!clamped[static_cast<std::size_t>(f)]) sys.full_to_reduced[static_cast<std::size_t>(f)] = next++;
  }
  sys.n_dof = next;

  // Element templates keyed on kind + geometry + spring constants; uniform meshes
  // share a single template per kind.
  std::map<std::tuple<int, std::uint64_t, std::uint64_t, std::uint64_t>, int> template_ids;
  std::vector<bool> dof_interior(static_cast<std::size_t>(sys.n_dof), false);
  std::vector<Eigen::Triplet<double>> k_trip;
  std::vector<Eigen::Triplet<double>> m_trip;

  for (std::size_t e = 0; e < mesh.elements.size(); ++e) {
    const Element& el = mesh.elements[e];
    const std::vector<int>& nodes = walk.element_nodes[e];

    const auto key = std::make_tuple(static_cast<int>(el.kind), bits_of(el.length),
                                     bits_of(el.c_b), bits_of(el.c_s));
    auto found = template_ids.find(key);
    int tid;
    if (found == template_ids.end()) {
      ElementMatrices matrices;
      switch (el.kind) {
        case ElementKind::BswiRod:
          matrices = bswi_rod_matrices(mesh.material, mesh.section, el.length);
          break;
        case ElementKind::BswiBeam:
          matrices = bswi_beam_matrices(mesh.material, mesh.section, el.length);
          break;
        case ElementKind::ConventionalRod:
          matrices = conventional_rod_matrices(mesh.material, mesh.section, el.length);
          break;
        case ElementKind::ConventionalBeam:
          matrices = conventional_beam_matrices(mesh.material, mesh.section, el.length);
          break;
        case ElementKind::CrackSpring:
          matrices = crack_spring_matrices(el.c_b, el.c_s);
          break;
      }
      tid = static_cast<int>(sys.templates.size());
      sys.templates.push_back(std::move(matrices));
      template_ids.emplace(key, tid);
    } else {
      tid = found->second;
    }

    // Local slot -> (node, component), matching each template's DOF ordering.
    const int nn = static_cast<int>(nodes.size());
    ElementDofs info;
    info.template_id = tid;
    const auto push_dof = [&](int node, int comp) {
      info.dofs.push_back(sys.full_to_reduced[static_cast<std::size_t>(node * comps + comp)]);
    };
    switch (sys.templates[static_cast<std::size_t>(tid)].dof_order) {
      case DofOrder::RodAxial:
        for (int i = 0; i < nn; ++i) push_dof(nodes[static_cast<std::size_t>(i)], 0);
        break;
      case DofOrder::BeamBlocks:
        for (int c = 0; c < 2; ++c) {
          for (int i = 0; i < nn; ++i) push_dof(nodes[static_cast<std::size_t>(i)], c);
        }
        break;
      case DofOrder::BeamNodal:
      case DofOrder::CrackSpring:
        for (int i = 0; i < nn; ++i) {
          push_dof(nodes[static_cast<std::size_t>(i)], 0);
          push_dof(nodes[static_cast<std::size_t>(i)], 1);
        }
        break;
    }
    const int n_local = static_cast<int>(info.dofs.size());
    if (n_local != static_cast<int>(sys.templates[static_cast<std::size_t>(tid)].K.rows())) {
      throw NumericalError("assemble: element DOF count mismatch");
    }

    // Interior slots: the nodes strictly inside a wavelet element.
    std::vector<bool> slot_interior(static_cast<std::size_t>(n_local), false);
    if (is_bswi_kind(el.kind)) {
      for (int i = 1; i + 1 < nn; ++i) {
        if (el.kind == ElementKind::BswiRod) {
          slot_interior[static_cast<std::size_t>(i)] = true;
        } else {
          slot_interior[static_cast<std::size_t>(i)] = true;
          slot_interior[static_cast<std::size_t>(nn + i)] = true;
        }
      }
    }
    for (int s = 0; s < n_local; ++s) {
      if (slot_interior[static_cast<std::size_t>(s)]) {
        info.interior_slots.push_back(s);
        const int dof = info.dofs[static_cast<std::size_t>(s)];
        if (dof >= 0) dof_interior[static_cast<std::size_t>(dof)] = true;
      } else {
        info.boundary_slots.push_back(s);
      }
    }

    const ElementMatrices& em = sys.templates[static_cast<std::size_t>(tid)];
    for (int p = 0; p < n_local; ++p) {
      const int gp = info.dofs[static_cast<std::size_t>(p)];
      if (gp < 0) continue;
      for (int q = 0; q < n_local; ++q) {
        const int gq = info.dofs[static_cast<std::size_t>(q)];
        if (gq < 0) continue;
        if (em.K(p, q) != 0.0) k_trip.emplace_back(gp, gq, em.K(p, q));
        if (em.M(p, q) != 0.0) m_trip.emplace_back(gp, gq, em.M(p, q));
      }
    }
    sys.element_dofs.push_back(std::move(info));
  }

  sys.K.resize(sys.n_dof, sys.n_dof);
  sys.M.resize(sys.n_dof, sys.n_dof);
  sys.K.setFromTriplets(k_trip.begin(), k_trip.end());
  sys.M.setFromTriplets(m_trip.begin(), m_trip.end());

  sys.boundary_index.assign(static_cast<std::size_t>(sys.n_dof), -1);
  for (int d = 0; d < sys.n_dof; ++d) {
    if (dof_interior[static_cast<std::size_t>(d)]) {
      sys.interior_set.push_back(d);
    } else {
      sys.boundary_index[static_cast<std::size_t>(d)] = static_cast<int>(sys.boundary_set.size());
      sys.boundary_set.push_back(d);
    }
  }
  return sys;
}

Eigen::VectorXd build_load_vector(const GlobalSystem& system, const LoadSpec& load,
                                  double amplitude) {
  if (load.node < 0 || load.node >= system.n_nodes) {
    throw std::domain_error("build_load_vector: node out of range");
  }
  if (load.component < 0 || load.component >= system.components) {
    throw std::domain_error("build_load_vector: component out of range");
  }
  const int dof = system.dof_index(load.node, load.component);
  if (dof < 0) {
    throw std::domain_error("build_load_vector: load applied to a clamped DOF");
  }
  if (system.boundary_index[static_cast<std::size_t>(dof)] < 0) {
    std::ostringstream msg;
    msg << "build_load_vector: node " << load.node
        << " is interior to a wavelet element; interior loads must be transferred "
           "equivalently to the element boundary before condensation";
    throw std::domain_error(msg.str());
  }
  Eigen::VectorXd f = Eigen::VectorXd::Zero(system.n_dof);
  f[dof] = amplitude;
  return f;
}

}  // namespace wavesim
