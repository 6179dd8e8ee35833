#pragma once

#include <array>
#include <vector>

#include "afeg/evolution.hpp"
#include "afeg/grid_state.hpp"
#include "afeg/reconstruction.hpp"

namespace afeg {

enum class NodeClass { Corner = 0, XEdge = 1, YEdge = 2 };

// Linear weights of evolve_point for one node class and time increment.
// The node sits on the lower-left corner (Corner), left edge (XEdge) or
// bottom edge (YEdge) of its base cell.
struct NodeStencil {
  NodeClass cls = NodeClass::Corner;
  double dt = 0.0;
  std::vector<std::array<int, 2>> offsets;
  std::vector<double> w;  // [offset][27 inputs][3 outputs]
  std::array<Vec3, 3> apex{};  // apex[in][out]
};

NodeStencil build_stencil(NodeClass cls, const EvolutionConfig& cfg, double dt, double dx, double dy,
                          bool apex_from_dofs = true);

// Evolved point values in the corner/xedge/yedge slots; avg is unused.
using NodeValues = AfState;

void evolve_nodes(const PolySnapshot& snap, const AfState& dofs, const std::array<NodeStencil, 3>& st,
                  NodeValues& out);

// Direct pointwise evaluation, serial.
void evolve_nodes_reference(const PolySnapshot& snap, const AfState& dofs, const EvolutionConfig& cfg, double dt,
                            bool apex_from_dofs, NodeValues& out);

}  // namespace afeg
