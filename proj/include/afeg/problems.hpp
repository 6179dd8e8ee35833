#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "afeg/grid_state.hpp"

namespace afeg {

enum class ProblemId { SmoothIrrotational, SmoothRotational, StationaryVortex, DiagonalRiemann };

struct Problem {
  ProblemId id = ProblemId::SmoothIrrotational;
  double c = 1.0;
  std::array<double, 4> extents{-1.0, 1.0, -1.0, 1.0};
  BcMode bc = BcMode::DoublyPeriodic;
  bool has_exact = false;
};

Problem make_problem(ProblemId id, double c = 1.0);
// Accepts example1..example4 and the enum-style names.
ProblemId parse_problem(const std::string& name);
std::string problem_name(ProblemId id);

Grid problem_grid(const Problem& pb, int nx, int ny);

Vec3 exact_solution(const Problem& pb, double x, double y, double t);
Vec3 initial_data(const Problem& pb, double x, double y);
Vec3 exact_cell_average(const Problem& pb, const Grid& g, int i, int j, double t);
// Cell average of the initial data (exact or high-order quadrature).
Vec3 initial_cell_average(const Problem& pb, const Grid& g, int i, int j);
AfState initial_state(const Problem& pb, const Grid& g);

Vec3 l1_error_exact(const AfState& s, const Grid& g, const Problem& pb, L1Scaling scaling = L1Scaling::PerArea);

struct VortexDiagnostics {
  double max_speed = 0.0;
  std::vector<std::pair<double, double>> radial_profile;  // (r, mean tangential speed)
};

VortexDiagnostics vortex_diagnostics(const AfState& s, const Grid& g);

// Point-value cross-sections: along y = 0 (y-edge nodes, or cell averages on
// odd grids) and along the diagonal y = x (corner nodes). Rows are s,x,y,p,u,v.
std::vector<std::array<double, 6>> cross_section_y0(const AfState& s, const Grid& g);
std::vector<std::array<double, 6>> cross_section_diagonal(const AfState& s, const Grid& g);
void write_cross_section_csv(const std::string& path, const std::vector<std::array<double, 6>>& rows);

// Area of {|y| >= |x|} inside the axis-aligned box.
double wedge_area(double xa, double xb, double ya, double yb);

}  // namespace afeg
