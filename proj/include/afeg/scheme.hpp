#pragma once

#include <array>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "afeg/evolution.hpp"
#include "afeg/grid_state.hpp"
#include "afeg/kernel.hpp"
#include "afeg/reconstruction.hpp"

namespace afeg {

// Where AFCW takes the apex value p(P') (and u, v for the nu variants).
enum class ApexSource { Dofs, Reconstruction };

struct SchemeConfig {
  ReconKind recon = ReconKind::AF;
  EvolutionConfig evolution;
  double cfl = 0.25;
  double c = 1.0;
  CwenoParams cweno;
  ApexSource apex = ApexSource::Reconstruction;
  bool reference = false;  // use the pointwise serial path instead of the kernel
};

enum class Direction { X, Y };

Vec3 flux_function(const Vec3& q, Direction d, double c);

// nodes[s][t]: space node s (lower end, midpoint, upper end), time node t (n, n+1/2, n+1).
Vec3 simpson_flux(const std::array<std::array<Vec3, 3>, 3>& nodes, Direction d, double c);

struct BlowUp : std::runtime_error {
  BlowUp(const std::string& what, long step_index) : std::runtime_error(what), step(step_index) {}
  long step;
};

double time_step(const Grid& g, const SchemeConfig& cfg);

class Stepper {
 public:
  Stepper(Grid g, SchemeConfig cfg);
  AfState step(const AfState& s, double dt);
  const Grid& grid() const { return g_; }
  const SchemeConfig& config() const { return cfg_; }

 private:
  const std::array<NodeStencil, 3>& stencils(double dt);
  void evolve(const PolySnapshot& snap, const AfState& s, double dt, NodeValues& out);

  Grid g_;
  SchemeConfig cfg_;
  std::map<double, std::array<NodeStencil, 3>> cache_;
};

AfState step(const AfState& s, const Grid& g, const SchemeConfig& cfg, double dt);

struct RunOptions {
  double t_end = 0.0;
  std::vector<double> snapshot_times;  // dumps taken when the run reaches these times
  std::function<void(const AfState&)> on_snapshot;
  std::function<void(const AfState&, long)> on_step;
};

// Steps with dt = cfl * min(dx, dy) / c, clamping the last step onto t_end and
// onto every requested snapshot time.
AfState run(const AfState& init, const Grid& g, const SchemeConfig& cfg, const RunOptions& opt);

std::string snapshot_filename(const std::string& run_name, double t);
void write_snapshot_csv(const std::string& path, const AfState& s, const Grid& g);

}  // namespace afeg
