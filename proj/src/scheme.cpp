#include "afeg/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace afeg {

Vec3 flux_function(const Vec3& q, Direction d, double c) {
  if (d == Direction::X) return {c * q[U], c * q[P], 0.0};
  return {c * q[V], 0.0, c * q[P]};
}

Vec3 simpson_flux(const std::array<std::array<Vec3, 3>, 3>& nodes, Direction d, double c) {
  static constexpr double w[3] = {1.0, 4.0, 1.0};
  Vec3 acc{0.0, 0.0, 0.0};
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t) {
      Vec3 f = flux_function(nodes[s][t], d, c);
      for (int v = 0; v < 3; ++v) acc[v] += w[s] * w[t] * f[v];
    }
  for (double& a : acc) a /= 36.0;
  return acc;
}

double time_step(const Grid& g, const SchemeConfig& cfg) { return cfg.cfl * std::min(g.dx, g.dy) / cfg.c; }

Stepper::Stepper(Grid g, SchemeConfig cfg) : g_(g), cfg_(cfg) { cfg_.evolution.c = cfg_.c; }

const std::array<NodeStencil, 3>& Stepper::stencils(double dt) {
  auto it = cache_.find(dt);
  if (it != cache_.end()) return it->second;
  if (cache_.size() > 8) cache_.clear();
  const bool apex_dofs = cfg_.recon == ReconKind::AF || cfg_.apex == ApexSource::Dofs;
  std::array<NodeStencil, 3> st;
  for (NodeClass cls : {NodeClass::Corner, NodeClass::XEdge, NodeClass::YEdge})
    st[static_cast<int>(cls)] = build_stencil(cls, cfg_.evolution, dt, g_.dx, g_.dy, apex_dofs);
  return cache_.emplace(dt, std::move(st)).first->second;
}

void Stepper::evolve(const PolySnapshot& snap, const AfState& s, double dt, NodeValues& out) {
  if (cfg_.reference) {
    const bool apex_dofs = cfg_.recon == ReconKind::AF || cfg_.apex == ApexSource::Dofs;
    evolve_nodes_reference(snap, s, cfg_.evolution, dt, apex_dofs, out);
  } else {
    evolve_nodes(snap, s, stencils(dt), out);
  }
}

AfState Stepper::step(const AfState& s, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  const Grid& g = g_;
  const double c = cfg_.c;
  PolySnapshot snap = build_snapshot(s, g, cfg_.recon, cfg_.cweno, 2);
  NodeValues half = make_state(g), full = make_state(g);
  evolve(snap, s, 0.5 * dt, half);
  evolve(snap, s, dt, full);
  if (g.bc == BcMode::DoublyPeriodic) {
    sync_periodic(half, g);
    sync_periodic(full, g);
  }

  auto node = [](const AfState& st, Field2D VarDofs::*f, int i, int j) {
    return Vec3{(st.var[0].*f)(i, j), (st.var[1].*f)(i, j), (st.var[2].*f)(i, j)};
  };
  const AfState* lv[3] = {&s, &half, &full};

  std::vector<Vec3> F(static_cast<size_t>(g.nx + 1) * g.ny), G(static_cast<size_t>(g.nx) * (g.ny + 1));
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) {
      std::array<std::array<Vec3, 3>, 3> nd;
      for (int t = 0; t < 3; ++t) {
        nd[0][t] = node(*lv[t], &VarDofs::corner, i, j);
        nd[1][t] = node(*lv[t], &VarDofs::xedge, i, j);
        nd[2][t] = node(*lv[t], &VarDofs::corner, i, j + 1);
      }
      F[static_cast<size_t>(j) * (g.nx + 1) + i] = simpson_flux(nd, Direction::X, c);
    }
#pragma omp parallel for schedule(static)
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      std::array<std::array<Vec3, 3>, 3> nd;
      for (int t = 0; t < 3; ++t) {
        nd[0][t] = node(*lv[t], &VarDofs::corner, i, j);
        nd[1][t] = node(*lv[t], &VarDofs::yedge, i, j);
        nd[2][t] = node(*lv[t], &VarDofs::corner, i + 1, j);
      }
      G[static_cast<size_t>(j) * g.nx + i] = simpson_flux(nd, Direction::Y, c);
    }

  AfState out = s;
  out.time = s.time + dt;
  const double lx = dt / g.dx, ly = dt / g.dy;
#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const Vec3& fl = F[static_cast<size_t>(j) * (g.nx + 1) + i];
      const Vec3& fr = F[static_cast<size_t>(j) * (g.nx + 1) + i + 1];
      const Vec3& gb = G[static_cast<size_t>(j) * g.nx + i];
      const Vec3& gt = G[static_cast<size_t>(j + 1) * g.nx + i];
      for (int v = 0; v < 3; ++v) out.var[v].avg(i, j) -= lx * (fr[v] - fl[v]) + ly * (gt[v] - gb[v]);
    }
  for (int v = 0; v < 3; ++v) {
    out.var[v].xedge = std::move(full.var[v].xedge);
    out.var[v].yedge = std::move(full.var[v].yedge);
    out.var[v].corner = std::move(full.var[v].corner);
  }
  if (!all_finite(out)) throw BlowUp("non-finite values after step at t = " + std::to_string(out.time), -1);
  return out;
}

AfState step(const AfState& s, const Grid& g, const SchemeConfig& cfg, double dt) {
  Stepper st(g, cfg);
  return st.step(s, dt);
}

AfState run(const AfState& init, const Grid& g, const SchemeConfig& cfg, const RunOptions& opt) {
  if (opt.t_end < 0.0) throw std::invalid_argument("run: t_end must be nonnegative");
  Stepper st(g, cfg);
  AfState s = init;
  const double dt0 = time_step(g, cfg);
  const double eps = 1e-12 * std::max(1.0, opt.t_end);
  std::vector<double> marks = opt.snapshot_times;
  std::sort(marks.begin(), marks.end());
  size_t next = 0;
  while (next < marks.size() && marks[next] <= s.time + eps) {
    if (opt.on_snapshot) opt.on_snapshot(s);
    ++next;
  }
  long n = 0;
  while (s.time < opt.t_end - eps) {
    double target = opt.t_end;
    if (next < marks.size()) target = std::min(target, marks[next]);
    double dt = dt0;
    if (s.time + dt > target - eps) dt = target - s.time;
    try {
      s = st.step(s, dt);
    } catch (const BlowUp& e) {
      throw BlowUp(e.what(), n);
    }
    if (std::abs(s.time - target) <= eps) s.time = target;
    ++n;
    if (opt.on_step) opt.on_step(s, n);
    while (next < marks.size() && marks[next] <= s.time + eps) {
      if (opt.on_snapshot) opt.on_snapshot(s);
      ++next;
    }
  }
  return s;
}

std::string snapshot_filename(const std::string& run_name, double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", t);
  return run_name + "_t" + buf + ".csv";
}

void write_snapshot_csv(const std::string& path, const AfState& s, const Grid& g) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "x,y,p,u,v,speed\n");
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double p = s.var[P].avg(i, j), u = s.var[U].avg(i, j), v = s.var[V].avg(i, j);
      std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", g.xc(i), g.yc(j), p, u, v, std::hypot(u, v));
    }
  std::fclose(f);
}

}  // namespace afeg
