#include "afeg/grid_state.hpp"

#include <cmath>
#include <stdexcept>

#include "afeg/quadrature.hpp"

namespace afeg {

Grid build_grid(int nx, int ny, std::array<double, 4> e, BcMode bc) {
  if (nx < 4 || ny < 4) throw std::invalid_argument("build_grid: need nx, ny >= 4");
  if (!(e[1] > e[0]) || !(e[3] > e[2])) throw std::invalid_argument("build_grid: inverted extents");
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.x_min = e[0];
  g.x_max = e[1];
  g.y_min = e[2];
  g.y_max = e[3];
  g.dx = (e[1] - e[0]) / nx;
  g.dy = (e[3] - e[2]) / ny;
  g.bc = bc;
  return g;
}

AfState make_state(const Grid& g) {
  AfState s;
  for (auto& v : s.var) {
    v.avg = Field2D(g.nx, g.ny);
    v.xedge = Field2D(g.nx + 1, g.ny);
    v.yedge = Field2D(g.nx, g.ny + 1);
    v.corner = Field2D(g.nx + 1, g.ny + 1);
  }
  return s;
}

void sync_periodic(AfState& s, const Grid& g) {
  for (auto& v : s.var) {
    for (int j = 0; j < g.ny; ++j) v.xedge(g.nx, j) = v.xedge(0, j);
    for (int i = 0; i < g.nx; ++i) v.yedge(i, g.ny) = v.yedge(i, 0);
    for (int j = 0; j <= g.ny; ++j) v.corner(g.nx, j) = v.corner(0, j);
    for (int i = 0; i <= g.nx; ++i) v.corner(i, g.ny) = v.corner(i, 0);
  }
}

bool all_finite(const AfState& s) {
  for (const auto& v : s.var)
    for (const Field2D* f : {&v.avg, &v.xedge, &v.yedge, &v.corner})
      for (double x : f->v)
        if (!std::isfinite(x)) return false;
  return true;
}

namespace {

int wrap(int i, int n) {
  int r = i % n;
  return r < 0 ? r + n : r;
}

int clamp_index(int i, int n) { return i < 0 ? 0 : (i >= n ? n - 1 : i); }

}  // namespace

std::pair<int, int> map_cell(const Grid& g, int i, int j) {
  if (g.bc == BcMode::DoublyPeriodic) return {wrap(i, g.nx), wrap(j, g.ny)};

  // Zero-order extrapolation along the diagonals. Rows in the upper half of
  // the left/right boundaries pull from one row lower per ghost layer, rows in
  // the lower half from one row higher; columns analogously on bottom/top.
  if (i < 0 || i >= g.nx) {
    int d = i < 0 ? -i : i - g.nx + 1;
    i = i < 0 ? 0 : g.nx - 1;
    j = (j >= g.ny / 2) ? j - d : j + d;
  }
  if (j < 0 || j >= g.ny) {
    int d = j < 0 ? -j : j - g.ny + 1;
    j = j < 0 ? 0 : g.ny - 1;
    i = (i < g.nx / 2) ? i + d : i - d;
  }
  return {clamp_index(i, g.nx), clamp_index(j, g.ny)};
}

GhostedAverages apply_bc(const AfState& s, const Grid& g, int ghost) {
  GhostedAverages r;
  r.ghost = ghost;
  r.nx = g.nx;
  r.ny = g.ny;
  r.nxp = g.nx + 2 * ghost;
  r.nyp = g.ny + 2 * ghost;
  for (int v = 0; v < 3; ++v) {
    r.avg[v].resize(static_cast<size_t>(r.nxp) * r.nyp);
    for (int j = -ghost; j < g.ny + ghost; ++j)
      for (int i = -ghost; i < g.nx + ghost; ++i) {
        auto [a, b] = map_cell(g, i, j);
        r.avg[v][static_cast<size_t>(j + ghost) * r.nxp + (i + ghost)] = s.var[v].avg(a, b);
      }
  }
  return r;
}

Vec3 l1_error(const AfState& s, const Grid& g, const std::function<Vec3(int, int)>& exact_avg, L1Scaling scaling) {
  Vec3 e{0.0, 0.0, 0.0};
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      Vec3 q = exact_avg(i, j);
      for (int v = 0; v < 3; ++v) e[v] += std::abs(s.var[v].avg(i, j) - q[v]);
    }
  for (double& x : e) {
    if (std::isnan(x)) throw std::runtime_error("l1_error: NaN in state");
    x *= g.dx * g.dy;
    if (scaling == L1Scaling::PerArea) x /= g.area();
  }
  return e;
}

std::vector<double> eoc(const std::vector<double>& errors) {
  if (errors.size() < 2) throw std::invalid_argument("eoc: need at least two errors");
  for (double e : errors)
    if (!(e > 0.0)) throw std::invalid_argument("eoc: errors must be positive");
  std::vector<double> r;
  for (size_t k = 0; k + 1 < errors.size(); ++k) r.push_back(std::log2(errors[k] / errors[k + 1]));
  return r;
}

void finalize_eoc(ErrorReport& r) {
  r.eoc.clear();
  for (size_t k = 0; k + 1 < r.l1.size(); ++k) {
    Vec3 o;
    for (int v = 0; v < 3; ++v) {
      double a = r.l1[k][v], b = r.l1[k + 1][v];
      o[v] = (a > 0.0 && b > 0.0) ? std::log2(a / b) : std::nan("");
    }
    r.eoc.push_back(o);
  }
}

Vec3 gauss_cell_average(const Grid& g, int i, int j, const std::function<Vec3(double, double)>& f, int n) {
  static const std::array<GaussRule, 17> rules = [] {
    std::array<GaussRule, 17> r;
    for (int k = 1; k <= 16; ++k) r[k] = gauss_legendre(k);
    return r;
  }();
  if (n < 1 || n > 16) throw std::invalid_argument("gauss_cell_average: 1 <= n <= 16");
  const GaussRule& q = rules[n];
  Vec3 acc{0.0, 0.0, 0.0};
  for (int b = 0; b < n; ++b)
    for (int a = 0; a < n; ++a) {
      double x = g.xc(i) + 0.5 * g.dx * q.x[a];
      double y = g.yc(j) + 0.5 * g.dy * q.x[b];
      Vec3 val = f(x, y);
      double w = 0.25 * q.w[a] * q.w[b];
      for (int v = 0; v < 3; ++v) acc[v] += w * val[v];
    }
  return acc;
}

}  // namespace afeg
