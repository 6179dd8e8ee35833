#include "afeg/problems.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace afeg {

using std::numbers::pi;

Problem make_problem(ProblemId id, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("sound speed must be positive");
  Problem pb;
  pb.id = id;
  pb.c = c;
  pb.has_exact = id == ProblemId::SmoothIrrotational || id == ProblemId::SmoothRotational;
  pb.bc = id == ProblemId::DiagonalRiemann ? BcMode::DiagonalExtrapolation : BcMode::DoublyPeriodic;
  return pb;
}

ProblemId parse_problem(const std::string& n) {
  if (n == "example1" || n == "smooth-irrotational") return ProblemId::SmoothIrrotational;
  if (n == "example2" || n == "smooth-rotational") return ProblemId::SmoothRotational;
  if (n == "example3" || n == "vortex") return ProblemId::StationaryVortex;
  if (n == "example4" || n == "diagonal-riemann") return ProblemId::DiagonalRiemann;
  throw std::invalid_argument("unknown problem '" + n + "' (valid: example1, example2, example3, example4)");
}

std::string problem_name(ProblemId id) {
  switch (id) {
    case ProblemId::SmoothIrrotational: return "example1";
    case ProblemId::SmoothRotational: return "example2";
    case ProblemId::StationaryVortex: return "example3";
    case ProblemId::DiagonalRiemann: return "example4";
  }
  return "?";
}

Grid problem_grid(const Problem& pb, int nx, int ny) { return build_grid(nx, ny, pb.extents, pb.bc); }

Vec3 exact_solution(const Problem& pb, double x, double y, double t) {
  const double c = pb.c, w = 2.0 * pi;
  switch (pb.id) {
    case ProblemId::SmoothIrrotational: {
      double ct = std::cos(w * c * t), st = std::sin(w * c * t);
      return {-ct * (std::sin(w * x) + std::sin(w * y)) / c, st * std::cos(w * x) / c, st * std::cos(w * y) / c};
    }
    case ProblemId::SmoothRotational: {
      double ct = std::cos(w * c * t), st = std::sin(w * c * t);
      return {(std::cos(w * x) - std::cos(w * y)) * st / c, -(std::sin(w * x) * ct + std::sin(w * y)) / c,
              (std::sin(w * x) + std::sin(w * y) * ct) / c};
    }
    default: throw std::invalid_argument("exact_solution: no closed form for " + problem_name(pb.id));
  }
}

Vec3 initial_data(const Problem& pb, double x, double y) {
  switch (pb.id) {
    case ProblemId::SmoothIrrotational:
    case ProblemId::SmoothRotational: return exact_solution(pb, x, y, 0.0);
    case ProblemId::StationaryVortex: {
      double r = std::hypot(x, y);
      if (r == 0.0) return {0.0, 0.0, 0.0};
      double g = r <= 0.2 ? 5.0 * r : (r <= 0.4 ? 2.0 - 5.0 * r : 0.0);
      return {0.0, -y / r * g, x / r * g};
    }
    case ProblemId::DiagonalRiemann: {
      double s = std::abs(y) < std::abs(x) ? 1.0 / std::sqrt(2.0) : -1.0 / std::sqrt(2.0);
      return {1.0, s, s};
    }
  }
  return {0.0, 0.0, 0.0};
}

namespace {

// Cell means of sin(2 pi x) and cos(2 pi x) over [a, b].
double mean_sin(double a, double b) { return (std::cos(2.0 * pi * a) - std::cos(2.0 * pi * b)) / (2.0 * pi * (b - a)); }
double mean_cos(double a, double b) { return (std::sin(2.0 * pi * b) - std::sin(2.0 * pi * a)) / (2.0 * pi * (b - a)); }

using Poly = std::vector<std::array<double, 2>>;

// Keeps the part of the polygon with a*x + b*y >= 0.
Poly clip(const Poly& in, double a, double b) {
  Poly out;
  const size_t n = in.size();
  for (size_t k = 0; k < n; ++k) {
    const auto& p = in[k];
    const auto& q = in[(k + 1) % n];
    double fp = a * p[0] + b * p[1], fq = a * q[0] + b * q[1];
    if (fp >= 0.0) out.push_back(p);
    if ((fp >= 0.0) != (fq >= 0.0)) {
      double t = fp / (fp - fq);
      out.push_back({p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1])});
    }
  }
  return out;
}

double area(const Poly& p) {
  double s = 0.0;
  for (size_t k = 0; k < p.size(); ++k) {
    const auto& a = p[k];
    const auto& b = p[(k + 1) % p.size()];
    s += a[0] * b[1] - b[0] * a[1];
  }
  return 0.5 * std::abs(s);
}

}  // namespace

double wedge_area(double xa, double xb, double ya, double yb) {
  Poly box{{xa, ya}, {xb, ya}, {xb, yb}, {xa, yb}};
  // top wedge: y - x >= 0 and y + x >= 0; bottom wedge: x - y >= 0 and -x - y >= 0
  double top = area(clip(clip(box, -1.0, 1.0), 1.0, 1.0));
  double bottom = area(clip(clip(box, 1.0, -1.0), -1.0, -1.0));
  return top + bottom;
}

Vec3 exact_cell_average(const Problem& pb, const Grid& g, int i, int j, double t) {
  const double c = pb.c, w = 2.0 * pi;
  const double xa = g.xf(i), xb = g.xf(i + 1), ya = g.yf(j), yb = g.yf(j + 1);
  switch (pb.id) {
    case ProblemId::SmoothIrrotational: {
      double ct = std::cos(w * c * t), st = std::sin(w * c * t);
      return {-ct * (mean_sin(xa, xb) + mean_sin(ya, yb)) / c, st * mean_cos(xa, xb) / c, st * mean_cos(ya, yb) / c};
    }
    case ProblemId::SmoothRotational: {
      double ct = std::cos(w * c * t), st = std::sin(w * c * t);
      double sx = mean_sin(xa, xb), sy = mean_sin(ya, yb);
      return {(mean_cos(xa, xb) - mean_cos(ya, yb)) * st / c, -(sx * ct + sy) / c, (sx + sy * ct) / c};
    }
    default: throw std::invalid_argument("exact_cell_average: no closed form for " + problem_name(pb.id));
  }
}

Vec3 initial_cell_average(const Problem& pb, const Grid& g, int i, int j) {
  switch (pb.id) {
    case ProblemId::SmoothIrrotational:
    case ProblemId::SmoothRotational: return exact_cell_average(pb, g, i, j, 0.0);
    case ProblemId::StationaryVortex:
      return gauss_cell_average(g, i, j, [&](double x, double y) { return initial_data(pb, x, y); }, 8);
    case ProblemId::DiagonalRiemann: {
      double frac = wedge_area(g.xf(i), g.xf(i + 1), g.yf(j), g.yf(j + 1)) / (g.dx * g.dy);
      double s = (1.0 - 2.0 * frac) / std::sqrt(2.0);
      return {1.0, s, s};
    }
  }
  return {0.0, 0.0, 0.0};
}

AfState initial_state(const Problem& pb, const Grid& g) {
  AfState s = make_state(g);
  auto put = [&](Field2D VarDofs::*f, int i, int j, const Vec3& q) {
    for (int v = 0; v < 3; ++v) (s.var[v].*f)(i, j) = q[v];
  };
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) put(&VarDofs::avg, i, j, initial_cell_average(pb, g, i, j));
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) put(&VarDofs::xedge, i, j, initial_data(pb, g.xf(i), g.yc(j)));
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) put(&VarDofs::yedge, i, j, initial_data(pb, g.xc(i), g.yf(j)));
  for (int j = 0; j <= g.ny; ++j)
    for (int i = 0; i <= g.nx; ++i) put(&VarDofs::corner, i, j, initial_data(pb, g.xf(i), g.yf(j)));
  if (g.bc == BcMode::DoublyPeriodic) sync_periodic(s, g);
  s.time = 0.0;
  return s;
}

Vec3 l1_error_exact(const AfState& s, const Grid& g, const Problem& pb, L1Scaling scaling) {
  return l1_error(s, g, [&](int i, int j) { return exact_cell_average(pb, g, i, j, s.time); }, scaling);
}

VortexDiagnostics vortex_diagnostics(const AfState& s, const Grid& g) {
  VortexDiagnostics d;
  const double h = g.dx;
  const int nb = static_cast<int>(std::ceil(std::hypot(g.x_max - g.x_min, g.y_max - g.y_min) / h)) + 1;
  std::vector<double> sum(nb, 0.0);
  std::vector<int> cnt(nb, 0);
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double u = s.var[U].avg(i, j), v = s.var[V].avg(i, j);
      d.max_speed = std::max(d.max_speed, std::hypot(u, v));
      double x = g.xc(i), y = g.yc(j), r = std::hypot(x, y);
      if (r == 0.0) continue;
      int b = static_cast<int>(r / h);
      sum[b] += (-y * u + x * v) / r;
      cnt[b] += 1;
    }
  for (int b = 0; b < nb; ++b)
    if (cnt[b] > 0) d.radial_profile.emplace_back((b + 0.5) * h, sum[b] / cnt[b]);
  return d;
}

namespace {

int grid_line_index(double lo, double h, int n, double at) {
  for (int k = 0; k <= n; ++k)
    if (std::abs(lo + k * h - at) < 1e-12 * std::max(1.0, h * n)) return k;
  return -1;
}

}  // namespace

std::vector<std::array<double, 6>> cross_section_y0(const AfState& s, const Grid& g) {
  std::vector<std::array<double, 6>> rows;
  int j = grid_line_index(g.y_min, g.dy, g.ny, 0.0);
  for (int i = 0; i < g.nx; ++i) {
    if (j >= 0) {
      rows.push_back({g.xc(i), g.xc(i), 0.0, s.var[P].yedge(i, j), s.var[U].yedge(i, j), s.var[V].yedge(i, j)});
    } else {
      int jc = static_cast<int>(std::floor((0.0 - g.y_min) / g.dy));
      rows.push_back({g.xc(i), g.xc(i), g.yc(jc), s.var[P].avg(i, jc), s.var[U].avg(i, jc), s.var[V].avg(i, jc)});
    }
  }
  return rows;
}

std::vector<std::array<double, 6>> cross_section_diagonal(const AfState& s, const Grid& g) {
  std::vector<std::array<double, 6>> rows;
  const bool corners = g.nx == g.ny && std::abs(g.x_min - g.y_min) < 1e-14 && std::abs(g.dx - g.dy) < 1e-14;
  if (corners) {
    for (int k = 0; k <= g.nx; ++k) {
      double x = g.xf(k), y = g.yf(k);
      rows.push_back({std::sqrt(2.0) * x, x, y, s.var[P].corner(k, k), s.var[U].corner(k, k), s.var[V].corner(k, k)});
    }
  } else {
    for (int k = 0; k < std::min(g.nx, g.ny); ++k) {
      double x = g.xc(k), y = g.yc(k);
      rows.push_back({std::hypot(x, y) * (x < 0 ? -1.0 : 1.0), x, y, s.var[P].avg(k, k), s.var[U].avg(k, k),
                      s.var[V].avg(k, k)});
    }
  }
  return rows;
}

void write_cross_section_csv(const std::string& path, const std::vector<std::array<double, 6>>& rows) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "s,x,y,p,u,v\n");
  for (const auto& r : rows) std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r[0], r[1], r[2], r[3], r[4], r[5]);
  std::fclose(f);
}

}  // namespace afeg
