#include "afeg/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "afeg/quadrature.hpp"

namespace afeg {

using std::numbers::pi;

EvolutionKind parse_kind(const std::string& name) {
  if (name == "eg2") return EvolutionKind::EG2;
  if (name == "eg2quad" || name == "egquad") return EvolutionKind::EGquad;
  if (name == "eg2delta") return EvolutionKind::EG2delta;
  if (name == "eg2deltanu") return EvolutionKind::EG2deltanu;
  if (name == "hat-eg2delta") return EvolutionKind::HatEG2delta;
  if (name == "hat-eg2deltanu") return EvolutionKind::HatEG2deltanu;
  throw std::invalid_argument("unknown operator '" + name +
                              "' (valid: eg2, eg2quad, eg2delta, eg2deltanu, hat-eg2delta, hat-eg2deltanu)");
}

std::string kind_name(EvolutionKind k) {
  switch (k) {
    case EvolutionKind::EG2: return "eg2";
    case EvolutionKind::EGquad: return "eg2quad";
    case EvolutionKind::EG2delta: return "eg2delta";
    case EvolutionKind::EG2deltanu: return "eg2deltanu";
    case EvolutionKind::HatEG2delta: return "hat-eg2delta";
    case EvolutionKind::HatEG2deltanu: return "hat-eg2deltanu";
  }
  return "?";
}

bool is_hat(EvolutionKind k) { return k == EvolutionKind::HatEG2delta || k == EvolutionKind::HatEG2deltanu; }

namespace {

constexpr double kSnap = 1e-9;
// a circle that only touches a grid line does not cross it
constexpr double kTangent = 1e-12;

int owner_index(double s) {
  double r = std::round(s);
  if (std::abs(s - r) < kSnap) return static_cast<int>(r) - 1;
  return static_cast<int>(std::floor(s));
}

bool near_int(double s) { return std::abs(s - std::round(s)) < kSnap; }

void check_inside(const FieldView& f, Point c, double R) {
  if (!f.contains(c.x - R, c.y - R) || !f.contains(c.x + R, c.y + R))
    throw std::out_of_range("circle leaves the padded reconstruction domain");
}

void accumulate(CircleMoments& M, const Vec3& val, double w, double ct, double st) {
  const double ws[6] = {w, w * ct, w * st, w * ct * ct, w * st * st, w * st * ct};
  for (int k = 0; k < 6; ++k)
    for (int v = 0; v < 3; ++v) M[k][v] += ws[k] * val[v];
}

}  // namespace

std::array<int, 2> FieldView::owner(double x, double y) const {
  return {owner_index((x - x0()) / dx()), owner_index((y - y0()) / dy())};
}

Vec3 FieldView::value(double x, double y) const {
  const double s = (x - x0()) / dx(), t = (y - y0()) / dy();
  auto [i, j] = owner(x, y);
  const int ni = near_int(s) ? 2 : 1, nj = near_int(t) ? 2 : 1;
  if (ni * nj == 1) return value_in_cell(i, j, x, y);
  // on a grid line: mean of the traces from every adjacent cell
  Vec3 r{0.0, 0.0, 0.0};
  for (int b = 0; b < nj; ++b)
    for (int a = 0; a < ni; ++a) {
      Vec3 q = value_in_cell(i + a, j + b, x, y);
      for (int v = 0; v < 3; ++v) r[v] += q[v];
    }
  for (double& v : r) v /= ni * nj;
  return r;
}

Vec3 FieldView::apex_value(double x, double y) const {
  if (auto a = apex(x, y)) return *a;
  return value(x, y);
}

Vec3 SnapshotView::value_in_cell(int i, int j, double x, double y) const {
  const double* c = s_.cell(i, j);
  double xi = 2.0 * (x - (s_.x0 + (i + 0.5) * s_.dx)) / s_.dx;
  double eta = 2.0 * (y - (s_.y0 + (j + 0.5) * s_.dy)) / s_.dy;
  return {eval_monomial(c, xi, eta), eval_monomial(c + 9, xi, eta), eval_monomial(c + 18, xi, eta)};
}

bool SnapshotView::contains(double x, double y) const {
  const double tol = 1e-12;
  double s = (x - s_.x0) / s_.dx, t = (y - s_.y0) / s_.dy;
  return s >= -s_.ghost - tol && s <= s_.nx + s_.ghost + tol && t >= -s_.ghost - tol && t <= s_.ny + s_.ghost + tol;
}

std::optional<Vec3> SnapshotView::apex(double x, double y) const {
  if (!dofs_) return std::nullopt;
  double s = (x - s_.x0) / s_.dx, t = (y - s_.y0) / s_.dy;
  bool si = near_int(s), ti = near_int(t);
  bool sh = near_int(s - 0.5), th = near_int(t - 0.5);
  int i = static_cast<int>(std::round(s)), j = static_cast<int>(std::round(t));
  auto get = [&](auto member, int a, int b) -> std::optional<Vec3> {
    const Field2D& f0 = dofs_->var[0].*member;
    if (a < 0 || b < 0 || a >= f0.nx || b >= f0.ny) return std::nullopt;
    return Vec3{(dofs_->var[0].*member)(a, b), (dofs_->var[1].*member)(a, b), (dofs_->var[2].*member)(a, b)};
  };
  if (si && ti) return get(&VarDofs::corner, i, j);
  if (si && th) return get(&VarDofs::xedge, i, static_cast<int>(std::floor(t)));
  if (sh && ti) return get(&VarDofs::yedge, static_cast<int>(std::floor(s)), j);
  return std::nullopt;
}

CircleMoments circle_moments(const FieldView& f, Point c, double R) {
  CircleMoments M{};
  if (R < 0.0) throw std::invalid_argument("circle_moments: negative radius");
  if (R == 0.0) {
    Vec3 v = f.value(c.x, c.y);
    for (int k = 0; k < 3; ++k) M[0][k] = 2.0 * pi * v[k];
    return M;
  }
  check_inside(f, c, R);

  std::vector<double> th;
  th.reserve(40);
  for (int k = 0; k <= 8; ++k) th.push_back(k * pi / 4.0);
  const double X0 = f.x0(), Y0 = f.y0(), DX = f.dx(), DY = f.dy();
  for (int k = static_cast<int>(std::ceil((c.x - R - X0) / DX)); k <= static_cast<int>(std::floor((c.x + R - X0) / DX)); ++k) {
    double s = (X0 + k * DX - c.x) / R;
    if (std::abs(s) > 1.0 - kTangent) continue;
    double a = std::acos(s);
    th.push_back(a);
    th.push_back(2.0 * pi - a);
  }
  for (int k = static_cast<int>(std::ceil((c.y - R - Y0) / DY)); k <= static_cast<int>(std::floor((c.y + R - Y0) / DY)); ++k) {
    double s = (Y0 + k * DY - c.y) / R;
    if (std::abs(s) > 1.0 - kTangent) continue;
    double a = std::asin(s);
    th.push_back(a < 0.0 ? a + 2.0 * pi : a);
    th.push_back(pi - a);
  }
  std::sort(th.begin(), th.end());

  const GaussRule& g = gauss12();
  for (size_t k = 0; k + 1 < th.size(); ++k) {
    double a = th[k], b = th[k + 1];
    if (b - a < 1e-14) continue;
    double m = 0.5 * (a + b), h = 0.5 * (b - a);
    int ci = static_cast<int>(std::floor((c.x + R * std::cos(m) - X0) / DX));
    int cj = static_cast<int>(std::floor((c.y + R * std::sin(m) - Y0) / DY));
    for (size_t q = 0; q < g.x.size(); ++q) {
      double t = m + h * g.x[q];
      double ct = std::cos(t), st = std::sin(t);
      Vec3 val = f.value_in_cell(ci, cj, c.x + R * ct, c.y + R * st);
      accumulate(M, val, h * g.w[q], ct, st);
    }
  }
  return M;
}

Vec3 circle_integral(const FieldView& f, Point c, double R, Weight w) {
  return circle_moments(f, c, R)[static_cast<int>(w)];
}

CircleMoments quad_circle_moments(const FieldView& f, Point c, double R, int n) {
  if (n < 1) throw std::invalid_argument("quad_circle_moments: n must be positive");
  CircleMoments M{};
  if (R > 0.0) check_inside(f, c, R);
  for (int k = 0; k < n; ++k) {
    double t = 2.0 * pi * k / n;
    double ct = std::cos(t), st = std::sin(t);
    // exact zeros on the axes keep node placement symmetric
    if (4 * k % n == 0) {
      int q = 4 * k / n;
      ct = (q == 0) ? 1.0 : (q == 2 ? -1.0 : 0.0);
      st = (q == 1) ? 1.0 : (q == 3 ? -1.0 : 0.0);
    }
    Vec3 val = f.value(c.x + R * ct, c.y + R * st);
    accumulate(M, val, 2.0 * pi / n, ct, st);
  }
  return M;
}

Vec3 quad_circle_sum(const FieldView& f, Point c, double R, int n) { return quad_circle_moments(f, c, R, n)[0]; }

Vec3 center_approx(const FieldView& f, Point c, double R, int n_quad) {
  if (R == 0.0) return f.apex_value(c.x, c.y);
  Vec3 half, full;
  if (n_quad > 0) {
    half = quad_circle_sum(f, c, 0.5 * R, n_quad);
    full = quad_circle_sum(f, c, R, n_quad);
  } else {
    half = circle_integral(f, c, 0.5 * R, Weight::One);
    full = circle_integral(f, c, R, Weight::One);
  }
  Vec3 r;
  for (int v = 0; v < 3; ++v) r[v] = (4.0 * half[v] - full[v]) / (6.0 * pi);
  return r;
}

double max_radius(const EvolutionConfig& cfg, double dt) {
  return cfg.c * dt * std::max({1.0, cfg.delta, cfg.nu});
}

Vec3 evolve_point(const FieldView& f, Point pt, double dt, const EvolutionConfig& cfg) {
  if (!(dt > 0.0)) throw std::invalid_argument("evolve_point: dt must be positive");
  const double R = cfg.c * dt;
  const bool hat = is_hat(cfg.kind);
  const int nq = hat ? cfg.n_quad : 0;
  const CircleMoments M = hat ? quad_circle_moments(f, pt, R, cfg.n_quad) : circle_moments(f, pt, R);
  auto I = [&](Weight w, int v) { return M[static_cast<int>(w)][v]; };
  const double ip = 1.0 / pi;

  const double p_int = ip * (I(Weight::One, P) - I(Weight::Cos, U) - I(Weight::Sin, V));
  const double u_eg2 =
      ip * (-I(Weight::Cos, P) + 2.0 * I(Weight::Cos2, U) - 0.5 * I(Weight::One, U) + 2.0 * I(Weight::SinCos, V));
  const double v_eg2 =
      ip * (-I(Weight::Sin, P) + 2.0 * I(Weight::SinCos, U) + 2.0 * I(Weight::Sin2, V) - 0.5 * I(Weight::One, V));

  switch (cfg.kind) {
    case EvolutionKind::EG2: {
      Vec3 a = f.apex_value(pt.x, pt.y);
      return {p_int - a[P], u_eg2, v_eg2};
    }
    case EvolutionKind::EGquad: {
      Vec3 a = f.apex_value(pt.x, pt.y);
      Vec3 q0 = f.value(pt.x + R, pt.y), q1 = f.value(pt.x, pt.y + R);
      Vec3 q2 = f.value(pt.x - R, pt.y), q3 = f.value(pt.x, pt.y - R);
      double p = -a[P] + ip * I(Weight::One, P) - 0.5 * (q0[U] - q2[U]) - 0.5 * (q1[V] - q3[V]);
      double u = -0.5 * (q0[P] - q2[P]) + ip * (2.0 * I(Weight::Cos2, U) - 0.5 * I(Weight::One, U) +
                                                2.0 * I(Weight::SinCos, V));
      double v = -0.5 * (q1[P] - q3[P]) + ip * (2.0 * I(Weight::SinCos, U) + 2.0 * I(Weight::Sin2, V) -
                                                0.5 * I(Weight::One, V));
      return {p, u, v};
    }
    case EvolutionKind::EG2delta:
    case EvolutionKind::HatEG2delta: {
      Vec3 ca = center_approx(f, pt, cfg.delta * R, nq);
      return {p_int - ca[P], u_eg2, v_eg2};
    }
    case EvolutionKind::EG2deltanu:
    case EvolutionKind::HatEG2deltanu: {
      Vec3 ca = center_approx(f, pt, cfg.delta * R, nq);
      Vec3 cn = center_approx(f, pt, cfg.nu * R, nq);
      Vec3 a = f.apex_value(pt.x, pt.y);
      return {p_int - ca[P], u_eg2 - (a[U] - cn[U]), v_eg2 - (a[V] - cn[V])};
    }
  }
  throw std::logic_error("evolve_point: unhandled kind");
}

}  // namespace afeg
