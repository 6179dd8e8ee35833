#include "afeg/reconstruction.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace afeg {

namespace {

double moment(int a) { return a == 0 ? 1.0 : (a == 1 ? 0.0 : 1.0 / 3.0); }

double mono(int k, double xi, double eta) { return std::pow(xi, k % 3) * std::pow(eta, k / 3); }

// Inverse of the 9x9 condition matrix; row order matches the AfCellDofs layout.
const Eigen::Matrix<double, 9, 9>& af_inverse() {
  static const Eigen::Matrix<double, 9, 9> inv = [] {
    const double nodes[8][2] = {{-1, -1}, {1, -1}, {-1, 1}, {1, 1}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    Eigen::Matrix<double, 9, 9> m;
    for (int r = 0; r < 8; ++r)
      for (int k = 0; k < 9; ++k) m(r, k) = mono(k, nodes[r][0], nodes[r][1]);
    for (int k = 0; k < 9; ++k) m(8, k) = moment(k % 3) * moment(k / 3);
    return Eigen::Matrix<double, 9, 9>(m.fullPivLu().inverse());
  }();
  return inv;
}

}  // namespace

CellPoly af_reconstruct(const AfCellDofs& d) {
  Eigen::Matrix<double, 9, 1> rhs;
  rhs << d.corner[0], d.corner[1], d.corner[2], d.corner[3], d.xedge[0], d.xedge[1], d.yedge[0], d.yedge[1], d.avg;
  Eigen::Matrix<double, 9, 1> c = af_inverse() * rhs;
  CellPoly p;
  p.kind = BasisKind::AfBiquadratic;
  for (int k = 0; k < 9; ++k) p.c[k] = c(k);
  return p;
}

AfCellDofs gather_af_dofs(const VarDofs& v, int i, int j) {
  AfCellDofs d;
  d.corner = {v.corner(i, j), v.corner(i + 1, j), v.corner(i, j + 1), v.corner(i + 1, j + 1)};
  d.xedge = {v.xedge(i, j), v.xedge(i + 1, j)};
  d.yedge = {v.yedge(i, j), v.yedge(i, j + 1)};
  d.avg = v.avg(i, j);
  return d;
}

std::array<CellPoly, 3> af_reconstruct(const AfState& s, int i, int j) {
  std::array<CellPoly, 3> r;
  for (int v = 0; v < 3; ++v) {
    r[v] = af_reconstruct(gather_af_dofs(s.var[v], i, j));
    r[v].i = i;
    r[v].j = j;
  }
  return r;
}

CellPoly cweno_reconstruct(const Stencil3& q, const CwenoParams& prm, CwenoWorkspace* out) {
  CwenoWorkspace w;
  const double Q = q[1][1];
  const double qe = q[2][1], qw = q[0][1], qn = q[1][2], qs = q[1][0];
  w.c[1] = 0.5 * (qe - qw);
  w.c[2] = 0.5 * (qn - qs);
  w.c[3] = 0.5 * (qe + qw) - Q;
  w.c[4] = 0.5 * (qn + qs) - Q;
  w.c[5] = 0.25 * (q[2][2] - q[2][0] - q[0][2] + q[0][0]);

  w.a[1] = qe - Q;
  w.a[2] = Q - qw;
  w.a[3] = Q - qw;
  w.a[4] = qe - Q;
  w.b[1] = qn - Q;
  w.b[2] = qn - Q;
  w.b[3] = Q - qs;
  w.b[4] = Q - qs;
  w.Sa = (w.a[1] + w.a[2] + w.a[3] + w.a[4]) / 8.0;
  w.Sb = (w.b[1] + w.b[2] + w.b[3] + w.b[4]) / 8.0;

  const double d1 = w.c[1] - w.Sa, d2 = w.c[2] - w.Sb;
  w.beta[0] = 4.0 * d1 * d1 + 4.0 * d2 * d2 + (5.0 / 3.0) * (w.c[3] * w.c[3] + w.c[4] * w.c[4]) +
              (4.0 / 3.0) * w.c[5] * w.c[5];
  for (int m = 1; m <= 4; ++m) w.beta[m] = w.a[m] * w.a[m] + w.b[m] * w.b[m];

  const double g1 = (1.0 - prm.gamma0) / 4.0;
  double sum = 0.0;
  for (int m = 0; m <= 4; ++m) {
    double gm = m == 0 ? prm.gamma0 : g1;
    w.omega[m] = gm / std::pow(prm.eps + w.beta[m], prm.r);
    sum += w.omega[m];
  }
  for (double& o : w.omega) o /= sum;

  CellPoly p;
  p.kind = BasisKind::CwenoModal;
  p.c[0] = Q;
  p.c[1] = 2.0 * w.omega[0] * d1;
  p.c[2] = 2.0 * w.omega[0] * d2;
  for (int m = 1; m <= 4; ++m) {
    p.c[1] += w.omega[m] * w.a[m];
    p.c[2] += w.omega[m] * w.b[m];
  }
  p.c[3] = 2.0 * w.omega[0] * w.c[3];
  p.c[4] = 2.0 * w.omega[0] * w.c[4];
  p.c[5] = 2.0 * w.omega[0] * w.c[5];
  if (out) *out = w;
  return p;
}

std::array<double, 9> to_monomial(const CellPoly& p) {
  if (p.kind == BasisKind::AfBiquadratic) return p.c;
  // N = {1, xi/2, eta/2, xi^2/4 - 1/12, eta^2/4 - 1/12, xi eta/4}
  std::array<double, 9> m{};
  m[0] = p.c[0] - (p.c[3] + p.c[4]) / 12.0;
  m[1] = p.c[1] / 2.0;
  m[3] = p.c[2] / 2.0;
  m[2] = p.c[3] / 4.0;
  m[6] = p.c[4] / 4.0;
  m[4] = p.c[5] / 4.0;
  return m;
}

double eval_poly(const CellPoly& p, double xi, double eta) {
  auto m = to_monomial(p);
  return eval_monomial(m.data(), xi, eta);
}

std::array<double, 2> eval_grad(const CellPoly& p, double xi, double eta, double dx, double dy) {
  auto c = to_monomial(p);
  double dxi = 0.0, deta = 0.0;
  for (int b = 0; b < 3; ++b)
    for (int a = 0; a < 3; ++a) {
      double ck = c[a + 3 * b];
      if (a > 0) dxi += ck * a * std::pow(xi, a - 1) * std::pow(eta, b);
      if (b > 0) deta += ck * b * std::pow(xi, a) * std::pow(eta, b - 1);
    }
  return {dxi * 2.0 / dx, deta * 2.0 / dy};
}

PolySnapshot build_snapshot(const AfState& s, const Grid& g, ReconKind kind, const CwenoParams& prm, int ghost) {
  PolySnapshot snap;
  snap.ghost = ghost;
  snap.nx = g.nx;
  snap.ny = g.ny;
  snap.nxp = g.nx + 2 * ghost;
  snap.nyp = g.ny + 2 * ghost;
  snap.x0 = g.x_min;
  snap.y0 = g.y_min;
  snap.dx = g.dx;
  snap.dy = g.dy;
  snap.coef.assign(static_cast<size_t>(snap.nxp) * snap.nyp * PolySnapshot::kStride, 0.0);

  GhostedAverages ga;
  if (kind == ReconKind::CWENO) ga = apply_bc(s, g, 1);

#pragma omp parallel for schedule(static)
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      double* dst = snap.cell(i, j);
      for (int v = 0; v < 3; ++v) {
        CellPoly p;
        if (kind == ReconKind::AF) {
          p = af_reconstruct(gather_af_dofs(s.var[v], i, j));
        } else {
          Stencil3 q;
          for (int di = -1; di <= 1; ++di)
            for (int dj = -1; dj <= 1; ++dj) q[di + 1][dj + 1] = ga.at(v, i + di, j + dj);
          p = cweno_reconstruct(q, prm);
        }
        auto m = to_monomial(p);
        for (int k = 0; k < 9; ++k) dst[v * 9 + k] = m[k];
      }
    }

  // ghost ring: copy the polynomial of the mapped interior cell
  for (int j = -ghost; j < g.ny + ghost; ++j)
    for (int i = -ghost; i < g.nx + ghost; ++i) {
      if (i >= 0 && i < g.nx && j >= 0 && j < g.ny) continue;
      auto [a, b] = map_cell(g, i, j);
      const double* src = snap.cell(a, b);
      double* dst = snap.cell(i, j);
      for (int k = 0; k < PolySnapshot::kStride; ++k) dst[k] = src[k];
    }
  return snap;
}

}  // namespace afeg
