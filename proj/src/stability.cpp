#include "afeg/stability.hpp"

#include <lapacke.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace afeg {

namespace {

Field2D VarDofs::*const kClasses[4] = {&VarDofs::avg, &VarDofs::xedge, &VarDofs::yedge, &VarDofs::corner};

size_t dof_index(int cls, int var, int i, int j, int m) {
  return ((static_cast<size_t>(cls) * 3 + var) * m + j) * m + i;
}

void require_linear(const SchemeConfig& cfg, int m) {
  if (cfg.recon != ReconKind::AF) throw std::invalid_argument("stability analysis needs the linear AF reconstruction");
  if (m < 6) throw std::invalid_argument("stability analysis needs m >= 6");
}

}  // namespace

int dof_count(int m) { return 12 * m * m; }

Grid stability_grid(int m) { return build_grid(m, m, {-1.0, 1.0, -1.0, 1.0}, BcMode::DoublyPeriodic); }

Eigen::VectorXd pack_state(const AfState& s, const Grid& g) {
  const int m = g.nx;
  Eigen::VectorXd x(dof_count(m));
  for (int c = 0; c < 4; ++c)
    for (int v = 0; v < 3; ++v)
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) x(dof_index(c, v, i, j, m)) = (s.var[v].*kClasses[c])(i, j);
  return x;
}

AfState unpack_state(const Eigen::VectorXd& x, const Grid& g) {
  const int m = g.nx;
  AfState s = make_state(g);
  for (int c = 0; c < 4; ++c)
    for (int v = 0; v < 3; ++v)
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) (s.var[v].*kClasses[c])(i, j) = x(dof_index(c, v, i, j, m));
  sync_periodic(s, g);
  return s;
}

Eigen::MatrixXd assemble_B(const SchemeConfig& cfg, int m) {
  require_linear(cfg, m);
  const Grid g = stability_grid(m);
  const int n = dof_count(m);
  Stepper st(g, cfg);
  const double dt = time_step(g, cfg);
  Eigen::MatrixXd B(n, n);
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  for (int k = 0; k < n; ++k) {
    e(k) = 1.0;
    B.col(k) = pack_state(st.step(unpack_state(e, g), dt), g);
    e(k) = 0.0;
  }
  return B;
}

std::vector<Complex> eigenvalues_dense(const Eigen::MatrixXd& B) {
  const lapack_int n = static_cast<lapack_int>(B.rows());
  if (B.cols() != n) throw std::invalid_argument("eigenvalues_dense: matrix must be square");
  Eigen::MatrixXd A = B;  // column major, overwritten
  std::vector<double> wr(n), wi(n);
  lapack_int info = LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, A.data(), n, wr.data(), wi.data(), nullptr, 1,
                                  nullptr, 1);
  if (info != 0) throw std::runtime_error("dgeev failed to converge (info = " + std::to_string(info) + ")");
  std::vector<Complex> ev(n);
  for (lapack_int k = 0; k < n; ++k) ev[k] = {wr[k], wi[k]};
  return ev;
}

std::vector<Complex> eigenvalues_block(const SchemeConfig& cfg, int m) {
  require_linear(cfg, m);
  const Grid g = stability_grid(m);
  Stepper st(g, cfg);
  const double dt = time_step(g, cfg);

  // response[c](row, i + m j): effect of an impulse in slot c at cell (0,0)
  std::vector<Eigen::MatrixXd> resp(12, Eigen::MatrixXd::Zero(12, m * m));
  Eigen::VectorXd e = Eigen::VectorXd::Zero(dof_count(m));
  for (int c = 0; c < 12; ++c) {
    size_t k = dof_index(c / 3, c % 3, 0, 0, m);
    e(k) = 1.0;
    Eigen::VectorXd y = pack_state(st.step(unpack_state(e, g), dt), g);
    e(k) = 0.0;
    for (int r = 0; r < 12; ++r)
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) resp[c](r, i + m * j) = y(dof_index(r / 3, r % 3, i, j, m));
  }

  std::vector<Complex> ev;
  ev.reserve(static_cast<size_t>(12) * m * m);
  const double w = 2.0 * std::numbers::pi / m;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver;
  for (int ky = 0; ky < m; ++ky)
    for (int kx = 0; kx < m; ++kx) {
      Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(12, 12);
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) {
          Complex ph = std::polar(1.0, -w * (kx * i + ky * j));
          for (int c = 0; c < 12; ++c)
            for (int r = 0; r < 12; ++r) {
              double a = resp[c](r, i + m * j);
              if (a != 0.0) S(r, c) += a * ph;
            }
        }
      solver.compute(S, false);
      if (solver.info() != Eigen::Success) throw std::runtime_error("eigenvalues_block: eigensolver failed");
      for (int k = 0; k < 12; ++k) ev.push_back(solver.eigenvalues()(k));
    }
  return ev;
}

double spectral_radius(const std::vector<Complex>& ev) {
  double r = 0.0;
  for (const Complex& z : ev) r = std::max(r, std::abs(z));
  return r;
}

StabilityReport analyze(const SchemeConfig& cfg, int m, EigenRoute route, double tol) {
  StabilityReport rep;
  rep.m = m;
  rep.cfl = cfg.cfl;
  rep.tolerance = tol;
  rep.eigenvalues = route == EigenRoute::Dense ? eigenvalues_dense(assemble_B(cfg, m)) : eigenvalues_block(cfg, m);
  rep.spectral_radius = spectral_radius(rep.eigenvalues);
  rep.stable = rep.spectral_radius <= 1.0 + tol;
  return rep;
}

double max_cfl(SchemeConfig cfg, int m, double lo, double hi, double width) {
  auto stable_at = [&](double cfl) {
    cfg.cfl = cfl;
    return analyze(cfg, m).stable;
  };
  if (!(lo < hi)) throw BracketError("max_cfl: need lo < hi");
  if (!stable_at(lo)) throw BracketError("max_cfl: unstable at the lower bracket " + std::to_string(lo));
  if (stable_at(hi)) throw BracketError("max_cfl: stable at the upper bracket " + std::to_string(hi));
  while (hi - lo > width) {
    double mid = 0.5 * (lo + hi);
    if (stable_at(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

void write_eigen_csv(const std::string& path, const std::vector<Complex>& ev) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "re,im\n");
  for (const Complex& z : ev) std::fprintf(f, "%.17g,%.17g\n", z.real(), z.imag());
  std::fclose(f);
}

}  // namespace afeg
