#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "afeg/scheme.hpp"

namespace afeg {

using Complex = std::complex<double>;

struct StabilityReport {
  int m = 0;
  double cfl = 0.0;
  std::vector<Complex> eigenvalues;
  double spectral_radius = 0.0;
  bool stable = false;
  double tolerance = 1e-9;
};

struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Non-duplicated periodic DOF ordering: [avg, xedge, yedge, corner] x [p, u, v] x m x m.
int dof_count(int m);
Eigen::VectorXd pack_state(const AfState& s, const Grid& g);
AfState unpack_state(const Eigen::VectorXd& x, const Grid& g);

Grid stability_grid(int m);

Eigen::MatrixXd assemble_B(const SchemeConfig& cfg, int m);

std::vector<Complex> eigenvalues_dense(const Eigen::MatrixXd& B);
// Eigenvalues through the 12x12 Fourier symbols of the translation-invariant step.
std::vector<Complex> eigenvalues_block(const SchemeConfig& cfg, int m);

double spectral_radius(const std::vector<Complex>& ev);

enum class EigenRoute { Dense, Block };

StabilityReport analyze(const SchemeConfig& cfg, int m, EigenRoute route = EigenRoute::Block, double tol = 1e-9);

// Bisection on rho(B(cfl)) <= 1 + 1e-9; the bracket must be stable at lo, unstable at hi.
double max_cfl(SchemeConfig cfg, int m, double lo, double hi, double width = 5e-4);

void write_eigen_csv(const std::string& path, const std::vector<Complex>& ev);

}  // namespace afeg
