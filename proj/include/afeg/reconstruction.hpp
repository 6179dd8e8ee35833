#pragma once

#include <array>
#include <vector>

#include "afeg/grid_state.hpp"

namespace afeg {

enum class BasisKind { AfBiquadratic, CwenoModal };
enum class ReconKind { AF, CWENO };

// AF: coefficients of xi^a eta^b stored at index a + 3b.
// CWENO: modal coefficients C_0..C_5 in slots 0..5.
struct CellPoly {
  BasisKind kind = BasisKind::AfBiquadratic;
  std::array<double, 9> c{};
  int i = 0;
  int j = 0;
};

// The 9 AF degrees of freedom of one cell, in reference coordinates.
struct AfCellDofs {
  std::array<double, 4> corner{};  // (-1,-1), (1,-1), (-1,1), (1,1)
  std::array<double, 2> xedge{};   // (-1,0), (1,0)
  std::array<double, 2> yedge{};   // (0,-1), (0,1)
  double avg = 0.0;
};

CellPoly af_reconstruct(const AfCellDofs& d);
AfCellDofs gather_af_dofs(const VarDofs& v, int i, int j);
std::array<CellPoly, 3> af_reconstruct(const AfState& s, int i, int j);

struct CwenoParams {
  double eps = 1e-12;
  int r = 2;
  double gamma0 = 0.5;  // the four one-sided weights share 1 - gamma0
};

struct CwenoWorkspace {
  std::array<double, 6> c{};      // c[1..5]
  std::array<double, 5> a{}, b{};  // a[1..4], b[1..4]
  double Sa = 0.0, Sb = 0.0;
  std::array<double, 5> beta{};
  std::array<double, 5> omega{};
};

// q[di+1][dj+1] holds Q_{i+di, j+dj}.
using Stencil3 = std::array<std::array<double, 3>, 3>;

CellPoly cweno_reconstruct(const Stencil3& q, const CwenoParams& prm = {}, CwenoWorkspace* ws = nullptr);

std::array<double, 9> to_monomial(const CellPoly& p);
double eval_poly(const CellPoly& p, double xi, double eta);
std::array<double, 2> eval_grad(const CellPoly& p, double xi, double eta, double dx, double dy);

inline double eval_monomial(const double* c, double xi, double eta) {
  double r0 = c[0] + xi * (c[1] + xi * c[2]);
  double r1 = c[3] + xi * (c[4] + xi * c[5]);
  double r2 = c[6] + xi * (c[7] + xi * c[8]);
  return r0 + eta * (r1 + eta * r2);
}

// Monomial coefficients of every cell, including a ghost ring.
struct PolySnapshot {
  int ghost = 0;
  int nx = 0, ny = 0;
  int nxp = 0, nyp = 0;
  double x0 = 0.0, y0 = 0.0;  // lower-left corner of cell (0,0)
  double dx = 1.0, dy = 1.0;
  std::vector<double> coef;  // 27 per cell: var * 9 + k

  static constexpr int kStride = 27;
  const double* cell(int i, int j) const {
    return coef.data() + (static_cast<size_t>(j + ghost) * nxp + (i + ghost)) * kStride;
  }
  double* cell(int i, int j) {
    return coef.data() + (static_cast<size_t>(j + ghost) * nxp + (i + ghost)) * kStride;
  }
};

PolySnapshot build_snapshot(const AfState& s, const Grid& g, ReconKind kind, const CwenoParams& prm = {},
                            int ghost = 2);

}  // namespace afeg
