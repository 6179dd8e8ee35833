#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "afeg/types.hpp"

namespace afeg {

enum class BcMode { DoublyPeriodic, DiagonalExtrapolation };

struct Grid {
  int nx = 0;
  int ny = 0;
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  double dx = 0.0, dy = 0.0;
  BcMode bc = BcMode::DoublyPeriodic;

  double xc(int i) const { return x_min + (i + 0.5) * dx; }
  double yc(int j) const { return y_min + (j + 0.5) * dy; }
  // left / bottom cell faces: x_{i-1/2}, y_{j-1/2}
  double xf(int i) const { return x_min + i * dx; }
  double yf(int j) const { return y_min + j * dy; }
  double area() const { return (x_max - x_min) * (y_max - y_min); }
};

Grid build_grid(int nx, int ny, std::array<double, 4> extents, BcMode bc);

// Row-major 2D array, i fastest.
struct Field2D {
  int nx = 0;
  int ny = 0;
  std::vector<double> v;

  Field2D() = default;
  Field2D(int nx_, int ny_, double fill = 0.0) : nx(nx_), ny(ny_), v(static_cast<size_t>(nx_) * ny_, fill) {}
  double& operator()(int i, int j) { return v[static_cast<size_t>(j) * nx + i]; }
  double operator()(int i, int j) const { return v[static_cast<size_t>(j) * nx + i]; }
};

struct VarDofs {
  Field2D avg;     // nx x ny
  Field2D xedge;   // (nx+1) x ny, at (x_{i-1/2}, y_j)
  Field2D yedge;   // nx x (ny+1), at (x_i, y_{j-1/2})
  Field2D corner;  // (nx+1) x (ny+1), at (x_{i-1/2}, y_{j-1/2})
};

struct AfState {
  double time = 0.0;
  std::array<VarDofs, 3> var;
};

AfState make_state(const Grid& g);

// Copies index 0 onto index nx (and ny) for all point-value arrays.
void sync_periodic(AfState& s, const Grid& g);

bool all_finite(const AfState& s);

// Maps an arbitrary cell index onto the interior cell whose data fills it.
std::pair<int, int> map_cell(const Grid& g, int i, int j);

// Cell averages with a ghost ring of width `ghost`.
struct GhostedAverages {
  int ghost = 0;
  int nx = 0, ny = 0;
  int nxp = 0, nyp = 0;
  std::array<std::vector<double>, 3> avg;

  double at(int var, int i, int j) const {
    return avg[var][static_cast<size_t>(j + ghost) * nxp + (i + ghost)];
  }
};

GhostedAverages apply_bc(const AfState& s, const Grid& g, int ghost = 2);

enum class L1Scaling { PerArea, Absolute };

// sum |Q - Q_exact| dx dy, divided by the domain area under PerArea.
Vec3 l1_error(const AfState& s, const Grid& g, const std::function<Vec3(int, int)>& exact_avg,
              L1Scaling scaling = L1Scaling::PerArea);

struct ErrorReport {
  std::vector<std::pair<int, int>> resolutions;
  std::vector<Vec3> l1;
  std::vector<Vec3> eoc;  // one entry per consecutive pair
};

std::vector<double> eoc(const std::vector<double>& errors);

// Fills the eoc member from l1 (component-wise; zero errors give NaN).
void finalize_eoc(ErrorReport& r);

Vec3 gauss_cell_average(const Grid& g, int i, int j, const std::function<Vec3(double, double)>& f, int n = 5);

}  // namespace afeg
