#pragma once

#include <array>
#include <optional>
#include <string>

#include "afeg/reconstruction.hpp"
#include "afeg/types.hpp"

namespace afeg {

enum class EvolutionKind { EG2, EGquad, EG2delta, EG2deltanu, HatEG2delta, HatEG2deltanu };

struct EvolutionConfig {
  EvolutionKind kind = EvolutionKind::EG2;
  double delta = 0.0;
  double nu = 0.0;
  int n_quad = 8;
  double c = 1.0;
};

EvolutionKind parse_kind(const std::string& name);
std::string kind_name(EvolutionKind k);
bool is_hat(EvolutionKind k);

enum class Weight { One = 0, Cos, Sin, Cos2, Sin2, SinCos };

// Piecewise field on a uniform grid with lines at x0 + i*dx, y0 + j*dy.
class FieldView {
 public:
  virtual ~FieldView() = default;
  virtual double x0() const = 0;
  virtual double y0() const = 0;
  virtual double dx() const = 0;
  virtual double dy() const = 0;
  virtual Vec3 value_in_cell(int i, int j, double x, double y) const = 0;
  virtual bool contains(double /*x*/, double /*y*/) const { return true; }
  // Node value at time level n, if the view carries one (AF point values).
  virtual std::optional<Vec3> apex(double /*x*/, double /*y*/) const { return std::nullopt; }

  // Owning cell of a point; points on grid lines go to the lower/left cell.
  std::array<int, 2> owner(double x, double y) const;
  Vec3 value(double x, double y) const;
  Vec3 apex_value(double x, double y) const;
};

// View of a reconstruction snapshot. With `dofs` set, apex values come from the
// stored point values instead of the polynomials.
class SnapshotView : public FieldView {
 public:
  explicit SnapshotView(const PolySnapshot& s, const AfState* dofs = nullptr) : s_(s), dofs_(dofs) {}
  double x0() const override { return s_.x0; }
  double y0() const override { return s_.y0; }
  double dx() const override { return s_.dx; }
  double dy() const override { return s_.dy; }
  Vec3 value_in_cell(int i, int j, double x, double y) const override;
  bool contains(double x, double y) const override;
  std::optional<Vec3> apex(double x, double y) const override;

 private:
  const PolySnapshot& s_;
  const AfState* dofs_;
};

// Integrals of (p,u,v) against all six weights over the circle of radius R.
using CircleMoments = std::array<Vec3, 6>;

CircleMoments circle_moments(const FieldView& f, Point c, double R);
Vec3 circle_integral(const FieldView& f, Point c, double R, Weight w);
// n-point equally spaced rule (2 pi / n) sum f(Q(2 pi k / n)) w(theta_k).
CircleMoments quad_circle_moments(const FieldView& f, Point c, double R, int n);
Vec3 quad_circle_sum(const FieldView& f, Point c, double R, int n);

// (1/3)(4 mean_{R/2} - mean_R); R = 0 gives the apex value.
Vec3 center_approx(const FieldView& f, Point c, double R, int n_quad = 0);

Vec3 evolve_point(const FieldView& f, Point P, double dt, const EvolutionConfig& cfg);

// Largest circle radius used by evolve_point, in physical units.
double max_radius(const EvolutionConfig& cfg, double dt);

}  // namespace afeg
