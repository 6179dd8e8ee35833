#include "afeg/kernel.hpp"

#include <cmath>
#include <stdexcept>

namespace afeg {

namespace {

constexpr int kReach = 2;

// Single monomial of one variable in one cell, zero elsewhere.
class UnitView : public FieldView {
 public:
  UnitView(double dx, double dy) : dx_(dx), dy_(dy) {}
  double x0() const override { return 0.0; }
  double y0() const override { return 0.0; }
  double dx() const override { return dx_; }
  double dy() const override { return dy_; }
  Vec3 value_in_cell(int i, int j, double x, double y) const override {
    Vec3 r{0.0, 0.0, 0.0};
    if (var < 0 || i != ci || j != cj) return r;
    double xi = 2.0 * (x - (i + 0.5) * dx_) / dx_;
    double eta = 2.0 * (y - (j + 0.5) * dy_) / dy_;
    r[var] = std::pow(xi, k % 3) * std::pow(eta, k / 3);
    return r;
  }
  std::optional<Vec3> apex(double, double) const override {
    if (!use_apex) return std::nullopt;
    return apex_val;
  }

  int ci = 0, cj = 0, var = -1, k = 0;
  bool use_apex = true;
  Vec3 apex_val{0.0, 0.0, 0.0};

 private:
  double dx_, dy_;
};

Point node_position(NodeClass cls, int i, int j, double x0, double y0, double dx, double dy) {
  switch (cls) {
    case NodeClass::Corner: return {x0 + i * dx, y0 + j * dy};
    case NodeClass::XEdge: return {x0 + i * dx, y0 + (j + 0.5) * dy};
    case NodeClass::YEdge: return {x0 + (i + 0.5) * dx, y0 + j * dy};
  }
  return {};
}

Field2D VarDofs::*node_field(NodeClass cls) {
  switch (cls) {
    case NodeClass::Corner: return &VarDofs::corner;
    case NodeClass::XEdge: return &VarDofs::xedge;
    case NodeClass::YEdge: return &VarDofs::yedge;
  }
  return &VarDofs::corner;
}

}  // namespace

NodeStencil build_stencil(NodeClass cls, const EvolutionConfig& cfg, double dt, double dx, double dy,
                          bool apex_from_dofs) {
  NodeStencil st;
  st.cls = cls;
  st.dt = dt;
  const Point pt = node_position(cls, 0, 0, 0.0, 0.0, dx, dy);
  const double R = max_radius(cfg, dt);
  const int i_lo = static_cast<int>(std::floor((pt.x - R) / dx)) - 1;
  const int i_hi = static_cast<int>(std::floor((pt.x + R) / dx));
  const int j_lo = static_cast<int>(std::floor((pt.y - R) / dy)) - 1;
  const int j_hi = static_cast<int>(std::floor((pt.y + R) / dy));
  if (i_lo < -kReach || j_lo < -kReach || i_hi > kReach - 1 || j_hi > kReach - 1)
    throw std::out_of_range("build_stencil: time step too large for the ghost width");

  UnitView view(dx, dy);
  view.use_apex = apex_from_dofs;
  for (int oj = j_lo; oj <= j_hi; ++oj)
    for (int oi = i_lo; oi <= i_hi; ++oi) {
      std::vector<double> block(27 * 3, 0.0);
      bool nonzero = false;
      view.ci = oi;
      view.cj = oj;
      for (int v = 0; v < 3; ++v)
        for (int k = 0; k < 9; ++k) {
          view.var = v;
          view.k = k;
          Vec3 r = evolve_point(view, pt, dt, cfg);
          for (int o = 0; o < 3; ++o) {
            block[(v * 9 + k) * 3 + o] = r[o];
            if (r[o] != 0.0) nonzero = true;
          }
        }
      if (nonzero) {
        st.offsets.push_back({oi, oj});
        st.w.insert(st.w.end(), block.begin(), block.end());
      }
    }

  if (apex_from_dofs) {
    view.var = -1;
    for (int v = 0; v < 3; ++v) {
      view.apex_val = {0.0, 0.0, 0.0};
      view.apex_val[v] = 1.0;
      st.apex[v] = evolve_point(view, pt, dt, cfg);
    }
  }
  return st;
}

void evolve_nodes(const PolySnapshot& snap, const AfState& dofs, const std::array<NodeStencil, 3>& st,
                  NodeValues& out) {
  for (const NodeStencil& s : st) {
    Field2D VarDofs::*fld = node_field(s.cls);
    const int nxn = (dofs.var[0].*fld).nx;
    const int nyn = (dofs.var[0].*fld).ny;
    const int noff = static_cast<int>(s.offsets.size());
    const double* W = s.w.data();
    Field2D& o0 = out.var[0].*fld;
    Field2D& o1 = out.var[1].*fld;
    Field2D& o2 = out.var[2].*fld;
    const Field2D& d0 = dofs.var[0].*fld;
    const Field2D& d1 = dofs.var[1].*fld;
    const Field2D& d2 = dofs.var[2].*fld;

#pragma omp parallel for schedule(static)
    for (int j = 0; j < nyn; ++j)
      for (int i = 0; i < nxn; ++i) {
        double a0 = 0.0, a1 = 0.0, a2 = 0.0;
        for (int q = 0; q < noff; ++q) {
          const double* c = snap.cell(i + s.offsets[q][0], j + s.offsets[q][1]);
          const double* w = W + q * 81;
          for (int k = 0; k < 27; ++k) {
            a0 += w[3 * k] * c[k];
            a1 += w[3 * k + 1] * c[k];
            a2 += w[3 * k + 2] * c[k];
          }
        }
        const double dp = d0(i, j), du = d1(i, j), dv = d2(i, j);
        o0(i, j) = a0 + s.apex[0][0] * dp + s.apex[1][0] * du + s.apex[2][0] * dv;
        o1(i, j) = a1 + s.apex[0][1] * dp + s.apex[1][1] * du + s.apex[2][1] * dv;
        o2(i, j) = a2 + s.apex[0][2] * dp + s.apex[1][2] * du + s.apex[2][2] * dv;
      }
  }
}

void evolve_nodes_reference(const PolySnapshot& snap, const AfState& dofs, const EvolutionConfig& cfg, double dt,
                            bool apex_from_dofs, NodeValues& out) {
  SnapshotView view(snap, apex_from_dofs ? &dofs : nullptr);
  for (NodeClass cls : {NodeClass::Corner, NodeClass::XEdge, NodeClass::YEdge}) {
    Field2D VarDofs::*fld = node_field(cls);
    const int nxn = (dofs.var[0].*fld).nx;
    const int nyn = (dofs.var[0].*fld).ny;
    for (int j = 0; j < nyn; ++j)
      for (int i = 0; i < nxn; ++i) {
        Point pt = node_position(cls, i, j, snap.x0, snap.y0, snap.dx, snap.dy);
        Vec3 r = evolve_point(view, pt, dt, cfg);
        for (int v = 0; v < 3; ++v) (out.var[v].*fld)(i, j) = r[v];
      }
  }
}

}  // namespace afeg
