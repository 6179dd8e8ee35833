// Node evolution: precomputed-weight OpenMP kernel against the serial pointwise path.

#include <array>

#include <benchmark/benchmark.h>

#include "afeg/kernel.hpp"
#include "afeg/problems.hpp"
#include "afeg/scheme.hpp"

using namespace afeg;

namespace {

struct Setup {
  Problem pb = make_problem(ProblemId::SmoothIrrotational);
  Grid g;
  AfState s;
  SchemeConfig cfg;
  double dt;
  PolySnapshot snap;
  std::array<NodeStencil, 3> st;

  Setup(int n, EvolutionKind k) : g(problem_grid(pb, n, n)), s(initial_state(pb, g)) {
    cfg.evolution.kind = k;
    cfg.cfl = 0.276;
    dt = time_step(g, cfg);
    snap = build_snapshot(s, g, cfg.recon, cfg.cweno, 2);
    for (NodeClass c : {NodeClass::Corner, NodeClass::XEdge, NodeClass::YEdge})
      st[static_cast<int>(c)] = build_stencil(c, cfg.evolution, dt, g.dx, g.dy);
  }
};

void BM_EvolveNodes(benchmark::State& state) {
  Setup su(static_cast<int>(state.range(0)), EvolutionKind::EGquad);
  NodeValues out = make_state(su.g);
  for (auto _ : state) {
    evolve_nodes(su.snap, su.s, su.st, out);
    benchmark::DoNotOptimize(out.var[0].corner.v.data());
  }
  state.SetItemsProcessed(state.iterations() * 3 * state.range(0) * state.range(0));
}

void BM_EvolveNodesReference(benchmark::State& state) {
  Setup su(static_cast<int>(state.range(0)), EvolutionKind::EGquad);
  NodeValues out = make_state(su.g);
  for (auto _ : state) {
    evolve_nodes_reference(su.snap, su.s, su.cfg.evolution, su.dt, true, out);
    benchmark::DoNotOptimize(out.var[0].corner.v.data());
  }
  state.SetItemsProcessed(state.iterations() * 3 * state.range(0) * state.range(0));
}

void step_bench(benchmark::State& state, bool reference) {
  Setup su(static_cast<int>(state.range(0)), EvolutionKind::EGquad);
  su.cfg.reference = reference;
  Stepper stp(su.g, su.cfg);
  for (auto _ : state) {
    AfState r = stp.step(su.s, su.dt);
    benchmark::DoNotOptimize(r.var[0].avg.v.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}

void BM_Step(benchmark::State& state) { step_bench(state, false); }
void BM_StepReference(benchmark::State& state) { step_bench(state, true); }

}  // namespace

BENCHMARK(BM_EvolveNodes)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvolveNodesReference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Step)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StepReference)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
