// afeg: command-line driver for the Active Flux acoustics solver.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "afeg/problems.hpp"
#include "afeg/scheme.hpp"
#include "afeg/stability.hpp"

#ifndef AFEG_VERSION
#define AFEG_VERSION "0.0.0"
#endif

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace afeg;

namespace {

enum Exit { kOk = 0, kConfig = 2, kBlowUp = 3, kBracket = 4 };

struct Options {
  std::string problem = "example1";
  std::string recon = "af";
  std::string op = "eg2";
  std::string apex = "recon";
  double cweno_eps = 1e-12;
  int cweno_r = 2;
  double delta = 0.0;
  double nu = 0.0;
  int nquad = 8;
  double c = 1.0;
  double cfl = 0.25;
  int nx = 64;
  int ny = 0;
  double tend = 0.1;
  std::string out_dir = "out";
  std::string name;
  std::vector<double> snapshots;
  std::vector<int> res{64, 128, 256};
  int m = 20;
  double lo = 0.2;
  double hi = 0.6;
  double tol = 5e-4;
  std::vector<double> delta_list;
  std::vector<double> nu_list;
  std::vector<double> cfl_list;
  bool dump_eigs = false;
  std::string route = "block";
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SchemeConfig scheme_config(const Options& o) {
  SchemeConfig sc;
  if (o.recon == "af")
    sc.recon = ReconKind::AF;
  else if (o.recon == "cweno")
    sc.recon = ReconKind::CWENO;
  else
    throw ConfigError("recon: unknown reconstruction '" + o.recon + "' (valid: af, cweno)");
  try {
    sc.evolution.kind = parse_kind(o.op);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("op: ") + e.what());
  }
  if (o.apex == "dofs")
    sc.apex = ApexSource::Dofs;
  else if (o.apex == "recon")
    sc.apex = ApexSource::Reconstruction;
  else
    throw ConfigError("apex: unknown source '" + o.apex + "' (valid: dofs, recon)");
  if (o.delta < 0.0 || o.delta > 1.0) throw ConfigError("delta: must lie in [0, 1]");
  if (o.nu < 0.0 || o.nu > 1.0) throw ConfigError("nu: must lie in [0, 1]");
  if (o.nquad != 4 && o.nquad != 8) throw ConfigError("nquad: must be 4 or 8");
  if (!(o.cfl > 0.0)) throw ConfigError("cfl: must be positive");
  if (!(o.c > 0.0)) throw ConfigError("c: must be positive");
  if (!(o.cweno_eps > 0.0)) throw ConfigError("cweno-eps: must be positive");
  if (o.cweno_r < 1) throw ConfigError("cweno-r: must be at least 1");
  sc.cweno.eps = o.cweno_eps;
  sc.cweno.r = o.cweno_r;
  sc.evolution.delta = o.delta;
  sc.evolution.nu = o.nu;
  sc.evolution.n_quad = o.nquad;
  sc.evolution.c = o.c;
  sc.c = o.c;
  sc.cfl = o.cfl;
  return sc;
}

Problem problem_of(const Options& o) {
  try {
    return make_problem(parse_problem(o.problem), o.c);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("problem: ") + e.what());
  }
}

std::string run_name(const Options& o, const std::string& suffix = "") {
  if (!o.name.empty()) return o.name;
  std::ostringstream s;
  s << o.problem << "_" << o.recon << "_" << o.op;
  if (o.op.find("delta") != std::string::npos) s << "_d" << o.delta;
  if (o.op.find("nu") != std::string::npos) s << "_n" << o.nu;
  s << suffix;
  return s.str();
}

json options_json(const Options& o) {
  return json{{"problem", o.problem}, {"recon", o.recon},   {"op", o.op},         {"apex", o.apex}, {"cweno_eps", o.cweno_eps}, {"cweno_r", o.cweno_r},
              {"delta", o.delta},     {"nu", o.nu},         {"nquad", o.nquad},   {"c", o.c},
              {"cfl", o.cfl},         {"nx", o.nx},         {"ny", o.ny},         {"tend", o.tend},
              {"out_dir", o.out_dir}, {"snapshots", o.snapshots}, {"res", o.res}, {"m", o.m},
              {"lo", o.lo},           {"hi", o.hi},         {"tol", o.tol},       {"delta_list", o.delta_list},
              {"nu_list", o.nu_list}, {"cfl_list", o.cfl_list}, {"dump_eigs", o.dump_eigs}, {"route", o.route}};
}

std::string fmt(double x) {
  char b[40];
  std::snprintf(b, sizeof b, "%.17g", x);
  return b;
}

json vec3_json(const Vec3& v) { return json{{"p", v[0]}, {"u", v[1]}, {"v", v[2]}}; }

int cmd_run(const Options& o, json& man) {
  const Problem pb = problem_of(o);
  const SchemeConfig sc = scheme_config(o);
  const int ny = o.ny > 0 ? o.ny : o.nx;
  const Grid g = problem_grid(pb, o.nx, ny);
  const std::string name = run_name(o, "_" + std::to_string(o.nx));
  fs::create_directories(o.out_dir);

  RunOptions ro;
  ro.t_end = o.tend;
  ro.snapshot_times = o.snapshots;
  ro.on_snapshot = [&](const AfState& s) {
    std::string path = (fs::path(o.out_dir) / snapshot_filename(name, s.time)).string();
    write_snapshot_csv(path, s, g);
    man["outputs"].push_back(path);
  };
  const AfState fin = run(initial_state(pb, g), g, sc, ro);
  std::string path = (fs::path(o.out_dir) / snapshot_filename(name, fin.time)).string();
  if (std::find(man["outputs"].begin(), man["outputs"].end(), path) == man["outputs"].end()) {
    write_snapshot_csv(path, fin, g);
    man["outputs"].push_back(path);
  }

  json sum{{"t", fin.time}};
  if (pb.has_exact) sum["l1"] = vec3_json(l1_error_exact(fin, g, pb));
  if (pb.id == ProblemId::StationaryVortex) {
    VortexDiagnostics d = vortex_diagnostics(fin, g);
    sum["max_speed"] = d.max_speed;
    std::string rp = (fs::path(o.out_dir) / (name + "_radial.csv")).string();
    std::FILE* f = std::fopen(rp.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open " + rp);
    std::fprintf(f, "r,speed\n");
    for (auto [r, v] : d.radial_profile) std::fprintf(f, "%.17g,%.17g\n", r, v);
    std::fclose(f);
    man["outputs"].push_back(rp);
  }
  if (pb.id == ProblemId::DiagonalRiemann) {
    std::string a = (fs::path(o.out_dir) / (name + "_y0.csv")).string();
    std::string b = (fs::path(o.out_dir) / (name + "_diag.csv")).string();
    write_cross_section_csv(a, cross_section_y0(fin, g));
    write_cross_section_csv(b, cross_section_diagonal(fin, g));
    man["outputs"].push_back(a);
    man["outputs"].push_back(b);
  }
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& v : fin.var)
    for (double x : v.avg.v) {
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
  sum["min_average"] = lo;
  sum["max_average"] = hi;
  man["summary"] = sum;
  std::cout << sum.dump(2) << "\n";
  return kOk;
}

int cmd_converge(const Options& o, json& man) {
  const Problem pb = problem_of(o);
  if (!pb.has_exact) throw ConfigError("problem: converge needs a problem with an exact solution");
  const SchemeConfig sc = scheme_config(o);
  if (o.res.size() < 2) throw ConfigError("res: need at least two resolutions");
  fs::create_directories(o.out_dir);
  ErrorReport rep;
  for (int n : o.res) {
    const Grid g = problem_grid(pb, n, n);
    RunOptions ro;
    ro.t_end = o.tend;
    AfState fin = run(initial_state(pb, g), g, sc, ro);
    rep.resolutions.emplace_back(n, n);
    rep.l1.push_back(l1_error_exact(fin, g, pb));
  }
  finalize_eoc(rep);

  const std::string path = (fs::path(o.out_dir) / (run_name(o) + "_converge.csv")).string();
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f, "nx,ny,l1_p,l1_u,l1_v,eoc_p,eoc_u,eoc_v\n");
  std::printf("%8s %14s %8s %14s %8s %14s %8s\n", "cells", "L1(p)", "EOC", "L1(u)", "EOC", "L1(v)", "EOC");
  json rows = json::array();
  for (size_t k = 0; k < rep.l1.size(); ++k) {
    Vec3 e = rep.l1[k];
    Vec3 q = k == 0 ? Vec3{NAN, NAN, NAN} : rep.eoc[k - 1];
    std::fprintf(f, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", rep.resolutions[k].first, rep.resolutions[k].second,
                 e[0], e[1], e[2], q[0], q[1], q[2]);
    std::printf("%4dx%-4d %14.4e %8.4f %14.4e %8.4f %14.4e %8.4f\n", rep.resolutions[k].first,
                rep.resolutions[k].second, e[0], q[0], e[1], q[1], e[2], q[2]);
    json row{{"nx", rep.resolutions[k].first}, {"l1", vec3_json(e)}};
    if (k > 0) row["eoc"] = vec3_json(q);
    rows.push_back(row);
  }
  std::fclose(f);
  man["outputs"].push_back(path);
  man["summary"] = json{{"rows", rows}};
  return kOk;
}

int cmd_stability(const Options& o, json& man) {
  SchemeConfig sc = scheme_config(o);
  if (sc.recon != ReconKind::AF) throw ConfigError("recon: stability analysis supports af only");
  if (o.m < 6) throw ConfigError("m: must be at least 6");
  std::vector<double> dl = o.delta_list.empty() ? std::vector<double>{o.delta} : o.delta_list;
  std::vector<double> nl = o.nu_list.empty() ? std::vector<double>{o.nu} : o.nu_list;
  fs::create_directories(o.out_dir);
  const std::string base = run_name(o, "_m" + std::to_string(o.m));
  const std::string tpath = (fs::path(o.out_dir) / (base + "_cflstar.csv")).string();
  std::FILE* tf = std::fopen(tpath.c_str(), "w");
  if (!tf) throw std::runtime_error("cannot open " + tpath);
  std::fprintf(tf, "delta,nu,cfl_star\n");
  std::FILE* rf = nullptr;
  std::string rpath;
  if (!o.cfl_list.empty()) {
    rpath = (fs::path(o.out_dir) / (base + "_rho.csv")).string();
    rf = std::fopen(rpath.c_str(), "w");
    if (!rf) throw std::runtime_error("cannot open " + rpath);
    std::fprintf(rf, "delta,nu,cfl,rho,stable\n");
  }
  json rows = json::array();
  for (double d : dl)
    for (double n : nl) {
      sc.evolution.delta = d;
      sc.evolution.nu = n;
      double cs = max_cfl(sc, o.m, o.lo, o.hi, o.tol);
      std::fprintf(tf, "%s,%s,%s\n", fmt(d).c_str(), fmt(n).c_str(), fmt(cs).c_str());
      std::printf("delta=%.3g nu=%.3g  CFL*=%.4f\n", d, n, cs);
      json row{{"delta", d}, {"nu", n}, {"cfl_star", cs}};
      for (double cfl : o.cfl_list) {
        sc.cfl = cfl;
        StabilityReport r = analyze(sc, o.m);
        std::fprintf(rf, "%s,%s,%s,%s,%d\n", fmt(d).c_str(), fmt(n).c_str(), fmt(cfl).c_str(),
                     fmt(r.spectral_radius).c_str(), r.stable ? 1 : 0);
        row["rho"][fmt(cfl)] = r.spectral_radius;
        if (o.dump_eigs) {
          std::ostringstream p;
          p << base << "_d" << d << "_n" << n << "_cfl" << cfl << "_eigs.csv";
          std::string ep = (fs::path(o.out_dir) / p.str()).string();
          write_eigen_csv(ep, r.eigenvalues);
          man["outputs"].push_back(ep);
        }
      }
      rows.push_back(row);
    }
  std::fclose(tf);
  man["outputs"].push_back(tpath);
  if (rf) {
    std::fclose(rf);
    man["outputs"].push_back(rpath);
  }
  man["summary"] = json{{"rows", rows}};
  return kOk;
}

int cmd_eigs(const Options& o, json& man) {
  SchemeConfig sc = scheme_config(o);
  if (sc.recon != ReconKind::AF) throw ConfigError("recon: eigenvalue dumps support af only");
  if (o.m < 6) throw ConfigError("m: must be at least 6");
  EigenRoute route;
  if (o.route == "dense")
    route = EigenRoute::Dense;
  else if (o.route == "block")
    route = EigenRoute::Block;
  else
    throw ConfigError("route: unknown eigen route '" + o.route + "' (valid: dense, block)");
  fs::create_directories(o.out_dir);
  StabilityReport r = analyze(sc, o.m, route);
  std::ostringstream p;
  p << run_name(o, "_m" + std::to_string(o.m)) << "_cfl" << o.cfl << "_eigs.csv";
  std::string path = (fs::path(o.out_dir) / p.str()).string();
  write_eigen_csv(path, r.eigenvalues);
  man["outputs"].push_back(path);
  man["summary"] = json{{"spectral_radius", r.spectral_radius}, {"stable", r.stable}, {"count", r.eigenvalues.size()}};
  std::printf("rho = %.12f (%s), %zu eigenvalues -> %s\n", r.spectral_radius, r.stable ? "stable" : "unstable",
              r.eigenvalues.size(), path.c_str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Active Flux solver for 2D linear acoustics"};
  app.set_config("--config", "", "key=value configuration file (flags override)");
  app.allow_config_extras(false);
  app.require_subcommand(1, 1);
  app.fallthrough();

  Options o;
  app.add_option("--problem", o.problem, "example1 | example2 | example3 | example4");
  app.add_option("--recon", o.recon, "af | cweno");
  app.add_option("--op", o.op, "eg2 | eg2quad | eg2delta | eg2deltanu | hat-eg2delta | hat-eg2deltanu");
  app.add_option("--apex", o.apex, "apex value source for cweno: dofs | recon");
  app.add_option("--cweno-eps", o.cweno_eps, "CWENO weight regularisation");
  app.add_option("--cweno-r", o.cweno_r, "CWENO weight exponent");
  app.add_option("--delta", o.delta);
  app.add_option("--nu", o.nu);
  app.add_option("--nquad", o.nquad);
  app.add_option("--c", o.c, "sound speed");
  app.add_option("--cfl", o.cfl);
  app.add_option("--nx", o.nx);
  app.add_option("--ny", o.ny, "defaults to nx");
  app.add_option("--tend", o.tend);
  app.add_option("--out-dir", o.out_dir);
  app.add_option("--name", o.name, "run name used in output files");
  app.add_option("--snapshots", o.snapshots, "snapshot times")->delimiter(',');
  app.add_option("--res", o.res, "resolutions for converge")->delimiter(',');
  app.add_option("--m", o.m, "stability grid size");
  app.add_option("--lo", o.lo, "lower CFL bracket");
  app.add_option("--hi", o.hi, "upper CFL bracket");
  app.add_option("--tol", o.tol, "bisection width");
  app.add_option("--delta-list", o.delta_list)->delimiter(',');
  app.add_option("--nu-list", o.nu_list)->delimiter(',');
  app.add_option("--cfl-list", o.cfl_list, "CFL values at which to report rho")->delimiter(',');
  app.add_flag("--dump-eigs", o.dump_eigs);
  app.add_option("--route", o.route, "eigenvalue route for eigs: dense | block");

  auto* run_cmd = app.add_subcommand("run", "run one simulation");
  auto* conv_cmd = app.add_subcommand("converge", "convergence study over --res");
  auto* stab_cmd = app.add_subcommand("stability", "maximal CFL by bisection");
  auto* eig_cmd = app.add_subcommand("eigs", "dump eigenvalues of the update matrix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  json man;
  man["version"] = AFEG_VERSION;
  man["outputs"] = json::array();
  man["config"] = options_json(o);
  const auto t0 = std::chrono::steady_clock::now();
  int rc = kOk;
  try {
    if (*run_cmd) {
      man["command"] = "run";
      rc = cmd_run(o, man);
    } else if (*conv_cmd) {
      man["command"] = "converge";
      rc = cmd_converge(o, man);
    } else if (*stab_cmd) {
      man["command"] = "stability";
      rc = cmd_stability(o, man);
    } else if (*eig_cmd) {
      man["command"] = "eigs";
      rc = cmd_eigs(o, man);
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const BlowUp& e) {
    std::cerr << "blow-up at step " << e.step << ": " << e.what() << "\n";
    man["blow_up"] = json{{"step", e.step}, {"message", e.what()}};
    rc = kBlowUp;
  } catch (const BracketError& e) {
    std::cerr << "bracket error: " << e.what() << "\n";
    man["bracket_error"] = e.what();
    rc = kBracket;
  } catch (const std::out_of_range& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  }
  man["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  man["exit_code"] = rc;
  fs::create_directories(o.out_dir);
  const std::string mpath = (fs::path(o.out_dir) / (man["command"].get<std::string>() + "_manifest.json")).string();
  std::FILE* f = std::fopen(mpath.c_str(), "w");
  if (f) {
    std::fputs(man.dump(2).c_str(), f);
    std::fputs("\n", f);
    std::fclose(f);
  }
  return rc;
}
