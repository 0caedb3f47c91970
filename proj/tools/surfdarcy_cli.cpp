// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Command-line driver: benchmark runs, mesh diagnostics and system dumps.
//
// Exit codes: 0 success, 1 other library error, 2 configuration error,
// 3 solver failure.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "surfdarcy/analysis.hpp"
#include "surfdarcy/assembly.hpp"
#include "surfdarcy/errors.hpp"
#include "surfdarcy/fespace.hpp"
#include "surfdarcy/io.hpp"
#include "surfdarcy/kernels.hpp"
#include "surfdarcy/mesh.hpp"
#include "surfdarcy/sparse.hpp"

namespace fs = std::filesystem;
using namespace surfdarcy;

namespace
{

constexpr int kExitError = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct CliConfig
{
  int case_id = 0;
  int k_u = 0;
  int k_p = 0;
  int k_g = 0;
  std::string family;
  std::vector<int> levels{16, 32, 64, 128};
  std::uint64_t seed = 42;
  double c_N = 0.0;
  std::string solver = "gmres";
  double rtol = 1e-10;
  int max_iters = 10000;
  int restart = 200;
  std::string out = ".";
  std::vector<std::string> formats{"csv", "json"};
  int quad_degree = -1;
  std::string split = "alternating";
  double amplitude = 0.25;
  int threads = 1;
  int n = 32;  // mesh-report and dump-system resolution
  bool quiet = false;
};

RunOptions run_options(const CliConfig &cfg)
{
  RunOptions o;
  o.levels = cfg.levels;
  o.c_N = cfg.c_N;
  o.seed = cfg.seed;
  o.amplitude = cfg.amplitude;
  o.quad_degree = cfg.quad_degree;
  o.threads = cfg.threads;
  o.solver.method = solver_method_from_string(cfg.solver);
  o.solver.rel_tol = cfg.rtol;
  o.solver.max_iters = cfg.max_iters;
  o.solver.restart = cfg.restart;
  if (cfg.split == "alternating")
  {
    o.split = DiagonalSplit::alternating;
  }
  else if (cfg.split == "uniform")
  {
    o.split = DiagonalSplit::uniform;
  }
  else
  {
    throw ConfigError("unknown split '" + cfg.split + "' (expected alternating or uniform)");
  }
  if (!(cfg.c_N >= 0.0))
  {
    throw ConfigError("--cn must be non-negative");
  }
  if (!(cfg.amplitude >= 0.0 && cfg.amplitude <= 0.4))
  {
    throw ConfigError("--amplitude must lie in [0, 0.4]");
  }
  if (cfg.threads < 1)
  {
    throw ConfigError("--threads must be at least 1");
  }
  o.solver.validate();
  return o;
}

/// Case from --case, or an explicit combination when --ku/--kp/--kg are given.
CaseSpec case_spec(const CliConfig &cfg)
{
  const bool explicit_orders = cfg.k_u > 0 || cfg.k_p > 0 || cfg.k_g > 0 || !cfg.family.empty();
  if (cfg.case_id != 0 && explicit_orders)
  {
    throw ConfigError("--case cannot be combined with --ku/--kp/--kg/--family");
  }
  if (cfg.case_id != 0)
  {
    return benchmark_case(cfg.case_id);
  }
  if (!explicit_orders)
  {
    throw ConfigError("give --case or all of --ku, --kp, --kg");
  }
  if (cfg.k_u == 0 || cfg.k_p == 0 || cfg.k_g == 0)
  {
    throw ConfigError("explicit runs need all of --ku, --kp, --kg");
  }
  CaseSpec spec;
  spec.k_u = cfg.k_u;
  spec.k_p = cfg.k_p;
  spec.k_g = cfg.k_g;
  spec.family = mesh_family_from_string(cfg.family.empty() ? "unstructured" : cfg.family);
  return spec;
}

std::string case_stem(const CaseSpec &spec)
{
  if (spec.id != 0)
  {
    return "case" + std::to_string(spec.id);
  }
  return "ku" + std::to_string(spec.k_u) + "_kp" + std::to_string(spec.k_p) + "_kg" + std::to_string(spec.k_g) +
         "_" + to_string(spec.family);
}

std::set<std::string> parse_formats(const std::vector<std::string> &formats)
{
  std::set<std::string> out;
  for (const auto &f : formats)
  {
    if (f != "csv" && f != "json" && f != "vtk" && f != "mtx")
    {
      throw ConfigError("unknown format '" + f + "' (expected csv, json, vtk or mtx)");
    }
    out.insert(f);
  }
  return out;
}

void write_level_artifacts(const LevelArtifacts &level, const fs::path &dir, const std::string &stem,
                           const std::set<std::string> &formats)
{
  const std::string base = stem + "_n" + std::to_string(level.n_major);
  if (formats.contains("vtk"))
  {
    std::ostringstream vtk;
    const auto fields = solution_fields(level.space_u, level.space_p, level.solution);
    write_vtk(vtk, level.mesh, fields, base);
    atomic_write_file(dir / (base + ".vtk"), vtk.str());
  }
  if (formats.contains("mtx"))
  {
    std::ostringstream matrix, rhs, solution;
    write_matrix_market(matrix, level.system.matrix);
    write_matrix_market_vector(rhs, level.system.rhs);
    write_matrix_market_vector(solution, level.solution);
    atomic_write_file(dir / (base + "_matrix.mtx"), matrix.str());
    atomic_write_file(dir / (base + "_rhs.mtx"), rhs.str());
    atomic_write_file(dir / (base + "_solution.mtx"), solution.str());
  }
}

void print_summary(const ConvergenceRecord &record, std::ostream &out)
{
  const auto eu = record.eoc_of(&ErrorNorms::e_u);
  const auto ep = record.eoc_of(&ErrorNorms::e_p);
  char line[160];
  std::snprintf(line, sizeof line, "%s  k_u=%d k_p=%d k_g=%d %s\n", case_stem(record.spec).c_str(), record.spec.k_u,
                record.spec.k_p, record.spec.k_g, to_string(record.spec.family).c_str());
  out << line;
  auto rate = [](const std::vector<double> &rates, std::size_t i) {
    char buf[16] = "    -";
    if (i > 0)
    {
      std::snprintf(buf, sizeof buf, "%5.3f", rates[i - 1]);
    }
    return std::string(buf);
  };
  for (std::size_t i = 0; i < record.rows.size(); ++i)
  {
    const LevelResult &row = record.rows[i];
    std::snprintf(line, sizeof line, "  n=%-4d h=%.4e  e_u=%.4e (%s)  e_p=%.4e (%s)  iters=%d\n", row.n_major, row.h,
                  row.errors.e_u, rate(eu, i).c_str(), row.errors.e_p, rate(ep, i).c_str(), row.iterations);
    out << line;
  }
  if (!record.complete)
  {
    out << "  aborted: " << record.failure << "\n";
  }
}

/// Runs one case and writes its outputs. Returns false when the case aborted.
bool run_and_write(const CaseSpec &spec, const CliConfig &cfg, const RunOptions &base, bool &solver_failed)
{
  const auto formats = parse_formats(cfg.formats);
  const fs::path dir = cfg.out;
  fs::create_directories(dir);
  const std::string stem = case_stem(spec);
  RunOptions options = base;
  if (formats.contains("vtk") || formats.contains("mtx"))
  {
    options.level_observer = [&](const LevelArtifacts &level) { write_level_artifacts(level, dir, stem, formats); };
  }
  const ConvergenceRecord record = run_case(spec, options);
  if (formats.contains("csv"))
  {
    atomic_write_file(dir / (stem + ".csv"), record_to_csv(record));
  }
  if (formats.contains("json"))
  {
    atomic_write_file(dir / (stem + ".json"), record_to_json(record));
  }
  if (!cfg.quiet)
  {
    print_summary(record, std::cout);
  }
  if (!record.complete)
  {
    std::cerr << "surfdarcy: " << stem << " aborted: " << record.failure << "\n";
    solver_failed = solver_failed || record.solver_failed;
    return false;
  }
  return true;
}

int finish(bool ok, bool solver_failed)
{
  if (ok)
  {
    return 0;
  }
  return solver_failed ? kExitSolver : kExitError;
}

int cmd_run_case(const CliConfig &cfg)
{
  const CaseSpec spec = case_spec(cfg);
  const RunOptions options = run_options(cfg);
  bool solver_failed = false;
  const bool ok = run_and_write(spec, cfg, options, solver_failed);
  return finish(ok, solver_failed);
}

int cmd_run_all(const CliConfig &cfg)
{
  const RunOptions options = run_options(cfg);
  bool ok = true, solver_failed = false;
  for (const ReferenceOrders &ref : benchmark_cases())
  {
    ok = run_and_write(ref.spec, cfg, options, solver_failed) && ok;
  }
  return finish(ok, solver_failed);
}

int cmd_mesh_report(const CliConfig &cfg)
{
  CaseSpec spec;
  spec.k_g = cfg.k_g == 0 ? 1 : cfg.k_g;
  spec.family = mesh_family_from_string(cfg.family.empty() ? "structured" : cfg.family);
  RunOptions options = run_options(cfg);
  if (spec.k_g < 1 || spec.k_g > 3)
  {
    throw ConfigError("--kg must be 1, 2 or 3 for mesh-report");
  }
  const ParametricMesh mesh = build_level_mesh(spec, cfg.n, options);
  const QualityReport r = mesh_quality_report(mesh);
  std::printf("n_major %d\nk_g %d\nfamily %s\n", cfg.n, spec.k_g, to_string(spec.family).c_str());
  std::printf("vertices %d\ncells %d\n", mesh.num_vertices(), mesh.num_cells());
  std::printf("h %.6e\n", r.h);
  std::printf("max_abs_distance %.6e\n", r.max_abs_distance);
  std::printf("max_node_distance %.6e\n", r.max_node_distance);
  std::printf("max_normal_deviation %.6e\n", r.max_normal_deviation);
  std::printf("min_diameter %.6e\nmax_diameter %.6e\n", r.min_diameter, r.max_diameter);
  std::printf("min_angle_degrees %.4f\n", r.min_angle_degrees);
  std::printf("min_orientation %.6f\n", r.min_orientation);
  std::printf("euler_characteristic %d\n", r.euler_characteristic);
  return 0;
}

int cmd_dump_system(const CliConfig &cfg)
{
  const CaseSpec spec = case_spec(cfg);
  const RunOptions options = run_options(cfg);
  auto mesh = std::make_shared<const ParametricMesh>(build_level_mesh(spec, cfg.n, options));
  const FESpace space_u(mesh, spec.k_u);
  const FESpace space_p(mesh, spec.k_p);
  const ExactSolution exact = torus_exact_solution(mesh->surface());
  AssemblyOptions assembly;
  assembly.c_N = options.c_N;
  assembly.quad_degree = options.quad_degree;
  assembly.threads = options.threads;
  const LinearSystem system = assemble(space_u, space_p, problem_data_from(exact), assembly);
  const fs::path dir = cfg.out;
  fs::create_directories(dir);
  const std::string base = case_stem(spec) + "_n" + std::to_string(cfg.n);
  std::ostringstream matrix, rhs;
  write_matrix_market(matrix, system.matrix);
  write_matrix_market_vector(rhs, system.rhs);
  atomic_write_file(dir / (base + "_matrix.mtx"), matrix.str());
  atomic_write_file(dir / (base + "_rhs.mtx"), rhs.str());
  if (!cfg.quiet)
  {
    std::printf("%s: %d unknowns, %d nonzeros\n", base.c_str(), system.matrix.rows(), system.matrix.nnz());
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CliConfig cfg;
  CLI::App app{"Stabilized surface Darcy solver on the torus"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML-style file of key = value settings; command-line flags win");
  app.set_version_flag("--version", "surfdarcy 0.1.0");

  app.add_option("--case", cfg.case_id, "Benchmark case 1-8")->check(CLI::Range(1, 8));
  app.add_option("--ku", cfg.k_u, "Velocity order (explicit combination)");
  app.add_option("--kp", cfg.k_p, "Pressure order (explicit combination)");
  app.add_option("--kg", cfg.k_g, "Geometry order");
  app.add_option("--family", cfg.family, "structured or unstructured");
  app.add_option("--levels", cfg.levels, "Comma-separated n_major values")->delimiter(',');
  app.add_option("--seed", cfg.seed, "Seed for the unstructured meshes");
  app.add_option("--cn", cfg.c_N, "Normal penalty c_N");
  app.add_option("--solver", cfg.solver, "gmres or lu (dense LU)");
  app.add_option("--rtol", cfg.rtol, "GMRES relative tolerance");
  app.add_option("--max-iters", cfg.max_iters, "GMRES iteration limit");
  app.add_option("--restart", cfg.restart, "GMRES restart length");
  app.add_option("--out", cfg.out, "Output directory");
  app.add_option("--formats", cfg.formats, "Comma-separated subset of csv,json,vtk,mtx")->delimiter(',');
  app.add_option("--quad-degree", cfg.quad_degree, "Quadrature degree (-1: automatic)");
  app.add_option("--split", cfg.split, "Diagonal split: alternating or uniform");
  app.add_option("--amplitude", cfg.amplitude, "Jiggle amplitude as a fraction of the grid spacing");
  app.add_option("--threads", cfg.threads, "Assembly threads");
  app.add_option("--n", cfg.n, "n_major for mesh-report and dump-system");
  app.add_flag("--quiet", cfg.quiet, "Suppress the summary on standard output");

  auto *run_case_cmd = app.add_subcommand("run-case", "Run one case over all levels")->fallthrough();
  auto *run_all_cmd = app.add_subcommand("run-all", "Run the eight benchmark cases")->fallthrough();
  auto *mesh_report_cmd = app.add_subcommand("mesh-report", "Print geometry diagnostics of one mesh")->fallthrough();
  auto *dump_system_cmd = app.add_subcommand("dump-system", "Write the assembled system as Matrix Market")->fallthrough();

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::CallForAllHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::CallForVersion &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return kExitConfig;
  }

  try
  {
    if (std::getenv("SURFDARCY_VERBOSE") != nullptr)
    {
      std::cerr << "kernels: " << kernels::isa_name(kernels::active_isa()) << "\n";
    }
    if (*run_case_cmd)
    {
      return cmd_run_case(cfg);
    }
    if (*run_all_cmd)
    {
      return cmd_run_all(cfg);
    }
    if (*mesh_report_cmd)
    {
      return cmd_mesh_report(cfg);
    }
    if (*dump_system_cmd)
    {
      return cmd_dump_system(cfg);
    }
  }
  catch (const ConfigError &e)
  {
    std::cerr << "surfdarcy: configuration error: " << e.what() << "\n";
    return kExitConfig;
  }
  catch (const ConvergenceError &e)
  {
    std::cerr << "surfdarcy: solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  catch (const SingularSystemError &e)
  {
    std::cerr << "surfdarcy: solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  catch (const std::exception &e)
  {
    std::cerr << "surfdarcy: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
