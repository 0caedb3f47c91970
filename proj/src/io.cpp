// Copyright the surfdarcy authors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "surfdarcy/io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <fstream>
#include <ostream>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "surfdarcy/errors.hpp"

namespace surfdarcy
{

namespace
{

std::string format(const char *fmt, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

using Column = double ErrorNorms::*;
constexpr Column kColumns[] = {&ErrorNorms::e_u, &ErrorNorms::e_p, &ErrorNorms::e_u_tan,
                               &ErrorNorms::e_u_norm, &ErrorNorms::energy};
constexpr const char *kColumnNames[] = {"e_u", "e_p", "e_u_tan", "e_u_norm", "energy"};
constexpr const char *kEocNames[] = {"eoc_u", "eoc_p", "eoc_u_tan", "eoc_u_norm", "eoc_energy"};

// EOC column that tolerates exact-to-roundoff levels (reported as NaN).
std::vector<double> safe_eoc(const ConvergenceRecord &record, Column column)
{
  try
  {
    return record.eoc_of(column);
  }
  catch (const ValueError &)
  {
    return std::vector<double>(record.rows.empty() ? 0 : record.rows.size() - 1,
                               std::numeric_limits<double>::quiet_NaN());
  }
}

}  // namespace

void atomic_write_file(const std::filesystem::path &path, const std::string &content)
{
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw Error("cannot open " + tmp.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out)
    {
      throw Error("failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
  {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string record_to_csv(const ConvergenceRecord &record)
{
  std::vector<std::vector<double>> eocs;
  for (Column c : kColumns)
  {
    eocs.push_back(safe_eoc(record, c));
  }
  std::ostringstream out;
  out << kCsvHeader << '\n';
  for (std::size_t i = 0; i < record.rows.size(); ++i)
  {
    const LevelResult &row = record.rows[i];
    out << i << ',' << row.n_major << ',' << format("%.10e", row.h) << ',' << row.n_dofs;
    for (std::size_t c = 0; c < std::size(kColumns); ++c)
    {
      out << ',' << format("%.10e", row.errors.*kColumns[c]) << ',';
      if (i > 0)
      {
        out << format("%.4f", eocs[c][i - 1]);
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string record_to_json(const ConvergenceRecord &record)
{
  using nlohmann::ordered_json;
  const RunOptions &o = record.options;
  ordered_json config = {
      {"case", record.spec.id},
      {"k_u", record.spec.k_u},
      {"k_p", record.spec.k_p},
      {"k_g", record.spec.k_g},
      {"mesh_family", to_string(record.spec.family)},
      {"levels", o.levels},
      {"c_N", o.c_N},
      {"seed", o.seed},
      {"amplitude", o.amplitude},
      {"split", o.split == DiagonalSplit::alternating ? "alternating" : "uniform"},
      {"major_radius", o.major_radius},
      {"minor_radius", o.minor_radius},
      {"quad_degree", o.quad_degree},
      {"solver",
       {{"method", to_string(o.solver.method)},
        {"rel_tol", o.solver.rel_tol},
        {"max_iters", o.solver.max_iters},
        {"restart", o.solver.restart}}},
  };
  std::vector<std::vector<double>> eocs;
  for (Column c : kColumns)
  {
    eocs.push_back(safe_eoc(record, c));
  }
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < record.rows.size(); ++i)
  {
    const LevelResult &row = record.rows[i];
    ordered_json j = {{"level", i}, {"n_major", row.n_major}, {"h", row.h}, {"n_dofs", row.n_dofs}};
    for (std::size_t c = 0; c < std::size(kColumns); ++c)
    {
      j[kColumnNames[c]] = row.errors.*kColumns[c];
      if (i > 0 && !std::isnan(eocs[c][i - 1]))
      {
        j[kEocNames[c]] = eocs[c][i - 1];
      }
      else
      {
        j[kEocNames[c]] = nullptr;
      }
    }
    j["diagnostics"] = {
        {"system_size", row.system_size},
        {"iterations", row.iterations},
        {"solver_residual", row.solver_residual},
        {"galerkin_residual", row.galerkin_residual},
        {"mean_p_h", row.errors.mean_p_h},
        {"area_h", row.errors.area_h},
        {"e_u_norm_h", row.errors.e_u_norm_h},
        {"e_grad_p", row.errors.e_grad_p},
        {"max_abs_distance", row.max_abs_distance},
    };
    if (row.dense_max_difference)
    {
      j["diagnostics"]["dense_max_difference"] = *row.dense_max_difference;
    }
    rows.push_back(std::move(j));
  }
  ordered_json doc = {{"config", config},
                      {"complete", record.complete},
                      {"failure", record.failure},
                      {"rows", rows}};
  return doc.dump(2) + "\n";
}

void write_vtk(std::ostream &out, const ParametricMesh &mesh, std::span<const VtkField> fields,
               const std::string &title)
{
  const ReferenceTriangle &ref = mesh.geometry_element();
  const int k = ref.order();
  const int nloc = ref.num_nodes();
  const int nc = mesh.num_cells();

  // Local index of lattice point (i, j) with xi = i/k, eta = j/k.
  std::vector<int> lattice((k + 1) * (k + 1), -1);
  for (int n = 0; n < nloc; ++n)
  {
    const Vec2 p = ref.nodes()[n];
    const int i = static_cast<int>(std::lround(p[0] * k));
    const int j = static_cast<int>(std::lround(p[1] * k));
    lattice[j * (k + 1) + i] = n;
  }
  std::vector<std::array<int, 3>> sub;
  for (int j = 0; j < k; ++j)
  {
    for (int i = 0; i + j < k; ++i)
    {
      const int a = lattice[j * (k + 1) + i];
      const int b = lattice[j * (k + 1) + i + 1];
      const int c = lattice[(j + 1) * (k + 1) + i];
      sub.push_back({a, b, c});
      if (i + j + 1 < k)
      {
        const int d = lattice[(j + 1) * (k + 1) + i + 1];
        sub.push_back({b, d, c});
      }
    }
  }

  char buf[96];
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << static_cast<long long>(nc) * nloc << " double\n";
  for (int c = 0; c < nc; ++c)
  {
    for (const Vec3 &p : mesh.geometry_nodes(c))
    {
      std::snprintf(buf, sizeof buf, "%.16g %.16g %.16g\n", p.x, p.y, p.z);
      out << buf;
    }
  }
  const long long ntri = static_cast<long long>(nc) * static_cast<long long>(sub.size());
  out << "CELLS " << ntri << ' ' << 4 * ntri << '\n';
  for (int c = 0; c < nc; ++c)
  {
    const long long base = static_cast<long long>(c) * nloc;
    for (const auto &t : sub)
    {
      out << "3 " << base + t[0] << ' ' << base + t[1] << ' ' << base + t[2] << '\n';
    }
  }
  out << "CELL_TYPES " << ntri << '\n';
  for (long long t = 0; t < ntri; ++t)
  {
    out << "5\n";
  }
  if (fields.empty())
  {
    return;
  }
  out << "POINT_DATA " << static_cast<long long>(nc) * nloc << '\n';
  for (const VtkField &field : fields)
  {
    if (field.components == 3)
    {
      out << "VECTORS " << field.name << " double\n";
    }
    else
    {
      out << "SCALARS " << field.name << " double 1\nLOOKUP_TABLE default\n";
    }
    double value[3];
    for (int c = 0; c < nc; ++c)
    {
      for (int n = 0; n < nloc; ++n)
      {
        field.eval(c, ref.nodes()[n], value);
        if (field.components == 3)
        {
          std::snprintf(buf, sizeof buf, "%.16g %.16g %.16g\n", value[0], value[1], value[2]);
        }
        else
        {
          std::snprintf(buf, sizeof buf, "%.16g\n", value[0]);
        }
        out << buf;
      }
    }
  }
}

std::vector<VtkField> solution_fields(const FESpace &space_u, const FESpace &space_p,
                                      std::span<const double> solution)
{
  const SystemLayout layout{space_u.n_dofs(), space_p.n_dofs()};
  auto velocity = [&space_u, layout, solution](int cell, const Vec2 &xi) {
    std::vector<double> phi(space_u.dofs_per_cell());
    space_u.element().eval(xi, phi);
    const auto dofs = space_u.cell_dofs(cell);
    Vec3 u;
    for (int i = 0; i < space_u.dofs_per_cell(); ++i)
    {
      for (int a = 0; a < 3; ++a)
      {
        u[a] += phi[i] * solution[layout.velocity(a, dofs[i])];
      }
    }
    return u;
  };
  std::vector<VtkField> fields;
  fields.push_back({"u_h", 3, [velocity](int cell, const Vec2 &xi, double *out) {
                      const Vec3 u = velocity(cell, xi);
                      out[0] = u.x;
                      out[1] = u.y;
                      out[2] = u.z;
                    }});
  fields.push_back({"p_h", 1, [&space_p, layout, solution](int cell, const Vec2 &xi, double *out) {
                      std::vector<double> psi(space_p.dofs_per_cell());
                      space_p.element().eval(xi, psi);
                      const auto dofs = space_p.cell_dofs(cell);
                      double p = 0.0;
                      for (int i = 0; i < space_p.dofs_per_cell(); ++i)
                      {
                        p += psi[i] * solution[layout.pressure(dofs[i])];
                      }
                      out[0] = p;
                    }});
  fields.push_back({"n_h_dot_u_h", 1, [velocity, &space_u](int cell, const Vec2 &xi, double *out) {
                      const auto ep = element_map(space_u.mesh(), cell, xi);
                      out[0] = dot(discrete_normal_and_measure(ep.jacobian).normal, velocity(cell, xi));
                    }});
  fields.push_back({"n_dot_u_h", 1, [velocity, &space_u](int cell, const Vec2 &xi, double *out) {
                      const auto ep = element_map(space_u.mesh(), cell, xi);
                      out[0] = dot(space_u.mesh().surface().normal(ep.x), velocity(cell, xi));
                    }});
  return fields;
}

}  // namespace surfdarcy
