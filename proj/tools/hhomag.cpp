// Command-line front end: mesh generation and checks, single solves, convergence studies, self-checks.
//
// Exit codes: 0 success, 1 numerical failure (or failed verification), 2 configuration or input error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include <hhomag/verification.hpp>

using namespace hhomag;

namespace
{

Mesh make_mesh(const std::string &family, int n)
{
  if (n < 1) throw ConfigError("subdivisions must be positive");
  if (family == "cubic") return generate_cubic(n);
  if (family == "tetrahedral") return generate_tetrahedral(n);
  throw ConfigError("unknown mesh family '" + family + "' (expected cubic or tetrahedral)");
}

ManufacturedCase make_case(const std::string &name, Formulation f, int k)
{
  ManufacturedCase mc;
  if (name.empty()) mc = f == Formulation::field ? field_cos_case() : potential_sin_case();
  else if (name == "cos") mc = field_cos_case();
  else if (name == "sin") mc = potential_sin_case();
  else if (name == "gradient") mc = potential_gradient_case();
  else if (name == "polynomial") mc = field_polynomial_case(k);
  else throw ConfigError("unknown case '" + name + "' (expected cos, sin, gradient or polynomial)");
  if (mc.formulation != f)
    throw ConfigError("case '" + mc.name + "' belongs to the " + to_string(mc.formulation) + " formulation");
  return mc;
}

void check_degree(int k)
{
  if (k < 0 || k > 3) throw ConfigError("degree k must be in {0, 1, 2, 3}");
}

std::string csv_header() { return "meshsize,n_dofs,solve_time_s,err_energy,err_l2,err_lagrange,eoc_energy,eoc_l2,eoc_lagrange"; }

std::string csv_row(const ErrorReport &r, const ErrorReport *prev, bool timing)
{
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.10e,%zu,%.6f,%.10e,%.10e,%.10e", r.meshsize, r.n_dofs, timing ? r.solve_time : 0.,
                r.rel_energy(), r.rel_l2(), r.lagrange_reported());
  std::string s = buf;
  if (prev) {
    std::snprintf(buf, sizeof buf, ",%.4f,%.4f,%.4f", eoc(prev->rel_energy(), r.rel_energy(), prev->meshsize, r.meshsize),
                  eoc(prev->rel_l2(), r.rel_l2(), prev->meshsize, r.meshsize),
                  eoc(prev->lagrange_reported(), r.lagrange_reported(), prev->meshsize, r.meshsize));
    s += buf;
  } else {
    s += ",,,";
  }
  return s;
}

std::ofstream open_output(const std::string &path)
{
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  return out;
}

struct SolveConfig
{
  std::string formulation;
  std::string mesh_file;
  std::string family = "cubic";
  int n = 2;
  int k = 0;
  std::string stab;
  std::string case_name;
  int quad_elevation = 0;
  int threads = 1;
  std::string dump, solution;
  bool no_condense = false;
  bool symmetric = false;
  bool no_timing = false;
};

RunOptions run_options(Formulation f, const std::string &stab, int quad_elevation, int threads)
{
  if (quad_elevation < 0) throw ConfigError("quadrature elevation must be nonnegative");
  if (threads < 1) throw ConfigError("thread count must be positive");
  RunOptions o;
  o.assembly.stabilization = stab.empty() ? default_stabilization(f) : parse_stabilization(stab);
  o.assembly.threads = threads;
  o.quad_elevation = quad_elevation;
  return o;
}

int cmd_solve(const SolveConfig &c)
{
  check_degree(c.k);
  const Formulation f = parse_formulation(c.formulation);
  RunOptions o = run_options(f, c.stab, c.quad_elevation, c.threads);
  o.assembly.condense = !c.no_condense;
  o.assembly.symmetric = c.symmetric;
  const ManufacturedCase mc = make_case(c.case_name, f, c.k);
  const Mesh mesh = c.mesh_file.empty() ? make_mesh(c.family, c.n) : load_mesh_file(c.mesh_file);
  check_configuration(mesh, f, o.assembly.stabilization);

  const CaseSolution run = solve_case(mesh, c.k, mc, o);
  const ErrorReport &r = run.report;
  std::cout << csv_header() << '\n' << csv_row(r, nullptr, !c.no_timing) << '\n';
  std::cerr << to_string(f) << " formulation, k = " << c.k << ", stabilization " << to_string(o.assembly.stabilization)
            << ", case " << mc.name << "\n"
            << "  elements " << mesh.n_elements() << ", faces " << mesh.n_faces() << ", unknowns " << r.n_dofs << "\n"
            << "  residual " << r.residual << ", solve time " << r.solve_time << " s\n"
            << "  norm evaluation defect " << r.two_way_defect << "\n";
  if (!c.dump.empty()) {
    std::ofstream out = open_output(c.dump);
    run.system.dump(out);
  }
  if (!c.solution.empty()) {
    std::ofstream out = open_output(c.solution);
    write_solution(out, make_solution_dump(run.system, run.solution));
  }
  return 0;
}

struct ConvergenceConfig
{
  std::string formulation = "field";
  std::string family = "cubic";
  std::vector<std::string> mesh_files;
  std::vector<int> refinements;
  int k = 0;
  std::string stab;
  std::string case_name;
  std::string out;
  int quad_elevation = 0;
  int threads = 1;
  bool no_timing = false;
};

int cmd_convergence(const ConvergenceConfig &c)
{
  check_degree(c.k);
  const Formulation f = parse_formulation(c.formulation);
  const RunOptions o = run_options(f, c.stab, c.quad_elevation, c.threads);
  const ManufacturedCase mc = make_case(c.case_name, f, c.k);

  std::vector<Mesh> meshes;
  if (!c.mesh_files.empty()) {
    for (const auto &p : c.mesh_files) meshes.push_back(load_mesh_file(p));
  } else {
    std::vector<int> ns = c.refinements;
    if (ns.empty()) ns = c.family == "tetrahedral" ? std::vector<int>{1, 2, 4} : std::vector<int>{2, 4, 8};
    for (int n : ns) meshes.push_back(make_mesh(c.family, n));
  }
  for (const Mesh &m : meshes) check_configuration(m, f, o.assembly.stabilization);

  std::ofstream file;
  if (!c.out.empty()) file = open_output(c.out);
  std::ostream &csv = c.out.empty() ? std::cout : file;
  csv << csv_header() << '\n';
  std::optional<ErrorReport> prev;
  for (const Mesh &m : meshes) {
    const ErrorReport r = run_case(m, c.k, mc, o);
    const std::string row = csv_row(r, prev ? &*prev : nullptr, !c.no_timing);
    csv << row << std::endl;
    if (!c.out.empty()) std::cout << row << std::endl;
    prev = r;
  }
  return 0;
}

int cmd_verify(std::uint64_t seed)
{
  bool ok = true;
  for (const CheckResult &r : run_self_checks(seed)) {
    std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  (" << r.value << " <= " << r.tolerance << ")";
    if (!r.detail.empty()) std::cout << "  " << r.detail;
    std::cout << std::endl;
    ok = ok && r.passed;
  }
  std::cout << (ok ? "all checks passed" : "some checks failed") << std::endl;
  return ok ? 0 : 1;
}

int cmd_mesh_check(const std::string &path)
{
  const Mesh mesh = load_mesh_file(path);
  const MeshReport r = validate(mesh);
  std::cout << "elements             " << r.n_elements << "\n"
            << "faces                " << r.n_faces << " (" << r.n_boundary_faces << " on the boundary)\n"
            << "faces per element    " << r.min_faces_per_element << " to " << r.max_faces_per_element << "\n"
            << "meshsize             " << r.meshsize << "\n"
            << "total volume         " << r.total_volume << "\n"
            << "min inradius ratio   " << r.min_inradius_ratio << "\n"
            << "min star margin      " << r.min_star_margin << "\n"
            << "min face ratio       " << r.min_face_ratio << "\n"
            << "max closure defect   " << r.max_closure_defect << "\n"
            << "max planarity defect " << r.max_planarity_defect << "\n"
            << "tetrahedral          " << (mesh.is_tetrahedral() ? "yes" : "no") << "\n";
  return 0;
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Hybrid high-order magnetostatics on polyhedral meshes"};
  app.require_subcommand(1);

  // mesh
  auto *mesh_cmd = app.add_subcommand("mesh", "Generate or check meshes");
  mesh_cmd->require_subcommand(1);
  std::string gen_family, gen_out;
  int gen_n = 1;
  auto *gen = mesh_cmd->add_subcommand("gen", "Generate a mesh of the unit cube");
  gen->add_option("family", gen_family, "cubic or tetrahedral")->required();
  gen->add_option("n", gen_n, "Subdivisions per axis")->required();
  gen->add_option("--out", gen_out, "Output file (default: standard output)");
  std::string check_path;
  auto *check = mesh_cmd->add_subcommand("check", "Validate a mesh file and print regularity metrics");
  check->add_option("file", check_path, "Mesh file")->required();

  // solve
  SolveConfig sc;
  auto *solve = app.add_subcommand("solve", "Solve one manufactured case on one mesh");
  solve->add_option("formulation", sc.formulation, "field or potential")->required();
  solve->add_option("--mesh", sc.mesh_file, "Mesh file (overrides --family/--n)");
  solve->add_option("--family", sc.family, "cubic or tetrahedral")->capture_default_str();
  solve->add_option("--n", sc.n, "Subdivisions per axis")->capture_default_str();
  solve->add_option("--k", sc.k, "Polynomial degree (0 to 3)")->capture_default_str();
  solve->add_option("--stab", sc.stab, "Multiplier penalty: ch, dh or none (default: ch field, dh potential)");
  solve->add_option("--case", sc.case_name, "cos, sin, gradient or polynomial (default: cos field, sin potential)");
  solve->add_option("--quad-elevation", sc.quad_elevation, "Added load and norm quadrature degree")->capture_default_str();
  solve->add_option("--threads", sc.threads, "Worker threads")->capture_default_str();
  solve->add_option("--dump", sc.dump, "Write the global system as triplets");
  solve->add_option("--solution", sc.solution, "Write the element unknowns as monomial expansions");
  solve->add_flag("--no-condense", sc.no_condense, "Keep element unknowns in the global system");
  solve->add_flag("--symmetric", sc.symmetric, "Negate the multiplier equations");
  solve->add_flag("--no-timing", sc.no_timing, "Write 0 in the solve time column");

  // convergence
  ConvergenceConfig cc;
  auto *conv = app.add_subcommand("convergence", "Convergence study over a refinement sequence");
  conv->add_option("--formulation", cc.formulation, "field or potential")->capture_default_str();
  conv->add_option("--family", cc.family, "cubic or tetrahedral")->capture_default_str();
  conv->add_option("--mesh", cc.mesh_files, "Mesh files, coarse to fine (overrides --family)");
  conv->add_option("--refinements", cc.refinements, "Subdivisions per axis (default: 2,4,8 cubic, 1,2,4 tetrahedral)")
      ->delimiter(',');
  conv->add_option("--k", cc.k, "Polynomial degree (0 to 3)")->capture_default_str();
  conv->add_option("--stab", cc.stab, "Multiplier penalty: ch, dh or none");
  conv->add_option("--case", cc.case_name, "cos, sin, gradient or polynomial");
  conv->add_option("--out", cc.out, "CSV file (default: standard output)");
  conv->add_option("--quad-elevation", cc.quad_elevation, "Added load and norm quadrature degree")->capture_default_str();
  conv->add_option("--threads", cc.threads, "Worker threads")->capture_default_str();
  conv->add_flag("--no-timing", cc.no_timing, "Write 0 in the solve time column (byte-stable output)");

  // verify
  std::uint64_t seed = default_seed;
  auto *verify = app.add_subcommand("verify", "Run the property checks");
  verify->add_option("--seed", seed, "Seed of the randomized checks")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*mesh_cmd) {
      if (*gen) {
        const Mesh m = make_mesh(gen_family, gen_n);
        if (gen_out.empty()) write_mesh(std::cout, m);
        else write_mesh_file(gen_out, m);
        return 0;
      }
      return cmd_mesh_check(check_path);
    }
    if (*solve) return cmd_solve(sc);
    if (*conv) return cmd_convergence(cc);
    if (*verify) return cmd_verify(seed);
  } catch (const NumericalError &e) {
    std::cerr << "numerical error: " << e.what() << std::endl;
    return 1;
  } catch (const ConfigError &e) {
    std::cerr << "configuration error: " << e.what() << std::endl;
    return 2;
  } catch (const ParseError &e) {
    std::cerr << "input error: " << e.what() << std::endl;
    return 2;
  } catch (const GeometryError &e) {
    std::cerr << "invalid mesh: " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
