// Command-line front end: pattern inspection, solving, analytic references,
// and the experiment suites.

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lathom/config.hpp"
#include "lathom/field_io.hpp"

using namespace lathom;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  double tolerance = -1;  // negative: keep the config / default value
  int max_iter = -1;
  int threads = 0;
  int scale = 0;
  bool image = false;
};

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

void apply_solver_overrides(const CommonOpts& opts, SolverConfig& solver) {
  if (opts.tolerance > 0) solver.tolerance = opts.tolerance;
  if (opts.max_iter > 0) solver.max_iterations = opts.max_iter;
}

std::string out_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

std::string action_csv(const SymTensor2& action) {
  static const char* kNames2[] = {"e11", "e22", "sqrt2_e12"};
  static const char* kNames3[] = {"e11", "e22", "e33", "sqrt2_e23", "sqrt2_e13", "sqrt2_e12"};
  std::ostringstream os;
  os.precision(17);
  const char** names = action.dim() == 2 ? kNames2 : kNames3;
  for (int i = 0; i < action.size(); ++i) os << (i ? "," : "") << names[i];
  os << '\n';
  for (int i = 0; i < action.size(); ++i) os << (i ? "," : "") << action[i];
  os << '\n';
  return os.str();
}

std::string mandel_matrix_csv(const Tensor4Sym& t) {
  std::ostringstream os;
  os.precision(17);
  const auto& m = t.mandel();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << '\n';
  }
  return os.str();
}

void write_field_images(const std::string& dir, const std::string& stem, const Pattern& p,
                        const std::vector<double>& field, int ncomp) {
  for (int c = 0; c < ncomp; ++c)
    write_component_pgm(out_path(dir, stem + "_c" + std::to_string(c) + ".pgm"), p, field, ncomp,
                        c, 256, 256);
}

int cmd_pattern_info(const std::string& matrix_text) {
  const PatternMatrix m(parse_int_matrix(matrix_text));
  const PatternTransform t(m);
  const Pattern& p = t.pattern();

  std::cout << "matrix: " << format_int_matrix(m.m) << '\n';
  std::cout << "points (m): " << p.size() << '\n';
  std::cout << "pattern dimension (d_M): " << p.pattern_dim() << '\n';
  std::cout << "elementary divisors: [";
  for (size_t i = 0; i < p.divisors().size(); ++i)
    std::cout << (i ? "," : "") << p.divisors()[i];
  std::cout << "]\n";
  std::cout << "rank-1 lattice: " << (p.pattern_dim() == 1 ? "yes" : "no") << '\n';
  std::cout << "hermite representative: " << format_int_matrix(hermite_representative(m).m)
            << '\n';
  std::cout.precision(12);
  for (size_t i = 0; i < p.basis().size(); ++i) {
    std::cout << "pattern basis y_" << (i + 1) << ": (";
    for (int c = 0; c < p.dim(); ++c)
      std::cout << (c ? "," : "") << p.basis()[i][c].num << "/" << p.basis()[i][c].den;
    std::cout << ")\n";
  }
  const auto& g = t.generating_set();
  for (size_t i = 0; i < g.basis().size(); ++i) {
    std::cout << "generating set basis h_" << (i + 1) << ": (";
    for (int c = 0; c < g.dim(); ++c) std::cout << (c ? "," : "") << g.basis()[i][c];
    std::cout << ")\n";
  }
  return kExitOk;
}

int cmd_solve(const CommonOpts& opts) {
  RunConfig cfg = RunConfig::parse_file(opts.config_path);
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  apply_solver_overrides(opts, cfg.solver);

  const PatternTransform transform(cfg.matrix);
  const Pattern& p = transform.pattern();
  MaterialField material;
  if (const auto* lam = std::get_if<LaminateSpec>(&cfg.geometry))
    material = sample_material(p, *lam);
  else
    material = sample_material(p, std::get<HashinSpec>(cfg.geometry));

  const SymTensor2 e0 = cfg.effective_loading();
  const ReferenceMedium ref = cfg.reference_override
                                  ? ReferenceMedium::isotropic(*cfg.reference_override, material.d)
                                  : choose_reference(material);

  const SolveResult r = basic_scheme(material, e0, ref, cfg.solver, &transform);
  write_field_dump(out_path(cfg.out_dir, "strain.csv"), p, r.strain, r.ncomp);
  write_residuals_csv(out_path(cfg.out_dir, "residuals.csv"), r.residuals);
  write_text_file(out_path(cfg.out_dir, "effective.csv"), action_csv(r.effective_action));
  if (opts.image) write_field_images(cfg.out_dir, "strain", p, r.strain, r.ncomp);

  std::cout << (r.converged ? "converged" : "NOT converged") << " after " << r.iterations
            << " iterations, residual "
            << (r.residuals.empty() ? 0.0 : r.residuals.back()) << '\n';
  return r.converged ? kExitOk : kExitNoConvergence;
}

int cmd_reference(const CommonOpts& opts) {
  RunConfig cfg = RunConfig::parse_file(opts.config_path);
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;

  const Pattern p = Pattern::build(cfg.matrix);
  std::vector<double> field;
  SymTensor2 action(p.dim());
  int ncomp = mandel_size(p.dim());

  if (const auto* lam = std::get_if<LaminateSpec>(&cfg.geometry)) {
    const SymTensor2 e0 = cfg.effective_loading();
    field = analytic_strain_field(p, *lam, e0);
    action = contract(laminate_effective(*lam), e0);
    write_text_file(out_path(cfg.out_dir, "reference_effective_tensor.csv"),
                    mandel_matrix_csv(laminate_effective(*lam)));
  } else {
    const auto& hs = std::get<HashinSpec>(cfg.geometry);
    field = analytic_strain_field(p, hs);
    action = hashin_effective_action(hs);
  }
  write_field_dump(out_path(cfg.out_dir, "reference_strain.csv"), p, field, ncomp);
  write_text_file(out_path(cfg.out_dir, "reference_effective.csv"), action_csv(action));
  if (opts.image) write_field_images(cfg.out_dir, "reference_strain", p, field, ncomp);
  std::cout << "analytic reference written to " << cfg.out_dir << '\n';
  return kExitOk;
}

int cmd_experiment(const std::string& suite, const CommonOpts& opts, int j, int alpha,
                   std::int64_t subsampling_a) {
  SolverConfig solver;
  apply_solver_overrides(opts, solver);
  const std::string dir = opts.out_dir.empty() ? "out" : opts.out_dir;
  const int total = 14 - 2 * opts.scale;
  if (total < 2) throw std::invalid_argument("scale leaves no exponent budget");

  std::vector<ErrorReport> reports;
  std::vector<PatternMatrix> matrices;
  std::string csv_name;
  if (suite == "subsampling") {
    reports = subsampling_suite(solver, subsampling_a);
    csv_name = "subsampling.csv";
  } else if (suite == "shear-sweep") {
    reports = shear_sweep(j, alpha, total, solver);
    csv_name = "shear_sweep_j" + std::to_string(j) + "_a" + std::to_string(alpha) + ".csv";
  } else if (suite == "hashin-table") {
    reports = hashin_table_suite(total, solver);
    csv_name = "hashin_table.csv";
  } else {
    throw CLI::ValidationError("experiment",
                               "unknown suite '" + suite +
                                   "' (available: subsampling, shear-sweep, hashin-table)");
  }

  std::ostringstream csv;
  csv << report_csv_header() << '\n';
  for (const auto& r : reports) csv << report_csv_row(r) << '\n';
  write_text_file(out_path(dir, csv_name), csv.str());

  if (opts.image) {
    for (size_t i = 0; i < reports.size(); ++i) {
      CaseArtifacts art;
      const GeometryCase geom = (suite == "subsampling")
                                    ? GeometryCase(subsampling_laminate())
                                    : GeometryCase(hashin_sweep_geometry());
      run_case(reports[i].matrix, geom, solver, std::nullopt, &art);
      write_field_images(dir, "case" + std::to_string(i), art.transform->pattern(),
                         art.numeric_strain, art.ncomp);
    }
  }

  bool all_converged = true;
  for (const auto& r : reports) all_converged = all_converged && r.converged;
  std::cout << reports.size() << " rows written to " << dir << "/" << csv_name << '\n';
  return all_converged ? kExitOk : kExitNoConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FFT homogenization on anisotropic sampling lattices"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string matrix_text;
  std::string suite;
  int j = 7, alpha = 0;
  std::int64_t subsampling_a = 64;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* c = cmd->add_option("--config", opts.config_path, "run configuration file");
    if (needs_config) c->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", opts.out_dir, "output directory");
    cmd->add_option("--tolerance", opts.tolerance, "solver Cauchy tolerance");
    cmd->add_option("--max-iter", opts.max_iter, "iteration cap");
    cmd->add_option("--threads", opts.threads, "OpenMP thread count");
    cmd->add_option("--scale", opts.scale, "halve both matrix-family exponents this many times");
    cmd->add_flag("--image", opts.image, "write PGM renderings of strain components");
  };

  auto* info = app.add_subcommand("pattern-info", "inspect a pattern matrix");
  info->add_option("matrix", matrix_text, "matrix as [[a,b],[c,d]]")->required();

  auto* solve = app.add_subcommand("solve", "run the fixed-point solver");
  add_common(solve, true);

  auto* reference = app.add_subcommand("reference", "write the analytic reference solution");
  add_common(reference, true);

  auto* experiment = app.add_subcommand("experiment", "run an experiment suite");
  experiment->add_option("suite", suite, "subsampling | shear-sweep | hashin-table")->required();
  add_common(experiment, false);
  experiment->add_option("--j", j, "refinement exponent of the sweep family");
  experiment->add_option("--alpha", alpha, "shear direction (0 or 1)");
  experiment->add_option("--a", subsampling_a, "grid size of the subsampling study");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    apply_threads(opts.threads);
    if (info->parsed()) return cmd_pattern_info(matrix_text);
    if (solve->parsed()) return cmd_solve(opts);
    if (reference->parsed()) return cmd_reference(opts);
    return cmd_experiment(suite, opts, j, alpha, subsampling_a);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
