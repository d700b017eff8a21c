// hyperlasso: experiment runner.
//
//   hyperlasso run    --config <path> [--output <dir>]
//   hyperlasso verify --domain <kind> --L <n> [--N <n>] [--t-design <file> --t <n>] [--tol <x>]
//   hyperlasso export --config <path> --grid <spec> [--output <dir>]

#include "hyperlasso/basis.hpp"
#include "hyperlasso/config.hpp"
#include "hyperlasso/error.hpp"
#include "hyperlasso/experiment.hpp"
#include "hyperlasso/grid_export.hpp"
#include "hyperlasso/kernels.hpp"
#include "hyperlasso/quadrature.hpp"

#include <chrono>
#include <cmath>
#include <iostream>

#include "CLI11.hpp"

namespace hl = hyperlasso;

namespace {

int cmd_run(const std::string& config_path, const std::string& output) {
  const auto config = hl::load_config(config_path);
  const auto result = hl::run_experiment(config);
  const std::filesystem::path dir = output.empty() ? config.output_dir : output;
  hl::write_outputs(result, dir);
  std::cout << hl::format_table_csv(result.rows);
  std::cerr << "wrote " << (dir / "table.csv").string() << " and "
            << (dir / "meta.json").string() << " in " << result.meta["wall_seconds"].get<double>()
            << " s\n";
  return 0;
}

int cmd_verify(const std::string& domain_name, int L, std::optional<int> N,
               const std::string& t_design, std::optional<int> t, double tol) {
  const auto domain = hl::parse_domain(domain_name);
  const auto t0 = std::chrono::steady_clock::now();
  std::optional<hl::QuadratureRule> rule;
  switch (domain) {
    case hl::DomainKind::Interval: rule = hl::gauss_legendre_rule(N.value_or(L + 1)); break;
    case hl::DomainKind::Disc: rule = hl::disc_rule(N.value_or(std::max(L, 1))); break;
    case hl::DomainKind::Sphere:
      if (!t_design.empty()) {
        rule = hl::load_t_design(hl::resolve_t_design(t_design), t.value_or(2 * L));
      } else {
        rule = hl::sphere_product_rule(L);
      }
      break;
    case hl::DomainKind::Cube: rule = hl::cube_rule(L); break;
  }
  const auto basis = hl::default_basis(domain, L);
  double wsum = 0.0;
  for (double w : rule->weights()) wsum += w;
  const double vol = hl::volume(domain);
  const bool weights_ok = std::abs(wsum - vol) <= 1e-10;
  const auto report = hl::verify_exactness(*rule, basis, tol);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::cout << "domain            " << hl::to_string(domain) << '\n'
            << "L                 " << L << '\n'
            << "nodes             " << rule->size() << '\n'
            << "exactness degree  " << rule->exactness_degree() << '\n'
            << "basis size        " << basis.size() << '\n'
            << "sum of weights    " << wsum << " (volume " << vol << ")"
            << (weights_ok ? " ok" : " MISMATCH") << '\n'
            << "max |G - I|       " << report.max_deviation << " at (" << report.worst_row
            << ", " << report.worst_col << ")" << (report.passed ? " ok" : " FAIL") << '\n'
            << "simd              " << hl::kernels::isa_name(hl::kernels::active_isa()) << '\n'
            << "seconds           " << secs << '\n';
  return (weights_ok && report.passed) ? 0 : 1;
}

int cmd_export(const std::string& config_path, const std::string& grid_spec,
               const std::string& output) {
  const auto config = hl::load_config(config_path);
  const auto pipeline = hl::build_pipeline(config);
  const auto grid = hl::parse_grid_spec(config.domain, grid_spec);
  const std::filesystem::path dir = output.empty() ? config.output_dir : output;
  for (const auto& [estimator, expansion] : hl::fit_once(config, pipeline)) {
    const auto file = dir / ("grid_" + std::string(hl::to_string(estimator)) + "_" + grid.label + ".csv");
    hl::export_grid(grid, expansion, pipeline.f, file);
    std::cerr << "wrote " << file.string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lasso hyperinterpolation experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  auto* run = app.add_subcommand("run", "run an experiment config and write table.csv/meta.json");
  run->add_option("--config", config_path, "JSON experiment config")->required();
  run->add_option("--output", output, "output directory (default: config output_dir)");

  std::string domain;
  int L = 0;
  std::optional<int> N;
  std::optional<int> t;
  std::string t_design;
  double tol = 1e-8;
  auto* verify = app.add_subcommand("verify", "check quadrature weights and the Gram identity");
  verify->add_option("--domain", domain, "interval | disc | sphere | cube")->required();
  verify->add_option("--L", L, "polynomial degree")->required()->check(CLI::NonNegativeNumber);
  verify->add_option("--N", N, "quadrature parameter (interval: points, disc: radial N)");
  verify->add_option("--t-design", t_design, "sphere: equal-weight point file");
  verify->add_option("--t", t, "sphere: design strength");
  verify->add_option("--tol", tol, "max allowed |G - I| entry");

  std::string export_config;
  std::string grid;
  std::string export_output;
  auto* exp = app.add_subcommand("export", "write grid CSVs of one fit per estimator");
  exp->add_option("--config", export_config, "JSON experiment config")->required();
  exp->add_option("--grid", grid, "grid spec, e.g. uniform:201 or x=0.5:41")->required();
  exp->add_option("--output", export_output, "output directory (default: config output_dir)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(config_path, output);
    if (*verify) return cmd_verify(domain, L, N, t_design, t, tol);
    if (*exp) return cmd_export(export_config, grid, export_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
