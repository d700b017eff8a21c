#include "hyperlasso/experiment.hpp"

#include "hyperlasso/error.hpp"
#include "hyperlasso/kernels.hpp"
#include "hyperlasso/test_functions.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace hyperlasso {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string noise_param(const NoiseSpec& spec) {
  switch (spec.kind) {
    case NoiseSpec::Kind::None: return "";
    case NoiseSpec::Kind::Gaussian: return "sigma=" + fmt6(spec.sigma);
    case NoiseSpec::Kind::Impulse:
      return "a=" + fmt6(spec.amplitude) + ";p=" + fmt6(spec.probability);
    case NoiseSpec::Kind::Mixed: {
      std::string s;
      for (std::size_t i = 0; i < spec.components.size(); ++i) {
        if (i) s += "+";
        s += noise_param(spec.components[i]);
      }
      return s;
    }
  }
  return "";
}

int interval_points(const ExperimentConfig& c) { return c.N.value_or(c.L + 1); }
int disc_parameter(const ExperimentConfig& c) { return c.N.value_or(std::max(c.L, 1)); }

QuadratureRule fit_rule(const ExperimentConfig& c) {
  const int need = 2 * c.L;
  const auto dim = dimension(c.domain, c.L);
  switch (c.domain) {
    case DomainKind::Interval: {
      const int n = interval_points(c);
      if (2 * n - 1 < need) {
        throw ConfigError("N = " + std::to_string(n) + " Gauss points are exact to degree " +
                          std::to_string(2 * n - 1) + " < 2L = " + std::to_string(need) +
                          "; a rule exact to degree 2L needs N >= dim P_L = " +
                          std::to_string(dim));
      }
      return gauss_legendre_rule(n);
    }
    case DomainKind::Disc: {
      const int n = disc_parameter(c);
      if (2 * n < need) {
        throw ConfigError("disc rule with N = " + std::to_string(n) + " is exact to degree " +
                          std::to_string(2 * n) + " < 2L = " + std::to_string(need) +
                          "; need N >= L (node count must reach dim P_L = " +
                          std::to_string(dim) + ")");
      }
      return disc_rule(n);
    }
    case DomainKind::Sphere: {
      if (c.t_design) {
        if (*c.t < need) {
          throw ConfigError("t-design of strength t = " + std::to_string(*c.t) +
                            " cannot support L = " + std::to_string(c.L) + " (need t >= 2L)");
        }
        auto rule = load_t_design(resolve_t_design(*c.t_design), *c.t);
        if (rule.size() < dim) {
          throw ConfigError("t-design has " + std::to_string(rule.size()) +
                            " points, fewer than dim P_L = " + std::to_string(dim));
        }
        return rule;
      }
      return sphere_product_rule(c.L);
    }
    case DomainKind::Cube:
      return cube_rule(c.L);
  }
  throw ConfigError("unknown domain");
}

struct UserFunction {
  Expansion expansion;
};

PointFunction load_user_function(const ExperimentConfig& c) {
  std::ifstream in(*c.function_file);
  if (!in) throw FileError("cannot open function file '" + *c.function_file + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("function file: " + std::string(e.what()));
  }
  for (const auto& item : j.items()) {
    if (item.key() != "domain" && item.key() != "L" && item.key() != "coefficients") {
      throw ConfigError("function file: unknown key '" + item.key() + "'");
    }
  }
  if (parse_domain(j.at("domain").get<std::string>()) != c.domain) {
    throw ConfigError("function file lives on a different domain");
  }
  const int degree = j.at("L").get<int>();
  auto basis = std::make_shared<const BasisSet>(default_basis(c.domain, degree));
  CoefficientVector coeffs{j.at("coefficients").get<std::vector<double>>()};
  if (coeffs.size() != basis->size()) {
    throw ConfigError("function file: expected " + std::to_string(basis->size()) +
                      " coefficients");
  }
  auto fn = std::make_shared<UserFunction>(UserFunction{Expansion{basis, std::move(coeffs)}});
  return [fn](const Point& x) {
    std::vector<double> row(fn->expansion.basis->size());
    fn->expansion.basis->eval_all(x, row);
    return kernels::dot(fn->expansion.coeffs.values, row);
  };
}

PenaltyVector make_mu(const ExperimentConfig& c, std::size_t d) {
  if (c.mu.size() == 1) return PenaltyVector::uniform(d, c.mu.front());
  if (c.mu.size() != d) {
    throw ConfigError("mu has " + std::to_string(c.mu.size()) + " entries, basis has " +
                      std::to_string(d));
  }
  return PenaltyVector(c.mu);
}

std::vector<double> values_at(const PointFunction& f, const QuadratureRule& rule) {
  std::vector<double> v(rule.size());
  for (std::size_t j = 0; j < rule.size(); ++j) {
    v[j] = f(rule.nodes()[j]);
    if (!std::isfinite(v[j])) throw EvaluationError("test function is not finite at a node");
  }
  return v;
}

}  // namespace

std::filesystem::path resolve_t_design(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) return path;
  if (const char* dir = std::getenv("HYPERLASSO_TDESIGN_DIR")) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate;
  }
  throw FileError("t-design file '" + path +
                  "' not found (also searched $HYPERLASSO_TDESIGN_DIR)");
}

QuadratureRule error_rule(const ExperimentConfig& c) {
  switch (c.domain) {
    case DomainKind::Interval:
      return gauss_legendre_rule(std::max(2 * interval_points(c), c.L + 6));
    case DomainKind::Disc:
      return disc_rule(std::max(2 * disc_parameter(c), c.L + 5));
    case DomainKind::Sphere:
      return sphere_product_rule(std::max(2 * c.L, c.L + 5));
    case DomainKind::Cube:
      return cube_rule(c.L + 10);
  }
  throw ConfigError("unknown domain");
}

Pipeline build_pipeline(const ExperimentConfig& config) {
  validate(config);
  auto basis = std::make_shared<const BasisSet>(default_basis(config.domain, config.L));
  auto rule = fit_rule(config);
  auto eval = error_rule(config);
  PointFunction f;
  std::optional<double> sup;
  if (config.test_function == "user-file") {
    f = load_user_function(config);
  } else {
    const std::string name = config.test_function;
    f = [name](const Point& x) { return built_in_function(name, x); };
    sup = built_in_sup_norm(name);
  }
  return Pipeline{std::move(basis), std::move(rule), std::move(eval), std::move(f), sup};
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  const Pipeline p = build_pipeline(config);
  const BasisSet& basis = *p.basis;
  const std::size_t d = basis.size();

  const auto clean = values_at(p.f, p.rule);
  const auto reference = values_at(p.f, p.eval_rule);
  const auto mu = make_mu(config, d);
  const auto tik_penalty = config.tikhonov_penalty == TikhonovPenalty::LaplaceBeltrami
                               ? laplace_beltrami_penalty(basis)
                               : PenaltyVector::uniform(d);

  std::vector<double> lambdas;
  for (double g : config.lambda_grid) lambdas.push_back(std::pow(10.0, g));
  const bool tik_fixed = config.tikhonov_lambda.has_value();
  const double tik_lambda = tik_fixed ? std::pow(10.0, *config.tikhonov_lambda) : 0.0;

  const std::size_t nest = config.estimators.size();
  const std::size_t nlam = lambdas.size();
  const std::size_t nnoise = config.noise.size();
  // [noise][lambda][estimator]
  std::vector<double> err_sum(nnoise * nlam * nest, 0.0);
  std::vector<double> nnz_sum(nnoise * nlam * nest, 0.0);

  const auto cell = [&](std::size_t n, std::size_t l, std::size_t e) {
    return (n * nlam + l) * nest + e;
  };

  // Fits from every noise setting and trial are collected and evaluated on the
  // error rule in one pass; basis evaluation there dominates the cost on the
  // disc and sphere.
  std::vector<CoefficientVector> fits;
  std::vector<std::vector<std::size_t>> trial_slots;  // per (noise, trial): [lambda][estimator]
  for (std::size_t ni = 0; ni < nnoise; ++ni) {
    NoiseSpec spec = config.noise[ni];
    spec.seed ^= config.seed;
    for (int trial = 0; trial < config.trials; ++trial) {
      const auto samples = apply_noise(
          clean, spec, NoiseOptions{static_cast<std::uint64_t>(trial), config.noise_mask_zero});
      const auto alpha = hyper_coefficients(p.rule, basis, samples.noisy);

      // Unique coefficient vectors; hyper and filtered do not depend on lambda.
      std::vector<std::size_t> slot(nlam * nest);
      std::optional<std::size_t> hyper_slot, filtered_slot, tik_fixed_slot;
      std::vector<std::pair<std::size_t, std::size_t>> lasso_slots;  // (lambda idx, fit idx)
      for (std::size_t li = 0; li < nlam; ++li) {
        for (std::size_t ei = 0; ei < nest; ++ei) {
          std::size_t idx = fits.size();
          switch (config.estimators[ei]) {
            case Estimator::Hyper:
              if (!hyper_slot) {
                hyper_slot = fits.size();
                fits.push_back(alpha);
              }
              idx = *hyper_slot;
              break;
            case Estimator::Filtered:
              if (!filtered_slot) {
                filtered_slot = fits.size();
                fits.push_back(filtered_coefficients(alpha, basis));
              }
              idx = *filtered_slot;
              break;
            case Estimator::Lasso:
              fits.push_back(lasso_coefficients(alpha, lambdas[li], mu));
              lasso_slots.emplace_back(li, idx);
              break;
            case Estimator::Tikhonov:
              if (tik_fixed) {
                if (!tik_fixed_slot) {
                  tik_fixed_slot = fits.size();
                  fits.push_back(tikhonov_coefficients(alpha, tik_lambda, tik_penalty));
                }
                idx = *tik_fixed_slot;
              } else {
                fits.push_back(tikhonov_coefficients(alpha, lambdas[li], tik_penalty));
              }
              break;
          }
          slot[li * nest + ei] = idx;
        }
      }

      if (!lasso_slots.empty()) {
        std::vector<CoefficientVector> lasso_fits;
        for (const auto& [li, fi] : lasso_slots) lasso_fits.push_back(fits[fi]);
        const auto fitted = evaluate_on_rule(basis, lasso_fits, p.rule);
        for (std::size_t k = 0; k < lasso_slots.size(); ++k) {
          const double lambda = lambdas[lasso_slots[k].first];
          const auto report = check_lasso_invariants(p.rule, samples.noisy, alpha,
                                                     lasso_fits[k], lambda, mu, fitted[k]);
          if (!report.passed) {
            std::string msg = "invariant violated (noise " + std::to_string(ni) + ", trial " +
                              std::to_string(trial) + ", lambda " + fmt6(lambda) + "):";
            for (const auto& f : report.failures) msg += " " + f + ";";
            throw InvariantViolation(msg);
          }
        }
      }

      trial_slots.push_back(std::move(slot));
    }
  }

  const auto errors = l2_errors(basis, fits, reference, p.eval_rule);
  for (std::size_t ni = 0; ni < nnoise; ++ni) {
    for (int trial = 0; trial < config.trials; ++trial) {
      const auto& slot = trial_slots[ni * static_cast<std::size_t>(config.trials) +
                                     static_cast<std::size_t>(trial)];
      for (std::size_t li = 0; li < nlam; ++li) {
        for (std::size_t ei = 0; ei < nest; ++ei) {
          const std::size_t fi = slot[li * nest + ei];
          err_sum[cell(ni, li, ei)] += errors[fi];
          nnz_sum[cell(ni, li, ei)] += static_cast<double>(fits[fi].count_nonzero());
        }
      }
    }
  }
  const double run_seconds = std::chrono::duration<double>(clock::now() - t0).count();

  ExperimentResult result;
  for (std::size_t ei = 0; ei < nest; ++ei) {
    for (std::size_t li = 0; li < nlam; ++li) {
      for (std::size_t ni = 0; ni < nnoise; ++ni) {
        ResultRow row;
        row.estimator = config.estimators[ei];
        row.lambda = (row.estimator == Estimator::Tikhonov && tik_fixed) ? tik_lambda
                                                                          : lambdas[li];
        row.noise_kind = to_string(config.noise[ni].kind);
        row.noise_param = noise_param(config.noise[ni]);
        row.mean_l2_error = err_sum[cell(ni, li, ei)] / config.trials;
        row.mean_beta_l0 = nnz_sum[cell(ni, li, ei)] / config.trials;
        row.trials = config.trials;
        row.seed = config.seed;
        row.wall_seconds = run_seconds;
        result.rows.push_back(std::move(row));
      }
    }
  }

  json seeds = json::array();
  for (int t = 0; t < config.trials; ++t) {
    seeds.push_back(config.seed ^ static_cast<std::uint64_t>(t));
  }
  result.meta = {
      {"config", config_to_json(config)},
      {"version", kVersion},
      {"simd", std::string(kernels::isa_name(kernels::active_isa()))},
      {"trial_seeds", seeds},
      {"basis_size", d},
      {"rule_nodes", p.rule.size()},
      {"rule_exactness", p.rule.exactness_degree()},
      {"error_rule_nodes", p.eval_rule.size()},
      {"wall_seconds", std::chrono::duration<double>(clock::now() - t0).count()},
  };
  return result;
}

std::string format_table_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "estimator,lambda,noise_kind,noise_param,mean_l2_error,mean_beta_l0,trials,seed\n";
  for (const auto& r : rows) {
    out << to_string(r.estimator) << ',' << fmt6(r.lambda) << ',' << r.noise_kind << ','
        << r.noise_param << ',' << fmt6(r.mean_l2_error) << ',' << fmt6(r.mean_beta_l0) << ','
        << r.trials << ',' << r.seed << '\n';
  }
  return out.str();
}

void write_outputs(const ExperimentResult& result, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "table.csv", std::ios::binary);
    if (!out) throw FileError("cannot write " + (dir / "table.csv").string());
    out << format_table_csv(result.rows);
  }
  std::ofstream meta(dir / "meta.json", std::ios::binary);
  if (!meta) throw FileError("cannot write " + (dir / "meta.json").string());
  meta << result.meta.dump(2) << '\n';
}

std::vector<std::pair<Estimator, Expansion>> fit_once(const ExperimentConfig& config,
                                                      const Pipeline& p) {
  const BasisSet& basis = *p.basis;
  const auto clean = values_at(p.f, p.rule);
  NoiseSpec spec = config.noise.front();
  spec.seed ^= config.seed;
  const auto samples = apply_noise(clean, spec, NoiseOptions{0, config.noise_mask_zero});
  const auto alpha = hyper_coefficients(p.rule, basis, samples.noisy);
  const double lambda = std::pow(10.0, config.lambda_grid.front());
  const double tik_lambda =
      config.tikhonov_lambda ? std::pow(10.0, *config.tikhonov_lambda) : lambda;
  const auto tik_penalty = config.tikhonov_penalty == TikhonovPenalty::LaplaceBeltrami
                               ? laplace_beltrami_penalty(basis)
                               : PenaltyVector::uniform(basis.size());

  std::vector<std::pair<Estimator, Expansion>> out;
  for (auto e : config.estimators) {
    CoefficientVector c;
    switch (e) {
      case Estimator::Hyper: c = alpha; break;
      case Estimator::Lasso: c = lasso_coefficients(alpha, lambda, make_mu(config, basis.size())); break;
      case Estimator::Filtered: c = filtered_coefficients(alpha, basis); break;
      case Estimator::Tikhonov: c = tikhonov_coefficients(alpha, tik_lambda, tik_penalty); break;
    }
    out.emplace_back(e, Expansion{p.basis, std::move(c)});
  }
  return out;
}

}  // namespace hyperlasso
