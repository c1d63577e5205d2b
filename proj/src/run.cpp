#include "redcbc/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "redcbc/errors.hpp"
#include "redcbc/kernel.hpp"
#include "redcbc/korobov_error.hpp"
#include "redcbc/vector_io.hpp"
#include "redcbc/walsh.hpp"

namespace redcbc {

namespace {

using nlohmann::json;

template <typename T>
std::vector<T> one_or_list(const json& j, const std::string& scalar_key,
                           const std::string& list_key) {
  std::vector<T> out;
  if (j.contains(list_key)) {
    for (const auto& v : j.at(list_key)) out.push_back(v.get<T>());
  } else if (j.contains(scalar_key)) {
    out.push_back(j.at(scalar_key).get<T>());
  }
  return out;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: invalid JSON: ") + e.what());
  }

  RunConfig cfg;
  try {
    const std::string mode = j.value("mode", "korobov");
    if (mode == "korobov") {
      cfg.mode = Mode::korobov;
    } else if (mode == "polynomial") {
      cfg.mode = Mode::polynomial;
    } else {
      throw ValidationError("config: mode must be korobov or polynomial");
    }

    cfg.b = j.at("b").get<std::uint64_t>();
    cfg.alpha = j.at("alpha").get<double>();
    cfg.m_list = one_or_list<int>(j, "m", "m_list");
    cfg.s_list = one_or_list<int>(j, "s", "s_list");
    if (cfg.m_list.empty()) throw ValidationError("config: m or m_list required");
    if (cfg.s_list.empty()) throw ValidationError("config: s or s_list required");

    const std::string algorithm = j.value("algorithm", "fast");
    if (algorithm == "fast") {
      cfg.algorithm = Algorithm::fast;
    } else if (algorithm == "naive") {
      cfg.algorithm = Algorithm::naive;
    } else {
      throw ValidationError("config: algorithm must be fast or naive");
    }

    if (j.contains("lambdas")) {
      cfg.lambdas.clear();
      for (const auto& v : j.at("lambdas")) cfg.lambdas.push_back(v.get<double>());
    }

    const json& w = j.at("weights");
    const std::string kind = w.value("kind", "product");
    if (kind == "product") {
      cfg.weights_kind = Weights::Kind::product;
      if (w.contains("rule")) {
        cfg.weight_rule = w.at("rule").get<std::string>();
        parse_weight_rule(cfg.weight_rule);  // fail early
      } else if (w.contains("values")) {
        for (const auto& v : w.at("values")) cfg.weight_values.push_back(v.get<double>());
        if (cfg.weight_values.empty()) throw ValidationError("config: empty weight list");
      } else {
        throw ValidationError("config: product weights need rule or values");
      }
    } else if (kind == "general") {
      cfg.weights_kind = Weights::Kind::general;
      for (const auto& entry : w.at("subsets")) {
        std::vector<int> u;
        for (const auto& idx : entry.at("u")) u.push_back(idx.get<int>());
        cfg.weight_subsets.emplace_back(std::move(u), entry.at("gamma").get<double>());
      }
      if (cfg.weight_subsets.empty()) throw ValidationError("config: empty subset weights");
    } else {
      throw ValidationError("config: weights.kind must be product or general");
    }

    const json& r = j.at("reduction");
    if (r.contains("explicit")) {
      std::vector<int> list;
      for (const auto& v : r.at("explicit")) list.push_back(v.get<int>());
      cfg.reduction = ReductionSpec::explicit_list(std::move(list));
      cfg.reduction_desc = "explicit";
    } else if (r.contains("rule")) {
      cfg.reduction_desc = r.at("rule").get<std::string>();
      cfg.reduction = ReductionSpec::parse(cfg.reduction_desc, cfg.b);
    } else if (r.contains("c")) {
      const std::string c_text = r.at("c").is_string()
                                     ? r.at("c").get<std::string>()
                                     : json(r.at("c")).dump();
      cfg.reduction = ReductionSpec::log_rule(Rational::parse(c_text));
      cfg.reduction_desc = "floor(" + c_text + "*log" + std::to_string(cfg.b) + "(j))";
    } else {
      throw ValidationError("config: reduction needs rule, c, or explicit");
    }

    cfg.out_dir = j.value("out", "");
  } catch (const json::exception& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  return from_json_text(read_text_file(path));
}

SpaceParams RunConfig::space_params(int m) const { return SpaceParams::make(b, m, alpha); }

Weights RunConfig::weights(int s) const {
  if (weights_kind == Weights::Kind::product) {
    if (!weight_rule.empty()) return Weights::from_rule(weight_rule, s);
    if (static_cast<int>(weight_values.size()) < s) {
      throw ValidationError("config: weight list shorter than s");
    }
    return Weights::product(
        std::vector<double>(weight_values.begin(), weight_values.begin() + s));
  }
  std::map<std::uint32_t, double> subsets;
  for (const auto& [u, g] : weight_subsets) {
    std::uint32_t mask = 0;
    for (int idx : u) {
      if (idx < 1 || idx > s) {
        throw ValidationError("config: subset index outside [1, s]");
      }
      mask |= 1u << (idx - 1);
    }
    subsets[mask] = g;
  }
  return Weights::general(std::move(subsets), s);
}

std::string RunConfig::weights_desc() const {
  if (weights_kind == Weights::Kind::general) {
    return "general " + std::to_string(weight_subsets.size()) + " subsets";
  }
  if (!weight_rule.empty()) return "product rule " + weight_rule;
  std::ostringstream out;
  out << "product list";
  for (double v : weight_values) out << ' ' << v;
  return out.str();
}

namespace {

struct CellOutcome {
  CbcResult result;
  double seconds = 0.0;
  std::uint64_t predicted_cost = 0;
};

std::uint64_t poly_predicted_cost(const ReductionSchedule& schedule, int s,
                                  const SpaceParams& params) {
  // direct per-candidate evaluation: |Z_d| dot products of length N per step
  std::uint64_t total = params.n_points;
  for (int d = 1; d <= s; ++d) {
    if (schedule.w[d - 1] < params.m) {
      total += params.n_points;
      total += 2 * candidate_count(schedule, d, params) * params.n_points;
    }
  }
  return total;
}

CellOutcome run_cell(const RunConfig& config, int m, int s) {
  const SpaceParams params = config.space_params(m);
  const Weights weights = config.weights(s);
  const ReductionSchedule schedule = make_reduction_schedule(config.reduction, s, params);

  CellOutcome cell;
  const auto start = std::chrono::steady_clock::now();
  if (config.mode == RunConfig::Mode::korobov) {
    const KernelProfile profile = phi_korobov_table(params);
    cell.result = config.algorithm == RunConfig::Algorithm::fast
                      ? reduced_cbc_fast(params, weights, schedule, s, profile)
                      : reduced_cbc_naive(params, weights, schedule, s, profile);
    cell.predicted_cost = cost_model(schedule, s, m, config.b).total();
  } else {
    const WalshKernelProfile profile = walsh_kernel_table(config.alpha, config.b, m);
    cell.result = reduced_cbc_poly(params, weights, schedule, s, profile);
    cell.predicted_cost = poly_predicted_cost(schedule, s, params);
  }
  const auto stop = std::chrono::steady_clock::now();
  cell.seconds = std::chrono::duration<double>(stop - start).count();
  return cell;
}

json bounds_json(const RunConfig& config, const SpaceParams& params, const Weights& weights,
                 const ReductionSchedule& schedule, int s, double e2) {
  json bounds = json::array();
  for (double lambda : config.lambdas) {
    const double bound = config.mode == RunConfig::Mode::korobov
                             ? theorem_bound(params, weights, schedule, s, lambda)
                             : theorem_bound_walsh(params, weights, schedule, s, lambda);
    bounds.push_back({{"lambda", lambda},
                      {"bound", bound},
                      {"satisfied", e2 <= bound * (1.0 + 1e-9)}});
  }
  return bounds;
}

}  // namespace

ConstructOutcome run_construct(const RunConfig& config, const std::string& out_dir) {
  const int m = config.m_list.front();
  const int s = config.s_list.front();
  const SpaceParams params = config.space_params(m);
  const Weights weights = config.weights(s);
  const ReductionSchedule schedule = make_reduction_schedule(config.reduction, s, params);

  CellOutcome cell = run_cell(config, m, s);

  std::filesystem::create_directories(out_dir);
  ConstructOutcome outcome;
  outcome.result = std::move(cell.result);
  outcome.seconds = cell.seconds;
  outcome.vector_path = (std::filesystem::path(out_dir) / "vector.txt").string();
  outcome.report_path = (std::filesystem::path(out_dir) / "report.json").string();

  VectorFileHeader header;
  header.mode = config.mode == RunConfig::Mode::korobov ? "korobov" : "polynomial";
  header.b = config.b;
  header.m = m;
  header.alpha = config.alpha;
  header.weights_desc = config.weights_desc();
  write_text_file(outcome.vector_path, format_vector_file(header, outcome.result.vector));

  json report;
  report["mode"] = header.mode;
  report["b"] = config.b;
  report["m"] = m;
  report["s"] = s;
  report["alpha"] = config.alpha;
  report["algorithm"] = config.algorithm == RunConfig::Algorithm::fast ? "fast" : "naive";
  report["weights"] = header.weights_desc;
  report["reduction"] = config.reduction_desc;
  report["squared_error"] = outcome.result.error.squared_error;
  report["log10_error"] = outcome.result.error.log10_error;
  report["bounds"] = bounds_json(config, params, weights, schedule, s,
                                 outcome.result.error.squared_error);
  report["cost_model"] = {{"predicted", cell.predicted_cost}};
  if (config.mode == RunConfig::Mode::korobov) {
    const CostModel model = cost_model(schedule, s, m, config.b);
    report["cost_model"]["precompute"] = model.precompute;
    report["cost_model"]["per_step"] = model.per_step;
    report["cost_model"]["transforms"] = model.transforms;
  }
  report["counters"] = {{"candidate_evals", outcome.result.counters.candidate_evals},
                        {"multiply_adds", outcome.result.counters.multiply_adds}};
  report["seconds"] = outcome.seconds;
  report["hardware_dependent"] = true;
  write_text_file(outcome.report_path, report.dump(2) + "\n");
  return outcome;
}

std::string run_table(const RunConfig& config, int jobs) {
  struct Row {
    int m = 0;
    int s = 0;
    double log10_error = 0.0;
    double seconds = 0.0;
    std::uint64_t candidate_evals = 0;
    std::uint64_t predicted = 0;
  };

  std::vector<std::pair<int, int>> cells;
  for (int m : config.m_list) {
    for (int s : config.s_list) cells.emplace_back(m, s);
  }
  std::sort(cells.begin(), cells.end());

  std::vector<Row> rows(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      try {
        const auto [m, s] = cells[i];
        const CellOutcome cell = run_cell(config, m, s);
        rows[i] = Row{m,
                      s,
                      cell.result.error.log10_error,
                      cell.seconds,
                      cell.result.counters.candidate_evals,
                      cell.predicted_cost};
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::ostringstream csv;
  csv << "mode,b,alpha,m,s,algorithm,log10_error,seconds,candidate_evals,predicted_cost\n";
  const std::string mode = config.mode == RunConfig::Mode::korobov ? "korobov" : "polynomial";
  const std::string algorithm =
      config.algorithm == RunConfig::Algorithm::fast ? "fast" : "naive";
  char buf[64];
  for (const Row& row : rows) {
    std::snprintf(buf, sizeof(buf), "%.6f", row.log10_error);
    csv << mode << ',' << config.b << ',' << config.alpha << ',' << row.m << ',' << row.s
        << ',' << algorithm << ',' << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.6f", row.seconds);
    csv << buf << ',' << row.candidate_evals << ',' << row.predicted << '\n';
  }
  return csv.str();
}

VerifyOutcome run_verify(const RunConfig& config, const std::string& vector_path,
                         const std::string& report_path) {
  const int m = config.m_list.front();
  const int s = config.s_list.front();
  const SpaceParams params = config.space_params(m);
  const Weights weights = config.weights(s);
  const ReductionSchedule schedule = make_reduction_schedule(config.reduction, s, params);

  const auto fail = [](const std::string& what) {
    return VerifyOutcome{1, "verify: " + what};
  };

  ParsedVectorFile parsed;
  try {
    parsed = parse_vector_file(read_text_file(vector_path));
  } catch (const ValidationError& e) {
    return fail(e.what());
  }

  const std::string mode = config.mode == RunConfig::Mode::korobov ? "korobov" : "polynomial";
  if (parsed.header.mode != mode || parsed.header.b != config.b || parsed.header.m != m ||
      parsed.header.alpha != config.alpha) {
    return fail("header does not match the configuration");
  }
  if (parsed.vector.dimension() != s) {
    return fail("vector dimension does not match the configuration");
  }

  // candidate-set membership and effective components
  for (int j = 1; j <= s; ++j) {
    const int w = schedule.w[j - 1];
    if (parsed.vector.w[j - 1] != w) return fail("row " + std::to_string(j) + ": wrong w");
    const std::uint64_t z = parsed.vector.components[j - 1];
    const std::uint64_t eff = parsed.vector.effective[j - 1];
    if (w >= m) {
      if (z != 1 || eff != 0) return fail("row " + std::to_string(j) + ": collapsed set is {1}");
      continue;
    }
    std::uint64_t limit = 1;
    for (int i = 0; i < m - w; ++i) limit *= config.b;
    if (z < 1 || z >= limit || z % config.b == 0) {
      return fail("row " + std::to_string(j) + ": component outside its candidate set");
    }
    if (eff != z * schedule.y[j - 1] % params.n_points) {
      return fail("row " + std::to_string(j) + ": effective component mismatch");
    }
  }

  double recomputed = 0.0;
  double bound_check_e2 = 0.0;
  if (config.mode == RunConfig::Mode::korobov) {
    const KernelProfile profile = phi_korobov_table(params);
    const ErrorReport report = weights.is_product()
                                   ? wce_product(params, weights, parsed.vector, profile)
                                   : wce_general(params, weights, parsed.vector, profile);
    recomputed = report.squared_error;
  } else {
    const WalshKernelProfile profile = walsh_kernel_table(config.alpha, config.b, m);
    const ErrorReport report =
        weights.is_product() ? wce_walsh_product(params, weights, parsed.vector, profile)
                             : wce_walsh_general(params, weights, parsed.vector, profile);
    recomputed = report.squared_error;
  }
  bound_check_e2 = recomputed;

  json report;
  try {
    report = json::parse(read_text_file(report_path));
  } catch (const std::exception& e) {
    return fail(std::string("report: ") + e.what());
  }
  if (!report.contains("squared_error")) return fail("report: squared_error missing");
  const double recorded = report.at("squared_error").get<double>();
  const double denom = std::max(std::abs(recorded), 1e-300);
  if (std::abs(recorded - recomputed) > 1e-10 * denom) {
    std::ostringstream msg;
    msg << "squared_error mismatch: recorded " << recorded << ", recomputed " << recomputed;
    return fail(msg.str());
  }

  for (double lambda : config.lambdas) {
    const double bound = config.mode == RunConfig::Mode::korobov
                             ? theorem_bound(params, weights, schedule, s, lambda)
                             : theorem_bound_walsh(params, weights, schedule, s, lambda);
    if (!(bound_check_e2 <= bound * (1.0 + 1e-9))) {
      std::ostringstream msg;
      msg << "bound violated at lambda = " << lambda << ": e^2 = " << bound_check_e2
          << " > " << bound;
      return fail(msg.str());
    }
  }

  return VerifyOutcome{0, "verify: ok"};
}

}  // namespace redcbc
