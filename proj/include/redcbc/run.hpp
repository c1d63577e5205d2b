#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "redcbc/cbc.hpp"
#include "redcbc/reduction.hpp"
#include "redcbc/space_params.hpp"
#include "redcbc/weights.hpp"

namespace redcbc {

/// One batch configuration (JSON on disk). m_list/s_list drive table runs;
/// construct runs use the first entry of each.
struct RunConfig {
  enum class Mode { korobov, polynomial };
  enum class Algorithm { fast, naive };

  Mode mode = Mode::korobov;
  std::uint64_t b = 2;
  std::vector<int> m_list;
  std::vector<int> s_list;
  double alpha = 2.0;
  Algorithm algorithm = Algorithm::fast;
  std::vector<double> lambdas{1.0};

  // weights
  Weights::Kind weights_kind = Weights::Kind::product;
  std::string weight_rule;                   // product rule, empty if explicit
  std::vector<double> weight_values;         // explicit product weights
  std::vector<std::pair<std::vector<int>, double>> weight_subsets;  // general

  ReductionSpec reduction;
  std::string reduction_desc;
  std::string out_dir;

  static RunConfig from_json_text(const std::string& text);
  static RunConfig from_file(const std::string& path);

  SpaceParams space_params(int m) const;
  Weights weights(int s) const;
  std::string weights_desc() const;
};

struct ConstructOutcome {
  CbcResult result;
  std::string vector_path;
  std::string report_path;
  double seconds = 0.0;
};

/// Runs one construction, writes <out>/vector.txt and <out>/report.json.
ConstructOutcome run_construct(const RunConfig& config, const std::string& out_dir);

/// Runs the m_list x s_list grid and renders the CSV
///   mode,b,alpha,m,s,algorithm,log10_error,seconds,candidate_evals,predicted_cost
/// Rows are sorted by (m, s) whatever the execution order; jobs > 1 runs
/// cells concurrently.
std::string run_table(const RunConfig& config, int jobs);

/// Exit status contract: 0 verified, 1 mismatch or tampered file,
/// 2 configuration error, 3 capacity error.
struct VerifyOutcome {
  int exit_code = 0;
  std::string message;
};

VerifyOutcome run_verify(const RunConfig& config, const std::string& vector_path,
                         const std::string& report_path);

}  // namespace redcbc
