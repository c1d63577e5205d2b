// Command-line front end: construct generating vectors, reproduce error
// tables over (m, s) grids, and verify previously emitted vector files.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "redcbc/errors.hpp"
#include "redcbc/run.hpp"
#include "redcbc/vector_io.hpp"

namespace {

int jobs_from_env() {
  const char* env = std::getenv("REDCBC_JOBS");
  if (env == nullptr) return 1;
  try {
    return std::max(1, std::stoi(env));
  } catch (const std::exception&) {
    return 1;
  }
}

void apply_overrides(redcbc::RunConfig& config, const std::string& algorithm,
                     const std::string& mode) {
  if (algorithm == "fast") config.algorithm = redcbc::RunConfig::Algorithm::fast;
  if (algorithm == "naive") config.algorithm = redcbc::RunConfig::Algorithm::naive;
  if (mode == "korobov") config.mode = redcbc::RunConfig::Mode::korobov;
  if (mode == "polynomial") config.mode = redcbc::RunConfig::Mode::polynomial;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"reduced CBC construction of (polynomial) lattice rules"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string algorithm;
  std::string mode;
  int jobs = jobs_from_env();

  CLI::App* construct = app.add_subcommand("construct", "run one construction");
  CLI::App* table = app.add_subcommand("table", "run an (m, s) grid and emit CSV");
  CLI::App* verify = app.add_subcommand("verify", "recheck an emitted vector file");

  std::string vector_path;
  std::string report_path;
  for (CLI::App* sub : {construct, table, verify}) {
    sub->add_option("--config", config_path, "JSON configuration file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--algorithm", algorithm, "fast | naive")
        ->check(CLI::IsMember({"fast", "naive"}));
    sub->add_option("--mode", mode, "korobov | polynomial")
        ->check(CLI::IsMember({"korobov", "polynomial"}));
    sub->add_option("--jobs", jobs, "concurrent grid cells");
  }
  verify->add_option("--vector", vector_path, "vector file (default <out>/vector.txt)");
  verify->add_option("--report", report_path, "report file (default <out>/report.json)");

  CLI11_PARSE(app, argc, argv);

  try {
    redcbc::RunConfig config = redcbc::RunConfig::from_file(config_path);
    apply_overrides(config, algorithm, mode);
    if (out_dir.empty()) out_dir = config.out_dir.empty() ? "." : config.out_dir;

    if (construct->parsed()) {
      const redcbc::ConstructOutcome outcome = redcbc::run_construct(config, out_dir);
      std::cout << "vector:  " << outcome.vector_path << '\n'
                << "report:  " << outcome.report_path << '\n'
                << "log10 e: " << outcome.result.error.log10_error << '\n';
      return 0;
    }
    if (table->parsed()) {
      const std::string csv = redcbc::run_table(config, jobs);
      std::filesystem::create_directories(out_dir);
      const std::string path =
          (std::filesystem::path(out_dir) / "table.csv").string();
      redcbc::write_text_file(path, csv);
      std::cout << csv;
      return 0;
    }
    // verify
    if (vector_path.empty()) {
      vector_path = (std::filesystem::path(out_dir) / "vector.txt").string();
    }
    if (report_path.empty()) {
      report_path = (std::filesystem::path(out_dir) / "report.json").string();
    }
    const redcbc::VerifyOutcome outcome = redcbc::run_verify(config, vector_path, report_path);
    std::cerr << outcome.message << '\n';
    return outcome.exit_code;
  } catch (const redcbc::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return 3;
  } catch (const redcbc::ValidationError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const redcbc::DomainError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
