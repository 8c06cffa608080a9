#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "boundpair/experiments.hpp"

namespace boundpair::cli {

enum ExitCode : int {
  kOk = 0,
  kConfig = 2,
  kNumerical = 3,
  kPrecondition = 4,
  kEvenSites = 5,
  kUnresolvable = 6,
  kNoInteraction = 7,
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

struct RunConfig {
  std::string experiment;
  int sites = 0;                      // 0: experiment default
  double kappa = 1.0;
  std::optional<double> interaction;  // unset: experiment default
  double alpha = 2.0 / 15.0;
  std::optional<double> center;
  std::optional<double> k0;           // unset: auto
  std::optional<double> time;
  int samples = 61;
  std::filesystem::path out = ".";
  std::string format = "csv";
  int jobs = 1;

  double swap_factor = 1.4142135623730951;
  std::optional<double> sp_center;
  std::optional<double> bp_center;
  double bp_k0 = 0.0;
  int snapshots = 10;

  std::optional<int> qubit_site;
  std::string qubit_init = "R";
  int packets = 1;
  double u_small = 1.0;
  std::optional<double> kappa0;       // unset: kappa / sqrt 2
};

// Parses argv (subcommand first, flags after; --config FILE.json supplies
// values that explicit flags override). Validates before returning.
RunConfig parse_config(const std::vector<std::string>& args);

// Fills experiment defaults and checks the domain rules that have their own
// exit codes.
void validate(RunConfig& cfg);

RunOutput execute(const RunConfig& cfg);

// Writes tables, summary.json and timing.json into cfg.out.
void write_outputs(const RunOutput& run, const RunConfig& cfg, double wall_seconds);

// Shortest representation that round-trips.
std::string format_double(double x);

// Full pipeline with exception-to-exit-code mapping.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace boundpair::cli
