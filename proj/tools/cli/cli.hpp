#pragma once

// Command layer behind the qwalk executable. Every subcommand validates its
// configuration, computes all outputs in memory, then writes each file through
// a temporary-and-rename together with a <file>.meta.json sidecar.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace qwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitContract = 3;

/// |sin theta| below this is reported as gapless by sweep, so grid points that
/// land a rounding error away from 0 or pi are not classified.
inline constexpr double kSweepGaplessTol = 1e-9;

struct RunConfig {
  std::string command;
  double delta = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> theta;
  std::optional<double> theta1;
  std::optional<double> theta2;
  std::optional<long> ring_size;
  long grid = 512;
  long steps = 200;
  long window = 5;
  std::string out = ".";
  std::string format = "csv";
  std::uint64_t seed = 1;
  bool degrees = false;
  std::string frame = "identity";
  std::string axis;              // x, y or z; empty picks the frame's own axis
  std::string overlap_case = "all"; // orthogonal, one, both, all
  std::string param = "theta";   // sweep parameter: theta or beta
  std::optional<double> from;
  std::optional<double> to;
  std::optional<double> step;
  unsigned threads = 0;          // 0: hardware concurrency
};

/// Angles converted to radians when --degrees is set.
RunConfig resolved(const RunConfig& cfg);

/// Every problem with cfg for its command, empty when valid.
std::vector<std::string> validate(const RunConfig& cfg);

nlohmann::ordered_json to_json(const RunConfig& cfg);

struct OutputFile {
  std::string name;
  std::string content;
};

struct CommandResult {
  std::vector<OutputFile> files;
  std::string summary;  // printed on standard output
  nlohmann::ordered_json notes;  // extra metadata for the sidecars
};

/// Runs an already validated, resolved configuration. Throws qwalk::Error.
CommandResult execute(const RunConfig& cfg);

/// Full command-line entry point; returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Sweep grid from..to inclusive in steps of step; empty for an empty range.
std::vector<double> sweep_values(double from, double to, double step);

}  // namespace qwalk::cli
