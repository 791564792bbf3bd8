#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace lab::harness {

/// Experiment configuration: every run record embeds the full config plus
/// the per-trial stream id, enough to reproduce any single trial alone.
struct ExperimentConfig {
  std::string experiment;
  std::map<std::string, std::string> params;
  std::uint64_t master_seed = 0;
  int trials = 1;
  int jobs = 1;
  std::string out_path;    // empty: stdout
  std::string format = "csv";
};

struct TrialRecord {
  std::string experiment;
  int trial = 0;
  std::uint64_t stream_id = 0;
  std::map<std::string, std::string> params;
  std::map<std::string, double> scalars;  // scientific fields
  bool failed = false;
  std::string error;
  double wall_time_s = 0.0;
};

/// Runs `fn` for trials 0..trials-1 on a bounded worker pool; trial t uses
/// stream_id = t. Results are keyed by trial index, so the output is
/// identical for any parallelism degree. A throwing trial is recorded as
/// failed, never aborting the sweep.
std::vector<TrialRecord> run_trials(
    const ExperimentConfig& config,
    const std::function<TrialRecord(const ExperimentConfig&, int trial)>& fn);

/// CSV with a header and stable column order (fixed fields, then scalar keys
/// sorted); numbers at full round-trip precision.
std::string to_csv(const std::vector<TrialRecord>& records);
/// JSON array of records, numbers at full round-trip precision.
std::string to_json(const std::vector<TrialRecord>& records);

/// Emits in the config's format to its out path ("" or "-" for stdout).
void emit(const std::vector<TrialRecord>& records, const ExperimentConfig& config);

/// Plain-text config: `key = value` lines, `[section]` headers prefixing
/// keys as "section.key", '#' comments. Later keys win.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Full-precision decimal rendering that parses back to the same double.
std::string format_double(double value);

}  // namespace lab::harness
