#include "lab/harness.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace lab::harness {

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::vector<TrialRecord> run_trials(
    const ExperimentConfig& config,
    const std::function<TrialRecord(const ExperimentConfig&, int trial)>& fn) {
  const int trials = config.trials;
  std::vector<TrialRecord> records(trials);
  std::atomic<int> next{0};
  const int workers = std::max(1, std::min(config.jobs, trials));

  auto work = [&] {
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= trials) return;
      const auto start = std::chrono::steady_clock::now();
      TrialRecord record;
      try {
        record = fn(config, t);
      } catch (const std::exception& e) {
        record.failed = true;
        record.error = e.what();
      }
      record.experiment = config.experiment;
      record.trial = t;
      record.stream_id = static_cast<std::uint64_t>(t);
      record.params = config.params;
      record.wall_time_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
              .count();
      records[t] = std::move(record);
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return records;
}

namespace {

std::vector<std::string> scalar_columns(const std::vector<TrialRecord>& records) {
  std::set<std::string> keys;
  for (const TrialRecord& r : records)
    for (const auto& [k, v] : r.scalars) keys.insert(k);
  return {keys.begin(), keys.end()};
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_csv(const std::vector<TrialRecord>& records) {
  const std::vector<std::string> columns = scalar_columns(records);
  std::ostringstream out;
  out << "experiment,trial,stream_id,params,failed,error";
  for (const auto& c : columns) out << ',' << c;
  out << '\n';
  for (const TrialRecord& r : records) {
    std::string params;
    for (const auto& [k, v] : r.params) {
      if (!params.empty()) params += ';';
      params += k + "=" + v;
    }
    out << csv_escape(r.experiment) << ',' << r.trial << ',' << r.stream_id
        << ',' << csv_escape(params) << ',' << (r.failed ? 1 : 0) << ','
        << csv_escape(r.error);
    for (const auto& c : columns) {
      out << ',';
      const auto it = r.scalars.find(c);
      if (it != r.scalars.end()) out << format_double(it->second);
    }
    out << '\n';
  }
  return out.str();
}

std::string to_json(const std::vector<TrialRecord>& records) {
  nlohmann::json arr = nlohmann::json::array();
  for (const TrialRecord& r : records) {
    nlohmann::json rec;
    rec["experiment"] = r.experiment;
    rec["trial"] = r.trial;
    rec["stream_id"] = r.stream_id;
    rec["params"] = r.params;
    rec["failed"] = r.failed;
    if (r.failed) rec["error"] = r.error;
    rec["scalars"] = r.scalars;
    rec["wall_time_s"] = r.wall_time_s;
    arr.push_back(std::move(rec));
  }
  return arr.dump(2);
}

void emit(const std::vector<TrialRecord>& records, const ExperimentConfig& config) {
  std::string payload;
  if (config.format == "csv") {
    payload = to_csv(records);
  } else if (config.format == "json") {
    payload = to_json(records);
  } else {
    throw std::invalid_argument("emit: unknown format '" + config.format + "'");
  }
  if (config.out_path.empty() || config.out_path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream file(config.out_path);
  if (!file) throw std::runtime_error("emit: cannot write '" + config.out_path + "'");
  file << payload;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("config: cannot read '" + path + "'");
  std::map<std::string, std::string> out;
  std::string line, section;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    const auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(file, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config: expected key=value, got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    out[key] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace lab::harness
