#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lab/discrepancy.hpp"
#include "lab/ellipsoid.hpp"
#include "lab/harness.hpp"
#include "lab/kikuchi.hpp"
#include "lab/kuramoto.hpp"
#include "lab/multifreq.hpp"
#include "lab/sk.hpp"

namespace {

using lab::RngStream;
using lab::harness::ExperimentConfig;
using lab::harness::TrialRecord;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) parts.push_back(part);
  return parts;
}

double parse_num(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> grid;
  for (const std::string& p : split(s, ',')) grid.push_back(parse_num(p));
  return grid;
}

lab::disc::IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read matrix file '" + path + "'");
  int rows = 0, cols = 0;
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0)
    throw std::runtime_error("matrix file '" + path + "': bad header");
  lab::disc::IntMatrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!(in >> a(i, j)))
        throw std::runtime_error("matrix file '" + path + "': short read");
  return a;
}

lab::kuramoto::Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read graph file '" + path + "'");
  struct Edge {
    int i, j;
    double w;
  };
  std::vector<Edge> edges;
  int max_node = -1;
  int i, j;
  double w;
  while (in >> i >> j >> w) {
    if (i < 0 || j < 0) throw std::runtime_error("graph file: negative node id");
    edges.push_back({i, j, w});
    max_node = std::max(max_node, std::max(i, j));
  }
  if (max_node < 0) throw std::runtime_error("graph file '" + path + "' is empty");
  lab::Matrix weights = lab::Matrix::Zero(max_node + 1, max_node + 1);
  for (const Edge& e : edges) {
    weights(e.i, e.j) = e.w;
    weights(e.j, e.i) = e.w;
  }
  weights.diagonal().setZero();
  return lab::kuramoto::Graph(weights);
}

int emit_and_report(std::vector<TrialRecord> records, const ExperimentConfig& cfg) {
  lab::harness::emit(records, cfg);
  for (const TrialRecord& r : records)
    if (r.failed) return 3;
  return 0;
}

TrialRecord base_record(const ExperimentConfig& cfg, int trial) {
  TrialRecord rec;
  rec.experiment = cfg.experiment;
  rec.trial = trial;
  rec.stream_id = static_cast<std::uint64_t>(trial);
  rec.params = cfg.params;
  return rec;
}

int run_disc(ExperimentConfig cfg, const std::string& matrix_spec,
             const std::string& mode, std::uint64_t budget) {
  cfg.params["matrix"] = matrix_spec;
  cfg.params["mode"] = mode;

  const bool random_source = matrix_spec.rfind("random:", 0) == 0;
  lab::disc::IntMatrix fixed;
  if (matrix_spec.rfind("hadamard:", 0) == 0) {
    fixed = lab::disc::sylvester_hadamard(std::stoi(matrix_spec.substr(9)));
  } else if (matrix_spec.rfind("file:", 0) == 0) {
    fixed = read_matrix_file(matrix_spec.substr(5));
  } else if (!random_source) {
    fixed = read_matrix_file(matrix_spec);
  }

  std::vector<TrialRecord> records;
  for (int t = 0; t < cfg.trials; ++t) {
    TrialRecord rec = base_record(cfg, t);
    try {
      RngStream rng(cfg.master_seed, rec.stream_id);
      lab::disc::IntMatrix a = fixed;
      if (random_source) {
        const int n = std::stoi(matrix_spec.substr(7));
        a.resize(n, n);
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < n; ++c) a(r, c) = (rng.next_u64() & 1) ? 1 : -1;
      }
      lab::disc::ColoringCertificate cert;
      if (mode == "exact") {
        cert = lab::disc::disc_exact(a, budget);
      } else {
        cert = lab::disc::disc_heuristic(a, 32, rng);
      }
      std::string coloring;
      for (const int s : cert.x) coloring += s > 0 ? '+' : '-';
      rec.params["coloring"] = coloring;
      rec.scalars["value"] = static_cast<double>(cert.value);
      rec.scalars["exact"] = cert.exact ? 1.0 : 0.0;
      rec.scalars["nodes_explored"] = static_cast<double>(cert.nodes_explored);
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.error = e.what();
    }
    records.push_back(std::move(rec));
  }
  return emit_and_report(std::move(records), cfg);
}

lab::kuramoto::Graph make_graph(const std::string& spec, RngStream& rng) {
  if (spec.rfind("file:", 0) == 0) return read_graph_file(spec.substr(5));
  const auto head = split(spec, ':');
  if (head.size() != 2) throw std::invalid_argument("bad graph spec '" + spec + "'");
  const auto args = split(head[1], ',');
  if (head[0] == "er" && args.size() == 2)
    return lab::kuramoto::gen_erdos_renyi(std::stoi(args[0]), parse_num(args[1]), rng);
  if (head[0] == "reg" && args.size() == 2)
    return lab::kuramoto::gen_random_regular(std::stoi(args[0]), std::stoi(args[1]), rng);
  if (head[0] == "signed" && args.size() == 2)
    return lab::kuramoto::gen_signed_delta(std::stoi(args[0]), parse_num(args[1]), rng);
  throw std::invalid_argument("bad graph spec '" + spec + "'");
}

int run_sync(ExperimentConfig cfg, const std::string& graph_spec, double tol_hess) {
  cfg.params["graph"] = graph_spec;
  RngStream graph_rng(cfg.master_seed, 0);
  const lab::kuramoto::Graph graph = make_graph(graph_spec, graph_rng);

  const auto records = lab::harness::run_trials(cfg, [&](const ExperimentConfig& c,
                                                         int trial) {
    TrialRecord rec;
    RngStream rng(c.master_seed, static_cast<std::uint64_t>(trial) + 1);
    lab::Vector theta(graph.size());
    for (int i = 0; i < graph.size(); ++i)
      theta(i) = 2.0 * 3.14159265358979323846 * rng.uniform();
    const lab::kuramoto::DescentResult res =
        lab::kuramoto::descend(graph, lab::kuramoto::PhaseState(theta));
    const lab::kuramoto::CriticalityReport rep =
        lab::kuramoto::certify_critical(graph, res.state, 1e-7, tol_hess);
    rec.scalars["final_energy"] = res.final_energy;
    rec.scalars["iterations"] = static_cast<double>(res.iterations);
    rec.scalars["converged"] = res.converged ? 1.0 : 0.0;
    rec.scalars["grad_inf_norm"] = rep.grad_inf_norm;
    rec.scalars["synchronized"] =
        rep.classification == lab::kuramoto::Criticality::kSynchronizedGlobal ? 1.0
                                                                              : 0.0;
    rec.scalars["classification"] =
        static_cast<double>(static_cast<int>(rep.classification));
    rec.scalars["min_quotient_eig"] = rep.quotient_hessian_eigs.size() > 0
                                          ? rep.quotient_hessian_eigs.minCoeff()
                                          : 0.0;
    return rec;
  });
  return emit_and_report(records, cfg);
}

int run_ellipsoid(ExperimentConfig cfg, int d, const std::vector<double>& alpha_grid,
                  const std::string& efp_spec) {
  cfg.params["d"] = std::to_string(d);
  bool do_efp = false;
  lab::ellipsoid::EfpParams efp;
  if (!efp_spec.empty()) {
    const auto parts = split(efp_spec, ',');
    if (parts.size() != 2) throw std::invalid_argument("--efp expects eps,M");
    efp.epsilon = parse_num(parts[0]);
    efp.m = parse_num(parts[1]);
    do_efp = true;
  }

  RngStream root(cfg.master_seed, 0);
  std::vector<TrialRecord> records;
  int index = 0;
  for (std::size_t a = 0; a < alpha_grid.size(); ++a) {
    const double alpha = alpha_grid[a];
    const int n = std::max(1, static_cast<int>(std::lround(alpha * d * d)));
    for (int t = 0; t < cfg.trials; ++t, ++index) {
      TrialRecord rec = base_record(cfg, index);
      try {
        RngStream rng = root.substream(a * 1000003ULL + static_cast<std::uint64_t>(t));
        const lab::ellipsoid::PointCloud cloud = lab::ellipsoid::gen_points(d, n, rng);
        const lab::ellipsoid::FitStatus st = lab::ellipsoid::fit_sdp(cloud);
        rec.scalars["alpha"] = alpha;
        rec.scalars["n"] = static_cast<double>(n);
        rec.scalars["feasible"] =
            st.verdict == lab::ellipsoid::Verdict::kFeasible ? 1.0 : 0.0;
        rec.scalars["iterations"] = static_cast<double>(st.iterations);
        rec.scalars["min_eig"] = st.min_eig;
        rec.scalars["max_residual"] = st.max_residual;
        rec.params["verdict"] = lab::ellipsoid::to_string(st.verdict);
        if (do_efp && st.s.size() > 0)
          rec.scalars["efp_pass"] = lab::ellipsoid::efp_check(cloud, st.s, efp) ? 1.0 : 0.0;
      } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
      }
      records.push_back(std::move(rec));
    }
  }
  return emit_and_report(std::move(records), cfg);
}

int run_kikuchi(ExperimentConfig cfg, int n, int r, int ell,
                const std::vector<double>& lambda_grid, double pop_epsilon) {
  cfg.params["n"] = std::to_string(n);
  cfg.params["r"] = std::to_string(r);
  cfg.params["ell"] = std::to_string(ell);

  RngStream rng(cfg.master_seed, 0);
  const lab::kikuchi::ThresholdScan scan = lab::kikuchi::threshold_scan(
      n, r, ell, lambda_grid, cfg.trials, pop_epsilon, rng);

  std::vector<TrialRecord> records;
  int index = 0;
  for (const lab::kikuchi::ThresholdRow& row : scan.rows) {
    TrialRecord rec = base_record(cfg, index++);
    rec.scalars["lambda"] = row.lambda;
    rec.scalars["mean_lmax"] = row.mean_lmax;
    rec.scalars["std_lmax"] = row.std_lmax;
    rec.scalars["pop_flag"] = row.pop_flag ? 1.0 : 0.0;
    records.push_back(std::move(rec));
  }
  TrialRecord summary = base_record(cfg, index);
  summary.params["row"] = "summary";
  summary.scalars["found"] = scan.found ? 1.0 : 0.0;
  summary.scalars["lambda_natural"] = scan.lambda_natural;
  summary.scalars["grid_spacing"] = scan.grid_spacing;
  summary.scalars["scaled_threshold"] = scan.scaled_threshold;
  records.push_back(std::move(summary));
  return emit_and_report(std::move(records), cfg);
}

lab::Vector parse_field(const std::string& spec, int n) {
  if (spec.rfind("const:", 0) == 0)
    return lab::Vector::Constant(n, parse_num(spec.substr(6)));
  if (spec.rfind("file:", 0) == 0) {
    std::ifstream in(spec.substr(5));
    if (!in) throw std::runtime_error("cannot read field file '" + spec + "'");
    lab::Vector h(n);
    for (int i = 0; i < n; ++i)
      if (!(in >> h(i))) throw std::runtime_error("field file: short read");
    return h;
  }
  throw std::invalid_argument("bad field spec '" + spec + "'");
}

int run_sk(ExperimentConfig cfg, int n, double beta, const std::string& h_spec,
           const std::string& mode, std::int64_t steps, int record_every) {
  cfg.params["n"] = std::to_string(n);
  cfg.params["beta"] = lab::harness::format_double(beta);
  cfg.params["h"] = h_spec;
  cfg.params["mode"] = mode;

  RngStream rng(cfg.master_seed, 0);
  const lab::sk::SkInstance inst =
      lab::sk::sk_instance(n, beta, parse_field(h_spec, n), rng);

  std::vector<TrialRecord> records;
  if (mode == "exact") {
    TrialRecord rec = base_record(cfg, 0);
    try {
      const lab::sk::ExactKernel kernel = lab::sk::exact_kernel(inst);
      rec.scalars["spectral_gap"] = kernel.spectral_gap;
      rec.scalars["t_mix_0.25"] = static_cast<double>(kernel.t_mix(0.25));
      rec.scalars["t_mix_0.1"] = static_cast<double>(kernel.t_mix(0.1));
      rec.scalars["t_mix_0.01"] = static_cast<double>(kernel.t_mix(0.01));
      rec.scalars["dobrushin"] = lab::sk::dobrushin_check(inst.j) ? 1.0 : 0.0;
      rec.scalars["spectral_width"] =
          lab::sk::spectral_width_check(inst.j, 0.25) ? 1.0 : 0.0;
      rec.scalars["anari"] = lab::sk::anari_check(inst.j) ? 1.0 : 0.0;
    } catch (const std::exception& e) {
      rec.failed = true;
      rec.error = e.what();
    }
    records.push_back(std::move(rec));
  } else if (mode == "chain") {
    lab::sk::ChainOptions opts;
    opts.steps = steps;
    opts.record_every = record_every;
    opts.coupled = true;
    for (int t = 0; t < cfg.trials; ++t) {
      TrialRecord rec = base_record(cfg, t);
      try {
        RngStream crng(cfg.master_seed, static_cast<std::uint64_t>(t) + 1);
        const lab::sk::ChainDiagnostics diag =
            lab::sk::run_chain(inst, lab::sk::SpinState(n, 1), opts, crng);
        rec.scalars["flips"] = static_cast<double>(diag.flips);
        rec.scalars["coalescence_step"] = static_cast<double>(diag.coalescence_step);
        rec.scalars["final_energy"] =
            diag.energy_trace.empty() ? 0.0 : diag.energy_trace.back();
        rec.scalars["final_magnetization"] = diag.magnetization_trace.empty()
                                                 ? 0.0
                                                 : diag.magnetization_trace.back();
      } catch (const std::exception& e) {
        rec.failed = true;
        rec.error = e.what();
      }
      records.push_back(std::move(rec));
    }
  } else {
    throw std::invalid_argument("sk: unknown mode '" + mode + "'");
  }
  return emit_and_report(std::move(records), cfg);
}

int run_multifreq(ExperimentConfig cfg, int n, int num_freqs, double lambda,
                  const std::string& group_name) {
  cfg.params["n"] = std::to_string(n);
  cfg.params["L"] = std::to_string(num_freqs);
  cfg.params["lambda"] = lab::harness::format_double(lambda);
  cfg.params["group"] = group_name;

  const lab::multifreq::Group group = lab::multifreq::parse_group(group_name);
  RngStream rng(cfg.master_seed, 0);
  const lab::multifreq::DetectionReport report =
      lab::multifreq::detection_experiment(n, num_freqs, lambda, group, cfg.trials,
                                           rng);

  std::vector<TrialRecord> records;
  int index = 0;
  for (int t = 0; t < cfg.trials; ++t) {
    TrialRecord sig = base_record(cfg, index++);
    sig.params["label"] = "signal";
    sig.scalars["stat"] = report.signal_stats[t];
    sig.scalars["label"] = 1.0;
    records.push_back(std::move(sig));
    TrialRecord nul = base_record(cfg, index++);
    nul.params["label"] = "null";
    nul.scalars["stat"] = report.null_stats[t];
    nul.scalars["label"] = 0.0;
    records.push_back(std::move(nul));
  }
  TrialRecord summary = base_record(cfg, index);
  summary.params["label"] = "summary";
  summary.scalars["auc"] = report.auc;
  summary.scalars["power_at_5pct"] = report.power_at_5pct;
  records.push_back(std::move(summary));
  return emit_and_report(std::move(records), cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lab: seeded numerical experiments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value config file with [subcommand] sections");
  app.fallthrough();

  ExperimentConfig cfg;
  app.add_option("--seed", cfg.master_seed, "master seed")->capture_default_str();
  app.add_option("--trials", cfg.trials, "number of trials")->capture_default_str();
  app.add_option("--jobs", cfg.jobs, "parallel workers")->capture_default_str();
  app.add_option("--out", cfg.out_path, "output path, stdout when omitted");
  app.add_option("--format", cfg.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // disc
  auto* disc = app.add_subcommand("disc", "discrepancy of an integer matrix");
  std::string matrix_spec, disc_mode = "exact";
  std::uint64_t budget = UINT64_MAX;
  disc->add_option("--matrix", matrix_spec, "file path, hadamard:k, or random:n")
      ->required();
  disc->add_option("--mode", disc_mode, "exact or heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}));
  disc->add_option("--budget", budget, "node budget for the exact search");

  // sync
  auto* sync = app.add_subcommand("sync", "coupled-oscillator descent and certification");
  std::string graph_spec;
  double tol_hess = 1e-6;
  sync->add_option("--graph", graph_spec, "er:n,p, reg:n,d, signed:n,delta, or file:PATH")
      ->required();
  sync->add_option("--tol-hess", tol_hess, "degeneracy tolerance")->capture_default_str();

  // ellipsoid
  auto* ellip = app.add_subcommand("ellipsoid", "ellipsoid fitting feasibility scan");
  int ellip_d = 0;
  std::string alpha_grid_spec = "0.1,0.25,0.45";
  std::string efp_spec;
  ellip->add_option("--d", ellip_d, "ambient dimension")->required();
  ellip->add_option("--alpha-grid", alpha_grid_spec, "comma-separated n/d^2 values")
      ->capture_default_str();
  ellip->add_option("--efp", efp_spec, "relaxed check parameters eps,M");

  // kikuchi
  auto* kik = app.add_subcommand("kikuchi", "spiked tensor spectral threshold scan");
  int kik_n = 0, kik_r = 2, kik_ell = 1;
  std::string lambda_grid_spec = "0,0.5,1,1.5,2,2.5,3";
  double pop_epsilon = 0.05;
  kik->add_option("--n", kik_n, "tensor dimension")->required();
  kik->add_option("--r", kik_r, "tensor order (even)")->capture_default_str();
  kik->add_option("--ell", kik_ell, "subset size")->capture_default_str();
  kik->add_option("--lambda-grid", lambda_grid_spec, "ascending grid including 0")
      ->capture_default_str();
  kik->add_option("--pop-epsilon", pop_epsilon, "pop-out margin")->capture_default_str();

  // sk
  auto* sk = app.add_subcommand("sk", "Sherrington-Kirkpatrick Glauber dynamics");
  int sk_n = 0;
  double sk_beta = 0.1;
  std::string sk_h = "const:0", sk_mode = "exact";
  std::int64_t sk_steps = 10000;
  int sk_record_every = 1;
  sk->set_help_flag("--help", "print help");  // frees -h for the field flag
  sk->add_option("--n", sk_n, "number of spins")->required();
  sk->add_option("--beta", sk_beta, "inverse temperature")->capture_default_str();
  sk->add_option("--h", sk_h, "const:c or file:PATH")->capture_default_str();
  sk->add_option("--mode", sk_mode, "exact or chain")
      ->check(CLI::IsMember({"exact", "chain"}));
  sk->add_option("--steps", sk_steps, "chain steps")->capture_default_str();
  sk->add_option("--record-every", sk_record_every, "trace stride")
      ->capture_default_str();

  // multifreq
  auto* mf = app.add_subcommand("multifreq", "multi-frequency spiked detection");
  int mf_n = 0, mf_l = 1;
  double mf_lambda = 1.0;
  std::string mf_group = "u1";
  mf->add_option("--n", mf_n, "matrix dimension")->required();
  mf->add_option("--L", mf_l, "number of frequencies")->capture_default_str();
  mf->add_option("--lambda", mf_lambda, "signal strength")->capture_default_str();
  mf->add_option("--group", mf_group, "zL (order taken from --L) or u1")
      ->check(CLI::IsMember({"zL", "u1"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cfg.trials < 1) throw std::invalid_argument("--trials must be >= 1");
    if (cfg.jobs < 1) throw std::invalid_argument("--jobs must be >= 1");
    if (disc->parsed()) {
      cfg.experiment = "disc";
      return run_disc(cfg, matrix_spec, disc_mode, budget);
    }
    if (sync->parsed()) {
      cfg.experiment = "sync";
      return run_sync(cfg, graph_spec, tol_hess);
    }
    if (ellip->parsed()) {
      cfg.experiment = "ellipsoid";
      return run_ellipsoid(cfg, ellip_d, parse_grid(alpha_grid_spec), efp_spec);
    }
    if (kik->parsed()) {
      cfg.experiment = "kikuchi";
      return run_kikuchi(cfg, kik_n, kik_r, kik_ell, parse_grid(lambda_grid_spec),
                         pop_epsilon);
    }
    if (sk->parsed()) {
      cfg.experiment = "sk";
      return run_sk(cfg, sk_n, sk_beta, sk_h, sk_mode, sk_steps, sk_record_every);
    }
    if (mf->parsed()) {
      cfg.experiment = "multifreq";
      return run_multifreq(cfg, mf_n, mf_l, mf_lambda, mf_group);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
