// Command-line front end for the ESM-ICP shared library. Talks to the
// core exclusively through the C API in esmicp.h.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "esmicp.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitSolver = 3;

struct CliError {
  int exit_code;
  std::string message;
};

int exit_code_for(esmicp_status status) {
  switch (status) {
    case ESMICP_OK: return kExitOk;
    case ESMICP_ERROR_IO:
    case ESMICP_ERROR_PARSE: return kExitIo;
    case ESMICP_ERROR_SOLVER: return kExitSolver;
    default: return kExitUsage;
  }
}

void check(esmicp_status status, const std::string& context) {
  if (status == ESMICP_OK) return;
  throw CliError{exit_code_for(status), context + ": " + esmicp_last_error()};
}

struct CloudDeleter {
  void operator()(esmicp_cloud* c) const { esmicp_cloud_destroy(c); }
};
struct ResultDeleter {
  void operator()(esmicp_result* r) const { esmicp_result_destroy(r); }
};
using CloudPtr = std::unique_ptr<esmicp_cloud, CloudDeleter>;
using ResultPtr = std::unique_ptr<esmicp_result, ResultDeleter>;

CloudPtr load_cloud(const std::string& path) {
  esmicp_cloud* raw = nullptr;
  check(esmicp_cloud_load(path.c_str(), nullptr, &raw), "loading " + path);
  return CloudPtr(raw);
}

std::string format_g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_transform_file(const std::string& path, const double m[16]) {
  std::ofstream out(path);
  if (!out) throw CliError{kExitIo, "cannot open " + path + " for writing"};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (j) out << ' ';
      out << format_g17(m[4 * i + j]);
    }
    out << '\n';
  }
  if (!out) throw CliError{kExitIo, "write failed for " + path};
}

void read_transform_file(const std::string& path, double m[16]) {
  std::ifstream in(path);
  if (!in) throw CliError{kExitIo, "cannot open " + path};
  for (int i = 0; i < 16; ++i) {
    if (!(in >> m[i])) throw CliError{kExitIo, "expected 16 numbers in " + path};
  }
}

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

// splitmix64 on master + golden-ratio-stepped trial index; parallel and
// serial runs derive identical per-trial seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

struct NoiseOptions {
  double fraction = 0.0;
  std::string mixture;  // "std,lo,hi[;std,lo,hi...]", empty = paper defaults
};

std::vector<esmicp_noise_component> parse_mixture(const std::string& text) {
  std::vector<esmicp_noise_component> components;
  std::stringstream stream(text);
  std::string part;
  while (std::getline(stream, part, ';')) {
    esmicp_noise_component c{};
    if (std::sscanf(part.c_str(), "%lf,%lf,%lf", &c.scale, &c.clip_lo, &c.clip_hi) != 3) {
      throw CliError{kExitUsage, "bad --noise component '" + part +
                                     "' (expected std,lo,hi)"};
    }
    components.push_back(c);
  }
  if (components.empty()) {
    throw CliError{kExitUsage, "--noise must list at least one component"};
  }
  return components;
}

json noise_json(const std::vector<esmicp_noise_component>& components, double fraction) {
  json list = json::array();
  for (const auto& c : components) {
    list.push_back({{"std", c.scale}, {"clip_lo", c.clip_lo}, {"clip_hi", c.clip_hi}});
  }
  return {{"fraction", fraction}, {"components", list}};
}

struct RegisterOptions {
  std::string source_path;
  std::string target_path;
  std::string ground_truth_path;
  std::string out_dir = ".";
  esmicp_config config{};
  bool snapshots = false;
};

json config_json(const esmicp_config& c) {
  return {{"sigma", c.sigma},
          {"mode", c.mode == ESMICP_MODE_CLASSIC ? "classic" : "esm"},
          {"covariance_form",
           c.covariance_form == ESMICP_COVARIANCE_DIRECTED ? "directed" : "matrix"},
          {"max_iters", c.max_iterations},
          {"eps_error", c.eps_error},
          {"eps_transform", c.eps_transform},
          {"normalize_weights", c.normalize_weights != 0},
          {"prealign", c.centroid_prealign != 0},
          {"snapshots", c.record_snapshots != 0},
          {"similarity_collision_policy", "last-writer-wins"}};
}

const char* termination_string(int t) {
  switch (t) {
    case ESMICP_TERMINATED_ERROR: return "converged_error";
    case ESMICP_TERMINATED_TRANSFORM: return "converged_transform";
    default: return "max_iterations";
  }
}

json transform_json(const double m[16]) {
  json rows = json::array();
  for (int i = 0; i < 4; ++i) {
    rows.push_back({m[4 * i], m[4 * i + 1], m[4 * i + 2], m[4 * i + 3]});
  }
  return rows;
}

void write_json_file(const std::string& path, const json& value) {
  std::ofstream out(path);
  if (!out) throw CliError{kExitIo, "cannot open " + path + " for writing"};
  out << value.dump(2) << '\n';
  if (!out) throw CliError{kExitIo, "write failed for " + path};
}

void add_register_flags(CLI::App* cmd, esmicp_config& config, bool& snapshots) {
  esmicp_config_defaults(&config);
  cmd->add_option("--sigma", config.sigma, "Gaussian kernel scale (model units)");
  cmd->add_option("--max-iters", config.max_iterations, "iteration cap");
  cmd->add_option("--eps-error", config.eps_error, "stop when |E_k - E_{k-1}| drops below");
  cmd->add_option("--eps-transform", config.eps_transform,
                  "stop when the incremental transform is this close to identity");
  cmd->add_option_function<std::string>(
         "--mode",
         [&config](const std::string& v) {
           config.mode = v == "classic" ? ESMICP_MODE_CLASSIC : ESMICP_MODE_ESM;
         },
         "esm | classic")
      ->check(CLI::IsMember({"esm", "classic"}));
  cmd->add_option_function<std::string>(
         "--covariance",
         [&config](const std::string& v) {
           config.covariance_form = v == "directed" ? ESMICP_COVARIANCE_DIRECTED
                                                    : ESMICP_COVARIANCE_MATRIX;
         },
         "matrix | directed cross-covariance assembly")
      ->check(CLI::IsMember({"matrix", "directed"}));
  cmd->add_option_function<std::string>(
         "--normalize-weights",
         [&config](const std::string& v) { config.normalize_weights = v == "on"; },
         "on | off")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option_function<std::string>(
         "--prealign",
         [&config](const std::string& v) { config.centroid_prealign = v == "on"; },
         "on | off centroid pre-alignment")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_flag("--snapshots", snapshots, "write per-iteration similarity heatmaps");
}

int run_register(const RegisterOptions& opt) {
  std::filesystem::create_directories(opt.out_dir);
  CloudPtr source = load_cloud(opt.source_path);
  CloudPtr target = load_cloud(opt.target_path);

  esmicp_config config = opt.config;
  config.record_snapshots = opt.snapshots ? 1 : 0;

  esmicp_result* raw = nullptr;
  check(esmicp_register(source.get(), target.get(), &config, &raw), "register");
  ResultPtr result(raw);

  double final_transform[16];
  check(esmicp_result_transform(result.get(), final_transform), "register");

  const std::string transform_path = opt.out_dir + "/transform.txt";
  write_transform_file(transform_path, final_transform);
  check(esmicp_result_write_trace_csv(result.get(), (opt.out_dir + "/trace.csv").c_str()),
        "writing trace");
  if (opt.snapshots) {
    check(esmicp_result_write_snapshots(result.get(), opt.out_dir.c_str()),
          "writing snapshots");
  }

  json meta = {{"tool", "esmicp"},
               {"version", esmicp_version()},
               {"command", "register"},
               {"timestamp", timestamp_utc()},
               {"source", opt.source_path},
               {"target", opt.target_path},
               {"config", config_json(config)},
               {"iterations", esmicp_result_iterations(result.get())},
               {"termination",
                termination_string(esmicp_result_termination(result.get()))},
               {"transform", transform_json(final_transform)}};

  double rmse = 0.0;
  check(esmicp_correspondence_rmse(source.get(), target.get(), final_transform, &rmse),
        "correspondence rmse");
  meta["correspondence_rmse"] = rmse;

  if (!opt.ground_truth_path.empty()) {
    double gt[16];
    read_transform_file(opt.ground_truth_path, gt);
    double mse_r, rmse_r, mae_r, mse_t, rmse_t, mae_t;
    check(esmicp_rotation_error(final_transform, gt, &mse_r, &rmse_r, &mae_r),
          "rotation error");
    check(esmicp_translation_error(final_transform, gt, &mse_t, &rmse_t, &mae_t),
          "translation error");
    meta["ground_truth"] = opt.ground_truth_path;
    meta["error"] = {{"mse_r", mse_r}, {"rmse_r", rmse_r}, {"mae_r", mae_r},
                     {"mse_t", mse_t}, {"rmse_t", rmse_t}, {"mae_t", mae_t}};
  }

  write_json_file(opt.out_dir + "/run.json", meta);

  std::cout << "registered " << opt.source_path << " -> " << opt.target_path << " in "
            << esmicp_result_iterations(result.get()) << " iterations ("
            << termination_string(esmicp_result_termination(result.get()))
            << "), correspondence rmse " << rmse << "\n"
            << "transform written to " << transform_path << "\n";
  return kExitOk;
}

struct SynthOptions {
  std::string target_path;
  std::string out_dir = ".";
  double rot_range[2] = {-M_PI, M_PI};
  double trans_range[2] = {-1.0, 1.0};
  NoiseOptions noise;
  std::uint64_t seed = 0;
};

struct SynthArtifacts {
  CloudPtr source;
  double ground_truth[16];  // maps source onto target
  double sampled[16];       // applied to the target to make the source
  std::vector<std::size_t> corrupted;
};

// Samples a transform, applies it to the target cloud to produce the
// source, then corrupts the requested fraction. The ground truth is the
// inverse of the sampled transform: the map taking the source back onto
// the target, which is what register estimates.
SynthArtifacts synthesize(const esmicp_cloud* target, const SynthOptions& opt,
                          const std::vector<esmicp_noise_component>& components) {
  SynthArtifacts art;
  check(esmicp_sample_transform(opt.seed, opt.rot_range[0], opt.rot_range[1],
                                opt.trans_range[0], opt.trans_range[1], art.sampled),
        "sampling transform");
  check(esmicp_invert_transform(art.sampled, art.ground_truth), "inverting transform");

  esmicp_cloud* moved = nullptr;
  check(esmicp_cloud_transform(target, art.sampled, &moved), "applying transform");
  art.source = CloudPtr(moved);

  if (opt.noise.fraction > 0.0) {
    esmicp_noise_spec spec{};
    spec.fraction = opt.noise.fraction;
    spec.components = components.data();
    spec.component_count = components.size();
    spec.seed = derive_seed(opt.seed, 0x6e6f697365ULL);  // decorrelate from sampling
    esmicp_cloud* corrupted = nullptr;
    size_t* indices = nullptr;
    size_t count = 0;
    check(esmicp_cloud_corrupt(art.source.get(), &spec, &corrupted, &indices, &count),
          "corrupting source");
    art.source = CloudPtr(corrupted);
    art.corrupted.assign(indices, indices + count);
    esmicp_indices_destroy(indices);
  }
  return art;
}

int run_synth(const SynthOptions& opt) {
  std::filesystem::create_directories(opt.out_dir);
  CloudPtr target = load_cloud(opt.target_path);
  const std::vector<esmicp_noise_component> components =
      opt.noise.mixture.empty()
          ? std::vector<esmicp_noise_component>{{0.01, -0.05, 0.05},
                                                {0.04, -1.0, 1.0},
                                                {0.1, -10.0, 10.0}}
          : parse_mixture(opt.noise.mixture);

  SynthArtifacts art = synthesize(target.get(), opt, components);

  const std::string source_path = opt.out_dir + "/source.pcd";
  check(esmicp_cloud_save(art.source.get(), source_path.c_str(), nullptr),
        "writing " + source_path);
  write_transform_file(opt.out_dir + "/ground_truth.txt", art.ground_truth);

  std::ofstream indices_out(opt.out_dir + "/corrupted_indices.txt");
  if (!indices_out) throw CliError{kExitIo, "cannot open corrupted_indices.txt"};
  for (std::size_t idx : art.corrupted) indices_out << idx << '\n';

  json meta = {{"tool", "esmicp"},
               {"version", esmicp_version()},
               {"command", "synth"},
               {"timestamp", timestamp_utc()},
               {"target", opt.target_path},
               {"seed", opt.seed},
               {"rot_range", {opt.rot_range[0], opt.rot_range[1]}},
               {"trans_range", {opt.trans_range[0], opt.trans_range[1]}},
               {"noise", noise_json(components, opt.noise.fraction)},
               {"sampled_transform", transform_json(art.sampled)},
               {"ground_truth", transform_json(art.ground_truth)},
               {"corrupted_count", art.corrupted.size()}};
  write_json_file(opt.out_dir + "/run.json", meta);

  std::cout << "source written to " << source_path << " (" << art.corrupted.size()
            << " corrupted points), ground truth to " << opt.out_dir
            << "/ground_truth.txt\n";
  return kExitOk;
}

struct BenchOptions {
  std::string target_path;
  std::string out_dir = ".";
  int trials = 100;
  double rot_range[2] = {-M_PI, M_PI};
  double trans_range[2] = {-1.0, 1.0};
  NoiseOptions noise;
  std::uint64_t seed = 0;
  int jobs = 1;
  esmicp_config config{};
};

struct TrialOutcome {
  bool solver_failed = false;
  std::string failure;
  double mse_r = 0, rmse_r = 0, mae_r = 0;
  double mse_t = 0, rmse_t = 0, mae_t = 0;
  int iterations = 0;
  int termination = ESMICP_TERMINATED_MAX_ITERATIONS;
};

TrialOutcome run_trial(const esmicp_cloud* target, const BenchOptions& opt,
                       const std::vector<esmicp_noise_component>& components,
                       std::uint64_t trial_seed) {
  TrialOutcome out;
  SynthOptions synth_opt;
  synth_opt.rot_range[0] = opt.rot_range[0];
  synth_opt.rot_range[1] = opt.rot_range[1];
  synth_opt.trans_range[0] = opt.trans_range[0];
  synth_opt.trans_range[1] = opt.trans_range[1];
  synth_opt.noise = opt.noise;
  synth_opt.seed = trial_seed;

  try {
    SynthArtifacts art = synthesize(target, synth_opt, components);

    esmicp_result* raw = nullptr;
    check(esmicp_register(art.source.get(), target, &opt.config, &raw), "register");
    ResultPtr result(raw);

    double estimated[16];
    check(esmicp_result_transform(result.get(), estimated), "trial transform");
    check(esmicp_rotation_error(estimated, art.ground_truth, &out.mse_r, &out.rmse_r,
                                &out.mae_r),
          "trial rotation error");
    check(esmicp_translation_error(estimated, art.ground_truth, &out.mse_t, &out.rmse_t,
                                   &out.mae_t),
          "trial translation error");
    out.iterations = static_cast<int>(esmicp_result_iterations(result.get()));
    out.termination = esmicp_result_termination(result.get());
  } catch (const CliError& e) {
    out.solver_failed = true;
    out.failure = e.message;
  }
  return out;
}

int run_bench(const BenchOptions& opt) {
  std::filesystem::create_directories(opt.out_dir);
  CloudPtr target = load_cloud(opt.target_path);
  const std::vector<esmicp_noise_component> components =
      opt.noise.mixture.empty()
          ? std::vector<esmicp_noise_component>{{0.01, -0.05, 0.05},
                                                {0.04, -1.0, 1.0},
                                                {0.1, -10.0, 10.0}}
          : parse_mixture(opt.noise.mixture);

  const int trials = opt.trials;
  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(std::max(trials, 0)));

  const int jobs = std::max(1, opt.jobs);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= trials) return;
      outcomes[static_cast<std::size_t>(i)] =
          run_trial(target.get(), opt, components,
                    derive_seed(opt.seed, static_cast<std::uint64_t>(i)));
    }
  };
  if (jobs == 1 || trials <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(jobs));
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  // CSV rows.
  const std::string csv_path = opt.out_dir + "/bench.csv";
  std::ofstream csv(csv_path);
  if (!csv) throw CliError{kExitIo, "cannot open " + csv_path};
  csv << "trial,seed,status,mse_r,rmse_r,mae_r,mse_t,rmse_t,mae_t,iterations,"
         "termination\n";
  csv.precision(17);
  int converged = 0;
  int failed = 0;
  double sums[6] = {0, 0, 0, 0, 0, 0};
  for (int i = 0; i < trials; ++i) {
    const TrialOutcome& t = outcomes[static_cast<std::size_t>(i)];
    csv << i << ',' << derive_seed(opt.seed, static_cast<std::uint64_t>(i)) << ','
        << (t.solver_failed ? "failed" : "ok") << ',' << t.mse_r << ',' << t.rmse_r
        << ',' << t.mae_r << ',' << t.mse_t << ',' << t.rmse_t << ',' << t.mae_t << ','
        << t.iterations << ',' << termination_string(t.termination) << '\n';
    if (t.solver_failed) {
      ++failed;
      continue;
    }
    if (t.termination != ESMICP_TERMINATED_MAX_ITERATIONS) ++converged;
    sums[0] += t.mse_r;
    sums[1] += t.rmse_r;
    sums[2] += t.mae_r;
    sums[3] += t.mse_t;
    sums[4] += t.rmse_t;
    sums[5] += t.mae_t;
  }
  if (!csv) throw CliError{kExitIo, "write failed for " + csv_path};

  const int completed = trials - failed;
  json aggregate;
  if (trials > 0 && completed > 0) {
    const double n = completed;
    aggregate = {{"mean_mse_r", sums[0] / n},   {"mean_rmse_r", sums[1] / n},
                 {"mean_mae_r", sums[2] / n},   {"mean_mse_t", sums[3] / n},
                 {"mean_rmse_t", sums[4] / n},  {"mean_mae_t", sums[5] / n}};
  } else {
    aggregate = nullptr;
  }

  json report = {{"tool", "esmicp"},
                 {"version", esmicp_version()},
                 {"command", "bench"},
                 {"timestamp", timestamp_utc()},
                 {"target", opt.target_path},
                 {"trials", trials},
                 {"seed", opt.seed},
                 {"jobs", jobs},
                 {"rot_range", {opt.rot_range[0], opt.rot_range[1]}},
                 {"trans_range", {opt.trans_range[0], opt.trans_range[1]}},
                 {"noise", noise_json(components, opt.noise.fraction)},
                 {"config", config_json(opt.config)},
                 {"failed_trials", failed},
                 {"aggregate", aggregate}};
  if (trials > 0) {
    report["success_rate"] = static_cast<double>(converged) / trials;
  } else {
    report["success_rate"] = "n/a";
  }
  write_json_file(opt.out_dir + "/bench.json", report);

  std::cout << "bench: " << trials << " trials";
  if (trials > 0) {
    std::cout << ", success rate " << (static_cast<double>(converged) / trials);
    if (completed > 0) {
      std::cout << ", mean rotation rmse " << sums[1] / completed
                << ", mean translation rmse " << sums[4] / completed;
    }
  }
  std::cout << "\nreport written to " << opt.out_dir << "/bench.json\n";
  return kExitOk;
}

int run_downsample(const std::string& input, double leaf, const std::string& output) {
  CloudPtr cloud = load_cloud(input);
  esmicp_cloud* raw = nullptr;
  check(esmicp_cloud_downsample(cloud.get(), leaf, &raw), "downsampling");
  CloudPtr filtered(raw);
  check(esmicp_cloud_save(filtered.get(), output.c_str(), nullptr),
        "writing " + output);
  std::cout << esmicp_cloud_size(cloud.get()) << " -> "
            << esmicp_cloud_size(filtered.get()) << " points, written to " << output
            << "\n";
  return kExitOk;
}

int run_convert(const std::string& input, const std::string& output) {
  CloudPtr cloud = load_cloud(input);
  check(esmicp_cloud_save(cloud.get(), output.c_str(), nullptr), "writing " + output);
  std::cout << esmicp_cloud_size(cloud.get()) << " points converted to " << output
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ESM-ICP point-set registration toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", esmicp_version());

  RegisterOptions reg;
  CLI::App* cmd_register =
      app.add_subcommand("register", "align a source cloud onto a target cloud");
  cmd_register->add_option("source", reg.source_path, "source cloud file")->required();
  cmd_register->add_option("target", reg.target_path, "target cloud file")->required();
  add_register_flags(cmd_register, reg.config, reg.snapshots);
  cmd_register->add_option("--ground-truth", reg.ground_truth_path,
                           "transform file to score against");
  cmd_register->add_option("--out", reg.out_dir, "output directory");

  SynthOptions synth;
  CLI::App* cmd_synth = app.add_subcommand(
      "synth", "generate a transformed (optionally corrupted) source from a target");
  cmd_synth->add_option("target", synth.target_path, "target cloud file")->required();
  cmd_synth->add_option("--rot-range", synth.rot_range, "Euler angle range (radians)")
      ->expected(2);
  cmd_synth->add_option("--trans-range", synth.trans_range, "translation range")
      ->expected(2);
  cmd_synth->add_option("--fraction", synth.noise.fraction,
                        "fraction of points to corrupt");
  cmd_synth->add_option("--noise", synth.noise.mixture,
                        "mixture components std,lo,hi[;std,lo,hi...]");
  cmd_synth->add_option("--seed", synth.seed, "random seed");
  cmd_synth->add_option("--out", synth.out_dir, "output directory");

  BenchOptions bench;
  bool bench_snapshots = false;
  CLI::App* cmd_bench =
      app.add_subcommand("bench", "run repeated synth+register+metrics trials");
  cmd_bench->add_option("target", bench.target_path, "target cloud file")->required();
  cmd_bench->add_option("--trials", bench.trials, "number of trials")
      ->check(CLI::NonNegativeNumber);
  cmd_bench->add_option("--rot-range", bench.rot_range, "Euler angle range (radians)")
      ->expected(2);
  cmd_bench->add_option("--trans-range", bench.trans_range, "translation range")
      ->expected(2);
  cmd_bench->add_option("--fraction", bench.noise.fraction,
                        "fraction of points to corrupt");
  cmd_bench->add_option("--noise", bench.noise.mixture,
                        "mixture components std,lo,hi[;std,lo,hi...]");
  cmd_bench->add_option("--seed", bench.seed, "master seed");
  cmd_bench->add_option("--jobs", bench.jobs, "worker threads");
  cmd_bench->add_option("--out", bench.out_dir, "output directory");
  add_register_flags(cmd_bench, bench.config, bench_snapshots);

  std::string ds_input, ds_output;
  double ds_leaf = 0.01;
  CLI::App* cmd_downsample =
      app.add_subcommand("downsample", "voxel-grid downsample a cloud");
  cmd_downsample->add_option("input", ds_input, "input cloud file")->required();
  cmd_downsample->add_option("leaf", ds_leaf, "voxel edge length")->required();
  cmd_downsample->add_option("output", ds_output, "output cloud file")->required();

  std::string cv_input, cv_output;
  CLI::App* cmd_convert =
      app.add_subcommand("convert", "convert between pcd/off/xyz formats");
  cmd_convert->add_option("input", cv_input, "input cloud file")->required();
  cmd_convert->add_option("output", cv_output, "output cloud file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (cmd_register->parsed()) return run_register(reg);
    if (cmd_synth->parsed()) return run_synth(synth);
    if (cmd_bench->parsed()) {
      bench.config.record_snapshots = 0;
      return run_bench(bench);
    }
    if (cmd_downsample->parsed()) return run_downsample(ds_input, ds_leaf, ds_output);
    if (cmd_convert->parsed()) return run_convert(cv_input, cv_output);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.exit_code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
