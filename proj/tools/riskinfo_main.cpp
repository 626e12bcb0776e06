// riskinfo command line: config-driven experiments over the risk pipeline
// library. JSON in, JSON/CSV out, deterministic unless --timestamp is given.
//
// Exit codes: 0 success, 1 domain error (invalid distributions, infeasible
// design, solver failures), 2 usage or parse errors.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "riskinfo/capacity.hpp"
#include "riskinfo/collision.hpp"
#include "riskinfo/design.hpp"
#include "riskinfo/errors.hpp"
#include "riskinfo/measures.hpp"
#include "riskinfo/pipeline.hpp"
#include "riskinfo/refinement.hpp"
#include "riskinfo/serialization.hpp"

namespace {

using nlohmann::json;

constexpr const char* kToolName = "riskinfo";
constexpr const char* kToolVersion = "1.0.0";

struct OutputOptions {
  std::string out_path;  // empty: stdout
  bool timestamp = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("failed to parse " + path + ": " + e.what());
  }
}

// Reports carry the tool version and the resolved seed; all measures are in
// bits. Timestamps are opt-in so repeated runs stay byte-identical.
json report_envelope(std::uint64_t seed, bool timestamp) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["seed"] = seed;
  j["units"] = "bits";
  if (timestamp) {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%FT%TZ", std::gmtime(&t));
    j["timestamp"] = buf;
  }
  return j;
}

void emit(const OutputOptions& opts, const std::string& content) {
  if (opts.out_path.empty()) {
    std::cout << content;
  } else {
    riskinfo::atomic_write(opts.out_path, content);
  }
}

void emit_json(const OutputOptions& opts, const json& j) {
  emit(opts, j.dump(2) + "\n");
}

std::uint64_t resolve_seed(const CLI::Option* seed_opt, std::uint64_t seed) {
  if (seed_opt->count() == 0) {
    std::cerr << "warning: --seed not given, defaulting to 0\n";
    return 0;
  }
  return seed;
}

int run_measure(const std::string& input, const OutputOptions& opts) {
  const json doc = read_json_file(input);
  json report = report_envelope(0, opts.timestamp);
  if (doc.contains("probs")) {
    const auto d = riskinfo::distribution_from_json(doc);
    report["kind"] = "distribution";
    report["entropy_bits"] = riskinfo::entropy(d);
    report["alphabet_size"] = d.size();
  } else if (doc.contains("mass")) {
    const auto j = riskinfo::joint_from_json(doc);
    const auto [row, col] = riskinfo::marginals(j);
    report["kind"] = "joint";
    report["h_joint_bits"] = riskinfo::joint_entropy(j);
    report["h_row_bits"] = riskinfo::entropy(row);
    report["h_col_bits"] = riskinfo::entropy(col);
    report["h_col_given_row_bits"] = riskinfo::conditional_entropy(j);
    report["mi_bits"] = riskinfo::mutual_information(j);
  } else {
    riskinfo::throw_error(riskinfo::errc::length_mismatch,
                          "input is neither a distribution (probs) nor a joint (mass)");
  }
  emit_json(opts, report);
  return 0;
}

int run_simulate(const std::string& input, std::size_t horizon, std::uint64_t seed,
                 const OutputOptions& opts) {
  const auto pipeline = riskinfo::pipeline_from_json(read_json_file(input));
  const auto batch = riskinfo::simulate(pipeline, horizon, seed);
  std::ostringstream csv;
  batch.write_csv(csv);
  emit(opts, csv.str());
  return 0;
}

int run_capacity(const std::string& input, const std::string& input_law_path,
                 double tolerance, double epsilon, std::size_t max_iter,
                 const OutputOptions& opts) {
  const auto channel = riskinfo::channel_from_json(read_json_file(input));
  const auto result = riskinfo::blahut_arimoto(channel, tolerance, max_iter);
  json report = report_envelope(0, opts.timestamp);
  report.update(riskinfo::to_json(result));
  if (!input_law_path.empty()) {
    // How much of the capacity a concrete input design realizes.
    const auto law = riskinfo::distribution_from_json(read_json_file(input_law_path));
    const auto quality = riskinfo::variable_quality(law, channel, epsilon);
    report["input_law"] = json{{"i_xy_bits", quality.i_xy_bits},
                               {"h_x_bits", quality.h_x_bits},
                               {"capacity_gap_bits", quality.capacity_gap_bits},
                               {"degenerate", quality.degenerate},
                               {"epsilon", epsilon}};
  }
  emit_json(opts, report);
  if (!result.converged) {
    std::cerr << "capacity solve stopped at the iteration cap with gap "
              << result.gap_bits << " bits\n";
    return 1;
  }
  return 0;
}

int run_refine(const std::string& joint_path, const std::string& partition_path,
               const OutputOptions& opts) {
  const auto joint = riskinfo::joint_from_json(read_json_file(joint_path));
  const auto partition = riskinfo::partition_from_json(read_json_file(partition_path));
  const auto coarse = riskinfo::coarsen_joint(joint, partition);
  const auto gain = riskinfo::refinement_gain(joint, partition);

  json report = report_envelope(0, opts.timestamp);
  report["h_fine"] = riskinfo::entropy(riskinfo::marginals(joint).first);
  report["h_coarse"] = riskinfo::entropy(riskinfo::marginals(coarse).first);
  report["i_fine"] = riskinfo::mutual_information(joint);
  report["i_coarse"] = riskinfo::mutual_information(coarse);
  report["delta_h"] = gain.delta_h_bits;
  report["delta_i"] = gain.delta_i_bits;
  report["k"] = partition.block_count();
  emit_json(opts, report);
  return 0;
}

int run_design(const std::string& input, const OutputOptions& opts) {
  const auto problem = riskinfo::design_problem_from_json(read_json_file(input));
  const auto solution = riskinfo::design_search(problem);
  json report = report_envelope(0, opts.timestamp);
  report.update(riskinfo::to_json(solution));
  report["budget"] = problem.budget;
  report["h_target"] = problem.h_target_bits;
  emit_json(opts, report);
  if (!solution.feasible) {
    std::cerr << "design is infeasible: best subset reaches " << solution.h_x_bits
              << " bits against target " << problem.h_target_bits << "\n";
    return 1;
  }
  return 0;
}

int run_collision(const std::string& input, const OutputOptions& opts) {
  const auto grid = riskinfo::collision_grid_from_json(read_json_file(input));
  const auto result = riskinfo::collision_channel(grid);
  std::ostringstream csv;
  csv << "v1,v2,a1,a2,h2,r2,y,collision\n";
  for (std::size_t i = 0; i < result.cells.size(); ++i) {
    const auto& s = result.cells[i];
    csv << riskinfo::shortest_double_string(s.v1) << ','
        << riskinfo::shortest_double_string(s.v2) << ','
        << riskinfo::shortest_double_string(s.a1) << ','
        << riskinfo::shortest_double_string(s.a2) << ','
        << riskinfo::shortest_double_string(s.h2) << ','
        << riskinfo::shortest_double_string(s.r2) << ','
        << riskinfo::shortest_double_string(result.margins[i]) << ','
        << (riskinfo::collides(result.margins[i]) ? 1 : 0) << '\n';
  }
  emit(opts, csv.str());
  return 0;
}

int run_heinrich(const OutputOptions& opts) {
  json report = report_envelope(0, opts.timestamp);
  report.update(riskinfo::to_json(riskinfo::heinrich_demo()));
  emit_json(opts, report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) +
               " - finite-alphabet risk pipeline measures, capacity and design"};
  app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);
  app.require_subcommand(1);

  OutputOptions opts;
  std::string input, partition_path, input_law_path;
  std::uint64_t seed = 0;
  std::size_t horizon = 1000;
  std::size_t max_iter = 100000;
  double tolerance = 1e-9;
  double epsilon = 1e-3;

  auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opts.out_path,
                    "Output file (written atomically); stdout when omitted");
    cmd->add_flag("--timestamp", opts.timestamp,
                  "Embed a UTC timestamp (off by default to keep runs byte-identical)");
  };

  auto* measure = app.add_subcommand(
      "measure", "Entropy / mutual information of a distribution or joint (bits)");
  measure->add_option("--input", input, "Distribution or joint JSON file")->required();
  add_out(measure);

  auto* simulate = app.add_subcommand(
      "simulate", "Seeded Monte Carlo run of a pipeline config, CSV per step");
  simulate->add_option("--pipeline", input, "Pipeline config JSON file")->required();
  simulate->add_option("--horizon", horizon, "Steps to draw (>= 1), default 1000");
  auto* seed_opt =
      simulate->add_option("--seed", seed, "64-bit unsigned RNG seed, default 0");
  add_out(simulate);

  auto* capacity = app.add_subcommand(
      "capacity", "Channel capacity by alternating maximization (bits)");
  capacity->add_option("--channel", input, "Channel JSON file")->required();
  capacity->add_option("--tol", tolerance,
                       "Upper/lower bound gap to stop at, bits (default 1e-9)");
  capacity->add_option("--max-iter", max_iter, "Iteration cap (default 100000)");
  capacity->add_option("--input", input_law_path,
                       "Optional input-law JSON to grade against the capacity");
  capacity->add_option("--epsilon", epsilon,
                       "Degeneracy threshold for --input, bits (default 1e-3)");
  add_out(capacity);

  auto* refine = app.add_subcommand(
      "refine", "Entropy and MI gains of an event refinement (bits)");
  refine->add_option("--joint", input, "Fine joint JSON file (rows = events)")
      ->required();
  refine->add_option("--partition", partition_path, "Partition JSON file")->required();
  add_out(refine);

  auto* design = app.add_subcommand(
      "design", "Budgeted entropy-maximizing variable selection");
  design->add_option("--problem", input, "Design problem JSON file")->required();
  add_out(design);

  auto* collision = app.add_subcommand(
      "collision",
      "Braking-margin sweep over a scenario grid (SI units: speeds m/s, braking m/s^2, times s; margin in meters), CSV per cell");
  collision->add_option("--grid", input,
                        "Grid JSON: per field a number or {min,max,steps}")
      ->required();
  add_out(collision);

  auto* heinrich = app.add_subcommand(
      "heinrich", "Bundled safety-pyramid refinement example report");
  add_out(heinrich);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    if (measure->parsed()) return run_measure(input, opts);
    if (simulate->parsed()) {
      return run_simulate(input, horizon, resolve_seed(seed_opt, seed), opts);
    }
    if (capacity->parsed()) {
      return run_capacity(input, input_law_path, tolerance, epsilon, max_iter, opts);
    }
    if (refine->parsed()) return run_refine(input, partition_path, opts);
    if (design->parsed()) return run_design(input, opts);
    if (collision->parsed()) return run_collision(input, opts);
    if (heinrich->parsed()) return run_heinrich(opts);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const riskinfo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
