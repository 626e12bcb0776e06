#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "riskinfo/channel.hpp"
#include "riskinfo/distribution.hpp"
#include "riskinfo/joint.hpp"
#include "riskinfo/refinement.hpp"

namespace riskinfo {

// Finite first-order time-homogeneous Markov chain over risk levels.
struct MarkovRiskSource {
  Alphabet levels;
  Channel transition;          // levels -> levels
  FiniteDistribution initial;  // law of the first step

  MarkovRiskSource(Alphabet levels, Channel transition, FiniteDistribution initial);
};

struct StationaryResult {
  FiniteDistribution distribution;
  // False when the chain is reducible (several stationary laws exist); the
  // returned law is the one power iteration reaches from `initial`.
  bool unique = true;
  std::size_t iterations = 0;
};

// Power iteration at tolerance 1e-12, capped at 1e6 steps; a damped pass
// takes over when plain iteration stalls on periodic chains.
StationaryResult stationary_distribution(const MarkovRiskSource& source);

// Source -> encoder -> mapper -> decoder with aligned alphabets.
class RiskPipeline {
 public:
  RiskPipeline(MarkovRiskSource source, Channel encoder, Channel mapper,
               Channel decoder);

  // Materializes the error-minimizing decoder from the stationary law of
  // (Y, level) before assembling the pipeline.
  static RiskPipeline with_map_decoder(MarkovRiskSource source, Channel encoder,
                                       Channel mapper);

  const MarkovRiskSource& source() const { return source_; }
  const Channel& encoder() const { return encoder_; }
  const Channel& mapper() const { return mapper_; }
  const Channel& decoder() const { return decoder_; }
  const Alphabet& levels() const { return source_.levels; }

 private:
  MarkovRiskSource source_;
  Channel encoder_;
  Channel mapper_;
  Channel decoder_;
};

// The four pair laws of the chain under its stationary source law.
struct StageLaws {
  JointDistribution level_x;
  JointDistribution x_y;
  JointDistribution y_estimate;
  JointDistribution level_estimate;
  FiniteDistribution stationary;
  bool stationary_unique = true;
};

StageLaws exact_stage_laws(const RiskPipeline& p);

struct TrajectoryStep {
  std::uint32_t level, x, y, estimate;
};

struct TrajectoryBatch {
  std::uint64_t seed = 0;
  std::vector<TrajectoryStep> records;
  Alphabet levels;
  Alphabet x_alphabet;
  Alphabet y_alphabet;

  std::size_t horizon() const { return records.size(); }
  // Header `t,lambda,x,y,lambda_hat`, one row per step, labels as text.
  void write_csv(std::ostream& out) const;
};

// One draw per stage per step; bit-identical for a fixed (pipeline, horizon,
// seed) triple.
TrajectoryBatch simulate(const RiskPipeline& p, std::size_t horizon,
                         std::uint64_t seed);

struct MapDecoderResult {
  Channel decoder;
  // Outputs y with P(y) == 0; their rows were pointed at class index 0.
  std::vector<std::size_t> zero_probability_outputs;
};

// Deterministic maximum-posterior decoder from a joint over (Y, level).
// Ties break toward the lowest class index.
MapDecoderResult map_decoder_from(const JointDistribution& y_level);

enum class ErrorMethod { exact, empirical };

struct ErrorReport {
  // P(estimate != level | level = c), keyed by class label. Classes that
  // never occur carry NaN and are listed in never_occurs.
  std::map<std::string, double> per_class;
  double overall = 0.0;
  ErrorMethod method = ErrorMethod::exact;
  std::vector<std::string> never_occurs;
  // Opt-in alternative conditioning P(estimate != level | estimate = c).
  std::optional<std::map<std::string, double>> per_class_given_estimate;
};

ErrorReport pricing_errors_exact(const RiskPipeline& p,
                                 bool include_estimate_view = false);
ErrorReport pricing_errors_empirical(const RiskPipeline& p, std::size_t horizon,
                                     std::uint64_t seed,
                                     bool include_estimate_view = false);

// Both processing-inequality chains evaluated on the exact stage laws.
struct DpiReport {
  double i_level_estimate_bits = 0.0;
  double i_y_estimate_bits = 0.0;
  double i_x_y_bits = 0.0;
  double h_y_bits = 0.0;
  double h_x_bits = 0.0;
  double h_estimate_bits = 0.0;
  double slack_decoder_bits = 0.0;  // I(Y,estimate) - I(level,estimate)
  double slack_mapper_bits = 0.0;   // I(X,Y)        - I(level,estimate)
};

DpiReport dpi_audit(const RiskPipeline& p);

// Re-expresses source, encoder and decoder over merged level classes.
// Transition and encoder rows are averaged with stationary weights within
// each block; decoder columns are summed through the block map.
RiskPipeline aggregate_classes(const RiskPipeline& p, const Partition& grouping);

}  // namespace riskinfo
