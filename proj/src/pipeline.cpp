#include "riskinfo/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "riskinfo/errors.hpp"
#include "riskinfo/kernels.hpp"
#include "riskinfo/measures.hpp"
#include "riskinfo/rng.hpp"

namespace riskinfo {

namespace {

constexpr double kStationaryTolerance = 1e-12;
constexpr std::size_t kStationaryMaxIter = 1000000;
// Plain power iteration gets this many steps before damping kicks in.
constexpr std::size_t kPlainPhaseIter = 200000;
constexpr double kDamping = 0.9999;

// C = A * B for row-major matrices, accumulating with the axpy kernel.
Matrix multiply(const Matrix& a, const Matrix& b) {
  Matrix c(a.rows(), b.cols(), 0.0);
  const auto& k = kernels::active();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t inner = 0; inner < a.cols(); ++inner) {
      const double w = a.at(i, inner);
      if (w != 0.0) k.axpy(w, b.row(inner), c.row(i), b.cols());
    }
  }
  return c;
}

// Number of terminal strongly connected components of the positive-transition
// digraph; the stationary law is unique iff there is exactly one.
std::size_t terminal_scc_count(const Matrix& transition) {
  const std::size_t n = transition.rows();
  std::vector<std::vector<std::size_t>> adj(n), radj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (transition.at(i, j) > 0.0) {
        adj[i].push_back(j);
        radj[j].push_back(i);
      }
    }
  }

  // Kosaraju, iterative.
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> order;
  order.reserve(n);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{start, 0}};
    seen[start] = 1;
    while (!stack.empty()) {
      auto& [node, next] = stack.back();
      if (next < adj[node].size()) {
        const std::size_t child = adj[node][next++];
        if (!seen[child]) {
          seen[child] = 1;
          stack.emplace_back(child, 0);
        }
      } else {
        order.push_back(node);
        stack.pop_back();
      }
    }
  }

  std::vector<std::size_t> component(n, SIZE_MAX);
  std::size_t comp_count = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (component[*it] != SIZE_MAX) continue;
    std::vector<std::size_t> stack{*it};
    component[*it] = comp_count;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t child : radj[node]) {
        if (component[child] == SIZE_MAX) {
          component[child] = comp_count;
          stack.push_back(child);
        }
      }
    }
    ++comp_count;
  }

  std::vector<char> has_exit(comp_count, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : adj[i]) {
      if (component[i] != component[j]) has_exit[component[i]] = 1;
    }
  }
  std::size_t terminal = 0;
  for (char exit_flag : has_exit) terminal += (exit_flag == 0);
  return terminal;
}

double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace

MarkovRiskSource::MarkovRiskSource(Alphabet levels_in, Channel transition_in,
                                   FiniteDistribution initial_in)
    : levels(std::move(levels_in)), transition(std::move(transition_in)),
      initial(std::move(initial_in)) {
  if (transition.input_alphabet() != levels || transition.output_alphabet() != levels) {
    throw_error(errc::alphabet_mismatch, "transition must be square over the levels");
  }
  if (initial.alphabet() != levels) {
    throw_error(errc::alphabet_mismatch, "initial law must be over the levels");
  }
}

StationaryResult stationary_distribution(const MarkovRiskSource& source) {
  const auto& k = kernels::active();
  const Matrix& t = source.transition.rows();
  const std::size_t n = t.rows();

  // Convergence is judged on the undamped residual |pi*P - pi|_1, so the
  // answer quality does not depend on whether damping is active. Exact short
  // cycles (periodic chains orbit with period <= 8 in floating point) are
  // caught by a ring buffer and resolved by averaging one full cycle.
  const auto step = [&](const std::vector<double>& from, std::vector<double>& to) {
    std::fill(to.begin(), to.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (from[i] != 0.0) k.axpy(from[i], t.row(i), to.data(), n);
    }
  };
  const auto residual = [&](const std::vector<double>& p) {
    std::vector<double> image(n);
    step(p, image);
    return l1_diff(p, image);
  };

  std::vector<double> pi(source.initial.probs().begin(), source.initial.probs().end());
  std::vector<double> raw(n);
  constexpr std::size_t kRing = 8;
  std::vector<std::vector<double>> ring;
  ring.reserve(kRing);

  std::size_t iter = 0;
  bool damped = false;
  const bool unique = terminal_scc_count(t) == 1;

  if (residual(pi) < kStationaryTolerance) {
    return {FiniteDistribution::from_weights(source.levels, pi), unique, 0};
  }

  while (iter < kStationaryMaxIter) {
    ++iter;
    step(pi, raw);
    const double res = l1_diff(pi, raw);

    if (damped) {
      for (std::size_t i = 0; i < n; ++i) {
        raw[i] = kDamping * raw[i] + (1.0 - kDamping) * pi[i];
      }
    }
    pi.swap(raw);

    if (res < kStationaryTolerance) {
      return {FiniteDistribution::from_weights(source.levels, pi), unique, iter};
    }

    // Exact revisit of an iterate seen k steps ago: average the cycle.
    for (std::size_t back = 0; back < ring.size(); ++back) {
      if (l1_diff(pi, ring[ring.size() - 1 - back]) < 1e-14) {
        std::vector<double> avg(n, 0.0);
        for (std::size_t j = ring.size() - 1 - back; j < ring.size(); ++j) {
          k.axpy(1.0, ring[j].data(), avg.data(), n);
        }
        const double cycle_len = static_cast<double>(back + 1);
        for (double& v : avg) v /= cycle_len;
        if (residual(avg) < kStationaryTolerance) {
          return {FiniteDistribution::from_weights(source.levels, avg), unique, iter};
        }
        break;
      }
    }
    if (ring.size() == kRing) ring.erase(ring.begin());
    ring.push_back(pi);

    if (!damped && iter >= kPlainPhaseIter) damped = true;
  }
  throw_error(errc::non_convergence,
              "stationary distribution did not converge within 1e6 iterations");
}

RiskPipeline::RiskPipeline(MarkovRiskSource source, Channel encoder, Channel mapper,
                           Channel decoder)
    : source_(std::move(source)), encoder_(std::move(encoder)),
      mapper_(std::move(mapper)), decoder_(std::move(decoder)) {
  if (encoder_.input_alphabet() != source_.levels) {
    throw_error(errc::alphabet_mismatch, "encoder input must be the level alphabet");
  }
  if (mapper_.input_alphabet() != encoder_.output_alphabet()) {
    throw_error(errc::alphabet_mismatch, "mapper input must match encoder output");
  }
  if (decoder_.input_alphabet() != mapper_.output_alphabet()) {
    throw_error(errc::alphabet_mismatch, "decoder input must match mapper output");
  }
  if (decoder_.output_alphabet() != source_.levels) {
    throw_error(errc::alphabet_mismatch, "decoder output must be the level alphabet");
  }
}

RiskPipeline RiskPipeline::with_map_decoder(MarkovRiskSource source, Channel encoder,
                                            Channel mapper) {
  const FiniteDistribution pi = stationary_distribution(source).distribution;
  // P(level, y) = pi(level) * sum_x E(x|level) M(y|x)
  Matrix level_to_y = multiply(encoder.rows(), mapper.rows());
  Matrix mass(pi.size(), level_to_y.cols());
  const auto& k = kernels::active();
  for (std::size_t c = 0; c < pi.size(); ++c) {
    k.scale(level_to_y.row(c), pi[c], mass.row(c), level_to_y.cols());
  }
  const JointDistribution level_y(source.levels, mapper.output_alphabet(),
                                  std::move(mass));
  Channel decoder = map_decoder_from(level_y.transposed()).decoder;
  return RiskPipeline(std::move(source), std::move(encoder), std::move(mapper),
                      std::move(decoder));
}

StageLaws exact_stage_laws(const RiskPipeline& p) {
  const auto& k = kernels::active();
  const StationaryResult st = stationary_distribution(p.source());
  const FiniteDistribution& pi = st.distribution;

  const Matrix& enc = p.encoder().rows();
  const Matrix& map = p.mapper().rows();
  const Matrix& dec = p.decoder().rows();
  const std::size_t n_levels = pi.size();
  const std::size_t n_x = enc.cols();
  const std::size_t n_y = map.cols();

  Matrix level_x(n_levels, n_x);
  for (std::size_t c = 0; c < n_levels; ++c) {
    k.scale(enc.row(c), pi[c], level_x.row(c), n_x);
  }

  std::vector<double> x_law(n_x, 0.0);
  for (std::size_t c = 0; c < n_levels; ++c) {
    if (pi[c] != 0.0) k.axpy(pi[c], enc.row(c), x_law.data(), n_x);
  }
  Matrix x_y(n_x, n_y);
  for (std::size_t x = 0; x < n_x; ++x) {
    k.scale(map.row(x), x_law[x], x_y.row(x), n_y);
  }

  std::vector<double> y_law(n_y, 0.0);
  for (std::size_t x = 0; x < n_x; ++x) {
    if (x_law[x] != 0.0) k.axpy(x_law[x], map.row(x), y_law.data(), n_y);
  }
  Matrix y_est(n_y, n_levels);
  for (std::size_t y = 0; y < n_y; ++y) {
    k.scale(dec.row(y), y_law[y], y_est.row(y), n_levels);
  }

  Matrix level_to_est = multiply(multiply(enc, map), dec);
  Matrix level_est(n_levels, n_levels);
  for (std::size_t c = 0; c < n_levels; ++c) {
    k.scale(level_to_est.row(c), pi[c], level_est.row(c), n_levels);
  }

  const Alphabet& levels = p.levels();
  const Alphabet& xs = p.encoder().output_alphabet();
  const Alphabet& ys = p.mapper().output_alphabet();
  return {JointDistribution(levels, xs, std::move(level_x)),
          JointDistribution(xs, ys, std::move(x_y)),
          JointDistribution(ys, levels, std::move(y_est)),
          JointDistribution(levels, levels, std::move(level_est)),
          pi,
          st.unique};
}

void TrajectoryBatch::write_csv(std::ostream& out) const {
  out << "t,lambda,x,y,lambda_hat\n";
  for (std::size_t t = 0; t < records.size(); ++t) {
    const TrajectoryStep& s = records[t];
    out << t << ',' << levels.label(s.level) << ',' << x_alphabet.label(s.x) << ','
        << y_alphabet.label(s.y) << ',' << levels.label(s.estimate) << '\n';
  }
}

TrajectoryBatch simulate(const RiskPipeline& p, std::size_t horizon,
                         std::uint64_t seed) {
  if (horizon == 0) {
    throw_error(errc::empty_sample, "simulation horizon must be >= 1");
  }
  Rng rng(seed);
  TrajectoryBatch batch{seed,
                        {},
                        p.levels(),
                        p.encoder().output_alphabet(),
                        p.mapper().output_alphabet()};
  batch.records.reserve(horizon);

  const Channel& transition = p.source().transition;
  std::size_t level = rng.categorical(p.source().initial.probs());
  for (std::size_t t = 0; t < horizon; ++t) {
    const std::size_t x = rng.categorical(p.encoder().row(level));
    const std::size_t y = rng.categorical(p.mapper().row(x));
    const std::size_t est = rng.categorical(p.decoder().row(y));
    batch.records.push_back({static_cast<std::uint32_t>(level),
                             static_cast<std::uint32_t>(x),
                             static_cast<std::uint32_t>(y),
                             static_cast<std::uint32_t>(est)});
    level = rng.categorical(transition.row(level));
  }
  return batch;
}

MapDecoderResult map_decoder_from(const JointDistribution& y_level) {
  const Matrix& mass = y_level.mass();
  const std::size_t n_y = mass.rows();
  const std::size_t n_levels = mass.cols();

  Matrix rows(n_y, n_levels, 0.0);
  std::vector<std::size_t> zero_rows;
  for (std::size_t y = 0; y < n_y; ++y) {
    std::size_t best = 0;
    double best_mass = mass.at(y, 0);
    double row_total = mass.at(y, 0);
    for (std::size_t c = 1; c < n_levels; ++c) {
      const double v = mass.at(y, c);
      row_total += v;
      if (v > best_mass) {
        best_mass = v;
        best = c;
      }
    }
    if (row_total == 0.0) zero_rows.push_back(y);
    rows.at(y, best) = 1.0;
  }
  return {Channel(y_level.row_alphabet(), y_level.col_alphabet(), std::move(rows)),
          std::move(zero_rows)};
}

namespace {

ErrorReport report_from_level_estimate(const JointDistribution& level_est,
                                       ErrorMethod method,
                                       bool include_estimate_view) {
  const Alphabet& levels = level_est.row_alphabet();
  const Matrix& mass = level_est.mass();
  const std::size_t n = mass.rows();
  const double nan = std::numeric_limits<double>::quiet_NaN();

  ErrorReport report;
  report.method = method;

  double correct = 0.0;
  double occupied = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    const double row_total = kernels::active().sum(mass.row(c), n);
    const double diag = mass.at(c, c);
    if (row_total == 0.0) {
      report.per_class[levels.label(c)] = nan;
      report.never_occurs.push_back(levels.label(c));
    } else {
      report.per_class[levels.label(c)] =
          std::clamp((row_total - diag) / row_total, 0.0, 1.0);
      correct += diag;
      occupied += row_total;
    }
  }
  report.overall = occupied > 0.0 ? std::clamp((occupied - correct) / occupied, 0.0, 1.0)
                                  : 0.0;

  if (include_estimate_view) {
    std::map<std::string, double> by_estimate;
    for (std::size_t c = 0; c < n; ++c) {
      double col_total = 0.0;
      for (std::size_t r = 0; r < n; ++r) col_total += mass.at(r, c);
      by_estimate[levels.label(c)] =
          col_total > 0.0 ? std::clamp((col_total - mass.at(c, c)) / col_total, 0.0, 1.0)
                          : nan;
    }
    report.per_class_given_estimate = std::move(by_estimate);
  }
  return report;
}

}  // namespace

ErrorReport pricing_errors_exact(const RiskPipeline& p, bool include_estimate_view) {
  return report_from_level_estimate(exact_stage_laws(p).level_estimate,
                                    ErrorMethod::exact, include_estimate_view);
}

ErrorReport pricing_errors_empirical(const RiskPipeline& p, std::size_t horizon,
                                     std::uint64_t seed, bool include_estimate_view) {
  const TrajectoryBatch batch = simulate(p, horizon, seed);
  const std::size_t n = p.levels().size();
  Matrix counts(n, n, 0.0);
  for (const TrajectoryStep& s : batch.records) {
    counts.at(s.level, s.estimate) += 1.0;
  }
  for (std::size_t i = 0; i < counts.size(); ++i) {
    counts.data()[i] /= static_cast<double>(batch.horizon());
  }
  return report_from_level_estimate(
      JointDistribution(p.levels(), p.levels(), std::move(counts)),
      ErrorMethod::empirical, include_estimate_view);
}

DpiReport dpi_audit(const RiskPipeline& p) {
  const StageLaws laws = exact_stage_laws(p);
  DpiReport report;
  report.i_level_estimate_bits = mutual_information(laws.level_estimate);
  report.i_y_estimate_bits = mutual_information(laws.y_estimate);
  report.i_x_y_bits = mutual_information(laws.x_y);
  report.h_x_bits = entropy(marginals(laws.level_x).second);
  report.h_y_bits = entropy(marginals(laws.x_y).second);
  report.h_estimate_bits = entropy(marginals(laws.level_estimate).second);
  report.slack_decoder_bits = report.i_y_estimate_bits - report.i_level_estimate_bits;
  report.slack_mapper_bits = report.i_x_y_bits - report.i_level_estimate_bits;
  return report;
}

RiskPipeline aggregate_classes(const RiskPipeline& p, const Partition& grouping) {
  if (grouping.base() != p.levels()) {
    throw_error(errc::base_mismatch,
                "grouping base does not match the pipeline's level alphabet");
  }
  const auto& k = kernels::active();
  const FiniteDistribution pi = stationary_distribution(p.source()).distribution;
  const Alphabet merged = grouping.merged_alphabet();
  const std::size_t n_blocks = grouping.block_count();
  const std::size_t n_levels = p.levels().size();
  const std::size_t n_x = p.encoder().output_alphabet().size();

  // Per-class weights within each block, taken from the stationary law;
  // uniform inside blocks the chain never visits.
  std::vector<double> weight(n_levels, 0.0);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    const auto& members = grouping.blocks()[b];
    double block_mass = 0.0;
    for (std::size_t c : members) block_mass += pi[c];
    for (std::size_t c : members) {
      weight[c] = block_mass > 0.0 ? pi[c] / block_mass
                                   : 1.0 / static_cast<double>(members.size());
    }
  }

  // Transition: average outgoing rows with the block weights, then sum the
  // destination columns per block.
  Matrix transition(n_blocks, n_blocks, 0.0);
  std::vector<double> row(n_levels);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t c : grouping.blocks()[b]) {
      if (weight[c] != 0.0) {
        k.axpy(weight[c], p.source().transition.rows().row(c), row.data(), n_levels);
      }
    }
    for (std::size_t c2 = 0; c2 < n_levels; ++c2) {
      transition.at(b, grouping.block_of(c2)) += row[c2];
    }
  }

  std::vector<double> initial(n_blocks, 0.0);
  for (std::size_t c = 0; c < n_levels; ++c) {
    initial[grouping.block_of(c)] += p.source().initial[c];
  }

  Matrix encoder(n_blocks, n_x, 0.0);
  for (std::size_t b = 0; b < n_blocks; ++b) {
    for (std::size_t c : grouping.blocks()[b]) {
      if (weight[c] != 0.0) {
        k.axpy(weight[c], p.encoder().rows().row(c), encoder.row(b), n_x);
      }
    }
  }

  const Matrix& dec = p.decoder().rows();
  Matrix decoder(dec.rows(), n_blocks, 0.0);
  for (std::size_t y = 0; y < dec.rows(); ++y) {
    for (std::size_t c = 0; c < n_levels; ++c) {
      decoder.at(y, grouping.block_of(c)) += dec.at(y, c);
    }
  }

  MarkovRiskSource source(merged,
                          Channel::from_weights(merged, merged, std::move(transition)),
                          FiniteDistribution::from_weights(merged, std::move(initial)));
  return RiskPipeline(
      std::move(source),
      Channel::from_weights(merged, p.encoder().output_alphabet(), std::move(encoder)),
      p.mapper(),
      Channel::from_weights(p.mapper().output_alphabet(), merged, std::move(decoder)));
}

}  // namespace riskinfo
