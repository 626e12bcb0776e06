#include "riskinfo/refinement.hpp"

#include <algorithm>

#include "riskinfo/errors.hpp"
#include "riskinfo/kernels.hpp"
#include "riskinfo/measures.hpp"

namespace riskinfo {

Partition::Partition(Alphabet base, std::vector<std::vector<std::string>> blocks)
    : base_(std::move(base)) {
  if (blocks.empty()) {
    throw_error(errc::partition_uncovered, "partition needs at least one block");
  }
  block_of_.assign(base_.size(), SIZE_MAX);
  blocks_.reserve(blocks.size());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) {
      throw_error(errc::partition_uncovered, "partition blocks must be non-empty");
    }
    std::vector<std::size_t> members;
    members.reserve(blocks[b].size());
    for (const auto& label : blocks[b]) {
      const auto idx = base_.find(label);
      if (!idx) {
        throw_error(errc::partition_unknown_label,
                    "label '" + label + "' is not in the base alphabet");
      }
      if (block_of_[*idx] != SIZE_MAX) {
        throw_error(errc::partition_overlap,
                    "label '" + label + "' appears in more than one block");
      }
      block_of_[*idx] = b;
      members.push_back(*idx);
    }
    std::sort(members.begin(), members.end());
    blocks_.push_back(std::move(members));
  }
  for (std::size_t i = 0; i < base_.size(); ++i) {
    if (block_of_[i] == SIZE_MAX) {
      throw_error(errc::partition_uncovered,
                  "label '" + base_.label(i) + "' is not covered by any block");
    }
  }
}

Partition Partition::discrete(const Alphabet& base) {
  std::vector<std::vector<std::string>> blocks;
  blocks.reserve(base.size());
  for (const auto& label : base.labels()) blocks.push_back({label});
  return Partition(base, std::move(blocks));
}

Partition Partition::merge_all(const Alphabet& base) {
  return Partition(base, {base.labels()});
}

Alphabet Partition::merged_alphabet() const {
  std::vector<std::string> labels;
  labels.reserve(blocks_.size());
  for (const auto& members : blocks_) {
    std::string name;
    for (std::size_t idx : members) {
      if (!name.empty()) name += '+';
      name += base_.label(idx);
    }
    labels.push_back(std::move(name));
  }
  return Alphabet(std::move(labels));
}

Partition make_partition(Alphabet base, std::vector<std::vector<std::string>> blocks) {
  return Partition(std::move(base), std::move(blocks));
}

bool is_refinement(const Partition& fine, const Partition& coarse) {
  if (fine.base() != coarse.base()) {
    throw_error(errc::base_mismatch, "partitions are over different base alphabets");
  }
  for (const auto& members : fine.blocks()) {
    const std::size_t target = coarse.block_of(members.front());
    for (std::size_t idx : members) {
      if (coarse.block_of(idx) != target) return false;
    }
  }
  return true;
}

JointDistribution coarsen_joint(const JointDistribution& fine_joint,
                                const Partition& grouping) {
  if (grouping.base() != fine_joint.row_alphabet()) {
    throw_error(errc::base_mismatch,
                "grouping base does not match the joint's row alphabet");
  }
  const auto& k = kernels::active();
  const Matrix& fine = fine_joint.mass();
  Matrix coarse(grouping.block_count(), fine.cols(), 0.0);
  for (std::size_t b = 0; b < grouping.block_count(); ++b) {
    for (std::size_t idx : grouping.blocks()[b]) {
      k.axpy(1.0, fine.row(idx), coarse.row(b), fine.cols());
    }
  }
  return JointDistribution(grouping.merged_alphabet(), fine_joint.col_alphabet(),
                           std::move(coarse));
}

RefinementGain refinement_gain(const JointDistribution& fine_joint,
                               const Partition& grouping) {
  const JointDistribution coarse = coarsen_joint(fine_joint, grouping);
  RefinementGain gain;
  gain.delta_h_bits =
      entropy(marginals(fine_joint).first) - entropy(marginals(coarse).first);
  gain.delta_i_bits = mutual_information(fine_joint) - mutual_information(coarse);
  return gain;
}

HeinrichReport heinrich_demo() {
  // Safety-pyramid fixture: 1 severe injury for 29 minor ones, 300 unreported
  // violations and 3000 unsafe behaviors, each event class with its own odds
  // of landing in the decoded high-risk class. Illustrative numbers.
  const Alphabet events({"major_injury", "minor_injury_property",
                         "unreported_violation", "unsafe_behavior"});
  const Alphabet classes({"high_risk", "low_risk"});

  Matrix mass(4, 2);
  const double counts[4] = {1.0, 29.0, 300.0, 3000.0};
  const double high_risk_share[4] = {0.95, 0.80, 0.55, 0.30};
  for (std::size_t i = 0; i < 4; ++i) {
    mass.at(i, 0) = counts[i] * high_risk_share[i];
    mass.at(i, 1) = counts[i] * (1.0 - high_risk_share[i]);
  }
  const JointDistribution fine =
      JointDistribution::from_weights(events, classes, std::move(mass));

  const Partition grouping(events, {{"major_injury"},
                                    {"minor_injury_property", "unreported_violation",
                                     "unsafe_behavior"}});
  const JointDistribution coarse = coarsen_joint(fine, grouping);

  HeinrichReport report;
  report.h_fine_bits = entropy(marginals(fine).first);
  report.h_coarse_bits = entropy(marginals(coarse).first);
  report.i_fine_bits = mutual_information(fine);
  report.i_coarse_bits = mutual_information(coarse);
  report.delta_h_bits = report.h_fine_bits - report.h_coarse_bits;
  report.delta_i_bits = report.i_fine_bits - report.i_coarse_bits;
  return report;
}

}  // namespace riskinfo
