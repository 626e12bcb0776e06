#pragma once

#include <string>
#include <vector>

#include "riskinfo/alphabet.hpp"
#include "riskinfo/joint.hpp"

namespace riskinfo {

// Disjoint cover of a base alphabet. Blocks keep their construction order;
// that order defines the merged alphabet.
class Partition {
 public:
  // Throws partition_unknown_label / partition_overlap / partition_uncovered.
  Partition(Alphabet base, std::vector<std::vector<std::string>> blocks);

  static Partition discrete(const Alphabet& base);   // every label its own block
  static Partition merge_all(const Alphabet& base);  // one block

  const Alphabet& base() const { return base_; }
  std::size_t block_count() const { return blocks_.size(); }
  const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
  std::size_t block_of(std::size_t base_index) const { return block_of_[base_index]; }

  // Member labels joined with '+', in base order.
  Alphabet merged_alphabet() const;

 private:
  Alphabet base_;
  std::vector<std::vector<std::size_t>> blocks_;  // sorted base indices per block
  std::vector<std::size_t> block_of_;
};

Partition make_partition(Alphabet base, std::vector<std::vector<std::string>> blocks);

// True iff every block of `fine` is contained in some block of `coarse`.
bool is_refinement(const Partition& fine, const Partition& coarse);

// Sum the rows of each block; columns are untouched.
JointDistribution coarsen_joint(const JointDistribution& fine_joint,
                                const Partition& grouping);

struct RefinementGain {
  double delta_h_bits = 0.0;  // H(fine rows) - H(coarse rows)
  double delta_i_bits = 0.0;  // I(fine) - I(coarse)
};

RefinementGain refinement_gain(const JointDistribution& fine_joint,
                               const Partition& grouping);

struct HeinrichReport {
  double h_fine_bits = 0.0;
  double h_coarse_bits = 0.0;
  double i_fine_bits = 0.0;
  double i_coarse_bits = 0.0;
  double delta_h_bits = 0.0;
  double delta_i_bits = 0.0;
};

// Worked example: a safety-pyramid event law over four observable event
// classes is coarsened to the two classes a claims file can see. The
// frequencies are an illustrative fixture, not measured data.
HeinrichReport heinrich_demo();

}  // namespace riskinfo
