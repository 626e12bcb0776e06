#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riskinfo/channel.hpp"
#include "riskinfo/distribution.hpp"

namespace riskinfo {

// One observable variable a data-collection design may buy: its marginal law
// (entropy is what it contributes) and its acquisition cost.
struct CandidateVariable {
  std::string name;
  FiniteDistribution marginal;
  double cost = 0.0;
};

enum class ConstraintMode { strong, weak };

struct DesignProblem {
  std::vector<CandidateVariable> candidates;
  double budget = 0.0;        // cost ceiling
  double h_target_bits = 0.0; // entropy the selection must strictly exceed
  ConstraintMode mode = ConstraintMode::weak;
};

enum class SearchMethod { exhaustive, greedy };

struct DesignSolution {
  std::vector<std::string> chosen;  // sorted by name
  double h_x_bits = 0.0;
  double total_cost = 0.0;
  bool feasible = false;  // within budget AND h_x > h_target
  SearchMethod method = SearchMethod::exhaustive;
};

// True when the design carries strictly more entropy than the target.
bool redundancy_check(double h_x_bits, double h_target_bits);

// Budget-constrained entropy maximization. Candidates are treated as
// independent, so a subset's entropy is the sum of marginal entropies.
// Exhaustive enumeration up to 20 candidates, greedy by entropy-per-cost
// beyond that; `force_method` overrides the crossover (greedy is a documented
// heuristic, not a contract). Ties break by (higher H, lower cost,
// lexicographically larger name list) so enumeration order cannot change the
// answer.
DesignSolution design_search(const DesignProblem& problem,
                             std::optional<SearchMethod> force_method = std::nullopt);

struct VariableQuality {
  double i_xy_bits = 0.0;
  double h_x_bits = 0.0;
  double capacity_gap_bits = 0.0;  // mapper capacity minus achieved rate
  bool degenerate = false;         // i_xy below epsilon
};

// How much of the mapper's capacity a given input design realizes.
VariableQuality variable_quality(const FiniteDistribution& input_law,
                                 const Channel& mapper, double epsilon_bits = 1e-3);

}  // namespace riskinfo
