#include "riskinfo/design.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "riskinfo/capacity.hpp"
#include "riskinfo/errors.hpp"
#include "riskinfo/joint.hpp"
#include "riskinfo/measures.hpp"

namespace riskinfo {

namespace {

constexpr std::size_t kExhaustiveLimit = 20;

struct Pick {
  double h = -1.0;
  double cost = 0.0;
  std::vector<std::string> names;  // sorted
  bool valid = false;
};

// max by (H, -cost, lexicographic names); deterministic under any
// enumeration order.
bool better(const Pick& a, const Pick& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  if (a.h != b.h) return a.h > b.h;
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.names > b.names;
}

Pick make_pick(const DesignProblem& p, const std::vector<std::size_t>& subset) {
  Pick pick;
  pick.valid = true;
  pick.h = 0.0;
  for (std::size_t i : subset) {
    pick.h += entropy(p.candidates[i].marginal);
    pick.cost += p.candidates[i].cost;
    pick.names.push_back(p.candidates[i].name);
  }
  std::sort(pick.names.begin(), pick.names.end());
  return pick;
}

}  // namespace

bool redundancy_check(double h_x_bits, double h_target_bits) {
  return h_x_bits > h_target_bits;
}

DesignSolution design_search(const DesignProblem& problem,
                             std::optional<SearchMethod> force_method) {
  const std::size_t n = problem.candidates.size();
  if (n == 0) throw_error(errc::no_candidates, "design_search needs candidates");
  if (n > 63 && force_method == SearchMethod::exhaustive) {
    throw_error(errc::internal, "exhaustive search capped at 63 candidates");
  }

  DesignSolution solution;
  Pick best;

  const bool exhaustive =
      force_method ? (*force_method == SearchMethod::exhaustive) : n <= kExhaustiveLimit;
  if (exhaustive) {
    solution.method = SearchMethod::exhaustive;
    std::vector<std::size_t> subset;
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      subset.clear();
      double cost = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (bits & (std::uint64_t{1} << i)) {
          subset.push_back(i);
          cost += problem.candidates[i].cost;
        }
      }
      if (cost > problem.budget) continue;
      Pick pick = make_pick(problem, subset);
      if (better(pick, best)) best = std::move(pick);
    }
  } else {
    solution.method = SearchMethod::greedy;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i) h[i] = entropy(problem.candidates[i].marginal);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      // Entropy per unit cost, descending; free variables first.
      const double ca = problem.candidates[a].cost;
      const double cb = problem.candidates[b].cost;
      const double ra = ca > 0.0 ? h[a] / ca : std::numeric_limits<double>::infinity();
      const double rb = cb > 0.0 ? h[b] / cb : std::numeric_limits<double>::infinity();
      if (ra != rb) return ra > rb;
      if (h[a] != h[b]) return h[a] > h[b];
      return problem.candidates[a].name < problem.candidates[b].name;
    });
    std::vector<std::size_t> subset;
    double cost = 0.0;
    for (std::size_t i : order) {
      if (cost + problem.candidates[i].cost <= problem.budget) {
        subset.push_back(i);
        cost += problem.candidates[i].cost;
      }
    }
    best = make_pick(problem, subset);
  }

  // An empty subset is always budget-feasible, so `best` is valid here.
  solution.chosen = best.names;
  solution.h_x_bits = best.h;
  solution.total_cost = best.cost;
  solution.feasible = best.cost <= problem.budget &&
                      redundancy_check(best.h, problem.h_target_bits);
  return solution;
}

VariableQuality variable_quality(const FiniteDistribution& input_law,
                                 const Channel& mapper, double epsilon_bits) {
  if (!(epsilon_bits > 0.0)) {
    throw_error(errc::internal, "degeneracy epsilon must be positive");
  }
  VariableQuality q;
  q.i_xy_bits = mutual_information(joint_from(input_law, mapper));
  q.h_x_bits = entropy(input_law);
  q.capacity_gap_bits = blahut_arimoto(mapper).capacity_bits - q.i_xy_bits;
  q.degenerate = q.i_xy_bits < epsilon_bits;
  return q;
}

}  // namespace riskinfo
