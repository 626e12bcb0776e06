#pragma once

#include <variant>
#include <vector>

#include "riskinfo/capacity.hpp"

namespace riskinfo {

// Two-vehicle braking scenario, SI units throughout (m/s, m/s^2, s, m).
// v1/a1 describe the lead vehicle, v2/a2 the follower; h2 is the follower's
// time headway and r2 its driver reaction time.
struct CollisionScenario {
  double v1 = 0.0;
  double v2 = 0.0;
  double a1 = 1.0;
  double a2 = 1.0;
  double h2 = 0.0;
  double r2 = 0.0;
};

// Stopping-distance margin in meters:
//   y = v2*h2 + v1^2/(2*a1) - v2*r2 - v2^2/(2*a2)
// Positive margin means no collision; y <= 0 is classified as a collision.
double collision_margin(const CollisionScenario& s);

inline bool collides(double margin) { return margin <= 0.0; }

// Inclusive endpoints; steps == 1 degenerates to the low endpoint.
struct GridAxis {
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 1;
};

using GridField = std::variant<GridAxis, double>;

struct CollisionGrid {
  GridField v1 = 0.0;
  GridField v2 = 0.0;
  GridField a1 = 1.0;
  GridField a2 = 1.0;
  GridField h2 = 0.0;
  GridField r2 = 0.0;
};

struct CollisionChannelResult {
  DeterministicMapper mapper;           // cells -> {collision, no_collision}
  std::vector<CollisionScenario> cells; // in row-major sweep order (v1 outermost)
  std::vector<double> margins;          // per cell, meters
};

// Evaluates the margin over the Cartesian grid and packages the result as a
// deterministic mapper whose input alphabet encodes the cell coordinates.
// Throws grid_too_large above 1e6 cells and empty_range on bad axes.
CollisionChannelResult collision_channel(const CollisionGrid& grid);

extern const char* const kCollisionLabel;     // "collision", output index 0
extern const char* const kNoCollisionLabel;   // "no_collision", output index 1

}  // namespace riskinfo
