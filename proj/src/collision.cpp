#include "riskinfo/collision.hpp"

#include <cmath>
#include <string>

#include "riskinfo/errors.hpp"
#include "riskinfo/kernels.hpp"
#include "riskinfo/serialization.hpp"

namespace riskinfo {

const char* const kCollisionLabel = "collision";
const char* const kNoCollisionLabel = "no_collision";

namespace {

constexpr std::size_t kMaxGridCells = 1000000;

void validate_scenario(const CollisionScenario& s) {
  const double fields[] = {s.v1, s.v2, s.a1, s.a2, s.h2, s.r2};
  for (double f : fields) {
    if (!std::isfinite(f)) {
      throw_error(errc::invalid_scenario, "scenario fields must be finite");
    }
  }
  if (s.v1 < 0.0 || s.v2 < 0.0 || s.h2 < 0.0 || s.r2 < 0.0) {
    throw_error(errc::invalid_scenario, "speeds, headway and reaction time must be >= 0");
  }
  if (!(s.a1 > 0.0) || !(s.a2 > 0.0)) {
    throw_error(errc::invalid_scenario, "braking decelerations must be strictly positive");
  }
}

std::vector<double> axis_points(const GridField& field, const char* name) {
  if (const double* fixed = std::get_if<double>(&field)) return {*fixed};
  const GridAxis& axis = std::get<GridAxis>(field);
  if (axis.steps == 0) {
    throw_error(errc::empty_range, std::string(name) + ": steps must be >= 1");
  }
  if (!(axis.min <= axis.max)) {
    throw_error(errc::empty_range, std::string(name) + ": min must be <= max");
  }
  std::vector<double> points(axis.steps);
  if (axis.steps == 1) {
    points[0] = axis.min;
  } else {
    const double step = (axis.max - axis.min) / static_cast<double>(axis.steps - 1);
    for (std::size_t i = 0; i < axis.steps; ++i) {
      points[i] = axis.min + static_cast<double>(i) * step;
    }
    points.back() = axis.max;
  }
  return points;
}

}  // namespace

double collision_margin(const CollisionScenario& s) {
  validate_scenario(s);
  // Routed through the kernel table so a margin is the same bits no matter
  // whether it came from a single call or a grid sweep.
  double y = 0.0;
  kernels::active().collision_margins(&s.v1, &s.v2, &s.a1, &s.a2, &s.h2, &s.r2, &y, 1);
  return y;
}

CollisionChannelResult collision_channel(const CollisionGrid& grid) {
  const std::vector<double> v1s = axis_points(grid.v1, "v1");
  const std::vector<double> v2s = axis_points(grid.v2, "v2");
  const std::vector<double> a1s = axis_points(grid.a1, "a1");
  const std::vector<double> a2s = axis_points(grid.a2, "a2");
  const std::vector<double> h2s = axis_points(grid.h2, "h2");
  const std::vector<double> r2s = axis_points(grid.r2, "r2");

  const std::size_t cell_count = v1s.size() * v2s.size() * a1s.size() * a2s.size() *
                                 h2s.size() * r2s.size();
  if (cell_count > kMaxGridCells) {
    throw_error(errc::grid_too_large,
                "grid has " + std::to_string(cell_count) + " cells, limit is " +
                    std::to_string(kMaxGridCells));
  }

  std::vector<CollisionScenario> cells;
  cells.reserve(cell_count);
  std::vector<std::string> labels;
  labels.reserve(cell_count);
  for (double v1 : v1s)
    for (double v2 : v2s)
      for (double a1 : a1s)
        for (double a2 : a2s)
          for (double h2 : h2s)
            for (double r2 : r2s) {
              const CollisionScenario s{v1, v2, a1, a2, h2, r2};
              validate_scenario(s);
              cells.push_back(s);
              labels.push_back("v1=" + shortest_double_string(v1) + ";v2=" + shortest_double_string(v2) +
                               ";a1=" + shortest_double_string(a1) + ";a2=" + shortest_double_string(a2) +
                               ";h2=" + shortest_double_string(h2) + ";r2=" + shortest_double_string(r2));
            }

  // Struct-of-arrays pass for the margin kernel.
  std::vector<double> v1c(cell_count), v2c(cell_count), a1c(cell_count),
      a2c(cell_count), h2c(cell_count), r2c(cell_count), margins(cell_count);
  for (std::size_t i = 0; i < cell_count; ++i) {
    v1c[i] = cells[i].v1;
    v2c[i] = cells[i].v2;
    a1c[i] = cells[i].a1;
    a2c[i] = cells[i].a2;
    h2c[i] = cells[i].h2;
    r2c[i] = cells[i].r2;
  }
  kernels::active().collision_margins(v1c.data(), v2c.data(), a1c.data(), a2c.data(),
                                      h2c.data(), r2c.data(), margins.data(),
                                      cell_count);

  std::vector<std::uint32_t> map(cell_count);
  for (std::size_t i = 0; i < cell_count; ++i) {
    map[i] = collides(margins[i]) ? 0u : 1u;
  }

  Alphabet inputs(std::move(labels));
  Alphabet outputs({kCollisionLabel, kNoCollisionLabel});
  return {DeterministicMapper(std::move(inputs), std::move(outputs), std::move(map)),
          std::move(cells), std::move(margins)};
}

}  // namespace riskinfo
