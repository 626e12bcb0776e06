#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "riskinfo/capacity.hpp"
#include "riskinfo/channel.hpp"
#include "riskinfo/collision.hpp"
#include "riskinfo/design.hpp"
#include "riskinfo/distribution.hpp"
#include "riskinfo/joint.hpp"
#include "riskinfo/pipeline.hpp"
#include "riskinfo/refinement.hpp"

namespace riskinfo {

// JSON schemas (values round-trip at full precision):
//   distribution  {"alphabet": [...], "probs": [...]}
//   channel       {"input": [...], "output": [...], "rows": [[...]]}
//   joint         {"row": [...], "col": [...], "mass": [[...]]}
//   partition     {"base": [...], "blocks": [[...]]}
//   pipeline      {"levels": [...], "transition": [[...]], "initial": [...],
//                  "encoder": [[...]], "mapper": [[...]],
//                  "decoder": "map" | [[...]],
//                  optional "x": [...], "y": [...] stage labels}

nlohmann::json to_json(const FiniteDistribution& d);
FiniteDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Channel& c);
Channel channel_from_json(const nlohmann::json& j);

nlohmann::json to_json(const JointDistribution& j);
JointDistribution joint_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& j);

RiskPipeline pipeline_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CapacityResult& r);
nlohmann::json to_json(const ErrorReport& r);
nlohmann::json to_json(const DpiReport& r);
nlohmann::json to_json(const HeinrichReport& r);
nlohmann::json to_json(const DesignSolution& s);

DesignProblem design_problem_from_json(const nlohmann::json& j);
CollisionGrid collision_grid_from_json(const nlohmann::json& j);

// Write-temp-then-rename; the destination either keeps its old content or
// carries the complete new content, never a partial write.
void atomic_write(const std::filesystem::path& path, const std::string& content);

// Shortest decimal form that parses back to the same double (to_chars).
std::string shortest_double_string(double v);

}  // namespace riskinfo
