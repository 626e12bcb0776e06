#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "riskinfo/errors.hpp"
#include "riskinfo/measures.hpp"
#include "riskinfo/serialization.hpp"

using namespace riskinfo;
using nlohmann::json;
using testutil::alpha;

TEST_CASE("distribution json round-trips at full precision") {
  Rng rng(1);
  for (int iter = 0; iter < 200; ++iter) {
    auto d = testutil::random_distribution(rng, alpha(2 + rng.next_u64() % 6));
    const std::string dumped = to_json(d).dump();
    auto back = distribution_from_json(json::parse(dumped));
    REQUIRE(back.size() == d.size());
    CHECK(back.alphabet() == d.alphabet());
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(back[i] == d[i]);
  }
}

TEST_CASE("channel and joint json round-trips at full precision") {
  Rng rng(2);
  for (int iter = 0; iter < 100; ++iter) {
    auto ch = testutil::random_channel(rng, alpha(3, "i"), alpha(4, "o"));
    auto ch2 = channel_from_json(json::parse(to_json(ch).dump()));
    CHECK(ch2.rows() == ch.rows());
    CHECK(ch2.input_alphabet() == ch.input_alphabet());

    auto j = testutil::random_joint(rng, alpha(3, "r"), alpha(2, "c"));
    auto j2 = joint_from_json(json::parse(to_json(j).dump()));
    CHECK(j2.mass() == j.mass());
  }
}

TEST_CASE("partition json round-trip") {
  const Alphabet base({"a", "b", "c", "d"});
  const Partition p(base, {{"a", "c"}, {"b"}, {"d"}});
  auto p2 = partition_from_json(json::parse(to_json(p).dump()));
  CHECK(p2.base() == base);
  CHECK(p2.blocks() == p.blocks());
}

TEST_CASE("malformed documents raise typed errors") {
  CHECK_THROWS_AS(distribution_from_json(json{{"probs", {0.5, 0.5}}}), Error);
  CHECK_THROWS_AS(distribution_from_json(json{{"alphabet", {"a", "b"}}}), Error);
  CHECK_THROWS_AS(
      channel_from_json(json{{"input", {"a"}}, {"output", {"b"}}, {"rows", "x"}}),
      Error);
  CHECK_THROWS_AS(joint_from_json(json{{"row", {"a"}}, {"col", {"b"}},
                                       {"mass", {{0.5}, {0.5}}}}),
                  Error);
  // Negative and unnormalized payloads.
  CHECK_THROWS_AS(distribution_from_json(
                      json{{"alphabet", {"a", "b"}}, {"probs", {-0.5, 1.5}}}),
                  Error);
  CHECK_THROWS_AS(distribution_from_json(
                      json{{"alphabet", {"a", "b"}}, {"probs", {0.25, 0.25}}}),
                  Error);
}

TEST_CASE("pipeline config loads with explicit and map decoders") {
  json config = {
      {"levels", {"lo", "hi"}},
      {"transition", {{0.9, 0.1}, {0.2, 0.8}}},
      {"initial", {0.5, 0.5}},
      {"encoder", {{0.8, 0.2}, {0.3, 0.7}}},
      {"mapper", {{0.95, 0.05}, {0.1, 0.9}}},
      {"decoder", "map"},
  };
  auto p = pipeline_from_json(config);
  CHECK(p.levels().label(0) == "lo");
  CHECK(p.encoder().output_alphabet().label(0) == "x0");
  // MAP decoder rows are deterministic.
  for (std::size_t y = 0; y < 2; ++y) {
    double row_max = std::max(p.decoder().rows().at(y, 0), p.decoder().rows().at(y, 1));
    CHECK(row_max == 1.0);
  }

  config["decoder"] = {{1.0, 0.0}, {0.0, 1.0}};
  config["x"] = {"mileage", "speeding"};
  config["y"] = {"claim", "no_claim"};
  auto q = pipeline_from_json(config);
  CHECK(q.encoder().output_alphabet().label(1) == "speeding");
  CHECK(q.mapper().output_alphabet().label(0) == "claim");
  CHECK(q.decoder().rows().at(0, 0) == 1.0);

  config["decoder"] = "bogus";
  CHECK_THROWS_AS(pipeline_from_json(config), Error);
}

TEST_CASE("design problem and collision grid parse") {
  json dp = {
      {"candidates",
       {{{"name", "odometer"}, {"probs", {0.5, 0.5}}, {"cost", 2.0}},
        {{"name", "shoes"}, {"probs", {0.99999, 0.00001}}, {"cost", 0.5}}}},
      {"budget", 2.5},
      {"h_target", 0.2},
      {"mode", "weak"},
  };
  auto problem = design_problem_from_json(dp);
  REQUIRE(problem.candidates.size() == 2);
  CHECK(problem.candidates[0].name == "odometer");
  CHECK(problem.candidates[1].cost == 0.5);
  CHECK(problem.mode == ConstraintMode::weak);

  json grid = {
      {"v1", 20.0}, {"v2", 20.0}, {"a1", 6.0}, {"a2", 6.0},
      {"h2", {{"min", 0.0}, {"max", 3.0}, {"steps", 4}}},
      {"r2", 1.0},
  };
  auto g = collision_grid_from_json(grid);
  auto result = collision_channel(g);
  CHECK(result.cells.size() == 4);

  grid.erase("r2");
  CHECK_THROWS_AS(collision_grid_from_json(grid), Error);
}

TEST_CASE("atomic_write replaces content completely") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "riskinfo_test_io";
  fs::create_directories(dir);
  const fs::path target = dir / "report.json";

  atomic_write(target, "first");
  atomic_write(target, "second version");
  std::ifstream in(target);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  CHECK(content == "second version");

  // No temp files left behind.
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) ++entries;
  CHECK(entries == 1);
  fs::remove_all(dir);
}

TEST_CASE("error and dpi reports export to json") {
  auto l2 = alpha(2, "c");
  Matrix t(2, 2, 0.0);
  t.at(0, 0) = 1.0;
  t.at(1, 0) = 1.0;  // c1 never recurs
  MarkovRiskSource source(l2, Channel(l2, l2, std::move(t)),
                          FiniteDistribution::uniform(l2));
  RiskPipeline p(std::move(source), Channel::identity(l2), Channel::identity(l2),
                 Channel::identity(l2));

  auto ej = to_json(pricing_errors_exact(p, true));
  CHECK(ej["method"] == "exact");
  CHECK(ej["overall"] == 0.0);
  CHECK(ej["per_class"]["c0"] == 0.0);
  CHECK(ej["per_class"]["c1"].is_null());  // NaN sentinel becomes null
  CHECK(ej["never_occurs"][0] == "c1");
  CHECK(ej.contains("per_class_given_estimate"));

  auto dj = to_json(dpi_audit(p));
  for (const char* key : {"i_lambda_lambdahat_bits", "i_y_lambdahat_bits",
                          "i_x_y_bits", "h_y_bits", "h_x_bits", "h_lambdahat_bits",
                          "slack_decoder_bits", "slack_mapper_bits"}) {
    CHECK(dj.contains(key));
  }
  CHECK(dj["slack_decoder_bits"].get<double>() >= -1e-12);
}

TEST_CASE("report serializers label their units") {
  auto r = heinrich_demo();
  auto j = to_json(r);
  CHECK(j["units"] == "bits");
  CHECK(j["delta_h"].get<double>() > 0.0);

  auto cap = blahut_arimoto(testutil::bsc(0.1));
  auto cj = to_json(cap);
  CHECK(cj.contains("capacity_bits"));
  CHECK(cj.contains("optimal_input"));
  CHECK(cj.contains("iterations"));
  CHECK(cj.contains("gap"));
}
