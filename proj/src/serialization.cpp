#include "riskinfo/serialization.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>

#include "riskinfo/errors.hpp"

namespace riskinfo {

namespace {

using nlohmann::json;

std::vector<std::string> labels_from(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw_error(errc::invalid_alphabet,
                std::string("expected a '") + key + "' array of labels");
  }
  std::vector<std::string> labels;
  labels.reserve(j[key].size());
  for (const auto& item : j[key]) {
    if (!item.is_string()) {
      throw_error(errc::invalid_alphabet, "labels must be strings");
    }
    labels.push_back(item.get<std::string>());
  }
  return labels;
}

std::vector<double> doubles_from(const json& arr, const char* what) {
  if (!arr.is_array()) {
    throw_error(errc::length_mismatch, std::string(what) + " must be an array");
  }
  std::vector<double> values;
  values.reserve(arr.size());
  for (const auto& item : arr) {
    if (!item.is_number()) {
      throw_error(errc::length_mismatch, std::string(what) + " must hold numbers");
    }
    values.push_back(item.get<double>());
  }
  return values;
}

Matrix matrix_from(const json& arr, const char* what) {
  if (!arr.is_array() || arr.empty()) {
    throw_error(errc::length_mismatch, std::string(what) + " must be a non-empty matrix");
  }
  const std::size_t rows = arr.size();
  std::size_t cols = 0;
  Matrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = doubles_from(arr[i], what);
    if (i == 0) {
      cols = row.size();
      if (cols == 0) {
        throw_error(errc::length_mismatch, std::string(what) + " rows must be non-empty");
      }
      m = Matrix(rows, cols);
    } else if (row.size() != cols) {
      throw_error(errc::length_mismatch, std::string(what) + " rows have ragged lengths");
    }
    for (std::size_t jcol = 0; jcol < cols; ++jcol) m.at(i, jcol) = row[jcol];
  }
  return m;
}

json matrix_to(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

json to_json(const FiniteDistribution& d) {
  json j;
  j["alphabet"] = d.alphabet().labels();
  j["probs"] = std::vector<double>(d.probs().begin(), d.probs().end());
  return j;
}

FiniteDistribution distribution_from_json(const json& j) {
  return FiniteDistribution(Alphabet(labels_from(j, "alphabet")),
                            doubles_from(j.value("probs", json::array()), "probs"));
}

json to_json(const Channel& c) {
  json j;
  j["input"] = c.input_alphabet().labels();
  j["output"] = c.output_alphabet().labels();
  j["rows"] = matrix_to(c.rows());
  return j;
}

Channel channel_from_json(const json& j) {
  return Channel(Alphabet(labels_from(j, "input")), Alphabet(labels_from(j, "output")),
                 matrix_from(j.value("rows", json::array()), "rows"));
}

json to_json(const JointDistribution& jd) {
  json j;
  j["row"] = jd.row_alphabet().labels();
  j["col"] = jd.col_alphabet().labels();
  j["mass"] = matrix_to(jd.mass());
  return j;
}

JointDistribution joint_from_json(const json& j) {
  return JointDistribution(Alphabet(labels_from(j, "row")),
                           Alphabet(labels_from(j, "col")),
                           matrix_from(j.value("mass", json::array()), "mass"));
}

json to_json(const Partition& p) {
  json blocks = json::array();
  for (const auto& members : p.blocks()) {
    json block = json::array();
    for (std::size_t idx : members) block.push_back(p.base().label(idx));
    blocks.push_back(std::move(block));
  }
  json j;
  j["base"] = p.base().labels();
  j["blocks"] = std::move(blocks);
  return j;
}

Partition partition_from_json(const json& j) {
  Alphabet base(labels_from(j, "base"));
  if (!j.contains("blocks") || !j["blocks"].is_array()) {
    throw_error(errc::partition_uncovered, "expected a 'blocks' array");
  }
  std::vector<std::vector<std::string>> blocks;
  for (const auto& block : j["blocks"]) {
    std::vector<std::string> labels;
    for (const auto& label : block) {
      if (!label.is_string()) {
        throw_error(errc::partition_unknown_label, "block labels must be strings");
      }
      labels.push_back(label.get<std::string>());
    }
    blocks.push_back(std::move(labels));
  }
  return Partition(std::move(base), std::move(blocks));
}

RiskPipeline pipeline_from_json(const json& j) {
  Alphabet levels(labels_from(j, "levels"));
  Matrix transition = matrix_from(j.value("transition", json::array()), "transition");
  std::vector<double> initial = doubles_from(j.value("initial", json::array()), "initial");
  Matrix encoder = matrix_from(j.value("encoder", json::array()), "encoder");
  Matrix mapper = matrix_from(j.value("mapper", json::array()), "mapper");

  Alphabet xs = j.contains("x") ? Alphabet(labels_from(j, "x"))
                                : Alphabet::indexed("x", encoder.cols());
  Alphabet ys = j.contains("y") ? Alphabet(labels_from(j, "y"))
                                : Alphabet::indexed("y", mapper.cols());

  MarkovRiskSource source(levels, Channel(levels, levels, std::move(transition)),
                          FiniteDistribution(levels, std::move(initial)));
  Channel encoder_ch(levels, xs, std::move(encoder));
  Channel mapper_ch(xs, ys, std::move(mapper));

  const json decoder_spec = j.value("decoder", json("map"));
  if (decoder_spec.is_string()) {
    if (decoder_spec.get<std::string>() != "map") {
      throw_error(errc::length_mismatch,
                  "decoder must be \"map\" or an explicit row matrix");
    }
    return RiskPipeline::with_map_decoder(std::move(source), std::move(encoder_ch),
                                          std::move(mapper_ch));
  }
  Channel decoder_ch(ys, levels, matrix_from(decoder_spec, "decoder"));
  return RiskPipeline(std::move(source), std::move(encoder_ch), std::move(mapper_ch),
                      std::move(decoder_ch));
}

json to_json(const CapacityResult& r) {
  json j;
  j["capacity_bits"] = r.capacity_bits;
  j["optimal_input"] = to_json(r.optimal_input);
  j["iterations"] = r.iterations;
  j["gap"] = r.gap_bits;
  j["converged"] = r.converged;
  return j;
}

json to_json(const ErrorReport& r) {
  // Never-occurring classes carry NaN in memory; the document says null.
  const auto value_or_null = [](double v) {
    return std::isnan(v) ? json(nullptr) : json(v);
  };
  json per_class = json::object();
  for (const auto& [label, value] : r.per_class) per_class[label] = value_or_null(value);
  json j;
  j["per_class"] = std::move(per_class);
  j["overall"] = r.overall;
  j["method"] = r.method == ErrorMethod::exact ? "exact" : "empirical";
  j["never_occurs"] = r.never_occurs;
  if (r.per_class_given_estimate) {
    json alt = json::object();
    for (const auto& [label, value] : *r.per_class_given_estimate) {
      alt[label] = value_or_null(value);
    }
    j["per_class_given_estimate"] = std::move(alt);
  }
  return j;
}

json to_json(const DpiReport& r) {
  return json{{"i_lambda_lambdahat_bits", r.i_level_estimate_bits},
              {"i_y_lambdahat_bits", r.i_y_estimate_bits},
              {"i_x_y_bits", r.i_x_y_bits},
              {"h_y_bits", r.h_y_bits},
              {"h_x_bits", r.h_x_bits},
              {"h_lambdahat_bits", r.h_estimate_bits},
              {"slack_decoder_bits", r.slack_decoder_bits},
              {"slack_mapper_bits", r.slack_mapper_bits}};
}

json to_json(const HeinrichReport& r) {
  return json{{"h_fine", r.h_fine_bits},   {"h_coarse", r.h_coarse_bits},
              {"i_fine", r.i_fine_bits},   {"i_coarse", r.i_coarse_bits},
              {"delta_h", r.delta_h_bits}, {"delta_i", r.delta_i_bits},
              {"units", "bits"}};
}

json to_json(const DesignSolution& s) {
  json j;
  j["chosen"] = s.chosen;
  j["h_x_bits"] = s.h_x_bits;
  j["total_cost"] = s.total_cost;
  j["feasible"] = s.feasible;
  j["method"] = s.method == SearchMethod::exhaustive ? "exhaustive" : "greedy";
  return j;
}

DesignProblem design_problem_from_json(const json& j) {
  DesignProblem problem;
  if (!j.contains("candidates") || !j["candidates"].is_array() ||
      j["candidates"].empty()) {
    throw_error(errc::no_candidates, "expected a non-empty 'candidates' array");
  }
  for (const auto& c : j["candidates"]) {
    if (!c.contains("name") || !c["name"].is_string()) {
      throw_error(errc::no_candidates, "candidates need string names");
    }
    std::vector<double> probs = doubles_from(c.value("probs", json::array()), "probs");
    Alphabet support = c.contains("alphabet")
                           ? Alphabet(labels_from(c, "alphabet"))
                           : Alphabet::indexed("v", probs.size());
    const double cost = c.value("cost", 0.0);
    if (cost < 0.0 || !std::isfinite(cost)) {
      throw_error(errc::negative_weight, "candidate costs must be finite and >= 0");
    }
    problem.candidates.push_back(
        {c["name"].get<std::string>(),
         FiniteDistribution::from_weights(std::move(support), std::move(probs)), cost});
  }
  problem.budget = j.value("budget", 0.0);
  problem.h_target_bits = j.value("h_target", 0.0);
  if (problem.budget < 0.0 || problem.h_target_bits < 0.0) {
    throw_error(errc::negative_weight, "budget and h_target must be >= 0");
  }
  const std::string mode = j.value("mode", "weak");
  if (mode == "strong") {
    problem.mode = ConstraintMode::strong;
  } else if (mode == "weak") {
    problem.mode = ConstraintMode::weak;
  } else {
    throw_error(errc::length_mismatch, "mode must be \"strong\" or \"weak\"");
  }
  return problem;
}

CollisionGrid collision_grid_from_json(const json& j) {
  auto field = [&](const char* name) -> GridField {
    if (!j.contains(name)) {
      throw_error(errc::empty_range, std::string("grid spec missing field ") + name);
    }
    const json& f = j[name];
    if (f.is_number()) return f.get<double>();
    if (f.is_object()) {
      GridAxis axis;
      axis.min = f.value("min", 0.0);
      axis.max = f.value("max", 0.0);
      axis.steps = f.value("steps", std::size_t{1});
      return axis;
    }
    throw_error(errc::empty_range,
                std::string(name) + " must be a number or {min,max,steps}");
  };
  CollisionGrid grid;
  grid.v1 = field("v1");
  grid.v2 = field("v2");
  grid.a1 = field("a1");
  grid.a2 = field("a2");
  grid.h2 = field("h2");
  grid.r2 = field("r2");
  return grid;
}

std::string shortest_double_string(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
  // Unique sibling temp file, then rename into place.
  std::random_device rd;
  fs::path tmp;
  for (int attempt = 0; attempt < 64; ++attempt) {
    tmp = dir / (path.filename().string() + ".tmp" + std::to_string(rd()));
    if (!fs::exists(tmp)) break;
  }
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw_error(errc::internal, "cannot open temporary file " + tmp.string());
    }
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw_error(errc::internal, "failed writing " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw_error(errc::internal, "failed to move report into place at " + path.string());
  }
}

}  // namespace riskinfo
