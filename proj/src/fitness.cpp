#include "roadgen/fitness.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace roadgen {

namespace {

template <typename Fn>
void for_each_weight(FitnessWeights& w, Fn&& fn) {
  fn("w_dead_ends", w.w_dead_ends);
  fn("w_components", w.w_components);
  fn("w_boundary", w.w_boundary);
  fn("w_bridges", w.w_bridges);
  fn("w_adjacent_crossings", w.w_adjacent_crossings);
  fn("w_adjacent_turns", w.w_adjacent_turns);
  fn("w_cyclomatic_bonus", w.w_cyclomatic_bonus);
  fn("w_straight_bonus", w.w_straight_bonus);
}

}  // namespace

FitnessValue fitness(const MetricReport& r, const FitnessWeights& w) {
  if (r.connected_components == 0) return {FitnessValue::kInvalid, false};
  const double value = w.w_dead_ends * r.dead_ends + w.w_components * (r.connected_components - 1) +
                       w.w_boundary * r.boundary_violations + w.w_bridges * r.bridges +
                       w.w_adjacent_crossings * r.adjacent_crossing_violation_score +
                       w.w_adjacent_turns * r.adjacent_turns - w.w_cyclomatic_bonus * r.cyclomatic_complexity -
                       w.w_straight_bonus * r.straight_run_score;
  return {value, true};
}

void validate(const FitnessWeights& w) {
  FitnessWeights copy = w;
  for_each_weight(copy, [](const char* name, double v) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string("weight ") + name + " is not finite");
  });
}

nlohmann::json to_json(const FitnessWeights& w) {
  nlohmann::json doc = nlohmann::json::object();
  FitnessWeights copy = w;
  for_each_weight(copy, [&](const char* name, double v) { doc[name] = v; });
  return doc;
}

FitnessWeights weights_from_json(const nlohmann::json& doc) {
  const nlohmann::json& body = doc.contains("weights") ? doc.at("weights") : doc;
  if (!body.is_object()) throw std::invalid_argument("weights must be a JSON object");
  FitnessWeights w;
  std::size_t matched = 0;
  for_each_weight(w, [&](const char* name, double& v) {
    if (!body.contains(name)) return;
    if (!body.at(name).is_number()) throw std::invalid_argument(std::string("weight ") + name + " is not a number");
    v = body.at(name).get<double>();
    ++matched;
  });
  if (matched != body.size()) {
    for (const auto& [key, value] : body.items()) {
      if (!to_json(FitnessWeights{}).contains(key)) throw std::invalid_argument("unknown weight \"" + key + "\"");
    }
  }
  validate(w);
  return w;
}

FitnessWeights load_weights(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open weights file " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed weights file " + path + ": " + e.what());
  }
  return weights_from_json(doc);
}

}  // namespace roadgen
