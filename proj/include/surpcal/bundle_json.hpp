#pragma once

// JSON wire format for review bundles:
//   {"signals": [labels...], "scores": [numbers...],
//    "ratings": [label, ...], "predictions": [[p, ...], ...]}

#include <string>
#include <vector>

#include <json.hpp>

#include "surpcal/errors.hpp"
#include "surpcal/model.hpp"

namespace surpcal {

inline ReviewBundle bundle_from_json(const nlohmann::json& j) {
  for (const char* key : {"signals", "scores", "ratings", "predictions"})
    if (!j.contains(key) || !j.at(key).is_array())
      throw InvalidArgument(std::string("bundle: missing or non-array field '") + key + "'");

  SignalSet signals(j.at("signals").get<std::vector<std::string>>(),
                    j.at("scores").get<Vec>());
  std::vector<std::size_t> ratings;
  for (const auto& r : j.at("ratings")) {
    if (!r.is_string()) throw InvalidArgument("bundle: ratings must be signal labels");
    ratings.push_back(signals.index_of(r.get<std::string>()));
  }
  std::vector<Vec> predictions;
  for (const auto& p : j.at("predictions")) predictions.push_back(p.get<Vec>());
  return ReviewBundle(std::move(signals), std::move(ratings), std::move(predictions));
}

inline ReviewBundle bundle_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument(std::string("bundle: ") + e.what());
  }
  try {
    return bundle_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("bundle: ") + e.what());
  }
}

inline nlohmann::json bundle_to_json(const ReviewBundle& b) {
  nlohmann::json j;
  j["signals"] = b.signals.labels;
  j["scores"] = b.signals.phi;
  nlohmann::json ratings = nlohmann::json::array();
  for (std::size_t r : b.ratings) ratings.push_back(b.signals.labels[r]);
  j["ratings"] = std::move(ratings);
  j["predictions"] = b.predictions;
  return j;
}

}  // namespace surpcal
