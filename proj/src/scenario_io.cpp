#include "stackgame/scenario_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace stackgame {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& message) {
  throw GameError(ErrorCode::InvalidArgument, "scenario: " + message);
}

void reject_unknown_keys(const json& object, const char* const* allowed,
                         std::size_t allowed_count, const std::string& where) {
  for (auto it = object.begin(); it != object.end(); ++it) {
    bool known = false;
    for (std::size_t i = 0; i < allowed_count && !known; ++i) {
      known = it.key() == allowed[i];
    }
    if (!known) {
      schema_error("unknown key \"" + it.key() + "\" in " + where);
    }
  }
}

double require_number(const json& object, const char* key,
                      const std::string& where) {
  if (!object.contains(key)) {
    schema_error(where + " is missing key \"" + key + "\"");
  }
  const json& value = object.at(key);
  if (!value.is_number()) {
    schema_error(where + " key \"" + key + "\" must be a number");
  }
  return value.get<double>();
}

}  // namespace

Scenario parse_scenario(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    schema_error(std::string("not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    schema_error("top level must be an object");
  }
  static const char* kTopKeys[] = {"resources", "targets"};
  reject_unknown_keys(doc, kTopKeys, 2, "the scenario object");

  if (!doc.contains("resources")) {
    schema_error("the scenario object is missing key \"resources\"");
  }
  if (!doc.at("resources").is_number_integer()) {
    schema_error("key \"resources\" must be an integer");
  }
  if (!doc.contains("targets")) {
    schema_error("the scenario object is missing key \"targets\"");
  }
  if (!doc.at("targets").is_array()) {
    schema_error("key \"targets\" must be an array");
  }

  Scenario scenario;
  scenario.resource_count = doc.at("resources").get<int>();

  static const char* kTargetKeys[] = {"name", "reward_defender", "cost_defender",
                                      "reward_attacker", "cost_attacker"};
  int index = 0;
  for (const json& entry : doc.at("targets")) {
    std::ostringstream where;
    where << "targets[" << index << "]";
    if (!entry.is_object()) {
      schema_error(where.str() + " must be an object");
    }
    reject_unknown_keys(entry, kTargetKeys, 5, where.str());
    if (!entry.contains("name")) {
      schema_error(where.str() + " is missing key \"name\"");
    }
    if (!entry.at("name").is_string()) {
      schema_error(where.str() + " key \"name\" must be a string");
    }
    TargetProfile profile;
    profile.reward_defender = require_number(entry, "reward_defender", where.str());
    profile.cost_defender = require_number(entry, "cost_defender", where.str());
    profile.reward_attacker = require_number(entry, "reward_attacker", where.str());
    profile.cost_attacker = require_number(entry, "cost_attacker", where.str());
    scenario.targets.push_back(profile);
    ++index;
  }
  return validate_scenario(std::move(scenario));
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw GameError(ErrorCode::IoFailure,
                    "cannot read scenario file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) {
    throw GameError(ErrorCode::IoFailure,
                    "error while reading scenario file: " + path);
  }
  return parse_scenario(buffer.str());
}

}  // namespace stackgame
