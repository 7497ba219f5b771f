#include "akb/model_io.hpp"

#include "akb/types.hpp"

#include <fstream>

namespace akb {

using nlohmann::json;

namespace {

Knots read_knots(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 5)
    throw ConfigError(std::string("model field '") + key + "' must be an array of 5 numbers");
  Knots knots{};
  for (std::size_t i = 0; i < 5; ++i) {
    const json& value = j.at(key).at(i);
    if (!value.is_number()) throw ConfigError(std::string("model field '") + key + "' holds a non-number");
    knots[i] = value.get<double>();
  }
  return knots;
}

double number_or(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

}  // namespace

void to_json(json& j, const AkbModel& model) {
  j = json{{"name", model.name},
           {"knots_start", model.knots_start},
           {"knots_final", model.knots_final}};
}

void from_json(const json& j, AkbModel& model) {
  if (!j.is_object()) throw ConfigError("model must be a JSON object");
  if (!j.contains("name") || !j.at("name").is_string())
    throw ConfigError("model field 'name' must be a string");
  model.name = j.at("name").get<std::string>();
  model.knots_start = read_knots(j, "knots_start");
  model.knots_final = read_knots(j, "knots_final");
}

void to_json(json& j, const InertiaStrategy& strategy) {
  if (const auto* s = std::get_if<ConstantInertia>(&strategy)) {
    j = json{{"type", "constant"}, {"w", s->w}};
  } else if (const auto* s = std::get_if<LdiwInertia>(&strategy)) {
    j = json{{"type", "ldiw"}, {"w_min", s->w_min}, {"w_max", s->w_max}};
  } else if (const auto* s = std::get_if<LanguidInertia>(&strategy)) {
    j = json{{"type", "languid"}, {"w0", s->w0}};
  } else {
    j = json{{"type", "anakatabatic"}, {"model", std::get<AnakatabaticInertia>(strategy).model}};
  }
}

void from_json(const json& j, InertiaStrategy& strategy) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw ConfigError("inertia must be an object with a string 'type'");
  const auto type = j.at("type").get<std::string>();
  if (type == "constant") {
    strategy = ConstantInertia{number_or(j, "w", 0.72)};
  } else if (type == "ldiw") {
    strategy = LdiwInertia{number_or(j, "w_min", 0.4), number_or(j, "w_max", 0.9)};
  } else if (type == "languid") {
    strategy = LanguidInertia{number_or(j, "w0", 0.72)};
  } else if (type == "anakatabatic") {
    if (!j.contains("model")) throw ConfigError("anakatabatic inertia needs a 'model'");
    const json& model = j.at("model");
    if (model.is_string()) {
      try {
        strategy = AnakatabaticInertia{builtin_model(model.get<std::string>())};
      } catch (const NotFound& e) {
        throw ConfigError(e.what());
      }
    } else {
      strategy = AnakatabaticInertia{model.get<AkbModel>()};
    }
  } else {
    throw ConfigError("unknown inertia type: " + type);
  }
  validate(strategy);
}

AkbModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("model file " + path.string() + ": " + e.what());
  }
  return j.get<AkbModel>();
}

void save_model(const std::filesystem::path& path, const AkbModel& model,
                const json& provenance) {
  json j = model;
  if (!provenance.is_null()) j["provenance"] = provenance;
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write model file " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace akb
