#pragma once

#include "akb/inertia.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>

namespace akb {

/// {"name": ..., "knots_start": [5], "knots_final": [5]}
void to_json(nlohmann::json& j, const AkbModel& model);
/// Throws ConfigError on a malformed object.
void from_json(const nlohmann::json& j, AkbModel& model);

/// Strategy objects: {"type": "constant", "w": 0.72}, {"type": "ldiw", "w_min", "w_max"},
/// {"type": "languid", "w0"}, {"type": "anakatabatic", "model": "Rightward Peaks" | {...}}.
void to_json(nlohmann::json& j, const InertiaStrategy& strategy);
void from_json(const nlohmann::json& j, InertiaStrategy& strategy);

AkbModel load_model(const std::filesystem::path& path);
void save_model(const std::filesystem::path& path, const AkbModel& model,
                const nlohmann::json& provenance = nullptr);

}  // namespace akb
