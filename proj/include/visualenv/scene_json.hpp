#pragma once

#include <string>

#include <json.hpp>

#include "visualenv/scene.hpp"

namespace visualenv {

// JSON schema is documented in README.md ("Scene JSON").
nlohmann::json scene_to_json(const Scene& scene);
/// Throws SceneError on schema violations or invariant failures.
Scene scene_from_json(const nlohmann::json& doc);

}  // namespace visualenv
