#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "visualenv/cartpole.hpp"
#include "visualenv/env.hpp"
#include "visualenv/goalie.hpp"
#include "visualenv/hover2d.hpp"

namespace visualenv {

/// Parameters for every environment plus the observation shape.
struct EnvConfig {
  CartPoleParams cartpole;
  HoverParams hover2d;
  GoalieParams goalie;
  ObservationSpec observation;
};

const std::vector<std::string>& env_names();
bool is_env_name(std::string_view name);

/// Throws EnvError(UnknownEnv) or EnvError(InvalidConfig).
std::unique_ptr<Environment> make_env(std::string_view name, const EnvConfig& config = {});

/// TOML overrides: tables [cartpole], [hover2d], [goalie] and [observation]
/// whose keys are the parameter field names. Unknown tables or keys and
/// values of the wrong type are rejected with EnvError(InvalidConfig).
EnvConfig parse_config(std::string_view toml_text);
EnvConfig load_config(const std::filesystem::path& path);

}  // namespace visualenv
