#include "visualenv/registry.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <variant>

#include <toml.hpp>

namespace visualenv {

namespace {

using Field = std::variant<double*, int*, std::uint64_t*>;
using Binding = std::vector<std::pair<std::string_view, Field>>;

Binding bind(CartPoleParams& p) {
  return {{"gravity", &p.gravity},         {"masscart", &p.masscart},
          {"masspole", &p.masspole},       {"length", &p.length},
          {"force_mag", &p.force_mag},     {"tau", &p.tau},
          {"x_threshold", &p.x_threshold}, {"theta_threshold", &p.theta_threshold},
          {"win_steps", &p.win_steps},     {"init_range", &p.init_range}};
}

Binding bind(HoverParams& p) {
  return {{"bounds", &p.bounds},
          {"start_range", &p.start_range},
          {"altitude", &p.altitude},
          {"pulse", &p.pulse},
          {"dt", &p.dt},
          {"max_steps", &p.max_steps},
          {"target_radius", &p.target_radius},
          {"focal_length", &p.focal_length},
          {"sensor_width", &p.sensor_width},
          {"ring_inner", &p.ring_inner},
          {"ring_outer", &p.ring_outer},
          {"ground_seed", &p.ground_seed}};
}

Binding bind(GoalieParams& p) {
  return {{"start_distance", &p.start_distance}, {"speed", &p.speed},
          {"max_angle", &p.max_angle},           {"bounds", &p.bounds},
          {"catch_radius", &p.catch_radius},     {"goalie_step", &p.goalie_step},
          {"field_seed", &p.field_seed}};
}

Binding bind(ObservationSpec& s) {
  return {{"height", &s.height}, {"width", &s.width}, {"depth", &s.depth}};
}

[[noreturn]] void bad(const std::string& what) {
  throw EnvError(EnvErrorCode::InvalidConfig, "config: " + what);
}

void apply(const toml::table& table, std::string_view section, const Binding& binding) {
  for (const auto& [key, node] : table) {
    const std::string name(key.str());
    auto it = std::find_if(binding.begin(), binding.end(),
                           [&](const auto& b) { return b.first == name; });
    if (it == binding.end()) bad("unknown key '" + name + "' in [" + std::string(section) + "]");
    std::visit(
        [&](auto* target) {
          using T = std::remove_pointer_t<decltype(target)>;
          if constexpr (std::is_same_v<T, double>) {
            if (auto v = node.value<double>()) *target = *v;
            else bad("'" + name + "' must be a number");
          } else if constexpr (std::is_same_v<T, int>) {
            auto v = node.as_integer();
            if (!v) bad("'" + name + "' must be an integer");
            *target = static_cast<int>(v->get());
          } else {
            auto v = node.as_integer();
            if (!v || v->get() < 0) bad("'" + name + "' must be a non-negative integer");
            *target = static_cast<std::uint64_t>(v->get());
          }
        },
        it->second);
  }
}

}  // namespace

const std::vector<std::string>& env_names() {
  static const std::vector<std::string> names{"cartpole", "hover2d", "goalie"};
  return names;
}

bool is_env_name(std::string_view name) {
  for (const auto& n : env_names())
    if (n == name) return true;
  return false;
}

std::unique_ptr<Environment> make_env(std::string_view name, const EnvConfig& config) {
  if (name == "cartpole") return std::make_unique<CartPoleEnv>(config.cartpole, config.observation);
  if (name == "hover2d") return std::make_unique<Hover2DEnv>(config.hover2d, config.observation);
  if (name == "goalie") return std::make_unique<GoalieEnv>(config.goalie, config.observation);
  throw EnvError(EnvErrorCode::UnknownEnv, "unknown environment '" + std::string(name) + "'");
}

EnvConfig parse_config(std::string_view toml_text) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    bad(std::string(e.description()));
  }
  EnvConfig cfg;
  for (const auto& [key, node] : root) {
    const std::string section(key.str());
    const toml::table* table = node.as_table();
    if (table == nullptr) bad("top-level key '" + section + "' must be a table");
    if (section == "cartpole") apply(*table, section, bind(cfg.cartpole));
    else if (section == "hover2d") apply(*table, section, bind(cfg.hover2d));
    else if (section == "goalie") apply(*table, section, bind(cfg.goalie));
    else if (section == "observation") apply(*table, section, bind(cfg.observation));
    else bad("unknown table [" + section + "]");
  }
  cfg.cartpole.validate();
  cfg.hover2d.validate();
  cfg.goalie.validate();
  cfg.observation.validate();
  return cfg;
}

EnvConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace visualenv
