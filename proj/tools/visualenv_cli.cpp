// visualenv command line: run, bench and serve.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "visualenv/rollout.hpp"
#include "visualenv/server.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

int usage_error(const std::string& msg) {
  std::cerr << "error: " << msg << '\n';
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace visualenv;

  CLI::App app{"Headless visual reinforcement-learning environments"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "TOML file with environment parameter overrides");

  std::string env_name;
  std::uint64_t seed = 0;

  auto* run = app.add_subcommand("run", "Roll out episodes and print one JSON summary per episode");
  int episodes = 1;
  std::string policy_name = "random";
  std::string dump_dir;
  std::string scene_dump;
  run->add_option("--env", env_name, "cartpole | hover2d | goalie")->required();
  run->add_option("--seed", seed, "Base seed");
  run->add_option("--episodes", episodes, "Number of episodes")->check(CLI::PositiveNumber);
  run->add_option("--policy", policy_name, "random | scripted")
      ->check(CLI::IsMember({"random", "scripted"}));
  run->add_option("--dump", dump_dir, "Directory for per-step grayscale PNG frames");
  run->add_option("--scene-dump", scene_dump, "Write the first reset scene as JSON");

  auto* bench = app.add_subcommand("bench", "Measure samples per second with a random policy");
  std::int64_t steps = 1000;
  bench->add_option("--env", env_name, "cartpole | hover2d | goalie")->required();
  bench->add_option("--steps", steps, "Number of environment steps")->required();
  bench->add_option("--seed", seed, "Base seed");

  auto* serve = app.add_subcommand("serve", "Serve the JSON-lines environment protocol");
  std::string transport = "stdio";
  int port = 5555;
  bool any_interface = false;
  serve->add_option("--transport", transport, "stdio | tcp")
      ->check(CLI::IsMember({"stdio", "tcp"}));
  serve->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve->add_flag("--listen-any", any_interface, "Bind 0.0.0.0 instead of loopback");

  // Config may be given before or after the subcommand.
  for (auto* sub : {run, bench, serve})
    sub->add_option("--config", config_path, "TOML file with environment parameter overrides");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  EnvConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
  } catch (const EnvError& e) {
    return usage_error(e.what());
  }

  try {
    if (*run) {
      if (!is_env_name(env_name)) return usage_error("unknown environment '" + env_name + "'");
      RunConfig rc;
      rc.env = env_name;
      rc.seed = seed;
      rc.episodes = episodes;
      rc.policy = policy_name == "scripted" ? Policy::Scripted : Policy::Random;
      if (!dump_dir.empty()) rc.dump_dir = dump_dir;
      if (!scene_dump.empty()) rc.scene_dump = scene_dump;
      rc.env_config = config;
      run_episodes(rc, [](const EpisodeSummary& s) { std::cout << to_json(s).dump() << std::endl; });
      return kExitOk;
    }
    if (*bench) {
      if (!is_env_name(env_name)) return usage_error("unknown environment '" + env_name + "'");
      if (steps < 1) return usage_error("--steps must be >= 1");
      std::cout << to_json(run_bench(env_name, steps, seed, config)).dump() << std::endl;
      return kExitOk;
    }
    if (*serve) {
      if (transport == "stdio") {
        std::ios::sync_with_stdio(false);
        serve_stream(std::cin, std::cout, config);
        return kExitOk;
      }
      TcpServer server(config);
      server.bind(static_cast<std::uint16_t>(port), any_interface);
      std::cerr << "listening on port " << server.port() << std::endl;
      server.run();
      return kExitOk;
    }
  } catch (const EnvError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == EnvErrorCode::UnknownEnv || e.code() == EnvErrorCode::InvalidConfig
               ? kExitUsage
               : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}
