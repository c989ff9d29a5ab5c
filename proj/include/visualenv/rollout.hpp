#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "visualenv/registry.hpp"

namespace visualenv {

enum class Policy { Random, Scripted };

struct RunConfig {
  std::string env;
  std::uint64_t seed = 0;
  int episodes = 1;
  Policy policy = Policy::Random;
  std::optional<std::filesystem::path> dump_dir;
  std::optional<std::filesystem::path> scene_dump;  // JSON of the first reset scene
  EnvConfig env_config;
};

struct EpisodeSummary {
  int episode = 0;
  std::uint64_t seed = 0;
  double total_reward = 0.0;
  int length = 0;
  Reason reason = Reason::Running;
  std::string obs_sha256;  // over every stacked tensor of the episode, in order
};

nlohmann::json to_json(const EpisodeSummary& s);

/// Action source for one episode. Random draws come from a stream seeded by
/// the episode seed, so rollouts replay exactly.
class ActionPolicy {
 public:
  ActionPolicy(Policy policy, std::uint64_t episode_seed);
  int next(const Environment& env);

 private:
  Policy policy_;
  SplitMix64 rng_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Episode i runs with seed derive_seed(config.seed, i). Throws EnvError or IoError.
std::vector<EpisodeSummary> run_episodes(
    const RunConfig& config, const std::function<void(const EpisodeSummary&)>& on_episode = {});

struct BenchReport {
  std::string env;
  std::int64_t total_steps = 0;
  int episodes = 0;
  double wall_time_s = 0.0;
  double samples_per_second = 0.0;
  double render_mean_s = 0.0;
  double render_p50_s = 0.0;
  double render_p95_s = 0.0;
  double render_max_s = 0.0;
  double dynamics_mean_s = 0.0;  // step time minus render time
};

nlohmann::json to_json(const BenchReport& r);

/// Random policy with auto-reset. Throws EnvError; steps must be >= 1.
BenchReport run_bench(const std::string& env_name, std::int64_t steps, std::uint64_t seed = 0,
                      const EnvConfig& config = {});

}  // namespace visualenv
