#include "visualenv/rollout.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>

#include "visualenv/digest.hpp"
#include "visualenv/scene_json.hpp"

namespace visualenv {

namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kPolicyStream = 0x706f6c6963790000ULL;

void ensure_writable(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create dump directory " + dir.string() + ": " + ec.message());
  const fs::path probe = dir / ".visualenv_probe";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("dump directory is not writable: " + dir.string());
  }
  fs::remove(probe, ec);
}

fs::path frame_path(const fs::path& dir, int episode, int step) {
  char name[64];
  std::snprintf(name, sizeof(name), "ep%04d_st%04d.png", episode, step);
  return dir / name;
}

void dump_frame(const fs::path& dir, int episode, int step, const ObsStack& stack) {
  try {
    write_png(frame_path(dir, episode, step), stack.frames().back());
  } catch (const std::runtime_error& e) {
    throw IoError(e.what());
  }
}

double percentile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const auto idx = static_cast<std::size_t>(q * static_cast<double>(sorted.size() - 1) + 0.5);
  return sorted[std::min(idx, sorted.size() - 1)];
}

}  // namespace

ActionPolicy::ActionPolicy(Policy policy, std::uint64_t episode_seed)
    : policy_(policy), rng_(episode_seed ^ kPolicyStream) {}

int ActionPolicy::next(const Environment& env) {
  if (policy_ == Policy::Scripted) return env.scripted_action();
  return static_cast<int>(rng_.below(static_cast<std::uint64_t>(env.action_space().n)));
}

nlohmann::json to_json(const EpisodeSummary& s) {
  return {{"episode", s.episode},
          {"seed", s.seed},
          {"reward", s.total_reward},
          {"length", s.length},
          {"reason", std::string(reason_name(s.reason))},
          {"obs_sha256", s.obs_sha256}};
}

std::vector<EpisodeSummary> run_episodes(
    const RunConfig& config, const std::function<void(const EpisodeSummary&)>& on_episode) {
  auto env = make_env(config.env, config.env_config);
  if (config.dump_dir) ensure_writable(*config.dump_dir);

  std::vector<EpisodeSummary> out;
  for (int ep = 0; ep < config.episodes; ++ep) {
    EpisodeSummary summary;
    summary.episode = ep;
    summary.seed = derive_seed(config.seed, static_cast<std::uint64_t>(ep));

    Sha256 digest;
    const ObsStack& first = env->reset(summary.seed);
    digest.update(stack_to_tensor(first));
    if (config.dump_dir) dump_frame(*config.dump_dir, ep, 0, first);
    if (ep == 0 && config.scene_dump) {
      std::ofstream f(*config.scene_dump);
      if (!f) throw IoError("cannot write scene dump " + config.scene_dump->string());
      f << scene_to_json(env->scene()).dump(2) << '\n';
    }

    ActionPolicy policy(config.policy, summary.seed);
    while (!env->done()) {
      const StepResult r = env->step(policy.next(*env));
      summary.total_reward += r.reward;
      summary.length = r.step_index;
      summary.reason = r.reason;
      digest.update(stack_to_tensor(r.obs));
      if (config.dump_dir) dump_frame(*config.dump_dir, ep, r.step_index, r.obs);
    }
    summary.obs_sha256 = digest.hex_digest();
    if (on_episode) on_episode(summary);
    out.push_back(std::move(summary));
  }
  return out;
}

nlohmann::json to_json(const BenchReport& r) {
  return {{"env", r.env},
          {"total_steps", r.total_steps},
          {"episodes", r.episodes},
          {"wall_time_s", r.wall_time_s},
          {"samples_per_second", r.samples_per_second},
          {"render_time_mean_s", r.render_mean_s},
          {"render_time_p50_s", r.render_p50_s},
          {"render_time_p95_s", r.render_p95_s},
          {"render_time_max_s", r.render_max_s},
          {"dynamics_time_mean_s", r.dynamics_mean_s}};
}

BenchReport run_bench(const std::string& env_name, std::int64_t steps, std::uint64_t seed,
                      const EnvConfig& config) {
  if (steps < 1) throw EnvError(EnvErrorCode::InvalidConfig, "bench requires steps >= 1");
  auto env = make_env(env_name, config);

  using clock = std::chrono::steady_clock;
  std::vector<double> render_times;
  render_times.reserve(static_cast<std::size_t>(steps));
  double step_total = 0.0;
  int episodes = 0;

  const auto start = clock::now();
  env->reset(derive_seed(seed, 0));
  ActionPolicy policy(Policy::Random, derive_seed(seed, 0));
  for (std::int64_t i = 0; i < steps; ++i) {
    if (env->done()) {
      ++episodes;
      const auto s = derive_seed(seed, static_cast<std::uint64_t>(episodes));
      env->reset(s);
      policy = ActionPolicy(Policy::Random, s);
    }
    const auto t0 = clock::now();
    env->step(policy.next(*env));
    step_total += std::chrono::duration<double>(clock::now() - t0).count();
    render_times.push_back(env->last_render_seconds());
  }
  const double wall = std::chrono::duration<double>(clock::now() - start).count();

  BenchReport r;
  r.env = env_name;
  r.total_steps = steps;
  r.episodes = episodes + 1;
  r.wall_time_s = wall;
  r.samples_per_second = static_cast<double>(steps) / wall;
  double sum = 0.0;
  for (double t : render_times) sum += t;
  r.render_mean_s = sum / static_cast<double>(render_times.size());
  r.dynamics_mean_s = (step_total - sum) / static_cast<double>(render_times.size());
  std::sort(render_times.begin(), render_times.end());
  r.render_p50_s = percentile(render_times, 0.50);
  r.render_p95_s = percentile(render_times, 0.95);
  r.render_max_s = render_times.back();
  return r;
}

}  // namespace visualenv
