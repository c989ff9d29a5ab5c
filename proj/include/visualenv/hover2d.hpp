#pragma once

#include "visualenv/env.hpp"

namespace visualenv {

struct HoverParams {
  double bounds = 8.0;         // half-width of the allowed square, m
  double start_range = 5.0;    // agent and target start uniform in +-start_range
  double altitude = 5.0;       // camera height, m
  double pulse = 0.25;         // velocity increment per action, m/s
  double dt = 0.1;             // s
  int max_steps = 200;
  double target_radius = 2.0;  // success when strictly closer than this, m
  double focal_length = 18.0;  // mm
  double sensor_width = 36.0;  // mm
  double ring_inner = 1.9;
  double ring_outer = 2.1;
  std::uint64_t ground_seed = 0x5eed;

  void validate() const;
};

struct HoverState {
  Vec2 pos;
  Vec2 vel;
  Vec2 target;
  int t = 0;

  bool operator==(const HoverState&) const = default;
};

/// Actions: 0 = +y, 1 = -y, 2 = -x, 3 = +x velocity pulse.
HoverState hover_step(const HoverState& s, int action, const HoverParams& p = {});
/// OutOfBounds -20, then Win +20, then MaxSteps +10; 0 otherwise.
Judgement hover_judge(const HoverState& s, const HoverParams& p = {});
Scene hover_scene(const HoverState& s, const HoverParams& p, Resolution res);

/// Bang-bang tracking of a distance-limited velocity toward the target.
int hover_scripted_action(const HoverState& s, const HoverParams& p = {});

class Hover2DEnv final : public Environment {
 public:
  explicit Hover2DEnv(HoverParams params = {}, ObservationSpec spec = {});

  std::string_view name() const override { return "hover2d"; }
  int scripted_action() const override { return hover_scripted_action(state_, params_); }

  const HoverState& state() const { return state_; }
  const HoverParams& params() const { return params_; }

 protected:
  void reset_state(SplitMix64& rng) override;
  void advance(int action) override;
  Judgement judge() const override;
  Scene build_scene(Resolution resolution) const override;
  int num_actions() const override { return 4; }

 private:
  HoverParams params_;
  HoverState state_;
};

}  // namespace visualenv
