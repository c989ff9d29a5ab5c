#pragma once

#include "visualenv/env.hpp"

namespace visualenv {

// Distances are in field units; one unit renders as one meter.
struct GoalieParams {
  double start_distance = 20.0;          // ball starts at (0, start_distance)
  double speed = 1.0;                    // units per step
  double max_angle = 15.0 * kPi / 180;   // direction uniform in [-max_angle, max_angle]
  double bounds = 6.0;                   // goalie out of bounds when |x| > bounds
  double catch_radius = 1.0;             // inclusive
  double goalie_step = 1.0;
  std::uint64_t field_seed = 0x90a1;

  void validate() const;
  /// Upper bound on episode length: steps for the steepest ball to cross.
  int horizon() const;
};

struct GoalieState {
  double goalie_x = 0.0;
  Vec2 ball_pos;
  double ball_dir = 0.0;  // radians from the field axis, positive toward +x
  int t = 0;

  bool operator==(const GoalieState&) const = default;
};

/// Actions: 0 = left (-x), 1 = right (+x).
GoalieState goalie_step(const GoalieState& s, int action, const GoalieParams& p = {});
/// x where the ball's straight path meets the goal line y = 0.
double goalie_crossing_x(const GoalieState& s);
/// OutOfBounds -10 first; once the ball reaches y <= 0, Caught +10 or Missed -10.
Judgement goalie_judge(const GoalieState& s, const GoalieParams& p = {});
Scene goalie_scene(const GoalieState& s, const GoalieParams& p, Resolution res);

/// Steps toward the projected crossing point.
int goalie_scripted_action(const GoalieState& s);

class GoalieEnv final : public Environment {
 public:
  explicit GoalieEnv(GoalieParams params = {}, ObservationSpec spec = {});

  std::string_view name() const override { return "goalie"; }
  int scripted_action() const override { return goalie_scripted_action(state_); }

  const GoalieState& state() const { return state_; }
  const GoalieParams& params() const { return params_; }

 protected:
  void reset_state(SplitMix64& rng) override;
  void advance(int action) override;
  Judgement judge() const override;
  Scene build_scene(Resolution resolution) const override;
  int num_actions() const override { return 2; }

 private:
  GoalieParams params_;
  GoalieState state_;
};

}  // namespace visualenv
