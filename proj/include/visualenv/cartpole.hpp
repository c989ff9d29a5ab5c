#pragma once

#include "visualenv/env.hpp"

namespace visualenv {

/// Constants of the classic CartPole-v0 task.
struct CartPoleParams {
  double gravity = 9.8;
  double masscart = 1.0;
  double masspole = 0.1;
  double length = 0.5;  // half the pole length
  double force_mag = 10.0;
  double tau = 0.02;
  double x_threshold = 2.4;
  double theta_threshold = 12.0 * 2.0 * kPi / 360.0;
  int win_steps = 100;
  double init_range = 0.05;

  void validate() const;
};

struct CartPoleState {
  double x = 0.0;
  double x_dot = 0.0;
  double theta = 0.0;  // from vertical, positive leans toward +x
  double theta_dot = 0.0;
  int t = 0;

  bool operator==(const CartPoleState&) const = default;
};

/// One explicit Euler step; action 0 pushes left, 1 pushes right.
CartPoleState cartpole_dynamics(const CartPoleState& s, int action, const CartPoleParams& p = {});
/// +1 every step. Fell takes precedence over OutOfBounds, which precedes Win.
Judgement cartpole_judge(const CartPoleState& s, const CartPoleParams& p = {});
Scene cartpole_scene(const CartPoleState& s, const CartPoleParams& p, Resolution res);

class CartPoleEnv final : public Environment {
 public:
  explicit CartPoleEnv(CartPoleParams params = {}, ObservationSpec spec = {});

  std::string_view name() const override { return "cartpole"; }
  int scripted_action() const override;

  const CartPoleState& state() const { return state_; }
  const CartPoleParams& params() const { return params_; }

 protected:
  void reset_state(SplitMix64& rng) override;
  void advance(int action) override;
  Judgement judge() const override;
  Scene build_scene(Resolution resolution) const override;
  int num_actions() const override { return 2; }

 private:
  CartPoleParams params_;
  CartPoleState state_;
};

}  // namespace visualenv
