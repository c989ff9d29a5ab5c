#include "visualenv/cartpole.hpp"

#include <cmath>

namespace visualenv {

namespace {

constexpr double kCartHalfWidth = 0.25;
constexpr double kCartHalfDepth = 0.15;
constexpr double kCartHalfHeight = 0.125;
constexpr double kCartCenterZ = 0.25;
constexpr double kPoleRadius = 0.05;

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void CartPoleParams::validate() const {
  if (!positive(gravity) || !positive(masscart) || !positive(masspole) || !positive(length) ||
      !positive(force_mag) || !positive(tau) || !positive(x_threshold) ||
      !positive(theta_threshold) || win_steps < 1 || !(init_range >= 0.0) ||
      init_range >= theta_threshold || init_range >= x_threshold)
    throw EnvError(EnvErrorCode::InvalidConfig, "cartpole parameters out of range");
}

CartPoleState cartpole_dynamics(const CartPoleState& s, int action, const CartPoleParams& p) {
  const double total_mass = p.masspole + p.masscart;
  const double polemass_length = p.masspole * p.length;
  const double force = action == 1 ? p.force_mag : -p.force_mag;
  const double costheta = std::cos(s.theta);
  const double sintheta = std::sin(s.theta);

  const double temp =
      (force + polemass_length * (s.theta_dot * s.theta_dot) * sintheta) / total_mass;
  const double thetaacc =
      (p.gravity * sintheta - costheta * temp) /
      (p.length * (4.0 / 3.0 - p.masspole * (costheta * costheta) / total_mass));
  const double xacc = temp - polemass_length * thetaacc * costheta / total_mass;

  CartPoleState n;
  n.x = s.x + p.tau * s.x_dot;
  n.x_dot = s.x_dot + p.tau * xacc;
  n.theta = s.theta + p.tau * s.theta_dot;
  n.theta_dot = s.theta_dot + p.tau * thetaacc;
  n.t = s.t + 1;
  return n;
}

Judgement cartpole_judge(const CartPoleState& s, const CartPoleParams& p) {
  if (s.theta < -p.theta_threshold || s.theta > p.theta_threshold)
    return {1.0, true, Reason::Fell};
  if (s.x < -p.x_threshold || s.x > p.x_threshold) return {1.0, true, Reason::OutOfBounds};
  if (s.t >= p.win_steps) return {1.0, true, Reason::Win};
  return {1.0, false, Reason::Running};
}

Scene cartpole_scene(const CartPoleState& s, const CartPoleParams& p, Resolution res) {
  Camera cam;
  cam.focal_length = 25.0;
  cam.sensor_width = 36.0;
  cam.resolution = res;
  cam.pose.position = {0.0, -5.0, 0.9};
  cam.pose.rotation = {kPi / 2.0, 0.0, 0.0};  // look along +Y, +Z up

  // Light travels away from the camera and downward; no X component so the
  // image stays mirror-symmetric about the track center.
  const DirectionalLight light{Vec3{0.0, 0.6, -0.8}.normalized(), 0.8, 0.25};
  Scene scene(cam, light, Color::gray(0.85));

  Transform ground;
  ground.position = {0.0, 0.0, 0.0};
  scene.add_object({"ground", Plane{20.0}, FlatMaterial{Color::gray(0.45)}, ground, true});

  Transform track;
  track.position = {0.0, 0.0, 0.01};
  scene.add_object({"track", Box{{p.x_threshold, 0.02, 0.01}},
                    FlatMaterial{Color::gray(0.2)}, track, true});

  Transform cart;
  cart.position = {s.x, 0.0, kCartCenterZ};
  scene.add_object({"cart", Box{{kCartHalfWidth, kCartHalfDepth, kCartHalfHeight}},
                    FlatMaterial{Color::gray(0.1)}, cart, true});

  const double hinge_z = kCartCenterZ + kCartHalfHeight;
  Transform pole;
  pole.position = {s.x + p.length * std::sin(s.theta), -kCartHalfDepth - kPoleRadius,
                   hinge_z + p.length * std::cos(s.theta)};
  pole.rotation = {0.0, s.theta, 0.0};
  scene.add_object({"pole", Cylinder{kPoleRadius, p.length},
                    FlatMaterial{Color{0.6, 0.1, 0.1}}, pole, true});
  return scene;
}

CartPoleEnv::CartPoleEnv(CartPoleParams params, ObservationSpec spec)
    : Environment(spec), params_(params) {
  params_.validate();
}

void CartPoleEnv::reset_state(SplitMix64& rng) {
  const double r = params_.init_range;
  state_.x = rng.uniform(-r, r);
  state_.x_dot = rng.uniform(-r, r);
  state_.theta = rng.uniform(-r, r);
  state_.theta_dot = rng.uniform(-r, r);
  state_.t = 0;
}

void CartPoleEnv::advance(int action) { state_ = cartpole_dynamics(state_, action, params_); }

Judgement CartPoleEnv::judge() const { return cartpole_judge(state_, params_); }

Scene CartPoleEnv::build_scene(Resolution resolution) const {
  return cartpole_scene(state_, params_, resolution);
}

int CartPoleEnv::scripted_action() const {
  // Push toward the side the pole is falling, with light damping on the cart.
  const double signal = state_.theta + 0.5 * state_.theta_dot + 0.01 * state_.x + 0.1 * state_.x_dot;
  return signal > 0.0 ? 1 : 0;
}

}  // namespace visualenv
