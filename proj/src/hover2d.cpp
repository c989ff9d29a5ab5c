#include "visualenv/hover2d.hpp"

#include <algorithm>
#include <cmath>

namespace visualenv {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

constexpr double kTargetHalf = 0.5;
constexpr double kBoresightRadius = 0.3;

}  // namespace

void HoverParams::validate() const {
  if (!positive(bounds) || !positive(start_range) || start_range >= bounds ||
      !positive(altitude) || !positive(pulse) || !positive(dt) || max_steps < 1 ||
      !positive(target_radius) || !positive(focal_length) || !positive(sensor_width) ||
      !positive(ring_inner) || ring_inner >= ring_outer)
    throw EnvError(EnvErrorCode::InvalidConfig, "hover2d parameters out of range");
}

HoverState hover_step(const HoverState& s, int action, const HoverParams& p) {
  HoverState n = s;
  switch (action) {
    case 0: n.vel.y += p.pulse; break;
    case 1: n.vel.y -= p.pulse; break;
    case 2: n.vel.x -= p.pulse; break;
    case 3: n.vel.x += p.pulse; break;
    default: break;
  }
  n.pos.x += n.vel.x * p.dt;
  n.pos.y += n.vel.y * p.dt;
  n.t = s.t + 1;
  return n;
}

Judgement hover_judge(const HoverState& s, const HoverParams& p) {
  if (std::abs(s.pos.x) > p.bounds || std::abs(s.pos.y) > p.bounds)
    return {-20.0, true, Reason::OutOfBounds};
  if (std::hypot(s.pos.x - s.target.x, s.pos.y - s.target.y) < p.target_radius)
    return {20.0, true, Reason::Win};
  if (s.t >= p.max_steps) return {10.0, true, Reason::MaxSteps};
  return {0.0, false, Reason::Running};
}

Scene hover_scene(const HoverState& s, const HoverParams& p, Resolution res) {
  Camera cam;
  cam.focal_length = p.focal_length;
  cam.sensor_width = p.sensor_width;
  cam.resolution = res;
  cam.pose.position = {s.pos.x, s.pos.y, p.altitude};  // identity rotation looks down -Z

  Scene scene(cam, DirectionalLight{{0.0, 0.0, -1.0}, 0.7, 0.3}, Color::gray(0.0));

  const double ground_half = p.bounds + p.altitude * 2.0;
  scene.add_object({"ground", Plane{ground_half},
                    NoiseTexture{p.ground_seed, 0.75, {Color::gray(0.3), Color::gray(0.75)}},
                    Transform{}, true});

  Transform ring;
  ring.position = {s.target.x, s.target.y, 0.01};
  scene.add_object({"ring", Ring{p.ring_inner, p.ring_outer}, FlatMaterial{Color::gray(1.0)},
                    ring, true});

  Transform target;
  target.position = {s.target.x, s.target.y, kTargetHalf};
  scene.add_object({"target", Box{{kTargetHalf, kTargetHalf, kTargetHalf}},
                    FlatMaterial{Color::gray(0.0)}, target, true});

  Transform boresight;
  boresight.position = {s.pos.x, s.pos.y, 0.0};
  scene.add_object({"boresight", Sphere{kBoresightRadius}, FlatMaterial{Color::gray(1.0)},
                    boresight, true});
  return scene;
}

int hover_scripted_action(const HoverState& s, const HoverParams& p) {
  // Desired velocity shrinks near the target so the pulse train can stop in time.
  constexpr double kGain = 0.5;
  const double vmax = 8.0 * p.pulse;
  const double ex = s.target.x - s.pos.x;
  const double ey = s.target.y - s.pos.y;
  const double want_x = std::clamp(kGain * ex, -vmax, vmax);
  const double want_y = std::clamp(kGain * ey, -vmax, vmax);
  const double dvx = want_x - s.vel.x;
  const double dvy = want_y - s.vel.y;
  if (std::abs(dvx) >= std::abs(dvy)) return dvx >= 0.0 ? 3 : 2;
  return dvy >= 0.0 ? 0 : 1;
}

Hover2DEnv::Hover2DEnv(HoverParams params, ObservationSpec spec)
    : Environment(spec), params_(params) {
  params_.validate();
}

void Hover2DEnv::reset_state(SplitMix64& rng) {
  const double r = params_.start_range;
  state_ = HoverState{};
  state_.target = {rng.uniform(-r, r), rng.uniform(-r, r)};
  state_.pos = {rng.uniform(-r, r), rng.uniform(-r, r)};
}

void Hover2DEnv::advance(int action) { state_ = hover_step(state_, action, params_); }

Judgement Hover2DEnv::judge() const { return hover_judge(state_, params_); }

Scene Hover2DEnv::build_scene(Resolution resolution) const {
  return hover_scene(state_, params_, resolution);
}

}  // namespace visualenv
