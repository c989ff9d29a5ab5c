#include "visualenv/goalie.hpp"

#include <array>
#include <cmath>
#include <string>

namespace visualenv {

namespace {

bool positive(double v) { return std::isfinite(v) && v > 0.0; }

constexpr double kBallRadius = 0.5;
constexpr double kColumnRadius = 0.4;
constexpr double kColumnHalfHeight = 1.5;
constexpr double kCameraHeight = 1.5;
constexpr double kCameraBack = 1.0;
constexpr double kCameraPitchDown = 0.1;

constexpr std::array<Color, 9> kColumnColors{{
    {0.9, 0.1, 0.1}, {0.1, 0.8, 0.2}, {0.2, 0.3, 0.95}, {0.95, 0.9, 0.1}, {0.9, 0.4, 0.8},
    {0.1, 0.85, 0.85}, {1.0, 0.55, 0.0}, {0.5, 0.2, 0.6}, {0.95, 0.95, 0.95},
}};

}  // namespace

void GoalieParams::validate() const {
  if (!positive(start_distance) || !positive(speed) || !(max_angle >= 0.0) ||
      max_angle >= kPi / 2.0 || !positive(bounds) || !positive(catch_radius) ||
      !positive(goalie_step))
    throw EnvError(EnvErrorCode::InvalidConfig, "goalie parameters out of range");
}

int GoalieParams::horizon() const {
  return static_cast<int>(std::ceil(start_distance / (speed * std::cos(max_angle)))) + 1;
}

GoalieState goalie_step(const GoalieState& s, int action, const GoalieParams& p) {
  GoalieState n = s;
  n.goalie_x += action == 1 ? p.goalie_step : -p.goalie_step;
  n.ball_pos.x += p.speed * std::sin(s.ball_dir);
  n.ball_pos.y -= p.speed * std::cos(s.ball_dir);
  n.t = s.t + 1;
  return n;
}

double goalie_crossing_x(const GoalieState& s) {
  return s.ball_pos.x + s.ball_pos.y * std::tan(s.ball_dir);
}

Judgement goalie_judge(const GoalieState& s, const GoalieParams& p) {
  if (std::abs(s.goalie_x) > p.bounds) return {-10.0, true, Reason::OutOfBounds};
  if (s.ball_pos.y <= 0.0) {
    if (std::abs(s.goalie_x - goalie_crossing_x(s)) <= p.catch_radius)
      return {10.0, true, Reason::Caught};
    return {-10.0, true, Reason::Missed};
  }
  return {0.0, false, Reason::Running};
}

Scene goalie_scene(const GoalieState& s, const GoalieParams& p, Resolution res) {
  Camera cam;
  cam.focal_length = 35.0;
  cam.sensor_width = 36.0;
  cam.resolution = res;
  cam.pose.position = {s.goalie_x, -kCameraBack, kCameraHeight};
  cam.pose.rotation = {kPi / 2.0 - kCameraPitchDown, 0.0, 0.0};

  const DirectionalLight light{Vec3{0.3, 0.5, -0.8}.normalized(), 0.75, 0.3};
  Scene scene(cam, light, Color{0.55, 0.7, 0.9});

  const double field_half = p.start_distance + 10.0;
  scene.add_object({"field", Plane{field_half},
                    NoiseTexture{p.field_seed, 1.0, {Color{0.15, 0.4, 0.12}, Color{0.45, 0.75, 0.3}}},
                    Transform{}, true});

  Transform line;
  line.position = {0.0, 0.0, 0.005};
  scene.add_object({"goal_line", Box{{p.bounds + 2.0, 0.05, 0.005}},
                    FlatMaterial{Color::gray(1.0)}, line, true});

  const double column_y = p.start_distance + 3.0;
  const int n = static_cast<int>(kColumnColors.size());
  for (int i = 0; i < n; ++i) {
    Transform col;
    col.position = {(i - n / 2) * 2.5, column_y, kColumnHalfHeight};
    scene.add_object({"column" + std::to_string(i), Cylinder{kColumnRadius, kColumnHalfHeight},
                      FlatMaterial{kColumnColors[i]}, col, true});
  }

  Transform ball;
  ball.position = {s.ball_pos.x, s.ball_pos.y, kBallRadius};
  scene.add_object({"ball", Sphere{kBallRadius}, FlatMaterial{Color{0.98, 0.98, 0.9}}, ball, true});
  return scene;
}

int goalie_scripted_action(const GoalieState& s) {
  return s.goalie_x < goalie_crossing_x(s) ? 1 : 0;
}

GoalieEnv::GoalieEnv(GoalieParams params, ObservationSpec spec)
    : Environment(spec), params_(params) {
  params_.validate();
}

void GoalieEnv::reset_state(SplitMix64& rng) {
  state_ = GoalieState{};
  state_.ball_pos = {0.0, params_.start_distance};
  state_.ball_dir = rng.uniform(-params_.max_angle, params_.max_angle);
}

void GoalieEnv::advance(int action) { state_ = goalie_step(state_, action, params_); }

Judgement GoalieEnv::judge() const { return goalie_judge(state_, params_); }

Scene GoalieEnv::build_scene(Resolution resolution) const {
  return goalie_scene(state_, params_, resolution);
}

}  // namespace visualenv
