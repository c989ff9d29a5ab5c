#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "visualenv/render.hpp"
#include "visualenv/rng.hpp"
#include "visualenv/scene.hpp"

namespace visualenv {

enum class Reason { Running, Win, OutOfBounds, Fell, MaxSteps, Caught, Missed };

std::string_view reason_name(Reason r);
std::optional<Reason> parse_reason(std::string_view name);

struct ActionSpace {
  int n = 1;  // Discrete(n)
};

struct ObservationSpec {
  int height = 100;
  int width = 100;
  int depth = 4;

  bool operator==(const ObservationSpec&) const = default;
  std::size_t tensor_bytes() const {
    return static_cast<std::size_t>(height) * width * depth;
  }
  void validate() const;
};

/// Fixed-depth FIFO of grayscale frames, oldest first.
class ObsStack {
 public:
  ObsStack() = default;

  /// Replaces every slot with `frame`.
  void fill(const GrayFrame& frame, int depth);
  /// Evicts the oldest frame and appends `frame`.
  void push(GrayFrame frame);

  const std::vector<GrayFrame>& frames() const { return frames_; }
  int depth() const { return static_cast<int>(frames_.size()); }
  int height() const { return frames_.empty() ? 0 : frames_.front().height; }
  int width() const { return frames_.empty() ? 0 : frames_.front().width; }

  bool operator==(const ObsStack&) const = default;

 private:
  std::vector<GrayFrame> frames_;
};

/// (H, W, D) tensor serialized with D fastest, then W, then H.
std::vector<std::uint8_t> stack_to_tensor(const ObsStack& stack);

struct Judgement {
  double reward = 0.0;
  bool done = false;
  Reason reason = Reason::Running;

  bool operator==(const Judgement&) const = default;
};

struct StepResult {
  ObsStack obs;
  double reward = 0.0;
  bool done = false;
  Reason reason = Reason::Running;
  int step_index = 0;
};

enum class EnvErrorCode { InvalidAction, SteppedAfterDone, NotReset, InvalidConfig, UnknownEnv };

class EnvError : public std::runtime_error {
 public:
  EnvError(EnvErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  EnvErrorCode code() const { return code_; }

 private:
  EnvErrorCode code_;
};

/// Gym-style lifecycle shared by all environments. Subclasses own the hidden
/// state and provide dynamics, judging and scene construction; this class
/// owns rendering, the frame stack and lifecycle checks.
///
/// Not thread-safe: one owner, strictly sequential calls.
class Environment {
 public:
  explicit Environment(ObservationSpec spec);
  virtual ~Environment() = default;

  Environment(const Environment&) = delete;
  Environment& operator=(const Environment&) = delete;

  const ObsStack& reset(std::uint64_t seed);
  StepResult step(int action);

  virtual std::string_view name() const = 0;
  ActionSpace action_space() const { return {num_actions()}; }
  const ObservationSpec& observation_spec() const { return spec_; }

  /// Scene for the current hidden state.
  Scene scene() const { return build_scene(Resolution{spec_.width, spec_.height}); }
  const ObsStack& observation() const { return stack_; }
  /// Last rendered RGB frame.
  const FrameBuffer& last_frame() const { return last_rgb_; }

  bool is_reset() const { return reset_; }
  bool done() const { return done_; }
  int step_index() const { return step_index_; }
  /// Wall time of the most recent render call, seconds.
  double last_render_seconds() const { return last_render_seconds_; }

  /// Deterministic action from privileged state; used by the CLI and tests.
  virtual int scripted_action() const = 0;

 protected:
  virtual void reset_state(SplitMix64& rng) = 0;
  virtual void advance(int action) = 0;
  virtual Judgement judge() const = 0;
  virtual Scene build_scene(Resolution resolution) const = 0;
  virtual int num_actions() const = 0;

 private:
  GrayFrame render_observation();

  ObservationSpec spec_;
  ObsStack stack_;
  FrameBuffer last_rgb_;
  bool reset_ = false;
  bool done_ = false;
  int step_index_ = 0;
  double last_render_seconds_ = 0.0;
};

}  // namespace visualenv
