#include "visualenv/env.hpp"

#include <array>
#include <utility>

namespace visualenv {

namespace {

constexpr std::array<std::pair<Reason, std::string_view>, 7> kReasonNames{{
    {Reason::Running, "running"},
    {Reason::Win, "win"},
    {Reason::OutOfBounds, "out_of_bounds"},
    {Reason::Fell, "fell"},
    {Reason::MaxSteps, "max_steps"},
    {Reason::Caught, "caught"},
    {Reason::Missed, "missed"},
}};

}  // namespace

std::string_view reason_name(Reason r) {
  for (const auto& [reason, name] : kReasonNames)
    if (reason == r) return name;
  return "unknown";
}

std::optional<Reason> parse_reason(std::string_view name) {
  for (const auto& [reason, n] : kReasonNames)
    if (n == name) return reason;
  return std::nullopt;
}

void ObservationSpec::validate() const {
  if (height < 1 || width < 1 || depth < 1)
    throw EnvError(EnvErrorCode::InvalidConfig, "observation height, width and depth must be >= 1");
}

void ObsStack::fill(const GrayFrame& frame, int depth) { frames_.assign(depth, frame); }

void ObsStack::push(GrayFrame frame) {
  if (frames_.empty()) return;
  frames_.erase(frames_.begin());
  frames_.push_back(std::move(frame));
}

std::vector<std::uint8_t> stack_to_tensor(const ObsStack& stack) {
  const int h = stack.height(), w = stack.width(), d = stack.depth();
  std::vector<std::uint8_t> out(static_cast<std::size_t>(h) * w * d);
  for (int k = 0; k < d; ++k) {
    const auto& px = stack.frames()[k].pixels;
    for (std::size_t i = 0; i < px.size(); ++i) out[i * d + k] = px[i];
  }
  return out;
}

Environment::Environment(ObservationSpec spec) : spec_(spec) { spec_.validate(); }

GrayFrame Environment::render_observation() {
  const auto start = std::chrono::steady_clock::now();
  last_rgb_ = render(build_scene(Resolution{spec_.width, spec_.height}));
  GrayFrame gray = to_grayscale(last_rgb_);
  last_render_seconds_ =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return gray;
}

const ObsStack& Environment::reset(std::uint64_t seed) {
  SplitMix64 rng(seed);
  reset_state(rng);
  stack_.fill(render_observation(), spec_.depth);
  reset_ = true;
  done_ = false;
  step_index_ = 0;
  return stack_;
}

StepResult Environment::step(int action) {
  if (!reset_) throw EnvError(EnvErrorCode::NotReset, "step called before reset");
  if (done_) throw EnvError(EnvErrorCode::SteppedAfterDone, "episode is done; call reset");
  if (action < 0 || action >= num_actions())
    throw EnvError(EnvErrorCode::InvalidAction,
                   "action " + std::to_string(action) + " outside [0, " +
                       std::to_string(num_actions()) + ")");
  advance(action);
  ++step_index_;
  const Judgement j = judge();
  stack_.push(render_observation());
  done_ = j.done;
  return StepResult{stack_, j.reward, j.done, j.reason, step_index_};
}

}  // namespace visualenv
