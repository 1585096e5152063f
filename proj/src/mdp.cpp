#include "treerl/mdp.hpp"

#include <stdexcept>

namespace treerl {

std::vector<double> encode_input(
    const FeatureVector& window_feature, const FeatureVector& global_feature,
    const std::array<std::int8_t, kHistorySlots>& history) {
  std::vector<double> input;
  input.reserve(window_feature.size() + global_feature.size() + kHistoryDim);
  input.insert(input.end(), window_feature.begin(), window_feature.end());
  input.insert(input.end(), global_feature.begin(), global_feature.end());
  const std::size_t base = input.size();
  input.resize(base + kHistoryDim, 0.0);
  for (int t = 0; t < kHistorySlots; ++t) {
    if (history[t] >= 0)
      input[base + static_cast<std::size_t>(t) * kActionCount + history[t]] = 1.0;
  }
  return input;
}

std::vector<double> State::network_input() const {
  return encode_input(window_feature, global_feature, history);
}

int sign_reward(const Window& w, const Window& w2,
                const std::vector<Window>& gts) {
  if (gts.empty()) throw std::invalid_argument("sign_reward needs >= 1 ground truth");
  for (const auto& g : gts) {
    if (iou(w2, g) > iou(w, g)) return +1;
  }
  return -1;
}

double reward_step(const Window& w, const Window& w2,
                   const std::vector<Window>& gts, HitFlags& flags) {
  if (flags.size() != gts.size())
    throw std::invalid_argument("flag count must match ground-truth count");
  bool first_hit = false;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    if (flags[i] < 0 && iou(w2, gts[i]) > kHitIouThreshold) {
      flags[i] = +1;
      first_hit = true;
    }
  }
  if (first_hit) return kHitReward;
  return static_cast<double>(sign_reward(w, w2, gts));
}

State initial_state(const Raster& raster, const Featurizer& featurizer) {
  State s;
  s.window = {0.0, 0.0, static_cast<double>(raster.width),
              static_cast<double>(raster.height)};
  s.global_feature = featurizer.extract_global(raster);
  s.window_feature = s.global_feature;
  return s;
}

State advance(const State& s, Action a, const Raster& raster,
              const Featurizer& featurizer) {
  if (s.steps >= kHistorySlots)
    throw std::logic_error("history capacity exhausted");
  State next;
  next.window = apply_action(s.window, a, raster.width, raster.height);
  next.window_feature = featurizer.extract(raster, next.window);
  next.global_feature = s.global_feature;
  next.history = s.history;
  next.history[s.steps] = static_cast<std::int8_t>(a);
  next.steps = s.steps + 1;
  return next;
}

StepResult step(const State& s, Action a, const Raster& raster,
                const std::vector<Window>& gts, const Featurizer& featurizer,
                HitFlags& flags, int max_steps) {
  if (s.steps >= max_steps)
    throw std::logic_error("step called on a terminal state");
  StepResult r;
  r.next = advance(s, a, raster, featurizer);
  r.reward = reward_step(s.window, r.next.window, gts, flags);
  r.terminal = r.next.steps == max_steps;
  return r;
}

}  // namespace treerl
