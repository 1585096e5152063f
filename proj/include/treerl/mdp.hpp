#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "treerl/featurizer.hpp"
#include "treerl/geometry.hpp"
#include "treerl/scene.hpp"

namespace treerl {

inline constexpr int kHistorySlots = 50;
inline constexpr int kHistoryDim = kHistorySlots * kActionCount;  // 650

/// Agent observation: two region features plus the one-hot action history.
/// The window itself is carried for reward bookkeeping, not fed to the net.
struct State {
  FeatureVector window_feature;
  FeatureVector global_feature;
  std::array<std::int8_t, kHistorySlots> history{};  // action id per slot, -1 empty
  int steps = 0;
  Window window;

  State() { history.fill(-1); }

  /// Concatenated network input of length 2F + 650.
  std::vector<double> network_input() const;
};

/// Encodes (window feature, global feature, history) without a State object;
/// used when rebuilding inputs from replayed transitions.
std::vector<double> encode_input(const FeatureVector& window_feature,
                                 const FeatureVector& global_feature,
                                 const std::array<std::int8_t, kHistorySlots>& history);

/// Per-ground-truth first-hit flags, -1 until the object has ever been
/// covered with IoU > 0.5, then +1 for the rest of the episode.
using HitFlags = std::vector<std::int8_t>;

inline HitFlags make_hit_flags(std::size_t n) { return HitFlags(n, -1); }

inline constexpr double kHitIouThreshold = 0.5;
inline constexpr double kHitReward = 5.0;

/// +1 iff some ground truth's IoU strictly improved from w to w2, else -1.
int sign_reward(const Window& w, const Window& w2,
                const std::vector<Window>& gts);

/// Full reward: +5 when any ground truth is hit (IoU > 0.5) for the first
/// time this step, otherwise the sign reward. Updates flags in place.
double reward_step(const Window& w, const Window& w2,
                   const std::vector<Window>& gts, HitFlags& flags);

/// Replay record. States are stored compactly: the per-scene global feature
/// lives in the trainer's cache and is re-attached via scene_index.
struct Transition {
  int scene_index = 0;
  FeatureVector window_feature;
  std::array<std::int8_t, kHistorySlots> history{};
  int step = 0;  // slot that `action` occupies in the next state's history
  int action = 0;
  double reward = 0.0;
  FeatureVector next_window_feature;
  bool terminal = false;
};

State initial_state(const Raster& raster, const Featurizer& featurizer);

/// Applies an action to a state without computing a reward (used by
/// inference, where no ground truth exists).
State advance(const State& s, Action a, const Raster& raster,
              const Featurizer& featurizer);

struct StepResult {
  State next;
  double reward = 0.0;
  bool terminal = false;
};

/// One MDP step: transform the window, assemble the next state, score the
/// move. Throws if called on a terminal state.
StepResult step(const State& s, Action a, const Raster& raster,
                const std::vector<Window>& gts, const Featurizer& featurizer,
                HitFlags& flags, int max_steps = kHistorySlots);

}  // namespace treerl
