#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "treerl/mdp.hpp"
#include "treerl/qnet.hpp"
#include "treerl/replay.hpp"
#include "treerl/rng.hpp"
#include "treerl/scene.hpp"

namespace treerl {

struct TrainConfig {
  int epochs = 25;
  int max_steps = 50;
  double epsilon_start = 1.0;
  double epsilon_end = 0.1;
  int anneal_epochs = 10;
  double gamma = 0.9;
  int batch_size = 64;
  std::size_t replay_capacity = 100000;
  double learning_rate = 1e-2;
  double td_clip = 5.0;
  int grid = 8;
  int hidden1 = 256;
  int hidden2 = 128;
  std::uint64_t seed = 0;
};

/// Linear from epsilon_start at step 0 to epsilon_end at anneal_steps,
/// constant epsilon_end afterward.
double epsilon_at(long long global_step, long long anneal_steps,
                  const TrainConfig& cfg);

/// Behavior policy: explore uniformly over all 13 actions with probability
/// epsilon, otherwise pick uniformly between the scaling-group argmax and
/// the translation-group argmax. Ties break toward the lowest id.
Action select_training_action(std::span<const double> q_values, double epsilon,
                              Rng& rng);

int group_argmax(std::span<const double> q_values, int begin, int end);

/// Scene prepared for episode generation: raster and global feature cached.
struct EpisodeContext {
  int scene_index = 0;
  const Raster* raster = nullptr;
  std::vector<Window> ground_truths;
  FeatureVector global_feature;
};

struct EpisodeStats {
  int steps = 0;
  double total_reward = 0.0;
  int hits = 0;
};

/// Runs one max_steps-length episode, pushing every transition into replay
/// memory. Epsilon is annealed per global step via `global_step`.
EpisodeStats run_episode(const EpisodeContext& ctx, const QNetwork& net,
                         const Featurizer& featurizer, ReplayMemory& memory,
                         Rng& rng, const TrainConfig& cfg,
                         long long anneal_steps, long long& global_step);

struct EpochLog {
  int epoch = 0;
  double epsilon = 0.0;
  double mean_reward = 0.0;
  double mean_loss = 0.0;
  int episodes = 0;
};

struct TrainResult {
  QNetwork net;
  std::vector<EpochLog> log;
};

/// Full training loop: per epoch, one episode per scene in seeded-shuffle
/// order, one batch update after each episode once the memory is warm.
/// Deterministic given (scenes, cfg).
TrainResult train(const std::vector<Scene>& scenes, const TrainConfig& cfg,
                  const std::function<void(const TrainResult&, const EpochLog&)>&
                      on_epoch = nullptr);

std::string training_log_to_string(const std::vector<EpochLog>& log);

}  // namespace treerl
