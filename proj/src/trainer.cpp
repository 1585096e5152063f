#include "treerl/trainer.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "treerl/featurizer.hpp"

namespace treerl {

double epsilon_at(long long global_step, long long anneal_steps,
                  const TrainConfig& cfg) {
  if (global_step < 0) throw std::invalid_argument("global_step must be >= 0");
  if (anneal_steps <= 0 || global_step >= anneal_steps) return cfg.epsilon_end;
  return cfg.epsilon_start +
         (cfg.epsilon_end - cfg.epsilon_start) *
             (static_cast<double>(global_step) / static_cast<double>(anneal_steps));
}

int group_argmax(std::span<const double> q_values, int begin, int end) {
  int best = begin;
  for (int i = begin + 1; i < end; ++i)
    if (q_values[static_cast<std::size_t>(i)] > q_values[static_cast<std::size_t>(best)])
      best = i;
  return best;
}

Action select_training_action(std::span<const double> q_values, double epsilon,
                              Rng& rng) {
  if (q_values.size() != kActionCount)
    throw std::invalid_argument("expected 13 action values");
  if (rng.uniform() < epsilon)
    return static_cast<Action>(rng.uniform_int(kActionCount));
  const int scaling = group_argmax(q_values, kScalingBegin, kScalingEnd);
  const int translation = group_argmax(q_values, kTranslationBegin, kTranslationEnd);
  return static_cast<Action>(rng.uniform_int(2) == 0 ? scaling : translation);
}

EpisodeStats run_episode(const EpisodeContext& ctx, const QNetwork& net,
                         const Featurizer& featurizer, ReplayMemory& memory,
                         Rng& rng, const TrainConfig& cfg,
                         long long anneal_steps, long long& global_step) {
  if (ctx.ground_truths.empty())
    throw std::invalid_argument("episode needs >= 1 ground truth");

  EpisodeStats stats;
  State state = initial_state(*ctx.raster, featurizer);
  HitFlags flags = make_hit_flags(ctx.ground_truths.size());

  for (int t = 0; t < cfg.max_steps; ++t) {
    const auto input = encode_input(state.window_feature, ctx.global_feature,
                                    state.history);
    const auto q = forward(net, input);
    const double eps = epsilon_at(global_step, anneal_steps, cfg);
    const Action a = select_training_action(q, eps, rng);

    StepResult sr = step(state, a, *ctx.raster, ctx.ground_truths, featurizer,
                         flags, cfg.max_steps);

    Transition tr;
    tr.scene_index = ctx.scene_index;
    tr.window_feature = state.window_feature;
    tr.history = state.history;
    tr.step = t;
    tr.action = static_cast<int>(a);
    tr.reward = sr.reward;
    tr.next_window_feature = sr.next.window_feature;
    tr.terminal = sr.terminal;
    memory.push(std::move(tr));

    stats.total_reward += sr.reward;
    ++stats.steps;
    state = std::move(sr.next);
    ++global_step;
  }
  for (auto f : flags)
    if (f > 0) ++stats.hits;
  return stats;
}

namespace {

TrainingSample to_sample(const Transition& t,
                         const std::vector<FeatureVector>& globals) {
  const auto& global = globals[static_cast<std::size_t>(t.scene_index)];
  TrainingSample s;
  s.input = encode_input(t.window_feature, global, t.history);
  auto next_history = t.history;
  next_history[t.step] = static_cast<std::int8_t>(t.action);
  s.next_input = encode_input(t.next_window_feature, global, next_history);
  s.action = t.action;
  s.reward = t.reward;
  s.terminal = t.terminal;
  return s;
}

}  // namespace

TrainResult train(const std::vector<Scene>& scenes, const TrainConfig& cfg,
                  const std::function<void(const TrainResult&, const EpochLog&)>&
                      on_epoch) {
  if (scenes.empty()) throw std::invalid_argument("empty training dataset");
  if (cfg.epochs < 0) throw std::invalid_argument("epochs must be >= 0");
  if (cfg.max_steps < 1 || cfg.max_steps > kHistorySlots)
    throw std::invalid_argument("max_steps must be in [1, 50]");
  if (cfg.epsilon_start < cfg.epsilon_end || cfg.epsilon_end <= 0.0)
    throw std::invalid_argument("epsilon schedule invalid");

  GridFeaturizer featurizer(cfg.grid);
  const int feature_dim = static_cast<int>(featurizer.dim());
  const int input_dim = 2 * feature_dim + kHistoryDim;

  TrainResult result;
  result.net = make_qnet({input_dim, cfg.hidden1, cfg.hidden2, kActionCount},
                         mix_seed(cfg.seed, 0x9e7ull));
  if (cfg.epochs == 0) return result;

  std::vector<Raster> rasters;
  std::vector<FeatureVector> globals;
  std::vector<EpisodeContext> contexts;
  rasters.reserve(scenes.size());
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    if (scenes[i].objects.empty())
      throw std::invalid_argument("scene '" + scenes[i].id + "' has no objects");
    rasters.push_back(render(scenes[i]));
    globals.push_back(featurizer.extract_global(rasters.back()));
  }
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    EpisodeContext ctx;
    ctx.scene_index = static_cast<int>(i);
    ctx.raster = &rasters[i];
    ctx.ground_truths = scenes[i].ground_truths();
    ctx.global_feature = globals[i];
    contexts.push_back(std::move(ctx));
  }

  ReplayMemory memory(cfg.replay_capacity, mix_seed(cfg.seed, 0x4e9ull));
  Rng rng(mix_seed(cfg.seed, 0x7a1ull));
  UpdateConfig update_cfg{cfg.learning_rate, cfg.gamma, cfg.td_clip};

  const long long anneal_steps = static_cast<long long>(cfg.anneal_epochs) *
                                 static_cast<long long>(scenes.size()) *
                                 cfg.max_steps;
  const int updates_per_episode =
      (cfg.max_steps + cfg.batch_size - 1) / cfg.batch_size;
  long long global_step = 0;

  std::vector<std::size_t> order(scenes.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    shuffle(order, rng);
    double reward_sum = 0.0;
    double loss_sum = 0.0;
    int update_count = 0;
    for (std::size_t idx : order) {
      const EpisodeStats stats =
          run_episode(contexts[idx], result.net, featurizer, memory, rng, cfg,
                      anneal_steps, global_step);
      reward_sum += stats.total_reward;
      if (memory.size() >= static_cast<std::size_t>(cfg.batch_size)) {
        for (int u = 0; u < updates_per_episode; ++u) {
          const auto raw = memory.sample(static_cast<std::size_t>(cfg.batch_size));
          std::vector<TrainingSample> batch;
          batch.reserve(raw.size());
          for (const auto& t : raw) batch.push_back(to_sample(t, globals));
          const double loss = update_batch(result.net, batch, update_cfg);
          if (!std::isfinite(loss))
            throw std::runtime_error("training diverged: non-finite loss at epoch " +
                                     std::to_string(epoch));
          loss_sum += loss;
          ++update_count;
        }
      }
    }
    EpochLog log;
    log.epoch = epoch;
    log.epsilon = epsilon_at(global_step, anneal_steps, cfg);
    log.mean_reward = reward_sum / static_cast<double>(scenes.size());
    log.mean_loss = update_count ? loss_sum / update_count : 0.0;
    log.episodes = static_cast<int>(scenes.size());
    result.log.push_back(log);
    if (on_epoch) on_epoch(result, log);
  }
  return result;
}

std::string training_log_to_string(const std::vector<EpochLog>& log) {
  std::ostringstream out;
  for (const auto& e : log) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%d\t%.6f\t%.6f\t%.8f\t%d\n", e.epoch,
                  e.epsilon, e.mean_reward, e.mean_loss, e.episodes);
    out << buf;
  }
  return out.str();
}

}  // namespace treerl
