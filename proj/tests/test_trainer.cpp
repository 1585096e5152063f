#include <cmath>

#include "doctest.h"
#include "treerl/trainer.hpp"

using namespace treerl;

TEST_CASE("epsilon schedule endpoints and linearity") {
  TrainConfig cfg;
  const long long anneal = 1000;
  CHECK(epsilon_at(0, anneal, cfg) == 1.0);
  CHECK(epsilon_at(anneal, anneal, cfg) == 0.1);
  CHECK(epsilon_at(anneal + 12345, anneal, cfg) == 0.1);
  // collinear midpoint
  const double mid = epsilon_at(anneal / 2, anneal, cfg);
  CHECK(mid == doctest::Approx(0.5 * (1.0 + 0.1)).epsilon(1e-12));
  double prev = 2.0;
  for (long long s = 0; s <= anneal; s += 50) {
    const double e = epsilon_at(s, anneal, cfg);
    CHECK(e <= prev);
    prev = e;
  }
}

TEST_CASE("exploitation picks only the two group argmaxes") {
  std::vector<double> q(13, 0.0);
  q[0] = 9.0;
  q[12] = 8.0;
  Rng rng(31);
  int count0 = 0, count12 = 0;
  for (int i = 0; i < 20000; ++i) {
    const Action a = select_training_action(q, 0.0, rng);
    if (a == Action::kScaleTopLeft) ++count0;
    else if (a == Action::kGrowVertical) ++count12;
    else FAIL("unexpected action selected");
  }
  CHECK(count0 + count12 == 20000);
  CHECK(std::abs(count0 - 10000) < 500);
}

TEST_CASE("all-equal q values break ties toward the lowest ids") {
  const std::vector<double> q(13, 1.25);
  Rng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Action a = select_training_action(q, 0.0, rng);
    CHECK((a == Action::kScaleTopLeft || a == Action::kMoveLeft));
  }
}

TEST_CASE("full exploration is roughly uniform over 13 actions") {
  const std::vector<double> q(13, 0.0);
  Rng rng(19);
  std::vector<int> freq(13, 0);
  const int draws = 130000;
  for (int i = 0; i < draws; ++i)
    ++freq[static_cast<int>(select_training_action(q, 1.0, rng))];
  for (int f : freq) {
    CHECK(f > draws / 13 * 0.95);
    CHECK(f < draws / 13 * 1.05);
  }
}

namespace {

EpisodeContext make_context(const Scene& scene, const Raster& raster,
                            const GridFeaturizer& f) {
  EpisodeContext ctx;
  ctx.scene_index = 0;
  ctx.raster = &raster;
  ctx.ground_truths = scene.ground_truths();
  ctx.global_feature = f.extract_global(raster);
  return ctx;
}

}  // namespace

TEST_CASE("episodes push exactly max_steps transitions") {
  const auto scenes = generate_dataset(1, 55);
  const Raster raster = render(scenes[0]);
  const GridFeaturizer f(4);
  const int input_dim = 2 * static_cast<int>(f.dim()) + kHistoryDim;
  const QNetwork net = make_qnet({input_dim, 16, 13}, 2);
  TrainConfig cfg;
  cfg.grid = 4;

  ReplayMemory mem(1000, 3);
  Rng rng(4);
  long long step = 0;
  const EpisodeContext ctx = make_context(scenes[0], raster, f);
  const EpisodeStats stats = run_episode(ctx, net, f, mem, rng, cfg, 0, step);
  CHECK(stats.steps == 50);
  CHECK(mem.size() == 50);
  CHECK(mem.at(49).terminal);
  for (std::size_t i = 0; i + 1 < mem.size(); ++i) CHECK(!mem.at(i).terminal);
  CHECK(stats.hits <= static_cast<int>(ctx.ground_truths.size()));
  CHECK(step == 50);
}

TEST_CASE("episode generation is deterministic") {
  const auto scenes = generate_dataset(1, 56);
  const Raster raster = render(scenes[0]);
  const GridFeaturizer f(4);
  const int input_dim = 2 * static_cast<int>(f.dim()) + kHistoryDim;
  const QNetwork net = make_qnet({input_dim, 16, 13}, 2);
  TrainConfig cfg;
  cfg.grid = 4;
  const EpisodeContext ctx = make_context(scenes[0], raster, f);

  auto run = [&] {
    ReplayMemory mem(1000, 3);
    Rng rng(4);
    long long step = 0;
    run_episode(ctx, net, f, mem, rng, cfg, 0, step);
    std::vector<std::pair<int, double>> seq;
    for (std::size_t i = 0; i < mem.size(); ++i)
      seq.emplace_back(mem.at(i).action, mem.at(i).reward);
    return seq;
  };
  CHECK(run() == run());
}

TEST_CASE("zero epochs returns an initialized net and empty log") {
  const auto scenes = generate_dataset(3, 57);
  TrainConfig cfg;
  cfg.epochs = 0;
  const TrainResult r = train(scenes, cfg);
  CHECK(r.log.empty());
  CHECK(r.net.output_dim() == 13);
}

TEST_CASE("training is bit-deterministic under a fixed seed") {
  const auto scenes = generate_dataset(6, 58);
  TrainConfig cfg;
  cfg.epochs = 2;
  cfg.grid = 4;
  cfg.hidden1 = 16;
  cfg.hidden2 = 8;
  cfg.batch_size = 16;
  cfg.seed = 99;
  const TrainResult a = train(scenes, cfg);
  const TrainResult b = train(scenes, cfg);
  CHECK(a.net.weights == b.net.weights);
  CHECK(a.net.biases == b.net.biases);
  REQUIRE(a.log.size() == 2);
  CHECK(a.log[0].mean_reward == b.log[0].mean_reward);
  CHECK(a.log[1].mean_loss == b.log[1].mean_loss);
}
