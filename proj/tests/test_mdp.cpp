#include "doctest.h"
#include "treerl/mdp.hpp"
#include "treerl/rng.hpp"

using namespace treerl;

namespace {

Window random_window(Rng& rng, double extent) {
  const double w = rng.uniform(4.0, extent);
  const double h = rng.uniform(4.0, extent);
  const double x = rng.uniform(0.0, extent - w);
  const double y = rng.uniform(0.0, extent - h);
  return {x, y, x + w, y + h};
}

}  // namespace

TEST_CASE("initial state starts at the whole image with empty history") {
  const auto scenes = generate_dataset(1, 4);
  const Raster r = render(scenes[0]);
  const GridFeaturizer f(8);
  const State s = initial_state(r, f);
  CHECK(s.window == Window{0, 0, 128, 128});
  CHECK(s.steps == 0);
  for (auto h : s.history) CHECK(h == -1);
  CHECK(s.window_feature == s.global_feature);
  const auto input = s.network_input();
  REQUIRE(input.size() == 2 * f.dim() + kHistoryDim);
  double history_sum = 0;
  for (std::size_t i = 2 * f.dim(); i < input.size(); ++i) history_sum += input[i];
  CHECK(history_sum == 0.0);
}

TEST_CASE("sign reward follows strict per-object improvement") {
  const std::vector<Window> gt{{10, 10, 50, 50}};
  // IoU improves
  CHECK(sign_reward({0, 0, 60, 60}, {5, 5, 55, 55}, gt) == +1);
  // IoU decreases
  CHECK(sign_reward({10, 10, 50, 50}, {30, 30, 90, 90}, gt) == -1);
  // zero delta counts as no improvement
  CHECK(sign_reward({0, 0, 60, 60}, {0, 0, 60, 60}, gt) == -1);
}

TEST_CASE("first hit pays +5 exactly once") {
  const std::vector<Window> gt{{10, 10, 50, 50}};
  HitFlags flags = make_hit_flags(1);

  // crossing 0.5 for the first time
  const Window before{0, 0, 90, 90};
  const Window hit{8, 8, 52, 52};
  CHECK(reward_step(before, hit, gt, flags) == 5.0);
  CHECK(flags[0] == +1);

  // an already-hit object improving further only earns +1
  const Window closer{9, 9, 51, 51};
  CHECK(reward_step(hit, closer, gt, flags) == 1.0);
  CHECK(flags[0] == +1);
}

TEST_CASE("hit case takes precedence over a drop on another object") {
  const std::vector<Window> gt{{10, 10, 50, 50}, {80, 80, 120, 120}};
  HitFlags flags = make_hit_flags(2);
  // next window covers gt0 above 0.5 while moving away from gt1
  const Window w{40, 40, 120, 120};
  const Window w2{9, 9, 51, 51};
  CHECK(reward_step(w, w2, gt, flags) == 5.0);
  CHECK(flags[0] == +1);
  CHECK(flags[1] == -1);
}

TEST_CASE("with all flags set the reward reduces to the sign reward") {
  Rng rng(17);
  for (int i = 0; i < 500; ++i) {
    std::vector<Window> gts;
    const int n = 1 + static_cast<int>(rng.uniform_int(3));
    for (int k = 0; k < n; ++k) gts.push_back(random_window(rng, 128));
    const Window w = random_window(rng, 128);
    const Window w2 = random_window(rng, 128);
    HitFlags flags(gts.size(), +1);
    CHECK(reward_step(w, w2, gts, flags) ==
          static_cast<double>(sign_reward(w, w2, gts)));
  }
}

TEST_CASE("step sets exactly one new history bit and terminates at 50") {
  const auto scenes = generate_dataset(1, 12);
  const Raster raster = render(scenes[0]);
  const auto gts = scenes[0].ground_truths();
  const GridFeaturizer f(8);
  Rng rng(5);

  State s = initial_state(raster, f);
  HitFlags flags = make_hit_flags(gts.size());
  std::vector<int> actions;
  for (int t = 0; t < kHistorySlots; ++t) {
    const int a = static_cast<int>(rng.uniform_int(kActionCount));
    actions.push_back(a);
    const StepResult r =
        step(s, static_cast<Action>(a), raster, gts, f, flags);
    CHECK((r.reward == -1.0 || r.reward == 1.0 || r.reward == 5.0));
    int set_bits = 0;
    for (int i = 0; i < kHistorySlots; ++i)
      if (r.next.history[i] >= 0) ++set_bits;
    CHECK(set_bits == t + 1);
    CHECK(r.terminal == (t == kHistorySlots - 1));
    s = r.next;
  }
  // the action sequence is exactly recoverable from the history
  for (int t = 0; t < kHistorySlots; ++t)
    CHECK(static_cast<int>(s.history[t]) == actions[t]);
  CHECK_THROWS_AS(step(s, Action::kMoveLeft, raster, gts, f, flags),
                  std::logic_error);
}

TEST_CASE("reward codomain over random episodes") {
  const auto scenes = generate_dataset(10, 77);
  const GridFeaturizer f(4);
  Rng rng(8);
  for (const auto& scene : scenes) {
    const Raster raster = render(scene);
    const auto gts = scene.ground_truths();
    State s = initial_state(raster, f);
    HitFlags flags = make_hit_flags(gts.size());
    for (int t = 0; t < kHistorySlots; ++t) {
      const auto a = static_cast<Action>(rng.uniform_int(kActionCount));
      const StepResult r = step(s, a, raster, gts, f, flags);
      CHECK((r.reward == -1.0 || r.reward == 1.0 || r.reward == 5.0));
      s = r.next;
    }
  }
}
