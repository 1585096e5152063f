#include "doctest.h"
#include "treerl/tree_search.hpp"

using namespace treerl;

namespace {

struct Fixture {
  std::vector<Scene> scenes = generate_dataset(1, 61);
  Raster raster = render(scenes[0]);
  GridFeaturizer featurizer{4};
  QNetwork net = make_qnet(
      {2 * static_cast<int>(featurizer.dim()) + kHistoryDim, 16, 13}, 5);
};

}  // namespace

TEST_CASE("proposal counts per level") {
  Fixture fx;
  CHECK(propose(fx.raster, fx.net, fx.featurizer, 1).size() == 1);
  CHECK(propose(fx.raster, fx.net, fx.featurizer, 5).size() == 31);
  CHECK(propose(fx.raster, fx.net, fx.featurizer, 6).size() == 63);
  CHECK_THROWS_AS(propose(fx.raster, fx.net, fx.featurizer, 11),
                  std::invalid_argument);
  CHECK_THROWS_AS(propose(fx.raster, fx.net, fx.featurizer, 0),
                  std::invalid_argument);
}

TEST_CASE("level ordering and per-level counts") {
  Fixture fx;
  const auto set = propose(fx.raster, fx.net, fx.featurizer, 6);
  int prev_level = 1;
  std::vector<int> per_level(7, 0);
  for (std::size_t i = 0; i < set.size(); ++i) {
    CHECK(set[i].node_index == static_cast<int>(i));
    CHECK(set[i].level >= prev_level);
    prev_level = set[i].level;
    ++per_level[set[i].level];
  }
  for (int l = 1; l <= 6; ++l) CHECK(per_level[l] == (1 << (l - 1)));
}

TEST_CASE("prefix property across depths") {
  Fixture fx;
  auto prev = propose(fx.raster, fx.net, fx.featurizer, 1);
  for (int levels = 2; levels <= 8; ++levels) {
    const auto cur = propose(fx.raster, fx.net, fx.featurizer, levels);
    REQUIRE(cur.size() == (1u << levels) - 1);
    for (std::size_t i = 0; i < prev.size(); ++i)
      CHECK(cur[i].window == prev[i].window);
    prev = cur;
  }
}

TEST_CASE("all proposals are valid and in bounds") {
  Fixture fx;
  const auto set = propose(fx.raster, fx.net, fx.featurizer, 7);
  for (const auto& p : set) {
    CHECK(p.window.valid());
    CHECK(p.window.x0 >= 0.0);
    CHECK(p.window.y0 >= 0.0);
    CHECK(p.window.x1 <= fx.raster.width);
    CHECK(p.window.y1 <= fx.raster.height);
  }
  // root is the whole image
  CHECK(set[0].window == Window{0, 0, 128, 128});
}

TEST_CASE("inference is deterministic") {
  Fixture fx;
  const auto a = propose(fx.raster, fx.net, fx.featurizer, 5);
  const auto b = propose(fx.raster, fx.net, fx.featurizer, 5);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].window == b[i].window);
}

TEST_CASE("single path is a chain under apply_action") {
  Fixture fx;
  CHECK(propose_single_path(fx.raster, fx.net, fx.featurizer, 0).size() == 1);
  const auto chain = propose_single_path(fx.raster, fx.net, fx.featurizer, 31);
  REQUIRE(chain.size() == 32);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    // successor must be reachable from the predecessor by one of the 13 actions
    bool reachable = false;
    for (int a = 0; a < kActionCount; ++a) {
      if (apply_action(chain[i].window, static_cast<Action>(a), 128, 128) ==
          chain[i + 1].window)
        reachable = true;
    }
    CHECK(reachable);
  }
}

TEST_CASE("random tree has the same shape") {
  Rng rng(9);
  const auto set = propose_random(128, 128, 5, rng);
  CHECK(set.size() == 31);
  for (const auto& p : set) CHECK(p.window.valid());
}

TEST_CASE("proposal file round trip") {
  Fixture fx;
  const auto set = propose(fx.raster, fx.net, fx.featurizer, 4);
  const auto records = proposals_from_tsv(proposals_to_tsv("sceneA", set));
  REQUIRE(records.size() == set.size());
  for (std::size_t i = 0; i < set.size(); ++i) {
    CHECK(records[i].scene_id == "sceneA");
    CHECK(records[i].rank == static_cast<int>(i));
    CHECK(records[i].level == set[i].level);
    CHECK(records[i].window == set[i].window);  // bitwise via %.17g
  }
  CHECK_THROWS(proposals_from_tsv("bad\tline\n"));
}
