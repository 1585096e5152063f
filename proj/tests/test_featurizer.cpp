#include "doctest.h"
#include "treerl/featurizer.hpp"
#include "treerl/rng.hpp"

using namespace treerl;

namespace {

Raster uniform_raster(int w, int h, double v) {
  Raster r;
  r.width = w;
  r.height = h;
  r.data.assign(static_cast<std::size_t>(w) * h, v);
  return r;
}

}  // namespace

TEST_CASE("uniform raster yields a constant feature vector") {
  const GridFeaturizer f(8);
  const Raster r = uniform_raster(64, 64, 0.37);
  for (const Window w : {Window{0, 0, 64, 64}, Window{3, 5, 40, 22}}) {
    const auto v = f.extract(r, w);
    REQUIRE(v.size() == 128);
    for (double x : v) CHECK(x == doctest::Approx(0.37).epsilon(1e-12));
  }
}

TEST_CASE("output length is fixed regardless of window size") {
  const GridFeaturizer f(8);
  const Raster r = uniform_raster(128, 128, 0.5);
  CHECK(f.dim() == 128);
  CHECK(f.extract(r, {0, 0, 128, 128}).size() == 128);
  CHECK(f.extract(r, {10, 10, 18, 18}).size() == 128);
  CHECK(f.extract(r, {60.2, 60.2, 62.9, 61.7}).size() == 128);  // sub-cell window
}

TEST_CASE("window inside a bright object reads the object intensity") {
  Scene s;
  s.id = "t";
  s.width = 64;
  s.height = 64;
  s.seed = 5;
  s.objects.push_back({{8, 8, 56, 56}, 0.9});
  const Raster r = render(s, 0.1, 0.05);
  const GridFeaturizer f(8);
  const auto v = f.extract(r, {16, 16, 48, 48});
  for (std::size_t i = 0; i < v.size(); i += 2) CHECK(v[i] >= 0.9 - 1e-12);
}

TEST_CASE("extract only depends on content under the window") {
  Raster r = uniform_raster(32, 32, 0.4);
  const GridFeaturizer f(4);
  const Window w{8, 8, 24, 24};
  const auto before = f.extract(r, w);
  for (int x = 0; x < 32; ++x) {
    r.at(x, 0) = 1.0;
    r.at(x, 31) = 0.0;
  }
  CHECK(f.extract(r, w) == before);
}

TEST_CASE("mean entries are bounded by sample extremes") {
  Rng rng(3);
  Raster r = uniform_raster(48, 48, 0.0);
  for (double& v : r.data) v = rng.uniform();
  const GridFeaturizer f(8);
  const Window w{5.5, 2.25, 44.0, 46.5};
  const auto v = f.extract(r, w);
  double lo = 1.0, hi = 0.0;
  for (int y = 0; y < 48; ++y)
    for (int x = 0; x < 48; ++x) {
      const double cx = x + 0.5, cy = y + 0.5;
      if (cx >= w.x0 && cx < w.x1 && cy >= w.y0 && cy < w.y1) {
        lo = std::min(lo, r.at(x, y));
        hi = std::max(hi, r.at(x, y));
      }
    }
  for (std::size_t i = 0; i < v.size(); i += 2) {
    CHECK(v[i] >= lo - 1e-12);
    CHECK(v[i] <= hi + 1e-12);
  }
}

TEST_CASE("extract_global equals a full-image extract and is deterministic") {
  const auto scenes = generate_dataset(1, 9);
  const Raster r = render(scenes[0]);
  const GridFeaturizer f(8);
  const auto g = f.extract_global(r);
  CHECK(g == f.extract(r, {0, 0, 128, 128}));
  CHECK(g == f.extract_global(r));  // bitwise
}
