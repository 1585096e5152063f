#include "doctest.h"
#include "treerl/geometry.hpp"
#include "treerl/rng.hpp"

using namespace treerl;

namespace {

Window random_window(Rng& rng, double image_w, double image_h, double min_dim) {
  const double w = rng.uniform(min_dim, image_w);
  const double h = rng.uniform(min_dim, image_h);
  const double x = rng.uniform(0.0, image_w - w);
  const double y = rng.uniform(0.0, image_h - h);
  return {x, y, x + w, y + h};
}

}  // namespace

TEST_CASE("iou basic cases") {
  const Window a{0, 0, 10, 10};
  CHECK(iou(a, a) == 1.0);
  CHECK(iou({0, 0, 1, 1}, {5, 5, 6, 6}) == 0.0);
  // inter 2, union 6
  CHECK(iou({0, 0, 2, 2}, {1, 0, 3, 2}) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("iou symmetry and bounds") {
  Rng rng(11);
  for (int i = 0; i < 2000; ++i) {
    const Window a = random_window(rng, 100, 100, 1);
    const Window b = random_window(rng, 100, 100, 1);
    const double v = iou(a, b);
    CHECK(v == iou(b, a));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("area") {
  CHECK(Window{0, 0, 10, 10}.area() == 100.0);
  CHECK(Window{0, 0, 1, 1}.area() == 1.0);
  CHECK(Window{2, 3, 47, 48}.area() == 2025.0);
}

TEST_CASE("center scale") {
  const Window w = apply_action({0, 0, 100, 100}, Action::kScaleCenter, 100, 100);
  CHECK(w.x0 == doctest::Approx(22.5).epsilon(1e-12));
  CHECK(w.y0 == doctest::Approx(22.5).epsilon(1e-12));
  CHECK(w.x1 == doctest::Approx(77.5).epsilon(1e-12));
  CHECK(w.y1 == doctest::Approx(77.5).epsilon(1e-12));
}

TEST_CASE("move right") {
  const Window w = apply_action({0, 0, 40, 40}, Action::kMoveRight, 100, 100);
  CHECK(w == Window{10, 0, 50, 40});
}

TEST_CASE("move right clips at the image edge") {
  const Window w = apply_action({70, 0, 100, 40}, Action::kMoveRight, 100, 100);
  CHECK(w.x0 == doctest::Approx(77.5));
  CHECK(w.y0 == 0.0);
  CHECK(w.x1 == 100.0);
  CHECK(w.y1 == 40.0);
}

TEST_CASE("scaling children are subsets with exact 0.55 dimensions") {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    // keep parents wide enough that the min-size clamp cannot trigger
    const Window w = random_window(rng, 200, 200, 16);
    for (int a = kScalingBegin; a < kScalingEnd; ++a) {
      const Window c = apply_action(w, static_cast<Action>(a), 200, 200);
      CHECK(w.contains(c));
      CHECK(c.width() == doctest::Approx(0.55 * w.width()).epsilon(1e-9));
      CHECK(c.height() == doctest::Approx(0.55 * w.height()).epsilon(1e-9));
    }
  }
}

TEST_CASE("every action keeps windows valid and in bounds") {
  Rng rng(23);
  for (int i = 0; i < 500; ++i) {
    const Window w = random_window(rng, 128, 96, 8);
    for (int a = 0; a < kActionCount; ++a) {
      const Window r = apply_action(w, static_cast<Action>(a), 128, 96);
      CHECK(r.valid());
      CHECK(r.x0 >= 0.0);
      CHECK(r.y0 >= 0.0);
      CHECK(r.x1 <= 128.0);
      CHECK(r.y1 <= 96.0);
      CHECK(r.width() >= kDefaultMinSize - 1e-9);
      CHECK(r.height() >= kDefaultMinSize - 1e-9);
    }
  }
}

TEST_CASE("apply_action is deterministic") {
  const Window w{3.25, 4.5, 77.125, 91.0};
  for (int a = 0; a < kActionCount; ++a) {
    const Window r1 = apply_action(w, static_cast<Action>(a), 128, 128);
    const Window r2 = apply_action(w, static_cast<Action>(a), 128, 128);
    CHECK(r1 == r2);  // bitwise
  }
}

TEST_CASE("tiny windows clamp to min size") {
  const Window w{0, 0, 9, 9};
  const Window c = apply_action(w, Action::kScaleCenter, 128, 128);
  CHECK(c.width() == doctest::Approx(kDefaultMinSize));
  CHECK(c.height() == doctest::Approx(kDefaultMinSize));
  const Window s = apply_action(w, Action::kShrinkHorizontal, 128, 128);
  CHECK(s.width() == doctest::Approx(kDefaultMinSize));
}
