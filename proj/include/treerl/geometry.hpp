#pragma once

#include <string>

namespace treerl {

/// Axis-aligned rectangle in continuous image coordinates, y grows downward.
struct Window {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  double width() const { return x1 - x0; }
  double height() const { return y1 - y0; }
  double area() const { return width() * height(); }
  double center_x() const { return 0.5 * (x0 + x1); }
  double center_y() const { return 0.5 * (y0 + y1); }

  bool valid() const { return x1 > x0 && y1 > y0; }

  bool contains(const Window& other) const {
    return other.x0 >= x0 && other.y0 >= y0 && other.x1 <= x1 && other.y1 <= y1;
  }

  bool operator==(const Window&) const = default;
};

/// The 13 window transforms: ids 0-4 scale to a 0.55x sub-window, ids 5-12
/// translate or resize by a quarter of the current dimension.
enum class Action : int {
  kScaleTopLeft = 0,
  kScaleTopRight = 1,
  kScaleBottomLeft = 2,
  kScaleBottomRight = 3,
  kScaleCenter = 4,
  kMoveLeft = 5,
  kMoveRight = 6,
  kMoveUp = 7,
  kMoveDown = 8,
  kShrinkHorizontal = 9,
  kGrowHorizontal = 10,
  kShrinkVertical = 11,
  kGrowVertical = 12,
};

inline constexpr int kActionCount = 13;
inline constexpr int kScalingBegin = 0;
inline constexpr int kScalingEnd = 5;
inline constexpr int kTranslationBegin = 5;
inline constexpr int kTranslationEnd = 13;

inline constexpr double kScaleFactor = 0.55;
inline constexpr double kTranslateFactor = 0.25;
inline constexpr double kDefaultMinSize = 8.0;

enum class ActionGroup { kScaling, kTranslation };

inline ActionGroup action_group(Action a) {
  return static_cast<int>(a) < kScalingEnd ? ActionGroup::kScaling
                                           : ActionGroup::kTranslation;
}

std::string action_name(Action a);

/// Intersection-over-union of two valid windows; 0 when disjoint.
double iou(const Window& a, const Window& b);

/// Applies one of the 13 actions to `w` inside an image of extent
/// `image_w` x `image_h`. Total: the result is always a valid in-bounds
/// window with both dimensions >= min_size.
Window apply_action(const Window& w, Action a, double image_w, double image_h,
                    double min_size = kDefaultMinSize);

}  // namespace treerl
