#include "treerl/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace treerl {

std::string action_name(Action a) {
  switch (a) {
    case Action::kScaleTopLeft: return "scale-top-left";
    case Action::kScaleTopRight: return "scale-top-right";
    case Action::kScaleBottomLeft: return "scale-bottom-left";
    case Action::kScaleBottomRight: return "scale-bottom-right";
    case Action::kScaleCenter: return "scale-center";
    case Action::kMoveLeft: return "move-left";
    case Action::kMoveRight: return "move-right";
    case Action::kMoveUp: return "move-up";
    case Action::kMoveDown: return "move-down";
    case Action::kShrinkHorizontal: return "shrink-horizontal";
    case Action::kGrowHorizontal: return "grow-horizontal";
    case Action::kShrinkVertical: return "shrink-vertical";
    case Action::kGrowVertical: return "grow-vertical";
  }
  return "unknown";
}

double iou(const Window& a, const Window& b) {
  const double ix =
      std::min(a.x1, b.x1) - std::max(a.x0, b.x0);
  const double iy =
      std::min(a.y1, b.y1) - std::max(a.y0, b.y0);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  return inter / (a.area() + b.area() - inter);
}

namespace {

// Enforce dim >= min_size about the current center, then shift the interval
// back into [0, limit]. Requires limit >= min_size.
void clamp_dimension(double& lo, double& hi, double min_size, double limit) {
  if (hi - lo < min_size) {
    const double c = 0.5 * (lo + hi);
    lo = c - 0.5 * min_size;
    hi = c + 0.5 * min_size;
  }
  if (lo < 0.0) {
    hi -= lo;
    lo = 0.0;
  }
  if (hi > limit) {
    lo -= hi - limit;
    hi = limit;
  }
}

}  // namespace

Window apply_action(const Window& w, Action a, double image_w, double image_h,
                    double min_size) {
  const double bw = w.width();
  const double bh = w.height();
  Window r = w;

  if (action_group(a) == ActionGroup::kScaling) {
    const double sw = kScaleFactor * bw;
    const double sh = kScaleFactor * bh;
    switch (a) {
      case Action::kScaleTopLeft:
        r = {w.x0, w.y0, w.x0 + sw, w.y0 + sh};
        break;
      case Action::kScaleTopRight:
        r = {w.x1 - sw, w.y0, w.x1, w.y0 + sh};
        break;
      case Action::kScaleBottomLeft:
        r = {w.x0, w.y1 - sh, w.x0 + sw, w.y1};
        break;
      case Action::kScaleBottomRight:
        r = {w.x1 - sw, w.y1 - sh, w.x1, w.y1};
        break;
      default: {  // center
        const double cx = w.center_x();
        const double cy = w.center_y();
        r = {cx - 0.5 * sw, cy - 0.5 * sh, cx + 0.5 * sw, cy + 0.5 * sh};
        break;
      }
    }
  } else {
    switch (a) {
      case Action::kMoveLeft:
        r.x0 -= kTranslateFactor * bw;
        r.x1 -= kTranslateFactor * bw;
        break;
      case Action::kMoveRight:
        r.x0 += kTranslateFactor * bw;
        r.x1 += kTranslateFactor * bw;
        break;
      case Action::kMoveUp:
        r.y0 -= kTranslateFactor * bh;
        r.y1 -= kTranslateFactor * bh;
        break;
      case Action::kMoveDown:
        r.y0 += kTranslateFactor * bh;
        r.y1 += kTranslateFactor * bh;
        break;
      case Action::kShrinkHorizontal:
        r.x0 += 0.5 * kTranslateFactor * bw;
        r.x1 -= 0.5 * kTranslateFactor * bw;
        break;
      case Action::kGrowHorizontal:
        r.x0 -= 0.5 * kTranslateFactor * bw;
        r.x1 += 0.5 * kTranslateFactor * bw;
        break;
      case Action::kShrinkVertical:
        r.y0 += 0.5 * kTranslateFactor * bh;
        r.y1 -= 0.5 * kTranslateFactor * bh;
        break;
      default:  // grow vertical
        r.y0 -= 0.5 * kTranslateFactor * bh;
        r.y1 += 0.5 * kTranslateFactor * bh;
        break;
    }
    // Transform first, then intersect with the image rectangle.
    r.x0 = std::max(r.x0, 0.0);
    r.y0 = std::max(r.y0, 0.0);
    r.x1 = std::min(r.x1, image_w);
    r.y1 = std::min(r.y1, image_h);
  }

  clamp_dimension(r.x0, r.x1, min_size, image_w);
  clamp_dimension(r.y0, r.y1, min_size, image_h);
  return r;
}

}  // namespace treerl
