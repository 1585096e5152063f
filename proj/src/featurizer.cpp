#include "treerl/featurizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace treerl {

GridFeaturizer::GridFeaturizer(int grid) : grid_(grid) {
  if (grid < 1) throw std::invalid_argument("grid must be >= 1");
}

FeatureVector GridFeaturizer::extract(const Raster& raster,
                                      const Window& w) const {
  if (!w.valid()) throw std::invalid_argument("window is degenerate");
  const int g = grid_;
  const int cells = g * g;
  std::vector<double> sum(cells, 0.0), mx(cells, 0.0);
  std::vector<int> cnt(cells, 0);

  const double cw = w.width() / g;
  const double ch = w.height() / g;

  // A pixel belongs to the window (and a cell) when its center does.
  const int px0 = std::max(0, static_cast<int>(std::ceil(w.x0 - 0.5)));
  const int py0 = std::max(0, static_cast<int>(std::ceil(w.y0 - 0.5)));
  for (int y = py0; y < raster.height && y + 0.5 < w.y1; ++y) {
    const double cy = y + 0.5;
    const int cj = std::clamp(static_cast<int>((cy - w.y0) / ch), 0, g - 1);
    for (int x = px0; x < raster.width && x + 0.5 < w.x1; ++x) {
      const double cx = x + 0.5;
      const int ci = std::clamp(static_cast<int>((cx - w.x0) / cw), 0, g - 1);
      const int c = cj * g + ci;
      const double v = raster.at(x, y);
      sum[c] += v;
      mx[c] = cnt[c] ? std::max(mx[c], v) : v;
      ++cnt[c];
    }
  }

  const bool any = std::any_of(cnt.begin(), cnt.end(), [](int n) { return n > 0; });
  if (!any) {
    // Window too thin to catch any pixel center; fall back to the pixel
    // nearest the window center.
    const int fx = std::clamp(static_cast<int>(w.center_x()), 0, raster.width - 1);
    const int fy = std::clamp(static_cast<int>(w.center_y()), 0, raster.height - 1);
    const double v = raster.at(fx, fy);
    FeatureVector out(dim(), v);
    return out;
  }

  FeatureVector out(dim(), 0.0);
  for (int cj = 0; cj < g; ++cj) {
    for (int ci = 0; ci < g; ++ci) {
      int c = cj * g + ci;
      if (cnt[c] == 0) {
        // Nearest non-empty cell by Chebyshev ring, row-major within a ring.
        bool found = false;
        for (int r = 1; r < g && !found; ++r) {
          for (int dj = -r; dj <= r && !found; ++dj) {
            for (int di = -r; di <= r && !found; ++di) {
              if (std::max(std::abs(di), std::abs(dj)) != r) continue;
              const int ni = ci + di;
              const int nj = cj + dj;
              if (ni < 0 || ni >= g || nj < 0 || nj >= g) continue;
              const int nc = nj * g + ni;
              if (cnt[nc] > 0) {
                c = nc;
                found = true;
              }
            }
          }
        }
      }
      const int o = 2 * (cj * g + ci);
      out[o] = sum[c] / cnt[c];
      out[o + 1] = mx[c];
    }
  }
  return out;
}

}  // namespace treerl
