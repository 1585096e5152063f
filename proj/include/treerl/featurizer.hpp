#pragma once

#include <cstddef>
#include <vector>

#include "treerl/geometry.hpp"
#include "treerl/scene.hpp"

namespace treerl {

using FeatureVector = std::vector<double>;

/// Region-feature extraction interface. Implementations must be pure: the
/// output depends only on the raster content under the window.
class Featurizer {
 public:
  virtual ~Featurizer() = default;

  virtual std::size_t dim() const = 0;
  virtual FeatureVector extract(const Raster& raster, const Window& w) const = 0;

  FeatureVector extract_global(const Raster& raster) const {
    return extract(raster, Window{0.0, 0.0, static_cast<double>(raster.width),
                                  static_cast<double>(raster.height)});
  }
};

/// Default implementation: divides the window into grid x grid cells and
/// emits (mean, max) intensity per cell, row-major. dim() = 2 * grid^2.
class GridFeaturizer : public Featurizer {
 public:
  explicit GridFeaturizer(int grid = 8);

  int grid() const { return grid_; }
  std::size_t dim() const override {
    return 2 * static_cast<std::size_t>(grid_) * grid_;
  }
  FeatureVector extract(const Raster& raster, const Window& w) const override;

 private:
  int grid_;
};

}  // namespace treerl
