#pragma once

#include <string>
#include <vector>

#include "treerl/scene.hpp"
#include "treerl/tree_search.hpp"

namespace treerl {

/// Minimal SVG assembly; enough for scene renders and line plots.
class SvgBuilder {
 public:
  SvgBuilder(double width, double height);

  void rect(double x, double y, double w, double h, const std::string& attrs);
  void line(double x0, double y0, double x1, double y1,
            const std::string& attrs);
  void polyline(const std::vector<std::pair<double, double>>& points,
                const std::string& attrs);
  void text(double x, double y, const std::string& content,
            const std::string& attrs = "");
  void raw(const std::string& fragment);

  std::string str() const;

 private:
  double width_;
  double height_;
  std::string body_;
};

/// Scene render: grayscale raster as pixel rects, ground truths dashed,
/// proposals colored by tree level (2 green, 3 yellow, 4 red, others gray).
std::string scene_to_svg(const Scene& scene, const Raster& raster,
                         const ProposalSet& proposals, double scale = 4.0);

}  // namespace treerl
