#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "treerl/geometry.hpp"

namespace treerl {

/// Grayscale image, row-major, samples in [0,1].
struct Raster {
  int width = 0;
  int height = 0;
  std::vector<double> data;

  double at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }
  double& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
};

struct SceneObject {
  Window box;
  double intensity = 0.0;

  bool operator==(const SceneObject&) const = default;
};

/// A synthetic scene: ground-truth boxes plus the seed that reproduces its
/// raster bit-for-bit. Rasters are never stored, always re-rendered.
struct Scene {
  std::string id;
  int width = 0;
  int height = 0;
  std::uint64_t seed = 0;
  std::vector<SceneObject> objects;

  std::vector<Window> ground_truths() const;

  bool operator==(const Scene&) const = default;
};

struct SceneConfig {
  int width = 128;
  int height = 128;
  int min_objects = 1;
  int max_objects = 5;
  int min_side = 8;
  double max_side_fraction = 0.6;
  double min_object_area = 64.0;
  double background = 0.2;
  double noise_amplitude = 0.1;
  double intensity_min = 0.55;
  double intensity_max = 0.95;
};

enum class SizeClass { kLarge, kSmall };

/// Area threshold separating large from small objects (strictly greater
/// than counts as large).
inline constexpr double kLargeObjectArea = 2000.0;

inline SizeClass size_class(const Window& g) {
  return g.area() > kLargeObjectArea ? SizeClass::kLarge : SizeClass::kSmall;
}

class ManifestError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic dataset generation: same (count, seed, config) always
/// yields the same scenes.
std::vector<Scene> generate_dataset(int count, std::uint64_t seed,
                                    const SceneConfig& config = {});

/// Renders objects as filled rectangles over a seeded noisy background;
/// later objects overdraw earlier ones.
Raster render(const Scene& scene, double background = 0.2,
              double noise_amplitude = 0.1);

void save_manifest(const std::vector<Scene>& scenes, const std::string& path);
std::vector<Scene> load_manifest(const std::string& path);

std::string manifest_to_string(const std::vector<Scene>& scenes);
std::vector<Scene> manifest_from_string(const std::string& text);

/// Plain PGM (P2) export for debugging.
std::string raster_to_pgm(const Raster& raster);

}  // namespace treerl
