#include "treerl/scene.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "treerl/io_util.hpp"
#include "treerl/rng.hpp"

namespace treerl {

std::vector<Window> Scene::ground_truths() const {
  std::vector<Window> out;
  out.reserve(objects.size());
  for (const auto& o : objects) out.push_back(o.box);
  return out;
}

namespace {

void validate_config(const SceneConfig& c) {
  if (c.width <= 0 || c.height <= 0)
    throw std::invalid_argument("scene extent must be positive");
  if (c.min_objects < 1 || c.max_objects < c.min_objects)
    throw std::invalid_argument("object count bounds invalid");
  if (c.min_side < 1 || c.min_side > c.width || c.min_side > c.height)
    throw std::invalid_argument("min_side does not fit the image");
  const double max_w = std::floor(c.max_side_fraction * c.width);
  const double max_h = std::floor(c.max_side_fraction * c.height);
  if (max_w < c.min_side || max_h < c.min_side)
    throw std::invalid_argument("max_side_fraction leaves no valid sizes");
  if (max_w * max_h < c.min_object_area)
    throw std::invalid_argument("min_object_area cannot fit the image");
  if (c.intensity_min < 0.0 || c.intensity_max > 1.0 ||
      c.intensity_min > c.intensity_max)
    throw std::invalid_argument("object intensity range invalid");
}

}  // namespace

std::vector<Scene> generate_dataset(int count, std::uint64_t seed,
                                    const SceneConfig& config) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  validate_config(config);

  const int max_w = static_cast<int>(config.max_side_fraction * config.width);
  const int max_h = static_cast<int>(config.max_side_fraction * config.height);

  std::vector<Scene> scenes;
  scenes.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    Scene s;
    char idbuf[32];
    std::snprintf(idbuf, sizeof(idbuf), "scene-%06d", i);
    s.id = idbuf;
    s.width = config.width;
    s.height = config.height;
    s.seed = mix_seed(seed, static_cast<std::uint64_t>(i));

    Rng rng(mix_seed(s.seed, 0x51ull));
    const int n = config.min_objects +
                  static_cast<int>(rng.uniform_int(
                      static_cast<std::uint64_t>(config.max_objects - config.min_objects + 1)));
    for (int k = 0; k < n; ++k) {
      for (int attempt = 0;; ++attempt) {
        if (attempt > 1000)
          throw std::runtime_error("could not place a distinct object");
        const int w = config.min_side +
                      static_cast<int>(rng.uniform_int(
                          static_cast<std::uint64_t>(max_w - config.min_side + 1)));
        const int h = config.min_side +
                      static_cast<int>(rng.uniform_int(
                          static_cast<std::uint64_t>(max_h - config.min_side + 1)));
        if (static_cast<double>(w) * h < config.min_object_area) continue;
        const int x = static_cast<int>(
            rng.uniform_int(static_cast<std::uint64_t>(config.width - w + 1)));
        const int y = static_cast<int>(
            rng.uniform_int(static_cast<std::uint64_t>(config.height - h + 1)));
        Window box{static_cast<double>(x), static_cast<double>(y),
                   static_cast<double>(x + w), static_cast<double>(y + h)};
        const bool duplicate =
            std::any_of(s.objects.begin(), s.objects.end(),
                        [&](const SceneObject& o) { return o.box == box; });
        if (duplicate) continue;
        const double intensity =
            rng.uniform(config.intensity_min, config.intensity_max);
        s.objects.push_back({box, intensity});
        break;
      }
    }
    scenes.push_back(std::move(s));
  }
  return scenes;
}

Raster render(const Scene& scene, double background, double noise_amplitude) {
  Raster r;
  r.width = scene.width;
  r.height = scene.height;
  r.data.resize(static_cast<std::size_t>(scene.width) * scene.height);

  Rng rng(mix_seed(scene.seed, 0xba5eull));
  for (double& v : r.data) {
    v = std::clamp(background + noise_amplitude * (2.0 * rng.uniform() - 1.0),
                   0.0, 1.0);
  }

  // A pixel belongs to a box when its center does; later objects overdraw.
  for (const auto& o : scene.objects) {
    const int px0 = std::max(0, static_cast<int>(std::ceil(o.box.x0 - 0.5)));
    const int py0 = std::max(0, static_cast<int>(std::ceil(o.box.y0 - 0.5)));
    for (int y = py0; y < scene.height && y + 0.5 < o.box.y1; ++y) {
      for (int x = px0; x < scene.width && x + 0.5 < o.box.x1; ++x) {
        r.at(x, y) = o.intensity;
      }
    }
  }
  return r;
}

namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double parse_double(const std::string& tok, int line_no) {
  std::size_t consumed = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &consumed);
  } catch (const std::exception&) {
    throw ManifestError("manifest line " + std::to_string(line_no) +
                        ": bad number '" + tok + "'");
  }
  if (consumed != tok.size())
    throw ManifestError("manifest line " + std::to_string(line_no) +
                        ": trailing garbage in '" + tok + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& tok, int line_no) {
  try {
    std::size_t consumed = 0;
    std::uint64_t v = std::stoull(tok, &consumed);
    if (consumed != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ManifestError("manifest line " + std::to_string(line_no) +
                        ": bad integer '" + tok + "'");
  }
}

}  // namespace

std::string manifest_to_string(const std::vector<Scene>& scenes) {
  std::ostringstream out;
  for (const auto& s : scenes) {
    out << s.id << '\t' << s.width << '\t' << s.height << '\t' << s.seed;
    for (const auto& o : s.objects) {
      out << '\t' << format_double(o.box.x0) << ' ' << format_double(o.box.y0)
          << ' ' << format_double(o.box.x1) << ' ' << format_double(o.box.y1)
          << ' ' << format_double(o.intensity);
    }
    out << '\n';
  }
  return out.str();
}

std::vector<Scene> manifest_from_string(const std::string& text) {
  std::vector<Scene> scenes;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, '\t');
    if (fields.size() < 5)
      throw ManifestError("manifest line " + std::to_string(line_no) +
                          ": expected id, extent, seed and >= 1 object");
    Scene s;
    s.id = fields[0];
    s.width = static_cast<int>(parse_double(fields[1], line_no));
    s.height = static_cast<int>(parse_double(fields[2], line_no));
    if (s.width <= 0 || s.height <= 0)
      throw ManifestError("manifest line " + std::to_string(line_no) +
                          ": non-positive scene extent");
    s.seed = parse_u64(fields[3], line_no);
    for (std::size_t f = 4; f < fields.size(); ++f) {
      const auto parts = split(fields[f], ' ');
      if (parts.size() != 5)
        throw ManifestError("manifest line " + std::to_string(line_no) +
                            ": object group needs 5 numbers");
      SceneObject o;
      o.box = {parse_double(parts[0], line_no), parse_double(parts[1], line_no),
               parse_double(parts[2], line_no), parse_double(parts[3], line_no)};
      o.intensity = parse_double(parts[4], line_no);
      if (!o.box.valid() || o.box.x0 < 0 || o.box.y0 < 0 ||
          o.box.x1 > s.width || o.box.y1 > s.height)
        throw ManifestError("manifest line " + std::to_string(line_no) +
                            ": object box invalid or out of bounds");
      if (o.intensity < 0.0 || o.intensity > 1.0)
        throw ManifestError("manifest line " + std::to_string(line_no) +
                            ": intensity outside [0,1]");
      s.objects.push_back(o);
    }
    for (const auto& prev : scenes) {
      if (prev.id == s.id)
        throw ManifestError("manifest line " + std::to_string(line_no) +
                            ": duplicate scene id '" + s.id + "'");
    }
    scenes.push_back(std::move(s));
  }
  return scenes;
}

void save_manifest(const std::vector<Scene>& scenes, const std::string& path) {
  write_file_atomic(path, manifest_to_string(scenes));
}

std::vector<Scene> load_manifest(const std::string& path) {
  return manifest_from_string(read_file(path));
}

std::string raster_to_pgm(const Raster& raster) {
  std::ostringstream out;
  out << "P2\n" << raster.width << ' ' << raster.height << "\n255\n";
  for (int y = 0; y < raster.height; ++y) {
    for (int x = 0; x < raster.width; ++x) {
      if (x) out << ' ';
      out << static_cast<int>(std::lround(raster.at(x, y) * 255.0));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace treerl
