#include "treerl/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace treerl {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape_text(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

SvgBuilder::SvgBuilder(double width, double height)
    : width_(width), height_(height) {}

void SvgBuilder::rect(double x, double y, double w, double h,
                      const std::string& attrs) {
  body_ += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) +
           "\" height=\"" + num(h) + "\" " + attrs + "/>\n";
}

void SvgBuilder::line(double x0, double y0, double x1, double y1,
                      const std::string& attrs) {
  body_ += "<line x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" +
           num(x1) + "\" y2=\"" + num(y1) + "\" " + attrs + "/>\n";
}

void SvgBuilder::polyline(const std::vector<std::pair<double, double>>& points,
                          const std::string& attrs) {
  std::string pts;
  for (const auto& [x, y] : points) {
    if (!pts.empty()) pts += ' ';
    pts += num(x) + "," + num(y);
  }
  body_ += "<polyline points=\"" + pts + "\" " + attrs + "/>\n";
}

void SvgBuilder::text(double x, double y, const std::string& content,
                      const std::string& attrs) {
  body_ += "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" " + attrs + ">" +
           escape_text(content) + "</text>\n";
}

void SvgBuilder::raw(const std::string& fragment) { body_ += fragment; }

std::string SvgBuilder::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width_) +
         "\" height=\"" + num(height_) + "\" viewBox=\"0 0 " + num(width_) +
         " " + num(height_) + "\">\n" + body_ + "</svg>\n";
}

namespace {

std::string level_color(int level) {
  switch (level) {
    case 2: return "#00b000";
    case 3: return "#d0c000";
    case 4: return "#d00000";
    default: return "#808080";
  }
}

std::string gray(double v) {
  const int g = static_cast<int>(std::lround(v * 255.0));
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", g, g, g);
  return buf;
}

}  // namespace

std::string scene_to_svg(const Scene& scene, const Raster& raster,
                         const ProposalSet& proposals, double scale) {
  SvgBuilder svg(scene.width * scale, scene.height * scale);
  svg.raw("<g shape-rendering=\"crispEdges\">\n");
  for (int y = 0; y < raster.height; ++y) {
    // Merge horizontal runs of equal quantized gray into one rect.
    int x = 0;
    while (x < raster.width) {
      const std::string c = gray(raster.at(x, y));
      int end = x + 1;
      while (end < raster.width && gray(raster.at(end, y)) == c) ++end;
      svg.rect(x * scale, y * scale, (end - x) * scale, scale,
               "class=\"px\" fill=\"" + c + "\"");
      x = end;
    }
  }
  svg.raw("</g>\n");
  for (const auto& o : scene.objects) {
    svg.rect(o.box.x0 * scale, o.box.y0 * scale, o.box.width() * scale,
             o.box.height() * scale,
             "class=\"gt\" fill=\"none\" stroke=\"#00c0ff\" stroke-width=\"2\" "
             "stroke-dasharray=\"6,4\"");
  }
  for (const auto& p : proposals) {
    svg.rect(p.window.x0 * scale, p.window.y0 * scale, p.window.width() * scale,
             p.window.height() * scale,
             "class=\"prop\" fill=\"none\" stroke=\"" + level_color(p.level) +
                 "\" stroke-width=\"1.5\"");
  }
  return svg.str();
}

}  // namespace treerl
