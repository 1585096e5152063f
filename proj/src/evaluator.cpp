#include "treerl/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>

#include "treerl/svg.hpp"
#include "treerl/tree_search.hpp"

namespace treerl {

std::string size_filter_name(SizeFilter f) {
  switch (f) {
    case SizeFilter::kAll: return "all";
    case SizeFilter::kLarge: return "large";
    case SizeFilter::kSmall: return "small";
  }
  return "?";
}

namespace {

bool passes(SizeFilter f, const Window& g) {
  switch (f) {
    case SizeFilter::kAll: return true;
    case SizeFilter::kLarge: return size_class(g) == SizeClass::kLarge;
    case SizeFilter::kSmall: return size_class(g) == SizeClass::kSmall;
  }
  return false;
}

/// Best IoU over the first `budget` proposals for every filtered ground
/// truth, flattened over scenes.
std::vector<double> best_ious(const std::vector<EvalScene>& scenes,
                              std::size_t budget, SizeFilter filter) {
  std::vector<double> best;
  for (const auto& s : scenes) {
    const std::size_t k = std::min(budget, s.proposals.size());
    for (const auto& g : s.ground_truths) {
      if (!passes(filter, g)) continue;
      double b = 0.0;
      for (std::size_t i = 0; i < k; ++i)
        b = std::max(b, iou(s.proposals[i], g));
      best.push_back(b);
    }
  }
  return best;
}

}  // namespace

std::optional<double> recall(const std::vector<EvalScene>& scenes,
                             std::size_t budget, double threshold,
                             SizeFilter filter) {
  const auto best = best_ious(scenes, budget, filter);
  if (best.empty()) return std::nullopt;
  std::size_t matched = 0;
  for (double b : best)
    if (b >= threshold) ++matched;
  return static_cast<double>(matched) / static_cast<double>(best.size());
}

std::optional<double> average_recall(const std::vector<EvalScene>& scenes,
                                     std::size_t budget, SizeFilter filter) {
  const auto best = best_ious(scenes, budget, filter);
  if (best.empty()) return std::nullopt;
  double sum = 0.0;
  for (double b : best)
    sum += std::clamp(2.0 * (b - 0.5), 0.0, 1.0);
  return sum / static_cast<double>(best.size());
}

RecallReport make_report(const std::vector<EvalScene>& scenes,
                         const std::vector<int>& budgets,
                         const std::vector<double>& thresholds) {
  RecallReport rep;
  for (int budget : budgets) {
    for (SizeFilter f : {SizeFilter::kAll, SizeFilter::kLarge, SizeFilter::kSmall}) {
      for (double t : thresholds) {
        const auto r = recall(scenes, static_cast<std::size_t>(budget), t, f);
        if (r) rep.rows.push_back({budget, f, t, *r});
      }
    }
  }
  return rep;
}

RecallReport report(const std::vector<Scene>& dataset, const QNetwork& net,
                    const Featurizer& featurizer,
                    const std::vector<int>& levels,
                    const std::vector<double>& thresholds) {
  int deepest = 1;
  std::vector<int> budgets;
  for (int l : levels) {
    deepest = std::max(deepest, l);
    budgets.push_back((1 << l) - 1);
  }
  std::vector<EvalScene> scenes;
  scenes.reserve(dataset.size());
  for (const auto& s : dataset) {
    const Raster raster = render(s);
    const ProposalSet props = propose(raster, net, featurizer, deepest);
    EvalScene es;
    for (const auto& p : props) es.proposals.push_back(p.window);
    es.ground_truths = s.ground_truths();
    scenes.push_back(std::move(es));
  }
  return make_report(scenes, budgets, thresholds);
}

std::string report_to_tsv(const RecallReport& report) {
  std::ostringstream out;
  out << "budget\tsize_class\tiou_threshold\trecall\n";
  for (const auto& r : report.rows) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%d\t%s\t%.2f\t%.6f\n", r.budget,
                  size_filter_name(r.size_class).c_str(), r.threshold, r.recall);
    out << buf;
  }
  return out.str();
}

namespace {

constexpr double kPanelW = 420.0;
constexpr double kPanelH = 320.0;
constexpr double kMargin = 50.0;

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // x, recall
};

void draw_panel(SvgBuilder& svg, double ox, const std::string& title,
                const std::string& x_label, double x_min, double x_max,
                const std::vector<Series>& series) {
  const double px0 = ox + kMargin;
  const double py0 = kMargin;
  const double pw = kPanelW - 2 * kMargin;
  const double ph = kPanelH - 2 * kMargin;
  auto map_x = [&](double x) { return px0 + pw * (x - x_min) / (x_max - x_min); };
  auto map_y = [&](double r) { return py0 + ph * (1.0 - r); };

  svg.rect(px0, py0, pw, ph, "fill=\"none\" stroke=\"#303030\"");
  for (int i = 0; i <= 4; ++i) {
    const double r = i / 4.0;
    svg.line(px0 - 4, map_y(r), px0, map_y(r), "stroke=\"#303030\"");
    svg.text(px0 - 8, map_y(r) + 4, std::to_string(25 * i) + "%",
             "font-size=\"10\" text-anchor=\"end\"");
    const double x = x_min + (x_max - x_min) * r;
    svg.line(map_x(x), py0 + ph, map_x(x), py0 + ph + 4, "stroke=\"#303030\"");
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", x);
    svg.text(map_x(x), py0 + ph + 16, buf,
             "font-size=\"10\" text-anchor=\"middle\"");
  }
  svg.text(ox + kPanelW / 2, 20, title,
           "font-size=\"12\" text-anchor=\"middle\" font-weight=\"bold\"");
  svg.text(ox + kPanelW / 2, kPanelH - 8, x_label,
           "font-size=\"11\" text-anchor=\"middle\"");

  for (std::size_t i = 0; i < series.size(); ++i) {
    const std::string color = kPalette[i % 8];
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, r] : series[i].points)
      pts.emplace_back(map_x(x), map_y(r));
    svg.polyline(pts, "fill=\"none\" stroke=\"" + color + "\" stroke-width=\"1.5\"");
    svg.text(px0 + pw - 4, py0 + 14 + 13 * static_cast<double>(i),
             series[i].label,
             "font-size=\"10\" text-anchor=\"end\" fill=\"" + color + "\"");
  }
}

}  // namespace

std::string report_to_svg(const RecallReport& report) {
  // Plots use the unfiltered rows only.
  std::map<int, Series> by_budget;
  std::map<double, Series> by_threshold;
  double t_min = 1.0, t_max = 0.0;
  int b_min = 1 << 30, b_max = 0;
  for (const auto& r : report.rows) {
    if (r.size_class != SizeFilter::kAll) continue;
    by_budget[r.budget].points.emplace_back(r.threshold, r.recall);
    by_threshold[r.threshold].points.emplace_back(r.budget, r.recall);
    t_min = std::min(t_min, r.threshold);
    t_max = std::max(t_max, r.threshold);
    b_min = std::min(b_min, r.budget);
    b_max = std::max(b_max, r.budget);
  }

  SvgBuilder svg(2 * kPanelW, kPanelH);
  if (!by_budget.empty()) {
    std::vector<Series> left;
    for (auto& [budget, s] : by_budget) {
      std::sort(s.points.begin(), s.points.end());
      s.label = std::to_string(budget) + " proposals";
      left.push_back(s);
    }
    if (t_max <= t_min) t_max = t_min + 0.01;
    draw_panel(svg, 0.0, "recall vs IoU threshold", "IoU threshold", t_min,
               t_max, left);

    std::vector<Series> right;
    for (auto& [threshold, s] : by_threshold) {
      std::sort(s.points.begin(), s.points.end());
      char buf[32];
      std::snprintf(buf, sizeof(buf), "IoU %.2f", threshold);
      s.label = buf;
      right.push_back(s);
    }
    const double bm = b_max > b_min ? b_max : b_min + 1;
    draw_panel(svg, kPanelW, "recall vs proposal budget", "proposals", b_min,
               bm, right);
  }
  return svg.str();
}

}  // namespace treerl
