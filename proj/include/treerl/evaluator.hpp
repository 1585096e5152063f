#pragma once

#include <optional>
#include <string>
#include <vector>

#include "treerl/featurizer.hpp"
#include "treerl/geometry.hpp"
#include "treerl/qnet.hpp"
#include "treerl/scene.hpp"

namespace treerl {

enum class SizeFilter { kAll, kLarge, kSmall };

std::string size_filter_name(SizeFilter f);

/// Per-scene, rank-ordered proposal windows paired with that scene's
/// ground truths.
struct EvalScene {
  std::vector<Window> proposals;
  std::vector<Window> ground_truths;
};

/// Fraction of (size-filtered) ground truths matched by some proposal among
/// the first `budget` with IoU >= threshold. Empty filtered set -> nullopt.
std::optional<double> recall(const std::vector<EvalScene>& scenes,
                             std::size_t budget, double threshold,
                             SizeFilter filter = SizeFilter::kAll);

/// Average recall over IoU in (0.5, 1): per ground truth,
/// clamp(2 * (best IoU - 0.5), 0, 1), averaged. Closed form of the integral
/// of recall(threshold) over [0.5, 1].
std::optional<double> average_recall(const std::vector<EvalScene>& scenes,
                                     std::size_t budget,
                                     SizeFilter filter = SizeFilter::kAll);

struct RecallRow {
  int budget = 0;
  SizeFilter size_class = SizeFilter::kAll;
  double threshold = 0.0;
  double recall = 0.0;
};

struct RecallReport {
  std::vector<RecallRow> rows;
};

/// Rows for every (budget, size class, threshold) combination; undefined
/// combinations (no ground truths after filtering) are absent.
RecallReport make_report(const std::vector<EvalScene>& scenes,
                         const std::vector<int>& budgets,
                         const std::vector<double>& thresholds);

/// Runs tree inference at the deepest requested level and evaluates its
/// prefixes: level L contributes budget 2^L - 1.
RecallReport report(const std::vector<Scene>& dataset, const QNetwork& net,
                    const Featurizer& featurizer,
                    const std::vector<int>& levels,
                    const std::vector<double>& thresholds);

std::string report_to_tsv(const RecallReport& report);

/// Two plot panels: recall vs IoU threshold per budget, and recall vs
/// budget per threshold.
std::string report_to_svg(const RecallReport& report);

}  // namespace treerl
