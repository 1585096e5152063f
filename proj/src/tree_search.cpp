#include "treerl/tree_search.hpp"

#include <cstdio>
#include <stdexcept>
#include <string>

#include "treerl/trainer.hpp"

namespace treerl {

ProposalSet propose(const Raster& raster, const QNetwork& net,
                    const Featurizer& featurizer, int levels) {
  if (levels < 1 || levels > kMaxTreeLevels)
    throw std::invalid_argument("levels must be in [1, " +
                                std::to_string(kMaxTreeLevels) + "]");

  ProposalSet out;
  int node_index = 0;
  std::vector<State> current;
  current.push_back(initial_state(raster, featurizer));
  out.push_back({current.front().window, 1, node_index++});

  for (int level = 2; level <= levels; ++level) {
    std::vector<State> next;
    next.reserve(current.size() * 2);
    for (const State& s : current) {
      const auto q = forward(net, s.network_input());
      const Action best_scaling =
          static_cast<Action>(group_argmax(q, kScalingBegin, kScalingEnd));
      const Action best_translation =
          static_cast<Action>(group_argmax(q, kTranslationBegin, kTranslationEnd));
      // Siblings diverge: each child's history carries its own path.
      State scaled = advance(s, best_scaling, raster, featurizer);
      out.push_back({scaled.window, level, node_index++});
      next.push_back(std::move(scaled));
      State translated = advance(s, best_translation, raster, featurizer);
      out.push_back({translated.window, level, node_index++});
      next.push_back(std::move(translated));
    }
    current = std::move(next);
  }
  return out;
}

ProposalSet propose_single_path(const Raster& raster, const QNetwork& net,
                                const Featurizer& featurizer, int steps) {
  if (steps < 0 || steps > kHistorySlots)
    throw std::invalid_argument("steps must be in [0, 50]");

  ProposalSet out;
  State s = initial_state(raster, featurizer);
  out.push_back({s.window, 1, 0});
  for (int t = 0; t < steps; ++t) {
    const auto q = forward(net, s.network_input());
    const Action best = static_cast<Action>(group_argmax(q, 0, kActionCount));
    s = advance(s, best, raster, featurizer);
    out.push_back({s.window, t + 2, t + 1});
  }
  return out;
}

ProposalSet propose_random(int image_w, int image_h, int levels, Rng& rng) {
  if (levels < 1 || levels > kMaxTreeLevels)
    throw std::invalid_argument("levels must be in [1, " +
                                std::to_string(kMaxTreeLevels) + "]");

  ProposalSet out;
  int node_index = 0;
  std::vector<Window> current;
  current.push_back({0.0, 0.0, static_cast<double>(image_w),
                     static_cast<double>(image_h)});
  out.push_back({current.front(), 1, node_index++});

  for (int level = 2; level <= levels; ++level) {
    std::vector<Window> next;
    next.reserve(current.size() * 2);
    for (const Window& w : current) {
      const auto scaling = static_cast<Action>(
          kScalingBegin + rng.uniform_int(kScalingEnd - kScalingBegin));
      const auto translation = static_cast<Action>(
          kTranslationBegin + rng.uniform_int(kTranslationEnd - kTranslationBegin));
      Window sw = apply_action(w, scaling, image_w, image_h);
      out.push_back({sw, level, node_index++});
      next.push_back(sw);
      Window tw = apply_action(w, translation, image_w, image_h);
      out.push_back({tw, level, node_index++});
      next.push_back(tw);
    }
    current = std::move(next);
  }
  return out;
}

std::string proposals_to_tsv(const std::string& scene_id,
                             const ProposalSet& proposals) {
  std::string out;
  for (std::size_t rank = 0; rank < proposals.size(); ++rank) {
    const auto& p = proposals[rank];
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%s\t%zu\t%d\t%.17g\t%.17g\t%.17g\t%.17g\n",
                  scene_id.c_str(), rank, p.level, p.window.x0, p.window.y0,
                  p.window.x1, p.window.y1);
    out += buf;
  }
  return out;
}

std::vector<ProposalRecord> proposals_from_tsv(const std::string& text) {
  std::vector<ProposalRecord> out;
  std::size_t start = 0;
  int line_no = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    const std::string line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (line.empty()) continue;

    ProposalRecord rec;
    char id[128];
    if (std::sscanf(line.c_str(), "%127[^\t]\t%d\t%d\t%lf\t%lf\t%lf\t%lf",
                    id, &rec.rank, &rec.level, &rec.window.x0, &rec.window.y0,
                    &rec.window.x1, &rec.window.y1) != 7)
      throw std::runtime_error("proposal file line " + std::to_string(line_no) +
                               ": expected 7 tab-separated fields");
    rec.scene_id = id;
    if (!rec.window.valid())
      throw std::runtime_error("proposal file line " + std::to_string(line_no) +
                               ": degenerate window");
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace treerl
