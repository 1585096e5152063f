#pragma once

#include <vector>

#include "treerl/featurizer.hpp"
#include "treerl/mdp.hpp"
#include "treerl/qnet.hpp"
#include "treerl/rng.hpp"
#include "treerl/scene.hpp"

namespace treerl {

inline constexpr int kMaxTreeLevels = 10;

struct Proposal {
  Window window;
  int level = 1;       // root is level 1
  int node_index = 0;  // level-order position, root = 0
};

using ProposalSet = std::vector<Proposal>;

/// Tree-structured inference: the root is the whole image; every node below
/// the last level spawns the best scaling action's child and the best
/// translation action's child. Emits 2^levels - 1 proposals in level order;
/// within a level parents' children stay in parent order, scaling child
/// first. No ground truth is consulted.
ProposalSet propose(const Raster& raster, const QNetwork& net,
                    const Featurizer& featurizer, int levels);

/// Baseline: a single chain following the global argmax over all 13 actions.
/// Returns steps + 1 windows including the root.
ProposalSet propose_single_path(const Raster& raster, const QNetwork& net,
                                const Featurizer& featurizer, int steps);

/// Same tree shape as propose() with both child actions drawn uniformly at
/// random from their groups; needs no network or raster content.
ProposalSet propose_random(int image_w, int image_h, int levels, Rng& rng);

/// Proposal file line: scene_id, rank, level, x0, y0, x1, y1 (tab-separated).
std::string proposals_to_tsv(const std::string& scene_id,
                             const ProposalSet& proposals);

struct ProposalRecord {
  std::string scene_id;
  int rank = 0;
  int level = 1;
  Window window;
};

std::vector<ProposalRecord> proposals_from_tsv(const std::string& text);

}  // namespace treerl
