#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treerl/evaluator.hpp"
#include "treerl/io_util.hpp"
#include "treerl/qnet.hpp"
#include "treerl/scene.hpp"
#include "treerl/svg.hpp"
#include "treerl/trainer.hpp"
#include "treerl/tree_search.hpp"

namespace {

using namespace treerl;

// Resolved configuration echoed for reproducibility, one "# key value" line each.
std::string config_echo(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += "# " + k + " " + v + "\n";
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

int cmd_gen_scenes(int count, std::uint64_t seed, const std::string& out,
                   const SceneConfig& cfg) {
  const auto scenes = generate_dataset(count, seed, cfg);
  save_manifest(scenes, out);
  std::cout << "wrote " << scenes.size() << " scenes to " << out << "\n";
  return 0;
}

int cmd_train(const std::string& manifest, const std::string& out,
              const std::string& log_path, const TrainConfig& cfg) {
  const auto scenes = load_manifest(manifest);
  if (scenes.empty()) throw std::runtime_error("manifest '" + manifest + "' is empty");

  const std::string echo = config_echo({
      {"manifest", manifest},
      {"checkpoint", out},
      {"epochs", std::to_string(cfg.epochs)},
      {"max_steps", std::to_string(cfg.max_steps)},
      {"epsilon_start", fmt(cfg.epsilon_start)},
      {"epsilon_end", fmt(cfg.epsilon_end)},
      {"anneal_epochs", std::to_string(cfg.anneal_epochs)},
      {"gamma", fmt(cfg.gamma)},
      {"batch_size", std::to_string(cfg.batch_size)},
      {"replay_capacity", std::to_string(cfg.replay_capacity)},
      {"learning_rate", fmt(cfg.learning_rate)},
      {"td_clip", fmt(cfg.td_clip)},
      {"grid", std::to_string(cfg.grid)},
      {"hidden1", std::to_string(cfg.hidden1)},
      {"hidden2", std::to_string(cfg.hidden2)},
      {"seed", std::to_string(cfg.seed)},
  });

  const auto result = train(
      scenes, cfg, [&](const TrainResult& r, const EpochLog& e) {
        save_qnet(r.net, out);  // checkpoint refreshed every epoch
        write_file_atomic(log_path, echo + training_log_to_string(r.log));
        std::fprintf(stderr,
                     "epoch %d  eps=%.3f  mean_reward=%.3f  mean_loss=%.5f\n",
                     e.epoch, e.epsilon, e.mean_reward, e.mean_loss);
      });
  save_qnet(result.net, out);
  write_file_atomic(log_path, echo + training_log_to_string(result.log));
  std::cout << "trained " << cfg.epochs << " epochs on " << scenes.size()
            << " scenes; checkpoint " << out << ", log " << log_path << "\n";
  return 0;
}

GridFeaturizer featurizer_for(const QNetwork& net, int grid) {
  GridFeaturizer f(grid);
  const int expected = 2 * static_cast<int>(f.dim()) + kHistoryDim;
  if (net.input_dim() != expected)
    throw std::runtime_error(
        "checkpoint input dim " + std::to_string(net.input_dim()) +
        " does not match featurizer input dim " + std::to_string(expected) +
        " (grid " + std::to_string(grid) + ")");
  return f;
}

int cmd_propose(const std::string& manifest, const std::string& checkpoint,
                int levels, int grid, const std::string& out) {
  const auto scenes = load_manifest(manifest);
  const auto net = load_qnet(checkpoint);
  const GridFeaturizer feat = featurizer_for(net, grid);

  std::string text;
  for (const auto& s : scenes) {
    const Raster raster = render(s);
    text += proposals_to_tsv(s.id, propose(raster, net, feat, levels));
  }
  write_file_atomic(out, text);
  std::cout << "wrote proposals for " << scenes.size() << " scenes to " << out
            << "\n";
  return 0;
}

int cmd_evaluate(const std::string& manifest, const std::string& proposals_path,
                 std::vector<double> thresholds, std::vector<int> budgets,
                 const std::string& out, const std::string& svg_out) {
  const auto scenes = load_manifest(manifest);
  const auto records = proposals_from_tsv(read_file(proposals_path));

  std::map<std::string, std::vector<Window>> by_scene;
  for (const auto& r : records) by_scene[r.scene_id].push_back(r.window);

  std::set<std::string> known;
  for (const auto& s : scenes) known.insert(s.id);
  std::string unknown;
  for (const auto& [id, _] : by_scene) {
    if (!known.count(id)) unknown += (unknown.empty() ? "" : ", ") + id;
  }
  if (!unknown.empty())
    throw std::runtime_error("proposal file references unknown scene ids: " +
                             unknown);

  std::vector<EvalScene> eval;
  for (const auto& s : scenes) {
    EvalScene es;
    auto it = by_scene.find(s.id);
    if (it != by_scene.end()) es.proposals = it->second;
    es.ground_truths = s.ground_truths();
    eval.push_back(std::move(es));
  }

  std::sort(thresholds.begin(), thresholds.end());
  std::sort(budgets.begin(), budgets.end());
  const RecallReport rep = make_report(eval, budgets, thresholds);

  std::string text = report_to_tsv(rep);
  text += "\n# average_recall\n";
  for (int b : budgets) {
    for (SizeFilter f : {SizeFilter::kAll, SizeFilter::kLarge, SizeFilter::kSmall}) {
      const auto ar = average_recall(eval, static_cast<std::size_t>(b), f);
      if (ar) {
        char buf[96];
        std::snprintf(buf, sizeof(buf), "# AR\t%d\t%s\t%.6f\n", b,
                      size_filter_name(f).c_str(), *ar);
        text += buf;
      }
    }
  }
  write_file_atomic(out, text);
  if (!svg_out.empty()) write_file_atomic(svg_out, report_to_svg(rep));
  std::cout << text;
  return 0;
}

int cmd_render(const std::string& manifest, const std::string& proposals_path,
               const std::string& scene_id, const std::string& out) {
  const auto scenes = load_manifest(manifest);
  const Scene* scene = nullptr;
  for (const auto& s : scenes)
    if (s.id == scene_id) scene = &s;
  if (!scene) throw std::runtime_error("unknown scene id '" + scene_id + "'");

  ProposalSet props;
  if (!proposals_path.empty()) {
    for (const auto& r : proposals_from_tsv(read_file(proposals_path))) {
      if (r.scene_id == scene_id) props.push_back({r.window, r.level, r.rank});
    }
  }
  write_file_atomic(out, scene_to_svg(*scene, render(*scene), props));
  std::cout << "wrote " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree-structured RL object proposals on synthetic scenes"};
  app.require_subcommand(1);

  // gen-scenes
  auto* gen = app.add_subcommand("gen-scenes", "generate a synthetic dataset manifest");
  int gen_count = 0;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  SceneConfig scene_cfg;
  gen->add_option("--count", gen_count, "number of scenes")
      ->required()
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_seed, "dataset seed")->required();
  gen->add_option("--out", gen_out, "output manifest path")->required();
  gen->add_option("--width", scene_cfg.width, "scene width");
  gen->add_option("--height", scene_cfg.height, "scene height");
  gen->add_option("--min-objects", scene_cfg.min_objects, "minimum objects per scene");
  gen->add_option("--max-objects", scene_cfg.max_objects, "maximum objects per scene");

  // train
  auto* tr = app.add_subcommand("train", "train the Q-network");
  std::string tr_manifest, tr_out, tr_log;
  TrainConfig train_cfg;
  tr->add_option("--manifest", tr_manifest, "training manifest")->required();
  tr->add_option("--out", tr_out, "checkpoint output path")->required();
  tr->add_option("--log", tr_log, "training log path (default <out>.log)");
  tr->add_option("--seed", train_cfg.seed, "run seed")->required();
  tr->add_option("--epochs", train_cfg.epochs)->check(CLI::NonNegativeNumber);
  tr->add_option("--max-steps", train_cfg.max_steps);
  tr->add_option("--epsilon-start", train_cfg.epsilon_start);
  tr->add_option("--epsilon-end", train_cfg.epsilon_end);
  tr->add_option("--anneal-epochs", train_cfg.anneal_epochs);
  tr->add_option("--gamma", train_cfg.gamma);
  tr->add_option("--batch-size", train_cfg.batch_size);
  tr->add_option("--replay-capacity", train_cfg.replay_capacity);
  tr->add_option("--alpha", train_cfg.learning_rate, "SGD learning rate");
  tr->add_option("--td-clip", train_cfg.td_clip);
  tr->add_option("--grid", train_cfg.grid, "featurizer grid size");
  tr->add_option("--hidden1", train_cfg.hidden1);
  tr->add_option("--hidden2", train_cfg.hidden2);

  // propose
  auto* pr = app.add_subcommand("propose", "emit tree-search proposals");
  std::string pr_manifest, pr_checkpoint, pr_out;
  int pr_levels = 5, pr_grid = 8;
  pr->add_option("--manifest", pr_manifest)->required();
  pr->add_option("--checkpoint", pr_checkpoint)->required();
  pr->add_option("--levels", pr_levels, "tree depth (1..10)")
      ->required()
      ->check(CLI::Range(1, kMaxTreeLevels));
  pr->add_option("--grid", pr_grid, "featurizer grid size");
  pr->add_option("--out", pr_out)->required();

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "recall report from a proposal file");
  std::string ev_manifest, ev_proposals, ev_out, ev_svg;
  std::vector<double> ev_thresholds{0.5, 0.6, 0.7};
  std::vector<int> ev_budgets{31, 63};
  ev->add_option("--manifest", ev_manifest)->required();
  ev->add_option("--proposals", ev_proposals)->required();
  ev->add_option("--thresholds", ev_thresholds, "IoU thresholds");
  ev->add_option("--budgets", ev_budgets, "proposal budgets");
  ev->add_option("--out", ev_out)->required();
  ev->add_option("--svg", ev_svg, "optional plot output path");

  // render
  auto* rd = app.add_subcommand("render", "SVG render of one scene with proposals");
  std::string rd_manifest, rd_proposals, rd_scene, rd_out;
  rd->add_option("--manifest", rd_manifest)->required();
  rd->add_option("--proposals", rd_proposals, "proposal file (optional)");
  rd->add_option("--scene", rd_scene, "scene id")->required();
  rd->add_option("--out", rd_out)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_scenes(gen_count, gen_seed, gen_out, scene_cfg);
    if (tr->parsed()) {
      if (tr_log.empty()) tr_log = tr_out + ".log";
      return cmd_train(tr_manifest, tr_out, tr_log, train_cfg);
    }
    if (pr->parsed())
      return cmd_propose(pr_manifest, pr_checkpoint, pr_levels, pr_grid, pr_out);
    if (ev->parsed())
      return cmd_evaluate(ev_manifest, ev_proposals, ev_thresholds, ev_budgets,
                          ev_out, ev_svg);
    if (rd->parsed()) return cmd_render(rd_manifest, rd_proposals, rd_scene, rd_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
