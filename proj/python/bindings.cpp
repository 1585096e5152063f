#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treerl/evaluator.hpp"
#include "treerl/featurizer.hpp"
#include "treerl/geometry.hpp"
#include "treerl/mdp.hpp"
#include "treerl/qnet.hpp"
#include "treerl/scene.hpp"
#include "treerl/trainer.hpp"
#include "treerl/tree_search.hpp"

namespace py = pybind11;
using namespace treerl;

PYBIND11_MODULE(treerl, m) {
  m.doc() = "Tree-structured RL object proposals on synthetic scenes";

  py::class_<Window>(m, "Window")
      .def(py::init<>())
      .def(py::init([](double x0, double y0, double x1, double y1) {
             return Window{x0, y0, x1, y1};
           }),
           py::arg("x0"), py::arg("y0"), py::arg("x1"), py::arg("y1"))
      .def_readwrite("x0", &Window::x0)
      .def_readwrite("y0", &Window::y0)
      .def_readwrite("x1", &Window::x1)
      .def_readwrite("y1", &Window::y1)
      .def("width", &Window::width)
      .def("height", &Window::height)
      .def("area", &Window::area)
      .def("__eq__", [](const Window& a, const Window& b) { return a == b; })
      .def("__repr__", [](const Window& w) {
        return "Window(" + std::to_string(w.x0) + ", " + std::to_string(w.y0) +
               ", " + std::to_string(w.x1) + ", " + std::to_string(w.y1) + ")";
      });

  m.attr("ACTION_COUNT") = kActionCount;
  m.def("action_name", [](int a) { return action_name(static_cast<Action>(a)); });
  m.def("iou", &iou, py::arg("a"), py::arg("b"));
  m.def(
      "apply_action",
      [](const Window& w, int action, double image_w, double image_h,
         double min_size) {
        return apply_action(w, static_cast<Action>(action), image_w, image_h,
                            min_size);
      },
      py::arg("window"), py::arg("action"), py::arg("image_w"),
      py::arg("image_h"), py::arg("min_size") = kDefaultMinSize);

  py::class_<Raster>(m, "Raster")
      .def_readonly("width", &Raster::width)
      .def_readonly("height", &Raster::height)
      .def_readonly("data", &Raster::data)
      .def("at", [](const Raster& r, int x, int y) { return r.at(x, y); });

  py::class_<SceneObject>(m, "SceneObject")
      .def_readonly("box", &SceneObject::box)
      .def_readonly("intensity", &SceneObject::intensity);

  py::class_<Scene>(m, "Scene")
      .def_readonly("id", &Scene::id)
      .def_readonly("width", &Scene::width)
      .def_readonly("height", &Scene::height)
      .def_readonly("seed", &Scene::seed)
      .def_readonly("objects", &Scene::objects)
      .def("ground_truths", &Scene::ground_truths)
      .def("__eq__", [](const Scene& a, const Scene& b) { return a == b; });

  py::class_<SceneConfig>(m, "SceneConfig")
      .def(py::init<>())
      .def_readwrite("width", &SceneConfig::width)
      .def_readwrite("height", &SceneConfig::height)
      .def_readwrite("min_objects", &SceneConfig::min_objects)
      .def_readwrite("max_objects", &SceneConfig::max_objects);

  m.def("generate_dataset", &generate_dataset, py::arg("count"),
        py::arg("seed"), py::arg("config") = SceneConfig{});
  m.def("render", &render, py::arg("scene"), py::arg("background") = 0.2,
        py::arg("noise_amplitude") = 0.1);
  m.def("size_class", [](const Window& g) {
    return size_class(g) == SizeClass::kLarge ? "large" : "small";
  });
  m.def("save_manifest", &save_manifest);
  m.def("load_manifest", &load_manifest);

  py::class_<GridFeaturizer>(m, "GridFeaturizer")
      .def(py::init<int>(), py::arg("grid") = 8)
      .def("dim", &GridFeaturizer::dim)
      .def("extract", &GridFeaturizer::extract)
      .def("extract_global", &GridFeaturizer::extract_global);

  py::class_<QNetwork>(m, "QNetwork")
      .def_readonly("dims", &QNetwork::dims)
      .def("input_dim", &QNetwork::input_dim)
      .def("output_dim", &QNetwork::output_dim)
      .def("forward", [](const QNetwork& net, const std::vector<double>& x) {
        return forward(net, x);
      });
  m.def("make_qnet", &make_qnet, py::arg("dims"), py::arg("seed"));
  m.def("save_qnet", &save_qnet);
  m.def("load_qnet", &load_qnet);

  m.def("sign_reward", &sign_reward);

  py::class_<Proposal>(m, "Proposal")
      .def_readonly("window", &Proposal::window)
      .def_readonly("level", &Proposal::level)
      .def_readonly("node_index", &Proposal::node_index);

  m.def(
      "propose",
      [](const Raster& raster, const QNetwork& net, const GridFeaturizer& f,
         int levels) { return propose(raster, net, f, levels); },
      py::arg("raster"), py::arg("net"), py::arg("featurizer"),
      py::arg("levels"));
  m.def(
      "propose_single_path",
      [](const Raster& raster, const QNetwork& net, const GridFeaturizer& f,
         int steps) { return propose_single_path(raster, net, f, steps); },
      py::arg("raster"), py::arg("net"), py::arg("featurizer"),
      py::arg("steps"));

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("epochs", &TrainConfig::epochs)
      .def_readwrite("max_steps", &TrainConfig::max_steps)
      .def_readwrite("epsilon_start", &TrainConfig::epsilon_start)
      .def_readwrite("epsilon_end", &TrainConfig::epsilon_end)
      .def_readwrite("anneal_epochs", &TrainConfig::anneal_epochs)
      .def_readwrite("gamma", &TrainConfig::gamma)
      .def_readwrite("batch_size", &TrainConfig::batch_size)
      .def_readwrite("replay_capacity", &TrainConfig::replay_capacity)
      .def_readwrite("learning_rate", &TrainConfig::learning_rate)
      .def_readwrite("grid", &TrainConfig::grid)
      .def_readwrite("hidden1", &TrainConfig::hidden1)
      .def_readwrite("hidden2", &TrainConfig::hidden2)
      .def_readwrite("seed", &TrainConfig::seed);

  m.def(
      "train",
      [](const std::vector<Scene>& scenes, const TrainConfig& cfg) {
        const auto result = train(scenes, cfg);
        py::list log;
        for (const auto& e : result.log) {
          py::dict d;
          d["epoch"] = e.epoch;
          d["epsilon"] = e.epsilon;
          d["mean_reward"] = e.mean_reward;
          d["mean_loss"] = e.mean_loss;
          d["episodes"] = e.episodes;
          log.append(d);
        }
        return py::make_tuple(result.net, log);
      },
      py::arg("scenes"), py::arg("config"));

  m.def(
      "recall",
      [](const std::vector<std::pair<std::vector<Window>, std::vector<Window>>>&
             scenes,
         std::size_t budget, double threshold, const std::string& filter) {
        std::vector<EvalScene> es;
        for (const auto& [props, gts] : scenes) es.push_back({props, gts});
        SizeFilter f = filter == "large"   ? SizeFilter::kLarge
                       : filter == "small" ? SizeFilter::kSmall
                                           : SizeFilter::kAll;
        const auto r = recall(es, budget, threshold, f);
        return r ? py::cast(*r) : py::object(py::none());
      },
      py::arg("scenes"), py::arg("budget"), py::arg("threshold"),
      py::arg("filter") = "all");
}
