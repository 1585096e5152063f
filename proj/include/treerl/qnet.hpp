#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace treerl {

/// Fully connected network, rectified-linear hidden layers, identity output.
/// Layer l maps dims[l] -> dims[l+1]; weights are row-major (out x in).
struct QNetwork {
  std::vector<int> dims;
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;

  int input_dim() const { return dims.front(); }
  int output_dim() const { return dims.back(); }
  std::size_t layer_count() const { return weights.size(); }
};

/// Weights uniform in [-1/sqrt(fan_in), +1/sqrt(fan_in)], biases zero.
QNetwork make_qnet(const std::vector<int>& dims, std::uint64_t seed);

std::vector<double> forward(const QNetwork& net, std::span<const double> input);

/// Activations captured during forward, needed for backprop.
struct ForwardTrace {
  std::vector<std::vector<double>> activations;  // [0]=input .. [L]=output
};

std::vector<double> forward_trace(const QNetwork& net,
                                  std::span<const double> input,
                                  ForwardTrace& trace);

struct Gradients {
  std::vector<std::vector<double>> weights;
  std::vector<std::vector<double>> biases;
};

Gradients make_zero_gradients(const QNetwork& net);

/// Accumulates coeff * d output[action] / d theta into `acc`.
void backward_action(const QNetwork& net, const ForwardTrace& trace,
                     int action, double coeff, Gradients& acc);

struct UpdateConfig {
  double learning_rate = 1e-2;
  double gamma = 0.9;
  double td_clip = 5.0;
};

/// Bootstrap target of the Q-learning update; the max runs over all actions.
double td_target(double reward, std::span<const double> next_q, bool terminal,
                 double gamma);

struct TrainingSample {
  std::vector<double> input;
  int action = 0;
  double reward = 0.0;
  std::vector<double> next_input;
  bool terminal = false;
};

/// One SGD step on the mean squared TD error with per-sample TD errors
/// clipped to [-td_clip, +td_clip]; the bootstrap target is treated as a
/// constant. Returns the pre-update mean clipped-squared error.
double update_batch(QNetwork& net, std::span<const TrainingSample> batch,
                    const UpdateConfig& cfg);

/// Analytic vs central-finite-difference gradient of output[action] over all
/// parameters; returns the maximum relative error. Meant for small nets.
double grad_check(const QNetwork& net, std::span<const double> input,
                  int action, double h = 1e-5);

void save_qnet(const QNetwork& net, const std::string& path);
QNetwork load_qnet(const std::string& path);

std::string qnet_to_bytes(const QNetwork& net);
QNetwork qnet_from_bytes(const std::string& bytes);

}  // namespace treerl
