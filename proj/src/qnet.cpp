#include "treerl/qnet.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "treerl/io_util.hpp"
#include "treerl/rng.hpp"

namespace treerl {

QNetwork make_qnet(const std::vector<int>& dims, std::uint64_t seed) {
  if (dims.size() < 2) throw std::invalid_argument("need >= 2 layer dims");
  for (int d : dims)
    if (d < 1) throw std::invalid_argument("layer dims must be positive");

  QNetwork net;
  net.dims = dims;
  Rng rng(seed);
  for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
    const int in = dims[l];
    const int out = dims[l + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(in));
    std::vector<double> w(static_cast<std::size_t>(out) * in);
    for (double& v : w) v = rng.uniform(-bound, bound);
    net.weights.push_back(std::move(w));
    net.biases.emplace_back(static_cast<std::size_t>(out), 0.0);
  }
  return net;
}

namespace {

void affine(const std::vector<double>& w, const std::vector<double>& b,
            std::span<const double> in, std::vector<double>& out) {
  const std::size_t rows = b.size();
  const std::size_t cols = in.size();
  out.assign(rows, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* wr = w.data() + r * cols;
    double acc = b[r];
    for (std::size_t c = 0; c < cols; ++c) acc += wr[c] * in[c];
    out[r] = acc;
  }
}

}  // namespace

std::vector<double> forward_trace(const QNetwork& net,
                                  std::span<const double> input,
                                  ForwardTrace& trace) {
  if (static_cast<int>(input.size()) != net.input_dim())
    throw std::invalid_argument("input length " + std::to_string(input.size()) +
                                " != network input dim " +
                                std::to_string(net.input_dim()));
  trace.activations.assign(net.layer_count() + 1, {});
  trace.activations[0].assign(input.begin(), input.end());
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    affine(net.weights[l], net.biases[l], trace.activations[l],
           trace.activations[l + 1]);
    if (l + 1 < net.layer_count()) {
      for (double& v : trace.activations[l + 1]) v = std::max(v, 0.0);
    }
  }
  return trace.activations.back();
}

std::vector<double> forward(const QNetwork& net, std::span<const double> input) {
  ForwardTrace trace;
  return forward_trace(net, input, trace);
}

Gradients make_zero_gradients(const QNetwork& net) {
  Gradients g;
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    g.weights.emplace_back(net.weights[l].size(), 0.0);
    g.biases.emplace_back(net.biases[l].size(), 0.0);
  }
  return g;
}

void backward_action(const QNetwork& net, const ForwardTrace& trace,
                     int action, double coeff, Gradients& acc) {
  if (action < 0 || action >= net.output_dim())
    throw std::invalid_argument("action index out of range");

  std::vector<double> delta(static_cast<std::size_t>(net.output_dim()), 0.0);
  delta[static_cast<std::size_t>(action)] = coeff;

  for (std::size_t l = net.layer_count(); l-- > 0;) {
    const auto& a_in = trace.activations[l];
    const std::size_t rows = net.biases[l].size();
    const std::size_t cols = a_in.size();
    auto& gw = acc.weights[l];
    auto& gb = acc.biases[l];
    std::vector<double> delta_prev(cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      const double d = delta[r];
      if (d == 0.0) continue;
      gb[r] += d;
      const double* wr = net.weights[l].data() + r * cols;
      double* gwr = gw.data() + r * cols;
      for (std::size_t c = 0; c < cols; ++c) {
        gwr[c] += d * a_in[c];
        delta_prev[c] += d * wr[c];
      }
    }
    if (l > 0) {
      // ReLU mask: the stored activation is already rectified.
      for (std::size_t c = 0; c < cols; ++c)
        if (a_in[c] <= 0.0) delta_prev[c] = 0.0;
      delta = std::move(delta_prev);
    }
  }
}

double td_target(double reward, std::span<const double> next_q, bool terminal,
                 double gamma) {
  if (terminal) return reward;
  double best = next_q[0];
  for (double v : next_q) best = std::max(best, v);
  return reward + gamma * best;
}

double update_batch(QNetwork& net, std::span<const TrainingSample> batch,
                    const UpdateConfig& cfg) {
  if (batch.empty()) throw std::invalid_argument("empty batch");
  Gradients grad = make_zero_gradients(net);
  ForwardTrace trace;
  double loss = 0.0;
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  for (const auto& s : batch) {
    const auto q = forward_trace(net, s.input, trace);
    double target = s.reward;
    if (!s.terminal) {
      const auto next_q = forward(net, s.next_input);
      target = td_target(s.reward, next_q, false, cfg.gamma);
    }
    const double err = target - q[static_cast<std::size_t>(s.action)];
    const double clipped = std::clamp(err, -cfg.td_clip, cfg.td_clip);
    loss += clipped * clipped;
    backward_action(net, trace, s.action, -2.0 * clipped * inv_b, grad);
  }
  loss *= inv_b;

  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    for (std::size_t i = 0; i < net.weights[l].size(); ++i) {
      const double g = grad.weights[l][i];
      if (!std::isfinite(g)) throw std::runtime_error("non-finite gradient");
      net.weights[l][i] -= cfg.learning_rate * g;
    }
    for (std::size_t i = 0; i < net.biases[l].size(); ++i) {
      const double g = grad.biases[l][i];
      if (!std::isfinite(g)) throw std::runtime_error("non-finite gradient");
      net.biases[l][i] -= cfg.learning_rate * g;
    }
  }
  return loss;
}

double grad_check(const QNetwork& net, std::span<const double> input,
                  int action, double h) {
  ForwardTrace trace;
  forward_trace(net, input, trace);
  Gradients analytic = make_zero_gradients(net);
  backward_action(net, trace, action, 1.0, analytic);

  QNetwork probe = net;
  double max_rel = 0.0;
  auto check_param = [&](double& param, double grad) {
    const double saved = param;
    param = saved + h;
    const double hi = forward(probe, input)[static_cast<std::size_t>(action)];
    param = saved - h;
    const double lo = forward(probe, input)[static_cast<std::size_t>(action)];
    param = saved;
    const double numeric = (hi - lo) / (2.0 * h);
    const double denom = std::max(1e-8, std::abs(grad) + std::abs(numeric));
    max_rel = std::max(max_rel, std::abs(grad - numeric) / denom);
  };
  for (std::size_t l = 0; l < probe.layer_count(); ++l) {
    for (std::size_t i = 0; i < probe.weights[l].size(); ++i)
      check_param(probe.weights[l][i], analytic.weights[l][i]);
    for (std::size_t i = 0; i < probe.biases[l].size(); ++i)
      check_param(probe.biases[l][i], analytic.biases[l][i]);
  }
  return max_rel;
}

namespace {

constexpr char kMagic[4] = {'T', 'R', 'L', 'Q'};
constexpr std::uint8_t kVersion = 1;

void put_i32(std::string& out, std::int32_t v) {
  for (int i = 0; i < 4; ++i)
    out.push_back(static_cast<char>((static_cast<std::uint32_t>(v) >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, sizeof(bits));
  for (int i = 0; i < 8; ++i)
    out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::int32_t i32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes_[pos_++])) << (8 * i);
    return static_cast<std::int32_t>(v);
  }
  double f64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes_[pos_++])) << (8 * i);
    double d;
    std::memcpy(&d, &v, sizeof(d));
    return d;
  }
  bool exhausted() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) {
    if (pos_ + n > bytes_.size())
      throw std::runtime_error("checkpoint truncated");
  }
  const std::string& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string qnet_to_bytes(const QNetwork& net) {
  std::string out;
  out.append(kMagic, 4);
  out.push_back(static_cast<char>(kVersion));
  put_i32(out, static_cast<std::int32_t>(net.dims.size()));
  for (int d : net.dims) put_i32(out, d);
  for (std::size_t l = 0; l < net.layer_count(); ++l) {
    for (double v : net.weights[l]) put_f64(out, v);
    for (double v : net.biases[l]) put_f64(out, v);
  }
  return out;
}

QNetwork qnet_from_bytes(const std::string& bytes) {
  if (bytes.size() < 5 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw std::runtime_error("checkpoint magic mismatch");
  Reader r(bytes);
  r.u8();
  r.u8();
  r.u8();
  r.u8();  // magic, already checked
  if (r.u8() != kVersion) throw std::runtime_error("unsupported checkpoint version");
  const std::int32_t layers = r.i32();
  if (layers < 2 || layers > 64)
    throw std::runtime_error("checkpoint layer count implausible");
  QNetwork net;
  for (std::int32_t i = 0; i < layers; ++i) {
    const std::int32_t d = r.i32();
    if (d < 1) throw std::runtime_error("checkpoint dimension invalid");
    net.dims.push_back(d);
  }
  for (std::size_t l = 0; l + 1 < net.dims.size(); ++l) {
    const std::size_t in = static_cast<std::size_t>(net.dims[l]);
    const std::size_t out = static_cast<std::size_t>(net.dims[l + 1]);
    std::vector<double> w(in * out);
    for (double& v : w) v = r.f64();
    std::vector<double> b(out);
    for (double& v : b) v = r.f64();
    net.weights.push_back(std::move(w));
    net.biases.push_back(std::move(b));
  }
  if (!r.exhausted())
    throw std::runtime_error("checkpoint payload longer than header declares");
  return net;
}

void save_qnet(const QNetwork& net, const std::string& path) {
  write_file_atomic(path, qnet_to_bytes(net));
}

QNetwork load_qnet(const std::string& path) {
  return qnet_from_bytes(read_file(path));
}

}  // namespace treerl
