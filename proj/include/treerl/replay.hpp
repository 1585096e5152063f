#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "treerl/mdp.hpp"
#include "treerl/rng.hpp"

namespace treerl {

/// Ring buffer of transitions with strictly oldest-first eviction and
/// seeded uniform sampling (with replacement).
class ReplayMemory {
 public:
  ReplayMemory(std::size_t capacity, std::uint64_t seed)
      : capacity_(capacity), rng_(seed) {
    if (capacity == 0) throw std::invalid_argument("capacity must be >= 1");
  }

  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }

  void push(Transition t) {
    if (data_.size() < capacity_) {
      data_.push_back(std::move(t));
    } else {
      data_[next_] = std::move(t);
      next_ = (next_ + 1) % capacity_;
    }
  }

  std::vector<Transition> sample(std::size_t k) {
    if (data_.empty()) throw std::logic_error("sampling from empty replay memory");
    std::vector<Transition> out;
    out.reserve(k);
    for (std::size_t i = 0; i < k; ++i)
      out.push_back(data_[static_cast<std::size_t>(rng_.uniform_int(data_.size()))]);
    return out;
  }

  const Transition& at(std::size_t i) const { return data_[i]; }

 private:
  std::size_t capacity_;
  std::vector<Transition> data_;
  std::size_t next_ = 0;  // oldest slot once the ring is full
  Rng rng_;
};

}  // namespace treerl
