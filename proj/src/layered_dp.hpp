#pragma once

// Layered dynamic program over a fixed cluster order, shared by the exact and
// heuristic solvers. Works on any N x N row-major matrix laid out like
// ClusteredGraph::costs().

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "uavcov/graph.hpp"
#include "uavcov/kernels.hpp"

namespace uavcov::detail {

struct DpResult {
  double cost = kInfinity;
  std::vector<std::size_t> vertices;  // depot first
};

class LayeredDp {
 public:
  LayeredDp(const ClusteredGraph& g, std::span<const double> matrix)
      : g_(g), m_(matrix), n_(g.num_vertices()), width_(g.cluster_size(1)) {}

  /// Cheapest depot -> order[0] -> ... -> order.back() -> depot cycle.
  DpResult solve(std::span<const std::size_t> order) {
    DpResult res;
    const std::size_t layers = order.size();
    res.vertices.assign(layers + 1, ClusteredGraph::kDepot);
    if (layers == 0) return res;
    arg_.resize(layers * width_);
    cur_.resize(width_);
    next_.resize(width_);

    const std::size_t first = g_.cluster_begin(order[0]);
    for (std::size_t v = 0; v < width_; ++v) cur_[v] = m_[ClusteredGraph::kDepot * n_ + first + v];

    for (std::size_t l = 1; l < layers; ++l) {
      std::fill(next_.begin(), next_.end(), kInfinity);
      const std::size_t from = g_.cluster_begin(order[l - 1]);
      const std::size_t to = g_.cluster_begin(order[l]);
      kernels::relax_arg(cur_, m_.data() + from * n_ + to, n_, next_,
                         std::span<std::int32_t>(arg_.data() + l * width_, width_));
      std::swap(cur_, next_);
    }

    const std::size_t last = g_.cluster_begin(order[layers - 1]);
    std::size_t best_v = 0;
    for (std::size_t v = 0; v < width_; ++v) {
      const double c = cur_[v] + m_[(last + v) * n_ + ClusteredGraph::kDepot];
      if (c < res.cost) {
        res.cost = c;
        best_v = v;
      }
    }
    if (res.cost == kInfinity) return res;

    std::size_t local = best_v;
    for (std::size_t l = layers; l-- > 0;) {
      res.vertices[l + 1] = g_.cluster_begin(order[l]) + local;
      if (l > 0) local = static_cast<std::size_t>(arg_[l * width_ + local]);
    }
    return res;
  }

  /// Caches prefix and suffix costs of `order` for insertion_cost().
  void prepare(std::span<const std::size_t> order) {
    order_.assign(order.begin(), order.end());
    const std::size_t layers = order_.size();
    fwd_.assign(layers * width_, kInfinity);
    bwd_.assign(layers * width_, kInfinity);
    if (layers == 0) return;
    const std::size_t first = g_.cluster_begin(order_[0]);
    for (std::size_t v = 0; v < width_; ++v) fwd_[v] = m_[ClusteredGraph::kDepot * n_ + first + v];
    for (std::size_t l = 1; l < layers; ++l) {
      const std::size_t from = g_.cluster_begin(order_[l - 1]);
      const std::size_t to = g_.cluster_begin(order_[l]);
      kernels::relax(std::span<const double>(fwd_.data() + (l - 1) * width_, width_),
                     m_.data() + from * n_ + to, n_,
                     std::span<double>(fwd_.data() + l * width_, width_));
    }
    const std::size_t last = g_.cluster_begin(order_[layers - 1]);
    for (std::size_t v = 0; v < width_; ++v) {
      bwd_[(layers - 1) * width_ + v] = m_[(last + v) * n_ + ClusteredGraph::kDepot];
    }
    for (std::size_t l = layers - 1; l-- > 0;) {
      const std::size_t from = g_.cluster_begin(order_[l]);
      const std::size_t to = g_.cluster_begin(order_[l + 1]);
      suffix(from, to, bwd_.data() + (l + 1) * width_, bwd_.data() + l * width_);
    }
  }

  /// Cycle cost after placing cluster c before position pos of the prepared order.
  double insertion_cost(std::size_t pos, std::size_t c) {
    const std::size_t layers = order_.size();
    const std::size_t base = g_.cluster_begin(c);
    cur_.resize(width_);
    next_.resize(width_);
    if (pos == 0) {
      for (std::size_t v = 0; v < width_; ++v) cur_[v] = m_[ClusteredGraph::kDepot * n_ + base + v];
    } else {
      std::fill(cur_.begin(), cur_.end(), kInfinity);
      kernels::relax(std::span<const double>(fwd_.data() + (pos - 1) * width_, width_),
                     m_.data() + g_.cluster_begin(order_[pos - 1]) * n_ + base, n_, cur_);
    }
    if (pos == layers) {
      for (std::size_t v = 0; v < width_; ++v) next_[v] = m_[(base + v) * n_ + ClusteredGraph::kDepot];
    } else {
      suffix(base, g_.cluster_begin(order_[pos]), bwd_.data() + pos * width_, next_.data());
    }
    double best = kInfinity;
    for (std::size_t v = 0; v < width_; ++v) best = std::min(best, cur_[v] + next_[v]);
    return best;
  }

 private:
  void suffix(std::size_t from, std::size_t to, const double* tail, double* out) const {
    for (std::size_t v = 0; v < width_; ++v) {
      const double* row = m_.data() + (from + v) * n_ + to;
      double best = kInfinity;
      for (std::size_t w = 0; w < width_; ++w) best = std::min(best, row[w] + tail[w]);
      out[v] = best;
    }
  }

  const ClusteredGraph& g_;
  std::span<const double> m_;
  std::size_t n_;
  std::size_t width_;
  std::vector<double> cur_, next_;
  std::vector<std::int32_t> arg_;
  std::vector<std::size_t> order_;
  std::vector<double> fwd_, bwd_;
};

}  // namespace uavcov::detail
