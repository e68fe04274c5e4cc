#include "uavcov/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uavcov/errors.hpp"
#include "uavcov/kernels.hpp"

namespace uavcov {

namespace {

// Primary cost with the number of fixed-wing legs as tie-breaker. Costs are
// sums of doubles, so "equal" means equal up to a relative tolerance.
struct LexCost {
  double cost = kInfinity;
  int fixed_wing = 0;
};

bool lex_less(const LexCost& a, const LexCost& b) {
  if (a.cost == kInfinity) return false;
  if (b.cost == kInfinity) return true;
  const double tol = 1e-9 * std::max(1.0, std::abs(b.cost));
  if (a.cost < b.cost - tol) return true;
  if (a.cost > b.cost + tol) return false;
  if (a.fixed_wing != b.fixed_wing) return a.fixed_wing < b.fixed_wing;
  return a.cost < b.cost;
}

class ExactSearch {
 public:
  explicit ExactSearch(const ClusteredGraph& g)
      : g_(g),
        n_(g.num_vertices()),
        width_(g.cluster_size(1)),
        cells_(g.num_cells()),
        costs_(g.costs()),
        layers_(cells_ + 1, std::vector<double>(width_)),
        used_(cells_ + 1, false) {}

  std::vector<std::size_t> run() {
    std::vector<double> start(1, 0.0);
    descend(0, ClusteredGraph::kDepot, start);
    return best_order_;
  }

  double best_cost() const { return best_; }

 private:
  void descend(std::size_t depth, std::size_t last, std::span<const double> dp) {
    if (depth == cells_) {
      const std::size_t base = g_.cluster_begin(last);
      double close = kInfinity;
      for (std::size_t v = 0; v < dp.size(); ++v) {
        close = std::min(close, dp[v] + costs_[(base + v) * n_ + ClusteredGraph::kDepot]);
      }
      if (close < best_) {
        best_ = close;
        best_order_ = order_;
      }
      return;
    }
    // Edge costs are non-negative, so a prefix can only get more expensive.
    if (*std::min_element(dp.begin(), dp.end()) >= best_) return;

    const std::size_t from = g_.cluster_begin(last);
    for (std::size_t c = 1; c <= cells_; ++c) {
      if (used_[c]) continue;
      std::vector<double>& next = layers_[depth];
      std::fill(next.begin(), next.end(), kInfinity);
      kernels::relax(dp, costs_.data() + from * n_ + g_.cluster_begin(c), n_, next);
      used_[c] = true;
      order_.push_back(c);
      descend(depth + 1, c, next);
      order_.pop_back();
      used_[c] = false;
    }
  }

  const ClusteredGraph& g_;
  std::size_t n_;
  std::size_t width_;
  std::size_t cells_;
  std::span<const double> costs_;
  std::vector<std::vector<double>> layers_;
  std::vector<bool> used_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> best_order_;
  double best_ = kInfinity;
};

}  // namespace

std::string_view to_string(SolverMode mode) {
  switch (mode) {
    case SolverMode::Fast: return "fast";
    case SolverMode::Default: return "default";
    case SolverMode::Slow: return "slow";
  }
  return "default";
}

std::optional<SolverMode> solver_mode_from_string(std::string_view name) {
  for (SolverMode m : {SolverMode::Fast, SolverMode::Default, SolverMode::Slow}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

void check_tour_structure(const ClusteredGraph& g, const GtspTour& tour) {
  if (tour.vertices.size() != g.num_clusters()) {
    throw ContractViolation("tour must visit exactly one vertex per cluster");
  }
  if (tour.vertices.front() != ClusteredGraph::kDepot) {
    throw ContractViolation("tour must start at the depot");
  }
  std::vector<bool> seen(g.num_clusters(), false);
  for (std::size_t v : tour.vertices) {
    if (v >= g.num_vertices()) throw ContractViolation("tour vertex out of range");
    const std::size_t c = g.cluster_of(v);
    if (seen[c]) throw ContractViolation("tour visits a cluster twice");
    seen[c] = true;
  }
}

double tour_cost(const ClusteredGraph& g, const GtspTour& tour) {
  check_tour_structure(g, tour);
  double total = 0.0;
  const std::size_t m = tour.vertices.size();
  for (std::size_t i = 0; i < m; ++i) {
    total += g.cost(tour.vertices[i], tour.vertices[(i + 1) % m]);
  }
  return total;
}

std::vector<std::size_t> cluster_order(const ClusteredGraph& g, const GtspTour& tour) {
  std::vector<std::size_t> order;
  order.reserve(tour.vertices.size());
  for (std::size_t i = 1; i < tour.vertices.size(); ++i) {
    order.push_back(g.cluster_of(tour.vertices[i]));
  }
  return order;
}

GtspTour optimize_vertices(const ClusteredGraph& g, std::span<const std::size_t> order) {
  const std::size_t layers = order.size();
  if (layers != g.num_cells()) throw ContractViolation("order must list every cell cluster once");
  {
    std::vector<bool> seen(g.num_clusters(), false);
    for (std::size_t c : order) {
      if (c == 0 || c >= g.num_clusters() || seen[c]) {
        throw ContractViolation("order must be a permutation of cell clusters");
      }
      seen[c] = true;
    }
  }

  const std::size_t width = g.cluster_size(1);
  std::vector<LexCost> cur(width), next(width);
  std::vector<std::size_t> arg(layers * width, 0);

  const std::size_t first = g.cluster_begin(order[0]);
  for (std::size_t v = 0; v < width; ++v) {
    cur[v] = {g.cost(ClusteredGraph::kDepot, first + v), 0};
  }
  for (std::size_t l = 1; l < layers; ++l) {
    const std::size_t from = g.cluster_begin(order[l - 1]);
    const std::size_t to = g.cluster_begin(order[l]);
    for (std::size_t v = 0; v < width; ++v) {
      LexCost best;
      for (std::size_t u = 0; u < width; ++u) {
        if (cur[u].cost == kInfinity) continue;
        const double w = g.cost(from + u, to + v);
        if (w == kInfinity) continue;
        const LexCost cand{cur[u].cost + w,
                           cur[u].fixed_wing + (g.uses_fixed_wing(from + u, to + v) ? 1 : 0)};
        if (lex_less(cand, best)) {
          best = cand;
          arg[l * width + v] = u;
        }
      }
      next[v] = best;
    }
    std::swap(cur, next);
  }

  const std::size_t last = g.cluster_begin(order[layers - 1]);
  LexCost best;
  std::size_t best_v = 0;
  for (std::size_t v = 0; v < width; ++v) {
    const double w = g.cost(last + v, ClusteredGraph::kDepot);
    if (cur[v].cost == kInfinity || w == kInfinity) continue;
    const LexCost cand{cur[v].cost + w,
                       cur[v].fixed_wing +
                           (g.uses_fixed_wing(last + v, ClusteredGraph::kDepot) ? 1 : 0)};
    if (lex_less(cand, best)) {
      best = cand;
      best_v = v;
    }
  }

  GtspTour tour;
  tour.vertices.assign(layers + 1, ClusteredGraph::kDepot);
  if (best.cost == kInfinity) {
    for (std::size_t l = 0; l < layers; ++l) tour.vertices[l + 1] = g.cluster_begin(order[l]);
    tour.cost = kInfinity;
    return tour;
  }
  std::size_t local = best_v;
  for (std::size_t l = layers; l-- > 0;) {
    tour.vertices[l + 1] = g.cluster_begin(order[l]) + local;
    if (l > 0) local = arg[l * width + local];
  }
  tour.cost = tour_cost(g, tour);
  return tour;
}

GtspTour solve_exact(const ClusteredGraph& g, std::size_t max_cells) {
  if (g.num_cells() > max_cells) {
    throw InstanceTooLarge("exact solver handles at most " + std::to_string(max_cells) +
                           " cells; instance has " + std::to_string(g.num_cells()));
  }
  ExactSearch search(g);
  const std::vector<std::size_t> order = search.run();
  if (search.best_cost() == kInfinity) throw Infeasible("no finite tour exists");
  return optimize_vertices(g, order);
}

}  // namespace uavcov
