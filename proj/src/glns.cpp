#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "layered_dp.hpp"
#include "rng.hpp"
#include "uavcov/errors.hpp"
#include "uavcov/solver.hpp"

namespace uavcov {

namespace {

using Clock = std::chrono::steady_clock;
using Order = std::vector<std::size_t>;

using detail::Rng;

enum class Removal { Distance, Segment, Worst };
enum class Insertion { Cheapest, Nearest, Random, NoisyCheapest, Exact };

constexpr std::array kRemovals{Removal::Distance, Removal::Segment, Removal::Worst};
constexpr std::array kInsertions{Insertion::Cheapest, Insertion::Nearest, Insertion::Random,
                                 Insertion::NoisyCheapest, Insertion::Exact};

constexpr int kWeightPeriod = 50;
constexpr double kReaction = 0.2;
constexpr double kMinWeight = 0.05;
constexpr double kScoreBest = 3.0;
constexpr double kScoreImproved = 2.0;
constexpr double kScoreAccepted = 1.0;

struct Operator {
  double weight = 1.0;
  double score = 0.0;
  int uses = 0;
};

template <std::size_t K>
std::size_t roulette(const std::array<Operator, K>& ops, Rng& rng) {
  double total = 0.0;
  for (const auto& op : ops) total += op.weight;
  double pick = rng.uniform() * total;
  for (std::size_t i = 0; i < K; ++i) {
    pick -= ops[i].weight;
    if (pick < 0.0) return i;
  }
  return K - 1;
}

template <std::size_t K>
void update_weights(std::array<Operator, K>& ops) {
  for (auto& op : ops) {
    if (op.uses > 0) {
      op.weight = (1.0 - kReaction) * op.weight + kReaction * op.score / op.uses;
      op.weight = std::max(op.weight, kMinWeight);
    }
    op.score = 0.0;
    op.uses = 0;
  }
}

std::size_t base_iterations(SolverMode mode, std::size_t n) {
  switch (mode) {
    case SolverMode::Fast: return 20 * n + 50;
    case SolverMode::Default: return 60 * n + 200;
    case SolverMode::Slow: return 200 * n + 500;
  }
  return 60 * n + 200;
}

class Glns {
 public:
  Glns(const ClusteredGraph& g, const SolverParams& params)
      : g_(g), params_(params), clusters_(g.num_clusters()) {
    const auto raw = g.costs();
    double max_finite = 0.0;
    for (double c : raw) {
      if (c != kInfinity) max_finite = std::max(max_finite, c);
    }
    penalty_ = (max_finite + 1.0) * static_cast<double>(g.num_cells() + 2);
    penalized_.assign(raw.begin(), raw.end());
    for (double& c : penalized_) {
      if (c == kInfinity) c = penalty_;
    }

    // Cheapest edge between any two vertices of two clusters.
    const std::size_t n = g.num_vertices();
    near_.assign(clusters_ * clusters_, kInfinity);
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t cu = g.cluster_of(u);
      for (std::size_t v = 0; v < n; ++v) {
        const std::size_t cv = g.cluster_of(v);
        if (cu == cv) continue;
        double& slot = near_[cu * clusters_ + cv];
        slot = std::min(slot, penalized_[u * n + v]);
      }
    }
    for (std::size_t a = 0; a < clusters_; ++a) near_[a * clusters_ + a] = 0.0;
  }

  GtspTour run() {
    const auto start = Clock::now();
    const auto deadline = start + std::chrono::duration_cast<Clock::duration>(
                                      std::chrono::duration<double>(params_.time_budget));
    const std::size_t n = g_.num_cells();
    const std::size_t iterations = params_.iterations.value_or(base_iterations(params_.mode, n));
    const std::size_t stall_limit = std::max<std::size_t>(100, iterations / 3);
    const int restarts = std::max(1, params_.restarts);

    detail::LayeredDp dp(g_, penalized_);
    Order best_order;
    double best_cost = kInfinity;

    for (int r = 0; r < restarts; ++r) {
      if (r > 0 && Clock::now() >= deadline) break;
      Rng rng(params_.rng_seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(r));

      Order current;
      std::vector<std::size_t> pending(n);
      std::iota(pending.begin(), pending.end(), std::size_t{1});
      insert(current, pending, r == 0 ? Insertion::Cheapest : Insertion::NoisyCheapest, rng);
      double current_cost = dp.solve(current).cost;
      Order local_best = current;
      double local_best_cost = current_cost;

      std::array<Operator, kRemovals.size()> removals{};
      std::array<Operator, kInsertions.size()> insertions{};
      double temperature = 0.05 * std::max(current_cost, 1e-9) / std::log(2.0);
      std::size_t since_best = 0;

      for (std::size_t it = 0; it < iterations; ++it) {
        if (Clock::now() >= deadline) break;
        if (since_best >= stall_limit) {
          current.clear();
          std::vector<std::size_t> all(n);
          std::iota(all.begin(), all.end(), std::size_t{1});
          insert_exact(current, all, dp, rng);
          current_cost = dp.solve(current).cost;
          temperature = 0.05 * std::max(current_cost, 1e-9) / std::log(2.0);
          since_best = 0;
        }
        const std::size_t ri = roulette(removals, rng);
        const std::size_t ii = roulette(insertions, rng);

        Order trial = current;
        const std::size_t max_k = std::max<std::size_t>(
            1, static_cast<std::size_t>(params_.max_removal_fraction * static_cast<double>(n)));
        const std::size_t k = 1 + rng.below(max_k);
        std::vector<std::size_t> removed = remove(trial, kRemovals[ri], k, rng);
        if (kInsertions[ii] == Insertion::Exact) {
          insert_exact(trial, removed, dp, rng);
        } else {
          insert(trial, removed, kInsertions[ii], rng);
        }
        const double trial_cost = dp.solve(trial).cost;

        double score = 0.0;
        if (trial_cost < local_best_cost) {
          score = kScoreBest;
        } else if (trial_cost < current_cost) {
          score = kScoreImproved;
        }
        bool accept = trial_cost < current_cost;
        if (!accept && temperature > 0.0) {
          accept = rng.uniform() < std::exp(-(trial_cost - current_cost) / temperature);
          if (accept && score == 0.0 && trial_cost != current_cost) score = kScoreAccepted;
        }
        if (accept) {
          current = std::move(trial);
          current_cost = trial_cost;
        }
        if (current_cost < local_best_cost) {
          local_best = current;
          local_best_cost = current_cost;
          since_best = 0;
        } else {
          ++since_best;
        }

        removals[ri].score += score;
        ++removals[ri].uses;
        insertions[ii].score += score;
        ++insertions[ii].uses;
        if ((it + 1) % kWeightPeriod == 0) {
          update_weights(removals);
          update_weights(insertions);
        }
        temperature *= params_.cooling_rate;
      }

      local_best_cost = relocate_descent(local_best, local_best_cost, dp);
      if (local_best_cost < best_cost) {
        best_cost = local_best_cost;
        best_order = local_best;
      }
    }

    if (best_cost >= penalty_) throw NoFeasibleTour("search found no tour with finite cost");
    GtspTour tour = optimize_vertices(g_, best_order);
    if (tour.cost == kInfinity) throw NoFeasibleTour("search found no tour with finite cost");
    return tour;
  }

 private:
  double near(std::size_t a, std::size_t b) const { return near_[a * clusters_ + b]; }
  double spread(std::size_t a, std::size_t b) const { return std::min(near(a, b), near(b, a)); }

  std::size_t before(const Order& t, std::size_t pos) const {
    return pos == 0 ? ClusteredGraph::kDepot : t[pos - 1];
  }
  std::size_t after(const Order& t, std::size_t pos) const {
    return pos + 1 >= t.size() ? ClusteredGraph::kDepot : t[pos + 1];
  }

  // Cost increase of placing cluster c at position pos (before t[pos]).
  double insertion_cost(const Order& t, std::size_t pos, std::size_t c) const {
    const std::size_t p = pos == 0 ? ClusteredGraph::kDepot : t[pos - 1];
    const std::size_t q = pos == t.size() ? ClusteredGraph::kDepot : t[pos];
    return near(p, c) + near(c, q) - near(p, q);
  }

  std::pair<std::size_t, double> cheapest_position(const Order& t, std::size_t c) const {
    std::size_t best_pos = 0;
    double best = kInfinity;
    for (std::size_t pos = 0; pos <= t.size(); ++pos) {
      const double d = insertion_cost(t, pos, c);
      if (d < best) {
        best = d;
        best_pos = pos;
      }
    }
    return {best_pos, best};
  }

  // Moves single clusters to their best position until no move helps.
  double relocate_descent(Order& t, double cost, detail::LayeredDp& dp) const {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < t.size(); ++i) {
        Order rest = t;
        const std::size_t c = rest[i];
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        dp.prepare(rest);
        for (std::size_t pos = 0; pos <= rest.size(); ++pos) {
          if (pos == i || dp.insertion_cost(pos, c) >= cost) continue;
          Order moved = rest;
          moved.insert(moved.begin() + static_cast<std::ptrdiff_t>(pos), c);
          const double moved_cost = dp.solve(moved).cost;
          if (moved_cost < cost) {
            t = std::move(moved);
            cost = moved_cost;
            improved = true;
            break;
          }
        }
      }
    }
    return cost;
  }

  // Random order, each cluster placed where the true cycle cost is lowest.
  void insert_exact(Order& t, std::vector<std::size_t> pending, detail::LayeredDp& dp,
                    Rng& rng) const {
    rng.shuffle(pending);
    for (std::size_t c : pending) {
      dp.prepare(t);
      std::size_t best_pos = 0;
      double best = kInfinity;
      for (std::size_t pos = 0; pos <= t.size(); ++pos) {
        const double d = dp.insertion_cost(pos, c);
        if (d < best) {
          best = d;
          best_pos = pos;
        }
      }
      t.insert(t.begin() + static_cast<std::ptrdiff_t>(best_pos), c);
    }
  }

  void insert(Order& t, std::vector<std::size_t> pending, Insertion how, Rng& rng) const {
    if (how == Insertion::Random) {
      rng.shuffle(pending);
      for (std::size_t c : pending) {
        const auto [pos, unused] = cheapest_position(t, c);
        t.insert(t.begin() + static_cast<std::ptrdiff_t>(pos), c);
      }
      return;
    }
    while (!pending.empty()) {
      std::size_t pick = 0;
      std::size_t pick_pos = 0;
      if (how == Insertion::Nearest) {
        double closest = kInfinity;
        for (std::size_t i = 0; i < pending.size(); ++i) {
          double d = spread(ClusteredGraph::kDepot, pending[i]);
          for (std::size_t c : t) d = std::min(d, spread(c, pending[i]));
          if (d < closest) {
            closest = d;
            pick = i;
          }
        }
        pick_pos = cheapest_position(t, pending[pick]).first;
      } else {
        double best = kInfinity;
        for (std::size_t i = 0; i < pending.size(); ++i) {
          for (std::size_t pos = 0; pos <= t.size(); ++pos) {
            double d = insertion_cost(t, pos, pending[i]);
            if (how == Insertion::NoisyCheapest) d *= rng.uniform(0.75, 1.25);
            if (d < best) {
              best = d;
              pick = i;
              pick_pos = pos;
            }
          }
        }
      }
      t.insert(t.begin() + static_cast<std::ptrdiff_t>(pick_pos), pending[pick]);
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(pick));
    }
  }

  std::vector<std::size_t> remove(Order& t, Removal how, std::size_t k, Rng& rng) const {
    k = std::min(k, t.size());
    std::vector<std::size_t> removed;
    removed.reserve(k);
    switch (how) {
      case Removal::Segment: {
        const std::size_t start = rng.below(t.size());
        std::vector<bool> drop(t.size(), false);
        for (std::size_t i = 0; i < k; ++i) drop[(start + i) % t.size()] = true;
        Order kept;
        for (std::size_t i = 0; i < t.size(); ++i) {
          (drop[i] ? removed : kept).push_back(t[i]);
        }
        t = std::move(kept);
        break;
      }
      case Removal::Distance: {
        const std::size_t seed = t[rng.below(t.size())];
        Order by_distance = t;
        std::stable_sort(by_distance.begin(), by_distance.end(),
                         [&](std::size_t a, std::size_t b) {
                           const double da = a == seed ? -1.0 : spread(seed, a);
                           const double db = b == seed ? -1.0 : spread(seed, b);
                           return da < db;
                         });
        removed.assign(by_distance.begin(), by_distance.begin() + static_cast<std::ptrdiff_t>(k));
        std::erase_if(t, [&](std::size_t c) {
          return std::find(removed.begin(), removed.end(), c) != removed.end();
        });
        break;
      }
      case Removal::Worst: {
        for (std::size_t i = 0; i < k; ++i) {
          std::size_t worst = 0;
          double gain = -kInfinity;
          for (std::size_t pos = 0; pos < t.size(); ++pos) {
            const std::size_t p = before(t, pos);
            const std::size_t q = after(t, pos);
            const double d = near(p, t[pos]) + near(t[pos], q) - near(p, q);
            if (d > gain) {
              gain = d;
              worst = pos;
            }
          }
          removed.push_back(t[worst]);
          t.erase(t.begin() + static_cast<std::ptrdiff_t>(worst));
        }
        break;
      }
    }
    return removed;
  }

  const ClusteredGraph& g_;
  const SolverParams& params_;
  std::size_t clusters_;
  double penalty_ = 0.0;
  std::vector<double> penalized_;
  std::vector<double> near_;
};

}  // namespace

GtspTour solve_glns(const ClusteredGraph& g, const SolverParams& params) {
  if (params.time_budget <= 0.0) throw ContractViolation("time budget must be positive");
  if (params.cooling_rate <= 0.0 || params.cooling_rate > 1.0) {
    throw ContractViolation("cooling rate must lie in (0, 1]");
  }
  if (params.max_removal_fraction <= 0.0 || params.max_removal_fraction > 1.0) {
    throw ContractViolation("removal fraction must lie in (0, 1]");
  }
  return Glns(g, params).run();
}

}  // namespace uavcov
