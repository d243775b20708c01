#include "mocover/solver.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <string>
#include <thread>

namespace mocover {
namespace {

enum class Selection { Gradient, Sampling, Combined };

struct BoxSamples {
  std::vector<Vector> values;  // f~ at the feasible sample points
  std::vector<CellKey> hits;   // occupied cells reached by the images
  bool any_feasible = false;
};

unsigned worker_count(const SolverConfig& cfg, std::size_t work) {
  unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);
  const auto cap = static_cast<unsigned>(std::max<std::size_t>(1, work / 64));
  return std::min(threads, cap);
}

// Runs body(i, counter) for i in [0, count); counters are summed afterwards.
template <class Body>
EvalCounter parallel_for(std::size_t count, unsigned threads, Body body) {
  if (threads <= 1) {
    EvalCounter counter;
    for (std::size_t i = 0; i < count; ++i) body(i, counter);
    return counter;
  }
  std::atomic<std::size_t> next{0};
  std::vector<EvalCounter> counters(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        constexpr std::size_t kChunk = 16;
        for (;;) {
          const std::size_t begin = next.fetch_add(kChunk);
          if (begin >= count) break;
          const std::size_t end = std::min(count, begin + kChunk);
          for (std::size_t i = begin; i < end; ++i) body(i, counters[t]);
        }
      });
    }
  }
  EvalCounter total;
  for (const auto& c : counters) total += c;
  return total;
}

// Points u = y + xi act as dominators, v = y - xi as dominated.
std::vector<bool> dominated_two_objectives(const std::vector<Vector>& values, const Vector& xi) {
  const std::size_t count = values.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> u1(count), u2(count);
  for (std::size_t j = 0; j < count; ++j) {
    u1[j] = values[j][0] + xi[0];
    u2[j] = values[j][1] + xi[1];
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return u1[a] < u1[b]; });
  std::vector<double> sorted_u1(count);
  std::vector<double> prefix_min(count + 1, std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < count; ++r) {
    sorted_u1[r] = u1[order[r]];
    prefix_min[r + 1] = std::min(prefix_min[r], u2[order[r]]);
  }
  std::vector<bool> dominated(count, false);
  for (std::size_t j = 0; j < count; ++j) {
    const double v1 = values[j][0] - xi[0];
    const double v2 = values[j][1] - xi[1];
    const auto strict = static_cast<std::size_t>(
        std::lower_bound(sorted_u1.begin(), sorted_u1.end(), v1) - sorted_u1.begin());
    const auto weak = static_cast<std::size_t>(
        std::upper_bound(sorted_u1.begin(), sorted_u1.end(), v1) - sorted_u1.begin());
    dominated[j] = prefix_min[strict] <= v2 || prefix_min[weak] < v2;
  }
  return dominated;
}

// A dominator has a strictly smaller objective sum (or equal sum and smaller
// lexicographic rank after rounding), so scanning in that order and testing
// against the nondominated points seen so far is enough: confident dominance
// is transitive.
std::vector<bool> dominated_general(const std::vector<Vector>& values, const Vector& xi) {
  const std::size_t count = values.size();
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> sums(count);
  for (std::size_t j = 0; j < count; ++j) sums[j] = values[j].sum();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (sums[a] != sums[b]) return sums[a] < sums[b];
    return std::lexicographical_compare(values[a].begin(), values[a].end(), values[b].begin(),
                                        values[b].end());
  });
  std::vector<bool> dominated(count, false);
  std::vector<std::size_t> front;
  for (const std::size_t j : order) {
    const bool hit = std::any_of(front.begin(), front.end(), [&](std::size_t f) {
      return confidently_dominates(values[f], values[j], xi);
    });
    if (hit) {
      dominated[j] = true;
    } else {
      front.push_back(j);
    }
  }
  return dominated;
}

SolveResult run(const UncertainProblem& input, const HyperBox& region, const SolverConfig& cfg,
                Selection selection) {
  cfg.validate();
  const UncertainProblem problem = cfg.seed ? input.with_seed(*cfg.seed) : input;
  if (region.dim() != problem.n()) {
    throw std::invalid_argument("solver: region dimension does not match the problem");
  }
  const bool uses_gradient = selection != Selection::Sampling;
  if (uses_gradient && !problem.has_gradient()) {
    throw std::invalid_argument("solver: gradient-based selection needs problem gradients");
  }

  SolveResult result{BoxCollection(region), RunReport{}, {}};
  for (int step = 1; step <= cfg.steps; ++step) {
    const BoxCollection candidates = result.covering.subdivide();
    std::vector<BoxSamples> samples(candidates.size());

    const EvalCounter counter = parallel_for(
        candidates.size(), worker_count(cfg, candidates.size()),
        [&](std::size_t i, EvalCounter& local) {
          BoxSamples& box = samples[i];
          for (const Vector& x : sample_points(candidates.cell_box(i), cfg.points_per_axis)) {
            if (cfg.feasibility && !cfg.feasibility(x)) continue;
            box.any_feasible = true;
            if (uses_gradient) {
              Vector start_value;
              const Vector image =
                  iterate_descent_map(problem, x, cfg.linesearch, cfg.inner_iterations,
                                      cfg.max_descent_rounds, &local, &start_value);
              // images leaving the region or the collection select nothing
              if (const auto key = candidates.grid_key(image); key && candidates.contains_key(*key)) {
                box.hits.push_back(*key);
              }
              box.values.push_back(std::move(start_value));
            } else {
              box.values.push_back(problem.value(x));
              ++local.values;
            }
          }
        });

    std::vector<bool> alive(candidates.size(), selection == Selection::Sampling);
    if (uses_gradient) {
      for (const auto& box : samples) {
        for (const CellKey key : box.hits) alive[*candidates.find(key)] = true;
      }
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!samples[i].any_feasible) alive[i] = false;
      }
    }
    if (selection != Selection::Gradient) {
      std::vector<Vector> values;
      std::vector<std::size_t> owner;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!alive[i]) continue;
        for (const Vector& v : samples[i].values) {
          values.push_back(v);
          owner.push_back(i);
        }
      }
      const std::vector<bool> dominated = confidently_dominated(values, problem.xi());
      std::vector<bool> keep(candidates.size(), false);
      for (std::size_t j = 0; j < values.size(); ++j) {
        if (!dominated[j]) keep[owner[j]] = true;
      }
      alive = std::move(keep);
    }

    std::vector<CellKey> kept;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (alive[i]) kept.push_back(candidates.key(i));
    }
    result.covering = candidates.with_keys(std::move(kept));

    StepRecord record;
    record.depth = result.covering.depth();
    record.box_count = result.covering.size();
    record.max_diameter = result.covering.diameter();
    record.eval_count = counter.total();
    result.report.steps.push_back(record);
    result.report.total_evals += record.eval_count;

    if (result.covering.empty()) throw EmptyCovering(record.depth, result.report);
    if (cfg.keep_history) result.history.push_back(result.covering);
  }
  return result;
}

}  // namespace

void SolverConfig::validate() const {
  if (steps < 1) throw std::invalid_argument("solver: steps must be >= 1");
  if (steps > BoxCollection::kMaxDepth) throw std::invalid_argument("solver: steps must be <= 62");
  if (points_per_axis < 1) throw std::invalid_argument("solver: points_per_axis must be >= 1");
  if (inner_iterations < 1) throw std::invalid_argument("solver: inner_iterations must be >= 1");
  if (max_descent_rounds < 1) throw std::invalid_argument("solver: max_descent_rounds must be >= 1");
  linesearch.validate();
}

EmptyCovering::EmptyCovering(int depth, RunReport report)
    : std::runtime_error("selection discarded every box at depth " + std::to_string(depth)),
      depth_(depth),
      report_(std::move(report)) {}

bool confidently_dominates(const Vector& y_star, const Vector& y, const Vector& xi) {
  if (y_star.size() != y.size() || xi.size() != y.size()) {
    throw std::invalid_argument("confidently_dominates: length mismatch");
  }
  bool strict = false;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double lhs = y_star[i] + xi[i];
    const double rhs = y[i] - xi[i];
    if (lhs > rhs) return false;
    if (lhs < rhs) strict = true;
  }
  return strict;
}

std::vector<bool> confidently_dominated(const std::vector<Vector>& values, const Vector& xi) {
  if (values.empty()) return {};
  for (const auto& v : values) {
    if (v.size() != xi.size()) throw std::invalid_argument("confidently_dominated: length mismatch");
  }
  if (xi.size() == 2) return dominated_two_objectives(values, xi);
  return dominated_general(values, xi);
}

SolveResult subdivision_solve(const UncertainProblem& problem, const HyperBox& region,
                              const SolverConfig& cfg) {
  if (cfg.mode == SolverMode::Sampling) {
    throw std::invalid_argument("subdivision_solve: mode must be gradient or combined");
  }
  return run(problem, region, cfg, Selection::Gradient);
}

SolveResult sampling_solve(const UncertainProblem& problem, const HyperBox& region,
                           const SolverConfig& cfg) {
  if (cfg.mode != SolverMode::Sampling) {
    throw std::invalid_argument("sampling_solve: mode must be sampling");
  }
  return run(problem, region, cfg, Selection::Sampling);
}

SolveResult combined_solve(const UncertainProblem& problem, const HyperBox& region,
                           const SolverConfig& cfg) {
  if (cfg.mode != SolverMode::Combined) {
    throw std::invalid_argument("combined_solve: mode must be combined");
  }
  return run(problem, region, cfg, Selection::Combined);
}

SolveResult solve(const UncertainProblem& problem, const HyperBox& region, const SolverConfig& cfg) {
  switch (cfg.mode) {
    case SolverMode::Gradient: return subdivision_solve(problem, region, cfg);
    case SolverMode::Sampling: return sampling_solve(problem, region, cfg);
    case SolverMode::Combined: return combined_solve(problem, region, cfg);
  }
  throw std::invalid_argument("solve: unknown mode");
}

}  // namespace mocover
