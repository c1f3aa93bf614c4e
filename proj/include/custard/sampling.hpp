#pragma once

#include "custard/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace custard {

using Rng = std::mt19937_64;

/// One training instance for one label: sampled seeds plus k-hop negatives.
struct TrialPlan {
    LabelId label_id = kNoLabel;
    int trial_index = 0;
    std::uint64_t rng_seed = 0;
    double gamma = 0.0;
    int k_hop = 1;
    int attempts = 1;               ///< seed draws needed to find a nonempty pool
    std::vector<NodeId> seeds;      ///< in draw order; seeds.front() is the sq query
    std::vector<NodeId> negatives;  ///< sorted

    /// seeds and negatives, sorted.
    std::vector<NodeId> training() const;

    bool operator==(const TrialPlan &) const = default;
};

/// max(1, floor(gamma * class_size)).
std::size_t seed_set_size(std::size_t class_size, double gamma);

/// Uniform sample without replacement of seed_set_size(|label_set|, gamma)
/// nodes, returned in random order.
std::vector<NodeId> sample_seeds(std::span<const NodeId> label_set, double gamma, Rng &rng);

/// Unweighted multi-source BFS hop counts from `sources`, -1 beyond max_depth or unreachable.
std::vector<int> hop_distances(const Graph &g, std::span<const NodeId> sources, int max_depth);

/**
 * Nodes whose shortest hop distance to the seed set is exactly k and which
 * carry a known label different from `label`. Unlabeled nodes never qualify.
 * Sorted ascending.
 */
std::vector<NodeId> khop_pool(const Graph &g, std::span<const NodeId> seeds, int k, LabelId label);

/// Uniform sample of min(|pool|, target_size) nodes, sorted; std::nullopt
/// when the pool is empty and a new seed set has to be drawn.
std::optional<std::vector<NodeId>> sample_negatives(std::span<const NodeId> pool,
                                                    std::size_t target_size, Rng &rng);

/// Per-trial RNG seed derived from (base_seed, label, trial).
std::uint64_t trial_seed(std::uint64_t base_seed, LabelId label, int trial_index);

inline constexpr int kDefaultRetryBudget = 1000;

/**
 * n_trials plans for `label`. For each trial the seed set is redrawn until its
 * k-hop pool is nonempty; ConfigError after `retry_budget` draws.
 */
std::vector<TrialPlan> build_trials(const Graph &g, LabelId label, double gamma, int k,
                                    int n_trials, std::uint64_t base_seed,
                                    int retry_budget = kDefaultRetryBudget);

/// Tab separated, one plan per line, node ids written as external ids.
void write_manifest(std::ostream &out, const Graph &g, std::span<const TrialPlan> plans);
std::vector<TrialPlan> read_manifest(std::istream &in, const Graph &g);

} // namespace custard
