#pragma once

#include "custard/graph.hpp"
#include "custard/kernels.hpp"
#include "custard/transition.hpp"

#include <span>
#include <vector>

namespace custard {

struct PropagationConfig {
    double alpha = 0.05;     ///< restart probability, in (0, 1)
    double lambda = 0.9;     ///< redirection factor, in [0, 1]
    double tolerance = 1e-9; ///< stop once ||p_t - p_{t-1}||_1 < tolerance
    int max_iterations = 1000;
    Normalization variant = Normalization::Symmetric;
    Backend backend = Backend::Serial;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

struct ScoreVector {
    std::vector<double> p;
    int iterations_used = 0;
    bool converged = false;
};

/**
 * Rank-1 teleport operator R = (1_S / |S|) c^T.
 *
 * R[s, v] = c(v) / |S| for a seed s and 0 for every other row, so column v of
 * R sums to c(v), the total probability of restarting when leaving v. Only
 * the seed list and the length-n mass vector are stored.
 */
class RestartModel {
public:
    /// Uniform restart mass `alpha` on every node. Seeds are deduplicated and sorted.
    RestartModel(std::vector<NodeId> seeds, NodeId n, double alpha);

    std::span<const NodeId> seeds() const noexcept { return seeds_; }
    std::span<const double> mass() const noexcept { return mass_; }
    double mass(NodeId v) const noexcept { return mass_[v]; }
    double alpha() const noexcept { return alpha_; }
    NodeId size() const noexcept { return static_cast<NodeId>(mass_.size()); }

    bool is_seed(NodeId v) const noexcept;
    /// Entry R[s, v].
    double entry(NodeId s, NodeId v) const noexcept;

    void add_mass(NodeId v, double delta) { mass_[v] += delta; }

    /// y += R x, i.e. adds (c . x) / |S| to every seed entry of y.
    void apply(std::span<const double> x, std::span<double> y, Backend backend) const;

private:
    std::vector<NodeId> seeds_;
    std::vector<double> mass_;
    double alpha_;
};

/// Transition part Q and teleport part R of the walk p <- (Q + R) p.
struct WalkOperator {
    TransitionMatrix transition;
    RestartModel restart;
};

/// Steady state of p = (1 - alpha) T p + alpha r; T must be column stochastic.
ScoreVector rwr_classical(const TransitionMatrix &t, std::span<const NodeId> seeds,
                          const PropagationConfig &cfg);

/// Iterates p^ = (1 - alpha) T p + alpha r, p = p^ / |p^|_1; T must be symmetric normalized.
ScoreVector rwr_symmetric(const TransitionMatrix &t, std::span<const NodeId> seeds,
                          const PropagationConfig &cfg);

/// Q = (1 - alpha) T and R with c(v) = alpha everywhere. alpha may be 0 here.
WalkOperator build_operator(const TransitionMatrix &t, std::span<const NodeId> seeds, double alpha);

/**
 * Steers the walk away from negative nodes. For each negative u and v in
 * Adj(u) the transition v -> u keeps (1 - lambda) of its weight and the
 * remaining lambda Q[u, v] becomes extra restart mass c(v), shared evenly by
 * the seeds. Column sums of Q + R are unchanged. The input is not modified.
 *
 * Throws std::invalid_argument if a negative is also a seed or lambda is
 * outside [0, 1].
 */
WalkOperator apply_redirection(const WalkOperator &op, std::span<const NodeId> negatives,
                               double lambda);

/// Power iteration p^ = Q p + R p, p = p^ / |p^|_1 starting from the seed distribution.
ScoreVector propagate(const WalkOperator &op, const PropagationConfig &cfg);

/// Normalizes g with cfg.variant, then redirects away from `negatives` and propagates.
ScoreVector custard(const Graph &g, std::span<const NodeId> positives,
                    std::span<const NodeId> negatives, const PropagationConfig &cfg);

/// Same as above over a precomputed normalization of the graph.
ScoreVector custard(const TransitionMatrix &base, std::span<const NodeId> positives,
                    std::span<const NodeId> negatives, const PropagationConfig &cfg);

/**
 * Single-query variant: links `query` to every positive it is not already
 * adjacent to (unit weight), renormalizes, and runs custard seeded only at
 * `query`. Throws std::invalid_argument if query is one of the negatives.
 */
ScoreVector custard_sq(const Graph &g, NodeId query, std::span<const NodeId> positives,
                       std::span<const NodeId> negatives, const PropagationConfig &cfg);

} // namespace custard
