#include "custard/propagation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace custard {

void PropagationConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in (0, 1), got " + std::to_string(alpha));
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("lambda must lie in [0, 1], got " + std::to_string(lambda));
    if (!(tolerance > 0.0))
        throw std::invalid_argument("tolerance must be positive");
    if (max_iterations < 1)
        throw std::invalid_argument("max_iterations must be at least 1");
}

namespace {

std::vector<NodeId> sorted_unique(std::span<const NodeId> nodes) {
    std::vector<NodeId> out(nodes.begin(), nodes.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void check_nodes(std::span<const NodeId> nodes, NodeId n, const char *what) {
    for (const NodeId v : nodes)
        if (v >= n)
            throw std::invalid_argument(std::string(what) + ": node " + std::to_string(v) +
                                        " out of range");
}

std::vector<double> seed_distribution(std::span<const NodeId> seeds, NodeId n) {
    std::vector<double> r(n, 0.0);
    const double share = 1.0 / static_cast<double>(seeds.size());
    for (const NodeId s : seeds)
        r[s] = share;
    return r;
}

// Shared fixed-point loop. `step` writes the next iterate into its second
// argument; when `renormalize` is set the result is divided by its L1 norm.
template <typename Step>
ScoreVector iterate(std::vector<double> p, const PropagationConfig &cfg, bool renormalize,
                    Step &&step) {
    ScoreVector out;
    std::vector<double> next(p.size());
    for (int t = 1; t <= cfg.max_iterations; ++t) {
        step(std::span<const double>(p), std::span<double>(next));
        if (renormalize) {
            const double norm = kernels::sum(cfg.backend, next);
            kernels::scale(cfg.backend, next, 1.0 / norm);
        }
        const double delta = kernels::l1_distance(cfg.backend, next, p);
        std::swap(p, next);
        out.iterations_used = t;
        if (delta < cfg.tolerance) {
            out.converged = true;
            break;
        }
    }
    out.p = std::move(p);
    return out;
}

ScoreVector classical_walk(const TransitionMatrix &t, std::span<const NodeId> seed_list,
                           const PropagationConfig &cfg, bool renormalize) {
    cfg.validate();
    if (seed_list.empty())
        throw std::invalid_argument("seed set is empty");
    check_nodes(seed_list, t.size(), "seeds");
    const auto seeds = sorted_unique(seed_list);
    const TransitionMatrix q = t.scaled(1.0 - cfg.alpha);
    const double restart = cfg.alpha / static_cast<double>(seeds.size());
    return iterate(seed_distribution(seeds, t.size()), cfg, renormalize,
                   [&](std::span<const double> p, std::span<double> next) {
                       kernels::spmv(cfg.backend, q, p, next);
                       for (const NodeId s : seeds)
                           next[s] += restart;
                   });
}

} // namespace

RestartModel::RestartModel(std::vector<NodeId> seeds, NodeId n, double alpha)
    : seeds_(std::move(seeds)), mass_(n, alpha), alpha_(alpha) {
    std::sort(seeds_.begin(), seeds_.end());
    seeds_.erase(std::unique(seeds_.begin(), seeds_.end()), seeds_.end());
    if (seeds_.empty())
        throw std::invalid_argument("seed set is empty");
    check_nodes(seeds_, n, "seeds");
}

bool RestartModel::is_seed(NodeId v) const noexcept {
    return std::binary_search(seeds_.begin(), seeds_.end(), v);
}

double RestartModel::entry(NodeId s, NodeId v) const noexcept {
    return is_seed(s) ? mass_[v] / static_cast<double>(seeds_.size()) : 0.0;
}

void RestartModel::apply(std::span<const double> x, std::span<double> y, Backend backend) const {
    const double share = kernels::dot(backend, mass_, x) / static_cast<double>(seeds_.size());
    for (const NodeId s : seeds_)
        y[s] += share;
}

ScoreVector rwr_classical(const TransitionMatrix &t, std::span<const NodeId> seeds,
                          const PropagationConfig &cfg) {
    if (t.variant() != Normalization::ColumnStochastic)
        throw std::invalid_argument("rwr_classical needs a column stochastic matrix");
    return classical_walk(t, seeds, cfg, false);
}

ScoreVector rwr_symmetric(const TransitionMatrix &t, std::span<const NodeId> seeds,
                          const PropagationConfig &cfg) {
    if (t.variant() != Normalization::Symmetric)
        throw std::invalid_argument("rwr_symmetric needs a symmetric normalized matrix");
    return classical_walk(t, seeds, cfg, true);
}

WalkOperator build_operator(const TransitionMatrix &t, std::span<const NodeId> seeds, double alpha) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw std::invalid_argument("alpha must lie in [0, 1)");
    if (seeds.empty())
        throw std::invalid_argument("seed set is empty");
    return WalkOperator{t.scaled(1.0 - alpha),
                        RestartModel({seeds.begin(), seeds.end()}, t.size(), alpha)};
}

WalkOperator apply_redirection(const WalkOperator &op, std::span<const NodeId> negative_list,
                               double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("lambda must lie in [0, 1]");
    const NodeId n = op.transition.size();
    check_nodes(negative_list, n, "negatives");
    const auto negatives = sorted_unique(negative_list);
    for (const NodeId u : negatives)
        if (op.restart.is_seed(u))
            throw std::invalid_argument("node " + std::to_string(u) +
                                        " is both a seed and a negative");

    RestartModel restart = op.restart;
    std::vector<double> row_factor(n, 1.0);
    for (const NodeId u : negatives) {
        row_factor[u] = 1.0 - lambda;
        const auto cols = op.transition.row_indices(u);
        const auto vals = op.transition.row_values(u);
        for (std::size_t k = 0; k < cols.size(); ++k)
            restart.add_mass(cols[k], lambda * vals[k]);
    }
    return WalkOperator{op.transition.rows_scaled(row_factor), std::move(restart)};
}

ScoreVector propagate(const WalkOperator &op, const PropagationConfig &cfg) {
    if (!(cfg.tolerance > 0.0) || cfg.max_iterations < 1)
        throw std::invalid_argument("invalid convergence settings");
    const auto &restart = op.restart;
    return iterate(seed_distribution(restart.seeds(), op.transition.size()), cfg, true,
                   [&](std::span<const double> p, std::span<double> next) {
                       kernels::spmv(cfg.backend, op.transition, p, next);
                       restart.apply(p, next, cfg.backend);
                   });
}

ScoreVector custard(const TransitionMatrix &base, std::span<const NodeId> positives,
                    std::span<const NodeId> negatives, const PropagationConfig &cfg) {
    cfg.validate();
    const WalkOperator op = build_operator(base, positives, cfg.alpha);
    if (negatives.empty())
        return propagate(op, cfg);
    return propagate(apply_redirection(op, negatives, cfg.lambda), cfg);
}

ScoreVector custard(const Graph &g, std::span<const NodeId> positives,
                    std::span<const NodeId> negatives, const PropagationConfig &cfg) {
    cfg.validate();
    return custard(normalize(g, cfg.variant), positives, negatives, cfg);
}

ScoreVector custard_sq(const Graph &g, NodeId query, std::span<const NodeId> positives,
                       std::span<const NodeId> negatives, const PropagationConfig &cfg) {
    if (query >= g.num_nodes())
        throw std::invalid_argument("query node out of range");
    if (std::find(negatives.begin(), negatives.end(), query) != negatives.end())
        throw std::invalid_argument("query node is listed as a negative");
    check_nodes(positives, g.num_nodes(), "positives");
    const Graph augmented = g.with_added_edges(query, positives);
    const NodeId seed[] = {query};
    return custard(augmented, seed, negatives, cfg);
}

} // namespace custard
