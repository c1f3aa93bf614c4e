#pragma once

// Test-only helpers: random graph generators and dense reference
// computations that do not go through the sparse code paths under test.

#include "custard/graph.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <vector>

namespace custard::testing {

struct RandomGraphSpec {
    int min_nodes = 2;
    int max_nodes = 50;
    double extra_edge_prob = 0.1;
    bool random_weights = false;
    int num_labels = 3;
};

/// Connected graph: random spanning tree plus independent extra edges.
inline Graph random_connected_graph(std::mt19937_64 &rng, const RandomGraphSpec &spec = {}) {
    std::uniform_int_distribution<int> size_dist(spec.min_nodes, spec.max_nodes);
    const int n = size_dist(rng);
    GraphBuilder b(static_cast<NodeId>(n));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> weight(0.5, 2.0);
    auto w = [&] { return spec.random_weights ? weight(rng) : 1.0; };
    for (int v = 1; v < n; ++v) {
        std::uniform_int_distribution<int> parent(0, v - 1);
        b.add_edge(static_cast<NodeId>(parent(rng)), static_cast<NodeId>(v), w());
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (unit(rng) < spec.extra_edge_prob)
                b.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), w());
    if (spec.num_labels > 0) {
        std::uniform_int_distribution<int> lab(0, spec.num_labels - 1);
        for (int v = 0; v < n; ++v)
            b.set_label(static_cast<NodeId>(v), lab(rng));
    }
    return b.build();
}

inline std::vector<NodeId> random_subset(std::mt19937_64 &rng, const std::vector<NodeId> &from,
                                         std::size_t count) {
    std::vector<NodeId> pool = from;
    std::shuffle(pool.begin(), pool.end(), rng);
    pool.resize(std::min(count, pool.size()));
    std::sort(pool.begin(), pool.end());
    return pool;
}

inline Eigen::MatrixXd dense_adjacency(const Graph &g) {
    const int n = static_cast<int>(g.num_nodes());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v)
            a(u, v) = g.edge_weight(static_cast<NodeId>(u), static_cast<NodeId>(v));
    return a;
}

inline Eigen::MatrixXd dense_column_stochastic(const Eigen::MatrixXd &a) {
    Eigen::MatrixXd t = a;
    for (int j = 0; j < a.cols(); ++j)
        t.col(j) /= a.col(j).sum();
    return t;
}

inline Eigen::MatrixXd dense_symmetric(const Eigen::MatrixXd &a) {
    const Eigen::VectorXd d = a.rowwise().sum();
    Eigen::MatrixXd t = a;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            t(i, j) = a(i, j) / std::sqrt(d(i) * d(j));
    return t;
}

/// Dense Q = (1 - alpha) T and R = alpha r 1^T, then the negative-node
/// adjustment applied entry by entry on the dense matrices.
struct DenseOperator {
    Eigen::MatrixXd q;
    Eigen::MatrixXd r;
};

inline DenseOperator dense_operator(const Eigen::MatrixXd &t, const std::vector<NodeId> &seeds,
                                    double alpha) {
    const int n = static_cast<int>(t.rows());
    DenseOperator op{(1.0 - alpha) * t, Eigen::MatrixXd::Zero(n, n)};
    for (const NodeId s : seeds)
        op.r.row(static_cast<int>(s)).setConstant(alpha / static_cast<double>(seeds.size()));
    return op;
}

inline DenseOperator dense_redirect(DenseOperator op, const std::vector<NodeId> &seeds,
                                    const std::vector<NodeId> &negatives, double lambda) {
    const int n = static_cast<int>(op.q.rows());
    const DenseOperator before = op;
    for (const NodeId u : negatives) {
        for (int v = 0; v < n; ++v) {
            if (before.q(static_cast<int>(u), v) == 0.0)
                continue;
            for (const NodeId s : seeds)
                op.r(static_cast<int>(s), v) +=
                    lambda * before.q(static_cast<int>(u), v) / static_cast<double>(seeds.size());
            op.q(static_cast<int>(u), v) = (1.0 - lambda) * before.q(static_cast<int>(u), v);
        }
    }
    return op;
}

/// Iterates p <- M p / |M p|_1 until the L1 step falls below tol.
inline Eigen::VectorXd dense_fixed_point(const Eigen::MatrixXd &m, Eigen::VectorXd p,
                                         double tol = 1e-14, int max_iter = 200000) {
    for (int t = 0; t < max_iter; ++t) {
        Eigen::VectorXd next = m * p;
        next /= next.cwiseAbs().sum();
        const double delta = (next - p).cwiseAbs().sum();
        p = next;
        if (delta < tol)
            break;
    }
    return p;
}

inline Eigen::VectorXd seed_vector(int n, const std::vector<NodeId> &seeds) {
    Eigen::VectorXd r = Eigen::VectorXd::Zero(n);
    for (const NodeId s : seeds)
        r(static_cast<int>(s)) = 1.0 / static_cast<double>(seeds.size());
    return r;
}

/// Solves (I - (1 - alpha) T) p = alpha r directly.
inline Eigen::VectorXd dense_rwr_solve(const Eigen::MatrixXd &t, const std::vector<NodeId> &seeds,
                                       double alpha) {
    const int n = static_cast<int>(t.rows());
    const Eigen::MatrixXd lhs = Eigen::MatrixXd::Identity(n, n) - (1.0 - alpha) * t;
    return lhs.partialPivLu().solve(alpha * seed_vector(n, seeds));
}

/// Hop distance from every node to the nearest source, via one BFS per source.
inline std::vector<int> brute_force_distance(const Graph &g, const std::vector<NodeId> &sources) {
    std::vector<int> best(g.num_nodes(), -1);
    for (const NodeId s : sources) {
        std::vector<int> d(g.num_nodes(), -1);
        std::deque<NodeId> q{s};
        d[s] = 0;
        while (!q.empty()) {
            const NodeId u = q.front();
            q.pop_front();
            for (const NodeId v : g.neighbors(u))
                if (d[v] < 0) {
                    d[v] = d[u] + 1;
                    q.push_back(v);
                }
        }
        for (NodeId v = 0; v < g.num_nodes(); ++v)
            if (d[v] >= 0 && (best[v] < 0 || d[v] < best[v]))
                best[v] = d[v];
    }
    return best;
}

/// Fraction of (positive, negative) pairs ordered correctly, ties count 1/2.
inline double brute_force_auc(const std::vector<double> &scores, const std::vector<bool> &is_pos) {
    double correct = 0.0;
    double pairs = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!is_pos[i])
            continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (is_pos[j])
                continue;
            pairs += 1.0;
            if (scores[i] > scores[j])
                correct += 1.0;
            else if (scores[i] == scores[j])
                correct += 0.5;
        }
    }
    return correct / pairs;
}

/// Eight-node example: seed h next to negative i.
///
///   d - e - h - i - j
///   |   | /     \ |
///   g - f         k
///
/// Edges: h-e h-f h-i i-j i-k e-f f-g g-d j-k d-e. Ids follow "defghijk".
inline Graph toy_graph() {
    GraphBuilder b;
    for (const char *name : {"d", "e", "f", "g", "h", "i", "j", "k"})
        b.node(name);
    auto id = [&](const char *name) { return *b.find_node(name); };
    const char *edges[][2] = {{"h", "e"}, {"h", "f"}, {"h", "i"}, {"i", "j"}, {"i", "k"},
                              {"e", "f"}, {"f", "g"}, {"g", "d"}, {"j", "k"}, {"d", "e"}};
    for (const auto &e : edges)
        b.add_edge(id(e[0]), id(e[1]));
    return b.build();
}

} // namespace custard::testing
