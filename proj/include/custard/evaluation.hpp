#pragma once

#include "custard/graph.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace custard {

struct RankedNode {
    NodeId node;
    double score;

    bool operator==(const RankedNode &) const = default;
};

/// Nodes by descending score, ties by ascending node id.
using Ordering = std::vector<RankedNode>;

struct Metrics {
    double auc = 0.0;
    double p_at_20 = 0.0;
    double p_at_100 = 0.0;
};

/**
 * TP/FP sequence of one ranking. `groups` collapses runs of tied scores so
 * that curve-based metrics can give ties half credit; `hits` keeps the
 * per-position outcome of the deterministic ordering for precision@k.
 */
struct RankProfile {
    struct Group {
        std::uint32_t positives = 0;
        std::uint32_t negatives = 0;
    };
    std::vector<Group> groups;
    std::vector<std::uint8_t> hits;
    std::size_t positives = 0;
    std::size_t negatives = 0;

    std::size_t size() const noexcept { return hits.size(); }
};

struct RankedResult {
    Ordering ordering;
    std::vector<NodeId> positives_in_validation; ///< sorted
    RankProfile profile;
    Metrics metrics;
    /// false when the validation set has no positives or no negatives
    bool metrics_defined = false;
};

Ordering rank_validation(std::span<const double> scores, std::span<const NodeId> training);

/// Mann-Whitney AUC with midranks for ties; std::nullopt without both classes.
std::optional<double> auc(const Ordering &ordering, std::span<const NodeId> positives);

/// |top-min(k, n) ∩ positives| / min(k, n); 0 for an empty ordering.
double precision_at_k(const Ordering &ordering, std::span<const NodeId> positives, std::size_t k);

RankProfile rank_profile(const Ordering &ordering, std::span<const NodeId> positives);

/**
 * Metrics of several rankings pooled by rank position: TP and FP counts at
 * each position are summed over the rankings before AUC and precision are
 * computed. For a single ranking this equals the per-list metrics.
 * std::nullopt when the pooled rankings lack positives or negatives.
 */
std::optional<Metrics> pooled_metrics(std::span<const RankProfile> profiles);

/// Ranks V \ training and scores it against label_members \ training.
RankedResult evaluate(std::span<const double> scores, std::span<const NodeId> training,
                      std::span<const NodeId> label_members);

struct Summary {
    double mean = 0.0;
    double std = 0.0; ///< population standard deviation
    std::size_t n_trials = 0;
};

struct MetricSummary {
    Summary auc;
    Summary p_at_20;
    Summary p_at_100;
};

Summary summarize(std::span<const double> values);

/// Mean and population std of each metric. Throws std::invalid_argument on empty input.
MetricSummary aggregate(std::span<const Metrics> trials);

} // namespace custard
