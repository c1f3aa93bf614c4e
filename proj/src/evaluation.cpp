#include "custard/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace custard {

namespace {

std::vector<NodeId> sorted_copy(std::span<const NodeId> nodes) {
    std::vector<NodeId> out(nodes.begin(), nodes.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool contains(const std::vector<NodeId> &sorted, NodeId v) {
    return std::binary_search(sorted.begin(), sorted.end(), v);
}

} // namespace

Ordering rank_validation(std::span<const double> scores, std::span<const NodeId> training) {
    const auto excluded = sorted_copy(training);
    Ordering out;
    out.reserve(scores.size());
    for (NodeId v = 0; v < scores.size(); ++v)
        if (!contains(excluded, v))
            out.push_back({v, scores[v]});
    std::sort(out.begin(), out.end(), [](const RankedNode &a, const RankedNode &b) {
        return a.score != b.score ? a.score > b.score : a.node < b.node;
    });
    return out;
}

RankProfile rank_profile(const Ordering &ordering, std::span<const NodeId> positive_list) {
    const auto positives = sorted_copy(positive_list);
    RankProfile prof;
    prof.hits.reserve(ordering.size());
    for (std::size_t i = 0; i < ordering.size(); ++i) {
        const bool hit = contains(positives, ordering[i].node);
        prof.hits.push_back(hit ? 1 : 0);
        if (i == 0 || ordering[i].score != ordering[i - 1].score)
            prof.groups.emplace_back();
        auto &g = prof.groups.back();
        if (hit) {
            ++g.positives;
            ++prof.positives;
        } else {
            ++g.negatives;
            ++prof.negatives;
        }
    }
    return prof;
}

std::optional<double> auc(const Ordering &ordering, std::span<const NodeId> positives) {
    const RankProfile prof = rank_profile(ordering, positives);
    if (prof.positives == 0 || prof.negatives == 0)
        return std::nullopt;
    // every (positive, negative) pair scores 1 if the positive ranks strictly
    // higher and 1/2 if tied
    double correct = 0.0;
    double negatives_below = static_cast<double>(prof.negatives);
    for (const auto &g : prof.groups) {
        negatives_below -= g.negatives;
        correct += g.positives * (negatives_below + 0.5 * g.negatives);
    }
    return correct / (static_cast<double>(prof.positives) * static_cast<double>(prof.negatives));
}

double precision_at_k(const Ordering &ordering, std::span<const NodeId> positive_list,
                      std::size_t k) {
    if (k < 1)
        throw std::invalid_argument("precision_at_k: k must be at least 1");
    const std::size_t top = std::min(k, ordering.size());
    if (top == 0)
        return 0.0;
    const auto positives = sorted_copy(positive_list);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < top; ++i)
        hits += contains(positives, ordering[i].node) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(top);
}

std::optional<Metrics> pooled_metrics(std::span<const RankProfile> profiles) {
    std::size_t length = 0;
    double total_pos = 0.0;
    double total_neg = 0.0;
    for (const auto &p : profiles) {
        length = std::max(length, p.size());
        total_pos += static_cast<double>(p.positives);
        total_neg += static_cast<double>(p.negatives);
    }
    if (total_pos == 0.0 || total_neg == 0.0)
        return std::nullopt;

    // Cumulative TP/FP at each integer rank position, summed over rankings.
    // Inside a tie group the counts grow linearly, which is what gives ties
    // half credit in the trapezoid rule below.
    std::vector<double> tp(length + 1, 0.0);
    std::vector<double> fp(length + 1, 0.0);
    for (const auto &p : profiles) {
        std::size_t pos = 0;
        double cum_tp = 0.0;
        double cum_fp = 0.0;
        for (const auto &g : p.groups) {
            const std::size_t width = g.positives + g.negatives;
            for (std::size_t i = 1; i <= width; ++i) {
                const double frac = static_cast<double>(i) / static_cast<double>(width);
                tp[pos + i] += cum_tp + frac * g.positives;
                fp[pos + i] += cum_fp + frac * g.negatives;
            }
            pos += width;
            cum_tp += g.positives;
            cum_fp += g.negatives;
        }
        for (std::size_t r = pos + 1; r <= length; ++r) {
            tp[r] += cum_tp;
            fp[r] += cum_fp;
        }
    }
    double area = 0.0;
    for (std::size_t r = 0; r < length; ++r)
        area += (fp[r + 1] - fp[r]) * (tp[r] + tp[r + 1]) * 0.5;

    auto pooled_precision = [&](std::size_t k) {
        double hits = 0.0;
        double denom = 0.0;
        for (const auto &p : profiles) {
            const std::size_t top = std::min(k, p.size());
            for (std::size_t i = 0; i < top; ++i)
                hits += p.hits[i];
            denom += static_cast<double>(top);
        }
        return hits / denom;
    };

    Metrics m;
    m.auc = area / (total_pos * total_neg);
    m.p_at_20 = pooled_precision(20);
    m.p_at_100 = pooled_precision(100);
    return m;
}

RankedResult evaluate(std::span<const double> scores, std::span<const NodeId> training,
                      std::span<const NodeId> label_members) {
    RankedResult r;
    r.ordering = rank_validation(scores, training);
    const auto excluded = sorted_copy(training);
    for (const NodeId v : sorted_copy(label_members))
        if (!contains(excluded, v))
            r.positives_in_validation.push_back(v);
    r.profile = rank_profile(r.ordering, r.positives_in_validation);
    const RankProfile *one = &r.profile;
    if (auto m = pooled_metrics({one, 1})) {
        r.metrics = *m;
        r.metrics_defined = true;
    }
    return r;
}

Summary summarize(std::span<const double> values) {
    if (values.empty())
        throw std::invalid_argument("summarize: no values");
    Summary s;
    s.n_trials = values.size();
    // shifted by the first value so that identical inputs give std exactly 0
    const double shift = values.front();
    const auto n = static_cast<double>(values.size());
    double total = 0.0;
    for (const double v : values)
        total += v - shift;
    const double offset = total / n;
    double sq = 0.0;
    for (const double v : values)
        sq += (v - shift - offset) * (v - shift - offset);
    s.mean = shift + offset;
    s.std = std::sqrt(sq / n);
    return s;
}

MetricSummary aggregate(std::span<const Metrics> trials) {
    if (trials.empty())
        throw std::invalid_argument("aggregate: no trials");
    std::vector<double> a, p20, p100;
    for (const auto &m : trials) {
        a.push_back(m.auc);
        p20.push_back(m.p_at_20);
        p100.push_back(m.p_at_100);
    }
    return {summarize(a), summarize(p20), summarize(p100)};
}

} // namespace custard
