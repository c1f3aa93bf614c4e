#include "custard/transition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace custard {

std::string_view to_string(Normalization n) noexcept {
    switch (n) {
    case Normalization::ColumnStochastic:
        return "column_stochastic";
    case Normalization::Symmetric:
        return "symmetric";
    }
    return "unknown";
}

TransitionMatrix::TransitionMatrix(Normalization variant, std::vector<std::size_t> offsets,
                                   std::vector<NodeId> indices, std::vector<double> values)
    : variant_(variant), offsets_(std::move(offsets)), indices_(std::move(indices)),
      values_(std::move(values)) {
    if (offsets_.empty() || offsets_.back() != indices_.size() || indices_.size() != values_.size())
        throw std::invalid_argument("TransitionMatrix: inconsistent CSR arrays");
    recompute_column_sums();
}

void TransitionMatrix::recompute_column_sums() {
    column_sums_.assign(size(), 0.0);
    for (std::size_t k = 0; k < values_.size(); ++k)
        column_sums_[indices_[k]] += values_[k];
}

double TransitionMatrix::value(NodeId u, NodeId v) const noexcept {
    const auto row = row_indices(u);
    const auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it == row.end() || *it != v)
        return 0.0;
    return values_[offsets_[u] + static_cast<std::size_t>(it - row.begin())];
}

TransitionMatrix TransitionMatrix::scaled(double factor) const {
    TransitionMatrix out = *this;
    for (double &x : out.values_)
        x *= factor;
    out.recompute_column_sums();
    return out;
}

TransitionMatrix TransitionMatrix::rows_scaled(std::span<const double> row_factor) const {
    if (row_factor.size() != size())
        throw std::invalid_argument("rows_scaled: factor vector has wrong length");
    TransitionMatrix out = *this;
    for (NodeId u = 0; u < size(); ++u)
        for (std::size_t k = offsets_[u]; k < offsets_[u + 1]; ++k)
            out.values_[k] *= row_factor[u];
    out.recompute_column_sums();
    return out;
}

namespace {

void require_positive_degrees(const Graph &g) {
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        if (!(g.degree(u) > 0.0))
            throw std::logic_error("transition matrix: node " + std::to_string(u) +
                                   " has zero degree");
}

} // namespace

TransitionMatrix column_stochastic(const Graph &g) {
    require_positive_degrees(g);
    const auto offsets = g.offsets();
    const auto targets = g.targets();
    const auto weights = g.weights();
    std::vector<double> values(weights.size());
    for (std::size_t k = 0; k < values.size(); ++k)
        values[k] = weights[k] / g.degree(targets[k]);
    return TransitionMatrix(Normalization::ColumnStochastic, {offsets.begin(), offsets.end()},
                            {targets.begin(), targets.end()}, std::move(values));
}

TransitionMatrix symmetric_normalize(const Graph &g) {
    require_positive_degrees(g);
    const auto offsets = g.offsets();
    const auto targets = g.targets();
    const auto weights = g.weights();
    std::vector<double> values(weights.size());
    // d_u * d_v commutes, so T[u, v] and T[v, u] are bitwise equal
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (std::size_t k = offsets[u]; k < offsets[u + 1]; ++k)
            values[k] = weights[k] / std::sqrt(g.degree(u) * g.degree(targets[k]));
    return TransitionMatrix(Normalization::Symmetric, {offsets.begin(), offsets.end()},
                            {targets.begin(), targets.end()}, std::move(values));
}

TransitionMatrix normalize(const Graph &g, Normalization variant) {
    return variant == Normalization::Symmetric ? symmetric_normalize(g) : column_stochastic(g);
}

} // namespace custard
