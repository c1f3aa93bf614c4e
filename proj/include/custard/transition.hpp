#pragma once

#include "custard/graph.hpp"

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace custard {

enum class Normalization { ColumnStochastic, Symmetric };

std::string_view to_string(Normalization n) noexcept;

/**
 * Sparse n x n nonnegative matrix over the sparsity pattern of an undirected
 * graph, stored row-major: row u holds T[u, v] for every v in Adj(u). Because
 * the pattern is symmetric the same index arrays also enumerate column v.
 *
 * T[u, v] is the weight of the step v -> u, so a walk distribution evolves as
 * p' = T p. Column sums are cached on construction.
 */
class TransitionMatrix {
public:
    TransitionMatrix() = default;
    TransitionMatrix(Normalization variant, std::vector<std::size_t> offsets,
                     std::vector<NodeId> indices, std::vector<double> values);

    Normalization variant() const noexcept { return variant_; }
    NodeId size() const noexcept { return static_cast<NodeId>(offsets_.size() - 1); }
    std::size_t nonzeros() const noexcept { return values_.size(); }

    std::span<const std::size_t> offsets() const noexcept { return offsets_; }
    std::span<const NodeId> indices() const noexcept { return indices_; }
    std::span<const double> values() const noexcept { return values_; }

    std::span<const NodeId> row_indices(NodeId u) const noexcept {
        return {indices_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }
    std::span<const double> row_values(NodeId u) const noexcept {
        return {values_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }

    /// 0 outside the sparsity pattern.
    double value(NodeId u, NodeId v) const noexcept;
    double column_sum(NodeId v) const noexcept { return column_sums_[v]; }
    std::span<const double> column_sums() const noexcept { return column_sums_; }

    /// Copy with every entry multiplied by `factor` (factor >= 0).
    TransitionMatrix scaled(double factor) const;
    /// Copy with row u multiplied by row_factor[u].
    TransitionMatrix rows_scaled(std::span<const double> row_factor) const;

private:
    void recompute_column_sums();

    Normalization variant_ = Normalization::ColumnStochastic;
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> indices_;
    std::vector<double> values_;
    std::vector<double> column_sums_;
};

/// A[u, v] / sum_k A[k, v]. Throws std::logic_error on a zero-degree node.
TransitionMatrix column_stochastic(const Graph &g);

/// A[u, v] / sqrt(d_u d_v). Throws std::logic_error on a zero-degree node.
TransitionMatrix symmetric_normalize(const Graph &g);

TransitionMatrix normalize(const Graph &g, Normalization variant);

} // namespace custard
