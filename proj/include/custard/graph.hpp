#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace custard {

using NodeId = std::uint32_t;
using LabelId = std::int32_t;

inline constexpr LabelId kNoLabel = -1;

struct Edge {
    NodeId u;
    NodeId v;
    double weight = 1.0;
};

/**
 * Undirected weighted graph in CSR form with contiguous node ids 0..n-1 and at
 * most one categorical label per node.
 *
 * Adjacency is symmetric and each neighbor list is sorted by id. Instances are
 * immutable once built and can be shared read-only between threads.
 */
class Graph {
public:
    Graph() = default;

    NodeId num_nodes() const noexcept { return static_cast<NodeId>(degree_.size()); }
    /// Undirected edges; a retained self-loop counts once.
    std::size_t num_edges() const noexcept { return num_edges_; }
    /// Ordered (u,v) pairs, i.e. the number of nonzeros of the adjacency matrix.
    std::size_t num_directed_pairs() const noexcept { return targets_.size(); }

    std::span<const NodeId> neighbors(NodeId u) const noexcept {
        return {targets_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }
    std::span<const double> edge_weights(NodeId u) const noexcept {
        return {weights_.data() + offsets_[u], offsets_[u + 1] - offsets_[u]};
    }
    /// Weighted degree, sum of the adjacency row.
    double degree(NodeId u) const noexcept { return degree_[u]; }
    std::span<const std::size_t> offsets() const noexcept { return offsets_; }
    std::span<const NodeId> targets() const noexcept { return targets_; }
    std::span<const double> weights() const noexcept { return weights_; }

    bool has_edge(NodeId u, NodeId v) const noexcept;
    /// 0 when the edge is absent.
    double edge_weight(NodeId u, NodeId v) const noexcept;

    LabelId label(NodeId u) const noexcept { return labels_[u]; }
    std::size_t num_labels() const noexcept { return meta_ ? meta_->label_names.size() : 0; }
    const std::string &label_name(LabelId l) const { return meta_->label_names.at(l); }
    std::vector<NodeId> nodes_with_label(LabelId l) const;
    std::size_t num_labeled_nodes() const noexcept;

    const std::string &external_id(NodeId u) const { return meta_->external_ids.at(u); }
    std::optional<NodeId> find_node(std::string_view external_id) const;

    /**
     * Copy of this graph with an edge (from, t) of the given weight added for
     * every t in `targets` that is not already adjacent to `from` (t == from
     * is ignored). Labels and ids are shared with the original.
     */
    Graph with_added_edges(NodeId from, std::span<const NodeId> targets, double weight = 1.0,
                           std::size_t *added = nullptr) const;

private:
    friend class GraphBuilder;

    struct Metadata {
        std::vector<std::string> external_ids;
        std::unordered_map<std::string, NodeId> id_map;
        std::vector<std::string> label_names;
    };

    static Graph from_sorted_edges(std::size_t n, std::vector<Edge> &edges,
                                   std::vector<LabelId> labels,
                                   std::shared_ptr<const Metadata> meta);

    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> targets_;
    std::vector<double> weights_;
    std::vector<double> degree_;
    std::vector<LabelId> labels_;
    std::size_t num_edges_ = 0;
    std::shared_ptr<const Metadata> meta_;
};

struct BuildOptions {
    bool retain_self_loops = false;
    bool drop_isolated = true;
};

/// Counts gathered while building; mirrors what `load_graph` reports.
struct BuildStats {
    std::size_t raw_nodes = 0;
    std::size_t raw_edges = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t isolated_removed = 0;
    std::size_t labels_dropped = 0;
};

/**
 * Accumulates a possibly directed, possibly duplicated edge list and turns it
 * into a Graph: pairs are symmetrized, duplicates collapse to their maximum
 * weight, zero-weight rows are ignored, self-loops are dropped unless retained,
 * and zero-degree nodes are removed (remaining ids keep their relative order).
 */
class GraphBuilder {
public:
    GraphBuilder() = default;
    /// Pre-creates nodes "0".."n-1".
    explicit GraphBuilder(NodeId n);

    /// Returns the id of `external_id`, creating it on first sight.
    NodeId node(std::string_view external_id);
    std::optional<NodeId> find_node(std::string_view external_id) const;
    NodeId num_nodes() const noexcept { return static_cast<NodeId>(external_ids_.size()); }

    void add_edge(NodeId u, NodeId v, double weight = 1.0);
    LabelId label_id(std::string_view name);
    void set_label(NodeId u, LabelId label);
    LabelId label(NodeId u) const { return labels_.at(u); }

    Graph build(const BuildOptions &options = {}, BuildStats *stats = nullptr) const;

private:
    std::vector<std::string> external_ids_;
    std::unordered_map<std::string, NodeId> id_map_;
    std::vector<Edge> edges_;
    std::vector<LabelId> labels_;
    std::vector<std::string> label_names_;
    std::unordered_map<std::string, LabelId> label_map_;
};

struct LoadReport {
    std::size_t raw_nodes = 0;
    std::size_t raw_edges = 0;
    std::size_t retained_nodes = 0;
    std::size_t undirected_edges = 0;
    std::size_t directed_pairs = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t isolated_removed = 0;
    std::size_t labeled_nodes = 0;
    std::size_t labels = 0;
};

struct LoadedGraph {
    Graph graph;
    LoadReport report;
};

/**
 * Reads a whitespace separated edge list (`src dst [weight]`) and a label list
 * (`node label`). Blank lines and lines starting with `#` are skipped. Label
 * strings are mapped to dense ids in first-seen order.
 *
 * Throws ParseError on malformed rows and ValidationError when a label names a
 * node that never appears in the edge list or when nothing survives
 * preprocessing.
 */
LoadedGraph load_graph(std::istream &edges, std::istream &labels,
                       std::string_view edge_source = "edges",
                       std::string_view label_source = "labels");

LoadedGraph load_graph(const std::filesystem::path &edges, const std::filesystem::path &labels);

} // namespace custard
