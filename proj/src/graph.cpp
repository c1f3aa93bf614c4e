#include "custard/graph.hpp"

#include "custard/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>

namespace custard {

namespace {

bool is_space(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && is_space(line[i]))
            ++i;
        const std::size_t start = i;
        while (i < line.size() && !is_space(line[i]))
            ++i;
        if (i > start)
            fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

bool is_skippable(const std::vector<std::string_view> &fields) {
    return fields.empty() || fields.front().front() == '#';
}

void sort_and_collapse(std::vector<Edge> &edges) {
    std::sort(edges.begin(), edges.end(), [](const Edge &a, const Edge &b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (out > 0 && edges[out - 1].u == edges[i].u && edges[out - 1].v == edges[i].v) {
            edges[out - 1].weight = std::max(edges[out - 1].weight, edges[i].weight);
        } else {
            edges[out++] = edges[i];
        }
    }
    edges.resize(out);
}

} // namespace

bool Graph::has_edge(NodeId u, NodeId v) const noexcept {
    const auto row = neighbors(u);
    return std::binary_search(row.begin(), row.end(), v);
}

double Graph::edge_weight(NodeId u, NodeId v) const noexcept {
    const auto row = neighbors(u);
    const auto it = std::lower_bound(row.begin(), row.end(), v);
    if (it == row.end() || *it != v)
        return 0.0;
    return weights_[offsets_[u] + static_cast<std::size_t>(it - row.begin())];
}

std::vector<NodeId> Graph::nodes_with_label(LabelId l) const {
    std::vector<NodeId> out;
    for (NodeId u = 0; u < num_nodes(); ++u)
        if (labels_[u] == l)
            out.push_back(u);
    return out;
}

std::size_t Graph::num_labeled_nodes() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(labels_.begin(), labels_.end(), [](LabelId l) { return l != kNoLabel; }));
}

std::optional<NodeId> Graph::find_node(std::string_view external_id) const {
    if (!meta_)
        return std::nullopt;
    const auto it = meta_->id_map.find(std::string(external_id));
    if (it == meta_->id_map.end())
        return std::nullopt;
    return it->second;
}

Graph Graph::from_sorted_edges(std::size_t n, std::vector<Edge> &edges, std::vector<LabelId> labels,
                               std::shared_ptr<const Metadata> meta) {
    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (const Edge &e : edges) {
        ++g.offsets_[e.u + 1];
        if (e.u != e.v)
            ++g.offsets_[e.v + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.targets_.resize(g.offsets_.back());
    g.weights_.resize(g.offsets_.back());
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    // Edges are sorted by (u, v) with u <= v, so filling both directions in
    // this order leaves every row sorted by target.
    for (const Edge &e : edges) {
        if (e.u != e.v) {
            const std::size_t k = cursor[e.v]++;
            g.targets_[k] = e.u;
            g.weights_[k] = e.weight;
        }
    }
    for (const Edge &e : edges) {
        const std::size_t k = cursor[e.u]++;
        g.targets_[k] = e.v;
        g.weights_[k] = e.weight;
    }
    g.degree_.assign(n, 0.0);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t k = g.offsets_[u]; k < g.offsets_[u + 1]; ++k)
            g.degree_[u] += g.weights_[k];
    g.labels_ = std::move(labels);
    g.num_edges_ = edges.size();
    g.meta_ = std::move(meta);
    return g;
}

Graph Graph::with_added_edges(NodeId from, std::span<const NodeId> targets, double weight,
                              std::size_t *added) const {
    std::vector<Edge> edges;
    edges.reserve(num_edges_ + targets.size());
    for (NodeId u = 0; u < num_nodes(); ++u) {
        const auto row = neighbors(u);
        const auto w = edge_weights(u);
        for (std::size_t k = 0; k < row.size(); ++k)
            if (u <= row[k])
                edges.push_back({u, row[k], w[k]});
    }
    std::size_t count = 0;
    for (const NodeId t : targets) {
        if (t == from || t >= num_nodes() || has_edge(from, t))
            continue;
        edges.push_back({std::min(from, t), std::max(from, t), weight});
        ++count;
    }
    // a target listed twice would otherwise be added twice
    const std::size_t before = edges.size();
    sort_and_collapse(edges);
    count -= before - edges.size();
    if (added)
        *added = count;
    return from_sorted_edges(num_nodes(), edges, labels_, meta_);
}

GraphBuilder::GraphBuilder(NodeId n) {
    for (NodeId u = 0; u < n; ++u)
        node(std::to_string(u));
}

NodeId GraphBuilder::node(std::string_view external_id) {
    std::string key(external_id);
    const auto it = id_map_.find(key);
    if (it != id_map_.end())
        return it->second;
    const auto id = static_cast<NodeId>(external_ids_.size());
    id_map_.emplace(key, id);
    external_ids_.push_back(std::move(key));
    labels_.push_back(kNoLabel);
    return id;
}

std::optional<NodeId> GraphBuilder::find_node(std::string_view external_id) const {
    const auto it = id_map_.find(std::string(external_id));
    if (it == id_map_.end())
        return std::nullopt;
    return it->second;
}

void GraphBuilder::add_edge(NodeId u, NodeId v, double weight) {
    if (u >= num_nodes() || v >= num_nodes())
        throw std::out_of_range("GraphBuilder::add_edge: node id out of range");
    if (!(weight >= 0.0) || !std::isfinite(weight))
        throw std::invalid_argument("GraphBuilder::add_edge: weight must be finite and nonnegative");
    edges_.push_back({u, v, weight});
}

LabelId GraphBuilder::label_id(std::string_view name) {
    std::string key(name);
    const auto it = label_map_.find(key);
    if (it != label_map_.end())
        return it->second;
    const auto id = static_cast<LabelId>(label_names_.size());
    label_map_.emplace(key, id);
    label_names_.push_back(std::move(key));
    return id;
}

void GraphBuilder::set_label(NodeId u, LabelId label) {
    if (u >= num_nodes())
        throw std::out_of_range("GraphBuilder::set_label: node id out of range");
    if (label < 0)
        throw std::invalid_argument("GraphBuilder::set_label: negative label id");
    // labels given as raw ids get placeholder names
    while (static_cast<std::size_t>(label) >= label_names_.size())
        this->label_id(std::to_string(label_names_.size()));
    labels_[u] = label;
}

Graph GraphBuilder::build(const BuildOptions &options, BuildStats *stats) const {
    const std::size_t raw_n = num_nodes();
    BuildStats local;
    local.raw_nodes = raw_n;
    local.raw_edges = edges_.size();

    std::vector<Edge> edges;
    edges.reserve(edges_.size());
    for (const Edge &e : edges_)
        if (e.weight > 0.0)
            edges.push_back({std::min(e.u, e.v), std::max(e.u, e.v), e.weight});
    sort_and_collapse(edges);
    if (!options.retain_self_loops) {
        const auto loops = std::erase_if(edges, [](const Edge &e) { return e.u == e.v; });
        local.self_loops_dropped = loops;
    }

    std::vector<bool> keep(raw_n, !options.drop_isolated);
    for (const Edge &e : edges) {
        keep[e.u] = true;
        keep[e.v] = true;
    }
    std::vector<NodeId> remap(raw_n, 0);
    auto meta = std::make_shared<Graph::Metadata>();
    std::vector<LabelId> labels;
    NodeId next = 0;
    for (std::size_t u = 0; u < raw_n; ++u) {
        if (!keep[u]) {
            ++local.isolated_removed;
            if (labels_[u] != kNoLabel)
                ++local.labels_dropped;
            continue;
        }
        remap[u] = next;
        meta->external_ids.push_back(external_ids_[u]);
        meta->id_map.emplace(external_ids_[u], next);
        labels.push_back(labels_[u]);
        ++next;
    }
    if (next == 0)
        throw ValidationError("graph is empty after preprocessing");
    meta->label_names = label_names_;
    for (Edge &e : edges) {
        e.u = remap[e.u];
        e.v = remap[e.v];
    }
    if (stats)
        *stats = local;
    // remapping is monotone, so edge order is still sorted
    return Graph::from_sorted_edges(next, edges, std::move(labels), std::move(meta));
}

LoadedGraph load_graph(std::istream &edges, std::istream &labels, std::string_view edge_source,
                       std::string_view label_source) {
    GraphBuilder builder;
    const std::string edge_name(edge_source);
    const std::string label_name(label_source);

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(edges, line)) {
        ++line_no;
        const auto fields = split_fields(line);
        if (is_skippable(fields))
            continue;
        if (fields.size() != 2 && fields.size() != 3)
            throw ParseError(edge_name, line_no,
                             "expected '<src> <dst> [weight]', got " +
                                 std::to_string(fields.size()) + " fields");
        double weight = 1.0;
        if (fields.size() == 3) {
            const auto w = fields[2];
            const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), weight);
            if (ec != std::errc() || ptr != w.data() + w.size())
                throw ParseError(edge_name, line_no, "invalid weight '" + std::string(w) + "'");
            if (!(weight >= 0.0) || !std::isfinite(weight))
                throw ParseError(edge_name, line_no, "weight must be finite and nonnegative");
        }
        const NodeId u = builder.node(fields[0]);
        const NodeId v = builder.node(fields[1]);
        builder.add_edge(u, v, weight);
    }

    line_no = 0;
    while (std::getline(labels, line)) {
        ++line_no;
        const auto fields = split_fields(line);
        if (is_skippable(fields))
            continue;
        if (fields.size() != 2)
            throw ParseError(label_name, line_no,
                             "expected '<node> <label>', got " + std::to_string(fields.size()) +
                                 " fields");
        const auto u = builder.find_node(fields[0]);
        if (!u)
            throw ValidationError(label_name + ":" + std::to_string(line_no) +
                                  ": label references unknown node '" + std::string(fields[0]) +
                                  "'");
        const LabelId l = builder.label_id(fields[1]);
        if (builder.label(*u) != kNoLabel && builder.label(*u) != l)
            throw ValidationError(label_name + ":" + std::to_string(line_no) + ": node '" +
                                  std::string(fields[0]) + "' already has a different label");
        builder.set_label(*u, l);
    }

    BuildStats stats;
    LoadedGraph out{builder.build({}, &stats), {}};
    out.report.raw_nodes = stats.raw_nodes;
    out.report.raw_edges = stats.raw_edges;
    out.report.retained_nodes = out.graph.num_nodes();
    out.report.undirected_edges = out.graph.num_edges();
    out.report.directed_pairs = out.graph.num_directed_pairs();
    out.report.self_loops_dropped = stats.self_loops_dropped;
    out.report.isolated_removed = stats.isolated_removed;
    out.report.labeled_nodes = out.graph.num_labeled_nodes();
    out.report.labels = out.graph.num_labels();
    return out;
}

LoadedGraph load_graph(const std::filesystem::path &edges, const std::filesystem::path &labels) {
    std::ifstream edge_in(edges);
    if (!edge_in)
        throw std::runtime_error("cannot open edge file " + edges.string());
    std::ifstream label_in(labels);
    if (!label_in)
        throw std::runtime_error("cannot open label file " + labels.string());
    return load_graph(edge_in, label_in, edges.string(), labels.string());
}

} // namespace custard
