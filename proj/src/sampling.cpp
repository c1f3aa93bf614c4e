#include "custard/sampling.hpp"

#include "custard/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <deque>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace custard {

std::vector<NodeId> TrialPlan::training() const {
    std::vector<NodeId> out(seeds.begin(), seeds.end());
    out.insert(out.end(), negatives.begin(), negatives.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::size_t seed_set_size(std::size_t class_size, double gamma) {
    // 1e-9 absorbs products like 0.29 * 100 = 28.999999999999996
    const auto size = static_cast<std::size_t>(std::floor(gamma * static_cast<double>(class_size) + 1e-9));
    return std::max<std::size_t>(1, std::min(size, class_size));
}

std::vector<NodeId> sample_seeds(std::span<const NodeId> label_set, double gamma, Rng &rng) {
    if (label_set.empty())
        throw std::invalid_argument("sample_seeds: label set is empty");
    if (!(gamma > 0.0 && gamma <= 1.0))
        throw std::invalid_argument("sample_seeds: gamma must lie in (0, 1]");
    const std::size_t size = seed_set_size(label_set.size(), gamma);
    std::vector<NodeId> out;
    out.reserve(size);
    std::sample(label_set.begin(), label_set.end(), std::back_inserter(out), size, rng);
    std::shuffle(out.begin(), out.end(), rng);
    return out;
}

std::vector<int> hop_distances(const Graph &g, std::span<const NodeId> sources, int max_depth) {
    std::vector<int> dist(g.num_nodes(), -1);
    std::deque<NodeId> frontier;
    for (const NodeId s : sources) {
        if (dist[s] != 0) {
            dist[s] = 0;
            frontier.push_back(s);
        }
    }
    while (!frontier.empty()) {
        const NodeId u = frontier.front();
        frontier.pop_front();
        if (dist[u] >= max_depth)
            continue;
        for (const NodeId v : g.neighbors(u)) {
            if (dist[v] < 0) {
                dist[v] = dist[u] + 1;
                frontier.push_back(v);
            }
        }
    }
    return dist;
}

std::vector<NodeId> khop_pool(const Graph &g, std::span<const NodeId> seeds, int k, LabelId label) {
    if (k < 1)
        throw std::invalid_argument("khop_pool: k must be at least 1");
    const auto dist = hop_distances(g, seeds, k);
    std::vector<NodeId> pool;
    for (NodeId v = 0; v < g.num_nodes(); ++v)
        if (dist[v] == k && g.label(v) != kNoLabel && g.label(v) != label)
            pool.push_back(v);
    return pool;
}

std::optional<std::vector<NodeId>> sample_negatives(std::span<const NodeId> pool,
                                                    std::size_t target_size, Rng &rng) {
    if (target_size < 1)
        throw std::invalid_argument("sample_negatives: target size must be at least 1");
    if (pool.empty())
        return std::nullopt;
    std::vector<NodeId> out;
    out.reserve(std::min(pool.size(), target_size));
    std::sample(pool.begin(), pool.end(), std::back_inserter(out), target_size, rng);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t trial_seed(std::uint64_t base_seed, LabelId label, int trial_index) {
    // splitmix64 finalizer over a simple combination of the three inputs
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(base_seed);
    h = mix(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(label)));
    h = mix(h ^ static_cast<std::uint64_t>(static_cast<std::uint32_t>(trial_index)));
    return h;
}

std::vector<TrialPlan> build_trials(const Graph &g, LabelId label, double gamma, int k,
                                    int n_trials, std::uint64_t base_seed, int retry_budget) {
    if (n_trials < 1)
        throw std::invalid_argument("build_trials: n_trials must be at least 1");
    if (k < 1)
        throw std::invalid_argument("build_trials: k must be at least 1");
    const auto label_set = g.nodes_with_label(label);
    if (label_set.empty())
        throw ConfigError("label " + std::to_string(label) + " has no nodes");

    std::vector<TrialPlan> plans;
    plans.reserve(static_cast<std::size_t>(n_trials));
    for (int j = 0; j < n_trials; ++j) {
        TrialPlan plan;
        plan.label_id = label;
        plan.trial_index = j;
        plan.rng_seed = trial_seed(base_seed, label, j);
        plan.gamma = gamma;
        plan.k_hop = k;
        Rng rng(plan.rng_seed);
        bool found = false;
        for (int attempt = 1; attempt <= retry_budget; ++attempt) {
            auto seeds = sample_seeds(label_set, gamma, rng);
            const auto pool = khop_pool(g, seeds, k, label);
            auto negatives = sample_negatives(pool, seeds.size(), rng);
            if (!negatives)
                continue;
            plan.attempts = attempt;
            plan.seeds = std::move(seeds);
            plan.negatives = std::move(*negatives);
            found = true;
            break;
        }
        if (!found)
            throw ConfigError("label " + std::to_string(label) + ", k=" + std::to_string(k) +
                              ": no negative candidates after " + std::to_string(retry_budget) +
                              " seed draws");
        plans.push_back(std::move(plan));
    }
    return plans;
}

namespace {

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_nodes(std::ostream &out, const Graph &g, std::span<const NodeId> nodes) {
    if (nodes.empty()) {
        out << '-';
        return;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (i)
            out << ',';
        out << g.external_id(nodes[i]);
    }
}

std::vector<NodeId> parse_nodes(const std::string &field, const Graph &g, std::size_t line_no) {
    std::vector<NodeId> out;
    if (field == "-")
        return out;
    std::stringstream ss(field);
    std::string id;
    while (std::getline(ss, id, ',')) {
        const auto v = g.find_node(id);
        if (!v)
            throw ParseError("manifest", line_no, "unknown node '" + id + "'");
        out.push_back(*v);
    }
    return out;
}

template <typename T> T parse_number(const std::string &s, std::size_t line_no) {
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ParseError("manifest", line_no, "invalid number '" + s + "'");
    return value;
}

} // namespace

void write_manifest(std::ostream &out, const Graph &g, std::span<const TrialPlan> plans) {
    out << "# label\ttrial\trng_seed\tgamma\tk\tattempts\tseeds\tnegatives\n";
    for (const TrialPlan &p : plans) {
        out << p.label_id << '\t' << p.trial_index << '\t' << p.rng_seed << '\t'
            << format_double(p.gamma) << '\t' << p.k_hop << '\t' << p.attempts << '\t';
        write_nodes(out, g, p.seeds);
        out << '\t';
        write_nodes(out, g, p.negatives);
        out << '\n';
    }
}

std::vector<TrialPlan> read_manifest(std::istream &in, const Graph &g) {
    std::vector<TrialPlan> plans;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#')
            continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, '\t'))
            fields.push_back(field);
        if (fields.size() != 8)
            throw ParseError("manifest", line_no, "expected 8 tab separated fields");
        TrialPlan p;
        p.label_id = parse_number<LabelId>(fields[0], line_no);
        p.trial_index = parse_number<int>(fields[1], line_no);
        p.rng_seed = parse_number<std::uint64_t>(fields[2], line_no);
        p.gamma = parse_number<double>(fields[3], line_no);
        p.k_hop = parse_number<int>(fields[4], line_no);
        p.attempts = parse_number<int>(fields[5], line_no);
        p.seeds = parse_nodes(fields[6], g, line_no);
        p.negatives = parse_nodes(fields[7], g, line_no);
        plans.push_back(std::move(p));
    }
    return plans;
}

} // namespace custard
