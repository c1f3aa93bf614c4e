#include "custard/errors.hpp"
#include "custard/graph.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <sstream>

using namespace custard;

namespace {

LoadedGraph load(const std::string &edges, const std::string &labels) {
    std::istringstream e(edges);
    std::istringstream l(labels);
    return load_graph(e, l);
}

} // namespace

TEST_SUITE("graph") {

TEST_CASE("minimal graph") {
    const auto loaded = load("a b\n", "a 0\n");
    const Graph &g = loaded.graph;
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_edges() == 1);
    CHECK(g.num_directed_pairs() == 2);
    const NodeId a = *g.find_node("a");
    const NodeId b = *g.find_node("b");
    CHECK(g.has_edge(a, b));
    CHECK(g.has_edge(b, a));
    CHECK(g.label(a) == 0);
    CHECK(g.label(b) == kNoLabel);
    CHECK(g.label_name(0) == "0");
    CHECK(loaded.report.raw_nodes == 2);
    CHECK(loaded.report.raw_edges == 1);
    CHECK(loaded.report.retained_nodes == 2);
    CHECK(loaded.report.undirected_edges == 1);
}

TEST_CASE("reverse duplicates collapse and an isolated self-loop node is removed") {
    const auto loaded = load("a b\nb a\nc c\n", "");
    const Graph &g = loaded.graph;
    CHECK(g.num_nodes() == 2);
    CHECK(g.num_edges() == 1);
    CHECK_FALSE(g.find_node("c").has_value());
    CHECK(loaded.report.raw_nodes == 3);
    CHECK(loaded.report.self_loops_dropped == 1);
    CHECK(loaded.report.isolated_removed == 1);
}

TEST_CASE("comments, blank lines and weights") {
    const auto loaded = load("# header\n\nx y 2.5\ny z\n", "# id label\nx red\nz blue\n");
    const Graph &g = loaded.graph;
    const NodeId x = *g.find_node("x");
    const NodeId y = *g.find_node("y");
    const NodeId z = *g.find_node("z");
    CHECK(g.edge_weight(x, y) == 2.5);
    CHECK(g.edge_weight(y, x) == 2.5);
    CHECK(g.edge_weight(y, z) == 1.0);
    CHECK(g.edge_weight(x, z) == 0.0);
    CHECK(g.degree(y) == 3.5);
    CHECK(g.num_labels() == 2);
    CHECK(g.label_name(g.label(x)) == "red");
    CHECK(g.label_name(g.label(z)) == "blue");
    CHECK(g.num_labeled_nodes() == 2);
    CHECK(g.external_id(x) == "x");
}

TEST_CASE("conflicting duplicate weights keep the maximum") {
    const Graph g = load("a b 1\nb a 3\na b 2\n", "").graph;
    CHECK(g.edge_weight(0, 1) == 3.0);
    CHECK(g.num_edges() == 1);
}

TEST_CASE("zero-weight rows carry no edge") {
    const auto loaded = load("a b 0\nb c\n", "");
    CHECK(loaded.graph.num_nodes() == 2);
    CHECK_FALSE(loaded.graph.find_node("a").has_value());
}

TEST_CASE("neighbors are sorted and degrees are weighted") {
    std::mt19937_64 rng(7);
    testing::RandomGraphSpec spec;
    spec.random_weights = true;
    for (int rep = 0; rep < 20; ++rep) {
        const Graph g = testing::random_connected_graph(rng, spec);
        for (NodeId u = 0; u < g.num_nodes(); ++u) {
            const auto nb = g.neighbors(u);
            CHECK(std::is_sorted(nb.begin(), nb.end()));
            double d = 0.0;
            for (std::size_t i = 0; i < nb.size(); ++i) {
                CHECK(nb[i] != u);
                CHECK(g.edge_weight(nb[i], u) == g.edge_weights(u)[i]);
                d += g.edge_weights(u)[i];
            }
            CHECK(g.degree(u) == doctest::Approx(d).epsilon(1e-15));
        }
    }
}

TEST_CASE("parse errors carry the line number") {
    SUBCASE("too many fields") {
        try {
            load("a b\na b 1 extra\n", "");
            FAIL("expected ParseError");
        } catch (const ParseError &e) {
            CHECK(e.line() == 2);
        }
    }
    SUBCASE("single field") { CHECK_THROWS_AS(load("a\n", ""), ParseError); }
    SUBCASE("bad weight") { CHECK_THROWS_AS(load("a b heavy\n", ""), ParseError); }
    SUBCASE("negative weight") { CHECK_THROWS_AS(load("a b -1\n", ""), ParseError); }
    SUBCASE("infinite weight") { CHECK_THROWS_AS(load("a b inf\n", ""), ParseError); }
    SUBCASE("label row") {
        try {
            load("a b\n", "a 0\nb\n");
            FAIL("expected ParseError");
        } catch (const ParseError &e) {
            CHECK(e.line() == 2);
        }
    }
}

TEST_CASE("validation errors") {
    SUBCASE("unknown node in labels") { CHECK_THROWS_AS(load("a b\n", "q 0\n"), ValidationError); }
    SUBCASE("conflicting label") { CHECK_THROWS_AS(load("a b\n", "a 0\na 1\n"), ValidationError); }
    SUBCASE("empty after preprocessing") { CHECK_THROWS_AS(load("a a\n", ""), ValidationError); }
    SUBCASE("nothing at all") { CHECK_THROWS_AS(load("# nothing\n", ""), ValidationError); }
}

TEST_CASE("repeating a label row is accepted") {
    const Graph g = load("a b\n", "a 0\na 0\n").graph;
    CHECK(g.num_labeled_nodes() == 1);
}

TEST_CASE("builder rejects bad edges") {
    GraphBuilder b(3);
    CHECK_THROWS_AS(b.add_edge(0, 5), std::out_of_range);
    CHECK_THROWS_AS(b.add_edge(0, 1, -2.0), std::invalid_argument);
}

TEST_CASE("self loops can be retained") {
    GraphBuilder b(1);
    b.add_edge(0, 0);
    BuildOptions opts;
    opts.retain_self_loops = true;
    const Graph g = b.build(opts);
    CHECK(g.num_nodes() == 1);
    CHECK(g.edge_weight(0, 0) == 1.0);
    CHECK(g.degree(0) == 1.0);
}

TEST_CASE("rebuilding from a graph's own edges is a fixed point") {
    std::mt19937_64 rng(11);
    const Graph g = testing::random_connected_graph(rng);
    GraphBuilder b(g.num_nodes());
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        for (const NodeId v : g.neighbors(u))
            b.add_edge(u, v, g.edge_weight(u, v));
    const Graph h = b.build();
    CHECK(h.num_nodes() == g.num_nodes());
    CHECK(h.num_edges() == g.num_edges());
    CHECK(std::ranges::equal(h.offsets(), g.offsets()));
    CHECK(std::ranges::equal(h.targets(), g.targets()));
    CHECK(std::ranges::equal(h.weights(), g.weights()));
}

TEST_CASE("with_added_edges only adds what is missing") {
    const Graph g = testing::toy_graph();
    const NodeId h = *g.find_node("h");
    const NodeId d = *g.find_node("d");
    const NodeId e = *g.find_node("e");
    const NodeId targets[] = {d, e, h};
    std::size_t added = 0;
    const Graph aug = g.with_added_edges(h, targets, 1.0, &added);
    CHECK(added == 1);
    CHECK(aug.num_edges() == g.num_edges() + 1);
    CHECK(aug.has_edge(h, d));
    CHECK(aug.has_edge(d, h));
    CHECK(aug.degree(h) == g.degree(h) + 1.0);
    CHECK(aug.edge_weight(h, h) == 0.0);
    CHECK(aug.external_id(h) == "h");
}

TEST_CASE("cora statistics") {
    const auto loaded = load_graph(std::filesystem::path(CUSTARD_DATA_DIR "/cora/cora.edges"),
                                   std::filesystem::path(CUSTARD_DATA_DIR "/cora/cora.labels"));
    const Graph &g = loaded.graph;
    CHECK(g.num_nodes() == 2708);
    CHECK(g.num_edges() == 5278);
    CHECK(g.num_directed_pairs() == 10556);
    CHECK(g.num_labels() == 7);
    CHECK(g.num_labeled_nodes() == 2708);
    CHECK(loaded.report.retained_nodes == 2708);

    // loading twice gives the same structure
    const auto again = load_graph(std::filesystem::path(CUSTARD_DATA_DIR "/cora/cora.edges"),
                                  std::filesystem::path(CUSTARD_DATA_DIR "/cora/cora.labels"));
    CHECK(std::ranges::equal(again.graph.targets(), g.targets()));
    for (NodeId u = 0; u < g.num_nodes(); ++u)
        REQUIRE(again.graph.external_id(u) == g.external_id(u));
}

TEST_CASE("missing file") {
    CHECK_THROWS(load_graph(std::filesystem::path("/nonexistent/x.edges"),
                            std::filesystem::path("/nonexistent/x.labels")));
}

}
