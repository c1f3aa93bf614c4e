#include "custard/kernels.hpp"
#include "custard/transition.hpp"
#include "test_support.hpp"

#include <doctest.h>

using namespace custard;

TEST_SUITE("kernels") {

TEST_CASE("serial and OpenMP kernels agree") {
    std::mt19937_64 rng(5);
    testing::RandomGraphSpec spec;
    spec.min_nodes = 200;
    spec.max_nodes = 400;
    spec.extra_edge_prob = 0.02;
    spec.random_weights = true;
    const Graph g = testing::random_connected_graph(rng, spec);
    const TransitionMatrix t = symmetric_normalize(g);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(g.num_nodes()), z(g.num_nodes());
    for (auto &v : x)
        v = unit(rng);
    for (auto &v : z)
        v = unit(rng);

    std::vector<double> ys(x.size()), yp(x.size());
    kernels::serial::spmv(t, x, ys);
    kernels::omp::spmv(t, x, yp);
    // each output row is a private sum, so the results match bit for bit
    CHECK(ys == yp);

    CHECK(kernels::omp::dot(x, z) == doctest::Approx(kernels::serial::dot(x, z)).epsilon(1e-13));
    CHECK(kernels::omp::sum(x) == doctest::Approx(kernels::serial::sum(x)).epsilon(1e-13));
    CHECK(kernels::omp::l1_distance(x, z) ==
          doctest::Approx(kernels::serial::l1_distance(x, z)).epsilon(1e-13));

    auto xs = x;
    auto xp = x;
    kernels::serial::scale(xs, 0.3);
    kernels::omp::scale(xp, 0.3);
    CHECK(xs == xp);
}

TEST_CASE("spmv matches a dense product") {
    std::mt19937_64 rng(9);
    const Graph g = testing::random_connected_graph(rng);
    const TransitionMatrix t = column_stochastic(g);
    const Eigen::MatrixXd a = testing::dense_column_stochastic(testing::dense_adjacency(g));
    Eigen::VectorXd x = Eigen::VectorXd::Random(g.num_nodes());
    std::vector<double> xs(x.data(), x.data() + x.size()), y(x.size());
    for (const Backend b : {Backend::Serial, Backend::OpenMP}) {
        kernels::spmv(b, t, xs, y);
        const Eigen::VectorXd expect = a * x;
        for (NodeId u = 0; u < g.num_nodes(); ++u)
            CHECK(y[u] == doctest::Approx(expect(u)).epsilon(1e-14));
    }
}

TEST_CASE("small reductions") {
    const std::vector<double> a{1.0, -2.0, 3.0};
    const std::vector<double> b{0.5, 0.5, 0.5};
    for (const Backend be : {Backend::Serial, Backend::OpenMP}) {
        CHECK(kernels::dot(be, a, b) == 1.0);
        CHECK(kernels::sum(be, a) == 2.0);
        CHECK(kernels::l1_distance(be, a, b) == 0.5 + 2.5 + 2.5);
    }
    CHECK(to_string(Backend::OpenMP) == "openmp");
}

}
