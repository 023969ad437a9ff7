#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "covertime/chains.hpp"
#include "covertime/graph.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

using namespace covertime;

namespace {

Graph random_connected(int n, double p, std::uint64_t seed) {
    return generate_graph(GraphKind::erdos_renyi, n, p, seed);
}

} // namespace

TEST_CASE("absorbing system replaces target rows with basis rows") {
    const TransitionMatrix m = transition_matrix(fixtures::diamond4());
    const double third = 1.0 / 3.0;

    const AbsorbingSystem single = absorbing_system(m, {3});
    CHECK(single.dense() == std::vector<std::vector<double>>{{0, third, third, third},
                                                             {0.5, 0, 0.5, 0},
                                                             {third, third, 0, third},
                                                             {0, 0, 0, 1}});

    const AbsorbingSystem pair = absorbing_system(m, {3, 1});
    CHECK(pair.dense() == std::vector<std::vector<double>>{{0, third, third, third},
                                                           {0, 1, 0, 0},
                                                           {third, third, 0, third},
                                                           {0, 0, 0, 1}});
    CHECK(pair.targets() == std::vector<int>{1, 3});

    const AbsorbingSystem everything = absorbing_system(m, {0, 1, 2, 3});
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(everything.entry(r, c) == (r == c ? 1.0 : 0.0));

    CHECK_THROWS_AS(absorbing_system(m, {}), QueryError);
    CHECK_THROWS_AS(absorbing_system(m, {4}), QueryError);
}

TEST_CASE("absorbed mass never decreases") {
    const TransitionMatrix m = transition_matrix(random_connected(9, 0.35, 21));
    const AbsorbingSystem system = absorbing_system(m, {2, 5});
    std::vector<double> occupancy(m.size(), 0.0), next;
    occupancy[0] = 1.0;
    double previous = 0.0;
    for (int t = 0; t < 400; ++t) {
        system.step(occupancy, next);
        occupancy.swap(next);
        const double absorbed = system.absorbed_mass(occupancy);
        CHECK(absorbed >= previous - 1e-12);
        previous = absorbed;
    }
}

TEST_CASE("hitting CDF matches the closed form on the four-node example") {
    const TransitionMatrix m = transition_matrix(fixtures::diamond4());
    const DistributionSeries series = hitting_cdf(m, 0, 3, 60);
    CHECK(series.at(1) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    for (int t = 1; t <= 60; ++t) {
        CHECK(std::abs(series.at(t) - fixtures::diamond4_hitting_cdf(t)) < 1e-10);
    }
    CHECK(series.at(60) > 1.0 - 1e-6);
}

TEST_CASE("hitting CDF edge cases") {
    const TransitionMatrix k2 = transition_matrix(generate_graph(GraphKind::complete, 2));
    const DistributionSeries forced = hitting_cdf(k2, 0, 1, 10);
    for (int t = 1; t <= 10; ++t) CHECK(forced.at(t) == 1.0);

    const Graph triangle = generate_graph(GraphKind::complete, 3);
    const TransitionMatrix m3 = transition_matrix(triangle);
    const DistributionSeries series = hitting_cdf(m3, 0, 1, 3);
    const auto expected = testoracle::hitting_cdf(triangle, 0, 1, 3);
    for (int t = 1; t <= 3; ++t) CHECK(series.at(t) == doctest::Approx(expected[t - 1]).epsilon(1e-14));
    CHECK(expected == std::vector<double>{0.5, 0.75, 0.875});

    CHECK_THROWS_AS(hitting_cdf(m3, 1, 1, 5), QueryError);
    CHECK_THROWS_AS(hitting_cdf(m3, 0, 1, 0), QueryError);
    CHECK_THROWS_AS(hitting_cdf(m3, 0, 9, 5), QueryError);
}

TEST_CASE("union hitting CDF on the four-node example is 1 - 3^-t") {
    const TransitionMatrix m = transition_matrix(fixtures::diamond4());
    const DistributionSeries series = union_hitting_cdf(m, 0, {1, 3}, 60);
    CHECK(series.at(1) == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(series.at(2) == doctest::Approx(8.0 / 9).epsilon(1e-14));
    for (int t = 1; t <= 60; ++t) {
        CHECK(std::abs(series.at(t) - (1.0 - std::pow(3.0, -t))) < 1e-12);
    }
}

TEST_CASE("union hitting reduces to hitting for a singleton and sums per-target mass") {
    const Graph g = random_connected(8, 0.4, 5);
    const TransitionMatrix m = transition_matrix(g);
    const DistributionSeries single = hitting_cdf(m, 0, 4, 120);
    const DistributionSeries as_union = union_hitting_cdf(m, 0, {4}, 120);
    CHECK(single.cdf == as_union.cdf);

    // the union value is exactly the sum of per-target absorbed masses
    const std::vector<int> targets{2, 5, 7};
    const AbsorbingSystem system = absorbing_system(m, targets);
    std::vector<double> occupancy(m.size(), 0.0), next;
    occupancy[0] = 1.0;
    const DistributionSeries series = union_hitting_cdf(m, 0, targets, 50);
    for (int t = 1; t <= 50; ++t) {
        system.step(occupancy, next);
        occupancy.swap(next);
        double split = 0.0;
        for (int target : targets) split += occupancy[target];
        CHECK(split == series.at(t));
    }

    const TransitionMatrix k2 = transition_matrix(generate_graph(GraphKind::complete, 2));
    CHECK(union_hitting_cdf(k2, 0, {1}, 1).at(1) == 1.0);

    CHECK_THROWS_AS(union_hitting_cdf(m, 0, {}, 10), QueryError);
    CHECK_THROWS_AS(union_hitting_cdf(m, 0, {0, 3}, 10), QueryError);
}

TEST_CASE("pmf from cdf") {
    const TransitionMatrix m = transition_matrix(fixtures::diamond4());
    const PmfSeries pmf = pmf_from_cdf(hitting_cdf(m, 0, 3, 200));
    // differences of the printed closed form: F(1) = 1/3, F(2) = 4/9
    CHECK(pmf.at(1) == doctest::Approx(1.0 / 3).epsilon(1e-13));
    CHECK(pmf.at(2) == doctest::Approx(1.0 / 9).epsilon(1e-12));
    double total = 0.0;
    for (double p : pmf.pmf) {
        CHECK(p >= -1e-12);
        total += p;
    }
    CHECK(total + pmf.tail_mass == doctest::Approx(1.0).epsilon(1e-9));

    const DistributionSeries constant{SeriesKind::hitting, {1.0, 1.0, 1.0}};
    const PmfSeries point = pmf_from_cdf(constant);
    CHECK(point.pmf == std::vector<double>{1.0, 0.0, 0.0});
    CHECK(point.tail_mass == 0.0);

    const PmfSeries union_pmf = pmf_from_cdf(union_hitting_cdf(m, 0, {1, 3}, 30));
    for (int t = 1; t <= 30; ++t) {
        CHECK(union_pmf.at(t) == doctest::Approx(2.0 * std::pow(3.0, -t)).epsilon(1e-10));
    }
}

TEST_CASE("commute chain has the documented block structure") {
    const TransitionMatrix m = transition_matrix(fixtures::diamond4());
    const CommuteChain chain = commute_chain(m, 0, 3);
    CHECK(chain.dimension() == 8);

    const double third = 1.0 / 3.0;
    const std::vector<std::vector<double>> expected{
        {0, third, third, third, 0, 0, 0, 0},
        {0.5, 0, 0.5, 0, 0, 0, 0, 0},
        {third, third, 0, third, 0, 0, 0, 0},
        {0, 0, 0, 0, 0, 0, 0, 1},
        {0, 0, 0, 0, 1, 0, 0, 0},
        {0, 0, 0, 0, 0.5, 0, 0.5, 0},
        {0, 0, 0, 0, third, third, 0, third},
        {0, 0, 0, 0, 0.5, 0, 0.5, 0},
    };
    CHECK(chain.dense() == expected);

    // the copied source node is always absorbing
    const TransitionMatrix mr = transition_matrix(random_connected(6, 0.5, 2));
    const CommuteChain generic = commute_chain(mr, 2, 4);
    for (int c = 0; c < generic.dimension(); ++c) {
        CHECK(generic.entry(6 + 2, c) == (c == 6 + 2 ? 1.0 : 0.0));
    }

    CHECK_THROWS_AS(commute_chain(m, 1, 1), QueryError);
}

TEST_CASE("commute chain occupancy matches the printed closed form") {
    const TransitionMatrix m = transition_matrix(fixtures::diamond4());
    const CommuteChain chain = commute_chain(m, 0, 3);
    std::vector<double> occupancy(8, 0.0), next;
    occupancy[0] = 1.0;
    for (int t = 1; t <= 60; ++t) {
        chain.step(occupancy, next);
        occupancy.swap(next);
        CHECK(std::abs(occupancy[4] - fixtures::diamond4_commute_occupancy(t)) < 1e-9);
    }
}

TEST_CASE("commute CDF and the forced two-step round trip") {
    const TransitionMatrix m = transition_matrix(fixtures::diamond4());
    const DistributionSeries series = commute_cdf(m, 0, 3, 40);
    CHECK(series.at(1) == 0.0);
    CHECK(series.at(2) == doctest::Approx(1.0 / 6).epsilon(1e-14));

    const TransitionMatrix k2 = transition_matrix(generate_graph(GraphKind::complete, 2));
    const DistributionSeries forced = commute_cdf(k2, 0, 1, 6);
    CHECK(forced.at(1) == 0.0);
    for (int t = 2; t <= 6; ++t) CHECK(forced.at(t) == 1.0);

    // a round trip needs at least two steps on any graph
    for (std::uint64_t seed : {1, 2, 3}) {
        const TransitionMatrix mr = transition_matrix(random_connected(7, 0.45, seed));
        CHECK(commute_cdf(mr, 0, 3, 1).at(1) == 0.0);
    }
    CHECK_THROWS_AS(commute_cdf(m, 2, 2, 10), QueryError);
}

TEST_CASE("convolution PMF agrees with the chain construction") {
    const TransitionMatrix m = transition_matrix(fixtures::diamond4());
    const PmfSeries pmf = commute_pmf_convolution(m, 0, 3, 40);
    CHECK(pmf.at(1) == 0.0);
    CHECK(pmf.at(2) == doctest::Approx(1.0 / 6).epsilon(1e-14));

    const TransitionMatrix k2 = transition_matrix(generate_graph(GraphKind::complete, 2));
    const PmfSeries forced = commute_pmf_convolution(k2, 0, 1, 8);
    CHECK(forced.at(2) == 1.0);
    CHECK(forced.tail_mass == doctest::Approx(0.0));

    // cross-method identity over all pairs of small random graphs
    for (std::uint64_t seed : {11, 12, 13}) {
        const Graph g = random_connected(6 + static_cast<int>(seed % 3), 0.45, seed);
        const TransitionMatrix mr = transition_matrix(g);
        for (int i = 0; i < g.node_count(); ++i) {
            for (int j = 0; j < g.node_count(); ++j) {
                if (i == j) continue;
                const DistributionSeries chain = commute_cdf(mr, i, j, 250);
                const PmfSeries conv = commute_pmf_convolution(mr, i, j, 250);
                double cumulative = 0.0;
                for (int t = 1; t <= 250; ++t) {
                    cumulative += conv.at(t);
                    CHECK(std::abs(cumulative - chain.at(t)) < 1e-10);
                }
            }
        }
    }
    CHECK_THROWS_AS(commute_pmf_convolution(m, 1, 1, 10), QueryError);
}

TEST_CASE("hitting CDF reaches one within 200n steps") {
    for (const auto& g : {generate_graph(GraphKind::path, 16), random_connected(30, 0.15, 9),
                          generate_graph(GraphKind::cycle, 40), random_connected(50, 0.12, 6)}) {
        const TransitionMatrix m = transition_matrix(g);
        const int horizon = 200 * g.node_count();
        const DistributionSeries series = hitting_cdf(m, 0, g.node_count() - 1, horizon);
        CHECK(series.at(horizon) > 1.0 - 1e-6);
        CHECK(is_valid_cdf(series));
    }
    // end-to-end on a 50-node path mixes like n^2, so 200n is not enough
    // there (the residual is still ~7e-3); 800n is
    const TransitionMatrix slow = transition_matrix(generate_graph(GraphKind::path, 50));
    CHECK(hitting_cdf(slow, 0, 49, 40000).at(40000) > 1.0 - 1e-6);
}
