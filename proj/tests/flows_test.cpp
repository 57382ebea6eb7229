#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rcm/flows.hpp"
#include "rcm/graph_enum.hpp"

using namespace rcm;

namespace {

Rational R(const char* s) { return parse_rational(s); }

Multigraph double_edge() { return Multigraph(2, {{0, 1}, {0, 1}}); }

} // namespace

TEST(CountFlows, Examples) {
    EXPECT_EQ(count_flows(triangle(), 3), 2u);
    EXPECT_EQ(count_flows(triangle(), 2), 1u);  // all edges carry 1
    EXPECT_EQ(count_flows(path_graph(2), 5), 0u);
    EXPECT_EQ(count_flows(Multigraph(1, {{0, 0}}), 4), 3u);
    EXPECT_EQ(count_flows(Multigraph(3, {}), 2), 1u);
    EXPECT_EQ(count_flows(complete_graph(4), 3), 0u);  // K4 has no nowhere-zero 3-flow
    EXPECT_EQ(count_flows(complete_graph(4), 4), 6u);
}

TEST(CountFlows, MatchesEnumerationOracleUnderRandomOrientations) {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 200; ++t) {
        auto g = oracle::random_multigraph(rng, 5, 7);
        std::vector<bool> rev(static_cast<std::size_t>(g.edge_count()));
        oracle::EdgeList oriented;
        for (int i = 0; i < g.edge_count(); ++i) {
            rev[i] = rng() & 1u;
            auto e = g.edge(i);
            oriented.emplace_back(rev[i] ? e.v : e.u, rev[i] ? e.u : e.v);
        }
        for (int q = 2; q <= 5; ++q)
            ASSERT_EQ(count_flows(OrientedMultigraph(g, rev), q), static_cast<std::uint64_t>(oracle::flows(g.vertex_count(), oriented, q)))
                << describe(g) << " q=" << q;
    }
}

TEST(CountFlows, CapIsAResourceError) {
    EXPECT_THROW(count_flows(Multigraph(2, std::vector<Edge>(30, Edge{0, 1})), 5, 1000), ResourceError);
    EXPECT_THROW(count_flows(triangle(), 1), UsageError);
}

TEST(OrientationInvariance, HoldsOnEnumeratedGraphs) {
    for (const auto& g : enumerate_graphs(GraphFamily{1, 4, 0, 5, true, true, false, false}))
        for (int q : {3, 4}) ASSERT_TRUE(orientation_invariance_check(g, q, 5, 1).pass) << describe(g);
}

TEST(FlowEvaluator, AgreesWithCountingAndPolynomial) {
    std::mt19937_64 rng(23);
    FlowEvaluator ev;
    for (int t = 0; t < 100; ++t) {
        auto g = oracle::random_multigraph(rng, 5, 6);
        for (int q = 2; q <= 4; ++q) {
            ASSERT_EQ(ev.flow_count(g, q), Integer(static_cast<unsigned long>(count_flows(g, q)))) << describe(g);
            ASSERT_NEAR(ev.flow_value(g, q), static_cast<double>(count_flows(g, q)), 1e-9);
        }
    }
}

TEST(FlowEvaluator, LiteralSignDiffersOnOddRank) {
    FlowEvaluator ev;
    EXPECT_DOUBLE_EQ(ev.flow_value(double_edge(), 3), 2.0);
    EXPECT_DOUBLE_EQ(ev.uncorrected_value(double_edge(), 3), -2.0);
    EXPECT_DOUBLE_EQ(ev.uncorrected_value(triangle(), 3), ev.flow_value(triangle(), 3));
}

TEST(PoissonSample, RealizeCopiesMultiplicities) {
    const auto g = path_graph(3);
    PoissonGraphSample s{&g, {2, 0}, std::make_pair(0, 2)};
    auto h = s.realize();
    EXPECT_EQ(h.edge_count(), 3);
    EXPECT_EQ(h.edges()[2].u, 0);
    EXPECT_EQ(h.edges()[2].v, 2);
    EXPECT_EQ(s.realize_without_extra().edge_count(), 2);
    EXPECT_EQ(s.edge_total(), 2);
    Rng rng(1);
    EXPECT_THROW(poisson_sample(g, -1.0, rng), UsageError);
    EXPECT_THROW(poisson_sample(g, 1.0, rng, std::make_pair(0, 9)), UsageError);
}

TEST(PoissonSample, MeanMultiplicity) {
    const auto g = complete_graph(4);
    Rng rng(2);
    double total = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) total += poisson_sample(g, 0.7, rng).edge_total();
    const double mean = total / n, expected = 0.7 * 6;
    EXPECT_NEAR(mean, expected, 5 * std::sqrt(expected / n));
}

TEST(FlowCorrelation, SingleEdgeAtTwoIsHyperbolicTangent) {
    // One base edge with m ~ Poisson(lambda) copies: the ratio is P(m odd)/P(m even).
    const double lambda = 0.6;
    McConfig cfg{9, 40000};
    auto est = flow_correlation_mc(path_graph(2), lambda, 2, 0, 1, cfg);
    EXPECT_NEAR(est.value, std::tanh(lambda), 5 * est.std_error);
    auto even = even_ratio_mc(path_graph(2), lambda, 0, 1, cfg);
    EXPECT_DOUBLE_EQ(even.value, est.value);
}

TEST(FlowCorrelation, RejectsBadArguments) {
    EXPECT_THROW(flow_correlation_mc(triangle(), 0.5, 3, 1, 1, McConfig{}), UsageError);
    EXPECT_THROW(flow_correlation_mc(triangle(), 0.5, 1, 0, 1, McConfig{}), UsageError);
    EXPECT_THROW(even_ratio_mc(triangle(), 0.5, 0, 1, McConfig{0, 0}), UsageError);
}

TEST(FlowConnection, IntensityInvertsEdgeProbability) {
    for (double q : {0.5, 2.0, 3.0}) EXPECT_NEAR(1 - std::exp(-intensity_for(0.3, q) * q), 0.3, 1e-15);
}

TEST(FlowConnection, MatchesExactConnectionOnSmallGraphs) {
    McConfig cfg{4, 30000};
    for (auto [g, q] : {std::pair{path_graph(2), 2}, {triangle(), 3}}) {
        const double exact = (q - 1) * rc_connection_prob(g, RCParams(R("1/2"), Rational(q)), 0, 1).get_d();
        auto est = flow_connection_mc(g, 0.5, q, 0, 1, cfg);
        EXPECT_NEAR(est.value, exact, 5 * est.std_error) << describe(g);
    }
}

TEST(Compflow, IdentityHoldsWithinTailBound) {
    auto tri = compflow_identity(triangle(), 0.5, 3);
    EXPECT_TRUE(tri.report.pass);
    EXPECT_LT(tri.tail_bound, 1e-8);
    EXPECT_TRUE(compflow_identity(Multigraph(2, {}), 0.5, 2).report.pass);
    EXPECT_TRUE(compflow_identity(path_graph(3), 0.3, 2).report.pass);
}

TEST(Compflow, CoarseTruncationWidensTheBound) {
    auto r = compflow_identity(triangle(), 0.9, 3, 1);
    EXPECT_TRUE(r.report.pass);
    EXPECT_GT(r.tail_bound, 1e-3);
    // Truncation drops non-negative terms, so the truncated side falls short.
    EXPECT_GT(r.report.details["Z_RC"].get<double>(), r.report.details["rhs_truncated"].get<double>());
}

TEST(Compflow, WeightedPoissonTailMatchesDirectSum) {
    for (double lambda : {0.2, 1.0, 3.0})
        for (double a : {1.0, 2.0})
            for (int M : {0, 3, 8}) {
                double direct = 0;
                for (int m = M + 1; m < 200; ++m) direct += std::exp(-lambda + m * std::log(lambda * a) - std::lgamma(m + 1.0));
                const double tail = detail::weighted_poisson_tail(lambda, a, M);
                EXPECT_GE(tail, direct * (1 - 1e-12));
                EXPECT_LE(tail, direct * (1 + 1e-9) + 1e-300);
            }
}

TEST(Separators, PathAndCycle) {
    auto p = separating_sets(path_graph(3), 0, 2);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p[0].vertices, 0b010u);
    EXPECT_TRUE(p[0].minimal);
    auto c = separating_sets(cycle_graph(4), 0, 2);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].vertices, 0b1010u);
    EXPECT_TRUE(separates(Multigraph(3, {{0, 1}}), 0, 0, 2));
    EXPECT_TRUE(separating_sets(path_graph(2), 0, 1).empty());
}

TEST(Separators, NonMinimalSetsAreFlagged) {
    // 0-1-2-3: {1,2} separates 0 from 3 but is not minimal.
    auto s = separating_sets(path_graph(4), 0, 3);
    int minimal = 0;
    for (const auto& w : s) minimal += w.minimal;
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(minimal, 2);
}

TEST(Simon, HoldsOnSmallGraphsAtProvenValues) {
    for (const auto& g : enumerate_graphs(GraphFamily{3, 5, 2, 6, false, false, true, false}))
        for (const char* q : {"1", "2"}) {
            auto r = simon_check(g, R("1/2"), R(q), 0, g.vertex_count() - 1);
            ASSERT_TRUE(r.pass) << describe(g);
            ASSERT_FALSE(r.informational);
        }
    EXPECT_TRUE(simon_check(cycle_graph(4), R("1/2"), R("3"), 0, 2).informational);
}
