#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rcm/exact_measures.hpp"
#include "rcm/graph_enum.hpp"

using namespace rcm;

namespace {

Rational R(const char* s) { return parse_rational(s); }

std::vector<Multigraph> small_graphs(int max_vertices, int max_edges) {
    return enumerate_graphs(GraphFamily{1, max_vertices, 0, max_edges, true, true, false, false});
}

} // namespace

TEST(RCPartition, SingleEdge) {
    const auto g = path_graph(2);
    for (const char* p : {"1/3", "1/2", "4/5"})
        for (const char* q : {"1/2", "2", "7/3"}) {
            Rational pp = R(p), qq = R(q);
            EXPECT_EQ(rc_partition(g, RCParams(pp, qq)), (1 - pp) * qq * qq + pp * qq);
        }
    EXPECT_EQ(rc_partition(g, RCParams(R("1/2"), R("2"))), 3);
}

TEST(RCPartition, QEqualOneIsOne) {
    for (const auto& g : small_graphs(4, 4)) ASSERT_EQ(rc_partition(g, RCParams(R("2/7"), R("1"))), 1);
}

TEST(RCPartition, MatchesDefinitionOracle) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 100; ++t) {
        auto g = oracle::random_multigraph(rng, 5, 7);
        ASSERT_EQ(rc_partition(g, RCParams(R("3/7"), R("5/2"))),
                  oracle::rc_partition(g.vertex_count(), oracle::edges_of(g), R("3/7"), R("5/2")));
    }
}

TEST(RCPartition, RejectsParametersOutsideRange) {
    EXPECT_THROW(RCParams(R("0"), R("2")), UsageError);
    EXPECT_THROW(RCParams(R("1"), R("2")), UsageError);
    EXPECT_THROW(RCParams(R("1/2"), R("0")), UsageError);
}

TEST(RCPartition, EqualsScaledMultivariateTutte) {
    for (const auto& g : small_graphs(4, 5))
        for (auto [p, q] : {std::pair{"1/2", "2"}, {"1/3", "3/2"}, {"5/7", "4"}}) {
            Rational pp = R(p), qq = R(q);
            std::vector<Rational> w(static_cast<std::size_t>(g.edge_count()), Rational(pp / (1 - pp)));
            ASSERT_EQ(rc_partition(g, RCParams(pp, qq)), pow(Rational(1 - pp), g.edge_count()) * multivariate_tutte<Rational>(g, qq, w))
                << describe(g);
        }
}

TEST(RCMeasureTable, SingleEdge) {
    auto t = rc_measure_table(path_graph(2), RCParams(R("1/2"), R("2")));
    EXPECT_EQ(t[0], Rational(2, 3));
    EXPECT_EQ(t[1], Rational(1, 3));
}

TEST(RCMeasureTable, SumsToOne) {
    for (const auto& g : small_graphs(4, 5)) ASSERT_EQ(rc_measure_table(g, RCParams(R("2/3"), R("3/2"))).total(), 1);
}

TEST(RCMeasureTable, QEqualOneIsProductMeasure) {
    auto g = Multigraph(3, {{0, 1}, {1, 2}, {2, 0}, {0, 0}});
    const Rational p = R("2/5");
    auto t = rc_measure_table(g, RCParams(p, R("1")));
    for (std::uint64_t sub = 1; sub < 16; ++sub) {
        Rational joint = t.probability([&](std::uint64_t w) { return (w & sub) == sub; });
        ASSERT_EQ(joint, pow(p, __builtin_popcountll(sub)));
    }
}

TEST(RCMeasureTable, EdgeCap) { EXPECT_THROW(rc_measure_table(Multigraph(2, std::vector<Edge>(21, Edge{0, 1})), RCParams(R("1/2"), R("2"))), ResourceError); }

TEST(RCConnection, Examples) {
    const RCParams params(R("1/2"), R("2"));
    EXPECT_EQ(rc_connection_prob(triangle(), params, 1, 1), 1);
    EXPECT_EQ(rc_connection_prob(path_graph(2), params, 0, 1), Rational(1, 3));
    EXPECT_EQ(rc_connection_prob(Multigraph(3, {{0, 1}}), params, 0, 2), 0);
}

TEST(RCConnection, MatchesDefinitionOracle) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 60; ++t) {
        auto g = oracle::random_multigraph(rng, 5, 6);
        if (g.vertex_count() < 2) continue;
        ASSERT_EQ(rc_connection_prob(g, RCParams(R("1/3"), R("3")), 0, g.vertex_count() - 1),
                  oracle::rc_connection(g.vertex_count(), oracle::edges_of(g), R("1/3"), R("3"), 0, g.vertex_count() - 1));
    }
}

TEST(PottsPartition, SingleEdge) {
    for (double beta : {0.0, 0.3, 1.7})
        EXPECT_NEAR(potts_partition(path_graph(2), PottsParams(beta, 2)), 2 * std::exp(beta) + 2, 1e-12);
    EXPECT_EQ(potts_partition_exact(path_graph(2), 2, Rational(3)), 8);
}

TEST(PottsPartition, ZeroBetaCountsStates) {
    EXPECT_DOUBLE_EQ(potts_partition(complete_graph(4), PottsParams(0.0, 3)), 81.0);
}

TEST(PottsPartition, AntiferromagneticTriangleApproachesColourings) {
    EXPECT_NEAR(potts_partition(triangle(), PottsParams(40.0, 3, {-1, -1, -1})), 6.0, 1e-12);
}

TEST(PottsPartition, StateCap) {
    EXPECT_THROW(potts_partition(Multigraph(15, {}), PottsParams(1.0, 3)), ResourceError);
}

TEST(PottsTwoPoint, Examples) {
    EXPECT_NEAR(potts_two_point(triangle(), PottsParams(0.0, 3), 0, 1), 0.0, 1e-15);
    EXPECT_NEAR(potts_two_point(triangle(), PottsParams(0.8, 3), 2, 2), 1 - 1.0 / 3, 1e-15);
    EXPECT_NEAR(potts_two_point(path_graph(2), PottsParams(std::log(2.0), 2), 0, 1), 1.0 / 6, 1e-15);
    EXPECT_EQ(potts_two_point_exact(path_graph(2), 2, Rational(2), 0, 1), Rational(1, 6));
}

TEST(PottsIsing, QTwoEquivalence) {
    // Potts at e^beta = s^2 against Ising with weight s^{sigma_x sigma_y}.
    const Rational s = R("3/2");
    for (const auto& g : small_graphs(5, 5)) {
        if (g.vertex_count() < 2) continue;
        const int x = 0, y = g.vertex_count() - 1;
        const Rational potts_same = potts_two_point_exact(g, 2, s * s, x, y) + Rational(1, 2);
        const auto [z, corr] = oracle::ising_correlation(g.vertex_count(), oracle::edges_of(g), s, x, y);
        ASSERT_EQ(potts_same, (1 + corr) / 2) << describe(g);
    }
}

TEST(PottsIsing, FieldMechanismMatchesDirectEnumeration) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 40; ++t) {
        auto g = oracle::random_multigraph(rng, 5, 6);
        for (auto [beta, h] : {std::pair{0.4, 0.0}, {0.7, 0.3}, {1.1, -0.5}}) {
            const double ours = ising_partition(g, beta, h);
            const double ref = oracle::ising_partition(g.vertex_count(), oracle::edges_of(g), beta, beta * h);
            ASSERT_NEAR(ours, ref, 1e-10 * ref) << describe(g);
        }
    }
}

TEST(PottsIsing, ExactIsingTableSumsToOne) {
    EXPECT_EQ(ising_table_exact(complete_graph(4), R("5/3")).total(), 1);
}

TEST(CorrConn, IdentityHoldsExactly) {
    EXPECT_TRUE(verify_corr_conn(complete_graph(4), R("1/2"), 2).pass);
    EXPECT_TRUE(verify_corr_conn(triangle(), R("3/4"), 3).pass);
    auto r = verify_corr_conn(Multigraph(3, {{0, 1}, {0, 1}, {2, 2}}), R("1/4"), 4);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.max_abs_deviation(), "0");
}

TEST(PartitionIdentity, Examples) {
    EXPECT_TRUE(verify_partition_identity(path_graph(2), R("1/2"), 2).pass);
    EXPECT_TRUE(verify_partition_identity(triangle(), R("2/3"), 3).pass);
}

TEST(PartitionIdentity, SmallPApproachesQToTheN) {
    const auto g = complete_graph(4);
    const Rational z = rc_partition(g, RCParams(R("1/1000000"), R("3")));
    EXPECT_LT(std::fabs(z.get_d() - 81.0), 1e-3);
}

TEST(TutteRCIdentity, SingleEdgeMatchesAtUV) {
    auto r = tutte_rc_identity(path_graph(2), R("1/2"), R("2"));
    EXPECT_TRUE(r.pass);
    EXPECT_FALSE(r.details["shifted_point_matches"].get<bool>());
    auto c = tutte_coordinates(R("1/2"), R("2"));
    EXPECT_EQ(c.u, 3);
    EXPECT_EQ(c.v, 2);
}

TEST(TutteRCIdentity, QEqualOne) {
    for (const auto& g : enumerate_graphs(GraphFamily{1, 4, 0, 5, true, true, true, false}))
        ASSERT_TRUE(tutte_rc_identity(g, R("2/9"), R("1")).pass) << describe(g);
}

TEST(TutteRCIdentity, RejectsDisconnectedGraphs) {
    EXPECT_THROW(tutte_rc_identity(Multigraph(3, {{0, 1}}), R("1/2"), R("2")), UsageError);
}

TEST(GroundStates, Examples) {
    auto frustrated = ground_states(triangle(), 2, {-1, -1, -1});
    EXPECT_TRUE(frustrated.frustrated);
    EXPECT_TRUE(frustrated.colourings.empty());
    EXPECT_EQ(ground_states(triangle(), 3, {-1, -1, -1}).colourings.size(), 6u);
    auto g = Multigraph(5, {{0, 1}, {2, 3}});
    EXPECT_EQ(ground_states(g, 3).colourings.size(), 27u);  // q^{k(G)} with k = 3
}

TEST(ZeroTemperature, Examples) {
    auto tri = zero_temperature_check(triangle(), 3);
    EXPECT_TRUE(tri.pass);
    EXPECT_EQ(tri.details["chromatic_value"].get<double>(), 6.0);
    EXPECT_TRUE(zero_temperature_check(triangle(), 2).pass);  // chi = 0
    EXPECT_TRUE(zero_temperature_check(path_graph(2), 2).pass);
    EXPECT_FALSE(zero_temperature_check(triangle(), 3, {1.0, 2.0}).pass);  // beta too small
}
