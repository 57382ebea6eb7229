#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "rcm/coupling.hpp"
#include "rcm/graph_enum.hpp"

using namespace rcm;

namespace {

Rational R(const char* s) { return parse_rational(s); }

std::vector<Multigraph> coupling_family() {
    return enumerate_graphs(GraphFamily{1, 3, 0, 4, true, true, false, false});
}

} // namespace

TEST(JointTable, SingleEdgeByHand) {
    // States (spin index * 2 + bond): equal spins with closed or open bond,
    // unequal spins only with a closed bond.
    auto t = joint_table(path_graph(2), R("1/2"), 2);
    // Weights: (00,closed)=1/2, (00,open)=1/2, (10,closed)=1/2, (01,closed)=1/2,
    // (11,closed)=1/2, (11,open)=1/2; total 3.
    EXPECT_EQ(t[0 * 2 + 0], Rational(1, 6));
    EXPECT_EQ(t[0 * 2 + 1], Rational(1, 6));
    EXPECT_EQ(t[1 * 2 + 1], 0);
    EXPECT_EQ(t[1 * 2 + 0], Rational(1, 6));
    EXPECT_EQ(t.total(), 1);
}

TEST(JointTable, MarginalsAreRandomClusterAndPotts) {
    for (const auto& g : coupling_family())
        for (int q : {2, 3}) {
            const Rational p = R("2/5");
            auto joint = joint_table(g, p, q);
            ASSERT_EQ(joint.bond_marginal(), rc_measure_table(g, RCParams(p, Rational(q)))) << describe(g);
            ASSERT_EQ(joint.spin_marginal(), potts_table_exact(g, q, Rational(1) / (Rational(1) - p))) << describe(g);
        }
}

TEST(JointTable, SpinsGivenBondsAreUniformPerCluster) {
    const auto g = Multigraph(3, {{0, 1}, {1, 2}});
    const int q = 3;
    auto joint = joint_table(g, R("1/3"), q);
    const auto bonds = joint.space().bond_states();
    for (std::uint64_t omega = 0; omega < bonds; ++omega) {
        Rational mass = joint.probability([&](std::uint64_t i) { return i % bonds == omega; });
        const int k = oracle::components(3, oracle::edges_of(g), omega);
        for (std::uint64_t s = 0; s < joint.space().spin_states(); ++s) {
            Rational cond = joint[s * bonds + omega] / mass;
            auto sigma = decode_spins(s, 3, q);
            bool ok = spins_respect_bonds(g, sigma, omega);
            ASSERT_EQ(cond, ok ? pow(Rational(1, q), k) : Rational(0));
        }
    }
}

TEST(JointTable, StateCap) {
    EXPECT_THROW(joint_table(complete_graph(5), R("1/2"), 4, 1000), ResourceError);
}

TEST(Kernels, JointMeasureIsStationaryForBothHalfSteps) {
    for (const auto& g : coupling_family()) {
        const Rational p = R("3/7");
        auto joint = joint_table(g, p, 2);
        const auto& space = joint.space();
        auto after_bonds = apply_kernel(joint, [&](std::uint64_t i, std::uint64_t j) { return bond_kernel(g, space, p, i, j); });
        ASSERT_EQ(after_bonds, joint) << describe(g);
        auto after_spins = apply_kernel(joint, [&](std::uint64_t i, std::uint64_t j) { return spin_kernel(g, space, i, j); });
        ASSERT_EQ(after_spins, joint) << describe(g);
    }
}

TEST(Kernels, RowsSumToOne) {
    const auto g = triangle();
    const Rational p = R("1/4");
    auto joint = joint_table(g, p, 2);
    const auto& space = joint.space();
    for (std::uint64_t i = 0; i < space.size(); ++i) {
        if (joint[i] == 0) continue;
        Rational rb(0), rs(0);
        for (std::uint64_t j = 0; j < space.size(); ++j) {
            rb += bond_kernel(g, space, p, i, j);
            rs += spin_kernel(g, space, i, j);
        }
        ASSERT_EQ(rb, 1);
        ASSERT_EQ(rs, 1);
    }
}

TEST(Conditionals, BondsNeverOpenAcrossDisagreement) {
    Rng rng(3);
    const auto g = complete_graph(4);
    for (int t = 0; t < 500; ++t) {
        std::vector<int> s(4);
        for (auto& x : s) x = rng.uniform_int(3);
        auto omega = bonds_given_spins(g, s, 0.9, rng);
        ASSERT_TRUE(spins_respect_bonds(g, s, omega.bits()));
        auto s2 = spins_given_bonds(g, omega, 3, rng);
        ASSERT_TRUE(spins_respect_bonds(g, s2, omega.bits()));
    }
}

TEST(SwendsenWang, MatchesExactTwoPointOnTriangle) {
    const auto g = triangle();
    const double p = 0.5;
    const int q = 3;
    SamplerConfig cfg{11, 500, 40000, 1};
    auto stream = sw_sample(g, p, q, cfg);
    auto est = estimate_two_point(g, stream, q, 0, 1);
    const double tau = potts_two_point_exact(g, q, Rational(2), 0, 1).get_d();
    const double phi = rc_connection_prob(g, RCParams(R("1/2"), Rational(q)), 0, 1).get_d();
    EXPECT_NEAR(est.tau.value, tau, 5 * est.tau.std_error + 1e-9);
    EXPECT_NEAR(est.connection.value, phi, 5 * est.connection.std_error + 1e-9);
    EXPECT_GT(est.tau.std_error, 0);
}

TEST(SwendsenWang, EmpiricalJointFrequenciesMatchTable) {
    const auto g = path_graph(2);
    SamplerConfig cfg{5, 200, 60000, 1};
    auto stream = sw_sample(g, 0.6, 2, cfg);
    auto table = joint_table(g, R("3/5"), 2);
    std::map<std::uint64_t, double> freq;
    for (const auto& s : stream) freq[encode_spins(s.spins, 2) * 2 + s.bonds.bits()] += 1.0 / static_cast<double>(stream.size());
    for (std::uint64_t i = 0; i < table.size(); ++i) {
        const double pi = table[i].get_d();
        const double se = std::sqrt(pi * (1 - pi) / static_cast<double>(stream.size()));
        EXPECT_NEAR(freq[i], pi, 6 * se + 1e-12) << "state " << i;
    }
}

TEST(SwendsenWang, DeterministicPerSeedAndStream) {
    const auto g = cycle_graph(4);
    SamplerConfig cfg{42, 10, 200, 2};
    EXPECT_EQ(sw_sample(g, 0.4, 2, cfg), sw_sample(g, 0.4, 2, cfg));
    auto two = sw_sample_chains(g, 0.4, 2, cfg, 2);
    auto three = sw_sample_chains(g, 0.4, 2, cfg, 3);
    EXPECT_TRUE(std::equal(two.begin(), two.end(), three.begin()));
    EXPECT_EQ(std::vector<JointConfig>(two.begin() + 200, two.end()), sw_sample(g, 0.4, 2, cfg, 1));
    SamplerConfig other = cfg;
    other.seed = 43;
    EXPECT_NE(sw_sample(g, 0.4, 2, other), sw_sample(g, 0.4, 2, cfg));
}

TEST(SwendsenWang, RejectsBadParameters) {
    EXPECT_THROW(SwendsenWang(triangle(), 1.0, 2, Rng()), UsageError);
    EXPECT_THROW(SwendsenWang(triangle(), 0.5, 1, Rng()), UsageError);
    EXPECT_THROW(sw_sample(triangle(), 0.5, 2, SamplerConfig{0, 0, 0, 1}), UsageError);
}

TEST(Statistics, BatchMeansOnConstantAndAlternatingSeries) {
    std::vector<double> ones(1000, 1.0);
    auto e = batch_means(ones);
    EXPECT_DOUBLE_EQ(e.value, 1.0);
    EXPECT_DOUBLE_EQ(e.std_error, 0.0);
    std::vector<double> alt(1000);
    for (std::size_t i = 0; i < alt.size(); ++i) alt[i] = i % 2;
    auto a = batch_means(alt);
    EXPECT_DOUBLE_EQ(a.value, 0.5);
    EXPECT_NEAR(a.std_error, 0.0, 1e-12);  // every batch of 20 has mean 1/2
}

TEST(Statistics, ShortSeriesUsesIidFormula) {
    std::vector<double> xs{0, 1, 0, 1};
    auto e = batch_means(xs);
    EXPECT_DOUBLE_EQ(e.value, 0.5);
    EXPECT_NEAR(e.std_error, std::sqrt((1.0 / 3) / 4), 1e-15);
}

TEST(Statistics, RatioOfMeans) {
    std::vector<double> a{1, 2, 3, 4}, b{2, 4, 6, 8};
    auto r = ratio_of_means(a, b);
    EXPECT_DOUBLE_EQ(r.value, 0.5);
    EXPECT_NEAR(r.std_error, 0.0, 1e-15);
    std::vector<double> zero(4, 0.0);
    EXPECT_TRUE(std::isnan(ratio_of_means(a, zero).value));
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    Rng a(7, 0), b(7, 0), c(7, 1);
    for (int i = 0; i < 10; ++i) {
        auto x = a.engine()();
        EXPECT_EQ(x, b.engine()());
        EXPECT_NE(x, c.engine()());
    }
    EXPECT_EQ(a.split(3).engine()(), b.split(3).engine()());
}
