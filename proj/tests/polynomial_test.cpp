#include <gtest/gtest.h>

#include <cstdlib>
#include <random>

#include "oracles.hpp"
#include "rcm/graph_enum.hpp"
#include "rcm/lru_cache.hpp"
#include "rcm/tutte.hpp"

using namespace rcm;

namespace {

using P = BivariatePolynomial;

P parse_terms(std::initializer_list<std::tuple<int, int, long>> terms) {
    P p;
    for (auto [i, j, c] : terms) p.add_term(i, j, Integer(c));
    return p;
}

Rational at(const P& p, const char* x, const char* y) { return eval_poly(p, parse_rational(x), parse_rational(y)); }

} // namespace

TEST(BivariatePolynomial, ArithmeticDropsZeroCoefficients) {
    P a = P::x() + P::y();
    P b = P::x() - P::y();
    EXPECT_EQ(a * b, parse_terms({{2, 0, 1}, {0, 2, -1}}));
    EXPECT_TRUE((a - a).is_zero());
    EXPECT_EQ((a - a).terms().size(), 0u);
    EXPECT_EQ(Integer(3) * P::x(), P::monomial(1, 0, 3));
}

TEST(BivariatePolynomial, JsonRoundTripWithBigCoefficients) {
    P p = P::monomial(3, 1, Integer("123456789012345678901234567890")) + P(-2);
    nlohmann::json j = p;
    EXPECT_EQ(j["terms"][1]["c"], "123456789012345678901234567890");
    EXPECT_EQ(j.get<P>(), p);
}

TEST(EvalPoly, Examples) {
    EXPECT_EQ(at(P(1) + P::x(), "0", "0"), 1);
    EXPECT_EQ(at(parse_terms({{2, 0, 1}, {1, 0, 1}, {0, 1, 1}}), "1", "1"), 3);
    EXPECT_EQ(at(rank_gen_poly(triangle()), "1", "1"), 8);
    EXPECT_EQ(at(P::x() * P::x(), "-1/2", "0"), Rational(1, 4));
}

TEST(RankGenPoly, Examples) {
    EXPECT_EQ(rank_gen_poly(Multigraph(4, {})), P(1));
    EXPECT_EQ(rank_gen_poly(path_graph(2)), P(1) + P::x());
    EXPECT_EQ(rank_gen_poly(triangle()), parse_terms({{0, 0, 1}, {1, 0, 3}, {2, 0, 3}, {2, 1, 1}}));
}

TEST(RankGenPoly, EdgeCapIsAResourceError) {
    Multigraph big(2, std::vector<Edge>(25, Edge{0, 1}));
    try {
        rank_gen_poly(big);
        FAIL() << "expected a resource error";
    } catch (const ResourceError& e) {
        EXPECT_EQ(e.cap(), 24u);
    }
    EXPECT_NO_THROW(rank_gen_poly(Multigraph(2, std::vector<Edge>(4, Edge{0, 1})), 4));
}

TEST(TuttePoly, Examples) {
    EXPECT_EQ(tutte_poly(path_graph(2)), P::x());
    EXPECT_EQ(tutte_poly(Multigraph(1, {{0, 0}})), P::y());
    EXPECT_EQ(tutte_poly(triangle()), parse_terms({{2, 0, 1}, {1, 0, 1}, {0, 1, 1}}));
    EXPECT_EQ(tutte_poly(Multigraph(3, {})), P(1));
}

TEST(TuttePoly, KnownClosedForms) {
    // K_4: x^3 + 3x^2 + 2x + 4xy + 2y + 3y^2 + y^3.
    EXPECT_EQ(tutte_poly(complete_graph(4)),
              parse_terms({{3, 0, 1}, {2, 0, 3}, {1, 0, 2}, {1, 1, 4}, {0, 1, 2}, {0, 2, 3}, {0, 3, 1}}));
    // m parallel edges: x + y + ... + y^{m-1}.
    EXPECT_EQ(tutte_poly(Multigraph(2, {{0, 1}, {0, 1}, {0, 1}})), parse_terms({{1, 0, 1}, {0, 1, 1}, {0, 2, 1}}));
}

TEST(TuttePoly, MatchesSubsetExpansionOnRandomMultigraphs) {
    std::mt19937_64 rng(21);
    TutteComputer tc;
    for (int t = 0; t < 300; ++t) {
        auto g = oracle::random_multigraph(rng, 6, 10);
        ASSERT_EQ(tc(g), tutte_via_subsets(g)) << describe(g);
    }
}

TEST(TuttePoly, WTransformIdentityOnConnectedGraphs) {
    GraphFamily fam{1, 5, 0, 6, true, true, true, false};
    const char* points[][2] = {{"2", "3"}, {"-1/2", "1/3"}, {"0", "0"}, {"5/2", "-2"}, {"3", "1"}};
    TutteComputer tc;
    for (const auto& g : enumerate_graphs(fam)) {
        auto t = tc(g);
        auto w = rank_gen_poly(g);
        for (auto [us, vs] : points) {
            Rational u = parse_rational(us), v = parse_rational(vs);
            Rational rhs = pow(Rational(u - 1), g.vertex_count() - 1) * eval_poly(w, Rational(1 / (u - 1)), Rational(v - 1));
            ASSERT_EQ(eval_poly(t, u, v), rhs) << describe(g) << " at " << us << "," << vs;
        }
    }
}

TEST(TuttePoly, SpanningTreeCountAtOneOne) {
    GraphFamily fam{1, 6, 0, 9, false, true, true, false};
    TutteComputer tc;
    for (const auto& g : enumerate_graphs(fam))
        ASSERT_EQ(eval_poly(tc(g), Rational(1), Rational(1)), oracle::spanning_trees(g.vertex_count(), oracle::edges_of(g)))
            << describe(g);
}

TEST(TuttePoly, SmallCacheGivesSameResults) {
    std::mt19937_64 rng(5);
    TutteComputer small(4), large(1 << 16);
    for (int t = 0; t < 100; ++t) {
        auto g = oracle::random_multigraph(rng, 7, 12);
        ASSERT_EQ(small(g), large(g));
    }
    EXPECT_LE(small.cache().size(), 4u);
}

TEST(TuttePoly, CacheSizeFromEnvironment) {
    ::setenv("RCM_CACHE_SIZE", "123", 1);
    EXPECT_EQ(default_cache_entries(), 123u);
    ::setenv("RCM_CACHE_SIZE", "not-a-number", 1);
    EXPECT_EQ(default_cache_entries(), kDefaultTutteCacheEntries);
    ::unsetenv("RCM_CACHE_SIZE");
    EXPECT_EQ(default_cache_entries(), kDefaultTutteCacheEntries);
}

TEST(LruCache, EvictsLeastRecentlyUsed) {
    LruCache<int, int> c(2);
    c.insert(1, 10);
    c.insert(2, 20);
    ASSERT_NE(c.find(1), nullptr);  // 1 becomes most recent
    c.insert(3, 30);                // evicts 2
    EXPECT_EQ(c.find(2), nullptr);
    EXPECT_EQ(*c.find(1), 10);
    EXPECT_EQ(*c.find(3), 30);
}

TEST(MultivariateTutte, Examples) {
    EXPECT_EQ(multivariate_tutte<Rational>(path_graph(2), Rational(2), std::vector<Rational>{Rational(1)}), 6);
    EXPECT_EQ(multivariate_tutte<Rational>(complete_graph(4), Rational(3), std::vector<Rational>(6, Rational(0))), 81);
    EXPECT_EQ(multivariate_tutte<Rational>(triangle(), Rational(1), std::vector<Rational>(3, Rational(1))), 8);
    EXPECT_THROW(multivariate_tutte<Rational>(triangle(), Rational(1), std::vector<Rational>(2, Rational(1))), UsageError);
}

TEST(ChromaticPoly, Examples) {
    EXPECT_EQ(at(chromatic_poly(triangle()), "3", "0"), 6);
    EXPECT_EQ(at(chromatic_poly(path_graph(2)), "2", "0"), 2);
    EXPECT_TRUE(chromatic_poly(Multigraph(2, {{0, 1}, {1, 1}})).is_zero());
    // Triangle: q^3 - 3q^2 + 2q.
    EXPECT_EQ(chromatic_poly(triangle()), parse_terms({{3, 0, 1}, {2, 0, -3}, {1, 0, 2}}));
}

TEST(ChromaticPoly, MatchesColouringEnumeration) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 200; ++t) {
        auto g = oracle::random_multigraph(rng, 7, 10);
        auto chi = chromatic_poly(g);
        for (int q = 1; q <= 5; ++q)
            ASSERT_EQ(eval_poly(chi, Rational(q), Rational(0)), oracle::colourings(g.vertex_count(), oracle::edges_of(g), q))
                << describe(g) << " q=" << q;
    }
}

TEST(FlowPoly, Examples) {
    EXPECT_EQ(flow_poly(Multigraph(3, {})), P(1));
    EXPECT_EQ(at(flow_poly(triangle()), "3", "0"), 2);
    EXPECT_TRUE(flow_poly(path_graph(2)).is_zero());
}

TEST(FlowPoly, MatchesFlowEnumerationAndTutteRoute) {
    std::mt19937_64 rng(13);
    TutteComputer tc;
    for (int t = 0; t < 150; ++t) {
        auto g = oracle::random_multigraph(rng, 5, 7);
        auto c = flow_poly(g);
        ASSERT_EQ(c, flow_poly_via_tutte(g, tc)) << describe(g);
        for (int q = 2; q <= 6; ++q)
            ASSERT_EQ(eval_poly(c, Rational(q), Rational(0)), oracle::flows(g.vertex_count(), oracle::edges_of(g), q))
                << describe(g) << " q=" << q;
    }
}
