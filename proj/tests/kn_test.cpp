#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rcm/kn.hpp"

using namespace rcm;

namespace {

Rational R(const char* s) { return parse_rational(s); }

oracle::EdgeList complete_edges(int n) {
    oracle::EdgeList es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return es;
}

} // namespace

TEST(CriticalPoint, Values) {
    EXPECT_DOUBLE_EQ(kn::lambda_c(1), 1.0);
    EXPECT_DOUBLE_EQ(kn::lambda_c(2), 2.0);
    EXPECT_DOUBLE_EQ(kn::lambda_c(0.5), 0.5);
    EXPECT_NEAR(kn::lambda_c(3), 4 * std::log(2.0), 1e-15);
    EXPECT_NEAR(kn::lambda_c(5), 2 * (4.0 / 3) * std::log(4.0), 1e-14);
    EXPECT_THROW(kn::lambda_c(0), UsageError);
}

TEST(Theta, ZeroBelowCriticalPoint) {
    EXPECT_EQ(kn::theta(0.5, 2), 0.0);
    EXPECT_EQ(kn::theta(2.7, 3), 0.0);
    EXPECT_EQ(kn::theta(2.0, 2), 0.0);  // the nonzero root has merged into 0
}

TEST(Theta, PercolationSurvivalProbability) {
    // q = 1: e^{-2 theta} = 1 - theta, the Poisson(2) branching survival probability.
    EXPECT_NEAR(kn::theta(2.0, 1), 0.7968121300200199, 1e-11);
}

TEST(Theta, RootSolvesEquationAndIsLargest) {
    for (double q : {0.5, 1.0, 1.5, 2.0, 3.0, 5.0})
        for (double factor : {1.0, 1.01, 1.5, 3.0}) {
            const double lambda = kn::lambda_c(q) * factor;
            const double t = kn::theta(lambda, q);
            if (t == 0) {
                EXPECT_LE(q, 2.0);
                EXPECT_EQ(factor, 1.0);
                continue;
            }
            EXPECT_NEAR(kn::theta_residual(t, lambda, q), 0.0, 1e-10) << "q=" << q << " lambda=" << lambda;
            for (double s = t + 1e-3; s < 1; s += 1e-3)
                ASSERT_GT(std::fabs(kn::theta_residual(s, lambda, q)), 0.0);
        }
}

TEST(Theta, ContinuousTransitionForQAtMostTwo) {
    // theta -> 0 as lambda decreases to lambda_c when q <= 2.
    EXPECT_LT(kn::theta(2.0 * 1.0001, 2), 0.05);
    EXPECT_LT(kn::theta(1.0001, 1), 0.001);
    // Jump for q > 2: theta at lambda_c equals (q-2)/(q-1).
    EXPECT_NEAR(kn::theta(kn::lambda_c(3), 3), 0.5, 1e-9);
}

TEST(Eta, BelowCriticalFormula) {
    for (double q : {0.5, 2.0, 4.0}) {
        const double lambda = 0.4 * kn::lambda_c(q);
        EXPECT_NEAR(kn::eta(lambda, q), std::log(q) - (q - 1) * lambda / (2 * q), 1e-14);
    }
    EXPECT_NEAR(kn::eta(3.0, 1), 0.0, 1e-14);
}

TEST(Eta, ContinuousAcrossCriticalPoint) {
    for (double q : {1.5, 3.0}) {
        const double lc = kn::lambda_c(q);
        EXPECT_NEAR(kn::eta(lc * (1 - 1e-9), q), kn::eta(lc, q), 1e-7) << "q=" << q;
    }
    EXPECT_THROW(kn::g_func(1.0, 2), UsageError);
}

TEST(CompleteGraphPartition, MatchesSubsetOracle) {
    for (int n = 1; n <= 5; ++n)
        for (const char* q : {"1/2", "1", "2", "3", "5/2"}) {
            const Rational lambda = R("3/4");
            const Rational expected = oracle::rc_partition(n, complete_edges(n), Rational(lambda / n), R(q));
            ASSERT_EQ(kn::complete_graph_partition(n, lambda, R(q)), expected) << "n=" << n << " q=" << q;
        }
}

TEST(CompleteGraphPartition, RoutesAgree) {
    for (int n = 1; n <= 9; ++n)
        for (int q : {2, 3, 4}) {
            const Rational p = R("1/5");
            ASSERT_EQ(kn::detail::potts_route(n, p, q), kn::detail::cluster_route(n, p, Rational(q))) << "n=" << n << " q=" << q;
        }
}

TEST(CompleteGraphPartition, RejectsBadInput) {
    EXPECT_THROW(kn::complete_graph_partition(0, R("1"), R("2")), UsageError);
    EXPECT_THROW(kn::complete_graph_partition(3, R("3"), R("2")), UsageError);
    EXPECT_THROW(kn::complete_graph_partition(3, R("1"), R("0")), UsageError);
    EXPECT_THROW(kn::complete_graph_partition(41, R("1"), R("1/2")), ResourceError);
}

TEST(EmpiricalRate, QEqualOneIsZero) {
    EXPECT_EQ(kn::empirical_rate(12, R("2"), R("1")), 0.0);
}

TEST(EmpiricalRate, LogOfHugeValues) {
    // q^n states dominate at tiny lambda: rate close to log q.
    EXPECT_NEAR(kn::empirical_rate(30, R("1/1000"), R("7/2")), std::log(3.5), 1e-3);
}

TEST(Convergence, IsingCaseConverges) {
    auto r = kn::convergence_report(2, 1, {4, 8, 12, 14});
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.details["rows"].size(), 4u);
    EXPECT_EQ(r.details["branch"], "lambda < lambda_c");
    EXPECT_FALSE(r.details.contains("regime_note"));
}

TEST(Convergence, TightThresholdFails) {
    auto r = kn::convergence_report(2, 1, {4, 8}, 1e-6);
    EXPECT_FALSE(r.pass);
}

TEST(Convergence, BelowOneAddsNote) {
    auto r = kn::convergence_report(0.5, 2, {4, 8, 16});
    EXPECT_TRUE(r.details.contains("regime_note"));
    EXPECT_EQ(r.details["branch"], "lambda >= lambda_c");
}
