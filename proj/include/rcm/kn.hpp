#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "rcm/errors.hpp"
#include "rcm/number.hpp"
#include "rcm/report.hpp"

namespace rcm::kn {

inline constexpr double kDefaultRootTol = 1e-12;
inline constexpr int kRootGrid = 10000;
inline constexpr double kDefaultGapThreshold = 0.2;
inline constexpr double kPottsRouteCap = 1e7;
/// Largest n for the cluster recursion; the subset route would need 2^{n(n-1)/2} <= 2^28.
inline constexpr int kClusterRouteMaxN = 40;

inline void require_positive(double v, const char* name) {
    if (!(v > 0) || !std::isfinite(v)) throw UsageError(std::string(name) + " must be positive and finite");
}

/// Critical point of the complete-graph model.
inline double lambda_c(double q) {
    require_positive(q, "q");
    if (q <= 2) return q;
    return 2.0 * ((q - 1) / (q - 2)) * std::log(q - 1);
}

/// e^{-lambda theta} - (1-theta)/(1+(q-1)theta), rearranged to avoid cancellation near 0.
inline double theta_residual(double theta, double lambda, double q) {
    return std::expm1(-lambda * theta) + q * theta / (1 + (q - 1) * theta);
}

/// Largest root of e^{-lambda theta} = (1-theta)/(1+(q-1)theta) in [0,1) when
/// lambda >= lambda_c(q), else 0.
inline double theta(double lambda, double q, double root_tol = kDefaultRootTol) {
    require_positive(lambda, "lambda");
    require_positive(q, "q");
    if (lambda < lambda_c(q)) return 0.0;
    // At lambda_c with q <= 2 the nonzero root has merged into 0.
    if (q <= 2 && lambda == lambda_c(q)) return 0.0;
    auto r = [&](double t) { return theta_residual(t, lambda, q); };

    // Grid points, with a geometric refinement of the first cell for roots near 0.
    std::vector<double> grid;
    for (int k = 40; k >= 1; --k) grid.push_back(std::ldexp(1.0 / kRootGrid, -k));
    for (int i = 1; i < kRootGrid; ++i) grid.push_back(static_cast<double>(i) / kRootGrid);
    grid.push_back(1.0 - 1e-12);

    double lo = -1, hi = -1;
    for (std::size_t i = grid.size() - 1; i > 0; --i) {
        const double a = r(grid[i - 1]), b = r(grid[i]);
        if (a == 0) return grid[i - 1];
        if ((a < 0) != (b < 0)) {
            lo = grid[i - 1];
            hi = grid[i];
            break;
        }
    }
    if (lo < 0) {
        // At lambda = lambda_c with q <= 2 the nonzero root has merged into 0.
        if (q <= 2) return 0.0;
        throw NumericalError("theta: no sign change of the root equation on (0,1) for lambda=" + format_double(lambda) +
                             " q=" + format_double(q) + "; residual at 0.5 is " + format_double(r(0.5)));
    }
    const bool lo_negative = r(lo) < 0;
    while (hi - lo > root_tol) {
        const double mid = 0.5 * (lo + hi);
        if ((r(mid) < 0) == lo_negative) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

inline double g_func(double theta_value, double q) {
    if (!(theta_value >= 0 && theta_value < 1)) throw UsageError("g: theta must lie in [0,1)");
    return -(q - 1) * (2 - theta_value) * std::log1p(-theta_value) -
           (2 + (q - 1) * theta_value) * std::log1p((q - 1) * theta_value);
}

/// Limit of (1/n) log Z_RC(K_n, lambda/n, q).
inline double eta(double lambda, double q, double root_tol = kDefaultRootTol) {
    const double t = theta(lambda, q, root_tol);
    return g_func(t, q) / (2 * q) - ((q - 1) / (2 * q)) * lambda + std::log(q);
}

namespace detail {

inline double log_abs(const Integer& z) {
    long exp = 0;
    const double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
    return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

inline double log_rational(const Rational& r) {
    if (sgn(r) <= 0) throw NumericalError("log of a non-positive partition function");
    return log_abs(r.get_num()) - log_abs(r.get_den());
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer c;
    mpz_bin_uiui(c.get_mpz_t(), n, k);
    return c;
}

/// Z_RC(K_n) for integer q via colour compositions:
/// sum over (n_1..n_q) of multinomial * (1-p)^{sum_{i<j} n_i n_j}.
inline Rational potts_route(int n, const Rational& p, int q) {
    const Rational r = 1 - p;
    std::vector<Rational> rpow(static_cast<std::size_t>(n * n + 1));
    rpow[0] = 1;
    for (std::size_t i = 1; i < rpow.size(); ++i) rpow[i] = rpow[i - 1] * r;
    Rational total = 0;
    // remaining vertices, colours left, accumulated multinomial, accumulated cross pairs
    auto rec = [&](auto&& self, int left, int colours, const Integer& mult, long cross) -> void {
        if (colours == 1) {
            total += Rational(mult) * rpow[static_cast<std::size_t>(cross + static_cast<long>(left) * (n - left))];
            return;
        }
        for (int k = 0; k <= left; ++k) {
            const long placed = n - left;
            self(self, left - k, colours - 1, mult * binomial(static_cast<unsigned long>(left), static_cast<unsigned long>(k)),
                 cross + static_cast<long>(k) * placed);
        }
    };
    rec(rec, n, q, Integer(1), 0);
    return total;
}

/// Z_RC(K_n) for any q > 0 by decomposing on the cluster of vertex 0.
inline Rational cluster_route(int n, const Rational& p, const Rational& q) {
    const Rational r = 1 - p;
    std::vector<Rational> rpow(static_cast<std::size_t>(n * n + 1));
    rpow[0] = 1;
    for (std::size_t i = 1; i < rpow.size(); ++i) rpow[i] = rpow[i - 1] * r;
    // conn[s]: probability that K_s is connected under bond percolation with density p.
    std::vector<Rational> conn(static_cast<std::size_t>(n + 1), Rational(0));
    for (int s = 1; s <= n; ++s) {
        Rational c = 1;
        for (int t = 1; t < s; ++t)
            c -= Rational(binomial(s - 1, t - 1)) * conn[t] * rpow[static_cast<std::size_t>(t * (s - t))];
        conn[s] = c;
    }
    std::vector<Rational> z(static_cast<std::size_t>(n + 1), Rational(0));
    z[0] = 1;
    for (int m = 1; m <= n; ++m) {
        Rational acc = 0;
        for (int s = 1; s <= m; ++s)
            acc += Rational(binomial(m - 1, s - 1)) * q * conn[s] * rpow[static_cast<std::size_t>(s * (m - s))] * z[m - s];
        z[m] = acc;
    }
    return z[n];
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

} // namespace detail

/// Exact Z_RC(K_n, lambda/n, q); integer q with q^n <= 10^7 uses the colour
/// composition sum, other q the cluster recursion.
inline Rational complete_graph_partition(int n, const Rational& lambda, const Rational& q) {
    if (n < 1) throw UsageError("n must be at least 1");
    if (sgn(lambda) <= 0 || sgn(q) <= 0) throw UsageError("lambda and q must be positive");
    if (lambda >= n) throw UsageError("p = lambda/n needs n > lambda");
    const Rational p = lambda / n;
    if (detail::is_integer(q) && std::pow(q.get_d(), n) <= kPottsRouteCap)
        return detail::potts_route(n, p, static_cast<int>(q.get_num().get_si()));
    if (n > kClusterRouteMaxN) throw ResourceError("complete-graph recursion limited in n", kClusterRouteMaxN);
    return detail::cluster_route(n, p, q);
}

inline double empirical_rate(int n, const Rational& lambda, const Rational& q) {
    return detail::log_rational(complete_graph_partition(n, lambda, q)) / n;
}

inline double empirical_rate(int n, double lambda, double q) {
    return empirical_rate(n, from_double(lambda), from_double(q));
}

/// |empirical_rate(n) - eta| over the n list. Passes when the gap decreases
/// along the list and ends below threshold.
inline Report convergence_report(double q, double lambda, const std::vector<int>& ns, double threshold = kDefaultGapThreshold) {
    Report r("(1/n) log Z_RC(K_n, lambda/n, q) -> eta(lambda)");
    if (ns.empty()) throw UsageError("empty n list");
    const double lc = lambda_c(q), th = theta(lambda, q), et = eta(lambda, q);
    r.parameters = {{"q", q}, {"lambda", lambda}, {"threshold", threshold}, {"n", ns}};
    auto rows = nlohmann::json::array();
    std::vector<double> gaps;
    for (int n : ns) {
        const double rate = empirical_rate(n, lambda, q);
        const double gap = std::fabs(rate - et);
        rows.push_back({{"n", n}, {"rate", rate}, {"gap", gap}});
        r.note_deviation(gap);
        ++r.instances;
        if (!gaps.empty() && !(gap < gaps.back())) r.fail({{"gap_not_decreasing_at_n", n}, {"gap", gap}, {"previous", gaps.back()}});
        gaps.push_back(gap);
    }
    if (!(gaps.back() < threshold)) r.fail({{"final_gap", gaps.back()}, {"threshold", threshold}});

    // Least-squares slope of log gap against log n.
    double slope = NAN;
    if (ns.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int k = 0;
        for (std::size_t i = 0; i < ns.size(); ++i) {
            if (!(gaps[i] > 0)) continue;
            const double x = std::log(ns[i]), y = std::log(gaps[i]);
            sx += x, sy += y, sxx += x * x, sxy += x * y, ++k;
        }
        if (k >= 2) slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    }
    r.details = {{"lambda_c", lc}, {"theta", th}, {"eta", et}, {"rows", rows},
                 {"fitted_decay_exponent", std::isnan(slope) ? nlohmann::json(nullptr) : nlohmann::json(slope)},
                 {"branch", lambda >= lc ? "lambda >= lambda_c" : "lambda < lambda_c"}};
    if (q < 1) r.details["regime_note"] = "q < 1 lies outside the regime q >= 1 of the limit statement";
    return r;
}

} // namespace rcm::kn
