#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "rcm/exact_measures.hpp"
#include "rcm/graph.hpp"
#include "rcm/random.hpp"
#include "rcm/report.hpp"
#include "rcm/statistics.hpp"
#include "rcm/tutte.hpp"

namespace rcm {

inline constexpr std::uint64_t kDefaultFlowCap = 100'000'000;

/// Base multigraph plus a direction bit per edge; a set bit reverses the
/// stored (u, v) order so that the edge leaves v and arrives at u.
struct OrientedMultigraph {
    Multigraph base;
    std::vector<bool> reversed;

    explicit OrientedMultigraph(Multigraph g) : base(std::move(g)), reversed(static_cast<std::size_t>(base.edge_count()), false) {}
    OrientedMultigraph(Multigraph g, std::vector<bool> rev) : base(std::move(g)), reversed(std::move(rev)) {
        if (static_cast<int>(reversed.size()) != base.edge_count()) throw UsageError("need one direction bit per edge");
    }

    Vertex tail(EdgeIndex e) const { return reversed[e] ? base.edge(e).v : base.edge(e).u; }
    Vertex head(EdgeIndex e) const { return reversed[e] ? base.edge(e).u : base.edge(e).v; }
};

/// Number of non-zero mod-q flows. Edges are assigned in order and a vertex is
/// checked for conservation as soon as its last incident edge is assigned.
inline std::uint64_t count_flows(const OrientedMultigraph& og, int q, std::uint64_t cap = kDefaultFlowCap) {
    if (q < 2) throw UsageError("flows need q >= 2");
    const Multigraph& g = og.base;
    const int m = g.edge_count();
    {
        std::uint64_t total = 1;
        for (int i = 0; i < m; ++i) {
            if (total > cap / static_cast<std::uint64_t>(q - 1)) throw ResourceError("flow enumeration (q-1)^|E| too large", cap);
            total *= static_cast<std::uint64_t>(q - 1);
        }
    }
    if (m == 0) return 1;

    std::vector<int> last_edge(static_cast<std::size_t>(g.vertex_count()), -1);
    for (int i = 0; i < m; ++i) {
        last_edge[g.edge(i).u] = i;
        last_edge[g.edge(i).v] = i;
    }
    std::vector<std::vector<Vertex>> closes(static_cast<std::size_t>(m));
    for (int v = 0; v < g.vertex_count(); ++v)
        if (last_edge[v] >= 0) closes[last_edge[v]].push_back(v);

    std::vector<int> balance(static_cast<std::size_t>(g.vertex_count()), 0);
    std::uint64_t count = 0;
    auto rec = [&](auto&& self, int i) -> void {
        if (i == m) {
            ++count;
            return;
        }
        const Vertex t = og.tail(i), h = og.head(i);
        for (int f = 1; f < q; ++f) {
            balance[t] = (balance[t] + f) % q;
            balance[h] = (balance[h] - f + q) % q;
            bool ok = true;
            for (Vertex v : closes[i])
                if (balance[v] != 0) {
                    ok = false;
                    break;
                }
            if (ok) self(self, i + 1);
            balance[t] = (balance[t] - f + q) % q;
            balance[h] = (balance[h] + f) % q;
        }
    };
    rec(rec, 0);
    return count;
}

inline std::uint64_t count_flows(const Multigraph& g, int q, std::uint64_t cap = kDefaultFlowCap) {
    return count_flows(OrientedMultigraph(g), q, cap);
}

/// Counts under `trials` random orientations must all agree.
inline Report orientation_invariance_check(const Multigraph& g, int q, int trials = 20, std::uint64_t seed = 0) {
    Report r("flow count independent of orientation");
    r.parameters = {{"q", q}, {"trials", trials}, {"seed", seed}, {"graph", describe(g)}};
    Rng rng(seed);
    const std::uint64_t reference = count_flows(g, q);
    auto counts = nlohmann::json::array();
    for (int t = 0; t < trials; ++t) {
        std::vector<bool> rev(static_cast<std::size_t>(g.edge_count()));
        for (std::size_t i = 0; i < rev.size(); ++i) rev[i] = rng.bernoulli(0.5);
        const std::uint64_t c = count_flows(OrientedMultigraph(g, rev), q);
        counts.push_back(c);
        ++r.instances;
        r.note_deviation(Rational(static_cast<long>(c)) - Rational(static_cast<long>(reference)));
        if (c != reference) r.fail({{"trial", t}, {"count", c}, {"reference", reference}});
    }
    r.details = {{"count", reference}, {"counts", counts}};
    return r;
}

// ---------------------------------------------------------------------------
// Poisson graphs
// ---------------------------------------------------------------------------

struct PoissonGraphSample {
    const Multigraph* base = nullptr;
    std::vector<int> multiplicity;
    std::optional<std::pair<Vertex, Vertex>> extra;

    int edge_total() const {
        int s = 0;
        for (int m : multiplicity) s += m;
        return s;
    }

    /// m_e parallel copies of each base edge, plus the extra edge when present.
    Multigraph realize() const {
        std::vector<Edge> es;
        for (std::size_t i = 0; i < multiplicity.size(); ++i)
            for (int c = 0; c < multiplicity[i]; ++c) es.push_back(base->edges()[i]);
        if (extra) es.push_back({extra->first, extra->second});
        return Multigraph(base->vertex_count(), std::move(es));
    }

    Multigraph realize_without_extra() const {
        PoissonGraphSample copy = *this;
        copy.extra.reset();
        return copy.realize();
    }
};

inline PoissonGraphSample poisson_sample(const Multigraph& g, double lambda, Rng& rng,
                                         std::optional<std::pair<Vertex, Vertex>> attach = std::nullopt) {
    if (!(lambda >= 0) || !std::isfinite(lambda)) throw UsageError("Poisson intensity must be finite and non-negative");
    if (attach) {
        require_vertex(g, attach->first);
        require_vertex(g, attach->second);
    }
    PoissonGraphSample s;
    s.base = &g;
    s.multiplicity.resize(static_cast<std::size_t>(g.edge_count()));
    for (auto& m : s.multiplicity) m = rng.poisson(lambda);
    s.extra = attach;
    return s;
}

/// Flow polynomial values through deletion-contraction with a shared memo, so
/// repeated Poisson graphs cost one lookup.
class FlowEvaluator {
public:
    explicit FlowEvaluator(std::size_t cache_entries = default_cache_entries()) : tutte_(cache_entries) {}

    /// C(G;q) = (-1)^{|E|-|V|+k(G)} T_G(0, 1-q), exact for integer q.
    Integer flow_count(const Multigraph& g, int q) {
        if (g.edge_count() == 0) return Integer(1);
        Rational t = eval_poly(tutte_(g), Rational(0), Rational(1 - q));
        Integer c = t.get_num();
        return sign_exponent(g) % 2 ? Integer(-c) : c;
    }

    /// The same polynomial at real q.
    double flow_value(const Multigraph& g, double q) {
        if (g.edge_count() == 0) return 1.0;
        double t = tutte_(g).evaluate<double>(0.0, 1.0 - q);
        return sign_exponent(g) % 2 ? -t : t;
    }

    /// (-1)^{|E|} T_G(0, 1-q): the per-sample weight written without the
    /// (-1)^{k(G)-|V|} component sign.
    double uncorrected_value(const Multigraph& g, double q) {
        double t = tutte_(g).evaluate<double>(0.0, 1.0 - q);
        return g.edge_count() % 2 ? -t : t;
    }

    TutteComputer& tutte() { return tutte_; }

private:
    static int sign_exponent(const Multigraph& g) {
        int e = g.edge_count() - g.vertex_count() + component_count(g);
        return e < 0 ? -e : e;
    }

    TutteComputer tutte_;
};

struct McConfig {
    std::uint64_t seed = 0;
    int samples = 100000;

    void validate() const {
        if (samples <= 0) throw UsageError("sample count must be positive");
    }
};

/// E(C(G_P^{x,y};q)) / E(C(G_P;q)) over Poisson(lambda) thickenings.
inline Estimate flow_correlation_mc(const Multigraph& g, double lambda, int q, Vertex x, Vertex y, const McConfig& cfg,
                                    FlowEvaluator* evaluator = nullptr) {
    cfg.validate();
    if (x == y) throw UsageError("flow correlation needs distinct vertices");
    if (q < 2) throw UsageError("flow correlation needs integer q >= 2");
    FlowEvaluator local;
    FlowEvaluator& ev = evaluator ? *evaluator : local;
    Rng rng(cfg.seed);
    std::vector<double> num, den;
    num.reserve(static_cast<std::size_t>(cfg.samples));
    den.reserve(static_cast<std::size_t>(cfg.samples));
    for (int i = 0; i < cfg.samples; ++i) {
        auto s = poisson_sample(g, lambda, rng, std::make_pair(x, y));
        num.push_back(ev.flow_count(s.realize(), q).get_d());
        den.push_back(ev.flow_count(s.realize_without_extra(), q).get_d());
    }
    return ratio_of_means(num, den);
}

/// P(G_P^{x,y} even) / P(G_P even); parity only, no flow enumeration.
inline Estimate even_ratio_mc(const Multigraph& g, double lambda, Vertex x, Vertex y, const McConfig& cfg) {
    cfg.validate();
    if (x == y) throw UsageError("even ratio needs distinct vertices");
    Rng rng(cfg.seed);
    std::vector<double> num, den;
    num.reserve(static_cast<std::size_t>(cfg.samples));
    den.reserve(static_cast<std::size_t>(cfg.samples));
    for (int i = 0; i < cfg.samples; ++i) {
        auto s = poisson_sample(g, lambda, rng, std::make_pair(x, y));
        num.push_back(is_even(s.realize()) ? 1.0 : 0.0);
        den.push_back(is_even(s.realize_without_extra()) ? 1.0 : 0.0);
    }
    return ratio_of_means(num, den);
}

enum class FlowSign {
    /// (-1)^{|E|-|V|+k} T(0,1-q): the flow polynomial itself.
    component_corrected,
    /// (-1)^{|E|} T(0,1-q) as written; only agrees when every sample is connected.
    literal,
};

/// Intensity with p = 1 - e^{-lambda q}.
inline double intensity_for(double p, double q) { return -std::log1p(-p) / q; }

/// Ratio estimate of (q-1) phi_{p,q}(x<->y) from Tutte evaluations at (0, 1-q)
/// on Poisson graphs with p = 1 - e^{-lambda q}.
inline Estimate flow_connection_mc(const Multigraph& g, double p, double q, Vertex x, Vertex y, const McConfig& cfg,
                                   FlowSign sign = FlowSign::component_corrected, FlowEvaluator* evaluator = nullptr) {
    cfg.validate();
    if (x == y) throw UsageError("flow connection needs distinct vertices");
    if (!(q > 0)) throw UsageError("q must be positive");
    if (!(p >= 0 && p < 1)) throw UsageError("p must lie in [0,1)");
    FlowEvaluator local;
    FlowEvaluator& ev = evaluator ? *evaluator : local;
    const double lambda = intensity_for(p, q);
    Rng rng(cfg.seed);
    std::vector<double> num, den;
    num.reserve(static_cast<std::size_t>(cfg.samples));
    den.reserve(static_cast<std::size_t>(cfg.samples));
    for (int i = 0; i < cfg.samples; ++i) {
        auto s = poisson_sample(g, lambda, rng, std::make_pair(x, y));
        Multigraph with = s.realize(), without = s.realize_without_extra();
        if (sign == FlowSign::component_corrected) {
            num.push_back(ev.flow_value(with, q));
            den.push_back(ev.flow_value(without, q));
        } else {
            // (-1)^{1+|E_P|} T(G^{x,y}) = (-1)^{|E(G^{x,y})|} T(G^{x,y})
            num.push_back(ev.uncorrected_value(with, q));
            den.push_back(ev.uncorrected_value(without, q));
        }
    }
    return ratio_of_means(num, den);
}

namespace detail {

/// sum_{m > M} e^{-lambda} (lambda a)^m / m!, summed until terms are negligible
/// and closed with a geometric bound.
inline double weighted_poisson_tail(double lambda, double a, int M) {
    const double mu = lambda * a;
    double log_term = -lambda;  // m = 0
    for (int m = 1; m <= M + 1; ++m) log_term += std::log(mu) - std::log(static_cast<double>(m));
    if (mu == 0) return 0.0;
    double term = std::exp(log_term), sum = 0.0;
    for (int m = M + 1;; ++m) {
        sum += term;
        const double ratio = mu / static_cast<double>(m + 1);
        term *= ratio;
        if (ratio < 0.5 && term < 1e-30 * std::max(sum, 1e-300)) {
            sum += term / (1 - ratio) * 2;  // generous closing bound
            break;
        }
        if (m > M + 100000) break;
    }
    return sum;
}

} // namespace detail

struct CompflowResult {
    Report report;
    int m_max = 0;
    double tail_bound = 0.0;  // bound on the neglected part of E(C(G_P;q))
};

/// Z_RC(p,q) = (1-p)^{|E|(q-2)/q} q^{|V|} E_lambda(C(G_P;q)) with
/// p = 1 - e^{-lambda q}. The expectation is summed over all multiplicity
/// vectors in [0, m_max]^E; the neglected mass is at most
/// |E| T S^{|E|-1}, where S = e^{lambda(q-2)} is the per-edge total of
/// P(m)(q-1)^m and T its tail beyond m_max, since C(G_m;q) <= (q-1)^{|m|}.
/// When m_max is not given, the smallest value with bound below target_tail is used.
inline CompflowResult compflow_identity(const Multigraph& g, double p, int q, std::optional<int> m_max = std::nullopt,
                                        double target_tail = 1e-8, std::uint64_t vector_cap = 20'000'000,
                                        FlowEvaluator* evaluator = nullptr) {
    if (q < 2) throw UsageError("compflow identity needs integer q >= 2");
    if (!(p > 0 && p < 1)) throw UsageError("p must lie in (0,1)");
    const double lambda = intensity_for(p, q);
    const int m = g.edge_count();
    const double per_edge_total = std::exp(lambda * (q - 2));
    auto bound_for = [&](int M) {
        if (m == 0) return 0.0;
        return m * detail::weighted_poisson_tail(lambda, q - 1, M) * std::pow(per_edge_total, m - 1);
    };
    int M = 0;
    if (m_max) {
        M = *m_max;
    } else {
        while (bound_for(M) >= target_tail) ++M;
    }
    const double bound = bound_for(M);

    std::uint64_t vectors = 1;
    for (int i = 0; i < m; ++i) {
        if (vectors > vector_cap / static_cast<std::uint64_t>(M + 1)) throw ResourceError("compflow: too many multiplicity vectors", vector_cap);
        vectors *= static_cast<std::uint64_t>(M + 1);
    }

    std::vector<double> pois(static_cast<std::size_t>(M + 1));
    for (int k = 0; k <= M; ++k) pois[k] = std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0));
    if (lambda == 0) {
        std::fill(pois.begin(), pois.end(), 0.0);
        pois[0] = 1.0;
    }

    FlowEvaluator local;
    FlowEvaluator& ev = evaluator ? *evaluator : local;
    std::vector<int> mult(static_cast<std::size_t>(m), 0);
    double expectation = 0.0;
    for (std::uint64_t idx = 0; idx < vectors; ++idx) {
        std::uint64_t rest = idx;
        double weight = 1.0;
        for (int e = 0; e < m; ++e) {
            mult[e] = static_cast<int>(rest % static_cast<std::uint64_t>(M + 1));
            rest /= static_cast<std::uint64_t>(M + 1);
            weight *= pois[mult[e]];
        }
        if (weight == 0) continue;
        PoissonGraphSample s{&g, mult, std::nullopt};
        expectation += weight * ev.flow_count(s.realize(), q).get_d();
    }

    const double z_rc = rc_partition_value<double>(g, p, static_cast<double>(q));
    const double prefactor = std::pow(1 - p, m * (q - 2.0) / q) * std::pow(static_cast<double>(q), g.vertex_count());
    const double rhs = prefactor * expectation;
    const double allowed = prefactor * bound + 64 * std::numeric_limits<double>::epsilon() * std::fabs(z_rc);

    CompflowResult out;
    out.m_max = M;
    out.tail_bound = bound;
    Report& r = out.report;
    r.identity = "Z_RC = (1-p)^{|E|(q-2)/q} q^{|V|} E_lambda C(G_P;q)";
    r.instances = 1;
    r.parameters = {{"p", p}, {"q", q}, {"lambda", lambda}, {"m_max", M}, {"graph", describe(g)}};
    r.details = {{"Z_RC", z_rc}, {"rhs_truncated", rhs}, {"expectation_truncated", expectation},
                 {"tail_bound", bound}, {"allowed_deviation", allowed}};
    r.note_deviation(z_rc - rhs);
    // Truncation only drops non-negative terms, so the rhs may fall short but never exceed.
    if (std::fabs(z_rc - rhs) > allowed) r.fail({{"deviation", z_rc - rhs}, {"allowed", allowed}});
    return out;
}

// ---------------------------------------------------------------------------
// Simon inequality
// ---------------------------------------------------------------------------

/// True when every x-z path meets W (x, z not in W).
inline bool separates(const Multigraph& g, std::uint64_t vertex_set, Vertex x, Vertex z) {
    DisjointSets ds(g.vertex_count());
    for (const auto& e : g.edges()) {
        if ((vertex_set >> e.u) & 1u || (vertex_set >> e.v) & 1u) continue;
        ds.unite(e.u, e.v);
    }
    return ds.find(x) != ds.find(z);
}

struct SeparatingSet {
    std::uint64_t vertices = 0;
    bool minimal = false;
};

/// Separating sets of size at most max_size, with minimality flags.
inline std::vector<SeparatingSet> separating_sets(const Multigraph& g, Vertex x, Vertex z, int max_size = 4) {
    if (g.vertex_count() > 63) throw UsageError("separating-set enumeration limited to 63 vertices");
    std::vector<SeparatingSet> out;
    const std::uint64_t forbidden = (std::uint64_t{1} << x) | (std::uint64_t{1} << z);
    const std::uint64_t total = std::uint64_t{1} << g.vertex_count();
    for (std::uint64_t w = 0; w < total; ++w) {
        if (w & forbidden) continue;
        if (__builtin_popcountll(w) > max_size) continue;
        if (!separates(g, w, x, z)) continue;
        bool minimal = true;
        for (std::uint64_t b = w; b && minimal; b &= b - 1)
            if (separates(g, w & ~(b & (~b + 1)), x, z)) minimal = false;
        out.push_back({w, minimal});
    }
    return out;
}

/// phi(x<->z) <= sum_{y in W} phi(x<->y) phi(y<->z) for every separating W
/// with |W| <= max_separator, in exact arithmetic.
inline Report simon_check(const Multigraph& g, const Rational& p, const Rational& q, Vertex x, Vertex z, int max_separator = 4) {
    require_vertex(g, x);
    require_vertex(g, z);
    if (x == z) throw UsageError("Simon check needs distinct vertices");
    Report r("phi(x<->z) <= sum_{y in W} phi(x<->y) phi(y<->z)");
    // Proven at q = 1 and q = 2; other q are exploratory.
    r.informational = !(q == 1 || q == 2);
    r.parameters = {{"p", p.get_str()}, {"q", q.get_str()}, {"x", x}, {"z", z}, {"graph", describe(g)},
                    {"separator_size_cap", max_separator}};
    auto conn = connection_matrix(g, rc_measure_table(g, RCParams(p, q)));
    int minimal_count = 0;
    for (const auto& sep : separating_sets(g, x, z, max_separator)) {
        Rational rhs(0);
        auto members = nlohmann::json::array();
        for (std::uint64_t b = sep.vertices; b; b &= b - 1) {
            const int y = __builtin_ctzll(b);
            rhs += conn[x][y] * conn[y][z];
            members.push_back(y);
        }
        ++r.instances;
        minimal_count += sep.minimal;
        const Rational slack = rhs - conn[x][z];
        if (slack < 0) {
            r.note_deviation(slack);
            r.fail({{"graph", describe(g)}, {"p", p.get_str()}, {"q", q.get_str()}, {"W", members},
                    {"lhs", conn[x][z].get_str()}, {"rhs", rhs.get_str()}, {"minimal", sep.minimal}});
        }
    }
    r.details = {{"separating_sets", r.instances}, {"minimal_separating_sets", minimal_count}};
    return r;
}

} // namespace rcm
