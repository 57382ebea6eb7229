#pragma once

#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

#include "rcm/graph.hpp"
#include "rcm/lru_cache.hpp"
#include "rcm/number.hpp"
#include "rcm/polynomial.hpp"

namespace rcm {

inline constexpr int kDefaultEdgeCap = 24;
inline constexpr std::size_t kDefaultTutteCacheEntries = std::size_t{1} << 20;

inline void require_edge_cap(const Multigraph& g, int cap, const char* what) {
    if (g.edge_count() > cap)
        throw ResourceError(std::string(what) + ": graph has " + std::to_string(g.edge_count()) +
                                " edges, enumeration would exceed the edge cap",
                            static_cast<unsigned long long>(cap));
}

/// Number of edge subsets A with |A| = a and k(A) = k, for every (a, k).
/// Every subset sum in this library that depends on A only through |A|
/// and k(A) is computed from this table.
class SubsetStatistics {
public:
    SubsetStatistics(const Multigraph& g, int edge_cap = kDefaultEdgeCap)
        : m_(g.edge_count()), n_(g.vertex_count()),
          counts_(static_cast<std::size_t>(m_ + 1) * static_cast<std::size_t>(n_ + 1), 0) {
        require_edge_cap(g, edge_cap, "subset enumeration");
        const std::uint64_t total = std::uint64_t{1} << m_;
        for (std::uint64_t bits = 0; bits < total; ++bits) {
            int k = detail::component_count_raw(g, bits);
            ++counts_[index(__builtin_popcountll(bits), k)];
        }
    }

    int edges() const { return m_; }
    int vertices() const { return n_; }
    std::uint64_t count(int a, int k) const { return counts_[index(a, k)]; }

    template <class F>
    void for_each(F&& f) const {
        for (int a = 0; a <= m_; ++a)
            for (int k = 0; k <= n_; ++k)
                if (auto c = counts_[index(a, k)]; c) f(a, k, c);
    }

private:
    std::size_t index(int a, int k) const {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_ + 1) + static_cast<std::size_t>(k);
    }

    int m_;
    int n_;
    std::vector<std::uint64_t> counts_;
};

/// W_G(u,v) = sum over A of u^{r(A)} v^{c(A)}.
inline BivariatePolynomial rank_gen_poly(const Multigraph& g, int edge_cap = kDefaultEdgeCap) {
    SubsetStatistics stats(g, edge_cap);
    BivariatePolynomial w;
    const int n = g.vertex_count();
    stats.for_each([&](int a, int k, std::uint64_t c) { w.add_term(n - k, a - n + k, Integer(static_cast<unsigned long>(c))); });
    return w;
}

namespace detail {

inline Integer binomial(int n, int k) {
    Integer out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

/// (x - 1)^a as a polynomial in the first variable when first_var, else in the second.
inline BivariatePolynomial shifted_power(int a, bool first_var) {
    BivariatePolynomial p;
    for (int i = 0; i <= a; ++i) {
        Integer c = binomial(a, i);
        if ((a - i) % 2) c = -c;
        p.add_term(first_var ? i : 0, first_var ? 0 : i, c);
    }
    return p;
}

/// 1 + y + ... + y^{m-1}
inline BivariatePolynomial y_geometric(int m) {
    BivariatePolynomial p;
    for (int j = 0; j < m; ++j) p.add_term(0, j, 1);
    return p;
}

} // namespace detail

/// Tutte polynomial by direct subset expansion:
/// T(x,y) = sum over A of (x-1)^{r(E)-r(A)} (y-1)^{c(A)}.
/// Independent of deletion-contraction; used as a cross-check.
inline BivariatePolynomial tutte_via_subsets(const Multigraph& g, int edge_cap = kDefaultEdgeCap) {
    SubsetStatistics stats(g, edge_cap);
    const int n = g.vertex_count();
    const int k_full = component_count(g);
    BivariatePolynomial t;
    stats.for_each([&](int a, int k, std::uint64_t c) {
        const int rank_gap = k - k_full;
        const int corank = a - n + k;
        t += Integer(static_cast<unsigned long>(c)) *
             (detail::shifted_power(rank_gap, true) * detail::shifted_power(corank, false));
    });
    return t;
}

/// Deletion-contraction for the Tutte polynomial with a bounded memo keyed on
/// canonical_key. Loops and bridge classes are peeled eagerly; whole classes of
/// parallel edges are resolved in one step. One instance per task.
class TutteComputer {
public:
    explicit TutteComputer(std::size_t cache_entries = kDefaultTutteCacheEntries) : cache_(cache_entries) {}

    BivariatePolynomial operator()(const Multigraph& g) { return compute(g); }

    BivariatePolynomial compute(const Multigraph& g) {
        // Loops contribute a factor y each.
        int loops = 0;
        std::vector<Edge> rest;
        rest.reserve(g.edges().size());
        for (const auto& e : g.edges()) {
            if (e.is_loop())
                ++loops;
            else
                rest.push_back(e);
        }
        Multigraph h = remove_isolated_vertices(Multigraph(g.vertex_count(), std::move(rest)));
        BivariatePolynomial core = compute_loopless(h);
        return loops ? core.shifted(0, loops) : core;
    }

    const LruCache<GraphKey, BivariatePolynomial, GraphKeyHash>& cache() const { return cache_; }

private:
    // h has no loops and no isolated vertices.
    BivariatePolynomial compute_loopless(const Multigraph& h) {
        if (h.edge_count() == 0) return BivariatePolynomial(1);
        GraphKey key = canonical_key(h);
        if (const auto* hit = cache_.find(key)) return *hit;

        BivariatePolynomial result;
        auto labels = component_labels(h, EdgeSubset::full_of(h).bits());
        int components = *std::max_element(labels.begin(), labels.end()) + 1;
        if (components > 1) {
            result = BivariatePolynomial(1);
            for (int c = 0; c < components; ++c) {
                std::vector<int> map(labels.size(), -1);
                int next = 0;
                for (std::size_t v = 0; v < labels.size(); ++v)
                    if (labels[v] == c) map[v] = next++;
                std::vector<Edge> es;
                for (const auto& e : h.edges())
                    if (labels[e.u] == c) es.push_back({map[e.u], map[e.v]});
                result *= compute_loopless(Multigraph(next, std::move(es)));
            }
        } else {
            result = split_on_class(h);
        }
        cache_.insert(key, result);
        return result;
    }

    BivariatePolynomial split_on_class(const Multigraph& h) {
        // Class incident to a vertex of least degree, which tends to expose cuts early.
        auto deg = degrees(h);
        int pivot = static_cast<int>(std::min_element(deg.begin(), deg.end()) - deg.begin());
        int other = -1;
        for (const auto& e : h.edges()) {
            if (e.u == pivot || e.v == pivot) {
                int w = e.u == pivot ? e.v : e.u;
                if (other < 0 || w < other) other = w;
            }
        }
        const int a = std::min(pivot, other), b = std::max(pivot, other);

        int multiplicity = 0;
        std::vector<Edge> without;
        without.reserve(h.edges().size());
        for (const auto& e : h.edges()) {
            if (std::min(e.u, e.v) == a && std::max(e.u, e.v) == b)
                ++multiplicity;
            else
                without.push_back(e);
        }
        Multigraph deleted(h.vertex_count(), without);

        // Contract the class: merge b into a, drop all m copies.
        std::vector<Edge> merged;
        merged.reserve(without.size());
        auto relabel = [&](int x) { return x == b ? a : (x > b ? x - 1 : x); };
        for (const auto& e : without) merged.push_back({relabel(e.u), relabel(e.v)});
        Multigraph contracted(h.vertex_count() - 1, std::move(merged));

        DisjointSets ds(h.vertex_count());
        for (const auto& e : without) ds.unite(e.u, e.v);
        const bool is_cut = ds.find(a) != ds.find(b);

        BivariatePolynomial t_contract = compute(contracted);
        if (is_cut) {
            // (x + y + ... + y^{m-1}) T(G/class)
            BivariatePolynomial factor = BivariatePolynomial::x() + detail::y_geometric(multiplicity) -
                                         BivariatePolynomial(1);
            return factor * t_contract;
        }
        // T(G - class) + (1 + y + ... + y^{m-1}) T(G/class)
        return compute(deleted) + detail::y_geometric(multiplicity) * t_contract;
    }

    LruCache<GraphKey, BivariatePolynomial, GraphKeyHash> cache_;
};

/// Cache size from RCM_CACHE_SIZE when set, else the library default.
inline std::size_t default_cache_entries() {
    if (const char* env = std::getenv("RCM_CACHE_SIZE")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0') return static_cast<std::size_t>(v);
    }
    return kDefaultTutteCacheEntries;
}

inline BivariatePolynomial tutte_poly(const Multigraph& g) {
    TutteComputer computer(default_cache_entries());
    return computer(g);
}

/// Restricts t to one axis and substitutes 1 - q there: along_x gives
/// t(1-q, 0), otherwise t(0, 1-q). The result is a polynomial in q stored in
/// the first variable.
inline BivariatePolynomial substitute_one_minus_q(const BivariatePolynomial& t, bool along_x) {
    const BivariatePolynomial base = BivariatePolynomial(1) - BivariatePolynomial::x();
    BivariatePolynomial out;
    for (const auto& [d, c] : t.terms()) {
        const int e = along_x ? d.first : d.second;
        const int other = along_x ? d.second : d.first;
        if (other != 0) continue;
        BivariatePolynomial pw(1);
        for (int k = 0; k < e; ++k) pw *= base;
        out += c * pw;
    }
    return out;
}

/// chi_G(q) = (-1)^{|V|-k(G)} q^{k(G)} T_G(1-q, 0), as a polynomial in q (first variable).
inline BivariatePolynomial chromatic_poly(const Multigraph& g, TutteComputer* computer = nullptr) {
    TutteComputer local(default_cache_entries());
    TutteComputer& tc = computer ? *computer : local;
    const int k = component_count(g);
    BivariatePolynomial t = tc(g);
    BivariatePolynomial chi = substitute_one_minus_q(t, true).shifted(k, 0);
    if ((g.vertex_count() - k) % 2) chi = Integer(-1) * chi;
    return chi;
}

/// C_G(q) = (-1)^{|E|} W_G(-1, -q), as a polynomial in q (first variable).
/// The edgeless graph gives the constant 1.
inline BivariatePolynomial flow_poly(const Multigraph& g, int edge_cap = kDefaultEdgeCap) {
    if (g.edge_count() == 0) return BivariatePolynomial(1);
    BivariatePolynomial w = rank_gen_poly(g, edge_cap);
    BivariatePolynomial c;
    for (const auto& [d, coeff] : w.terms()) {
        const bool negative = (g.edge_count() + d.first + d.second) % 2 != 0;
        c.add_term(d.second, 0, negative ? Integer(-coeff) : coeff);
    }
    return c;
}

/// C_G(q) = (-1)^{|E|-|V|+k(G)} T_G(0, 1-q); no edge cap, uses deletion-contraction.
inline BivariatePolynomial flow_poly_via_tutte(const Multigraph& g, TutteComputer& tc) {
    if (g.edge_count() == 0) return BivariatePolynomial(1);
    BivariatePolynomial t = tc(g);
    BivariatePolynomial c = substitute_one_minus_q(t, false);
    if ((g.edge_count() - g.vertex_count() + component_count(g)) % 2) c = Integer(-1) * c;
    return c;
}

/// sum over A of q^{k(A)} prod_{e in A} v_e.
template <class Scalar = Rational>
Scalar multivariate_tutte(const Multigraph& g, const Scalar& q, std::span<const Scalar> weights,
                          int edge_cap = kDefaultEdgeCap) {
    require_edge_cap(g, edge_cap, "multivariate Tutte sum");
    if (static_cast<int>(weights.size()) != g.edge_count())
        throw UsageError("multivariate Tutte: need one weight per edge");
    std::vector<Scalar> qpow(static_cast<std::size_t>(g.vertex_count() + 1), Scalar(1));
    for (std::size_t k = 1; k < qpow.size(); ++k) qpow[k] = qpow[k - 1] * q;
    Scalar total(0);
    const std::uint64_t count = std::uint64_t{1} << g.edge_count();
    for (std::uint64_t bits = 0; bits < count; ++bits) {
        Scalar term = qpow[static_cast<std::size_t>(detail::component_count_raw(g, bits))];
        for (std::uint64_t b = bits; b; b &= b - 1) term *= weights[static_cast<std::size_t>(__builtin_ctzll(b))];
        total += term;
    }
    return total;
}

template <class Scalar = Rational>
Scalar multivariate_tutte(const Multigraph& g, const Scalar& q, const std::vector<Scalar>& weights,
                          int edge_cap = kDefaultEdgeCap) {
    return multivariate_tutte<Scalar>(g, q, std::span<const Scalar>(weights), edge_cap);
}

} // namespace rcm
