#pragma once

// Brute-force reference implementations used only by the tests. They work on
// plain (n, edge list) data and share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <random>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "rcm/graph.hpp"

namespace oracle {

using EdgeList = std::vector<std::pair<int, int>>;

inline EdgeList edges_of(const rcm::Multigraph& g) {
    EdgeList out;
    for (const auto& e : g.edges()) out.emplace_back(e.u, e.v);
    return out;
}

/// Components of (V, {edges in mask}) by breadth-first search.
inline int components(int n, const EdgeList& edges, std::uint64_t mask) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < edges.size(); ++i)
        if ((mask >> i) & 1u) {
            adj[edges[i].first].push_back(edges[i].second);
            adj[edges[i].second].push_back(edges[i].first);
        }
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    int count = 0;
    for (int s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++count;
        std::queue<int> todo;
        todo.push(s);
        seen[s] = true;
        while (!todo.empty()) {
            int v = todo.front();
            todo.pop();
            for (int w : adj[v])
                if (!seen[w]) {
                    seen[w] = true;
                    todo.push(w);
                }
        }
    }
    return count;
}

inline bool connected_pair(int n, const EdgeList& edges, std::uint64_t mask, int x, int y) {
    // Label by repeated relaxation; slow and obviously correct.
    std::vector<int> label(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) label[i] = i;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < edges.size(); ++i)
            if ((mask >> i) & 1u) {
                int a = label[edges[i].first], b = label[edges[i].second];
                if (a != b) {
                    int m = std::min(a, b);
                    label[edges[i].first] = label[edges[i].second] = m;
                    changed = true;
                }
            }
    }
    return label[x] == label[y];
}

/// Proper q-colourings by exhaustive assignment.
inline long colourings(int n, const EdgeList& edges, int q) {
    long count = 0;
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= q;
    for (long long idx = 0; idx < total; ++idx) {
        long long r = idx;
        for (int i = 0; i < n; ++i) {
            c[i] = static_cast<int>(r % q);
            r /= q;
        }
        bool ok = true;
        for (auto [u, v] : edges) ok = ok && c[u] != c[v];
        count += ok;
    }
    return count;
}

/// Nowhere-zero Z_q flows with each edge oriented u -> v, by full enumeration.
inline long flows(int n, const EdgeList& edges, int q) {
    const int m = static_cast<int>(edges.size());
    long long total = 1;
    for (int i = 0; i < m; ++i) total *= (q - 1);
    long count = 0;
    std::vector<int> f(static_cast<std::size_t>(m));
    std::vector<int> net(static_cast<std::size_t>(n));
    for (long long idx = 0; idx < total; ++idx) {
        long long r = idx;
        for (int i = 0; i < m; ++i) {
            f[i] = 1 + static_cast<int>(r % (q - 1));
            r /= (q - 1);
        }
        std::fill(net.begin(), net.end(), 0);
        for (int i = 0; i < m; ++i) {
            net[edges[i].first] -= f[i];
            net[edges[i].second] += f[i];
        }
        bool ok = true;
        for (int v = 0; v < n; ++v) ok = ok && ((net[v] % q) + q) % q == 0;
        count += ok;
    }
    return count;
}

inline long spanning_trees(int n, const EdgeList& edges) {
    long count = 0;
    const std::uint64_t all = std::uint64_t{1} << edges.size();
    for (std::uint64_t mask = 0; mask < all; ++mask)
        if (__builtin_popcountll(mask) == n - 1 && components(n, edges, mask) == 1) ++count;
    return count;
}

/// Z_RC from its definition.
inline mpq_class rc_partition(int n, const EdgeList& edges, const mpq_class& p, const mpq_class& q) {
    mpq_class z = 0;
    const std::uint64_t all = std::uint64_t{1} << edges.size();
    for (std::uint64_t mask = 0; mask < all; ++mask) {
        mpq_class w = 1;
        for (std::size_t i = 0; i < edges.size(); ++i) w *= ((mask >> i) & 1u) ? p : mpq_class(1 - p);
        for (int k = components(n, edges, mask); k > 0; --k) w *= q;
        z += w;
    }
    return z;
}

/// phi_{p,q}(x <-> y) from the definition.
inline mpq_class rc_connection(int n, const EdgeList& edges, const mpq_class& p, const mpq_class& q, int x, int y) {
    mpq_class z = 0, hit = 0;
    const std::uint64_t all = std::uint64_t{1} << edges.size();
    for (std::uint64_t mask = 0; mask < all; ++mask) {
        mpq_class w = 1;
        for (std::size_t i = 0; i < edges.size(); ++i) w *= ((mask >> i) & 1u) ? p : mpq_class(1 - p);
        for (int k = components(n, edges, mask); k > 0; --k) w *= q;
        z += w;
        if (connected_pair(n, edges, mask, x, y)) hit += w;
    }
    return hit / z;
}

/// Potts two-point function pi(s_x = s_y) - 1/q with weight w^{#agreeing edges}.
inline mpq_class potts_two_point(int n, const EdgeList& edges, int q, const mpq_class& w, int x, int y) {
    mpq_class z = 0, same = 0;
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= q;
    for (long long idx = 0; idx < total; ++idx) {
        long long r = idx;
        for (int i = 0; i < n; ++i) {
            c[i] = static_cast<int>(r % q);
            r /= q;
        }
        mpq_class weight = 1;
        for (auto [u, v] : edges)
            if (c[u] == c[v]) weight *= w;
        z += weight;
        if (c[x] == c[y]) same += weight;
    }
    return same / z - mpq_class(1, q);
}

/// Ising model on +-1 spins with weight s^{sum_e sigma_x sigma_y}: returns
/// (Z, E[sigma_x sigma_y]) exactly.
inline std::pair<mpq_class, mpq_class> ising_correlation(int n, const EdgeList& edges, const mpq_class& s, int x, int y) {
    mpq_class z = 0, corr = 0;
    for (std::uint64_t conf = 0; conf < (std::uint64_t{1} << n); ++conf) {
        auto spin = [&](int v) { return ((conf >> v) & 1u) ? 1 : -1; };
        int e = 0;
        for (auto [u, v] : edges) e += spin(u) * spin(v);
        mpq_class w = 1;
        for (int i = 0; i < std::abs(e); ++i) w *= e > 0 ? s : mpq_class(1 / s);
        z += w;
        corr += w * spin(x) * spin(y);
    }
    return {z, corr / z};
}

/// Ising partition function sum exp(beta sum sigma sigma + h sum sigma), floating point.
inline double ising_partition(int n, const EdgeList& edges, double beta, double h) {
    double z = 0;
    for (std::uint64_t conf = 0; conf < (std::uint64_t{1} << n); ++conf) {
        auto spin = [&](int v) { return ((conf >> v) & 1u) ? 1 : -1; };
        double e = 0;
        for (auto [u, v] : edges) e += beta * spin(u) * spin(v);
        for (int v = 0; v < n; ++v) e += h * spin(v);
        z += std::exp(e);
    }
    return z;
}

/// Random multigraph with loops and parallel edges allowed.
inline rcm::Multigraph random_multigraph(std::mt19937_64& rng, int max_vertices, int max_edges, bool loops = true) {
    const int n = std::uniform_int_distribution<int>(1, max_vertices)(rng);
    const int m = std::uniform_int_distribution<int>(0, max_edges)(rng);
    std::vector<rcm::Edge> es;
    std::uniform_int_distribution<int> vd(0, n - 1);
    for (int i = 0; i < m; ++i) {
        int u = vd(rng), v = vd(rng);
        if (!loops && n > 1)
            while (u == v) v = vd(rng);
        if (!loops && n == 1) break;
        es.push_back({u, v});
    }
    return rcm::Multigraph(n, std::move(es));
}

} // namespace oracle
