#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rcm/errors.hpp"

namespace rcm {

using Vertex = int;
using EdgeIndex = int;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    bool is_loop() const { return u == v; }
    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Union-find over a fixed vertex range, path halving plus union by size.
class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1), sets_(n) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --sets_;
        return true;
    }

    int set_count() const { return sets_; }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
    int sets_;
};

/// Finite multigraph. Loops and parallel edges are allowed; an edge is
/// identified by its position in the edge list.
class Multigraph {
public:
    Multigraph() = default;

    explicit Multigraph(int n_vertices, std::vector<Edge> edges = {})
        : n_(n_vertices), edges_(std::move(edges)) {
        if (n_ < 0) throw UsageError("negative vertex count");
        for (const auto& e : edges_)
            if (e.u < 0 || e.v < 0 || e.u >= n_ || e.v >= n_)
                throw UsageError("edge endpoint out of range: (" + std::to_string(e.u) + "," +
                                 std::to_string(e.v) + ") with n=" + std::to_string(n_));
    }

    Multigraph(int n_vertices, std::initializer_list<std::pair<int, int>> edges)
        : Multigraph(n_vertices, to_edges(edges)) {}

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<Edge>& edges() const { return edges_; }
    const Edge& edge(EdgeIndex e) const { return edges_.at(static_cast<std::size_t>(e)); }

    Multigraph with_edge(Vertex u, Vertex v) const {
        auto es = edges_;
        es.push_back({u, v});
        return Multigraph(n_, std::move(es));
    }

    friend bool operator==(const Multigraph&, const Multigraph&) = default;

private:
    static std::vector<Edge> to_edges(std::initializer_list<std::pair<int, int>> list) {
        std::vector<Edge> out;
        out.reserve(list.size());
        for (auto [u, v] : list) out.push_back({u, v});
        return out;
    }

    int n_ = 0;
    std::vector<Edge> edges_;
};

/// A subset of edge positions; doubles as a bond configuration.
class EdgeSubset {
public:
    static constexpr int kMaxEdges = 64;

    EdgeSubset() = default;
    EdgeSubset(std::uint64_t bits, int size) : bits_(bits), size_(size) {
        if (size < 0 || size > kMaxEdges) throw UsageError("edge subset size out of range");
        if (size < kMaxEdges && (bits >> size) != 0) throw UsageError("edge subset has bits beyond its size");
    }

    static EdgeSubset empty(int size) { return EdgeSubset(0, size); }
    static EdgeSubset full(int size) {
        return EdgeSubset(size == kMaxEdges ? ~std::uint64_t{0} : ((std::uint64_t{1} << size) - 1), size);
    }
    static EdgeSubset empty_of(const Multigraph& g) { return empty(g.edge_count()); }
    static EdgeSubset full_of(const Multigraph& g) { return full(g.edge_count()); }

    std::uint64_t bits() const { return bits_; }
    int size() const { return size_; }
    bool contains(EdgeIndex e) const { return (bits_ >> e) & 1u; }
    int count() const { return __builtin_popcountll(bits_); }

    friend bool operator==(const EdgeSubset&, const EdgeSubset&) = default;

private:
    std::uint64_t bits_ = 0;
    int size_ = 0;
};

namespace detail {

inline void check_subset(const Multigraph& g, const EdgeSubset& a) {
    if (a.size() != g.edge_count())
        throw UsageError("edge subset has " + std::to_string(a.size()) + " bits but graph has " +
                         std::to_string(g.edge_count()) + " edges");
}

/// Component count of (V, A) for a raw bitmask; no validation.
inline int component_count_raw(const Multigraph& g, std::uint64_t bits) {
    DisjointSets ds(g.vertex_count());
    const auto& es = g.edges();
    while (bits) {
        int e = __builtin_ctzll(bits);
        bits &= bits - 1;
        ds.unite(es[static_cast<std::size_t>(e)].u, es[static_cast<std::size_t>(e)].v);
    }
    return ds.set_count();
}

} // namespace detail

/// k(A): components of (V, A), isolated vertices included.
inline int component_count(const Multigraph& g, const EdgeSubset& a) {
    detail::check_subset(g, a);
    return detail::component_count_raw(g, a.bits());
}

inline int component_count(const Multigraph& g) {
    DisjointSets ds(g.vertex_count());
    for (const auto& e : g.edges()) ds.unite(e.u, e.v);
    return ds.set_count();
}

inline bool is_connected(const Multigraph& g) { return g.vertex_count() <= 1 || component_count(g) == 1; }

struct RankCorank {
    int rank = 0;
    int corank = 0;
    friend bool operator==(const RankCorank&, const RankCorank&) = default;
};

/// r(A) = |V| - k(A), c(A) = |A| - |V| + k(A).
inline RankCorank rank_corank(const Multigraph& g, const EdgeSubset& a) {
    const int k = component_count(g, a);
    return {g.vertex_count() - k, a.count() - g.vertex_count() + k};
}

/// Component label per vertex, labels numbered in order of first appearance.
inline std::vector<int> component_labels(const Multigraph& g, std::uint64_t bits) {
    DisjointSets ds(g.vertex_count());
    const auto& es = g.edges();
    while (bits) {
        int e = __builtin_ctzll(bits);
        bits &= bits - 1;
        ds.unite(es[static_cast<std::size_t>(e)].u, es[static_cast<std::size_t>(e)].v);
    }
    std::vector<int> label(static_cast<std::size_t>(g.vertex_count()), -1);
    std::vector<int> root_label(static_cast<std::size_t>(g.vertex_count()), -1);
    int next = 0;
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = ds.find(v);
        if (root_label[r] < 0) root_label[r] = next++;
        label[v] = root_label[r];
    }
    return label;
}

inline Multigraph delete_edge(const Multigraph& g, EdgeIndex e) {
    if (e < 0 || e >= g.edge_count()) throw UsageError("edge index out of range: " + std::to_string(e));
    std::vector<Edge> es;
    es.reserve(g.edges().size() - 1);
    for (int i = 0; i < g.edge_count(); ++i)
        if (i != e) es.push_back(g.edges()[static_cast<std::size_t>(i)]);
    return Multigraph(g.vertex_count(), std::move(es));
}

/// Merges the endpoints of e into the smaller index and drops e; vertices
/// above the removed one shift down by one. A loop is simply deleted.
inline Multigraph contract_edge(const Multigraph& g, EdgeIndex e) {
    if (e < 0 || e >= g.edge_count()) throw UsageError("edge index out of range: " + std::to_string(e));
    const Edge target = g.edges()[static_cast<std::size_t>(e)];
    if (target.is_loop()) return delete_edge(g, e);
    const Vertex keep = std::min(target.u, target.v);
    const Vertex gone = std::max(target.u, target.v);
    auto relabel = [&](Vertex x) {
        if (x == gone) return keep;
        return x > gone ? x - 1 : x;
    };
    std::vector<Edge> es;
    es.reserve(g.edges().size() - 1);
    for (int i = 0; i < g.edge_count(); ++i) {
        if (i == e) continue;
        const auto& ed = g.edges()[static_cast<std::size_t>(i)];
        es.push_back({relabel(ed.u), relabel(ed.v)});
    }
    return Multigraph(g.vertex_count() - 1, std::move(es));
}

/// Opaque memoization key: vertex count plus the sorted multiset of
/// normalized endpoint pairs. Edge order does not matter.
struct GraphKey {
    std::vector<std::uint32_t> data;
    friend bool operator==(const GraphKey&, const GraphKey&) = default;
    friend auto operator<=>(const GraphKey&, const GraphKey&) = default;
};

inline GraphKey canonical_key(const Multigraph& g) {
    GraphKey key;
    key.data.reserve(g.edges().size() + 1);
    key.data.push_back(static_cast<std::uint32_t>(g.vertex_count()));
    std::vector<std::uint32_t> packed;
    packed.reserve(g.edges().size());
    for (const auto& e : g.edges()) {
        auto a = static_cast<std::uint32_t>(std::min(e.u, e.v));
        auto b = static_cast<std::uint32_t>(std::max(e.u, e.v));
        packed.push_back((a << 16) | b);
    }
    std::sort(packed.begin(), packed.end());
    key.data.insert(key.data.end(), packed.begin(), packed.end());
    return key;
}

struct GraphKeyHash {
    std::size_t operator()(const GraphKey& k) const noexcept {
        // FNV-1a over the words.
        std::uint64_t h = 1469598103934665603ull;
        for (auto w : k.data) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

/// Degree with loops counting twice.
inline std::vector<int> degrees(const Multigraph& g) {
    std::vector<int> deg(static_cast<std::size_t>(g.vertex_count()), 0);
    for (const auto& e : g.edges()) {
        ++deg[e.u];
        ++deg[e.v];
    }
    return deg;
}

inline bool is_even(const Multigraph& g) {
    for (int d : degrees(g))
        if (d % 2 != 0) return false;
    return true;
}

inline Multigraph remove_isolated_vertices(const Multigraph& g) {
    auto deg = degrees(g);
    std::vector<int> map(deg.size(), -1);
    int next = 0;
    for (std::size_t v = 0; v < deg.size(); ++v)
        if (deg[v] > 0) map[v] = next++;
    std::vector<Edge> es;
    es.reserve(g.edges().size());
    for (const auto& e : g.edges()) es.push_back({map[e.u], map[e.v]});
    return Multigraph(next, std::move(es));
}

// ---- standard families ----

inline Multigraph path_graph(int n) {
    std::vector<Edge> es;
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
    return Multigraph(n, std::move(es));
}

inline Multigraph cycle_graph(int n) {
    if (n < 1) throw UsageError("cycle needs at least one vertex");
    if (n == 1) return Multigraph(1, {{0, 0}});
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
    return Multigraph(n, std::move(es));
}

inline Multigraph complete_graph(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.push_back({i, j});
    return Multigraph(n, std::move(es));
}

inline Multigraph triangle() { return cycle_graph(3); }

inline std::string describe(const Multigraph& g) {
    std::string s = "n=" + std::to_string(g.vertex_count()) + " edges=[";
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        if (i) s += ",";
        s += "[" + std::to_string(g.edges()[i].u) + "," + std::to_string(g.edges()[i].v) + "]";
    }
    return s + "]";
}

// ---- JSON: {"n": <int>, "edges": [[u,v], ...]} ----

inline void to_json(nlohmann::json& j, const Multigraph& g) {
    auto edges = nlohmann::json::array();
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v});
    j = nlohmann::json{{"n", g.vertex_count()}, {"edges", edges}};
}

inline void from_json(const nlohmann::json& j, Multigraph& g) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw UsageError("graph JSON must be an object with \"n\" and \"edges\"");
    if (!j.at("n").is_number_integer()) throw UsageError("\"n\" must be an integer");
    if (!j.at("edges").is_array()) throw UsageError("\"edges\" must be an array");
    std::vector<Edge> es;
    for (const auto& item : j.at("edges")) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_number_integer() || !item[1].is_number_integer())
            throw UsageError("each edge must be a pair of integers");
        es.push_back({item[0].get<int>(), item[1].get<int>()});
    }
    g = Multigraph(j.at("n").get<int>(), std::move(es));
}

} // namespace rcm
