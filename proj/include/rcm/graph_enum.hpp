#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <set>
#include <vector>

#include "rcm/graph.hpp"

namespace rcm {

struct GraphFamily {
    int min_vertices = 1;
    int max_vertices = 4;
    int min_edges = 0;
    int max_edges = 4;
    bool loops = true;
    bool parallel_edges = true;
    bool connected_only = false;
    bool no_isolated_vertices = false;
};

namespace detail {

/// Lexicographically least sorted edge list over all relabelings that list
/// vertices in non-increasing degree order. Degree classes are permuted
/// exhaustively, so two graphs get the same form iff they are isomorphic.
inline std::vector<std::uint16_t> isomorphism_form(const Multigraph& g) {
    const int n = g.vertex_count();
    auto deg = degrees(g);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deg[a] > deg[b]; });

    std::vector<std::pair<int, int>> groups;  // [begin, end) into order
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && deg[order[j]] == deg[order[i]]) ++j;
        groups.emplace_back(i, j);
        i = j;
    }

    std::vector<std::uint16_t> best, current(g.edges().size());
    std::vector<int> label(static_cast<std::size_t>(n));
    auto evaluate = [&]() {
        for (int pos = 0; pos < n; ++pos) label[order[pos]] = pos;
        for (std::size_t i = 0; i < g.edges().size(); ++i) {
            int a = label[g.edges()[i].u], b = label[g.edges()[i].v];
            if (a > b) std::swap(a, b);
            current[i] = static_cast<std::uint16_t>((a << 8) | b);
        }
        std::sort(current.begin(), current.end());
        if (best.empty() || current < best) best = current;
    };

    for (auto [b, e] : groups) std::sort(order.begin() + b, order.begin() + e);
    while (true) {
        evaluate();
        std::size_t gi = 0;
        for (; gi < groups.size(); ++gi) {
            auto [b, e] = groups[gi];
            if (std::next_permutation(order.begin() + b, order.begin() + e)) break;
        }
        if (gi == groups.size()) break;
    }
    if (g.edges().empty()) best.clear();
    best.insert(best.begin(), static_cast<std::uint16_t>(n));
    return best;
}

} // namespace detail

/// All multigraphs in the family, one representative per isomorphism class,
/// in a deterministic order (vertex count, then edge count, then generation order).
inline std::vector<Multigraph> enumerate_graphs(const GraphFamily& fam) {
    std::vector<Multigraph> out;
    for (int n = fam.min_vertices; n <= fam.max_vertices; ++n) {
        std::vector<Edge> types;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                if (i != j || fam.loops) types.push_back({i, j});
        for (int m = fam.min_edges; m <= fam.max_edges; ++m) {
            std::set<std::vector<std::uint16_t>> seen;
            std::vector<int> pick;
            std::function<void(int)> rec = [&](int from) {
                if (static_cast<int>(pick.size()) == m) {
                    std::vector<Edge> es;
                    es.reserve(pick.size());
                    for (int t : pick) es.push_back(types[static_cast<std::size_t>(t)]);
                    Multigraph g(n, std::move(es));
                    if (fam.connected_only && !is_connected(g)) return;
                    if (fam.no_isolated_vertices) {
                        for (int d : degrees(g))
                            if (d == 0) return;
                    }
                    if (seen.insert(detail::isomorphism_form(g)).second) out.push_back(std::move(g));
                    return;
                }
                for (int t = from; t < static_cast<int>(types.size()); ++t) {
                    pick.push_back(t);
                    rec(fam.parallel_edges ? t : t + 1);
                    pick.pop_back();
                }
            };
            rec(0);
        }
    }
    return out;
}

} // namespace rcm
