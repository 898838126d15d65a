#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/error.hpp"

namespace fraisse {

// Finite graph on vertices 0..n-1. Edges are stored sorted with i < j.
struct graph_data {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    bool operator==(const graph_data&) const = default;
};

// Finite linear order 0 < 1 < ... < n-1. The order is implicit in the labels.
struct lin_order_data {
    int n = 0;
    bool operator==(const lin_order_data&) const = default;
};

// Plain finite set 0..n-1 (used by the projective, surjection-dual instance).
struct fin_set_data {
    int n = 0;
    bool operator==(const fin_set_data&) const = default;
};

inline std::pair<int, int> ordered_edge(int a, int b) {
    return a < b ? std::pair{a, b} : std::pair{b, a};
}

inline void normalize_edges(graph_data& g) {
    for (auto& e : g.edges) e = ordered_edge(e.first, e.second);
    std::sort(g.edges.begin(), g.edges.end());
    g.edges.erase(std::unique(g.edges.begin(), g.edges.end()), g.edges.end());
}

// Colex rank of the unordered pair {i,j}: pairs with larger max come later,
// so the encoding of a graph is unchanged by adding fresh isolated vertices.
inline int edge_rank(int i, int j) {
    auto [a, b] = ordered_edge(i, j);
    return b * (b - 1) / 2 + a;
}

inline std::uint64_t edge_mask(const graph_data& g) {
    require(g.n <= 11, "OutOfRange", "edge mask supports at most 11 vertices");
    std::uint64_t m = 0;
    for (auto [a, b] : g.edges) m |= 1ull << edge_rank(a, b);
    return m;
}

inline graph_data graph_from_mask(int n, std::uint64_t mask) {
    graph_data g{n, {}};
    for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
            if (mask >> edge_rank(i, j) & 1) g.edges.emplace_back(i, j);
    normalize_edges(g);
    return g;
}

inline bool has_edge(const graph_data& g, int a, int b) {
    return std::binary_search(g.edges.begin(), g.edges.end(), ordered_edge(a, b));
}

inline graph_data apply_permutation(const graph_data& g, const std::vector<int>& perm) {
    graph_data out{g.n, {}};
    out.edges.reserve(g.edges.size());
    for (auto [a, b] : g.edges) out.edges.push_back(ordered_edge(perm[a], perm[b]));
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

// Canonical labeling by minimal edge mask over all vertex permutations.
// Desk-scale ceiling: sizes above 8 are returned unchanged.
inline constexpr int canonical_size_limit = 8;

inline graph_data canonical_graph(const graph_data& g) {
    if (g.n > canonical_size_limit || g.n <= 1) {
        graph_data out = g;
        normalize_edges(out);
        return out;
    }
    std::vector<int> perm(static_cast<std::size_t>(g.n));
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = ~0ull;
    do {
        std::uint64_t m = edge_mask(apply_permutation(g, perm));
        if (m < best) best = m;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return graph_from_mask(g.n, best);
}

inline std::string graph_id(const graph_data& g) {
    std::string id = "graph:" + std::to_string(g.n);
    if (!g.edges.empty()) {
        id += ':';
        for (std::size_t i = 0; i < g.edges.size(); ++i) {
            if (i) id += ',';
            id += std::to_string(g.edges[i].first) + '-' + std::to_string(g.edges[i].second);
        }
    }
    return id;
}

} // namespace fraisse
