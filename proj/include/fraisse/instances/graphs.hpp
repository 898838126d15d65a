#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fraisse/category.hpp"

namespace fraisse {

// Embeddings a -> b (injective, edge iff edge) in lexicographic map order.
// pinned[i] >= 0 fixes the image of vertex i; pass {} for an unconstrained
// search. Returns at most `limit` maps.
inline std::vector<std::vector<int>> graph_embeddings(const graph_data& a, const graph_data& b,
                                                      std::vector<int> pinned, std::size_t limit) {
    if (pinned.empty()) pinned.assign(static_cast<std::size_t>(a.n), -1);
    std::vector<std::vector<int>> out;
    if (a.n > b.n || limit == 0) return out;
    std::vector<int> map(static_cast<std::size_t>(a.n), -1);
    std::vector<bool> used(static_cast<std::size_t>(b.n), false);
    for (int i = 0; i < a.n; ++i) {
        int p = pinned[static_cast<std::size_t>(i)];
        if (p < 0) continue;
        if (p >= b.n || used[static_cast<std::size_t>(p)]) return out;
        map[static_cast<std::size_t>(i)] = p;
        used[static_cast<std::size_t>(p)] = true;
    }
    auto compatible = [&](int v, int target) {
        for (int u = 0; u < a.n; ++u) {
            int t = map[static_cast<std::size_t>(u)];
            if (u == v || t < 0) continue;
            if (has_edge(a, u, v) != has_edge(b, t, target)) return false;
        }
        return true;
    };
    // Pinned vertices still need their mutual adjacencies checked once.
    for (int i = 0; i < a.n; ++i)
        if (pinned[static_cast<std::size_t>(i)] >= 0) {
            int t = map[static_cast<std::size_t>(i)];
            map[static_cast<std::size_t>(i)] = -1;
            bool ok = compatible(i, t);
            map[static_cast<std::size_t>(i)] = t;
            if (!ok) return out;
        }

    std::vector<int> free_vertices;
    for (int i = 0; i < a.n; ++i)
        if (pinned[static_cast<std::size_t>(i)] < 0) free_vertices.push_back(i);

    auto rec = [&](auto&& self, std::size_t idx) -> bool {
        if (idx == free_vertices.size()) {
            out.push_back(map);
            return out.size() >= limit;
        }
        int v = free_vertices[idx];
        for (int t = 0; t < b.n; ++t) {
            if (used[static_cast<std::size_t>(t)] || !compatible(v, t)) continue;
            map[static_cast<std::size_t>(v)] = t;
            used[static_cast<std::size_t>(t)] = true;
            bool full = self(self, idx + 1);
            used[static_cast<std::size_t>(t)] = false;
            map[static_cast<std::size_t>(v)] = -1;
            if (full) return true;
        }
        return false;
    };
    rec(rec, 0);
    return out;
}

// Literal object minting: id encodes the payload exactly as labeled. Used
// by constructions whose arrows refer to the labels they just built.
inline object_ref graph_ref(graph_data w) {
    normalize_edges(w);
    std::string id = graph_id(w);
    return object_ref{std::move(id), std::move(w)};
}

inline bool graphs_isomorphic_brute(const graph_data& a, const graph_data& b) {
    if (a.n != b.n || a.edges.size() != b.edges.size()) return false;
    return !graph_embeddings(a, b, {}, 1).empty();
}

// Canonical representatives of all graphs on n vertices, ordered by edge
// mask. Grown one vertex at a time from the previous size's list.
inline const std::vector<graph_data>& canonical_graphs_of_size(int n) {
    static std::map<int, std::vector<graph_data>> memo;
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
    require(n >= 1 && n <= canonical_size_limit, "OutOfRange",
            "object enumeration supports sizes 1.." + std::to_string(canonical_size_limit));
    std::vector<graph_data> result;
    if (n == 1) {
        result.push_back(graph_data{1, {}});
    } else {
        const auto& smaller = canonical_graphs_of_size(n - 1);
        std::set<std::uint64_t> seen;
        for (const auto& g : smaller) {
            for (std::uint64_t T = 0; T < (1ull << (n - 1)); ++T) {
                graph_data ext{n, g.edges};
                for (int v = 0; v < n - 1; ++v)
                    if (T >> v & 1) ext.edges.push_back(ordered_edge(v, n - 1));
                normalize_edges(ext);
                seen.insert(edge_mask(canonical_graph(ext)));
            }
        }
        for (auto m : seen) result.push_back(graph_from_mask(n, m));
    }
    return memo.emplace(n, std::move(result)).first->second;
}

// Amalgam of f : z -> x, g : y over z with no identifications beyond the
// z-image and no edges beyond those of x and y.
inline amalgam_certificate graph_free_amalgam(const arrow& f, const arrow& g) {
    require(f.dom == g.dom, "DomainMismatch", "amalgamation needs a common domain");
    const auto& gx = std::get<graph_data>(f.cod.payload);
    const auto& gy = std::get<graph_data>(g.cod.payload);
    const auto& fm = f.map();
    const auto& gm = g.map();

    std::vector<int> ymap(static_cast<std::size_t>(gy.n), -1);
    for (std::size_t t = 0; t < gm.size(); ++t) ymap[static_cast<std::size_t>(gm[t])] = fm[t];
    int next = gx.n;
    for (int v = 0; v < gy.n; ++v)
        if (ymap[static_cast<std::size_t>(v)] < 0) ymap[static_cast<std::size_t>(v)] = next++;

    graph_data w{next, gx.edges};
    for (auto [a, b] : gy.edges)
        w.edges.push_back(ordered_edge(ymap[static_cast<std::size_t>(a)], ymap[static_cast<std::size_t>(b)]));
    normalize_edges(w);

    object_ref wobj = graph_ref(std::move(w));
    std::vector<int> xmap(static_cast<std::size_t>(gx.n));
    for (int i = 0; i < gx.n; ++i) xmap[static_cast<std::size_t>(i)] = i;
    return amalgam_certificate{arrow{f.cod, wobj, xmap}, arrow{g.cod, wobj, ymap}};
}

// Exhaustive amalgam enumeration for a pair of graph embeddings. Candidates
// are the amalgamated unions: an identification pattern between the parts
// outside the z-images (smallest overlap first) plus an arbitrary cross-edge
// set in lexicographic order. Any amalgam restricts to such a union, so the
// search is complete at codomain size |x| + |y| - |z|. The first candidate
// is the free amalgam.
inline std::vector<amalgam_certificate> graph_glue_amalgams(const arrow& f, const arrow& g,
                                                            std::size_t limit) {
    require(f.dom == g.dom, "DomainMismatch", "amalgamation needs a common domain");
    const auto& gx = std::get<graph_data>(f.cod.payload);
    const auto& gy = std::get<graph_data>(g.cod.payload);
    const auto& fm = f.map();
    const auto& gm = g.map();
    std::vector<amalgam_certificate> out;

    std::vector<int> yz(static_cast<std::size_t>(gy.n), -1);
    for (std::size_t t = 0; t < gm.size(); ++t) yz[static_cast<std::size_t>(gm[t])] = fm[t];
    std::vector<int> xfree, yfree;
    {
        std::vector<bool> ximg(static_cast<std::size_t>(gx.n), false);
        for (int v : fm) ximg[static_cast<std::size_t>(v)] = true;
        for (int v = 0; v < gx.n; ++v)
            if (!ximg[static_cast<std::size_t>(v)]) xfree.push_back(v);
        for (int v = 0; v < gy.n; ++v)
            if (yz[static_cast<std::size_t>(v)] < 0) yfree.push_back(v);
    }

    // sigma maps a subset of xfree injectively into yfree; -1 means unmatched.
    std::vector<int> sigma(xfree.size(), -1);
    std::vector<bool> ytaken(yfree.size(), false);

    auto sigma_consistent = [&](std::size_t xi, std::size_t yi) {
        int u = xfree[xi], v = yfree[yi];
        for (std::size_t t = 0; t < fm.size(); ++t)
            if (has_edge(gx, u, fm[t]) != has_edge(gy, v, gm[t])) return false;
        for (std::size_t other = 0; other < xfree.size(); ++other) {
            if (sigma[other] < 0 || other == xi) continue;
            if (has_edge(gx, u, xfree[other]) != has_edge(gy, v, yfree[static_cast<std::size_t>(sigma[other])]))
                return false;
        }
        return true;
    };

    auto emit_with_cross_edges = [&]() {
        std::vector<int> ymap = yz;
        int next = gx.n;
        for (std::size_t xi = 0; xi < xfree.size(); ++xi)
            if (sigma[xi] >= 0) ymap[static_cast<std::size_t>(yfree[static_cast<std::size_t>(sigma[xi])])] = xfree[xi];
        std::vector<int> fresh;
        for (int v : yfree)
            if (ymap[static_cast<std::size_t>(v)] < 0) {
                ymap[static_cast<std::size_t>(v)] = next++;
                fresh.push_back(ymap[static_cast<std::size_t>(v)]);
            }
        std::vector<int> unmatched_x;
        for (std::size_t xi = 0; xi < xfree.size(); ++xi)
            if (sigma[xi] < 0) unmatched_x.push_back(xfree[xi]);

        graph_data base{next, gx.edges};
        for (auto [a, b] : gy.edges)
            base.edges.push_back(ordered_edge(ymap[static_cast<std::size_t>(a)], ymap[static_cast<std::size_t>(b)]));
        normalize_edges(base);

        std::vector<std::pair<int, int>> cross;
        for (int u : unmatched_x)
            for (int v : fresh) cross.push_back(ordered_edge(u, v));
        std::vector<int> xmap(static_cast<std::size_t>(gx.n));
        for (int i = 0; i < gx.n; ++i) xmap[static_cast<std::size_t>(i)] = i;

        for (std::uint64_t E = 0; E < (1ull << cross.size()); ++E) {
            graph_data w = base;
            for (std::size_t c = 0; c < cross.size(); ++c)
                if (E >> c & 1) w.edges.push_back(cross[c]);
            object_ref wobj = graph_ref(std::move(w));
            out.push_back(amalgam_certificate{arrow{f.cod, wobj, xmap}, arrow{g.cod, wobj, ymap}});
            if (out.size() >= limit) return true;
        }
        return false;
    };

    auto rec = [&](auto&& self, std::size_t xi, std::size_t matched, std::size_t want) -> bool {
        if (matched == want) return emit_with_cross_edges();
        if (xi == xfree.size()) return false;
        if (xfree.size() - xi < want - matched) return false;
        if (self(self, xi + 1, matched, want)) return true;
        for (std::size_t yi = 0; yi < yfree.size(); ++yi) {
            if (ytaken[yi] || !sigma_consistent(xi, yi)) continue;
            sigma[xi] = static_cast<int>(yi);
            ytaken[yi] = true;
            bool done = self(self, xi + 1, matched + 1, want);
            sigma[xi] = -1;
            ytaken[yi] = false;
            if (done) return true;
        }
        return false;
    };

    std::size_t max_overlap = std::min(xfree.size(), yfree.size());
    for (std::size_t want = 0; want <= max_overlap; ++want)
        if (rec(rec, 0, 0, want)) break;
    return out;
}

class graph_category final : public category {
public:
    const std::string& name() const override {
        static const std::string n = "builtin:graphs";
        return n;
    }

    std::string payload_kind() const override { return "graph"; }

    std::vector<object_ref> enumerate_objects(std::size_t count) const override {
        std::vector<object_ref> out;
        for (int n = 1; out.size() < count; ++n) {
            for (const auto& g : canonical_graphs_of_size(n)) {
                out.push_back(graph_ref(g));
                if (out.size() == count) break;
            }
        }
        return out;
    }

    int object_size(const object_ref& a) const override {
        return std::get<graph_data>(a.payload).n;
    }

    arrow identity(const object_ref& a) const override {
        const auto& g = std::get<graph_data>(a.payload);
        std::vector<int> m(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i) m[static_cast<std::size_t>(i)] = i;
        return arrow{a, a, std::move(m)};
    }

    bool valid_arrow(const arrow& f) const override {
        const auto* a = std::get_if<graph_data>(&f.dom.payload);
        const auto* b = std::get_if<graph_data>(&f.cod.payload);
        if (!a || !b || !std::holds_alternative<std::vector<int>>(f.payload)) return false;
        const auto& m = f.map();
        if (m.size() != static_cast<std::size_t>(a->n)) return false;
        std::vector<bool> used(static_cast<std::size_t>(b->n), false);
        for (int v : m) {
            if (v < 0 || v >= b->n || used[static_cast<std::size_t>(v)]) return false;
            used[static_cast<std::size_t>(v)] = true;
        }
        for (int i = 0; i < a->n; ++i)
            for (int j = i + 1; j < a->n; ++j)
                if (has_edge(*a, i, j) !=
                    has_edge(*b, m[static_cast<std::size_t>(i)], m[static_cast<std::size_t>(j)]))
                    return false;
        return true;
    }

    std::optional<amalgam_certificate> oracle_amalgam(const arrow& f, const arrow& g) const override {
        return graph_free_amalgam(f, g);
    }
    bool has_amalgam_oracle() const override { return true; }
    bool amalgam_search_complete() const override { return true; }

    std::optional<std::pair<arrow, arrow>> join(const object_ref& a, const object_ref& b) const override {
        const auto& ga = std::get<graph_data>(a.payload);
        const auto& gb = std::get<graph_data>(b.payload);
        graph_data w{ga.n + gb.n, ga.edges};
        for (auto [u, v] : gb.edges) w.edges.emplace_back(u + ga.n, v + ga.n);
        object_ref wobj = graph_ref(std::move(w));
        std::vector<int> la(static_cast<std::size_t>(ga.n)), rb(static_cast<std::size_t>(gb.n));
        for (int i = 0; i < ga.n; ++i) la[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < gb.n; ++i) rb[static_cast<std::size_t>(i)] = ga.n + i;
        return std::pair{arrow{a, wobj, std::move(la)}, arrow{b, wobj, std::move(rb)}};
    }

    // One-point extensions a -> a + v with neighborhood T, |T| <= 3, ordered
    // by |T| then lexicographically. Larger neighborhoods are reachable by
    // composing extensions, which keeps this universe finite on big stages.
    std::vector<arrow> extension_arrows(const object_ref& a) const override {
        const auto& g = std::get<graph_data>(a.payload);
        std::vector<arrow> out;
        std::vector<std::vector<int>> hoods{{}};
        for (int i = 0; i < g.n; ++i) hoods.push_back({i});
        for (int i = 0; i < g.n; ++i)
            for (int j = i + 1; j < g.n; ++j) hoods.push_back({i, j});
        for (int i = 0; i < g.n; ++i)
            for (int j = i + 1; j < g.n; ++j)
                for (int k = j + 1; k < g.n; ++k) hoods.push_back({i, j, k});
        std::vector<int> m(static_cast<std::size_t>(g.n));
        for (int i = 0; i < g.n; ++i) m[static_cast<std::size_t>(i)] = i;
        for (const auto& T : hoods) {
            graph_data ext{g.n + 1, g.edges};
            for (int t : T) ext.edges.push_back(ordered_edge(t, g.n));
            out.push_back(arrow{a, graph_ref(std::move(ext)), m});
        }
        return out;
    }

    std::vector<arrow> left_factors(const arrow& q, const arrow& r, std::size_t limit) const override {
        require(q.dom == r.dom, "DomainMismatch", "left_factors: q and r must share their domain");
        const auto& y = std::get<graph_data>(q.cod.payload);
        const auto& w = std::get<graph_data>(r.cod.payload);
        std::vector<int> pinned(static_cast<std::size_t>(y.n), -1);
        const auto& qm = q.map();
        const auto& rm = r.map();
        for (std::size_t i = 0; i < qm.size(); ++i) {
            int& slot = pinned[static_cast<std::size_t>(qm[i])];
            if (slot >= 0 && slot != rm[i]) return {};
            slot = rm[i];
        }
        std::vector<arrow> out;
        for (auto& m : graph_embeddings(y, w, pinned, limit)) out.push_back(arrow{q.cod, r.cod, std::move(m)});
        return out;
    }

protected:
    std::vector<arrow> hom_impl(const object_ref& a, const object_ref& b) const override {
        const auto& ga = std::get<graph_data>(a.payload);
        const auto& gb = std::get<graph_data>(b.payload);
        std::vector<arrow> out;
        for (auto& m : graph_embeddings(ga, gb, {}, static_cast<std::size_t>(-1)))
            out.push_back(arrow{a, b, std::move(m)});
        return out;
    }

    arrow compose_impl(const arrow& g, const arrow& f) const override {
        const auto& fm = f.map();
        const auto& gm = g.map();
        std::vector<int> m(fm.size());
        for (std::size_t i = 0; i < fm.size(); ++i) m[i] = gm[static_cast<std::size_t>(fm[i])];
        return arrow{f.dom, g.cod, std::move(m)};
    }

    object_payload canonical_payload(object_payload p) const override {
        return canonical_graph(std::get<graph_data>(p));
    }
};

// For every pair of disjoint vertex sets U, V drawn from `window` with
// |U| + |V| <= n: does some other vertex see all of U and none of V?
struct extension_axiom_report {
    bool holds = true;
    std::size_t checked = 0;
    json failures = json::array();
};

inline extension_axiom_report extension_axiom_check(const graph_data& g, int n,
                                                    const std::vector<int>& window) {
    extension_axiom_report rep;
    std::vector<int> verts = window;
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
    for (int v : verts) require(v >= 0 && v < g.n, "OutOfRange", "window vertex outside the graph");

    std::vector<int> picked;
    auto check_split = [&](const std::vector<int>& group) {
        // Every U/V split of `group` is tested via a bitmask over its members.
        for (std::uint64_t mask = 0; mask < (1ull << group.size()); ++mask) {
            ++rep.checked;
            bool found = false;
            for (int w = 0; w < g.n && !found; ++w) {
                if (std::find(group.begin(), group.end(), w) != group.end()) continue;
                bool ok = true;
                for (std::size_t i = 0; i < group.size() && ok; ++i) {
                    bool want = (mask >> i) & 1;
                    if (has_edge(g, w, group[i]) != want) ok = false;
                }
                found = ok;
            }
            if (!found) {
                rep.holds = false;
                json u = json::array(), v = json::array();
                for (std::size_t i = 0; i < group.size(); ++i)
                    ((mask >> i) & 1 ? u : v).push_back(group[i]);
                rep.failures.push_back(json{{"adjacent_to", u}, {"not_adjacent_to", v}});
            }
        }
    };
    auto rec = [&](auto&& self, std::size_t start, int remaining) -> void {
        check_split(picked);
        if (remaining == 0) return;
        for (std::size_t i = start; i < verts.size(); ++i) {
            picked.push_back(verts[i]);
            self(self, i + 1, remaining - 1);
            picked.pop_back();
        }
    };
    rec(rec, 0, n);
    return rep;
}

} // namespace fraisse
