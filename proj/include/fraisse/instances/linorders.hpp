#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/category.hpp"

namespace fraisse {

// Strictly increasing maps [a] -> [b] in lexicographic order; pinned entries
// fix images. These are exactly the embeddings of finite linear orders.
inline std::vector<std::vector<int>> increasing_maps(int a, int b, std::vector<int> pinned,
                                                     std::size_t limit) {
    if (pinned.empty()) pinned.assign(static_cast<std::size_t>(a), -1);
    std::vector<std::vector<int>> out;
    if (a > b || limit == 0) return out;
    std::vector<int> map(static_cast<std::size_t>(a), -1);
    auto rec = [&](auto&& self, int i, int low) -> bool {
        if (i == a) {
            out.push_back(map);
            return out.size() >= limit;
        }
        int p = pinned[static_cast<std::size_t>(i)];
        int remaining = a - i - 1;
        for (int t = low; t + remaining < b; ++t) {
            if (p >= 0 && t != p) continue;
            map[static_cast<std::size_t>(i)] = t;
            if (self(self, i + 1, t + 1)) return true;
        }
        return false;
    };
    rec(rec, 0, 0);
    return out;
}

class linorder_category final : public category {
public:
    const std::string& name() const override {
        static const std::string n = "builtin:linord";
        return n;
    }

    std::string payload_kind() const override { return "linord"; }

    std::vector<object_ref> enumerate_objects(std::size_t count) const override {
        std::vector<object_ref> out;
        for (int n = 1; out.size() < count; ++n) out.push_back(make_object(lin_order_data{n}));
        return out;
    }

    int object_size(const object_ref& a) const override {
        return std::get<lin_order_data>(a.payload).n;
    }

    arrow identity(const object_ref& a) const override {
        int n = std::get<lin_order_data>(a.payload).n;
        std::vector<int> m(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
        return arrow{a, a, std::move(m)};
    }

    bool valid_arrow(const arrow& f) const override {
        const auto* a = std::get_if<lin_order_data>(&f.dom.payload);
        const auto* b = std::get_if<lin_order_data>(&f.cod.payload);
        if (!a || !b || !std::holds_alternative<std::vector<int>>(f.payload)) return false;
        const auto& m = f.map();
        if (m.size() != static_cast<std::size_t>(a->n)) return false;
        int prev = -1;
        for (int v : m) {
            if (v <= prev || v >= b->n) return false;
            prev = v;
        }
        return true;
    }

    // Shuffle amalgam: merge the two complements of the shared chain, placing
    // x-elements before y-elements between consecutive shared cut points.
    std::optional<amalgam_certificate> oracle_amalgam(const arrow& f, const arrow& g) const override {
        require(f.dom == g.dom, "DomainMismatch", "amalgamation needs a common domain");
        int nx = std::get<lin_order_data>(f.cod.payload).n;
        int ny = std::get<lin_order_data>(g.cod.payload).n;
        const auto& fm = f.map();
        const auto& gm = g.map();
        std::vector<int> xmap(static_cast<std::size_t>(nx), -1), ymap(static_cast<std::size_t>(ny), -1);
        int pos = 0, xi = 0, yi = 0;
        for (std::size_t t = 0; t <= fm.size(); ++t) {
            int xcut = t < fm.size() ? fm[t] : nx;
            int ycut = t < gm.size() ? gm[t] : ny;
            while (xi < xcut) xmap[static_cast<std::size_t>(xi++)] = pos++;
            while (yi < ycut) ymap[static_cast<std::size_t>(yi++)] = pos++;
            if (t < fm.size()) {
                xmap[static_cast<std::size_t>(xi++)] = pos;
                ymap[static_cast<std::size_t>(yi++)] = pos;
                ++pos;
            }
        }
        object_ref wobj = make_object(lin_order_data{pos});
        return amalgam_certificate{arrow{f.cod, wobj, std::move(xmap)},
                                   arrow{g.cod, wobj, std::move(ymap)}};
    }
    bool has_amalgam_oracle() const override { return true; }
    bool amalgam_search_complete() const override { return true; }

    std::optional<std::pair<arrow, arrow>> join(const object_ref& a, const object_ref& b) const override {
        int na = std::get<lin_order_data>(a.payload).n;
        int nb = std::get<lin_order_data>(b.payload).n;
        object_ref wobj = make_object(lin_order_data{na + nb});
        std::vector<int> la(static_cast<std::size_t>(na)), rb(static_cast<std::size_t>(nb));
        for (int i = 0; i < na; ++i) la[static_cast<std::size_t>(i)] = i;
        for (int i = 0; i < nb; ++i) rb[static_cast<std::size_t>(i)] = na + i;
        return std::pair{arrow{a, wobj, std::move(la)}, arrow{b, wobj, std::move(rb)}};
    }

    // Insertions of one new element at each of the n + 1 gaps.
    std::vector<arrow> extension_arrows(const object_ref& a) const override {
        int n = std::get<lin_order_data>(a.payload).n;
        object_ref big = make_object(lin_order_data{n + 1});
        std::vector<arrow> out;
        for (int gap = 0; gap <= n; ++gap) {
            std::vector<int> m(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i < gap ? i : i + 1;
            out.push_back(arrow{a, big, std::move(m)});
        }
        return out;
    }

    std::vector<arrow> left_factors(const arrow& q, const arrow& r, std::size_t limit) const override {
        require(q.dom == r.dom, "DomainMismatch", "left_factors: q and r must share their domain");
        int ny = std::get<lin_order_data>(q.cod.payload).n;
        int nw = std::get<lin_order_data>(r.cod.payload).n;
        std::vector<int> pinned(static_cast<std::size_t>(ny), -1);
        const auto& qm = q.map();
        const auto& rm = r.map();
        for (std::size_t i = 0; i < qm.size(); ++i) {
            int& slot = pinned[static_cast<std::size_t>(qm[i])];
            if (slot >= 0 && slot != rm[i]) return {};
            slot = rm[i];
        }
        std::vector<arrow> out;
        for (auto& m : increasing_maps(ny, nw, pinned, limit)) out.push_back(arrow{q.cod, r.cod, std::move(m)});
        return out;
    }

protected:
    std::vector<arrow> hom_impl(const object_ref& a, const object_ref& b) const override {
        int na = std::get<lin_order_data>(a.payload).n;
        int nb = std::get<lin_order_data>(b.payload).n;
        std::vector<arrow> out;
        for (auto& m : increasing_maps(na, nb, {}, static_cast<std::size_t>(-1)))
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
};

} // namespace fraisse
