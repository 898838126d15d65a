#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/amalgamation.hpp"
#include "fraisse/category.hpp"
#include "fraisse/json.hpp"
#include "fraisse/sequence.hpp"

namespace fraisse {

// Opposite of finite nonempty sets with surjections: an arrow a -> b is
// stored as a surjection [|b|] ->> [|a|]. Composition therefore reads
// p_{g.f}(i) = p_f(p_g(i)).
class surj_category final : public category {
public:
    const std::string& name() const override {
        static const std::string n = "builtin:surj";
        return n;
    }

    std::string payload_kind() const override { return "set"; }

    std::vector<object_ref> enumerate_objects(std::size_t count) const override {
        std::vector<object_ref> out;
        for (int n = 1; out.size() < count; ++n) out.push_back(make_object(fin_set_data{n}));
        return out;
    }

    int object_size(const object_ref& a) const override {
        return std::get<fin_set_data>(a.payload).n;
    }

    arrow identity(const object_ref& a) const override {
        int n = std::get<fin_set_data>(a.payload).n;
        std::vector<int> m(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)] = i;
        return arrow{a, a, std::move(m)};
    }

    bool valid_arrow(const arrow& f) const override {
        const auto* a = std::get_if<fin_set_data>(&f.dom.payload);
        const auto* b = std::get_if<fin_set_data>(&f.cod.payload);
        if (!a || !b || !std::holds_alternative<std::vector<int>>(f.payload)) return false;
        const auto& m = f.map();
        if (m.size() != static_cast<std::size_t>(b->n)) return false;
        std::vector<bool> hit(static_cast<std::size_t>(a->n), false);
        for (int v : m) {
            if (v < 0 || v >= a->n) return false;
            hit[static_cast<std::size_t>(v)] = true;
        }
        return std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
    }

    // Fiber product: the amalgam's points are the pairs (u, v) with
    // p_f(u) = p_g(v), listed lexicographically.
    std::optional<amalgam_certificate> oracle_amalgam(const arrow& f, const arrow& g) const override {
        require(f.dom == g.dom, "DomainMismatch", "amalgamation needs a common domain");
        int nx = std::get<fin_set_data>(f.cod.payload).n;
        int ny = std::get<fin_set_data>(g.cod.payload).n;
        const auto& pf = f.map();
        const auto& pg = g.map();
        std::vector<int> left, right;
        for (int u = 0; u < nx; ++u)
            for (int v = 0; v < ny; ++v)
                if (pf[static_cast<std::size_t>(u)] == pg[static_cast<std::size_t>(v)]) {
                    left.push_back(u);
                    right.push_back(v);
                }
        object_ref wobj = make_object(fin_set_data{static_cast<int>(left.size())});
        return amalgam_certificate{arrow{f.cod, wobj, std::move(left)},
                                   arrow{g.cod, wobj, std::move(right)}};
    }
    bool has_amalgam_oracle() const override { return true; }
    bool amalgam_search_complete() const override { return true; }

    std::optional<std::pair<arrow, arrow>> join(const object_ref& a, const object_ref& b) const override {
        int na = std::get<fin_set_data>(a.payload).n;
        int nb = std::get<fin_set_data>(b.payload).n;
        int nw = std::max(na, nb);
        object_ref wobj = make_object(fin_set_data{nw});
        std::vector<int> la(static_cast<std::size_t>(nw)), rb(static_cast<std::size_t>(nw));
        for (int i = 0; i < nw; ++i) {
            la[static_cast<std::size_t>(i)] = std::min(i, na - 1);
            rb[static_cast<std::size_t>(i)] = std::min(i, nb - 1);
        }
        return std::pair{arrow{a, wobj, std::move(la)}, arrow{b, wobj, std::move(rb)}};
    }

    // Monotone point splits [n+1] ->> [n]: element j is duplicated. Every
    // one-point extension is isomorphic to one of these.
    std::vector<arrow> extension_arrows(const object_ref& a) const override {
        int n = std::get<fin_set_data>(a.payload).n;
        object_ref big = make_object(fin_set_data{n + 1});
        std::vector<arrow> out;
        for (int j = 0; j < n; ++j) {
            std::vector<int> m(static_cast<std::size_t>(n + 1));
            for (int i = 0; i <= n; ++i) m[static_cast<std::size_t>(i)] = i <= j ? i : i - 1;
            out.push_back(arrow{a, big, std::move(m)});
        }
        return out;
    }

    std::vector<arrow> left_factors(const arrow& q, const arrow& r, std::size_t limit) const override {
        require(q.dom == r.dom, "DomainMismatch", "left_factors: q and r must share their domain");
        int ny = std::get<fin_set_data>(q.cod.payload).n;
        int nw = std::get<fin_set_data>(r.cod.payload).n;
        const auto& pq = q.map();
        const auto& pr = r.map();
        std::vector<std::vector<int>> candidates(static_cast<std::size_t>(nw));
        for (int i = 0; i < nw; ++i)
            for (int v = 0; v < ny; ++v)
                if (pq[static_cast<std::size_t>(v)] == pr[static_cast<std::size_t>(i)])
                    candidates[static_cast<std::size_t>(i)].push_back(v);

        std::vector<arrow> out;
        if (limit == 0) return out;
        std::vector<int> pg(static_cast<std::size_t>(nw), -1);
        std::vector<int> uses(static_cast<std::size_t>(ny), 0);
        int uncovered = ny;
        auto rec = [&](auto&& self, int i) -> bool {
            if (nw - i < uncovered) return false;
            if (i == nw) {
                out.push_back(arrow{q.cod, r.cod, pg});
                return out.size() >= limit;
            }
            for (int v : candidates[static_cast<std::size_t>(i)]) {
                pg[static_cast<std::size_t>(i)] = v;
                if (uses[static_cast<std::size_t>(v)]++ == 0) --uncovered;
                bool done = self(self, i + 1);
                if (--uses[static_cast<std::size_t>(v)] == 0) ++uncovered;
                if (done) return true;
            }
            return false;
        };
        rec(rec, 0);
        return out;
    }

protected:
    std::vector<arrow> hom_impl(const object_ref& a, const object_ref& b) const override {
        int na = std::get<fin_set_data>(a.payload).n;
        int nb = std::get<fin_set_data>(b.payload).n;
        std::vector<arrow> out;
        if (nb < na) return out;
        std::vector<int> m(static_cast<std::size_t>(nb), -1);
        std::vector<int> uses(static_cast<std::size_t>(na), 0);
        int uncovered = na;
        auto rec = [&](auto&& self, int i) -> void {
            if (nb - i < uncovered) return;
            if (i == nb) {
                out.push_back(arrow{a, b, m});
                return;
            }
            for (int v = 0; v < na; ++v) {
                m[static_cast<std::size_t>(i)] = v;
                if (uses[static_cast<std::size_t>(v)]++ == 0) --uncovered;
                self(self, i + 1);
                if (--uses[static_cast<std::size_t>(v)] == 0) ++uncovered;
            }
        };
        rec(rec, 0);
        return out;
    }

    arrow compose_impl(const arrow& g, const arrow& f) const override {
        const auto& pf = f.map();
        const auto& pg = g.map();
        std::vector<int> m(pg.size());
        for (std::size_t i = 0; i < pg.size(); ++i) m[i] = pf[static_cast<std::size_t>(pg[i])];
        return arrow{f.dom, g.cod, std::move(m)};
    }
};

// Coverage report for a chain in the surjection category: for every set size
// up to n, the first recorded stage that projects onto it (an arrow size->
// stage is stored as a surjection stage ->> size), plus monotonicity facts
// about the recorded stage sizes.
inline json projective_cover_check(const sequence& sys, int n) {
    const category& cat = *sys.cat;
    json covered = json::object();
    json missing = json::array();
    for (int s = 1; s <= n; ++s) {
        object_ref a = cat.make_object(fin_set_data{s});
        bool found = false;
        for (std::size_t t = 0; t < sys.length(); ++t) {
            const auto& h = cat.hom(a, sys.stage(t));
            if (!h.empty()) {
                covered[std::to_string(s)] = json{{"stage", t}, {"arrow", arrow_brief(h.front())}};
                found = true;
                break;
            }
        }
        if (!found) missing.push_back(s);
    }

    json sizes = json::array();
    bool non_decreasing = true;
    for (std::size_t t = 0; t < sys.length(); ++t) {
        int sz = cat.object_size(sys.stage(t));
        if (t > 0 && sz < cat.object_size(sys.stage(t - 1))) non_decreasing = false;
        sizes.push_back(sz);
    }
    // Least index from which the sizes strictly increase all the way to the
    // end; an empty strict tail means the record ends on a repeat.
    std::size_t strict_from = sys.length() - 1;
    for (std::size_t t = sys.length() - 1; t > 0; --t) {
        if (cat.object_size(sys.stage(t - 1)) < cat.object_size(sys.stage(t)))
            strict_from = t - 1;
        else
            break;
    }
    return json{{"bound", n},
                {"covered", std::move(covered)},
                {"missing", std::move(missing)},
                {"sizes", std::move(sizes)},
                {"non_decreasing", non_decreasing},
                {"strict_tail_from", strict_from},
                {"eventually_strict", strict_from < sys.length() - 1}};
}

} // namespace fraisse
