#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/instances/graphs.hpp"
#include "fraisse/serialize.hpp"
#include "fraisse/verdict.hpp"

namespace fraisse {

// Objects of size at most `bound` in fair enumeration order. Enumeration is
// size-major, so the scan stops at the first larger object; finite
// categories are listed in full regardless of size.
inline std::vector<object_ref> objects_within(const category& cat, int bound) {
    std::vector<object_ref> out;
    if (cat.finite()) {
        for (auto& o : cat.enumerate_objects(static_cast<std::size_t>(-1))) out.push_back(std::move(o));
        return out;
    }
    for (std::size_t count = 16;; count *= 2) {
        auto objs = cat.enumerate_objects(count);
        out.clear();
        for (const auto& o : objs) {
            if (cat.object_size(o) > bound) return out;
            out.push_back(o);
        }
        if (objs.size() < count) return out;
    }
}

inline bool certificate_closes(const category& cat, const arrow& f, const arrow& g,
                               const amalgam_certificate& cert) {
    if (!cat.valid_arrow(cert.left) || !cat.valid_arrow(cert.right)) return false;
    if (cert.left.dom != f.cod || cert.right.dom != g.cod) return false;
    if (cert.left.cod != cert.right.cod) return false;
    return cat.compose(cert.left, f) == cat.compose(cert.right, g);
}

// Exhaustive amalgam enumeration in canonical order: candidate codomains by
// size, then hom order. The size caps make each search complete: a graph or
// chain amalgam restricts to the union of the two images (|x| + |y| - |z|);
// in the surjection instance the pairs (f'(i), g'(i)) of any amalgam form a
// sub-fiber-product, so |x|*|y| suffices; finite categories are exhausted.
inline std::vector<amalgam_certificate> enumerate_amalgams(const category& cat, const arrow& f,
                                                           const arrow& g, std::size_t limit) {
    require(f.dom == g.dom, "DomainMismatch", "amalgamation needs a common domain");
    if (dynamic_cast<const graph_category*>(&cat)) return graph_glue_amalgams(f, g, limit);

    std::vector<amalgam_certificate> out;
    if (limit == 0) return out;
    std::vector<object_ref> candidates;
    if (cat.finite()) {
        candidates = cat.enumerate_objects(static_cast<std::size_t>(-1));
    } else {
        int nx = cat.object_size(f.cod), ny = cat.object_size(g.cod), nz = cat.object_size(f.dom);
        int cap = cat.payload_kind() == "set" ? nx * ny : nx + ny - nz;
        candidates = objects_within(cat, cap);
    }
    for (const auto& w : candidates) {
        for (const auto& fp : cat.hom(f.cod, w)) {
            arrow target = cat.compose(fp, f);
            for (auto& gp : cat.left_factors(g, target, limit - out.size())) {
                out.push_back(amalgam_certificate{fp, std::move(gp)});
                if (out.size() >= limit) return out;
            }
        }
    }
    return out;
}

struct amalgam_outcome {
    std::optional<amalgam_certificate> certificate;
    bool complete = false;  // absence of a certificate disproves amalgamation
    std::string method;     // "oracle" or "search"
};

// First certificate for the pair (f, g): the class oracle when its answer
// validates, otherwise the canonical-order search. Searches are complete at
// their size caps, so an empty result is a definitive non-amalgamation.
inline amalgam_outcome amalgamate_pair(const category& cat, const arrow& f, const arrow& g) {
    if (auto cert = cat.oracle_amalgam(f, g); cert && certificate_closes(cat, f, g, *cert))
        return amalgam_outcome{std::move(cert), true, "oracle"};
    auto found = enumerate_amalgams(cat, f, g, 1);
    bool complete = cat.amalgam_search_complete();
    if (found.empty()) return amalgam_outcome{std::nullopt, complete, "search"};
    return amalgam_outcome{std::move(found.front()), complete, "search"};
}

inline json arrow_brief(const arrow& f) {
    return json{{"dom", f.dom.id}, {"cod", f.cod.id}, {"arrow", f.id()}};
}

// Shared scan behind ap_at and is_amalgamable: every pair f: z' -> x,
// g: z' -> y with |x|, |y| <= bound must amalgamate after precomposition
// with e (e = identity gives the plain amalgamation property).
inline verdict weak_pairs_scan(const category& cat, const arrow& e, int bound) {
    json detail;
    detail["arrow"] = arrow_brief(e);
    if (cat.has_amalgam_oracle()) {
        detail["method"] = "class oracle";
        return make_verdict(status::holds, true, static_cast<std::size_t>(bound), detail);
    }
    const object_ref& zp = e.cod;
    auto universe = objects_within(cat, bound);
    std::size_t pairs = 0;
    for (const auto& x : universe)
        for (const auto& f : cat.hom(zp, x)) {
            arrow fe = cat.compose(f, e);
            for (const auto& y : universe)
                for (const auto& g : cat.hom(zp, y)) {
                    ++pairs;
                    auto got = amalgamate_pair(cat, fe, cat.compose(g, e));
                    if (!got.certificate) {
                        detail["counterexample"] = json{{"f", arrow_brief(f)}, {"g", arrow_brief(g)}};
                        status s = got.complete ? status::fails : status::unknown_within_bound;
                        return make_verdict(s, got.complete, static_cast<std::size_t>(bound), detail);
                    }
                }
        }
    detail["pairs_checked"] = pairs;
    detail["method"] = "search";
    return make_verdict(status::holds, cat.finite(), static_cast<std::size_t>(bound), detail);
}

// Amalgamation property at z: every pair out of z amalgamates. Fails is
// definitive; Holds is exhaustive only for finite categories or total class
// oracles, and carries the bound otherwise.
inline verdict ap_at(const category& cat, const object_ref& z, int bound) {
    return weak_pairs_scan(cat, cat.identity(z), bound);
}

// Weak amalgamation of one arrow: pairs out of cod(e) amalgamate after
// precomposition with e.
inline verdict is_amalgamable(const category& cat, const arrow& e, int bound) {
    return weak_pairs_scan(cat, e, bound);
}

// Out-arrow universe for witness searches: the identity first, then hom
// into every object within the bound.
inline std::vector<arrow> out_arrows(const category& cat, const object_ref& z, int bound) {
    std::vector<arrow> out{cat.identity(z)};
    for (const auto& t : objects_within(cat, bound))
        for (const auto& e : cat.hom(z, t))
            if (e != out.front()) out.push_back(e);
    return out;
}

enum class cone_property { cap, wap };

// CAP: every object has an out-arrow whose codomain has the AP.
// WAP: every object has an amalgamable out-arrow.
inline verdict cone_scan(const category& cat, cone_property which, int bound) {
    json witnesses = json::object();
    auto universe = objects_within(cat, bound);
    for (const auto& z : universe) {
        std::optional<arrow> witness;
        for (const auto& e : out_arrows(cat, z, bound)) {
            verdict v = which == cone_property::cap ? ap_at(cat, e.cod, bound)
                                                    : is_amalgamable(cat, e, bound);
            if (v.holds()) {
                witness = e;
                break;
            }
        }
        if (!witness) {
            json detail{{"failing_object", z.id}};
            status s = cat.finite() ? status::fails : status::unknown_within_bound;
            return make_verdict(s, cat.finite(), static_cast<std::size_t>(bound), detail);
        }
        witnesses[z.id] = arrow_brief(*witness);
    }
    json detail{{"witnesses", witnesses}};
    return make_verdict(status::holds, cat.finite(), static_cast<std::size_t>(bound), detail);
}

inline verdict has_cap(const category& cat, int bound) { return cone_scan(cat, cone_property::cap, bound); }
inline verdict has_wap(const category& cat, int bound) { return cone_scan(cat, cone_property::wap, bound); }

} // namespace fraisse
