#pragma once

#include <cstddef>
#include <string>

#include "fraisse/amalgamation.hpp"
#include "fraisse/category.hpp"
#include "fraisse/error.hpp"
#include "fraisse/sequence.hpp"

namespace fraisse {

// Finite stand-in for the colimit of a chain: the structure at a chosen
// horizon stage together with the cocone arrows into it, keeping the whole
// recorded chain so that questions about the colimit can hunt witnesses
// past the horizon (a colimit arrow is any recorded arrow into any stage,
// compared after pushing forward).
struct colimit_approx {
    sequence chain;
    std::size_t at = 0;

    const object_ref& structure() const { return chain.stage(at); }
    arrow cocone(std::size_t n) const { return bonding(chain, n, at); }
    std::size_t horizon() const { return at; }
    std::size_t recorded() const { return chain.length(); }
};

inline colimit_approx colimit_approx_of(const sequence& u, std::size_t at) {
    require(u.cat != nullptr && u.length() > 0, "EmptyList", "colimit of an empty sequence");
    require(u.cat->payload_kind() != "abstract", "AbstractCategory",
            "colimit approximation needs structural objects");
    require(at < u.length(), "OutOfRange", "horizon stage is not recorded");
    return colimit_approx{u, at};
}

// The least recorded stage into which every object within the bound maps
// (the horizon at which the bounded age has fully appeared), so questions
// asked at this horizon still leave the rest of the record for hunting
// witnesses.  Falls back to the last stage when some object never shows up.
inline std::size_t default_horizon(const sequence& u, int bound) {
    const category& cat = *u.cat;
    auto universe = objects_within(cat, bound);
    for (std::size_t at = 0; at < u.length(); ++at) {
        bool all = true;
        for (const auto& x : universe)
            if (cat.hom(x, u.stage(at)).empty()) {
                all = false;
                break;
            }
        if (all) return at;
    }
    return u.length() - 1;
}

// The horizon the record actually supports. Colimit questions asked at
// horizon `a` need the scheduled requirement families with base `a`
// discharged (their witnesses pin stage a through the bondings); a builder
// ledger with unfinished requirements at base n therefore claims no
// evidence for horizons past n - 1. Non-builder records (empty ledger)
// support the plain default.
inline std::size_t supported_horizon(const sequence& u, int bound) {
    std::size_t at = default_horizon(u, bound);
    for (const auto& entry : u.ledger) {
        if (!entry.is_object() || entry.value("status", std::string{}) != "unfinished") continue;
        if (!entry.contains("n") || !entry["n"].is_number_unsigned()) continue;
        auto n = entry["n"].get<std::size_t>();
        if (n == 0) return 0;
        if (n - 1 < at) at = n - 1;
    }
    return at;
}

// An arrow into the colimit, represented at the recorded stage it enters.
struct col_arrow {
    std::size_t stage;
    arrow rep;
};

inline arrow push_to(const colimit_approx& U, const col_arrow& c, std::size_t j) {
    require(c.stage <= j && j < U.chain.length(), "OutOfRange", "pushforward target not recorded");
    return U.chain.cat->compose(bonding(U.chain, c.stage, j), c.rep);
}

// Colimit arrows are equal when their pushforwards eventually agree, and
// once equal they stay equal, so comparing at the last recorded stage
// decides every equality the record can see.
inline bool col_equal(const colimit_approx& U, const col_arrow& a, const col_arrow& b) {
    if (a.rep.dom != b.rep.dom) return false;
    std::size_t last = U.chain.length() - 1;
    return push_to(U, a, last) == push_to(U, b, last);
}

} // namespace fraisse
