#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fraisse/amalgamation.hpp"
#include "fraisse/category.hpp"
#include "fraisse/engine/colimit.hpp"
#include "fraisse/engine/witness.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json.hpp"
#include "fraisse/sequence.hpp"
#include "fraisse/serialize.hpp"
#include "fraisse/verdict.hpp"

namespace fraisse {

namespace detail {

// Shared quantifier core for weak injectivity, absolute or relative to an
// object filter. For every a and every e : a -> structure() there must be
// some i : a -> b such that every f : b -> y in the bounded universe has a
// witness g : y -> u_j at some recorded stage j past the horizon with
// g . f . i equal to e pushed to stage j. Arrows e are quantified at the
// horizon and witnesses hunted through the whole record: that is the
// honest finite approximation of the colimit statement, and it converges
// to it as horizon and record grow.
inline verdict weak_injectivity_scan(const colimit_approx& U, int bound,
                                     const std::function<bool(const object_ref&)>& keep) {
    const sequence& u = U.chain;
    const category& cat = *u.cat;
    std::size_t at = U.at;

    auto out_universe = [&](const object_ref& b) {
        std::vector<arrow> out;
        for (auto& f : cat.extension_arrows(b))
            if (!keep || keep(f.cod)) out.push_back(std::move(f));
        for (const auto& y : objects_within(cat, bound)) {
            if (keep && !keep(y)) continue;
            for (const auto& f : cat.hom(b, y)) {
                bool dup = false;
                for (const auto& have : out)
                    if (have == f) {
                        dup = true;
                        break;
                    }
                if (!dup) out.push_back(f);
            }
        }
        return out;
    };

    for (const auto& a : objects_within(cat, bound)) {
        // Identity first: on a genuinely generic chain the identity factor
        // already absorbs everything, and trying it first keeps the scan
        // close to linear in the number of arrows e.
        std::vector<arrow> factors{cat.identity(a)};
        for (auto& i : out_universe(a))
            if (i != factors.front()) factors.push_back(std::move(i));
        std::map<std::string, std::vector<arrow>> continuations;
        for (const auto& i : factors)
            if (!continuations.count(i.cod.id)) continuations[i.cod.id] = out_universe(i.cod);
        for (const auto& e : cat.hom(a, U.structure())) {
            bool found_i = false;
            for (const auto& i : factors) {
                bool all_absorbed = true;
                for (const auto& f : continuations[i.cod.id]) {
                    arrow through = cat.compose(f, i);
                    bool witnessed = false;
                    for (std::size_t j = at; j < u.length(); ++j) {
                        arrow target = cat.compose(bonding(u, at, j), e);
                        if (!cat.left_factors(through, target, 1).empty()) {
                            witnessed = true;
                            break;
                        }
                    }
                    if (!witnessed) {
                        all_absorbed = false;
                        break;
                    }
                }
                if (all_absorbed) {
                    found_i = true;
                    break;
                }
            }
            if (!found_i)
                return make_verdict(status::fails, false, static_cast<std::size_t>(bound),
                                    json{{"object", a.id}, {"arrow", arrow_to_json(e)}});
        }
    }
    return make_verdict(status::holds, false, static_cast<std::size_t>(bound));
}

} // namespace detail

// Weak injectivity of the approximated colimit: every bounded arrow into
// it factors through some i : a -> b all of whose bounded continuations
// are absorbed. Fails carries the unabsorbable arrow as counterexample.
inline verdict check_weak_injectivity(const colimit_approx& U, int bound) {
    return detail::weak_injectivity_scan(U, bound, nullptr);
}

// The age of the approximated colimit: objects admitting an arrow into
// some recorded stage. Membership is decided against the last (largest)
// stage with no size truncation, so objects above the reporting bound
// still count; the report lists members and non-members within the bound.
struct age_report {
    std::vector<object_ref> members;
    json report = json::object();
    std::function<bool(const object_ref&)> contains;
};

inline age_report compute_age(const colimit_approx& U, int bound) {
    age_report out;
    const sequence& u = U.chain;
    auto cat = u.cat;
    object_ref last = u.stage(u.length() - 1);
    out.contains = [cat, last](const object_ref& x) { return !cat->hom(x, last).empty(); };
    json members = json::array(), missing = json::array();
    for (const auto& x : objects_within(*cat, bound)) {
        if (out.contains(x)) {
            out.members.push_back(x);
            members.push_back(x.id);
        } else {
            missing.push_back(x.id);
        }
    }
    out.report = json{{"members", std::move(members)}, {"not_members", std::move(missing)}, {"bound", bound}};
    return out;
}

// Weak homogeneity: weak injectivity relative to the age, i.e. the
// factoring object b and the continuations f are required to stay inside
// the age of the colimit. Equivalent to genericity of the colimit inside
// the full subcategory on its age.
inline verdict check_weak_homogeneity(const colimit_approx& U, int bound) {
    age_report age = compute_age(U, bound);
    verdict v = detail::weak_injectivity_scan(U, bound, age.contains);
    v.detail["relative_to"] = "age";
    v.detail["age"] = age.report;
    return v;
}

// Genericity of the approximated colimit: every bounded object maps into
// some recorded stage, and the colimit is weakly injective. The cofinality
// leg reported as Fails is relative to the recorded horizon (an object
// could still appear in an unrecorded later stage).
inline verdict check_generic(const colimit_approx& U, int bound) {
    const sequence& u = U.chain;
    json placed = json::object();
    for (const auto& x : objects_within(*u.cat, bound)) {
        auto hit = g1_search(u, x);
        if (!hit)
            return make_verdict(status::fails, false, static_cast<std::size_t>(bound),
                                json{{"missing_object", x.id}, {"note", "relative to recorded horizon"}});
        placed[x.id] = hit->first;
    }
    verdict wi = check_weak_injectivity(U, bound);
    if (!wi.holds()) return wi;
    wi.detail["objects_placed"] = std::move(placed);
    return wi;
}

} // namespace fraisse
