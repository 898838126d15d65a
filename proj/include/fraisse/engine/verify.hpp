#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/amalgamation.hpp"
#include "fraisse/category.hpp"
#include "fraisse/engine/witness.hpp"
#include "fraisse/json.hpp"
#include "fraisse/sequence.hpp"
#include "fraisse/serialize.hpp"
#include "fraisse/verdict.hpp"

namespace fraisse {

// Spot-check of the two genericity conditions on a recorded chain prefix.
//
// (G1) each of the first `bound` enumerated objects maps into some stage;
// (G2) for each n < depth there is a stage m >= n such that every arrow f
//      out of u_m in the bounded universe has a witness g : cod(f) -> u_k
//      with g . f . u_n^m == u_n^k.
//
// A finite prefix can never refute either condition (the witness may live
// past the recorded horizon), so the overall verdict is Holds exactly when
// nothing is missing and UnknownWithinBound otherwise, never Fails; the
// missing lists say what was not found. Every reported witness carries the
// arrows needed to replay its equation.
struct wf_report {
    verdict overall;
    json g1 = json::object();
    json g2 = json::object();

    json to_json() const { return json{{"overall", overall.to_json()}, {"g1", g1}, {"g2", g2}}; }
};

inline wf_report verify_wf(const sequence& u, std::size_t depth, int bound) {
    const category& cat = *u.cat;
    wf_report report;
    bool all_found = true;

    json g1_witnesses = json::object();
    json g1_missing = json::array();
    for (const auto& x : cat.enumerate_objects(bound)) {
        if (auto hit = g1_search(u, x)) {
            g1_witnesses[x.id] = json{{"stage", hit->first}, {"arrow", arrow_to_json(hit->second)}};
        } else {
            g1_missing.push_back(x.id);
            all_found = false;
        }
    }
    report.g1 = json{{"witnesses", std::move(g1_witnesses)}, {"missing", std::move(g1_missing)}};

    json g2_witnesses = json::object();
    json g2_missing = json::object();
    for (std::size_t n = 0; n < depth; ++n) {
        if (n >= u.length()) {
            g2_missing[std::to_string(n)] = json{{"note", "stage not recorded"}};
            all_found = false;
            continue;
        }
        // Best stage seen: fewest unwitnessed arrows, earliest on ties. The
        // scan skips stages larger than bound + 3: a recorded run discharges
        // the requirement families of small stages first, so a certificate,
        // if the record holds one, lives there, while a large stage costs an
        // arrow universe cubic in its size to rule out and its miss would
        // not change the verdict (a finite prefix never refutes, so the
        // overall answer is Holds or UnknownWithinBound either way).
        const std::size_t size_cap = static_cast<std::size_t>(bound) + 3;
        json best = json::object();
        std::size_t best_missing = static_cast<std::size_t>(-1);
        for (std::size_t m = n; m < u.length(); ++m) {
            if (cat.object_size(u.stage(m)) > size_cap) continue;
            json arrows = json::array();
            json missing = json::array();
            for (const auto& f : g2_arrow_universe(cat, u.stage(m), bound)) {
                arrow base = cat.compose(f, bonding(u, n, m));
                bool witnessed = false;
                for (std::size_t k = m; k < u.length(); ++k) {
                    auto gs = cat.left_factors(base, bonding(u, n, k), 1);
                    if (!gs.empty()) {
                        arrows.push_back(json{{"f", arrow_to_json(f)}, {"k", k}, {"g", arrow_to_json(gs.front())}});
                        witnessed = true;
                        break;
                    }
                }
                if (!witnessed) missing.push_back(arrow_to_json(f));
            }
            if (missing.empty()) {
                g2_witnesses[std::to_string(n)] = json{{"m", m}, {"arrows", std::move(arrows)}};
                best_missing = 0;
                break;
            }
            if (missing.size() < best_missing) {
                best_missing = missing.size();
                best = json{{"m", m}, {"witnessed", std::move(arrows)}, {"missing", std::move(missing)}};
            }
        }
        if (best_missing != 0) {
            if (best.empty()) best = json{{"note", "no stage within size cap"}};
            g2_missing[std::to_string(n)] = std::move(best);
            all_found = false;
        }
    }
    report.g2 = json{{"witnesses", std::move(g2_witnesses)}, {"missing", std::move(g2_missing)}};

    report.overall = make_verdict(all_found ? status::holds : status::unknown_within_bound, false,
                                  static_cast<std::size_t>(bound));
    return report;
}

} // namespace fraisse
