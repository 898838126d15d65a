#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "fraisse/amalgamation.hpp"
#include "fraisse/category.hpp"
#include "fraisse/engine/witness.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json.hpp"
#include "fraisse/rng.hpp"
#include "fraisse/sequence.hpp"
#include "fraisse/serialize.hpp"

namespace fraisse {

namespace detail {

// One scheduled requirement. Object tasks want some stage the object maps
// into; extension tasks want a witness g with g . f . u_n^{n+1} == u_n^k.
struct build_task {
    bool is_extension;
    object_ref x;   // object tasks
    std::size_t n;  // extension tasks: base stage
    arrow f;        // extension tasks: arrow out of u_{n+1}
};

} // namespace detail

// Grow a chain whose colimit is generic: every bounded object maps in and
// every bounded arrow out of a stage is eventually absorbed. Requirements
// are drained smallest first (by the size of the object the task wants to
// realize, insertion order on ties), so the append budget goes to the
// requirements bounded verification will actually quantify over before it
// is spent gluing large objects; every requirement still has only finitely
// many predecessors in this order, which is all the fairness the limit
// argument needs. At most `steps` new stages are appended, and requirements
// still open afterwards are recorded in the ledger as unfinished. The seed
// only picks among equally good gluing positions, never the gluing size, so
// runs with different seeds build chains of the same stage sizes.
inline sequence build_weak_fraisse(std::shared_ptr<const category> cat, std::size_t steps,
                                   std::uint64_t seed, int bound = 4) {
    require(cat != nullptr, "EmptyList", "build_weak_fraisse: null category");
    auto universe = objects_within(*cat, bound);
    require(!universe.empty(), "EmptyList", "category has no objects to build from");

    // Directedness first: every pair needs a common codomain, or no single
    // chain can absorb both sides.
    for (std::size_t i = 0; i < universe.size(); ++i) {
        for (std::size_t j = i + 1; j < universe.size(); ++j) {
            if (cat->join(universe[i], universe[j])) continue;
            bool found = false;
            for (const auto& z : universe) {
                if (!cat->hom(universe[i], z).empty() && !cat->hom(universe[j], z).empty()) {
                    found = true;
                    break;
                }
            }
            require(found, "NotDirected",
                    "objects " + universe[i].id + " and " + universe[j].id + " admit no common codomain");
        }
    }

    // Density: without the weak amalgamation property the absorbing arrows
    // needed by extension tasks need not exist, and the chain cannot be
    // generic. Surface the failing object rather than building junk.
    auto wap = has_wap(*cat, bound);
    if (!wap.holds())
        fail("DensityFailure",
             "weak amalgamation not established at " + wap.detail.value("failing_object", std::string("?")));

    rng gen(seed);
    sequence u = make_sequence(cat, cat->enumerate_objects(1).front());
    u.ledger = json::array();
    u.ledger.push_back(json{{"task", "config"},
                            {"category", cat->name()},
                            {"steps", steps},
                            {"seed", seed},
                            {"bound", bound}});

    // Keyed by (weight, enqueue order): map iteration order is the
    // processing order. A one-point extension task weighs the stage it
    // extends; a task that realizes a whole object (an object task, or an
    // arrow into an enumerated codomain) weighs that object and yields to
    // extensions on ties. Extensions of small stages are what bounded
    // verification quantifies over, and once they are absorbed the object
    // placements are usually already present, so the append budget goes to
    // the extensions first.
    std::map<std::pair<std::size_t, std::uint64_t>, detail::build_task> queue;
    std::uint64_t enqueue_seq = 0;
    auto enqueue = [&](detail::build_task t) {
        std::size_t weight =
            t.is_extension
                ? (cat->object_size(t.f.cod) == cat->object_size(u.stage(t.n + 1)) + 1
                       ? 2 * cat->object_size(u.stage(t.n + 1))
                       : 2 * cat->object_size(t.f.cod) + 1)
                : 2 * cat->object_size(t.x) + 1;
        queue.emplace(std::pair{weight, enqueue_seq++}, std::move(t));
    };
    for (const auto& x : universe) enqueue({false, x, 0, {}});

    std::size_t appended = 0;
    std::size_t ext_enqueued_upto = 0; // next base stage awaiting task enqueue
    // A finite run discharges a finite prefix of the countably many extension
    // requirements, so schedule the families of small stages first: a witness
    // for an arrow out of u_m covers the condition at every n < m by
    // precomposition, and bounded verification quantifies at the small stages
    // only. Families of stages past the cap stay unenumerated instead of
    // flooding the queue with requirements no finite budget could discharge.
    // The cap reaches one stage past the objects-within-bound horizon: the
    // family of stage m+1 has base m, so only it pins all of stage m, and
    // colimit checks at the horizon need the horizon stage fully pinned.
    const int task_cap = bound + 3;
    auto enqueue_extension_tasks = [&] {
        while (ext_enqueued_upto + 1 < u.length()) {
            std::size_t n = ext_enqueued_upto;
            if (cat->object_size(u.stage(n + 1)) <= task_cap)
                for (auto& f : g2_arrow_universe(*cat, u.stage(n + 1), bound))
                    enqueue({true, {}, n, std::move(f)});
            ++ext_enqueued_upto;
        }
    };

    std::size_t unfinished = 0;
    constexpr std::size_t unfinished_cap = 200;
    auto record_unfinished = [&](json entry) {
        ++unfinished;
        if (unfinished <= unfinished_cap) {
            entry["status"] = "unfinished";
            u.ledger.push_back(std::move(entry));
        }
    };

    while (!queue.empty()) {
        detail::build_task t = std::move(queue.begin()->second);
        queue.erase(queue.begin());
        if (!t.is_extension) {
            json entry{{"task", "object"}, {"x", payload_to_json(t.x.payload)}};
            if (auto hit = g1_search(u, t.x)) {
                entry["stage"] = hit->first;
                entry["arrow"] = arrow_to_json(hit->second);
                u.ledger.push_back(std::move(entry));
                continue;
            }
            if (appended < steps) {
                if (auto embed = glue_onto_last(u, t.x, bound, gen)) {
                    ++appended;
                    entry["stage"] = u.length() - 1;
                    entry["arrow"] = arrow_to_json(*embed);
                    u.ledger.push_back(std::move(entry));
                    enqueue_extension_tasks();
                    continue;
                }
            }
            record_unfinished(std::move(entry));
        } else {
            json entry{{"task", "extension"},
                       {"n", t.n},
                       {"m", t.n + 1},
                       {"y", payload_to_json(t.f.cod.payload)},
                       {"f", arrow_to_json(t.f)}};
            auto hit = g2_search_strong(u, t.n, t.f);
            if (!hit) hit = g2_search(u, t.n, t.f);
            if (hit) {
                entry["k"] = hit->stage;
                entry["g"] = arrow_to_json(hit->g);
                u.ledger.push_back(std::move(entry));
                continue;
            }
            if (appended < steps) {
                if (auto hit = g2_extend(u, t.n, t.f, bound)) {
                    ++appended;
                    entry["k"] = hit->stage;
                    entry["g"] = arrow_to_json(hit->g);
                    u.ledger.push_back(std::move(entry));
                    enqueue_extension_tasks();
                    continue;
                }
            }
            record_unfinished(std::move(entry));
        }
    }

    if (unfinished > 0)
        u.ledger.push_back(json{{"task", "summary"}, {"unfinished", unfinished}, {"appended", appended}});
    return u;
}

} // namespace fraisse
