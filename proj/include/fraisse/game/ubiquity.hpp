#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/amalgamation.hpp"
#include "fraisse/category.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json.hpp"
#include "fraisse/rng.hpp"
#include "fraisse/sequence.hpp"

namespace fraisse {

// A finite alphabet of objects and arrows; branches of the play tree are
// chains of composable skeleton arrows, rooted at any skeleton object.
struct game_skeleton {
    std::vector<object_ref> objects;
    std::vector<arrow> arrows;

    json to_json() const {
        json objs = json::array();
        for (const auto& o : objects) objs.push_back(o.id);
        json ars = json::array();
        for (const auto& f : arrows) ars.push_back(arrow_brief(f));
        return json{{"objects", std::move(objs)}, {"arrows", std::move(ars)}};
    }
};

// Canonical truncation: every object within the bound and every arrow
// between two of them.
inline game_skeleton skeleton_within(const category& cat, int bound) {
    game_skeleton sk;
    sk.objects = objects_within(cat, bound);
    for (const auto& a : sk.objects)
        for (const auto& b : sk.objects)
            for (const auto& f : cat.hom(a, b)) sk.arrows.push_back(f);
    return sk;
}

struct ubiquity_mode {
    bool exhaustive = true;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

inline ubiquity_mode exhaustive_mode() { return ubiquity_mode{true, 0, 0}; }

inline ubiquity_mode sampled_mode(std::size_t samples, std::uint64_t seed) {
    require(samples > 0, "OutOfRange", "sampling needs at least one walk");
    return ubiquity_mode{false, samples, seed};
}

using branch_checker = std::function<bool(const sequence&)>;

// Fraction of depth-d branches of the skeleton tree whose chain passes the
// checker.  Exhaustive mode enumerates every branch (only complete depth-d
// branches count; prefixes that die early are tallied separately) and raises
// Explosion past the cap.  Sampled mode runs seeded uniform walks; a walk
// that dies before full depth counts as a failed sample.  Counts are exact
// integers so reruns can be compared without float comparisons.
inline json ubiquity_estimate(std::shared_ptr<const category> cat, const game_skeleton& sk,
                              std::size_t depth, const ubiquity_mode& mode,
                              const branch_checker& check, std::size_t cap = 200000) {
    require(!sk.objects.empty(), "EmptyList", "skeleton has no objects");
    require(static_cast<bool>(check), "EmptyList", "no branch checker supplied");

    std::map<std::string, std::vector<const arrow*>> out_of;
    for (const auto& f : sk.arrows) out_of[f.dom.id].push_back(&f);

    std::size_t total = 0, passed = 0, dead_ends = 0;

    auto evaluate = [&](const object_ref& root, const std::vector<const arrow*>& path) {
        sequence s = make_sequence(cat, root);
        for (const arrow* f : path) s.append(*f);
        return check(s);
    };

    if (mode.exhaustive) {
        std::vector<const arrow*> path;
        std::function<void(const object_ref&)> walk = [&](const object_ref& end) {
            if (path.size() == depth) {
                if (++total > cap)
                    fail("Explosion", "branch count exceeded the cap of " + std::to_string(cap));
                if (evaluate(path.empty() ? end : path.front()->dom, path)) ++passed;
                return;
            }
            auto it = out_of.find(end.id);
            if (it == out_of.end() || it->second.empty()) {
                ++dead_ends;
                return;
            }
            for (const arrow* f : it->second) {
                path.push_back(f);
                walk(f->cod);
                path.pop_back();
            }
        };
        for (const auto& root : sk.objects) walk(root);
        json report{{"mode", "exhaustive"}, {"depth", depth},   {"cap", cap},
                    {"total", total},       {"passed", passed}, {"dead_ends", dead_ends},
                    {"objects", sk.objects.size()}, {"arrows", sk.arrows.size()}};
        report["fraction"] = total ? static_cast<double>(passed) / static_cast<double>(total) : 0.0;
        return report;
    }

    rng gen(mode.seed);
    for (std::size_t i = 0; i < mode.samples; ++i) {
        const object_ref& root = sk.objects[gen.below(sk.objects.size())];
        std::vector<const arrow*> path;
        object_ref end = root;
        bool died = false;
        for (std::size_t step = 0; step < depth; ++step) {
            auto it = out_of.find(end.id);
            if (it == out_of.end() || it->second.empty()) {
                died = true;
                break;
            }
            const arrow* f = it->second[gen.below(it->second.size())];
            path.push_back(f);
            end = f->cod;
        }
        ++total;
        if (died) {
            ++dead_ends;
            continue;
        }
        if (evaluate(root, path)) ++passed;
    }
    json report{{"mode", "sampled"},   {"depth", depth},   {"samples", mode.samples},
                {"seed", mode.seed},   {"total", total},   {"passed", passed},
                {"dead_ends", dead_ends}, {"objects", sk.objects.size()},
                {"arrows", sk.arrows.size()}};
    report["fraction"] = total ? static_cast<double>(passed) / static_cast<double>(total) : 0.0;
    return report;
}

}  // namespace fraisse
