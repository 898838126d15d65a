#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/category.hpp"
#include "fraisse/engine/normalize.hpp"
#include "fraisse/engine/witness.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json.hpp"
#include "fraisse/sequence.hpp"
#include "fraisse/serialize.hpp"

namespace fraisse {

// A depth-d zigzag between two chains: arrows h_t : u_{k_t} -> v_{l_t} and
// q_t : v_{l_t} -> u_{k_{t+1}} whose alternating composites reproduce the
// bonding arrows exactly. This is the finite certificate that the two
// colimits agree to depth d.
struct sequence_iso {
    std::vector<std::size_t> u_stages; // k_1 .. k_{d+1}
    std::vector<std::size_t> v_stages; // l_1 .. l_d
    std::vector<arrow> forward;        // h_t : u_{k_t} -> v_{l_t}
    std::vector<arrow> backward;       // q_t : v_{l_t} -> u_{k_{t+1}}

    std::size_t depth() const { return forward.size(); }

    json to_json() const {
        json fw = json::array(), bw = json::array();
        for (const auto& h : forward) fw.push_back(arrow_to_json(h));
        for (const auto& q : backward) bw.push_back(arrow_to_json(q));
        return json{{"u_stages", u_stages},
                    {"v_stages", v_stages},
                    {"forward", std::move(fw)},
                    {"backward", std::move(bw)}};
    }
};

// Exact replay of the zigzag equations:
//   q_t . h_t == u_{k_t}^{k_{t+1}}        for every round,
//   h_{t+1} . q_t == v_{l_t}^{l_{t+1}}    between consecutive rounds.
inline bool verify_sequence_iso(const sequence& u, const sequence& v, const sequence_iso& iso,
                                std::string* why = nullptr) {
    auto reject = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::size_t d = iso.depth();
    if (d == 0) return reject("empty zigzag");
    if (iso.backward.size() != d || iso.u_stages.size() != d + 1 || iso.v_stages.size() != d)
        return reject("zigzag component counts disagree");
    const category& cat = *u.cat;
    for (std::size_t t = 0; t < d; ++t) {
        const arrow& h = iso.forward[t];
        const arrow& q = iso.backward[t];
        if (h.dom != u.stage(iso.u_stages[t]) || h.cod != v.stage(iso.v_stages[t]))
            return reject("forward arrow " + std::to_string(t) + " has wrong endpoints");
        if (q.dom != v.stage(iso.v_stages[t]) || q.cod != u.stage(iso.u_stages[t + 1]))
            return reject("backward arrow " + std::to_string(t) + " has wrong endpoints");
        if (cat.compose(q, h) != bonding(u, iso.u_stages[t], iso.u_stages[t + 1]))
            return reject("round " + std::to_string(t) + ": q.h is not the u bonding arrow");
        if (t + 1 < d && cat.compose(iso.forward[t + 1], q) != bonding(v, iso.v_stages[t], iso.v_stages[t + 1]))
            return reject("round " + std::to_string(t) + ": h.q is not the v bonding arrow");
    }
    return true;
}

// Back-and-forth along two chains starting from f : u_1 -> v_1. Stages may
// be appended to either sequence while hunting witnesses (amalgamation
// extensions, plus identity bonds on stages this call itself created);
// a witness demanded past a caller-recorded final stage raises
// ExtensionStuck, a failed witness hunt raises WitnessNotFound.
inline sequence_iso back_and_forth(sequence& u, sequence& v, const arrow& f, std::size_t depth,
                                   int bound = 4, bool allow_extension = true) {
    require(depth >= 1, "OutOfRange", "back_and_forth needs depth at least 1");
    require(u.length() >= 2 && v.length() >= 2, "ExtensionStuck",
            "both sequences need at least two recorded stages");
    require(f.dom == u.stage(1) && f.cod == v.stage(1), "DomainMismatch",
            "initial arrow must map u_1 into v_1");
    const category& cat = *u.cat;
    std::size_t cf_u = u.length(), cf_v = v.length();

    sequence_iso iso;
    std::size_t ku = 0, lv = 1;
    arrow f_cur = f; // u_{ku+1} -> v_{lv}
    iso.u_stages.push_back(ku);
    iso.v_stages.push_back(lv);
    for (std::size_t t = 1; t <= depth; ++t) {
        iso.forward.push_back(cat.compose(f_cur, bonding(u, ku, ku + 1)));
        require(ensure_successor_bond(v, lv, cf_v), "ExtensionStuck",
                "v has no bond out of recorded stage " + std::to_string(lv));
        arrow vb = bonding(v, lv, lv + 1);
        arrow F = cat.compose(vb, f_cur); // u_{ku+1} -> v_{lv+1}
        auto w1 = find_g2_witness(u, cf_u, ku, F, t < depth, allow_extension, bound);
        if (!w1)
            fail("WitnessNotFound", "round " + std::to_string(t) + ": u has no absorbing stage past " +
                                        std::to_string(ku));
        arrow g_cur = w1->g; // v_{lv+1} -> u_{k'}
        iso.backward.push_back(cat.compose(g_cur, vb));
        iso.u_stages.push_back(w1->stage);
        if (t < depth) {
            require(ensure_successor_bond(u, w1->stage, cf_u), "ExtensionStuck",
                    "u has no bond out of recorded stage " + std::to_string(w1->stage));
            arrow G = cat.compose(bonding(u, w1->stage, w1->stage + 1), g_cur); // v_{lv+1} -> u_{k'+1}
            auto w2 = find_g2_witness(v, cf_v, lv, G, true, allow_extension, bound);
            if (!w2)
                fail("WitnessNotFound", "round " + std::to_string(t) + ": v has no absorbing stage past " +
                                            std::to_string(lv));
            f_cur = w2->g; // u_{k'+1} -> v_{l'}
            lv = w2->stage;
            iso.v_stages.push_back(lv);
        }
        ku = w1->stage;
    }
    return iso;
}

// Result of the uniqueness driver: both working chains after normalization
// (and any extension the zigzag needed), the shift applied to the second
// chain to line the first arrows up, and the zigzag itself.
struct iso_result {
    sequence u;
    sequence v;
    std::size_t v_shift = 0;
    sequence_iso iso;
};

// Normalize both chains, align them by the least stage of b the first
// stage of a maps into, and run the zigzag to the requested depth.
inline iso_result iso_between(const sequence& a, const sequence& b, std::size_t depth, int bound = 4) {
    iso_result out{normalize(a, bound), normalize(b, bound), 0, {}};
    require(out.u.cat->name() == out.v.cat->name(), "DomainMismatch",
            "sequences live in different categories");
    const category& cat = *out.u.cat;
    std::optional<std::size_t> j;
    for (std::size_t t = 1; t < out.v.length(); ++t)
        if (!cat.hom(out.u.stage(1), out.v.stage(t)).empty()) {
            j = t;
            break;
        }
    require(j.has_value(), "WitnessNotFound", "no arrow from the first chain into the second");
    if (*j > 1) {
        out.v = shift(out.v, *j - 1);
        out.v_shift = *j - 1;
    }
    arrow f = cat.hom(out.u.stage(1), out.v.stage(1)).front();
    out.iso = back_and_forth(out.u, out.v, f, depth, bound);
    return out;
}

} // namespace fraisse
