#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/amalgamation.hpp"
#include "fraisse/category.hpp"
#include "fraisse/engine/witness.hpp"
#include "fraisse/error.hpp"
#include "fraisse/sequence.hpp"

namespace fraisse {

// Embed the chain x into the chain u as a natural transformation to the
// requested depth. Requires every bond of x to be certified amalgamable
// (this is what lets each step amalgamate relative to the bond one step
// back); the component at n is then built two stages ahead, which is
// exactly the slack that makes the naturality squares close strictly.
// u may grow while witnesses are hunted; x is never modified.
inline sequence_arrow embed_sequence(const sequence& x, sequence& u, std::size_t depth, int bound = 4) {
    require(depth >= 1, "OutOfRange", "embed_sequence needs depth at least 1");
    require(x.length() >= depth + 3, "OutOfRange",
            "embedding to depth " + std::to_string(depth) + " needs " + std::to_string(depth + 3) +
                " recorded stages in x");
    const category& cat = *u.cat;
    for (std::size_t i = 0; i + 1 < x.length(); ++i)
        if (!is_amalgamable(cat, x.bonds[i], bound).holds())
            fail("PreconditionUnmet", "bond " + std::to_string(i) + " of x is not certified amalgamable");

    std::size_t cf_u = u.length();

    // Leading component target: the least stage x_2 maps into, preferring
    // one the walk can continue from.
    std::vector<std::size_t> stage_map;
    std::vector<arrow> lifted; // e'_n : x_{n+2} -> u_{s(n)}
    {
        std::optional<std::pair<std::size_t, arrow>> first, fallback;
        for (std::size_t i = 0; i < u.length() && !first; ++i) {
            const auto& fs = cat.hom(x.stage(2), u.stage(i));
            if (fs.empty()) continue;
            if (i + 1 < u.length() || i >= cf_u)
                first = {i, fs.front()};
            else if (!fallback)
                fallback = {i, fs.front()};
        }
        if (!first) first = fallback;
        require(first.has_value(), "WitnessNotFound", "x_2 maps into no recorded stage of u");
        stage_map.push_back(first->first);
        lifted.push_back(first->second);
    }

    for (std::size_t n = 0; n < depth; ++n) {
        std::size_t s = stage_map[n];
        require(ensure_successor_bond(u, s, cf_u), "ExtensionStuck",
                "u has no bond out of recorded stage " + std::to_string(s));
        const arrow& e = x.bonds[n + 1];                       // x_{n+1} -> x_{n+2}
        arrow f1 = bonding(x, n + 2, n + 3);                   // x_{n+2} -> x_{n+3}
        arrow f2 = cat.compose(bonding(u, s, s + 1), lifted[n]); // x_{n+2} -> u_{s+1}
        auto got = amalgamate_pair(cat, cat.compose(f1, e), cat.compose(f2, e));
        require(got.certificate.has_value(), "WitnessNotFound",
                "no amalgam over bond " + std::to_string(n + 1) + " of x");
        auto h = find_g2_witness(u, cf_u, s, got.certificate->right, n + 1 < depth, true, bound);
        require(h.has_value(), "WitnessNotFound",
                "no absorbing stage in u past " + std::to_string(s));
        stage_map.push_back(h->stage);
        lifted.push_back(cat.compose(h->g, got.certificate->left));
    }

    sequence_arrow out;
    out.stage_map = stage_map;
    for (std::size_t n = 0; n <= depth; ++n)
        out.components.push_back(cat.compose(lifted[n], bonding(x, n, n + 2)));
    return out;
}

} // namespace fraisse
