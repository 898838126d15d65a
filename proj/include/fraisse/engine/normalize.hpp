#pragma once

#include <cstddef>
#include <vector>

#include "fraisse/amalgamation.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json.hpp"
#include "fraisse/sequence.hpp"

namespace fraisse {

// Pass to a subsequence all of whose bonds are certified amalgamable, so
// that back-and-forth arguments may assume every bond absorbs. Greedy: from
// each kept stage, keep the least later stage whose composite bond from it
// is amalgamable. Fails with CannotNormalize when not even one amalgamable
// composite bond exists within the recorded prefix.
inline sequence normalize(const sequence& s, int bound = 4) {
    std::vector<std::size_t> indices{0};
    std::size_t cur = 0;
    for (std::size_t j = 1; j < s.length(); ++j) {
        if (is_amalgamable(*s.cat, bonding(s, cur, j), bound).holds()) {
            indices.push_back(j);
            cur = j;
        }
    }
    require(indices.size() >= 2, "CannotNormalize",
            "no amalgamable composite bond found in the recorded prefix");
    sequence out = restrict_to(s, indices);
    out.ledger = json::array();
    out.ledger.push_back(json{{"task", "normalize"}, {"indices", indices}, {"bound", bound}});
    return out;
}

} // namespace fraisse
