#pragma once

#include <cstddef>
#include <memory>
#include <string>

#include "fraisse/amalgamation.hpp"
#include "fraisse/engine/colimit.hpp"
#include "fraisse/engine/iso.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json.hpp"
#include "fraisse/sequence.hpp"
#include "fraisse/verdict.hpp"
#include "fraisse/game/play.hpp"

namespace fraisse {

namespace detail {

// The play's chain re-read over the target's category, so that plays held in
// a subcategory view compare against targets of the ambient category.  Every
// subcategory arrow is an arrow of the ambient category, so the replay is a
// validity check, not a translation.
inline sequence play_sequence_over(const play& p, std::shared_ptr<const category> cat) {
    require(!p.moves.empty(), "EmptyList", "play has no moves");
    sequence s = make_sequence(std::move(cat), p.moves.front().target);
    for (std::size_t i = 1; i < p.moves.size(); ++i) s.append(*p.moves[i].step);
    return s;
}

}  // namespace detail

// Decide, at finite depth, whether a finished play realized the target chain.
//   Fails:  some object of size <= 3 sits inside the play but inside no
//           recorded stage of the target; stages only accumulate objects, so
//           this obstruction is final relative to the recorded horizon.
//   Holds:  a depth-d back-and-forth certificate between the normalized play
//           and normalized target exists (finite certificate, not a proof of
//           isomorphism of the limits).
//   UnknownWithinBound otherwise; this function does not throw.
inline verdict classify_play(const play& p, const sequence& target, std::size_t depth,
                             int bound = 3) {
    try {
        if (p.cat->payload_kind() != target.cat->payload_kind())
            return make_verdict(status::unknown_within_bound, false, depth,
                                json{{"reason", "payload kinds differ"}});
        sequence s = detail::play_sequence_over(p, target.cat);
        const category& cat = *target.cat;
        const object_ref& play_last = s.stage(s.length() - 1);
        const object_ref& target_last = target.stage(target.length() - 1);
        for (const auto& x : objects_within(cat, 3)) {
            if (!cat.hom(x, play_last).empty() && cat.hom(x, target_last).empty())
                return make_verdict(
                    status::fails, false, 3,
                    json{{"mode", "obstruction"},
                         {"obstruction", x.id},
                         {"note", "object in the play but in no recorded stage of the target"}});
        }
        iso_result r = iso_between(s, target, depth, bound);
        json detail{{"mode", "zigzag"},
                    {"depth", depth},
                    {"v_shift", r.v_shift},
                    {"iso", r.iso.to_json()}};
        return make_verdict(status::holds, false, depth, std::move(detail));
    } catch (const error& e) {
        return make_verdict(status::unknown_within_bound, false, depth,
                            json{{"reason", e.code()}, {"message", e.what()}});
    }
}

inline verdict classify_play(const play& p, const colimit_approx& target, std::size_t depth,
                             int bound = 3) {
    return classify_play(p, target.chain, depth, bound);
}

}  // namespace fraisse
