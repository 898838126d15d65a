#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/amalgamation.hpp"
#include "fraisse/category.hpp"
#include "fraisse/engine/witness.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json.hpp"
#include "fraisse/rng.hpp"
#include "fraisse/subcategory.hpp"
#include "fraisse/game/play.hpp"

namespace fraisse {

enum class transfer_direction { to_sub, from_sub };

inline std::optional<transfer_direction> parse_transfer_direction(const std::string& s) {
    if (s == "to_sub") return transfer_direction::to_sub;
    if (s == "from_sub") return transfer_direction::from_sub;
    return std::nullopt;
}

namespace detail {

// Candidate answers for steering a composite back into a subcategory: the
// identity first (the no-op answer), then absorbing a small object via join
// (covers padding answers on objects of any size without enumerating their
// full extension universe), then the bounded arrow universe when the object
// is small enough for that to be affordable.
inline std::vector<arrow> steering_candidates(const category& cat, const object_ref& x, int bound) {
    std::vector<arrow> out;
    out.push_back(cat.identity(x));
    for (const auto& t : objects_within(cat, bound + 1)) {
        if (auto legs = cat.join(x, t)) out.push_back(legs->first);
    }
    if (cat.object_size(x) <= bound + 3)
        for (auto& f : g2_arrow_universe(cat, x, bound)) out.push_back(std::move(f));
    return out;
}

}  // namespace detail

// Odd strategy simulated across a weakly dominating subcategory, in either
// direction: an inner strategy for the whole category steered so that every
// reply is a subcategory arrow (to_sub), or an inner strategy for the
// subcategory lifted to answer arbitrary moves of the whole category
// (from_sub).  Each reply is j . f . i where f is the inner strategy's reply
// and i, j are domination witnesses; the simulated inner play is maintained
// move by move and exposed for replay checks.
//
// Witness searches are bounded: candidates come from steering_candidates and
// a candidate's universal property is verified against arrows between objects
// inside the bound (the constructor precheck vouches for the subcategory
// globally at that bound).  A reply whose steering witness falls outside the
// searched window raises DominationWitnessNotFound rather than guessing.
class transferred_strategy final : public strategy {
public:
    transferred_strategy(subcategory sub, std::shared_ptr<strategy> inner,
                         transfer_direction dir, int bound = 3, bool precheck = true)
        : sub_(std::move(sub)),
          parent_(sub_.parent),
          view_(std::make_shared<subcategory_view>(sub_)),
          inner_(std::move(inner)),
          dir_(dir),
          bound_(bound) {
        require(inner_->side() == "odd", "IllegalMove", "only odd strategies can be transferred");
        if (precheck) {
            verdict ok = check_subcategory(sub_, subcategory_condition::weakly_dominating, bound_);
            if (!ok.holds())
                fail("DominationWitnessNotFound",
                     "subcategory " + sub_.name + " was not verified weakly dominating at bound " +
                         std::to_string(bound_));
        }
        inner_play_.cat = (dir_ == transfer_direction::to_sub)
                              ? parent_
                              : std::static_pointer_cast<const category>(view_);
        inner_play_.result = "simulated";
    }

    std::string side() const override { return "odd"; }
    std::string describe() const override { return "transfer:" + inner_->describe(); }
    json annotations() const override { return last_note_; }

    // The category the outer game should be played over.
    std::shared_ptr<const category> outer_category() const {
        if (dir_ == transfer_direction::to_sub)
            return std::static_pointer_cast<const category>(view_);
        return parent_;
    }

    const play& inner_play() const { return inner_play_; }

    arrow move(const play& p, rng& gen) override {
        return dir_ == transfer_direction::to_sub ? move_to_sub(p, gen) : move_from_sub(p, gen);
    }

private:
    // i must satisfy: every arrow f out of cod(i) admits an answer g with
    // g . f . i in the subcategory.  Verified over arrows between objects
    // within the bound; vacuous for codomains past it, where the global
    // precheck is the authority.
    bool witness_property_holds(const arrow& i) const {
        const category& cat = *parent_;
        for (const auto& x : objects_within(cat, bound_)) {
            for (const auto& f : cat.hom(i.cod, x)) {
                bool answered = false;
                for (const auto& g : detail::steering_candidates(cat, x, bound_)) {
                    if (sub_.contains_arrow(cat.compose(g, cat.compose(f, i)))) {
                        answered = true;
                        break;
                    }
                }
                if (!answered) return false;
            }
        }
        return true;
    }

    // A subcategory arrow out of `from` whose codomain can absorb anything
    // played against it (condition (W) of weak domination).
    arrow domination_witness(const object_ref& from) const {
        for (const auto& i : detail::steering_candidates(*parent_, from, bound_)) {
            if (!sub_.contains_arrow(i)) continue;
            if (witness_property_holds(i)) return i;
        }
        fail("DominationWitnessNotFound",
             "no verified domination witness out of " + from.id + " within bound " +
                 std::to_string(bound_));
    }

    // The answer g steering g . f . pre into the subcategory.
    arrow steering_answer(const arrow& f, const arrow& pre) const {
        const category& cat = *parent_;
        arrow composite = cat.compose(f, pre);
        for (const auto& g : detail::steering_candidates(cat, f.cod, bound_)) {
            if (sub_.contains_arrow(cat.compose(g, composite))) return g;
        }
        fail("DominationWitnessNotFound",
             "no answer out of " + f.cod.id + " steers the inner reply into the subcategory");
    }

    arrow move_to_sub(const play& p, rng& gen) {
        const category& cat = *parent_;
        const play_move& eve = p.moves.back();

        // i: outer end -> inner stage, a fresh domination witness.
        arrow i = domination_witness(eve.target);
        if (inner_play_.moves.empty()) {
            inner_play_.moves.push_back({"eve", std::nullopt, i.cod, json::object()});
        } else {
            // Simulated Eve move: i . e . j, e the outer Eve arrow just played.
            arrow sim = cat.compose(i, cat.compose(*eve.step, last_j_));
            inner_play_.moves.push_back({"eve", sim, sim.cod, json::object()});
        }

        arrow f = inner_->move(inner_play_, gen);
        inner_play_.moves.push_back({"odd", f, f.cod, inner_->annotations()});

        arrow j = steering_answer(f, i);
        last_j_ = j;
        arrow reply = cat.compose(j, cat.compose(f, i));
        last_note_ = json{{"i", arrow_brief(i)},
                          {"j", arrow_brief(j)},
                          {"inner_moves", inner_play_.moves.size()}};
        return reply;
    }

    arrow move_from_sub(const play& p, rng& gen) {
        const category& cat = *parent_;
        const play_move& eve = p.moves.back();

        arrow i;  // outer end -> subcategory object
        if (inner_play_.moves.empty()) {
            // Cofinality: land the opening inside the subcategory.
            std::optional<arrow> into;
            for (const auto& c : detail::steering_candidates(cat, eve.target, bound_)) {
                if (sub_.contains_object(c.cod)) {
                    into = c;
                    break;
                }
            }
            if (!into)
                fail("DominationWitnessNotFound",
                     "no arrow from " + eve.target.id + " into the subcategory within bound " +
                         std::to_string(bound_));
            i = *into;
            inner_play_.moves.push_back({"eve", std::nullopt, i.cod, json::object()});
        } else {
            // i steers Eve's arrow back in: i . e . j is the simulated Eve move.
            i = steering_answer(*eve.step, last_j_);
            arrow sim = cat.compose(i, cat.compose(*eve.step, last_j_));
            inner_play_.moves.push_back({"eve", sim, sim.cod, json::object()});
        }

        arrow f = inner_->move(inner_play_, gen);
        inner_play_.moves.push_back({"odd", f, f.cod, inner_->annotations()});

        // j: inner end -> outer stage, a fresh domination witness for later steering.
        arrow j = domination_witness(f.cod);
        last_j_ = j;
        arrow reply = cat.compose(j, cat.compose(f, i));
        last_note_ = json{{"i", arrow_brief(i)},
                          {"j", arrow_brief(j)},
                          {"inner_moves", inner_play_.moves.size()}};
        return reply;
    }

    subcategory sub_;
    std::shared_ptr<const category> parent_;
    std::shared_ptr<subcategory_view> view_;
    std::shared_ptr<strategy> inner_;
    transfer_direction dir_;
    int bound_;
    play inner_play_;
    arrow last_j_;
    json last_note_ = json::object();
};

inline std::shared_ptr<strategy> transfer_odd_strategy(subcategory sub,
                                                       std::shared_ptr<strategy> inner,
                                                       transfer_direction dir, int bound = 3,
                                                       bool precheck = true) {
    return std::make_shared<transferred_strategy>(std::move(sub), std::move(inner), dir, bound,
                                                  precheck);
}

}  // namespace fraisse
