#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fraisse/category.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json.hpp"
#include "fraisse/rng.hpp"
#include "fraisse/sequence.hpp"
#include "fraisse/serialize.hpp"

namespace fraisse {

// One move of the alternating game: move 0 picks the opening object, every
// later move extends the chain by an arrow out of the previous target.
// Eve owns the even move indices (including the opening), Odd the odd ones.
struct play_move {
    std::string by;
    std::optional<arrow> step;
    object_ref target;
    json annotations = json::object();
};

struct play {
    std::shared_ptr<const category> cat;
    std::vector<play_move> moves;
    std::string result;

    sequence to_sequence() const {
        require(!moves.empty(), "EmptyList", "play has no moves");
        sequence s = make_sequence(cat, moves.front().target);
        for (std::size_t i = 1; i < moves.size(); ++i) s.append(*moves[i].step);
        return s;
    }

    json to_json() const {
        json ms = json::array();
        for (const auto& m : moves) {
            json entry{{"by", m.by}, {"annotations", m.annotations}};
            if (m.step)
                entry["arrow"] = arrow_to_json(*m.step);
            else
                entry["object"] = payload_to_json(m.target.payload);
            ms.push_back(std::move(entry));
        }
        return json{{"category", cat->name()}, {"moves", std::move(ms)}, {"result", result}};
    }
};

// The composite arrow a_from -> a_to along a play's recorded moves.
inline arrow play_bonding(const play& p, std::size_t from, std::size_t to) {
    require(from <= to && to < p.moves.size(), "OutOfRange", "play bonding range out of bounds");
    arrow acc = p.cat->identity(p.moves[from].target);
    for (std::size_t i = from + 1; i <= to; ++i) acc = p.cat->compose(*p.moves[i].step, acc);
    return acc;
}

inline play play_from_json(const json& doc, std::shared_ptr<const category> cat) {
    require(doc.value("category", "") == cat->name(), "UnknownInstance",
            "play was recorded against category " + doc.value("category", std::string("?")));
    play p;
    p.cat = cat;
    p.result = doc.value("result", "");
    const std::string kind = cat->payload_kind();
    bool first = true;
    for (const auto& m : doc.at("moves")) {
        play_move move;
        move.by = m.value("by", "");
        move.annotations = m.value("annotations", json::object());
        if (first) {
            move.target = literal_ref(payload_from_json(m.at("object"), kind));
            first = false;
        } else {
            move.step = arrow_from_json(m.at("arrow"), *cat, kind);
            require(move.step->dom == p.moves.back().target, "DomainMismatch",
                    "recorded move does not continue the play");
            move.target = move.step->cod;
        }
        p.moves.push_back(std::move(move));
    }
    require(!p.moves.empty(), "EmptyList", "play document has no moves");
    return p;
}

// A strategy for one side. Stateful implementations may track the play
// they have seen so far; run_game always presents moves in order, so a
// deterministic strategy replays identically from the same seed.
class strategy {
public:
    virtual ~strategy() = default;
    virtual std::string side() const = 0;
    virtual std::string describe() const = 0;
    // Eve's opening object (only called when side() == "eve").
    virtual object_ref open(rng& gen) {
        (void)gen;
        fail("IllegalMove", describe() + " cannot open a play");
    }
    // The arrow for the next move; its domain must be the last target.
    virtual arrow move(const play& p, rng& gen) = 0;
    // Notes attached to the move just produced.
    virtual json annotations() const { return json::object(); }
};

// Run `rounds` rounds (one Eve move and one Odd move each, Eve opening
// with an object on move 0). Every returned arrow is validated before it
// is recorded; a bad arrow is an IllegalMove naming the side and index.
inline play run_game(std::shared_ptr<const category> cat, strategy& eve, strategy& odd,
                     std::size_t rounds, std::uint64_t seed) {
    require(eve.side() == "eve" && odd.side() == "odd", "IllegalMove",
            "strategies must cover opposite sides");
    require(rounds >= 1, "OutOfRange", "a game needs at least one round");
    rng gen(seed);
    play p;
    p.cat = cat;
    p.moves.push_back({"eve", std::nullopt, eve.open(gen), eve.annotations()});
    for (std::size_t idx = 1; idx < 2 * rounds; ++idx) {
        const bool odds_turn = idx % 2 == 1;
        strategy& s = odds_turn ? odd : eve;
        arrow a = s.move(p, gen);
        if (a.dom != p.moves.back().target || !cat->valid_arrow(a))
            fail("IllegalMove", std::string(odds_turn ? "odd" : "eve") + " produced an invalid arrow at move " +
                                    std::to_string(idx));
        object_ref tgt = a.cod;
        p.moves.push_back({odds_turn ? "odd" : "eve", std::move(a), std::move(tgt), s.annotations()});
    }
    p.result = "completed";
    return p;
}

} // namespace fraisse
