#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/error.hpp"
#include "fraisse/json.hpp"
#include "fraisse/rng.hpp"
#include "fraisse/game/play.hpp"

namespace fraisse {

// 2-adic valuation; n must be positive.
inline std::size_t nu2(std::size_t n) {
    std::size_t k = 0;
    while ((n & 1u) == 0) {
        n >>= 1;
        ++k;
    }
    return k;
}

// Fixed computable partition of the even move indices: 2t belongs to class
// nu2(t + 1), and every class at or past `parts - 1` collapses into the last
// part, so each of finitely many parts still owns infinitely many rounds.
inline std::size_t dispatch_class(std::size_t even_index, std::size_t parts) {
    std::size_t k = nu2(even_index / 2 + 1);
    return k < parts ? k : parts - 1;
}

inline std::string dispatch_rule_text() {
    return "even index 2t -> class nu2(t+1), classes >= parts-1 merged into the last";
}

// The move indices a part sees: its even indices I_k plus the Odd replies
// right after them, clipped to the first `move_count` moves of a play.
inline std::vector<std::size_t> restriction_indices(std::size_t k, std::size_t parts,
                                                    std::size_t move_count) {
    std::vector<std::size_t> out;
    for (std::size_t m = 0; m < move_count; m += 2) {
        if (dispatch_class(m, parts) != k) continue;
        out.push_back(m);
        if (m + 1 < move_count) out.push_back(m + 1);
    }
    return out;
}

// The play a part would have seen: targets at the given outer indices, with
// the in-between moves composed into single arrows.
inline play play_restriction(const play& p, const std::vector<std::size_t>& indices) {
    require(!indices.empty(), "EmptyList", "restriction to an empty index set");
    play out;
    out.cat = p.cat;
    out.result = p.result;
    out.moves.push_back({p.moves.at(indices.front()).by, std::nullopt,
                         p.moves.at(indices.front()).target, json::object()});
    for (std::size_t i = 1; i < indices.size(); ++i) {
        require(indices[i - 1] < indices[i], "OutOfRange", "restriction indices must increase");
        arrow step = play_bonding(p, indices[i - 1], indices[i]);
        out.moves.push_back({p.moves.at(indices[i]).by, std::move(step),
                             p.moves.at(indices[i]).target, json::object()});
    }
    return out;
}

// Move-for-move comparison of two plays by player, arrow and target,
// ignoring annotations (which record strategy-local notes).
inline bool same_transcript(const play& a, const play& b, std::string* why = nullptr) {
    if (a.moves.size() != b.moves.size()) {
        if (why) *why = "different move counts";
        return false;
    }
    for (std::size_t i = 0; i < a.moves.size(); ++i) {
        const auto& ma = a.moves[i];
        const auto& mb = b.moves[i];
        if (ma.by != mb.by || ma.target != mb.target || ma.step.has_value() != mb.step.has_value() ||
            (ma.step && !(*ma.step == *mb.step))) {
            if (why) *why = "moves differ at index " + std::to_string(i);
            return false;
        }
    }
    return true;
}

// Runs several Odd strategies in one play by partitioning the rounds: the
// reply to Eve's move at index 2t comes from the part owning class nu2(t+1),
// and that part sees only its own slice of the play, with everything between
// its turns composed into single Eve arrows.  Each part therefore plays an
// ordinary game of its own, interleaved with the others.
class intersected_strategy final : public strategy {
public:
    explicit intersected_strategy(std::vector<std::shared_ptr<strategy>> parts)
        : parts_(std::move(parts)) {
        require(!parts_.empty(), "EmptyList", "no strategies to intersect");
        for (const auto& s : parts_)
            require(s && s->side() == "odd", "IllegalMove",
                    "only odd strategies can be intersected");
        inner_.resize(parts_.size());
        last_index_.assign(parts_.size(), 0);
    }

    std::string side() const override { return "odd"; }

    std::string describe() const override {
        std::string out = "intersect[";
        for (std::size_t i = 0; i < parts_.size(); ++i)
            out += (i ? "," : "") + parts_[i]->describe();
        return out + "]";
    }

    json annotations() const override { return last_note_; }

    std::size_t parts() const { return parts_.size(); }
    const play& inner_play(std::size_t k) const { return inner_.at(k); }

    arrow move(const play& p, rng& gen) override {
        const std::size_t even = p.moves.size() - 1;  // Eve's move we answer
        const std::size_t k = dispatch_class(even, parts_.size());
        play& ip = inner_[k];
        if (ip.moves.empty()) {
            ip.cat = p.cat;
            ip.result = "restricted";
            ip.moves.push_back({"eve", std::nullopt, p.moves[even].target, json::object()});
        } else {
            arrow since = play_bonding(p, last_index_[k], even);
            ip.moves.push_back({"eve", std::move(since), p.moves[even].target, json::object()});
        }
        arrow reply = parts_[k]->move(ip, gen);
        ip.moves.push_back({"odd", reply, reply.cod, parts_[k]->annotations()});
        last_index_[k] = even + 1;
        last_note_ = json{{"class", k},
                          {"rule", dispatch_rule_text()},
                          {"inner_move", ip.moves.size() - 1},
                          {"part", parts_[k]->describe()}};
        return reply;
    }

private:
    std::vector<std::shared_ptr<strategy>> parts_;
    std::vector<play> inner_;
    std::vector<std::size_t> last_index_;  // outer index of a part's last seen move
    json last_note_ = json::object();
};

inline std::shared_ptr<strategy> intersect_odd_strategies(
    std::vector<std::shared_ptr<strategy>> parts) {
    return std::make_shared<intersected_strategy>(std::move(parts));
}

}  // namespace fraisse
