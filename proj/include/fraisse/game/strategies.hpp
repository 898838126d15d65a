#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/category.hpp"
#include "fraisse/engine/witness.hpp"
#include "fraisse/error.hpp"
#include "fraisse/game/play.hpp"
#include "fraisse/instances/graphs.hpp"
#include "fraisse/json.hpp"
#include "fraisse/rng.hpp"
#include "fraisse/sequence.hpp"
#include "fraisse/serialize.hpp"

namespace fraisse {

// Eve playing arbitrary legal moves: opens with a random bounded object
// and extends by a random arrow from the bounded out-universe, stalling
// with the identity when that universe is empty.
class random_eve final : public strategy {
public:
    explicit random_eve(std::shared_ptr<const category> cat, int bound = 3)
        : cat_(std::move(cat)), bound_(bound) {}

    std::string side() const override { return "eve"; }
    std::string describe() const override { return "random"; }

    object_ref open(rng& gen) override {
        auto objs = objects_within(*cat_, bound_);
        require(!objs.empty(), "EmptyList", "category has no bounded objects");
        return objs[static_cast<std::size_t>(gen.below(objs.size()))];
    }

    arrow move(const play& p, rng& gen) override {
        const object_ref& cur = p.moves.back().target;
        auto universe = g2_arrow_universe(*cat_, cur, bound_);
        if (universe.empty()) return cat_->identity(cur);
        return universe[static_cast<std::size_t>(gen.below(universe.size()))];
    }

private:
    std::shared_ptr<const category> cat_;
    int bound_;
};

// Eve forcing ever-larger cliques: opens with a step-sized clique and adds
// `step` vertices adjacent to everything per move. Built literally because
// the dominating-vertex extension leaves the bounded extension universe as
// soon as the play grows past the neighborhood cap.  step = 2 keeps the
// vertex count even, for playing inside parity subcategories.
class cliques_only_eve final : public strategy {
public:
    explicit cliques_only_eve(std::shared_ptr<const category> cat, int step = 1)
        : cat_(std::move(cat)), step_(step) {
        require(cat_->payload_kind() == "graph", "UnknownInstance", "cliques_only plays on graphs");
        require(step_ >= 1, "OutOfRange", "step must be positive");
    }

    std::string side() const override { return "eve"; }
    std::string describe() const override { return "cliques_only"; }

    object_ref open(rng&) override {
        graph_data g{step_, {}};
        for (int i = 0; i < step_; ++i)
            for (int j = i + 1; j < step_; ++j) g.edges.push_back(ordered_edge(i, j));
        return graph_ref(std::move(g));
    }

    arrow move(const play& p, rng&) override {
        const auto& g = std::get<graph_data>(p.moves.back().target.payload);
        graph_data bigger{g.n + step_, g.edges};
        for (int k = 0; k < step_; ++k)
            for (int v = 0; v < g.n + k; ++v) bigger.edges.push_back(ordered_edge(v, g.n + k));
        std::vector<int> map(static_cast<std::size_t>(g.n));
        std::iota(map.begin(), map.end(), 0);
        return arrow{p.moves.back().target, graph_ref(std::move(bigger)), std::move(map)};
    }

private:
    std::shared_ptr<const category> cat_;
    int step_;
};

// Eve growing a path: opens with a step-long path and hangs `step` chained
// pendant vertices on the last vertex per move.  step = 2 keeps the vertex
// count even.
class paths_only_eve final : public strategy {
public:
    explicit paths_only_eve(std::shared_ptr<const category> cat, int step = 1)
        : cat_(std::move(cat)), step_(step) {
        require(cat_->payload_kind() == "graph", "UnknownInstance", "paths_only plays on graphs");
        require(step_ >= 1, "OutOfRange", "step must be positive");
    }

    std::string side() const override { return "eve"; }
    std::string describe() const override { return "paths_only"; }

    object_ref open(rng&) override {
        graph_data g{step_, {}};
        for (int i = 0; i + 1 < step_; ++i) g.edges.push_back(ordered_edge(i, i + 1));
        return graph_ref(std::move(g));
    }

    arrow move(const play& p, rng&) override {
        const auto& g = std::get<graph_data>(p.moves.back().target.payload);
        graph_data bigger{g.n + step_, g.edges};
        for (int k = 0; k < step_; ++k) bigger.edges.push_back(ordered_edge(g.n + k - 1, g.n + k));
        std::vector<int> map(static_cast<std::size_t>(g.n));
        std::iota(map.begin(), map.end(), 0);
        return arrow{p.moves.back().target, graph_ref(std::move(bigger)), std::move(map)};
    }

private:
    std::shared_ptr<const category> cat_;
    int step_;
};

// Odd insisting that a fixed object be realized: responds with the
// identity once the object embeds into the current position, and with the
// left injection into a disjoint union until it does.
class ensure_subgraph_odd final : public strategy {
public:
    ensure_subgraph_odd(std::shared_ptr<const category> cat, object_ref wanted)
        : cat_(std::move(cat)), wanted_(std::move(wanted)) {
        require(cat_->payload_kind() == "graph", "UnknownInstance", "ensure_subgraph plays on graphs");
    }

    std::string side() const override { return "odd"; }
    std::string describe() const override { return "ensure:" + wanted_.id; }

    arrow move(const play& p, rng&) override {
        const object_ref& cur = p.moves.back().target;
        if (!cat_->hom(wanted_, cur).empty()) {
            last_note_ = json{{"realized", true}};
            return cat_->identity(cur);
        }
        const auto& g = std::get<graph_data>(cur.payload);
        const auto& w = std::get<graph_data>(wanted_.payload);
        graph_data both{g.n + w.n, g.edges};
        for (auto [a, b] : w.edges) both.edges.push_back(ordered_edge(a + g.n, b + g.n));
        std::vector<int> map(static_cast<std::size_t>(g.n));
        std::iota(map.begin(), map.end(), 0);
        last_note_ = json{{"realized", false}};
        return arrow{cur, graph_ref(std::move(both)), std::move(map)};
    }

    json annotations() const override { return last_note_; }

private:
    std::shared_ptr<const category> cat_;
    object_ref wanted_;
    json last_note_ = json::object();
};

// Odd playing along a fixed chain, the absorbing strategy: it keeps the
// invariant that after each of its moves the position is a stage of the
// chain, hunting a witness that absorbs Eve's last arrow over the base
// stage it is tracking. With extension enabled the chain may grow (by
// amalgamation, plus identity bonds on stages the strategy itself added);
// without it a failed hunt raises WitnessNotFound.
class odd_generic_strategy final : public strategy {
public:
    explicit odd_generic_strategy(sequence u, bool allow_extension = true, int bound = 4)
        : u_(std::move(u)), created_from_(u_.length()), allow_extension_(allow_extension), bound_(bound) {}

    std::string side() const override { return "odd"; }
    std::string describe() const override { return "generic"; }

    arrow move(const play& p, rng& gen) override {
        const std::size_t round = (p.moves.size() + 1) / 2;
        const category& cat = *u_.cat;
        if (p.moves.size() == 1) {
            // Opening response: land Eve's object inside the chain, then
            // step one bond forward so the invariant holds.
            const object_ref& a0 = p.moves.front().target;
            std::optional<std::pair<std::size_t, arrow>> hit, bare;
            for (std::size_t k = 0; k < u_.length(); ++k) {
                const auto& fs = cat.hom(a0, u_.stage(k));
                if (fs.empty()) continue;
                if (k + 1 < u_.length() || k >= created_from_) {
                    hit = {k, fs.front()};
                    break;
                }
                if (!bare) bare = {k, fs.front()};
            }
            if (!hit && bare && allow_extension_) {
                u_.append(cat.identity(u_.stage(bare->first)));
                hit = bare;
            }
            if (!hit && !bare && allow_extension_)
                if (auto embed = glue_onto_last(u_, a0, bound_, gen)) {
                    u_.append(cat.identity(u_.stages.back()));
                    hit = {u_.length() - 2, *embed};
                }
            require(hit.has_value(), "WitnessNotFound",
                    "round 1: opening object lands in no usable stage of the chain");
            base_ = hit->first;
            require(ensure_successor_bond(u_, base_, created_from_), "ExtensionStuck",
                    "round 1: chain has no bond out of stage " + std::to_string(base_));
            last_note_ = json{{"stage", base_ + 1}};
            return cat.compose(bonding(u_, base_, base_ + 1), hit->second);
        }
        // Invariant: the previous odd target is u_{base_+1}; Eve's last
        // arrow leads out of it.
        const arrow& eve_arrow = *p.moves.back().step;
        auto w = find_g2_witness(u_, created_from_, base_, eve_arrow, true, allow_extension_, bound_);
        require(w.has_value(), "WitnessNotFound",
                "round " + std::to_string(round) + ": no stage absorbs the opponent's arrow");
        require(ensure_successor_bond(u_, w->stage, created_from_), "ExtensionStuck",
                "round " + std::to_string(round) + ": chain has no bond out of stage " +
                    std::to_string(w->stage));
        arrow reply = cat.compose(bonding(u_, w->stage, w->stage + 1), w->g);
        base_ = w->stage;
        last_note_ = json{{"stage", w->stage + 1}, {"witness", arrow_to_json(w->g)}};
        return reply;
    }

    json annotations() const override { return last_note_; }

    const sequence& chain() const { return u_; }

private:
    sequence u_;
    std::size_t created_from_;
    bool allow_extension_;
    int bound_;
    std::size_t base_ = 0;
    json last_note_ = json::object();
};

} // namespace fraisse
