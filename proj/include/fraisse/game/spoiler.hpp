#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/category.hpp"
#include "fraisse/engine/colimit.hpp"
#include "fraisse/engine/witness.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json.hpp"
#include "fraisse/rng.hpp"
#include "fraisse/game/play.hpp"

namespace fraisse {

// Evidence that a chain's colimit is not generic: a bounded object a and an
// arrow e into the approximated colimit such that every one-step continuation
// f out of a can be answered by a further step f' after which no arrow g into
// the recorded chain satisfies g . f' . f = e.  Eve can then steer any play
// away from the class of e forever, so Odd cannot realize that colimit.
struct spoil_certificate {
    object_ref a;
    arrow e;  // a -> structure at the horizon stage
    json detail = json::object();

    json to_json() const {
        return json{{"object", payload_to_json(a.payload)},
                    {"arrow", arrow_to_json(e)},
                    {"detail", detail}};
    }
};

namespace detail {

// A kickback for (f, f') against a class e is an arrow g with
// g . f' . f = (e pushed to the last recorded stage).  Any kickback at an
// intermediate recorded stage pushes forward to one at the last stage, so
// testing there covers the whole record.
inline bool kickback_free(const category& cat, const arrow& f, const arrow& fprime,
                          const arrow& target) {
    return cat.left_factors(cat.compose(fprime, f), target, 1).empty();
}

}  // namespace detail

// Search for a spoil certificate on the colimit approximation V: scan bounded
// objects a and arrows e : a -> V.structure(), and accept (a, e) when every f
// in the bounded arrow universe out of a admits a kickback-free answer f'.
// The search is sound but bounded: a short record can make an answer look
// kickback-free only because the stages that would absorb it are missing, so
// certificates should be read relative to the recorded horizon.
inline std::optional<spoil_certificate> find_spoil_certificate(const colimit_approx& V,
                                                               int bound) {
    const category& cat = *V.chain.cat;
    const std::size_t last = V.chain.length() - 1;
    for (const auto& a : objects_within(cat, bound)) {
        for (const auto& e : cat.hom(a, V.structure())) {
            const arrow target = cat.compose(bonding(V.chain, V.at, last), e);
            bool all_answered = true;
            for (const auto& f : g2_arrow_universe(cat, a, bound)) {
                bool answered = false;
                for (const auto& fprime : g2_arrow_universe(cat, f.cod, bound)) {
                    if (detail::kickback_free(cat, f, fprime, target)) {
                        answered = true;
                        break;
                    }
                }
                if (!answered) {
                    all_answered = false;
                    break;
                }
            }
            if (all_answered) {
                spoil_certificate cert;
                cert.a = a;
                cert.e = e;
                cert.detail = json{{"horizon", V.at}, {"recorded", V.chain.length()}, {"bound", bound}};
                return cert;
            }
        }
    }
    return std::nullopt;
}

// Eve strategy built from a spoil certificate.  She opens with cert.a and at
// her n-th later move decodes n = 2^k * (2j + 1) to pick one potential way
// the class of e could sit inside the play so far (the j-th arrow from a into
// the move-k stage, pushed to the current end), then answers it with the
// first kickback-free continuation.  Every (stage, arrow) pair is decoded at
// exactly one n, and classes entering at move 0 reappear at move 1, so in the
// limit every way of embedding e into the play gets treated and killed.
//
// Each treated pair is kept in a ledger; killing is stable under later moves
// (a kickback at a later stage would compose back to one at treatment time),
// and verify_diagonal rechecks that at the end of the play as a guard against
// implementation drift.
class eve_spoiler final : public strategy {
public:
    eve_spoiler(colimit_approx V, int bound = 3)
        : V_(std::move(V)), bound_(bound) {
        auto cert = find_spoil_certificate(V_, bound_);
        if (!cert)
            fail("NoSpoilCertificate",
                 "no bounded class of the target colimit is spoilable at bound " +
                     std::to_string(bound_));
        cert_ = std::move(*cert);
        const std::size_t last = V_.chain.length() - 1;
        target_ = V_.chain.cat->compose(bonding(V_.chain, V_.at, last), cert_.e);
    }

    std::string side() const override { return "eve"; }
    std::string describe() const override { return "spoiler"; }

    const spoil_certificate& certificate() const { return cert_; }

    object_ref open(rng&) override {
        last_note_ = json{{"opened", cert_.a.id}};
        return cert_.a;
    }

    arrow move(const play& p, rng&) override {
        const category& cat = *p.cat;
        const std::size_t n = p.moves.size() / 2;  // Eve's move counter, n >= 1
        const std::size_t last = p.moves.size() - 1;

        // n = 2^k * (2j + 1): treat the j-th arrow from a into the move-k stage.
        std::size_t k = 0, m = n;
        while ((m & 1u) == 0) {
            m >>= 1;
            ++k;
        }
        const std::size_t j = (m - 1) / 2;

        arrow f = play_bonding(p, 0, last);
        json note{{"move", p.moves.size()}, {"stage", 0}, {"class", 0}, {"defaulted", true}};
        if (k >= 1 && k <= last) {
            auto classes = cat.hom(cert_.a, p.moves[k].target);
            if (j < classes.size()) {
                f = cat.compose(play_bonding(p, k, last), classes[j]);
                note = json{{"move", p.moves.size()}, {"stage", k}, {"class", j}, {"defaulted", false}};
            }
        }

        for (const auto& fprime : g2_arrow_universe(cat, f.cod, bound_)) {
            if (detail::kickback_free(cat, f, fprime, target_)) {
                treated_.push_back({p.moves.size(), f, fprime});
                last_note_ = std::move(note);
                return fprime;
            }
        }
        fail("NoSpoilCertificate",
             "no continuation out of the stage reached at move " + std::to_string(p.moves.size()) +
                 " keeps the treated class unembeddable");
    }

    json annotations() const override { return last_note_; }

    // Recheck that every treated class is still without a kickback when the
    // finished play is pushed to its end.  Should hold by construction.
    bool verify_diagonal(const play& p, std::string* why = nullptr) const {
        const category& cat = *p.cat;
        const std::size_t last = p.moves.size() - 1;
        for (const auto& t : treated_) {
            if (t.move > last) {
                if (why) *why = "treated entry beyond the supplied play";
                return false;
            }
            arrow pushed = cat.compose(play_bonding(p, t.move, last), cat.compose(t.fprime, t.f));
            if (!cat.left_factors(pushed, target_, 1).empty()) {
                if (why)
                    *why = "class treated at move " + std::to_string(t.move) +
                           " regained a kickback by the end of the play";
                return false;
            }
        }
        return true;
    }

    json diagonal_ledger() const {
        json out = json::array();
        for (const auto& t : treated_)
            out.push_back(json{{"move", t.move},
                               {"f", arrow_to_json(t.f)},
                               {"answer", arrow_to_json(t.fprime)}});
        return out;
    }

private:
    struct treated_entry {
        std::size_t move;  // index of Eve's answering move; fprime lands on its target
        arrow f;           // cert.a -> stage before the answer
        arrow fprime;      // the answering step
    };

    colimit_approx V_;
    int bound_;
    spoil_certificate cert_;
    arrow target_;  // cert.e pushed to the last recorded stage
    std::vector<treated_entry> treated_;
    json last_note_ = json::object();
};

}  // namespace fraisse
