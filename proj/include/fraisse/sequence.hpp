#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/category.hpp"
#include "fraisse/error.hpp"
#include "fraisse/json.hpp"
#include "fraisse/serialize.hpp"

namespace fraisse {

// Chain u_0 -> u_1 -> ... with bonds[n] : u_n -> u_{n+1}. The ledger keeps
// the builder's discharged tasks so verification can replay every witness.
struct sequence {
    std::shared_ptr<const category> cat;
    std::vector<object_ref> stages;
    std::vector<arrow> bonds;
    json ledger = json::array();

    std::size_t length() const { return stages.size(); }

    const object_ref& stage(std::size_t n) const {
        require(n < stages.size(), "OutOfRange",
                "stage " + std::to_string(n) + " of a sequence of length " + std::to_string(stages.size()));
        return stages[n];
    }

    void append(const arrow& bond) {
        require(!stages.empty(), "OutOfRange", "append on an empty sequence");
        require(bond.dom == stages.back(), "DomainMismatch", "bond does not start at the last stage");
        bonds.push_back(bond);
        stages.push_back(bond.cod);
    }
};

inline sequence make_sequence(std::shared_ptr<const category> cat, object_ref first) {
    sequence s;
    s.cat = std::move(cat);
    s.stages.push_back(std::move(first));
    return s;
}

// Composite bond u_n -> u_m; n == m yields the identity.
inline arrow bonding(const sequence& s, std::size_t n, std::size_t m) {
    require(n <= m && m < s.stages.size(), "OutOfRange",
            "bonding(" + std::to_string(n) + ", " + std::to_string(m) + ") on length " +
                std::to_string(s.stages.size()));
    arrow acc = s.cat->identity(s.stages[n]);
    for (std::size_t i = n; i < m; ++i) acc = s.cat->compose(s.bonds[i], acc);
    return acc;
}

// Drop the first `start` stages; stage(start) becomes the new stage 0.
inline sequence shift(const sequence& s, std::size_t start) {
    require(start < s.stages.size(), "OutOfRange", "shift start beyond sequence length");
    sequence out;
    out.cat = s.cat;
    out.stages.assign(s.stages.begin() + static_cast<std::ptrdiff_t>(start), s.stages.end());
    out.bonds.assign(s.bonds.begin() + static_cast<std::ptrdiff_t>(start), s.bonds.end());
    out.ledger = json::array();
    return out;
}

// Restriction of a sequence to an increasing stage index set; bonds compose.
inline sequence restrict_to(const sequence& s, const std::vector<std::size_t>& indices) {
    require(!indices.empty(), "EmptyList", "restriction to an empty index set");
    sequence out;
    out.cat = s.cat;
    out.stages.push_back(s.stage(indices[0]));
    for (std::size_t i = 1; i < indices.size(); ++i) {
        require(indices[i - 1] < indices[i], "OutOfRange", "restriction indices must be increasing");
        out.bonds.push_back(bonding(s, indices[i - 1], indices[i]));
        out.stages.push_back(s.stage(indices[i]));
    }
    return out;
}

// Natural transformation of chains: component[i] : x_{i} -> u_{stage_map[i]}.
struct sequence_arrow {
    std::vector<std::size_t> stage_map;
    std::vector<arrow> components;
};

// Naturality up to depth d: u_{s(n)}^{s(n+1)} . e_n == e_{n+1} . x_n^{n+1}.
inline bool verify_seq_arrow(const sequence& x, const sequence& u, const sequence_arrow& e,
                             std::size_t depth, std::string* why = nullptr) {
    require(e.stage_map.size() == e.components.size(), "DomainMismatch",
            "stage map and component list differ in length");
    require(depth + 1 <= e.components.size(), "OutOfRange", "sequence arrow records too few components");
    require(depth + 1 <= x.length(), "OutOfRange", "source sequence shorter than requested depth");
    for (std::size_t n = 0; n + 1 <= depth; ++n) {
        require(e.stage_map[n] <= e.stage_map[n + 1] && e.stage_map[n + 1] < u.length(), "OutOfRange",
                "stage map must be monotone within the target sequence");
        arrow lhs = u.cat->compose(bonding(u, e.stage_map[n], e.stage_map[n + 1]), e.components[n]);
        arrow rhs = u.cat->compose(e.components[n + 1], bonding(x, n, n + 1));
        if (lhs != rhs) {
            if (why) *why = "naturality square at index " + std::to_string(n) + " does not commute";
            return false;
        }
    }
    return true;
}

inline json sequence_to_json(const sequence& s) {
    json stages = json::array();
    for (const auto& st : s.stages) stages.push_back(payload_to_json(st.payload));
    json bonds = json::array();
    for (const auto& b : s.bonds) {
        if (std::holds_alternative<std::string>(b.payload))
            bonds.push_back(std::get<std::string>(b.payload));
        else
            bonds.push_back(std::get<std::vector<int>>(b.payload));
    }
    return json{{"category", s.cat->name()},
                {"stages", std::move(stages)},
                {"bonds", std::move(bonds)},
                {"ledger", s.ledger}};
}

// `kind` names the payload format of the category the file was written for.
inline sequence sequence_from_json(const json& doc, std::shared_ptr<const category> cat,
                                   const std::string& kind) {
    require(doc.contains("stages") && doc.contains("bonds"), "LawViolation",
            "sequence document must carry stages and bonds");
    require(doc.value("category", cat->name()) == cat->name(), "UnknownInstance",
            "sequence was recorded for category " + doc.value("category", std::string{}));
    sequence s;
    s.cat = std::move(cat);
    for (const auto& st : doc["stages"]) s.stages.push_back(literal_ref(payload_from_json(st, kind)));
    require(!s.stages.empty(), "EmptyList", "sequence document has no stages");
    const auto& bonds = doc["bonds"];
    require(bonds.size() + 1 == s.stages.size(), "LawViolation",
            "sequence document must carry one bond per adjacent stage pair");
    for (std::size_t i = 0; i < bonds.size(); ++i) {
        arrow_payload p;
        if (bonds[i].is_string())
            p = bonds[i].get<std::string>();
        else
            p = bonds[i].get<std::vector<int>>();
        arrow b{s.stages[i], s.stages[i + 1], std::move(p)};
        require(s.cat->valid_arrow(b), "LawViolation", "bond " + std::to_string(i) + " is not a valid arrow");
        s.bonds.push_back(std::move(b));
    }
    s.ledger = doc.value("ledger", json::array());
    return s;
}

} // namespace fraisse
