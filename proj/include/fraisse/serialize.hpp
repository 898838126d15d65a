#pragma once

#include <string>
#include <variant>
#include <vector>

#include "fraisse/category.hpp"
#include "fraisse/json.hpp"

namespace fraisse {

inline json payload_to_json(const object_payload& p) {
    if (const auto* g = std::get_if<graph_data>(&p)) {
        json edges = json::array();
        for (auto [a, b] : g->edges) edges.push_back(json::array({a, b}));
        return json{{"n", g->n}, {"edges", std::move(edges)}};
    }
    if (const auto* l = std::get_if<lin_order_data>(&p)) return json{{"n", l->n}};
    if (const auto* s = std::get_if<fin_set_data>(&p)) return json{{"n", s->n}};
    return json(std::get<abstract_data>(p).name);
}

// `kind` disambiguates the bare payload formats: "graph", "linord", "set"
// share the {"n": ...} shape, abstract objects are plain names.
inline object_payload payload_from_json(const json& doc, const std::string& kind) {
    if (doc.is_string()) return abstract_data{doc.get<std::string>()};
    require(doc.is_object() && doc.contains("n"), "LawViolation", "structure payload must carry n");
    int n = doc["n"].get<int>();
    require(n >= 1, "OutOfRange", "structure size must be at least 1");
    if (kind == "graph") {
        graph_data g{n, {}};
        for (const auto& e : doc.value("edges", json::array())) {
            int a = e.at(0).get<int>(), b = e.at(1).get<int>();
            require(a != b && a >= 0 && b >= 0 && a < n && b < n, "OutOfRange", "edge endpoint out of range");
            g.edges.push_back(ordered_edge(a, b));
        }
        normalize_edges(g);
        return g;
    }
    if (kind == "linord") return lin_order_data{n};
    if (kind == "set") return fin_set_data{n};
    fail("UnknownInstance", "unknown payload kind " + kind);
}

inline json arrow_to_json(const arrow& f) {
    json doc;
    doc["dom"] = payload_to_json(f.dom.payload);
    doc["cod"] = payload_to_json(f.cod.payload);
    if (std::holds_alternative<std::string>(f.payload))
        doc["name"] = std::get<std::string>(f.payload);
    else
        doc["map"] = std::get<std::vector<int>>(f.payload);
    return doc;
}

// Documents carry literally labeled payloads and maps written against those
// labels, so deserialization must not relabel anything.
inline object_ref literal_ref(object_payload p) {
    std::string id = object_payload_id(p);
    return object_ref{std::move(id), std::move(p)};
}

inline arrow arrow_from_json(const json& doc, const category& cat, const std::string& kind) {
    object_ref dom = literal_ref(payload_from_json(doc.at("dom"), kind));
    object_ref cod = literal_ref(payload_from_json(doc.at("cod"), kind));
    arrow_payload p;
    if (doc.contains("name"))
        p = doc["name"].get<std::string>();
    else
        p = doc.at("map").get<std::vector<int>>();
    arrow f{std::move(dom), std::move(cod), std::move(p)};
    require(cat.valid_arrow(f), "LawViolation", "deserialized arrow is not a valid " + kind + " arrow");
    return f;
}

} // namespace fraisse
