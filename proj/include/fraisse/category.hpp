#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fraisse/error.hpp"
#include "fraisse/hash.hpp"
#include "fraisse/json.hpp"
#include "fraisse/structures.hpp"

namespace fraisse {

// Object of a file-loaded table category.
struct abstract_data {
    std::string name;
    bool operator==(const abstract_data&) const = default;
};

using object_payload = std::variant<graph_data, lin_order_data, fin_set_data, abstract_data>;

// Object reference: canonical id plus the payload it encodes. Ids of
// canonically labeled payloads agree exactly when the payloads do.
struct object_ref {
    std::string id;
    object_payload payload;

    bool operator==(const object_ref& o) const { return id == o.id; }
    bool operator!=(const object_ref& o) const { return id != o.id; }
};

// Arrow payload: an index map for concrete structures (element i of the
// map's source goes to payload[i]) or the arrow name of a table category.
using arrow_payload = std::variant<std::vector<int>, std::string>;

struct arrow {
    object_ref dom;
    object_ref cod;
    arrow_payload payload;

    bool operator==(const arrow& o) const {
        return dom == o.dom && cod == o.cod && payload == o.payload;
    }
    bool operator!=(const arrow& o) const { return !(*this == o); }

    const std::vector<int>& map() const {
        require(std::holds_alternative<std::vector<int>>(payload), "AbstractCategory",
                "arrow has no index map");
        return std::get<std::vector<int>>(payload);
    }

    const std::string& label() const {
        require(std::holds_alternative<std::string>(payload), "DomainMismatch",
                "arrow has no label");
        return std::get<std::string>(payload);
    }

    std::string id() const {
        if (std::holds_alternative<std::string>(payload)) return std::get<std::string>(payload);
        std::string out = "map:[";
        const auto& m = std::get<std::vector<int>>(payload);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(m[i]);
        }
        return out + "]";
    }
};

// Witness that f': x -> w and g': y -> w close an amalgamation square:
// compose(f', f) == compose(g', g) for the pair the certificate answers.
struct amalgam_certificate {
    arrow left;
    arrow right;
};

inline std::string object_payload_id(const object_payload& p);

class category {
public:
    virtual ~category() = default;

    virtual const std::string& name() const = 0;

    // True when the whole object list is finite and enumerable; scans over
    // finite categories are decisive rather than bound-limited.
    virtual bool finite() const { return false; }

    // First `count` objects of the fixed fair enumeration (size-major,
    // lexicographic within a size). Finite categories clamp at their size.
    virtual std::vector<object_ref> enumerate_objects(std::size_t count) const = 0;

    virtual int object_size(const object_ref& a) const = 0;

    virtual arrow identity(const object_ref& a) const = 0;

    // All arrows a -> b in canonical order (identity first when a == b).
    const std::vector<arrow>& hom(const object_ref& a, const object_ref& b) const {
        auto key = std::pair{a.id, b.id};
        auto it = hom_memo_.find(key);
        if (it != hom_memo_.end()) return it->second;
        if (auto cached = load_disk_hom(a, b)) return hom_memo_.emplace(key, std::move(*cached)).first->second;
        auto computed = hom_impl(a, b);
        store_disk_hom(a, b, computed);
        return hom_memo_.emplace(key, std::move(computed)).first->second;
    }

    arrow compose(const arrow& g, const arrow& f) const {
        require(f.cod == g.dom, "DomainMismatch",
                "compose: cod(" + f.id() + ") = " + f.cod.id + " but dom(" + g.id() + ") = " + g.dom.id);
        return compose_impl(g, f);
    }

    virtual bool valid_arrow(const arrow& f) const = 0;

    // Class amalgamation oracle. A certificate here proves the pair (f, g)
    // amalgamates with no size bound attached. has_amalgam_oracle() means
    // the oracle is total: it closes every pair of the category.
    virtual std::optional<amalgam_certificate> oracle_amalgam(const arrow& f, const arrow& g) const {
        (void)f;
        (void)g;
        return std::nullopt;
    }
    virtual bool has_amalgam_oracle() const { return false; }

    // Whether the canonical amalgam search exhausts all candidates, making
    // an empty result a proof of non-amalgamation. True for the shipped
    // instances (their codomain size caps are complete) and for finite
    // categories; false for e.g. subcategory views, where a certificate may
    // need padding beyond the cap.
    virtual bool amalgam_search_complete() const { return finite(); }

    // Canonical cocone over two objects, used for directedness and by the
    // sequence builder. Instances with a join construction override this.
    virtual std::optional<std::pair<arrow, arrow>> join(const object_ref& a, const object_ref& b) const {
        (void)a;
        (void)b;
        return std::nullopt;
    }

    // Minimal out-arrow universe for games, builders and spot verification:
    // one-point extensions for concrete structures, all out-arrows for
    // finite table categories. Canonically ordered.
    virtual std::vector<arrow> extension_arrows(const object_ref& a) const = 0;

    // Payload format tag: "graph", "linord", "set" or "abstract".
    virtual std::string payload_kind() const = 0;

    // Arrows g : cod(q) -> cod(r) with compose(g, q) == r, in canonical hom
    // order, at most `limit` of them. Concrete instances override this with
    // a constrained backtracking search instead of a full hom filter.
    virtual std::vector<arrow> left_factors(const arrow& q, const arrow& r, std::size_t limit) const {
        require(q.dom == r.dom, "DomainMismatch", "left_factors: q and r must share their domain");
        std::vector<arrow> out;
        for (const auto& g : hom(q.cod, r.cod)) {
            if (compose(g, q) == r) {
                out.push_back(g);
                if (out.size() >= limit) break;
            }
        }
        return out;
    }

    // Mint an object in canonical form: concrete payloads are relabeled so
    // isomorphic structures receive equal ids (within the labeling ceiling).
    object_ref make_object(object_payload payload) const {
        payload = canonical_payload(std::move(payload));
        return object_ref{object_payload_id(payload), std::move(payload)};
    }

protected:
    virtual std::vector<arrow> hom_impl(const object_ref& a, const object_ref& b) const = 0;
    virtual arrow compose_impl(const arrow& g, const arrow& f) const = 0;
    virtual object_payload canonical_payload(object_payload p) const { return p; }

private:
    mutable std::map<std::pair<std::string, std::string>, std::vector<arrow>> hom_memo_;

    std::filesystem::path disk_cache_path(const object_ref& a, const object_ref& b) const {
        const char* dir = std::getenv("FRAISSE_CACHE_DIR");
        if (!dir || !*dir) return {};
        std::string key = name() + "|" + a.id + "|" + b.id;
        return std::filesystem::path(dir) / ("hom-" + content_hash(key) + ".json");
    }

    std::optional<std::vector<arrow>> load_disk_hom(const object_ref& a, const object_ref& b) const {
        auto path = disk_cache_path(a, b);
        if (path.empty() || !std::filesystem::exists(path)) return std::nullopt;
        std::ifstream in(path);
        if (!in) return std::nullopt;
        json doc = json::parse(in, nullptr, false);
        if (doc.is_discarded() || !doc.is_object() || doc.value("key", "") != name() + "|" + a.id + "|" + b.id)
            return std::nullopt;
        std::vector<arrow> out;
        for (const auto& entry : doc["arrows"]) {
            arrow_payload p;
            if (entry.is_string())
                p = entry.get<std::string>();
            else
                p = entry.get<std::vector<int>>();
            out.push_back(arrow{a, b, std::move(p)});
        }
        return out;
    }

    void store_disk_hom(const object_ref& a, const object_ref& b, const std::vector<arrow>& arrows) const {
        auto path = disk_cache_path(a, b);
        if (path.empty()) return;
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        json entries = json::array();
        for (const auto& f : arrows) {
            if (std::holds_alternative<std::string>(f.payload))
                entries.push_back(std::get<std::string>(f.payload));
            else
                entries.push_back(std::get<std::vector<int>>(f.payload));
        }
        json doc;
        doc["key"] = name() + "|" + a.id + "|" + b.id;
        doc["arrows"] = std::move(entries);
        std::ofstream out(path);
        if (out) out << doc.dump();
    }
};

inline std::string object_payload_id(const object_payload& p) {
    if (const auto* g = std::get_if<graph_data>(&p)) return graph_id(*g);
    if (const auto* l = std::get_if<lin_order_data>(&p)) return "linord:" + std::to_string(l->n);
    if (const auto* s = std::get_if<fin_set_data>(&p)) return "set:" + std::to_string(s->n);
    return std::get<abstract_data>(p).name;
}

inline int payload_size(const object_payload& p) {
    if (const auto* g = std::get_if<graph_data>(&p)) return g->n;
    if (const auto* l = std::get_if<lin_order_data>(&p)) return l->n;
    if (const auto* s = std::get_if<fin_set_data>(&p)) return s->n;
    return 1;
}

} // namespace fraisse
