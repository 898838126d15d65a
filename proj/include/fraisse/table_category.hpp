#pragma once

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/category.hpp"
#include "fraisse/json.hpp"

namespace fraisse {

// Finite category given by an explicit table:
//   {"objects": [..], "arrows": [{"id","dom","cod"},..],
//    "composition": [[g, f, "g.f"], ..]}
// Identity arrows appear in "arrows" like any other arrow and are inferred
// from the table by the unit laws. Loading validates totality, both unit
// laws, and associativity exhaustively; dump() reproduces the document.
class table_category final : public category {
public:
    struct arrow_decl {
        std::string id, dom, cod;
    };

    static std::shared_ptr<table_category> load(const json& doc, std::string name) {
        auto cat = std::make_shared<table_category>();
        cat->name_ = std::move(name);
        cat->parse(doc);
        cat->validate();
        return cat;
    }

    static std::shared_ptr<table_category> load_file(const std::string& path) {
        std::ifstream in(path);
        require(bool(in), "UnknownInstance", "cannot open category file: " + path);
        json doc = json::parse(in, nullptr, false);
        require(!doc.is_discarded(), "LawViolation", "category file is not valid JSON: " + path);
        return load(doc, "file:" + path);
    }

    json dump() const {
        json arrows = json::array();
        for (const auto& a : arrows_)
            arrows.push_back(json{{"id", a.id}, {"dom", a.dom}, {"cod", a.cod}});
        json table = json::array();
        for (const auto& t : table_order_) table.push_back(json::array({t[0], t[1], t[2]}));
        return json{{"objects", objects_}, {"arrows", std::move(arrows)}, {"composition", std::move(table)}};
    }

    const std::string& name() const override { return name_; }
    bool finite() const override { return true; }
    std::string payload_kind() const override { return "abstract"; }

    std::vector<object_ref> enumerate_objects(std::size_t count) const override {
        std::vector<object_ref> out;
        for (const auto& o : objects_) {
            if (out.size() == count) break;
            out.push_back(make_object(abstract_data{o}));
        }
        return out;
    }

    int object_size(const object_ref&) const override { return 1; }

    arrow identity(const object_ref& a) const override {
        const auto& name = std::get<abstract_data>(a.payload).name;
        auto it = identity_of_.find(name);
        require(it != identity_of_.end(), "UnknownInstance", "no such object: " + name);
        return arrow{a, a, it->second};
    }

    bool valid_arrow(const arrow& f) const override {
        if (!std::holds_alternative<std::string>(f.payload)) return false;
        auto it = by_id_.find(f.label());
        return it != by_id_.end() && it->second.dom == f.dom.id && it->second.cod == f.cod.id;
    }

    std::vector<arrow> extension_arrows(const object_ref& a) const override {
        std::vector<arrow> out;
        const auto& name = std::get<abstract_data>(a.payload).name;
        for (const auto& d : sorted_arrows_)
            if (d.dom == name && d.id != identity_of_.at(name))
                out.push_back(arrow{a, make_object(abstract_data{d.cod}), d.id});
        return out;
    }

    std::optional<std::pair<arrow, arrow>> join(const object_ref& a, const object_ref& b) const override {
        for (const auto& w : objects_) {
            object_ref wobj = make_object(abstract_data{w});
            const auto& ha = hom(a, wobj);
            const auto& hb = hom(b, wobj);
            if (!ha.empty() && !hb.empty()) return std::pair{ha.front(), hb.front()};
        }
        return std::nullopt;
    }

    const std::vector<std::string>& object_names() const { return objects_; }
    const std::vector<arrow_decl>& arrow_decls() const { return arrows_; }

protected:
    std::vector<arrow> hom_impl(const object_ref& a, const object_ref& b) const override {
        const auto& an = std::get<abstract_data>(a.payload).name;
        const auto& bn = std::get<abstract_data>(b.payload).name;
        std::vector<arrow> out;
        if (an == bn) out.push_back(arrow{a, b, identity_of_.at(an)});
        for (const auto& d : sorted_arrows_) {
            if (d.dom != an || d.cod != bn) continue;
            if (an == bn && d.id == identity_of_.at(an)) continue;
            out.push_back(arrow{a, b, d.id});
        }
        return out;
    }

    arrow compose_impl(const arrow& g, const arrow& f) const override {
        auto it = table_.find({g.label(), f.label()});
        require(it != table_.end(), "LawViolation",
                "composition table has no entry for (" + g.label() + ", " + f.label() + ")");
        const auto& d = by_id_.at(it->second);
        return arrow{f.dom, g.cod, d.id};
    }

private:
    std::string name_;
    std::vector<std::string> objects_;
    std::vector<arrow_decl> arrows_;
    std::vector<arrow_decl> sorted_arrows_;
    std::vector<std::array<std::string, 3>> table_order_;
    std::map<std::pair<std::string, std::string>, std::string> table_;
    std::map<std::string, arrow_decl> by_id_;
    std::map<std::string, std::string> identity_of_;

    void parse(const json& doc) {
        require(doc.is_object() && doc.contains("objects") && doc.contains("arrows") &&
                    doc.contains("composition"),
                "LawViolation", "category document needs objects, arrows and composition fields");
        for (const auto& o : doc["objects"]) {
            require(o.is_string(), "LawViolation", "object names must be strings");
            std::string s = o.get<std::string>();
            require(std::find(objects_.begin(), objects_.end(), s) == objects_.end(), "LawViolation",
                    "duplicate object: " + s);
            objects_.push_back(std::move(s));
        }
        require(!objects_.empty(), "LawViolation", "category document lists no objects");
        for (const auto& a : doc["arrows"]) {
            require(a.is_object() && a.contains("id") && a.contains("dom") && a.contains("cod"),
                    "LawViolation", "each arrow needs id, dom and cod");
            arrow_decl d{a["id"].get<std::string>(), a["dom"].get<std::string>(),
                         a["cod"].get<std::string>()};
            require(!by_id_.count(d.id), "LawViolation", "duplicate arrow id: " + d.id);
            for (const auto* side : {&d.dom, &d.cod})
                require(std::find(objects_.begin(), objects_.end(), *side) != objects_.end(),
                        "LawViolation", "arrow " + d.id + " references unknown object " + *side);
            by_id_[d.id] = d;
            arrows_.push_back(std::move(d));
        }
        for (const auto& t : doc["composition"]) {
            require(t.is_array() && t.size() == 3, "LawViolation",
                    "composition entries must be [g, f, result] triples");
            std::array<std::string, 3> row{t[0].get<std::string>(), t[1].get<std::string>(),
                                           t[2].get<std::string>()};
            for (const auto& id : row)
                require(by_id_.count(id), "LawViolation",
                        "composition entry references unknown arrow " + id);
            const auto& g = by_id_.at(row[0]);
            const auto& f = by_id_.at(row[1]);
            const auto& r = by_id_.at(row[2]);
            require(f.cod == g.dom, "LawViolation",
                    "entry (" + row[0] + ", " + row[1] + ") composes arrows that do not meet");
            require(r.dom == f.dom && r.cod == g.cod, "LawViolation",
                    "entry (" + row[0] + ", " + row[1] + ") -> " + row[2] +
                        " has mismatched endpoints");
            auto key = std::pair{row[0], row[1]};
            auto it = table_.find(key);
            require(it == table_.end() || it->second == row[2], "LawViolation",
                    "conflicting entries for (" + row[0] + ", " + row[1] + ")");
            table_[key] = row[2];
            table_order_.push_back(std::move(row));
        }
        sorted_arrows_ = arrows_;
        std::sort(sorted_arrows_.begin(), sorted_arrows_.end(),
                  [](const arrow_decl& a, const arrow_decl& b) { return a.id < b.id; });
    }

    void validate() {
        for (const auto& g : arrows_)
            for (const auto& f : arrows_)
                if (f.cod == g.dom)
                    require(table_.count({g.id, f.id}), "LawViolation",
                            "composition table is missing (" + g.id + ", " + f.id + ")");

        for (const auto& x : objects_) {
            std::string found;
            for (const auto& i : arrows_) {
                if (i.dom != x || i.cod != x) continue;
                bool unit = true;
                for (const auto& f : arrows_) {
                    if (f.dom == x && table_.at({f.id, i.id}) != f.id) unit = false;
                    if (f.cod == x && table_.at({i.id, f.id}) != f.id) unit = false;
                    if (!unit) break;
                }
                if (unit) {
                    found = i.id;
                    break;
                }
            }
            require(!found.empty(), "LawViolation", "missing identity on " + x);
            identity_of_[x] = found;
        }

        for (const auto& h : arrows_)
            for (const auto& g : arrows_) {
                if (g.cod != h.dom) continue;
                for (const auto& f : arrows_) {
                    if (f.cod != g.dom) continue;
                    const auto& hg = table_.at({h.id, g.id});
                    const auto& gf = table_.at({g.id, f.id});
                    require(table_.at({hg, f.id}) == table_.at({h.id, gf}), "LawViolation",
                            "associativity fails at ((" + h.id + ", " + g.id + "), " + f.id + ")");
                }
            }
    }
};

inline std::shared_ptr<table_category> load_abstract_category(const json& doc,
                                                              std::string name = "abstract") {
    return table_category::load(doc, std::move(name));
}

} // namespace fraisse
