#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fraisse/amalgamation.hpp"
#include "fraisse/category.hpp"
#include "fraisse/verdict.hpp"

namespace fraisse {

// A subcategory of `parent`: either full on an object predicate, or an
// explicit finite list of objects and arrows (validated for closure).
struct subcategory {
    std::shared_ptr<const category> parent;
    std::string name;
    bool full = false;
    std::function<bool(const object_ref&)> member;  // full case
    std::vector<object_ref> objects;                // explicit case
    std::vector<arrow> arrows;                      // explicit case

    bool contains_object(const object_ref& o) const {
        if (full) return member(o);
        return std::find(objects.begin(), objects.end(), o) != objects.end();
    }

    bool contains_arrow(const arrow& f) const {
        if (full) return member(f.dom) && member(f.cod) && parent->valid_arrow(f);
        return std::find(arrows.begin(), arrows.end(), f) != arrows.end();
    }

    // S-objects of size <= bound, in the parent's fair enumeration order.
    std::vector<object_ref> objects_up_to(int bound) const {
        std::vector<object_ref> out;
        if (!full) {
            for (const auto& o : objects)
                if (parent->object_size(o) <= bound) out.push_back(o);
            return out;
        }
        for (const auto& o : objects_within(*parent, bound))
            if (member(o)) out.push_back(o);
        return out;
    }
};

inline subcategory full_subcategory(std::shared_ptr<const category> parent, std::string name,
                                    std::function<bool(const object_ref&)> member) {
    subcategory s;
    s.parent = std::move(parent);
    s.name = std::move(name);
    s.full = true;
    s.member = std::move(member);
    return s;
}

// Explicit subcategories must contain every identity of their objects and
// be closed under composition of their listed arrows.
inline subcategory explicit_subcategory(std::shared_ptr<const category> parent, std::string name,
                                        std::vector<object_ref> objects, std::vector<arrow> arrows) {
    subcategory s;
    s.parent = std::move(parent);
    s.name = std::move(name);
    s.full = false;
    s.objects = std::move(objects);
    s.arrows = std::move(arrows);
    for (const auto& f : s.arrows) {
        require(s.contains_object(f.dom) && s.contains_object(f.cod), "NotASubcategory",
                "arrow " + f.id() + " has an endpoint outside the object list");
        require(s.parent->valid_arrow(f), "NotASubcategory",
                "arrow " + f.id() + " is not a parent-category arrow");
    }
    for (const auto& o : s.objects)
        require(s.contains_arrow(s.parent->identity(o)), "NotASubcategory",
                "missing identity on " + o.id);
    for (const auto& g : s.arrows)
        for (const auto& f : s.arrows)
            if (f.cod == g.dom)
                require(s.contains_arrow(s.parent->compose(g, f)), "NotASubcategory",
                        "not closed under composition at (" + g.id() + ", " + f.id() + ")");
    return s;
}

// The subcategory as a category of its own. hom/join/extension universes are
// the parent's filtered by membership; the parent's amalgamation oracle is
// used only when its certificate happens to stay inside the subcategory, so
// neither oracle totality nor search completeness is claimed.
class subcategory_view final : public category {
public:
    explicit subcategory_view(subcategory sub)
        : sub_(std::move(sub)), name_(sub_.parent->name() + "|" + sub_.name) {}

    const subcategory& sub() const { return sub_; }

    const std::string& name() const override { return name_; }
    bool finite() const override { return sub_.parent->finite() || !sub_.full; }
    std::string payload_kind() const override { return sub_.parent->payload_kind(); }

    std::vector<object_ref> enumerate_objects(std::size_t count) const override {
        std::vector<object_ref> out;
        if (!sub_.full) {
            for (const auto& o : sub_.objects) {
                if (out.size() == count) break;
                out.push_back(o);
            }
            return out;
        }
        for (std::size_t scan = std::max<std::size_t>(count, 16);; scan *= 2) {
            auto objs = sub_.parent->enumerate_objects(scan);
            out.clear();
            for (const auto& o : objs) {
                if (sub_.member(o)) out.push_back(o);
                if (out.size() == count) return out;
            }
            if (objs.size() < scan) return out;  // parent exhausted
        }
    }

    int object_size(const object_ref& a) const override { return sub_.parent->object_size(a); }

    arrow identity(const object_ref& a) const override { return sub_.parent->identity(a); }

    bool valid_arrow(const arrow& f) const override { return sub_.contains_arrow(f); }

    std::optional<amalgam_certificate> oracle_amalgam(const arrow& f, const arrow& g) const override {
        auto cert = sub_.parent->oracle_amalgam(f, g);
        if (cert && sub_.contains_arrow(cert->left) && sub_.contains_arrow(cert->right)) return cert;
        return std::nullopt;
    }

    std::optional<std::pair<arrow, arrow>> join(const object_ref& a, const object_ref& b) const override {
        auto j = sub_.parent->join(a, b);
        if (j && sub_.contains_arrow(j->first) && sub_.contains_arrow(j->second)) return j;
        return std::nullopt;
    }

    std::vector<arrow> extension_arrows(const object_ref& a) const override {
        std::vector<arrow> out;
        for (auto& e : sub_.parent->extension_arrows(a))
            if (sub_.contains_arrow(e)) out.push_back(std::move(e));
        return out;
    }

    std::vector<arrow> left_factors(const arrow& q, const arrow& r, std::size_t limit) const override {
        std::vector<arrow> out;
        for (auto& g : sub_.parent->left_factors(q, r, static_cast<std::size_t>(-1))) {
            if (!sub_.contains_arrow(g)) continue;
            out.push_back(std::move(g));
            if (out.size() >= limit) break;
        }
        return out;
    }

protected:
    std::vector<arrow> hom_impl(const object_ref& a, const object_ref& b) const override {
        std::vector<arrow> out;
        for (auto& f : sub_.parent->hom(a, b))
            if (sub_.contains_arrow(f)) out.push_back(f);
        return out;
    }

    arrow compose_impl(const arrow& g, const arrow& f) const override {
        return sub_.parent->compose(g, f);
    }

private:
    subcategory sub_;
    std::string name_;
};

enum class subcategory_condition { cofinal, dominating, weakly_dominating };

inline std::optional<subcategory_condition> parse_condition(const std::string& s) {
    if (s == "cofinal") return subcategory_condition::cofinal;
    if (s == "dominating") return subcategory_condition::dominating;
    if (s == "weakly_dominating") return subcategory_condition::weakly_dominating;
    return std::nullopt;
}

// Bounded verification of the subcategory conditions.
//   cofinal:     every object has an arrow into an S-object.
//   dominating:  cofinal, and every arrow f out of an S-object extends by
//                some g with g.f in S.
//   weakly_dominating: cofinal, and every S-object has an S-arrow j such
//                that every f out of cod(j) extends by some g with g.f.j in S.
// Witness codomains are searched among S-objects one size step beyond the
// bound, so padding witnesses (e.g. one added vertex) are found.
inline verdict check_subcategory(const subcategory& sub, subcategory_condition mode, int bound) {
    const category& cat = *sub.parent;
    bool finite = cat.finite();
    auto universe = objects_within(cat, bound);
    auto s_objects = sub.objects_up_to(bound);
    auto s_targets = sub.objects_up_to(bound + 1);
    // A failure is decisive when every possible witness codomain was tried:
    // the parent is finite, or the subcategory is an explicit finite list
    // fully inside the target window.
    bool targets_complete = finite || (!sub.full && s_targets.size() == sub.objects.size());
    json witnesses = json::object();

    auto fails = [&](json counterexample) {
        json detail{{"counterexample", std::move(counterexample)}};
        return make_verdict(targets_complete ? status::fails : status::unknown_within_bound,
                            targets_complete, static_cast<std::size_t>(bound), detail);
    };

    // (C)
    for (const auto& x : universe) {
        std::optional<arrow> witness;
        for (const auto& t : s_targets) {
            const auto& h = cat.hom(x, t);
            if (!h.empty()) {
                witness = h.front();
                break;
            }
        }
        if (!witness) return fails(json{{"condition", "cofinal"}, {"object", x.id}});
        witnesses[x.id] = arrow_brief(*witness);
    }
    if (mode == subcategory_condition::cofinal) {
        json detail{{"witnesses", std::move(witnesses)}};
        return make_verdict(status::holds, finite, static_cast<std::size_t>(bound), detail);
    }

    if (mode == subcategory_condition::dominating) {
        // (D)
        for (const auto& y : s_objects)
            for (const auto& x : universe)
                for (const auto& f : cat.hom(y, x)) {
                    bool extended = false;
                    for (const auto& t : s_targets) {
                        for (const auto& g : cat.hom(x, t))
                            if (sub.contains_arrow(cat.compose(g, f))) {
                                extended = true;
                                break;
                            }
                        if (extended) break;
                    }
                    if (!extended)
                        return fails(json{{"condition", "dominating"},
                                          {"object", y.id},
                                          {"f", arrow_brief(f)}});
                }
        json detail{{"witnesses", std::move(witnesses)}};
        return make_verdict(status::holds, finite, static_cast<std::size_t>(bound), detail);
    }

    // (W)
    for (const auto& y : s_objects) {
        std::optional<arrow> found_j;
        for (const auto& yp : s_targets) {
            for (const auto& j : cat.hom(y, yp)) {
                if (!sub.contains_arrow(j)) continue;
                bool j_works = true;
                for (const auto& x : universe) {
                    for (const auto& f : cat.hom(yp, x)) {
                        arrow fj = cat.compose(f, j);
                        bool extended = false;
                        for (const auto& t : s_targets) {
                            for (const auto& g : cat.hom(x, t))
                                if (sub.contains_arrow(cat.compose(g, fj))) {
                                    extended = true;
                                    break;
                                }
                            if (extended) break;
                        }
                        if (!extended) {
                            j_works = false;
                            break;
                        }
                    }
                    if (!j_works) break;
                }
                if (j_works) {
                    found_j = j;
                    break;
                }
            }
            if (found_j) break;
        }
        if (!found_j) return fails(json{{"condition", "weakly_dominating"}, {"object", y.id}});
        witnesses[y.id] = arrow_brief(*found_j);
    }
    json detail{{"witnesses", std::move(witnesses)}};
    return make_verdict(status::holds, finite, static_cast<std::size_t>(bound), detail);
}

} // namespace fraisse
