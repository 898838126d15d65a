#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fraisse/amalgamation.hpp"
#include "fraisse/instances/graphs.hpp"
#include "fraisse/subcategory.hpp"
#include "fraisse/table_category.hpp"

using namespace fraisse;

namespace {

std::string asset(const std::string& name) { return std::string(FRAISSE_ASSET_DIR) + "/" + name; }

std::vector<object_ref> all_objects(const category& cat) {
    return cat.enumerate_objects(static_cast<std::size_t>(-1));
}

std::vector<arrow> all_arrows(const category& cat) {
    std::vector<arrow> out;
    for (const auto& a : all_objects(cat))
        for (const auto& b : all_objects(cat))
            for (const auto& f : cat.hom(a, b)) out.push_back(f);
    return out;
}

arrow find_arrow(const category& cat, const std::string& label) {
    for (const auto& f : all_arrows(cat))
        if (f.id() == label) return f;
    FAIL("no arrow labeled " + label);
    throw error("Unreachable", "unreachable");
}

object_ref find_object(const category& cat, const std::string& id) {
    for (const auto& o : all_objects(cat))
        if (o.id == id) return o;
    FAIL("no object " + id);
    throw error("Unreachable", "unreachable");
}

subcategory full_on(std::shared_ptr<const category> cat, std::set<std::string> ids) {
    auto name = std::string("on:");
    for (const auto& i : ids) name += i + ",";
    return full_subcategory(std::move(cat), std::move(name),
                            [ids](const object_ref& o) { return ids.count(o.id) > 0; });
}

std::string error_code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    return "";
}

} // namespace

TEST_CASE("right-zero monoid: weak amalgamation without amalgamation") {
    auto cat = table_category::load_file(asset("wap_not_ap.json"));
    auto m = find_object(*cat, "m");

    verdict ap = ap_at(*cat, m, 1);
    CHECK(ap.fails());
    CHECK(ap.complete);
    CHECK(ap.detail["counterexample"]["f"]["arrow"] == "a");
    CHECK(ap.detail["counterexample"]["g"]["arrow"] == "b");

    verdict wa = is_amalgamable(*cat, find_arrow(*cat, "a"), 1);
    CHECK(wa.holds());
    CHECK(wa.complete);

    verdict wap = has_wap(*cat, 1);
    CHECK(wap.holds());
    CHECK(wap.complete);
    CHECK(wap.detail["witnesses"]["m"]["arrow"] == "a");

    verdict cap = has_cap(*cat, 1);
    CHECK(cap.fails());
    CHECK(cap.complete);
    CHECK(cap.detail["failing_object"] == "m");
}

TEST_CASE("v-shape: tip has an amalgamable arrow but no amalgamation property") {
    auto cat = table_category::load_file(asset("vshape.json"));
    auto z = find_object(*cat, "z");

    verdict ap = ap_at(*cat, z, 3);
    CHECK(ap.fails());
    CHECK(ap.complete);
    CHECK(ap.detail["counterexample"]["f"]["arrow"] == "p");
    CHECK(ap.detail["counterexample"]["g"]["arrow"] == "q");

    verdict leg = is_amalgamable(*cat, find_arrow(*cat, "p"), 3);
    CHECK(leg.holds());

    verdict wap = has_wap(*cat, 3);
    CHECK(wap.holds());
    CHECK(wap.detail["witnesses"]["z"]["arrow"] == "p");
    CHECK(wap.detail["witnesses"]["x"]["arrow"] == "id_x");

    verdict cap = has_cap(*cat, 3);
    CHECK(cap.holds());
    CHECK(cap.detail["witnesses"]["z"]["cod"] == "x");
}

TEST_CASE("amalgamation at an object is exactly amalgamability of its identity") {
    for (const auto* name : {"vshape.json", "wap_not_ap.json", "span_completed.json",
                             "parallel_pair.json", "two_components.json"}) {
        auto cat = table_category::load_file(asset(name));
        for (const auto& z : all_objects(*cat)) {
            verdict direct = ap_at(*cat, z, 6);
            verdict via_id = is_amalgamable(*cat, cat->identity(z), 6);
            INFO(name << " at " << z.id);
            CHECK(direct.result == via_id.result);
        }
    }
}

TEST_CASE("amalgamable arrows stay amalgamable under composition on both sides") {
    for (const auto* name : {"vshape.json", "wap_not_ap.json", "span_completed.json",
                             "parallel_pair.json"}) {
        auto cat = table_category::load_file(asset(name));
        auto arrows = all_arrows(*cat);
        for (const auto& e : arrows) {
            if (!is_amalgamable(*cat, e, 6).holds()) continue;
            for (const auto& i : arrows) {
                if (i.dom != e.cod) continue;
                INFO(name << ": " << i.id() << " after " << e.id());
                CHECK(is_amalgamable(*cat, cat->compose(i, e), 6).holds());
            }
            for (const auto& j : arrows) {
                if (j.cod != e.dom) continue;
                INFO(name << ": " << e.id() << " after " << j.id());
                CHECK(is_amalgamable(*cat, cat->compose(e, j), 6).holds());
            }
        }
    }
}

TEST_CASE("every object of the small fixtures has an amalgamable out-arrow") {
    for (const auto* name : {"vshape.json", "wap_not_ap.json", "span_completed.json",
                             "parallel_pair.json", "two_components.json"}) {
        auto cat = table_category::load_file(asset(name));
        verdict wap = has_wap(*cat, 6);
        INFO(name);
        CHECK(wap.holds());
        CHECK(wap.complete);
    }
}

TEST_CASE("graph class: total oracle answers and certificates validate") {
    graph_category g;
    auto k2 = g.make_object(graph_data{2, {{0, 1}}});
    verdict ap = ap_at(g, k2, 3);
    CHECK(ap.holds());
    CHECK(ap.complete);
    CHECK(ap.detail["method"] == "class oracle");

    auto k1 = g.make_object(graph_data{1, {}});
    arrow f{k1, k2, std::vector<int>{0}};
    arrow h{k1, k2, std::vector<int>{1}};
    auto got = amalgamate_pair(g, f, h);
    REQUIRE(got.certificate.has_value());
    CHECK(got.method == "oracle");
    CHECK(got.complete);
    CHECK(certificate_closes(g, f, h, *got.certificate));
    CHECK(g.object_size(got.certificate->left.cod) == 3);
}

TEST_CASE("graph amalgams: oracle construction is the first search candidate") {
    graph_category g;
    std::vector<object_ref> zs, xs;
    for (int n = 1; n <= 2; ++n)
        for (const auto& z : canonical_graphs_of_size(n)) zs.push_back(graph_ref(z));
    for (int n = 1; n <= 3; ++n)
        for (const auto& x : canonical_graphs_of_size(n)) xs.push_back(graph_ref(x));

    std::size_t checked = 0;
    for (const auto& z : zs)
        for (const auto& x : xs)
            for (const auto& f : g.hom(z, x))
                for (const auto& y : xs)
                    for (const auto& h : g.hom(z, y)) {
                        auto oracle = g.oracle_amalgam(f, h);
                        REQUIRE(oracle.has_value());
                        REQUIRE(certificate_closes(g, f, h, *oracle));
                        auto search = enumerate_amalgams(g, f, h, 1);
                        REQUIRE(!search.empty());
                        CHECK(search.front().left == oracle->left);
                        CHECK(search.front().right == oracle->right);
                        ++checked;
                    }
    CHECK(checked > 300);
}

TEST_CASE("explicit subcategories are validated for closure") {
    auto span = table_category::load_file(asset("span_completed.json"));
    auto obj = [&](const char* id) { return find_object(*span, id); };
    auto arr = [&](const char* id) { return find_arrow(*span, id); };

    // a legitimate explicit subcategory passes
    auto ok = explicit_subcategory(span, "leg", {obj("z"), obj("x")},
                                   {arr("id_z"), arr("id_x"), arr("p")});
    CHECK(ok.contains_arrow(arr("p")));
    CHECK(!ok.contains_arrow(arr("q")));
    CHECK(!ok.contains_object(obj("w")));

    CHECK(error_code_of([&] {
              explicit_subcategory(span, "bad", {obj("x")}, {});
          }) == "NotASubcategory");
    CHECK(error_code_of([&] {
              explicit_subcategory(span, "bad", {obj("z")}, {arr("id_z"), arr("p")});
          }) == "NotASubcategory");
    CHECK(error_code_of([&] {
              explicit_subcategory(span, "bad", {obj("z"), obj("x"), obj("w")},
                                   {arr("id_z"), arr("id_x"), arr("id_w"), arr("p"), arr("r")});
          }) == "NotASubcategory");
}

TEST_CASE("subcategory view restricts hom sets and enumeration") {
    auto span = table_category::load_file(asset("span_completed.json"));
    auto sub = full_on(span, {"z", "x", "w"});
    subcategory_view view(sub);

    CHECK(view.finite());
    auto objs = view.enumerate_objects(10);
    REQUIRE(objs.size() == 3);
    CHECK(objs[0].id == "z");
    CHECK(objs[2].id == "w");

    auto zw = view.hom(find_object(*span, "z"), find_object(*span, "w"));
    REQUIRE(zw.size() == 1);
    CHECK(zw.front().id() == "t");

    // arrows through the excluded object y are gone, identities remain
    CHECK(view.valid_arrow(find_arrow(*span, "t")));
    CHECK(!view.valid_arrow(find_arrow(*span, "q")));
    verdict wap = has_wap(view, 6);
    CHECK(wap.holds());
    CHECK(wap.complete);
}

TEST_CASE("cofinal condition: witnesses and counterexamples") {
    auto v = table_category::load_file(asset("vshape.json"));

    verdict good = check_subcategory(full_on(v, {"x", "y"}), subcategory_condition::cofinal, 3);
    CHECK(good.holds());
    CHECK(good.complete);
    CHECK(good.detail["witnesses"]["z"]["arrow"] == "p");

    verdict bad = check_subcategory(full_on(v, {"x"}), subcategory_condition::cofinal, 3);
    CHECK(bad.fails());
    CHECK(bad.complete);
    CHECK(bad.detail["counterexample"]["object"] == "y");
}

TEST_CASE("dominating condition on full subcategories follows from cofinality") {
    auto v = table_category::load_file(asset("vshape.json"));
    auto span = table_category::load_file(asset("span_completed.json"));
    for (auto& [cat, nobj] : {std::pair{v, 3}, std::pair{span, 4}}) {
        auto objs = all_objects(*cat);
        for (unsigned mask = 1; mask < (1u << nobj); ++mask) {
            std::set<std::string> ids;
            for (int i = 0; i < nobj; ++i)
                if (mask & (1u << i)) ids.insert(objs[i].id);
            auto sub = full_on(cat, ids);
            verdict c = check_subcategory(sub, subcategory_condition::cofinal, 6);
            verdict d = check_subcategory(sub, subcategory_condition::dominating, 6);
            verdict w = check_subcategory(sub, subcategory_condition::weakly_dominating, 6);
            INFO(cat->name() << " mask " << mask);
            CHECK(c.result == d.result);
            CHECK(d.result == w.result);
        }
    }
}

TEST_CASE("weak domination can hold where domination fails") {
    auto pp = table_category::load_file(asset("parallel_pair.json"));
    auto sub = explicit_subcategory(pp, "u-side", {find_object(*pp, "z"), find_object(*pp, "x")},
                                    {find_arrow(*pp, "id_z"), find_arrow(*pp, "id_x"),
                                     find_arrow(*pp, "u")});

    verdict c = check_subcategory(sub, subcategory_condition::cofinal, 2);
    CHECK(c.holds());

    verdict d = check_subcategory(sub, subcategory_condition::dominating, 2);
    CHECK(d.fails());
    CHECK(d.complete);
    CHECK(d.detail["counterexample"]["f"]["arrow"] == "v");

    verdict w = check_subcategory(sub, subcategory_condition::weakly_dominating, 2);
    CHECK(w.holds());
    CHECK(w.detail["witnesses"]["z"]["arrow"] == "u");
}

TEST_CASE("consequence of cones: amalgamation spots are dominating exactly when cones exist") {
    for (const auto* name : {"vshape.json", "wap_not_ap.json", "span_completed.json",
                             "parallel_pair.json", "two_components.json"}) {
        auto cat = table_category::load_file(asset(name));
        verdict cap = has_cap(*cat, 6);

        std::set<std::string> ap_objects;
        for (const auto& z : all_objects(*cat))
            if (ap_at(*cat, z, 6).holds()) ap_objects.insert(z.id);
        verdict dom = check_subcategory(full_on(cat, ap_objects),
                                        subcategory_condition::dominating, 6);
        INFO(name);
        CHECK(cap.holds() == dom.holds());
        CHECK(cap.complete);
        CHECK(dom.complete);
    }
}

TEST_CASE("weak amalgamation agrees with every full cofinal subcategory") {
    for (const auto* name : {"vshape.json", "wap_not_ap.json", "parallel_pair.json",
                             "span_completed.json"}) {
        auto cat = table_category::load_file(asset(name));
        auto objs = all_objects(*cat);
        verdict parent_wap = has_wap(*cat, 6);
        int cofinal_count = 0;
        for (unsigned mask = 1; mask < (1u << objs.size()); ++mask) {
            std::set<std::string> ids;
            for (std::size_t i = 0; i < objs.size(); ++i)
                if (mask & (1u << i)) ids.insert(objs[i].id);
            auto sub = full_on(cat, ids);
            if (!check_subcategory(sub, subcategory_condition::cofinal, 6).holds()) continue;
            ++cofinal_count;
            subcategory_view view(sub);
            verdict sub_wap = has_wap(view, 6);
            INFO(name << " mask " << mask);
            CHECK(sub_wap.result == parent_wap.result);
        }
        CHECK(cofinal_count >= 1);
    }
}

TEST_CASE("even-order graphs form a cofinal dominating subclass") {
    auto g = std::make_shared<graph_category>();
    auto even = full_subcategory(g, "even", [g](const object_ref& o) {
        return g->object_size(o) % 2 == 0;
    });

    verdict c = check_subcategory(even, subcategory_condition::cofinal, 3);
    CHECK(c.holds());
    CHECK(!c.complete);

    verdict d = check_subcategory(even, subcategory_condition::dominating, 3);
    CHECK(d.holds());

    verdict w = check_subcategory(even, subcategory_condition::weakly_dominating, 2);
    CHECK(w.holds());

    // edgeless graphs are not cofinal: an edge embeds into no edgeless graph
    auto edgeless = full_subcategory(g, "edgeless", [](const object_ref& o) {
        return std::get<graph_data>(o.payload).edges.empty();
    });
    verdict ec = check_subcategory(edgeless, subcategory_condition::cofinal, 2);
    CHECK(!ec.holds());
    CHECK(ec.result == status::unknown_within_bound);
    CHECK(!ec.complete);
}

TEST_CASE("two components: cones exist but there is no join") {
    auto cat = table_category::load_file(asset("two_components.json"));
    CHECK(has_cap(*cat, 2).holds());
    CHECK(has_wap(*cat, 2).holds());
    auto u = find_object(*cat, "u");
    auto v = find_object(*cat, "v");
    CHECK(!cat->join(u, v).has_value());
}

TEST_CASE("condition names parse") {
    CHECK(parse_condition("cofinal") == subcategory_condition::cofinal);
    CHECK(parse_condition("dominating") == subcategory_condition::dominating);
    CHECK(parse_condition("weakly_dominating") == subcategory_condition::weakly_dominating);
    CHECK(!parse_condition("nonsense").has_value());
}
