#include "catch2/catch_amalgamated.hpp"

#include "fraisse/instances/builtin.hpp"
#include "fraisse/rng.hpp"
#include "fraisse/sequence.hpp"
#include "fraisse/serialize.hpp"

using namespace fraisse;

namespace {

template <class F>
std::string error_code_of(F&& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    return "";
}

json vshape_doc() {
    return json::parse(R"({
        "objects": ["z", "x", "y"],
        "arrows": [
            {"id": "id_z", "dom": "z", "cod": "z"},
            {"id": "id_x", "dom": "x", "cod": "x"},
            {"id": "id_y", "dom": "y", "cod": "y"},
            {"id": "p", "dom": "z", "cod": "x"},
            {"id": "q", "dom": "z", "cod": "y"}
        ],
        "composition": [
            ["id_z", "id_z", "id_z"],
            ["id_x", "id_x", "id_x"],
            ["id_y", "id_y", "id_y"],
            ["p", "id_z", "p"],
            ["id_x", "p", "p"],
            ["q", "id_z", "q"],
            ["id_y", "q", "q"]
        ]
    })");
}

} // namespace

TEST_CASE("graph embeddings and composition") {
    graph_category cat;
    auto k1 = cat.make_object(graph_data{1, {}});
    auto k2 = cat.make_object(graph_data{2, {{0, 1}}});

    SECTION("hom(K_1, K_2) has exactly the two vertex choices") {
        const auto& h = cat.hom(k1, k2);
        REQUIRE(h.size() == 2);
        CHECK(h[0].map() == std::vector<int>{0});
        CHECK(h[1].map() == std::vector<int>{1});
    }

    SECTION("hom enumeration is deterministic") {
        CHECK(cat.hom(k1, k2) == cat.hom(k1, k2));
    }

    SECTION("identity laws") {
        for (const auto& f : cat.hom(k1, k2)) {
            CHECK(cat.compose(cat.identity(k2), f) == f);
            CHECK(cat.compose(f, cat.identity(k1)) == f);
        }
    }

    SECTION("composition of vertex maps is function composition") {
        auto p3 = cat.make_object(graph_data{3, {{0, 1}, {1, 2}}});
        arrow f{k1, k2, std::vector<int>{1}};
        arrow g{k2, p3, std::vector<int>{1, 2}};
        CHECK(cat.compose(g, f).map() == std::vector<int>{2});
        CHECK(error_code_of([&] { (void)cat.compose(f, g); }) == "DomainMismatch");
    }

    SECTION("arrows must be injective and edge-preserving both ways") {
        CHECK(cat.valid_arrow(arrow{k2, k2, std::vector<int>{0, 1}}));
        CHECK(cat.valid_arrow(arrow{k2, k2, std::vector<int>{1, 0}}));
        CHECK_FALSE(cat.valid_arrow(arrow{k2, k2, std::vector<int>{0, 0}}));
        auto e2 = cat.make_object(graph_data{2, {}});
        CHECK_FALSE(cat.valid_arrow(arrow{k2, e2, std::vector<int>{0, 1}}));
        CHECK_FALSE(cat.valid_arrow(arrow{e2, k2, std::vector<int>{0, 1}}));
    }
}

TEST_CASE("graph canonical labeling matches brute-force isomorphism") {
    graph_category cat;
    std::vector<int> counts{0, 1, 2, 4, 11};
    for (int n = 1; n <= 4; ++n) {
        CHECK(static_cast<int>(canonical_graphs_of_size(n).size()) == counts[static_cast<std::size_t>(n)]);
        std::vector<graph_data> all;
        int pairs = n * (n - 1) / 2;
        for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) all.push_back(graph_from_mask(n, mask));
        for (const auto& g : all)
            for (const auto& h : all) {
                bool same_id = cat.make_object(g).id == cat.make_object(h).id;
                CHECK(same_id == graphs_isomorphic_brute(g, h));
            }
    }
}

TEST_CASE("graph object enumeration is fair and canonical") {
    graph_category cat;
    auto objs = cat.enumerate_objects(18);
    REQUIRE(objs.size() == 18);
    // sizes 1, 2, 3, 4 contribute 1 + 2 + 4 + 11 canonical graphs
    CHECK(cat.object_size(objs[0]) == 1);
    CHECK(cat.object_size(objs[2]) == 2);
    CHECK(cat.object_size(objs[6]) == 3);
    CHECK(cat.object_size(objs[7]) == 4);
    std::set<std::string> ids;
    for (const auto& o : objs) ids.insert(o.id);
    CHECK(ids.size() == objs.size());
}

TEST_CASE("linear order embeddings") {
    linorder_category cat;
    auto c2 = cat.make_object(lin_order_data{2});
    auto c3 = cat.make_object(lin_order_data{3});

    SECTION("hom(2-chain, 3-chain) has C(3,2) = 3 maps in lexicographic order") {
        const auto& h = cat.hom(c2, c3);
        REQUIRE(h.size() == 3);
        CHECK(h[0].map() == std::vector<int>{0, 1});
        CHECK(h[1].map() == std::vector<int>{0, 2});
        CHECK(h[2].map() == std::vector<int>{1, 2});
    }

    SECTION("maps must be strictly increasing") {
        CHECK_FALSE(cat.valid_arrow(arrow{c2, c3, std::vector<int>{1, 0}}));
        CHECK_FALSE(cat.valid_arrow(arrow{c2, c3, std::vector<int>{1, 1}}));
        CHECK(cat.valid_arrow(arrow{c2, c3, std::vector<int>{1, 2}}));
    }

    SECTION("identity laws") {
        for (const auto& f : cat.hom(c2, c3)) {
            CHECK(cat.compose(cat.identity(c3), f) == f);
            CHECK(cat.compose(f, cat.identity(c2)) == f);
        }
    }
}

TEST_CASE("surjection instance stores arrows as co-maps") {
    surj_category cat;
    auto s1 = cat.make_object(fin_set_data{1});
    auto s2 = cat.make_object(fin_set_data{2});
    auto s3 = cat.make_object(fin_set_data{3});

    SECTION("hom(2, 3) lists the 6 surjections of a 3-set onto a 2-set") {
        const auto& h = cat.hom(s2, s3);
        REQUIRE(h.size() == 6);
        CHECK(h.front().map() == std::vector<int>{0, 0, 1});
        CHECK(h.back().map() == std::vector<int>{1, 1, 0});
    }

    SECTION("composition reads tables right to left") {
        arrow f{s1, s2, std::vector<int>{0, 0}};
        arrow g{s2, s3, std::vector<int>{0, 1, 1}};
        CHECK(cat.compose(g, f).map() == std::vector<int>{0, 0, 0});
    }

    SECTION("non-surjective tables are rejected") {
        CHECK_FALSE(cat.valid_arrow(arrow{s2, s3, std::vector<int>{0, 0, 0}}));
        CHECK(cat.valid_arrow(arrow{s2, s3, std::vector<int>{1, 0, 1}}));
    }

    SECTION("identity laws") {
        for (const auto& f : cat.hom(s2, s3)) {
            CHECK(cat.compose(cat.identity(s3), f) == f);
            CHECK(cat.compose(f, cat.identity(s2)) == f);
        }
    }
}

TEST_CASE("abstract table categories load and validate") {
    SECTION("the V-shape loads; hom(x, y) is empty") {
        auto cat = load_abstract_category(vshape_doc(), "vshape");
        auto objs = cat->enumerate_objects(10);
        REQUIRE(objs.size() == 3);
        auto z = objs[0], x = objs[1], y = objs[2];
        CHECK(cat->hom(x, y).empty());
        REQUIRE(cat->hom(z, x).size() == 1);
        CHECK(cat->hom(z, x)[0].label() == "p");
        CHECK(cat->identity(x).label() == "id_x");
        CHECK(cat->compose(cat->identity(x), cat->hom(z, x)[0]).label() == "p");
    }

    SECTION("dump reproduces the document") {
        auto doc = vshape_doc();
        CHECK(table_category::load(doc, "vshape")->dump() == doc);
    }

    SECTION("missing identity is a law violation naming the object") {
        auto doc = vshape_doc();
        doc["arrows"].erase(1); // drop id_x
        json table = json::array();
        for (const auto& t : doc["composition"])
            if (t[0] != "id_x" && t[1] != "id_x") table.push_back(t);
        doc["composition"] = table;
        try {
            table_category::load(doc, "broken");
            FAIL("expected LawViolation");
        } catch (const error& e) {
            CHECK(e.code() == "LawViolation");
            CHECK(std::string(e.what()).find("missing identity on x") != std::string::npos);
        }
    }

    SECTION("associativity failure names the triple") {
        json doc = json::parse(R"({
            "objects": ["w"],
            "arrows": [
                {"id": "id", "dom": "w", "cod": "w"},
                {"id": "a", "dom": "w", "cod": "w"},
                {"id": "b", "dom": "w", "cod": "w"}
            ],
            "composition": [
                ["id", "id", "id"], ["id", "a", "a"], ["id", "b", "b"],
                ["a", "id", "a"], ["b", "id", "b"],
                ["a", "a", "b"], ["a", "b", "b"], ["b", "a", "id"], ["b", "b", "a"]
            ]
        })");
        try {
            table_category::load(doc, "broken");
            FAIL("expected LawViolation");
        } catch (const error& e) {
            CHECK(e.code() == "LawViolation");
            CHECK(std::string(e.what()).find("((a, a), a)") != std::string::npos);
        }
    }

    SECTION("missing composition entries are rejected") {
        auto doc = vshape_doc();
        doc["composition"].erase(4); // drop (id_x, p)
        CHECK(error_code_of([&] { table_category::load(doc, "broken"); }) == "LawViolation");
    }

    SECTION("conflicting entries are rejected") {
        auto doc = vshape_doc();
        doc["composition"].push_back(json::array({"id_x", "p", "id_x"}));
        CHECK(error_code_of([&] { table_category::load(doc, "broken"); }) == "LawViolation");
    }
}

TEST_CASE("sequences compose bonds into bonding arrows") {
    auto cat = std::make_shared<graph_category>();
    auto k1 = cat->make_object(graph_data{1, {}});
    auto k2 = cat->make_object(graph_data{2, {{0, 1}}});
    auto p3 = cat->make_object(graph_data{3, {{0, 1}, {1, 2}}});
    sequence s = make_sequence(cat, k1);
    s.append(arrow{k1, k2, std::vector<int>{0}});
    s.append(arrow{k2, p3, std::vector<int>{0, 1}});

    SECTION("bonding composes one-step bonds") {
        CHECK(bonding(s, 3 - 3, 0) == cat->identity(k1));
        CHECK(bonding(s, 1, 1) == cat->identity(k2));
        CHECK(bonding(s, 0, 2) == cat->compose(s.bonds[1], s.bonds[0]));
        CHECK(error_code_of([&] { bonding(s, 0, 3); }) == "OutOfRange");
    }

    SECTION("bonding is functorial on every split") {
        for (std::size_t n = 0; n < s.length(); ++n)
            for (std::size_t m = n; m < s.length(); ++m)
                for (std::size_t k = m; k < s.length(); ++k)
                    CHECK(bonding(s, n, k) ==
                          cat->compose(bonding(s, m, k), bonding(s, n, m)));
    }

    SECTION("constant identity sequence has identity bondings") {
        sequence c = make_sequence(cat, k2);
        for (int i = 0; i < 5; ++i) c.append(cat->identity(k2));
        CHECK(bonding(c, 0, 5) == cat->identity(k2));
    }

    SECTION("appending a bond with the wrong domain fails") {
        CHECK(error_code_of([&] { s.append(arrow{k2, p3, std::vector<int>{0, 1}}); }) ==
              "DomainMismatch");
    }

    SECTION("sequence JSON round-trip") {
        json doc = sequence_to_json(s);
        sequence back = sequence_from_json(doc, cat, cat->payload_kind());
        REQUIRE(back.length() == s.length());
        for (std::size_t i = 0; i < s.length(); ++i) CHECK(back.stage(i) == s.stage(i));
        for (std::size_t i = 0; i + 1 < s.length(); ++i) CHECK(back.bonds[i] == s.bonds[i]);
        CHECK(sequence_to_json(back) == doc);
    }

    SECTION("shift drops a prefix") {
        sequence t = shift(s, 1);
        REQUIRE(t.length() == 2);
        CHECK(t.stage(0) == k2);
        CHECK(t.bonds[0] == s.bonds[1]);
    }

    SECTION("restrict_to composes bonds across gaps") {
        sequence t = restrict_to(s, {0, 2});
        REQUIRE(t.length() == 2);
        CHECK(t.stage(1) == p3);
        CHECK(t.bonds[0] == bonding(s, 0, 2));
    }
}

TEST_CASE("sequence arrows are verified square by square") {
    auto cat = std::make_shared<graph_category>();
    auto k1 = cat->make_object(graph_data{1, {}});
    auto k2 = cat->make_object(graph_data{2, {{0, 1}}});
    sequence u = make_sequence(cat, k1);
    u.append(arrow{k1, k2, std::vector<int>{0}});
    u.append(cat->identity(k2));

    sequence_arrow e;
    e.stage_map = {0, 1, 2};
    for (std::size_t n = 0; n < 3; ++n) e.components.push_back(cat->identity(u.stage(n)));

    SECTION("identity sequence arrow holds") {
        std::string why;
        CHECK(verify_seq_arrow(u, u, e, 2, &why));
    }

    SECTION("one corrupted component fails") {
        e.components[1] = arrow{k2, k2, std::vector<int>{1, 0}};
        std::string why;
        CHECK_FALSE(verify_seq_arrow(u, u, e, 2, &why));
        CHECK(why.find("index 0") != std::string::npos);
    }
}

TEST_CASE("payload and arrow serialization round-trips") {
    graph_category cat;
    auto g = graph_ref(graph_data{3, {{1, 2}, {0, 1}}});

    SECTION("graph payloads normalize their edge lists") {
        json doc = payload_to_json(g.payload);
        CHECK(doc["edges"] == json::parse("[[0,1],[1,2]]"));
        auto back = payload_from_json(doc, "graph");
        CHECK(object_payload_id(back) == g.id);
    }

    SECTION("arrows round-trip through JSON") {
        auto k2 = cat.make_object(graph_data{2, {{0, 1}}});
        arrow f{k2, g, std::vector<int>{1, 2}};
        auto back = arrow_from_json(arrow_to_json(f), cat, "graph");
        CHECK(back == f);
    }

    SECTION("invalid arrows are rejected on load") {
        auto k2 = cat.make_object(graph_data{2, {{0, 1}}});
        arrow f{k2, g, std::vector<int>{0, 2}}; // 0-2 is not an edge of the path
        CHECK(error_code_of([&] { arrow_from_json(arrow_to_json(f), cat, "graph"); }) ==
              "LawViolation");
    }
}

TEST_CASE("deterministic utilities") {
    SECTION("splitmix stream is reproducible") {
        rng a(12345), b(12345);
        for (int i = 0; i < 100; ++i) CHECK(a.below(1000) == b.below(1000));
    }

    SECTION("fnv1a test vectors") {
        CHECK(content_hash("") == "cbf29ce484222325");
        CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    }
}
