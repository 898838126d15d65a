#include <cstdint>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "fraisse/amalgamation.hpp"
#include "fraisse/category.hpp"
#include "fraisse/engine/builder.hpp"
#include "fraisse/engine/colimit.hpp"
#include "fraisse/engine/generic.hpp"
#include "fraisse/engine/iso.hpp"
#include "fraisse/engine/verify.hpp"
#include "fraisse/error.hpp"
#include "fraisse/game/classify.hpp"
#include "fraisse/game/play.hpp"
#include "fraisse/game/spoiler.hpp"
#include "fraisse/game/strategies.hpp"
#include "fraisse/game/ubiquity.hpp"
#include "fraisse/instances/builtin.hpp"
#include "fraisse/instances/graphs.hpp"
#include "fraisse/json.hpp"
#include "fraisse/report.hpp"
#include "fraisse/sequence.hpp"
#include "fraisse/subcategory.hpp"
#include "fraisse/verdict.hpp"

namespace {

using namespace fraisse;

constexpr int exit_usage = 64;

std::shared_ptr<const category> cli_category(std::string spec) {
    if (spec.rfind("builtin:", 0) == 0) spec = spec.substr(8);
    return resolve_category(spec);
}

json load_json_file(const std::string& path, json& inputs) {
    std::string bytes = read_text_file(path);
    inputs.push_back(input_record(path, bytes));
    return json::parse(bytes);
}

sequence load_sequence(const std::string& path, json& inputs,
                       const std::string& category_override = "") {
    json doc = load_json_file(path, inputs);
    std::string cname =
        category_override.empty() ? doc.value("category", std::string{}) : category_override;
    require(!cname.empty(), "UnknownInstance",
            path + " names no category; pass --category explicitly");
    auto cat = cli_category(cname);
    return sequence_from_json(doc, cat, cat->payload_kind());
}

object_ref find_object(const category& cat, const std::string& id, int bound) {
    if (cat.finite())
        for (const auto& o : cat.enumerate_objects(4096))
            if (o.id == id) return o;
    for (const auto& o : objects_within(cat, bound + 2))
        if (o.id == id) return o;
    fail("UnknownInstance", "object " + id + " not found in " + cat.name());
}

subcategory named_subcategory(std::shared_ptr<const category> cat, const std::string& spec) {
    if (spec == "even")
        return full_subcategory(cat, "even", [c = cat](const object_ref& o) {
            return c->object_size(o) % 2 == 0;
        });
    if (spec == "all")
        return full_subcategory(cat, "all", [](const object_ref&) { return true; });
    fail("UnknownInstance", "unknown subcategory: " + spec + " (expected even or all)");
}

int emit_report(const json& report, const std::string& out_path, int code) {
    std::string text = report.dump(2) + "\n";
    if (!out_path.empty()) write_text_file(out_path, text);
    std::cout << text;
    return code;
}

int run_with_errors(const std::string& command, const json& config, const std::string& out,
                    const std::function<int(json& inputs, json& result)>& body) {
    json inputs = json::array();
    json result = json::object();
    try {
        int code = body(inputs, result);
        return emit_report(make_report(command, config, inputs, result), out, code);
    } catch (const error& e) {
        result = json{{"error", json{{"code", e.code()}, {"message", e.what()}}}};
        return emit_report(make_report(command, config, inputs, result), out, 2);
    }
}

branch_checker named_checker(const std::string& spec, std::shared_ptr<const category> cat) {
    if (spec == "always") return [](const sequence&) { return true; };
    if (spec.rfind("extension:", 0) == 0) {
        int n = std::stoi(spec.substr(10));
        require(cat->payload_kind() == "graph", "UnknownInstance",
                "the extension checker applies to graph categories");
        return [n](const sequence& s) {
            const auto& g = std::get<graph_data>(s.stage(s.length() - 1).payload);
            std::vector<int> window(static_cast<std::size_t>(g.n));
            for (int i = 0; i < g.n; ++i) window[static_cast<std::size_t>(i)] = i;
            return extension_axiom_check(g, n, window).holds;
        };
    }
    fail("UnknownInstance", "unknown checker: " + spec + " (expected always or extension:<n>)");
}

struct check_opts {
    std::string category, prop, object, sub = "even", out;
    int bound = 4;
};

struct build_opts {
    std::string category, out, report;
    std::size_t steps = 20;
    std::uint64_t seed = 0;
    int bound = 4;
};

struct verify_opts {
    std::string seq, category, out;
    std::size_t depth = 4;
    int bound = 3;
    int at = -1;
};

struct iso_opts {
    std::string a, b, category, out, report;
    std::size_t depth = 4;
    int bound = 4;
};

struct game_opts {
    std::string category, eve, odd, target, out, report;
    std::size_t rounds = 12;
    std::uint64_t seed = 0;
    std::size_t depth = 4;
    int bound = 3;
};

struct ubiquity_opts {
    std::string category, mode = "exhaustive", checker = "always", out;
    int bound = 2;
    std::size_t depth = 3, samples = 500, cap = 200000;
    std::uint64_t seed = 7;
};

int run_check(const check_opts& o) {
    json config{{"category", o.category}, {"prop", o.prop}, {"bound", o.bound}};
    if (!o.object.empty()) config["object"] = o.object;
    return run_with_errors("check", config, o.out, [&](json&, json& result) {
        auto cat = cli_category(o.category);
        verdict v;
        if (o.prop == "ap") {
            require(!o.object.empty(), "UnknownInstance", "--prop ap needs --object");
            v = ap_at(*cat, find_object(*cat, o.object, o.bound), o.bound);
        } else if (o.prop == "wap") {
            v = has_wap(*cat, o.bound);
        } else if (o.prop == "cap") {
            v = has_cap(*cat, o.bound);
        } else if (auto mode = parse_condition(o.prop)) {
            v = check_subcategory(named_subcategory(cat, o.sub), *mode, o.bound);
        } else {
            fail("UnknownInstance", "unknown property: " + o.prop);
        }
        result = v.to_json();
        return exit_code(v.result);
    });
}

int run_build(const build_opts& o) {
    json config{{"category", o.category}, {"steps", o.steps}, {"seed", o.seed},
                {"bound", o.bound}};
    return run_with_errors("build", config, o.report, [&](json&, json& result) {
        auto cat = cli_category(o.category);
        sequence u = build_weak_fraisse(cat, o.steps, o.seed, o.bound);
        json doc = sequence_to_json(u);
        std::string text = doc.dump(2) + "\n";
        result = json{{"stages", u.length()}, {"sequence_hash", content_hash(text)}};
        if (!o.out.empty()) {
            write_text_file(o.out, text);
            result["out"] = o.out;
        } else {
            result["sequence"] = std::move(doc);
        }
        return 0;
    });
}

int run_verify(const verify_opts& o) {
    json config{{"seq", o.seq}, {"depth", o.depth}, {"bound", o.bound}, {"at", o.at}};
    return run_with_errors("verify", config, o.out, [&](json& inputs, json& result) {
        sequence u = load_sequence(o.seq, inputs, o.category);
        wf_report wf = verify_wf(u, o.depth, o.bound);
        std::size_t at =
            o.at >= 0 ? static_cast<std::size_t>(o.at) : supported_horizon(u, o.bound);
        verdict gen = check_generic(colimit_approx_of(u, at), o.bound);
        result = json{{"wf", wf.to_json()}, {"generic", gen.to_json()}, {"horizon", at}};
        if (wf.overall.fails() || gen.fails()) return 1;
        if (!wf.overall.holds() || !gen.holds()) return 2;
        return 0;
    });
}

int run_iso(const iso_opts& o) {
    json config{{"a", o.a}, {"b", o.b}, {"depth", o.depth}, {"bound", o.bound}};
    return run_with_errors("iso", config, o.report, [&](json& inputs, json& result) {
        sequence a = load_sequence(o.a, inputs, o.category);
        sequence b = load_sequence(o.b, inputs, o.category);
        iso_result r = iso_between(a, b, o.depth, o.bound);
        std::string why;
        bool ok = verify_sequence_iso(r.u, r.v, r.iso, &why);
        require(ok, "LawViolation", "zigzag failed replay: " + why);
        json artifact{{"v_shift", r.v_shift}, {"iso", r.iso.to_json()}, {"replayed", true}};
        result = artifact;
        if (!o.out.empty()) {
            write_text_file(o.out, artifact.dump(2) + "\n");
            result["out"] = o.out;
        }
        return 0;
    });
}

int run_play(const game_opts& o) {
    json config{{"category", o.category}, {"eve", o.eve},   {"odd", o.odd},
                {"rounds", o.rounds},     {"seed", o.seed}, {"depth", o.depth},
                {"bound", o.bound}};
    return run_with_errors("game", config, o.report, [&](json& inputs, json& result) {
        auto cat = cli_category(o.category);

        std::optional<sequence> target;
        if (!o.target.empty()) target = load_sequence(o.target, inputs, o.category);

        std::unique_ptr<strategy> odd;
        if (o.odd.rfind("generic:", 0) == 0) {
            sequence u = load_sequence(o.odd.substr(8), inputs, o.category);
            require(u.cat->name() == cat->name(), "UnknownInstance",
                    "the generic chain belongs to a different category");
            if (!target) target = u;
            odd = std::make_unique<odd_generic_strategy>(std::move(u));
        } else {
            fail("UnknownInstance", "unknown odd strategy: " + o.odd);
        }

        std::unique_ptr<strategy> eve;
        if (o.eve == "random") {
            eve = std::make_unique<random_eve>(cat, o.bound);
        } else if (o.eve == "cliques") {
            eve = std::make_unique<cliques_only_eve>(cat);
        } else if (o.eve == "paths") {
            eve = std::make_unique<paths_only_eve>(cat);
        } else if (o.eve == "spoiler") {
            require(target.has_value(), "UnknownInstance", "--eve spoiler needs --target");
            auto V = colimit_approx_of(*target, default_horizon(*target, o.bound));
            eve = std::make_unique<eve_spoiler>(std::move(V), o.bound);
        } else {
            fail("UnknownInstance", "unknown eve strategy: " + o.eve);
        }

        play p = run_game(cat, *eve, *odd, o.rounds, o.seed);
        require(target.has_value(), "UnknownInstance", "no classification target available");
        verdict v = classify_play(p, *target, o.depth, o.bound);
        json artifact{{"play", p.to_json()}, {"classify", v.to_json()}};
        result = artifact;
        if (!o.out.empty()) {
            write_text_file(o.out, artifact.dump(2) + "\n");
            result["out"] = o.out;
        }
        return exit_code(v.result);
    });
}

int run_ubiquity(const ubiquity_opts& o) {
    json config{{"category", o.category}, {"bound", o.bound},     {"depth", o.depth},
                {"mode", o.mode},         {"samples", o.samples}, {"seed", o.seed},
                {"cap", o.cap},           {"checker", o.checker}};
    return run_with_errors("ubiquity", config, o.out, [&](json&, json& result) {
        require(o.mode == "sampled" || o.mode == "exhaustive", "UnknownInstance",
                "unknown mode: " + o.mode);
        auto cat = cli_category(o.category);
        game_skeleton sk = skeleton_within(*cat, o.bound);
        ubiquity_mode mode =
            o.mode == "sampled" ? sampled_mode(o.samples, o.seed) : exhaustive_mode();
        result = ubiquity_estimate(cat, sk, o.depth, mode, named_checker(o.checker, cat), o.cap);
        return 0;
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak amalgamation and generic-object toolkit"};
    app.require_subcommand(1);
    std::function<int()> runner;

    auto check = std::make_shared<check_opts>();
    {
        auto* cmd = app.add_subcommand("check", "check amalgamation properties of a category");
        cmd->add_option("--category", check->category, "category specifier")->required();
        cmd->add_option("--prop", check->prop,
                        "ap | wap | cap | cofinal | dominating | weakly_dominating")
            ->required();
        cmd->add_option("--object", check->object, "object id for ap");
        cmd->add_option("--sub", check->sub, "subcategory name for the subcategory conditions");
        cmd->add_option("--bound", check->bound, "search bound");
        cmd->add_option("--out", check->out, "report file");
        cmd->callback([&runner, check] { runner = [check] { return run_check(*check); }; });
    }

    auto build = std::make_shared<build_opts>();
    {
        auto* cmd = app.add_subcommand("build", "construct a weak Fraisse chain");
        cmd->add_option("--category", build->category, "category specifier")->required();
        cmd->add_option("--steps", build->steps, "number of appended stages");
        cmd->add_option("--seed", build->seed, "construction seed");
        cmd->add_option("--bound", build->bound, "object size bound for scheduled tasks");
        cmd->add_option("--out", build->out, "sequence artifact file");
        cmd->add_option("--report", build->report, "report file");
        cmd->callback([&runner, build] { runner = [build] { return run_build(*build); }; });
    }

    auto verify = std::make_shared<verify_opts>();
    {
        auto* cmd = app.add_subcommand("verify", "verify a chain and its colimit approximation");
        cmd->add_option("--seq", verify->seq, "sequence artifact")->required();
        cmd->add_option("--category", verify->category, "category override");
        cmd->add_option("--depth", verify->depth, "witness replay depth");
        cmd->add_option("--bound", verify->bound, "search bound");
        cmd->add_option("--at", verify->at,
                        "horizon stage (default: least stage seeing every small object)");
        cmd->add_option("--out", verify->out, "report file");
        cmd->callback([&runner, verify] { runner = [verify] { return run_verify(*verify); }; });
    }

    auto iso = std::make_shared<iso_opts>();
    {
        auto* cmd = app.add_subcommand("iso", "certify two chains equivalent at finite depth");
        cmd->add_option("--a", iso->a, "first sequence artifact")->required();
        cmd->add_option("--b", iso->b, "second sequence artifact")->required();
        cmd->add_option("--category", iso->category, "category override");
        cmd->add_option("--depth", iso->depth, "zigzag depth");
        cmd->add_option("--bound", iso->bound, "search bound");
        cmd->add_option("--out", iso->out, "zigzag artifact file");
        cmd->add_option("--report", iso->report, "report file");
        cmd->callback([&runner, iso] { runner = [iso] { return run_iso(*iso); }; });
    }

    auto game = std::make_shared<game_opts>();
    {
        auto* cmd = app.add_subcommand("game", "play the alternating chain game");
        cmd->add_option("--category", game->category, "category specifier")->required();
        cmd->add_option("--eve", game->eve, "random | cliques | paths | spoiler")->required();
        cmd->add_option("--odd", game->odd, "generic:<seq.json>")->required();
        cmd->add_option("--rounds", game->rounds, "rounds to play");
        cmd->add_option("--seed", game->seed, "game seed");
        cmd->add_option("--depth", game->depth, "classification depth");
        cmd->add_option("--bound", game->bound, "search bound");
        cmd->add_option("--target", game->target, "target sequence for spoiler/classification");
        cmd->add_option("--out", game->out, "transcript artifact file");
        cmd->add_option("--report", game->report, "report file");
        cmd->callback([&runner, game] { runner = [game] { return run_play(*game); }; });
    }

    auto ubiq = std::make_shared<ubiquity_opts>();
    {
        auto* cmd = app.add_subcommand("ubiquity", "estimate how common a branch property is");
        cmd->add_option("--category", ubiq->category, "category specifier")->required();
        cmd->add_option("--bound", ubiq->bound, "skeleton truncation bound");
        cmd->add_option("--depth", ubiq->depth, "branch length");
        cmd->add_option("--mode", ubiq->mode, "exhaustive | sampled");
        cmd->add_option("--samples", ubiq->samples, "sample count for sampled mode");
        cmd->add_option("--seed", ubiq->seed, "sampling seed");
        cmd->add_option("--cap", ubiq->cap, "exhaustive branch cap");
        cmd->add_option("--checker", ubiq->checker, "always | extension:<n>");
        cmd->add_option("--out", ubiq->out, "report file");
        cmd->callback([&runner, ubiq] { runner = [ubiq] { return run_ubiquity(*ubiq); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }
    return runner ? runner() : exit_usage;
}
