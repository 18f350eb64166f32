#pragma once

#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exsheaf/fixtures.hpp"
#include "exsheaf/io.hpp"

namespace exsheaf::cli {

/// Exit codes: 0 success, 1 violation or failed check, 2 usage or malformed input.
enum Exit : int { ok = 0, violation = 1, usage = 2 };

namespace detail {

using io::Json;

struct Options {
    std::string config;
    bool json = false;
    bool all_branches = false;
    std::string degrees;
    std::vector<std::string> classes;
    std::string a, b, cert, factorization, rule = "absorb", pattern;
    int position = 1, direction = 1;
    bool check_grid = false;
};

inline CurveConfig load_config(const Options& o, const CurveConfig* fallback = nullptr) {
    if (o.config.empty()) {
        require(fallback != nullptr, Errc::invalid_input, "--config is required");
        return *fallback;
    }
    return io::config_from_json(io::load(o.config));
}

inline void table(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.first.size());
    for (const auto& r : rows) out << std::left << std::setw(static_cast<int>(w) + 2) << r.first << r.second << "\n";
}

inline std::string class_text(const CurveConfig& cfg, const DivisorClass& c) {
    std::string s;
    auto term = [&](int k, const std::string& name) {
        if (k == 0) return;
        if (!s.empty()) s += k > 0 ? " + " : " - ";
        else if (k < 0) s += "-";
        if (std::abs(k) != 1) s += std::to_string(std::abs(k));
        s += name;
    };
    term(c.d, "D");
    for (int j = 1; j <= cfg.chain_count(); ++j)
        for (int i = 1; i <= cfg.chain_length(j); ++i)
            term(c.chains[j - 1][i - 1], component_name(cfg, Component::curve(j, i)));
    return s.empty() ? "0" : s;
}

inline std::string support_text(const CurveConfig& cfg, const Support& s) {
    std::string t = "{";
    for (std::size_t i = 0; i < s.size(); ++i) t += (i ? "," : "") + component_name(cfg, s[i]);
    return t + "}";
}

inline int cmd_validate(const Options& o, std::ostream& out) {
    auto cfg = load_config(o);
    auto rep = validate(cfg);
    if (o.json) {
        out << io::to_json(rep).dump() << "\n";
    } else {
        table(out, {{"mode", cfg.mode() == Mode::strict ? "strict" : "relaxed"},
                    {"(-2)-curves", std::to_string(cfg.minus_two_count())},
                    {"result", rep.ok() ? "valid" : "invalid"}});
        for (const auto& v : rep.violations) out << "  violated: " << v << "\n";
    }
    return rep.ok() ? ok : violation;
}

inline int cmd_chi(const Options& o, std::ostream& out) {
    auto cfg = load_config(o);
    require(o.classes.size() == 2, Errc::invalid_input, "chi needs --class twice");
    auto a = io::class_from_json(cfg, io::load(o.classes[0]));
    auto b = io::class_from_json(cfg, io::load(o.classes[1]));
    const int p = pair(cfg, a, b);
    const int x = chi(cfg, a, b);
    if (o.json) out << Json{{"pair", p}, {"chi", x}}.dump() << "\n";
    else table(out, {{"pair", std::to_string(p)}, {"chi", std::to_string(x)}});
    return ok;
}

inline int cmd_hom(const Options& o, std::ostream& out) {
    auto cfg = load_config(o);
    auto a = io::atom_from_json(cfg, io::load(o.a));
    auto b = io::atom_from_json(cfg, io::load(o.b));
    auto d = hom_dims(cfg, a, b);
    if (o.json) {
        out << io::to_json(d).dump() << "\n";
    } else {
        table(out, {{"A", describe(cfg, a)},
                    {"B", describe(cfg, b)},
                    {"h0", to_string(d.h0)},
                    {"h1", to_string(d.h1)},
                    {"h2", to_string(d.h2)},
                    {"chi", std::to_string(d.chi)},
                    {"determinate", d.determinate ? "yes" : "no"}});
    }
    return ok;
}

inline int cmd_classify(const Options& o, std::ostream& out) {
    auto cfg = load_config(o);
    require(o.classes.size() == 1, Errc::invalid_input, "classify needs one --class");
    auto e = io::class_from_json(cfg, io::load(o.classes[0]));
    Json rows = Json::array();
    bool all_zero = true;
    for (int j = 1; j <= cfg.chain_count(); ++j) {
        auto block = chain_block(cfg, e, j);
        if (!block) continue;
        Json row{{"chain", j}, {"lo", block->lo}, {"hi", block->hi}, {"r", block->r}, {"k", block->k}};
        if (block->k == 0) {
            row["error"] = "block not attached to D";
            all_zero = false;
        } else {
            const int f = f_value(block->r, block->k);
            row["f"] = f;
            if (f == 0 && block->r.size() <= 6) {
                auto tag = classify_case(block->r, block->k);
                row["case"] = tag.number;
                row["reversed"] = tag.reversed;
                Json all = Json::array();
                for (const auto& t : matching_cases(block->r, block->k))
                    all.push_back({{"case", t.number}, {"reversed", t.reversed}});
                row["matches"] = all;
            } else {
                all_zero = all_zero && f == 0;
            }
        }
        rows.push_back(row);
    }
    Json j{{"class", io::to_json(e)}, {"exceptional", e.d == 1 && is_numerically_exceptional(cfg, e)}, {"chains", rows}};
    if (o.json) {
        out << j.dump() << "\n";
    } else {
        out << class_text(cfg, e) << "  (exceptional: " << (j["exceptional"].get<bool>() ? "yes" : "no") << ")\n";
        for (const auto& r : rows) {
            out << "  chain " << r["chain"].get<int>() << "  r=" << r["r"].dump() << "  k=" << r["k"].get<int>();
            if (r.contains("f")) out << "  f=" << r["f"].get<int>();
            if (r.contains("case"))
                out << "  case " << r["case"].get<int>() << (r["reversed"].get<bool>() ? " (reversed)" : "");
            if (r.contains("error")) out << "  " << r["error"].get<std::string>();
            out << "\n";
        }
    }
    return all_zero ? ok : violation;
}

inline int cmd_enumerate(const Options& o, std::ostream& out) {
    auto cfg = load_config(o);
    for (const auto& e : enumerate_exceptional_classes(cfg)) {
        if (o.json) out << io::to_json(e).dump() << "\n";
        else out << class_text(cfg, e) << "\n";
    }
    return ok;
}

inline int cmd_catalog(const Options& o, std::ostream& out) {
    const int n = catalog_length(o.pattern);
    auto fallback = make_chains({n}, {0});
    auto cfg = load_config(o, &fallback);
    auto c = catalog(cfg, o.pattern);
    bool all_perfect = true;
    Json j = io::to_json(cfg, c);
    if (o.check_grid) {
        for (std::size_t i = 0; i < c.shapes.size(); ++i) {
            int tried = 0, passed = 0;
            for (const auto& params : degree_grid(c.shapes[i])) {
                ++tried;
                if (perfectness_check(cfg, instantiate(c.shapes[i].shape, params)).perfect) ++passed;
            }
            j["shapes"][i]["grid"] = {{"instances", tried}, {"perfect", passed}};
            all_perfect = all_perfect && tried == passed;
        }
    }
    if (o.json) {
        out << j.dump() << "\n";
    } else {
        out << "pattern " << c.pattern << "\n";
        for (const auto& s : j["shapes"]) {
            out << "  (" << s["label"].get<std::string>() << ") " << s["text"].get<std::string>();
            if (s.contains("grid"))
                out << "  [perfect on grid: " << s["grid"]["perfect"].get<int>() << "/"
                    << s["grid"]["instances"].get<int>() << "]";
            out << "\n";
        }
        if (!c.l_supports.empty()) {
            out << "  L supports:";
            for (const auto& l : j["l_supports"]) out << " " << l.dump();
            out << "\n";
        }
        for (const auto& note : c.notes) out << "  note: " << note << "\n";
    }
    return all_perfect ? ok : violation;
}

inline int cmd_rewrite(const Options& o, std::ostream& out) {
    auto cfg = load_config(o);
    auto f = io::factorization_from_json(cfg, io::load(o.factorization));
    require(o.position >= 1, Errc::invalid_input, "positions are 1-based");
    auto step = rewrite(cfg, f, o.rule, static_cast<std::size_t>(o.position - 1), o.direction);
    const bool same_class = class_of(cfg, step.result) == class_of(cfg, f);
    auto perfect = perfectness_check(cfg, step.result);
    if (o.json) {
        Json trace = Json::array();
        trace.push_back({{"factorization", io::to_json(cfg, f)}});
        trace.push_back({{"rule", step.rule},
                         {"position", o.position},
                         {"direction", step.direction},
                         {"factorization", io::to_json(cfg, step.result)}});
        out << Json{{"trace", trace}, {"class_preserved", same_class}, {"perfectness", io::to_json(perfect)}}.dump()
            << "\n";
    } else {
        out << "  " << describe(cfg, f) << "\n";
        out << "-> " << describe(cfg, step.result) << "   [" << step.rule << " at " << o.position
            << (step.rule == "absorb" ? ", direction " + std::to_string(step.direction) : "") << "]\n";
        table(out, {{"class preserved", same_class ? "yes" : "no"}, {"perfect", perfect.perfect ? "yes" : "no"}});
        for (const auto& d : perfect.diagnostics) out << "  " << d << "\n";
    }
    return same_class ? ok : violation;
}

inline void print_tree(std::ostream& out, const CurveConfig& cfg, const ReductionNode& n, const std::string& indent) {
    for (const auto& [l, c] : n.children) {
        out << indent << "peel " << support_text(cfg, l) << " -> " << class_text(cfg, c->e) << "\n";
        print_tree(out, cfg, *c, indent + "  ");
    }
}

inline int cmd_reduce(const Options& o, std::ostream& out) {
    auto cfg = load_config(o);
    require(o.classes.size() == 1, Errc::invalid_input, "reduce needs one --class");
    auto e = io::class_from_json(cfg, io::load(o.classes[0]));
    auto tree = reduce_class(cfg, e, o.all_branches ? Strategy::all : Strategy::first);
    auto certs = tree.certificates();
    bool all_ok = true;
    for (const auto& c : certs) all_ok = all_ok && verify_certificate(cfg, e, c).ok();
    if (o.json) {
        Json j{{"class", io::to_json(e)}, {"branches", tree.branch_count()}, {"verified", all_ok}};
        if (o.all_branches) j["tree"] = io::to_json(cfg, *tree.root);
        j["certificates"] = Json::array();
        for (const auto& c : certs) j["certificates"].push_back(io::to_json(cfg, c));
        out << j.dump() << "\n";
    } else {
        out << class_text(cfg, e) << "\n";
        print_tree(out, cfg, *tree.root, "  ");
        table(out, {{"branches", std::to_string(tree.branch_count())}, {"verified", all_ok ? "yes" : "no"}});
    }
    return all_ok ? ok : violation;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
    auto cfg = load_config(o);
    require(o.classes.size() == 1, Errc::invalid_input, "verify needs one --class");
    auto e = io::class_from_json(cfg, io::load(o.classes[0]));
    auto cert = io::certificate_from_json(cfg, io::load(o.cert));
    if (!o.degrees.empty()) cert = io::apply_degrees(cfg, cert, io::load(o.degrees));
    auto rep = verify_certificate(cfg, e, cert);
    if (o.json) {
        auto j = io::to_json(rep);
        if (rep.sheaf) j["sheaf"] = io::to_json(cfg, *rep.sheaf);
        out << j.dump() << "\n";
    } else {
        for (const auto& c : rep.checks) {
            out << "  " << std::left << std::setw(11) << to_string(c.status)
                << (c.step ? "step " + std::to_string(c.step) : std::string("all   ")) << "  " << c.name;
            if (!c.detail.empty()) out << "  (" << c.detail << ")";
            out << "\n";
        }
        if (rep.sheaf) out << "  E = " << describe(cfg, *rep.sheaf) << "\n";
        out << (rep.ok() ? "certificate verifies" : "certificate FAILS") << "\n";
    }
    return rep.ok() ? ok : violation;
}

inline int cmd_examples(const Options& o, std::ostream& out) {
    auto results = fixtures::replay();
    bool all = true;
    Json j = Json::array();
    for (const auto& r : results) {
        all = all && r.ok;
        j.push_back({{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
        if (!o.json) out << (r.ok ? "PASS  " : "FAIL  ") << r.name << "  (" << r.detail << ")\n";
    }
    if (o.json) out << Json{{"ok", all}, {"fixtures", j}}.dump() << "\n";
    return all ? ok : violation;
}

}  // namespace detail

/// Runs one command line (args excludes the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    detail::Options o;
    CLI::App app{"Exceptional torsion sheaves on type-A curve configurations", "exsheaf"};
    app.require_subcommand(1);
    app.fallthrough();  // --config and --json may follow the subcommand
    app.option_defaults()->always_capture_default();
    app.add_option("--config", o.config, "configuration JSON (inline or file)");
    app.add_flag("--json", o.json, "machine-readable output");

    auto* validate_cmd = app.add_subcommand("validate", "check the configuration rules");
    auto* chi_cmd = app.add_subcommand("chi", "Euler pairing of two classes");
    chi_cmd->add_option("--class", o.classes, "class JSON (give twice)")->required();
    auto* hom_cmd = app.add_subcommand("hom", "h^i between two atomic sheaves");
    hom_cmd->add_option("--a", o.a, "atom JSON")->required();
    hom_cmd->add_option("--b", o.b, "atom JSON")->required();
    auto* classify_cmd = app.add_subcommand("classify", "f-polynomial and case per chain");
    classify_cmd->add_option("--class", o.classes, "class JSON")->required();
    auto* enumerate_cmd = app.add_subcommand("enumerate", "numerically exceptional classes");
    auto* catalog_cmd = app.add_subcommand("catalog", "perfect-factorization shapes");
    catalog_cmd->add_option("pattern", o.pattern, "12, 123, 12321 or 123321")->required();
    catalog_cmd->add_flag("--check-grid", o.check_grid, "instantiate on the degree grid and test perfectness");
    auto* rewrite_cmd = app.add_subcommand("rewrite", "apply swap or absorb to a factorization");
    rewrite_cmd->add_option("--factorization", o.factorization, "factorization JSON")->required();
    rewrite_cmd->add_option("--rule", o.rule, "swap or absorb")->check(CLI::IsMember({"swap", "absorb"}));
    rewrite_cmd->add_option("--position", o.position, "1-based factor position");
    rewrite_cmd->add_option("--direction", o.direction, "absorb direction")->check(CLI::IsMember({1, 2}));
    auto* reduce_cmd = app.add_subcommand("reduce", "peel to O_D and emit twist certificates");
    reduce_cmd->add_option("--class", o.classes, "class JSON")->required();
    reduce_cmd->add_flag("--all-branches", o.all_branches, "explore every peel option");
    auto* verify_cmd = app.add_subcommand("verify", "check a twist certificate");
    verify_cmd->add_option("--class", o.classes, "class JSON")->required();
    verify_cmd->add_option("--cert", o.cert, "certificate JSON")->required();
    verify_cmd->add_option("--degrees", o.degrees, "degree overlay JSON");
    auto* examples_cmd = app.add_subcommand("examples", "replay the worked examples");

    std::vector<const char*> argv{"exsheaf"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return usage;
    }

    try {
        if (validate_cmd->parsed()) return detail::cmd_validate(o, out);
        if (chi_cmd->parsed()) return detail::cmd_chi(o, out);
        if (hom_cmd->parsed()) return detail::cmd_hom(o, out);
        if (classify_cmd->parsed()) return detail::cmd_classify(o, out);
        if (enumerate_cmd->parsed()) return detail::cmd_enumerate(o, out);
        if (catalog_cmd->parsed()) return detail::cmd_catalog(o, out);
        if (rewrite_cmd->parsed()) return detail::cmd_rewrite(o, out);
        if (reduce_cmd->parsed()) return detail::cmd_reduce(o, out);
        if (verify_cmd->parsed()) return detail::cmd_verify(o, out);
        if (examples_cmd->parsed()) return detail::cmd_examples(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == Errc::invalid_input ? usage : violation;
    }
    return usage;
}

}  // namespace exsheaf::cli
