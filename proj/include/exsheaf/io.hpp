#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "exsheaf/catalog.hpp"
#include "exsheaf/cohom.hpp"
#include "exsheaf/config.hpp"
#include "exsheaf/factorization.hpp"
#include "exsheaf/lattice.hpp"
#include "exsheaf/reducer.hpp"
#include "exsheaf/rigidity.hpp"

namespace exsheaf::io {

using Json = nlohmann::ordered_json;

/// Parses inline JSON, or reads the file when the text does not start like JSON.
inline Json load(const std::string& text_or_path) {
    std::string text = text_or_path;
    auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || (text[first] != '{' && text[first] != '[')) {
        std::ifstream in(text_or_path);
        require(static_cast<bool>(in), Errc::invalid_input, "cannot read '" + text_or_path + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::invalid_input, std::string("malformed JSON: ") + e.what());
    }
}

namespace detail {
template <class F>
auto guarded(F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const nlohmann::json::exception& e) {
        fail(Errc::invalid_input, std::string("bad document: ") + e.what());
    }
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Config
// ---------------------------------------------------------------------------

inline Json to_json(const ConfigSpec& s) {
    Json j;
    j["mode"] = s.mode == Mode::strict ? "strict" : "relaxed";
    j["chains"] = Json::array();
    for (const auto& c : s.chains) j["chains"].push_back({{"length", c.length}, {"attach", c.attach}});
    if (s.surface_degree) j["degree"] = *s.surface_degree;
    return j;
}

inline ConfigSpec config_spec_from_json(const Json& j) {
    return detail::guarded([&] {
        require(j.is_object(), Errc::invalid_input, "config must be an object");
        ConfigSpec s;
        auto mode = j.value("mode", std::string("strict"));
        require(mode == "strict" || mode == "relaxed", Errc::invalid_input, "mode must be strict or relaxed");
        s.mode = mode == "strict" ? Mode::strict : Mode::relaxed;
        for (const auto& c : j.value("chains", Json::array())) {
            ChainSpec ch;
            ch.length = c.at("length").get<int>();
            if (c.contains("attach")) ch.attach = c.at("attach").get<std::vector<int>>();
            s.chains.push_back(ch);
        }
        if (j.contains("degree")) s.surface_degree = j.at("degree").get<int>();
        return s;
    });
}

inline CurveConfig config_from_json(const Json& j) { return build_config(config_spec_from_json(j)); }

inline Json to_json(const ValidationReport& r) {
    return {{"ok", r.ok()}, {"violations", r.violations}};
}

// ---------------------------------------------------------------------------
// Classes and atoms
// ---------------------------------------------------------------------------

inline Json to_json(const DivisorClass& c) { return {{"d", c.d}, {"chains", c.chains}}; }

inline DivisorClass class_from_json(const CurveConfig& cfg, const Json& j) {
    return detail::guarded([&] {
        DivisorClass c;
        c.d = j.at("d").get<int>();
        c.chains = j.at("chains").get<std::vector<std::vector<int>>>();
        require(fits(cfg, c), Errc::invalid_input, "class does not match the configuration");
        return c;
    });
}

inline Json support_json(const CurveConfig& cfg, const Support& s) {
    Json a = Json::array();
    for (auto c : s) a.push_back(component_name(cfg, c));
    return a;
}

inline Support support_from_json(const CurveConfig& cfg, const Json& j) {
    return detail::guarded([&] {
        Support s;
        for (const auto& x : j) s.push_back(parse_component(cfg, x.get<std::string>()));
        std::sort(s.begin(), s.end());
        return s;
    });
}

template <class Deg>
Json degree_json(const Deg& d) {
    if constexpr (std::is_same_v<Deg, int>) {
        return d;
    } else {
        if (d.is_constant()) return d.constant();
        return d.to_string();
    }
}

template <class Deg>
Json to_json(const CurveConfig& cfg, const BasicAtom<Deg>& a) {
    Json j;
    j["support"] = support_json(cfg, a.support());
    Json thick = Json::object();
    for (const auto& p : a.parts)
        if (p.mult != 1) thick[component_name(cfg, p.comp)] = p.mult;
    if (!thick.empty()) j["thick"] = thick;
    Json deg = Json::object();
    for (const auto& p : a.parts) deg[component_name(cfg, p.comp)] = degree_json(p.deg);
    j["deg"] = deg;
    return j;
}

inline AtomicSheaf atom_from_json(const CurveConfig& cfg, const Json& j) {
    return detail::guarded([&] {
        require(j.is_object(), Errc::invalid_input, "atom must be an object");
        const Support s = support_from_json(cfg, j.at("support"));
        const Json thick = j.value("thick", Json::object());
        const Json deg = j.value("deg", Json::object());
        std::vector<AtomPart<int>> parts;
        for (auto c : s) {
            const auto name = component_name(cfg, c);
            int mult = 1;
            for (const auto& [k, v] : thick.items())
                if (parse_component(cfg, k) == c) mult = v.get<int>();
            std::optional<int> d;
            for (const auto& [k, v] : deg.items())
                if (parse_component(cfg, k) == c) d = v.get<int>();
            require(d.has_value(), Errc::invalid_input, "missing degree for " + name);
            parts.push_back({c, mult, *d});
        }
        for (const auto& [k, v] : thick.items())
            require(std::binary_search(s.begin(), s.end(), parse_component(cfg, k)), Errc::invalid_input,
                    "thickening outside the support: " + k);
        for (const auto& [k, v] : deg.items())
            require(std::binary_search(s.begin(), s.end(), parse_component(cfg, k)), Errc::invalid_input,
                    "degree outside the support: " + k);
        auto a = AtomicSheaf::make(std::move(parts));
        check_atom(cfg, a);
        return a;
    });
}

inline Json to_json(Interval i) {
    if (i.exact()) return i.lo;
    return Json::array({i.lo, i.hi});
}

inline Json to_json(const HomDims& d) {
    return {{"h0", to_json(d.h0)}, {"h1", to_json(d.h1)}, {"h2", to_json(d.h2)}, {"chi", d.chi},
            {"determinate", d.determinate}};
}

// ---------------------------------------------------------------------------
// Factorizations
// ---------------------------------------------------------------------------

template <class Deg>
Json to_json(const CurveConfig& cfg, const BasicFactorization<Deg>& f) {
    Json a = Json::array();
    for (const auto& g : f.factors) {
        Json j = to_json(cfg, g.atom);
        j["mult"] = g.multiplicity;
        if (g.with_previous) j["with_previous"] = true;
        a.push_back(j);
    }
    return a;
}

inline Factorization factorization_from_json(const CurveConfig& cfg, const Json& j) {
    return detail::guarded([&] {
        require(j.is_array(), Errc::invalid_input, "factorization must be an array");
        Factorization f;
        for (const auto& x : j) {
            Factor g{atom_from_json(cfg, x), x.value("mult", 1), x.value("with_previous", false)};
            require(g.multiplicity >= 1, Errc::invalid_input, "multiplicity must be >= 1");
            f.factors.push_back(g);
        }
        return f;
    });
}

inline Json to_json(const PerfectnessReport& r) {
    return {{"perfect", r.perfect}, {"indeterminate", r.indeterminate}, {"diagnostics", r.diagnostics}};
}

inline Json to_json(const CurveConfig& cfg, const Catalog& c) {
    Json j;
    j["pattern"] = c.pattern;
    j["shapes"] = Json::array();
    for (const auto& s : c.shapes)
        j["shapes"].push_back({{"label", s.label},
                               {"factors", to_json(cfg, s.shape)},
                               {"params", s.params},
                               {"decreasing", s.decreasing},
                               {"text", describe(cfg, s.shape)}});
    j["l_supports"] = Json::array();
    for (const auto& l : c.l_supports) {
        Support s;
        for (int p : l) s.push_back(Component::curve(1, p));
        j["l_supports"].push_back(support_json(cfg, s));
    }
    if (!c.notes.empty()) j["notes"] = c.notes;
    return j;
}

// ---------------------------------------------------------------------------
// Certificates and reduction trees
// ---------------------------------------------------------------------------

inline Json to_json(const CurveConfig& cfg, const TwistCertificate& c) {
    Json j;
    j["seed"] = Json::object();
    if (c.seed_degree) j["seed"]["degree"] = *c.seed_degree;
    else j["seed"]["degree"] = "d";
    j["twists"] = Json::array();
    for (const auto& t : c.twists) {
        if (t.sheaf) j["twists"].push_back(to_json(cfg, *t.sheaf));
        else j["twists"].push_back({{"support", support_json(cfg, t.support)}});
    }
    if (c.generated) j["generated"] = true;
    return j;
}

inline TwistCertificate certificate_from_json(const CurveConfig& cfg, const Json& j) {
    return detail::guarded([&] {
        TwistCertificate c;
        if (j.contains("seed")) {
            const auto& d = j.at("seed").at("degree");
            if (d.is_number_integer()) c.seed_degree = d.get<int>();
            else require(d.is_string(), Errc::invalid_input, "seed degree must be an integer or a symbol");
        }
        for (const auto& t : j.at("twists")) {
            TwistStep s;
            s.support = support_from_json(cfg, t.at("support"));
            if (t.contains("deg")) {
                // verification must report bad twists rather than reject them, so the support
                // is taken as given and the sheaf only when it is well formed
                try {
                    s.sheaf = atom_from_json(cfg, t);
                } catch (const Error&) {
                    s.sheaf.reset();
                }
            }
            c.twists.push_back(std::move(s));
        }
        c.generated = j.value("generated", false);
        return c;
    });
}

/// Degree overlay {"seed": d, "twists": [{"C2": 0}, ...]} in certificate order.
inline TwistCertificate apply_degrees(const CurveConfig& cfg, TwistCertificate c, const Json& j) {
    return detail::guarded([&] {
        c.seed_degree = j.at("seed").get<int>();
        const auto& t = j.at("twists");
        require(t.size() == c.twists.size(), Errc::invalid_input, "degree list does not match the twists");
        for (std::size_t i = 0; i < c.twists.size(); ++i) {
            Json atom{{"support", support_json(cfg, c.twists[i].support)}, {"deg", t[i]}};
            c.twists[i].sheaf = atom_from_json(cfg, atom);
        }
        return c;
    });
}

inline Json to_json(const VerificationReport& r) {
    Json j;
    j["ok"] = r.ok();
    j["checks"] = Json::array();
    for (const auto& c : r.checks) {
        Json x{{"step", c.step}, {"check", c.name}, {"status", to_string(c.status)}};
        if (!c.detail.empty()) x["detail"] = c.detail;
        j["checks"].push_back(x);
    }
    return j;
}

inline Json to_json(const CurveConfig& cfg, const ReductionNode& n) {
    Json j{{"class", to_json(n.e)}, {"children", Json::array()}};
    for (const auto& [l, c] : n.children) j["children"].push_back({{"peel", support_json(cfg, l)}, {"node", to_json(cfg, *c)}});
    return j;
}

}  // namespace exsheaf::io
