#include "wormcr/io.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wormcr/bump.hpp"

namespace wormcr {

ConfigError::ConfigError(const std::string& message, int line)
    : Error(line > 0 ? "config line " + std::to_string(line) + ": " + message : "config: " + message), line_(line) {}

Json complex_to_json(cplx v) { return Json::array({v.real(), v.imag()}); }

cplx complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw PreconditionError("complex values are [re, im] arrays");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json to_json(const MapFamily& family) {
    Json j;
    j["tag"] = to_string(family.tag());
    j["params"] = family.params();
    if (family.tag() == MapTag::H1 || family.tag() == MapTag::H2) {
        j["formula"] = to_string(family.formula());
    }
    return j;
}

MapFamily map_family_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("tag") || !j["tag"].is_string()) {
        throw PreconditionError("map family JSON needs a string \"tag\"");
    }
    const auto tag = parse_map_tag(j["tag"].get<std::string>());
    if (!tag) {
        throw PreconditionError("unknown map family tag: " + j["tag"].get<std::string>());
    }
    std::vector<double> params;
    if (j.contains("params")) {
        if (!j["params"].is_array()) {
            throw PreconditionError("\"params\" must be an array of numbers");
        }
        for (const auto& v : j["params"]) {
            if (!v.is_number()) {
                throw PreconditionError("\"params\" must be an array of numbers");
            }
            params.push_back(v.get<double>());
        }
    }
    Formula formula = Formula::Corrected;
    if (j.contains("formula")) {
        const auto f = j["formula"].is_string() ? parse_formula(j["formula"].get<std::string>()) : std::nullopt;
        if (!f) {
            throw PreconditionError("\"formula\" must be \"printed\" or \"corrected\"");
        }
        formula = *f;
    }
    return MapFamily(*tag, std::move(params), formula);
}

Json to_json(const VerificationReport& r) {
    Json j;
    j["op"] = r.op;
    j["pass"] = r.pass;
    j["max_residual"] = r.max_residual;
    j["mean_residual"] = r.mean_residual;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["tol"] = r.tol;
    Json failures = Json::array();
    for (const auto& f : r.failures) {
        Json e;
        e["i"] = f.index;
        e["residual"] = f.residual;
        e["zeta"] = complex_to_json(f.zeta);
        e["w"] = complex_to_json(f.w);
        failures.push_back(std::move(e));
    }
    j["failures"] = std::move(failures);
    j["skipped"] = r.skipped;
    Json metrics = Json::object();
    for (const auto& [k, v] : r.metrics) {
        metrics[k] = v;
    }
    j["metrics"] = std::move(metrics);
    return j;
}

Json to_json(const JetAtBase& jet) {
    Json j;
    const auto entries = jet.entries();
    for (std::size_t i = 0; i < entries.size(); ++i) {
        j[JetAtBase::entry_names()[i]] = complex_to_json(entries[i]);
    }
    j["error_first"] = jet.error_first;
    j["error_second"] = jet.error_second;
    j["holomorphy_defect"] = jet.holomorphy_defect;
    return j;
}

Json to_json(const IsotropyVerdict& verdict) {
    Json j;
    j["mode"] = to_string(verdict.mode);
    j["pass"] = verdict.all_pass();
    Json conds = Json::array();
    for (const auto& c : verdict.conditions) {
        Json e;
        e["id"] = c.id;
        e["lhs"] = complex_to_json(c.lhs);
        e["rhs"] = complex_to_json(c.rhs);
        e["residual"] = c.residual;
        e["pass"] = c.pass;
        conds.push_back(std::move(e));
    }
    j["conditions"] = std::move(conds);
    return j;
}

Json to_json(const RankResult& rank) {
    Json j;
    j["rank"] = rank.rank;
    j["singular_values"] = rank.singular_values;
    j["gap"] = rank.gap;
    return j;
}

Json to_json(const FormulaAudit& a) {
    Json j;
    j["family"] = to_json(a.family);
    j["verdict"] = to_string(a.verdict);
    j["printed_base_defect"] = a.printed_base_defect;
    j["printed"] = to_json(a.printed);
    if (a.corrected) {
        j["corrected_base_defect"] = *a.corrected_base_defect;
        j["corrected"] = to_json(*a.corrected);
    }
    j["control"] = to_json(a.control);
    if (!a.printed.failures.empty()) {
        j["minimal_failing_example"] = to_json(a.printed).at("failures").at(0);
    }
    return j;
}

Json point_to_json(const CoverPoint& p) {
    Json j;
    j["zeta"] = complex_to_json(p.zeta());
    j["z"] = complex_to_json(project(p).first);
    j["sheet"] = p.sheet();
    j["w"] = complex_to_json(p.w());
    return j;
}

namespace {

int line_of_offset(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Line of "key" inside "section" (or at top level when section is empty).
int line_of_key(const std::string& text, const std::string& section, const std::string& key) {
    std::size_t from = 0;
    if (!section.empty()) {
        const auto s = text.find('"' + section + '"');
        if (s == std::string::npos) {
            return 0;
        }
        from = s;
        if (key.empty()) {
            return line_of_offset(text, s);
        }
    }
    const auto k = text.find('"' + key + '"', from);
    return k == std::string::npos ? 0 : line_of_offset(text, k);
}

class Reader {
public:
    Reader(const std::string& text, const Json& root) : text_(text), root_(root) {}

    const Json* section(const std::string& name, const std::set<std::string>& allowed) {
        if (!root_.contains(name)) {
            return nullptr;
        }
        const Json& s = root_[name];
        if (!s.is_object()) {
            fail(name, "", "\"" + name + "\" must be an object");
        }
        for (const auto& [k, v] : s.items()) {
            if (!allowed.contains(k)) {
                fail(name, k, "unknown key \"" + name + "." + k + "\"");
            }
        }
        return &s;
    }

    std::optional<double> number(const Json* s, const std::string& sec, const std::string& key) {
        if (s == nullptr || !s->contains(key)) {
            return std::nullopt;
        }
        const Json& v = (*s)[key];
        if (!v.is_number()) {
            fail(sec, key, "\"" + sec + "." + key + "\" must be a number");
        }
        return v.get<double>();
    }

    std::optional<std::uint64_t> unsigned_int(const Json* s, const std::string& sec, const std::string& key) {
        if (s == nullptr || !s->contains(key)) {
            return std::nullopt;
        }
        const Json& v = (*s)[key];
        if (!v.is_number_unsigned()) {
            fail(sec, key, "\"" + sec + "." + key + "\" must be a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    std::optional<std::string> string(const Json* s, const std::string& sec, const std::string& key) {
        if (s == nullptr || !s->contains(key)) {
            return std::nullopt;
        }
        const Json& v = (*s)[key];
        if (!v.is_string()) {
            fail(sec, key, "\"" + sec + "." + key + "\" must be a string");
        }
        return v.get<std::string>();
    }

    std::optional<bool> boolean(const Json* s, const std::string& sec, const std::string& key) {
        if (s == nullptr || !s->contains(key)) {
            return std::nullopt;
        }
        const Json& v = (*s)[key];
        if (!v.is_boolean()) {
            fail(sec, key, "\"" + sec + "." + key + "\" must be true or false");
        }
        return v.get<bool>();
    }

    [[noreturn]] void fail(const std::string& sec, const std::string& key, const std::string& msg) const {
        throw ConfigError(msg, line_of_key(text_, sec, key));
    }

private:
    const std::string& text_;
    const Json& root_;
};

}  // namespace

RunConfig parse_run_config(const std::string& text) {
    Json root;
    try {
        root = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what(), line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
    }
    if (!root.is_object()) {
        throw ConfigError("top level must be an object", 1);
    }
    Reader rd(text, root);
    for (const auto& [k, v] : root.items()) {
        if (k != "worm" && k != "sampling" && k != "output" && k != "chart") {
            rd.fail("", k, "unknown section \"" + k + "\"");
        }
    }

    RunConfig cfg;
    const Json* worm = rd.section("worm", {"variant", "mu", "c", "a", "quad_tol", "residual_tol"});
    if (auto v = rd.string(worm, "worm", "variant")) {
        if (*v == "bounded") {
            cfg.worm.variant = Variant::Bounded;
        } else if (*v == "unbounded") {
            cfg.worm.variant = Variant::Unbounded;
        } else {
            rd.fail("worm", "variant", "\"worm.variant\" must be \"bounded\" or \"unbounded\"");
        }
    }
    auto positive = [&](const Json* s, const char* sec, const char* key, auto& slot) {
        if (auto v = rd.number(s, sec, key)) {
            if (!(*v > 0.0)) {
                rd.fail(sec, key, std::string("\"") + sec + "." + key + "\" must be positive");
            }
            slot = *v;
        }
    };
    positive(worm, "worm", "mu", cfg.worm.mu);
    positive(worm, "worm", "c", cfg.worm.c);
    positive(worm, "worm", "a", cfg.worm.a);
    positive(worm, "worm", "quad_tol", cfg.worm.quad_tol);
    positive(worm, "worm", "residual_tol", cfg.worm.residual_tol);
    if (cfg.worm.a && !(*cfg.worm.a > cfg.worm.mu)) {
        rd.fail("worm", "a", "\"worm.a\" must exceed worm.mu");
    }

    const Json* sampling = rd.section("sampling", {"count", "seed"});
    if (auto v = rd.unsigned_int(sampling, "sampling", "count")) {
        if (*v == 0) {
            rd.fail("sampling", "count", "\"sampling.count\" must be at least 1");
        }
        cfg.sampling.count = static_cast<std::size_t>(*v);
    }
    if (auto v = rd.unsigned_int(sampling, "sampling", "seed")) {
        cfg.sampling.seed = *v;
    }

    const Json* output = rd.section("output", {"format", "path"});
    if (auto v = rd.string(output, "output", "format")) {
        if (*v != "json" && *v != "csv") {
            rd.fail("output", "format", "\"output.format\" must be \"json\" or \"csv\"");
        }
        cfg.output.format = *v;
    }
    if (auto v = rd.string(output, "output", "path")) {
        cfg.output.path = *v;
    }

    const Json* chart = rd.section("chart", {"denominator_margin", "log_disc_radius", "restrict_to_germ_chart"});
    positive(chart, "chart", "denominator_margin", cfg.chart.denominator_margin);
    positive(chart, "chart", "log_disc_radius", cfg.chart.log_disc_radius);
    if (auto v = rd.boolean(chart, "chart", "restrict_to_germ_chart")) {
        cfg.chart.restrict_to_germ_chart = *v;
    }
    return cfg;
}

std::string serialize_run_config(const RunConfig& cfg) {
    Json j;
    j["worm"]["variant"] = cfg.worm.variant == Variant::Bounded ? "bounded" : "unbounded";
    j["worm"]["mu"] = cfg.worm.mu;
    if (cfg.worm.c) {
        j["worm"]["c"] = *cfg.worm.c;
    }
    if (cfg.worm.a) {
        j["worm"]["a"] = *cfg.worm.a;
    }
    j["worm"]["quad_tol"] = cfg.worm.quad_tol;
    j["worm"]["residual_tol"] = cfg.worm.residual_tol;
    j["sampling"]["count"] = cfg.sampling.count;
    j["sampling"]["seed"] = cfg.sampling.seed;
    j["output"]["format"] = cfg.output.format;
    j["output"]["path"] = cfg.output.path;
    j["chart"]["denominator_margin"] = cfg.chart.denominator_margin;
    j["chart"]["log_disc_radius"] = cfg.chart.log_disc_radius;
    j["chart"]["restrict_to_germ_chart"] = cfg.chart.restrict_to_germ_chart;
    return j.dump(2) + "\n";
}

WormSpec make_worm_spec(const RunConfig::Worm& worm) {
    if (worm.variant == Variant::Unbounded) {
        return WormSpec(Variant::Unbounded, BumpFunction::standard(), worm.residual_tol);
    }
    const double c = worm.c.value_or(1.0 / flat_integral(1.0));
    const double a = worm.a.value_or(worm.mu + 2.0);
    return WormSpec(Variant::Bounded, BumpFunction(worm.mu, c, a, worm.quad_tol), worm.residual_tol);
}

}  // namespace wormcr
