#include "wormcr/cli.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "wormcr/catalog.hpp"
#include "wormcr/errors.hpp"
#include "wormcr/geometry.hpp"
#include "wormcr/io.hpp"
#include "wormcr/segre.hpp"
#include "wormcr/verify.hpp"

namespace wormcr {

const std::vector<DispatchEntry>& dispatch_table() {
    static const std::vector<DispatchEntry> table = {
        {"classify", {"classify", "rho", "levi_form", "eta", "project"}},
        {"sample", {"sample_boundary", "rho", "levi_form"}},
        {"levi", {"levi_form", "rho", "sample_boundary"}},
        {"verify-map",
         {"verify_map_preserves", "eval", "compose_rotation", "invert_rotation", "bounded_rotation_only_evidence"}},
        {"verify-eq1", {"verify_eq1_complexified", "verify_tangency_system", "rho_complexified"}},
        {"verify-isotropy", {"jet_at_base", "check_isotropy_conditions"}},
        {"monodromy", {"monodromy_test", "monodromy_shift", "eval"}},
        {"segre", {"segre1", "segre2", "segre2_rank", "desing_forward", "desing_phi", "rho_complexified", "power_ia"}},
        {"sphericity", {"sphericity_map", "heisenberg_residual"}},
        {"rank", {"identity_component_rank", "jet_at_base"}},
        {"connectivity", {"connectivity_probe", "sample_boundary"}},
        {"report",
         {"verify_map_preserves", "monodromy_test", "identity_component_rank", "check_isotropy_conditions",
          "bounded_rotation_only_evidence", "connectivity_probe", "sphericity_map", "compose_rotation",
          "invert_rotation"}},
    };
    return table;
}

namespace {

class UsageError : public Error {
public:
    using Error::Error;
};

struct Args {
    std::string config_path;
    std::string out_path;
    std::string format = "json";
    std::string variant = "bounded";
    double mu = 2.0;
    std::uint64_t seed = 1;
    std::size_t samples = 1000;
    double tol = 0.0;
    unsigned threads = 0;

    std::string family;
    std::string family_json;
    double theta = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double lambda = 1.0;
    std::vector<double> params;
    std::string formula = "corrected";
    std::optional<double> compose;
    bool invert = false;

    double zeta_re = 0.0, zeta_im = 0.0;
    double z_re = 1.0, z_im = 0.0;
    std::int64_t branch = 0;
    double w_re = 2.0, w_im = 0.0;
    double xi_re = 0.0, xi_im = 0.0;

    std::string region = "non-annulus";
    std::optional<double> window_radius;
    bool audit = false;
    std::vector<double> exclusion_alphas;
    bool system = false;
    std::string mode = "corrected-iv";
    std::vector<std::int64_t> n_list{1};
    bool sweep = false;
    std::vector<double> desing_u;
    std::string desing_form = "corrected";
    std::string model = "im";
    double h = 1e-4;
    double sv_tol = 1e-6;
    std::optional<double> eps;
    std::optional<std::size_t> expect;
};

struct Context {
    Args args;
    CLI::App* sub = nullptr;
    RunConfig config;

    bool given(const std::string& flag) const { return sub->count(flag) > 0; }

    double tol_or(double fallback) const { return given("--tol") ? args.tol : fallback; }
    WormSpec worm() const { return make_worm_spec(config.worm); }
    std::size_t samples() const { return config.sampling.count; }
    std::uint64_t seed() const { return config.sampling.seed; }
};

void add_common(CLI::App* s, Args& a) {
    s->add_option("--config", a.config_path, "JSON run configuration");
    s->add_option("--out", a.out_path, "write the report to this path instead of stdout");
    s->add_option("--format", a.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("--variant", a.variant, "bounded or unbounded")->check(CLI::IsMember({"bounded", "unbounded"}));
    s->add_option("--mu", a.mu, "half-length of the flat stretch of the bump");
    s->add_option("--seed", a.seed, "sampling seed");
    s->add_option("--samples", a.samples, "number of samples");
    s->add_option("--tol", a.tol, "pass threshold");
    s->add_option("--threads", a.threads, "worker threads (0: WORMCR_THREADS or 1)");
}

void add_family(CLI::App* s, Args& a) {
    s->add_option("--family", a.family, "identity, rotation, h1-h5, perturbed");
    s->add_option("--family-json", a.family_json, "{\"tag\": ..., \"params\": [...]}");
    s->add_option("--theta", a.theta, "rotation angle");
    s->add_option("--alpha", a.alpha, "h5 alpha");
    s->add_option("--beta", a.beta, "h5 beta");
    s->add_option("--gamma", a.gamma, "h5 gamma");
    s->add_option("--lambda", a.lambda, "perturbed w factor");
    s->add_option("--params", a.params, "comma-separated parameters in storage order")->delimiter(',');
    s->add_option("--formula", a.formula, "corrected or printed")->check(CLI::IsMember({"corrected", "printed"}));
}

void add_point(CLI::App* s, Args& a) {
    s->add_option("--zeta-re", a.zeta_re, "Re zeta, zeta = log z");
    s->add_option("--zeta-im", a.zeta_im, "Im zeta");
    s->add_option("--z-re", a.z_re, "Re z");
    s->add_option("--z-im", a.z_im, "Im z");
    s->add_option("--branch", a.branch, "branch k of log z");
    s->add_option("--w-re", a.w_re, "Re w");
    s->add_option("--w-im", a.w_im, "Im w");
}

MapFamily make_family(const Context& c) {
    const Args& a = c.args;
    if (!a.family_json.empty()) {
        if (!a.family.empty()) {
            throw UsageError("--family and --family-json are exclusive");
        }
        return map_family_from_json(Json::parse(a.family_json));
    }
    if (a.family.empty()) {
        throw UsageError("--family is required");
    }
    const auto tag = parse_map_tag(a.family);
    if (!tag) {
        throw UsageError("unknown family: " + a.family);
    }
    const Formula formula = *parse_formula(a.formula);
    if (c.given("--params")) {
        return MapFamily(*tag, a.params, formula);
    }
    switch (*tag) {
        case MapTag::Identity: return MapFamily::identity();
        case MapTag::Rotation: {
            Rotation r = make_rotation(a.theta);
            if (a.compose) {
                r = compose_rotation(r, make_rotation(*a.compose));
            }
            if (a.invert) {
                r = invert_rotation(r);
            }
            return MapFamily::rotation(r.theta);
        }
        case MapTag::H5: return MapFamily::h5(a.alpha, a.beta, a.gamma);
        case MapTag::Perturbed: return MapFamily::perturbed(a.theta, a.lambda);
        case MapTag::Sphericity: return MapFamily::sphericity();
        default:
            throw PreconditionError(to_string(*tag) + " needs --params (" +
                                    std::to_string(parameter_names(*tag).size()) + " values)");
    }
}

CoverPoint make_point(const Context& c) {
    const Args& a = c.args;
    const cplx w{a.w_re, a.w_im};
    const bool by_zeta = c.given("--zeta-re") || c.given("--zeta-im");
    const bool by_z = c.given("--z-re") || c.given("--z-im") || c.given("--branch");
    if (by_zeta && by_z) {
        throw UsageError("give the point either as zeta or as (z, branch), not both");
    }
    if (by_z) {
        return CoverPoint::from_z({a.z_re, a.z_im}, a.branch, w);
    }
    return CoverPoint{{a.zeta_re, a.zeta_im}, w};
}

BoundaryPoint as_boundary_point(const CoverPoint& p) {
    const double x = p.log_abs_z_sq();
    return {p, x, std::arg(p.w() - std::polar(1.0, x))};
}

RegionFilter region_filter(const Context& c) {
    const auto f = parse_region_filter(c.args.region);
    if (!f) {
        throw UsageError("unknown region: " + c.args.region);
    }
    return *f;
}

bool exact_family(const MapFamily& f) {
    return f.tag() == MapTag::Identity || f.tag() == MapTag::Rotation || f.tag() == MapTag::Perturbed;
}

struct Result {
    Json json;
    bool pass = true;
    std::string csv;
};

Result cmd_classify(const Context& c) {
    const WormSpec spec = c.worm();
    const BoundaryPoint bp = as_boundary_point(make_point(c));
    const StratumLabel label = classify(spec, bp, c.tol_or(1e-7));
    const LeviValue levi = levi_form(spec, bp);
    Json j;
    j["point"] = point_to_json(bp.point);
    j["x"] = bp.x;
    j["eta"] = spec.eta_at(bp.x);
    j["rho"] = rho(spec, bp);
    j["region"] = to_string(label.region);
    j["levi"] = to_string(label.levi);
    j["levi_normalized"] = levi.normalized;
    return {j, true, {}};
}

std::vector<BoundaryPoint> sample_points(const Context& c, const WormSpec& spec) {
    SamplingWindow window;
    if (c.args.window_radius) {
        window = SamplingWindow::near_base(*c.args.window_radius);
    }
    return sample_boundary(spec, region_filter(c), c.samples(), c.seed(), window);
}

Json points_json(const WormSpec& spec, const std::vector<BoundaryPoint>& pts) {
    Json arr = Json::array();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        Json e = point_to_json(pts[i].point);
        e["i"] = i;
        e["x"] = pts[i].x;
        e["theta"] = pts[i].theta;
        e["rho_residual"] = rho(spec, pts[i]);
        arr.push_back(std::move(e));
    }
    return arr;
}

Result cmd_sample(const Context& c) {
    const WormSpec spec = c.worm();
    const auto pts = sample_points(c, spec);
    Result r;
    if (c.config.output.format == "csv") {
        std::ostringstream s;
        write_boundary_csv(s, spec, pts);
        r.csv = s.str();
    } else {
        r.json["region"] = to_string(region_filter(c));
        r.json["seed"] = c.seed();
        r.json["points"] = points_json(spec, pts);
    }
    return r;
}

Result cmd_levi(const Context& c) {
    const WormSpec spec = c.worm();
    Json j;
    if (c.given("--region")) {
        const auto pts = sample_points(c, spec);
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& p : pts) {
            const double v = levi_form(spec, p).normalized;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        j["region"] = to_string(region_filter(c));
        j["samples"] = pts.size();
        j["seed"] = c.seed();
        j["min_normalized"] = lo;
        j["max_normalized"] = hi;
        return {j, true, {}};
    }
    const BoundaryPoint bp = as_boundary_point(make_point(c));
    const LeviValue v = levi_form(spec, bp);
    const RhoDerivatives d = rho_derivatives(spec, bp.point);
    j["point"] = point_to_json(bp.point);
    j["rho"] = rho(spec, bp);
    j["raw"] = v.raw;
    j["normalized"] = v.normalized;
    j["rho_z"] = complex_to_json(d.rho_z);
    j["rho_w"] = complex_to_json(d.rho_w);
    return {j, true, {}};
}

SweepOptions sweep_options(const Context& c) {
    SweepOptions o;
    o.chart = c.config.chart;
    o.threads = c.args.threads;
    o.region = region_filter(c);
    if (c.args.window_radius) {
        o.window = SamplingWindow::near_base(*c.args.window_radius);
    }
    return o;
}

Result cmd_verify_map(const Context& c) {
    if (!c.args.exclusion_alphas.empty()) {
        const auto r = bounded_rotation_only_evidence(c.args.exclusion_alphas, c.samples(), c.worm(), c.seed());
        return {to_json(r), r.pass, {}};
    }
    const MapFamily family = make_family(c);
    if (c.args.audit) {
        const auto a = audit_formula(family, c.samples(), c.seed(), c.tol_or(1e-9));
        return {to_json(a), a.verdict == AuditVerdict::Verified || a.verdict == AuditVerdict::ErratumCorrected, {}};
    }
    const double tol = c.tol_or(exact_family(family) ? 1e-12 : 1e-9);
    const auto r = verify_map_preserves(family, c.worm(), c.samples(), c.seed(), tol, sweep_options(c));
    Json j = to_json(r);
    j["family"] = to_json(family);
    return {j, r.pass, {}};
}

Result cmd_verify_eq1(const Context& c) {
    const MapFamily family = make_family(c);
    const auto r = c.args.system
                       ? verify_tangency_system(family, c.samples(), c.seed(), c.tol_or(1e-9), c.config.chart)
                       : verify_eq1_complexified(family, c.samples(), c.seed(), c.tol_or(1e-11), c.config.chart);
    Json j = to_json(r);
    j["family"] = to_json(family);
    return {j, r.pass, {}};
}

Result cmd_verify_isotropy(const Context& c) {
    const MapFamily family = make_family(c);
    const IsotropyMode mode = c.args.mode == "literal" ? IsotropyMode::LiteralPaper : IsotropyMode::CorrectedIV;
    JetOptions jo;
    jo.chart = c.config.chart;
    const JetAtBase jet = jet_at_base(family, jo);
    const IsotropyVerdict v = check_isotropy_conditions(jet, mode, c.tol_or(1e-7));
    Json j;
    j["family"] = to_json(family);
    j["jet"] = to_json(jet);
    j["verdict"] = to_json(v);
    return {j, v.all_pass(), {}};
}

Result cmd_monodromy(const Context& c) {
    const MapFamily family = make_family(c);
    const CoverPoint base = make_point(c);
    const double tol = c.tol_or(family.is_germ() ? 1e-9 : 1e-12);
    const auto r = monodromy_test(family, base, c.args.n_list, tol);
    Json j = to_json(r);
    j["family"] = to_json(family);
    j["base"] = point_to_json(base);
    Json images = Json::array();
    for (std::int64_t n : c.args.n_list) {
        const CoverPoint shifted = monodromy_shift(base, n);
        const auto [f, g] = monodromy_image(family, base, n);
        Json e;
        e["n"] = n;
        e["zeta"] = complex_to_json(shifted.zeta());
        e["f"] = complex_to_json(f);
        e["g"] = complex_to_json(g);
        images.push_back(std::move(e));
    }
    j["images"] = std::move(images);
    return {j, r.pass, {}};
}

Result cmd_segre(const Context& c) {
    const Args& a = c.args;
    const DesingForm form = a.desing_form == "printed" ? DesingForm::Printed : DesingForm::Corrected;
    if (a.sweep) {
        const auto r = verify_segre2_complexified(c.samples(), c.seed(), c.tol_or(1e-11));
        return {to_json(r), r.pass, {}};
    }
    if (!a.desing_u.empty()) {
        const auto r = verify_desing_roundtrip(a.desing_u, std::max<std::size_t>(c.samples() / 10, 1), c.seed(),
                                               c.tol_or(10.0), form);
        return {to_json(r), r.pass, {}};
    }
    const cplx zeta = make_point(c).zeta();
    const cplx xi{a.xi_re, a.xi_im};
    const cplx w0 = segre2(zeta, xi);
    const cplx tau = segre2_partner_tau(xi);
    Json j;
    j["zeta"] = complex_to_json(zeta);
    j["xi"] = complex_to_json(xi);
    j["z_pow_i"] = complex_to_json(power_ia(zeta, 1.0));
    j["segre1"] = complex_to_json(segre1(zeta));
    j["segre2"] = complex_to_json(w0);
    j["tau"] = complex_to_json(tau);
    j["complexified_residual"] = std::abs(rho_complexified({zeta, w0, xi, tau}));
    j["rank"] = segre2_rank(zeta, xi);
    try {
        const cplx t = desing_forward(zeta, w0, form);
        j["t"] = complex_to_json(t);
        j["phi"] = complex_to_json(desing_phi(zeta, t, form));
    } catch (const DesingularizationCenter&) {
        j["t"] = nullptr;
    }
    return {j, true, {}};
}

HeisenbergModel heisenberg_model(const Context& c) {
    return c.args.model == "re" ? HeisenbergModel::RealPart : HeisenbergModel::ImaginaryPart;
}

Result cmd_sphericity(const Context& c) {
    if (c.args.sweep) {
        const auto r = verify_sphericity(c.samples(), c.seed(), c.tol_or(1e-10), heisenberg_model(c));
        return {to_json(r), r.pass, {}};
    }
    const CoverPoint p = make_point(c);
    const auto q = sphericity_map(p);
    const double res = heisenberg_residual(q, heisenberg_model(c));
    Json j;
    j["point"] = point_to_json(p);
    j["F1"] = complex_to_json(q.first);
    j["F2"] = complex_to_json(q.second);
    j["residual"] = res;
    const double tol = c.tol_or(1e-10);
    j["tol"] = tol;
    return {j, std::abs(res) <= tol, {}};
}

Result cmd_rank(const Context& c) {
    const RankResult r = identity_component_rank(c.args.h, c.args.sv_tol);
    Json j = to_json(r);
    j["h"] = c.args.h;
    j["expected_rank"] = 5;
    return {j, r.rank == 5, {}};
}

Result cmd_connectivity(const Context& c) {
    const WormSpec spec = c.worm();
    const auto pts = sample_points(c, spec);
    const double eps = c.args.eps.value_or(suggest_connectivity_eps(pts));
    const std::size_t comps = connectivity_probe(pts, eps);
    Json j;
    j["region"] = to_string(region_filter(c));
    j["samples"] = pts.size();
    j["seed"] = c.seed();
    j["eps"] = eps;
    j["components"] = comps;
    bool pass = true;
    if (c.args.expect) {
        j["expected"] = *c.args.expect;
        pass = comps == *c.args.expect;
    }
    return {j, pass, {}};
}

Result cmd_report(const Context& c) {
    const std::size_t n = c.samples();
    const std::uint64_t seed = c.seed();
    RunConfig::Worm worm = c.config.worm;
    worm.variant = Variant::Bounded;
    const WormSpec bounded = make_worm_spec(worm);
    Json checks = Json::array();
    bool all = true;
    auto add = [&](const std::string& name, bool pass, Json detail) {
        Json e;
        e["check"] = name;
        e["pass"] = pass;
        e["detail"] = std::move(detail);
        checks.push_back(std::move(e));
        all = all && pass;
    };

    const Rotation r = compose_rotation(make_rotation(0.7), invert_rotation(make_rotation(0.2)));
    const auto rot = verify_map_preserves(MapFamily::rotation(r.theta), bounded, n, seed, 1e-12);
    add("bounded rotations preserve the boundary", rot.pass, to_json(rot));

    const auto ev = bounded_rotation_only_evidence({0.5, -0.5, 1.0, -1.0}, n, bounded, seed);
    add("bounded worm excludes z-dilations", ev.pass, to_json(ev));

    const CoverPoint base{0.0, 2.0};
    const auto h5bad = monodromy_test(MapFamily::h5(0.2, 0.5, 0.3), base, {1}, 1e-12);
    add("h5 with gamma != 0 is not single-valued", !h5bad.pass && h5bad.max_residual > 1e-3, to_json(h5bad));
    const auto h5ok = monodromy_test(MapFamily::h5(0.2, 0.5, 0.0), base, {1}, 1e-12);
    add("h5 with gamma = 0 is single-valued", h5ok.pass, to_json(h5ok));

    const double e2 = std::exp(2.0 * std::numbers::pi);
    const auto h4 = monodromy_test(MapFamily::h4((e2 + 1.0) / (e2 - 1.0), 0.0), base, {1}, 1e-9);
    const double abs_f = h4.metric("abs_f[1]").value_or(0.0);
    add("h4 elimination value e^{-pi}", std::abs(abs_f - std::exp(-std::numbers::pi)) <= 1e-9, to_json(h4));

    const RankResult rk = identity_component_rank();
    add("identity component has dimension 5", rk.rank == 5 && rk.gap >= 1e3, to_json(rk));

    const IsotropyVerdict iso =
        check_isotropy_conditions(jet_at_base(MapFamily::h4(1.05, 0.02)), IsotropyMode::CorrectedIV, 1e-7);
    add("isotropy conditions hold for h4", iso.all_pass(), to_json(iso));

    const auto core = sample_boundary(bounded, RegionFilter::CoreB, n, seed);
    const std::size_t comps = connectivity_probe(core, suggest_connectivity_eps(core));
    add("core is connected", comps == 1, Json{{"components", comps}});

    const auto sph = verify_sphericity(n, seed, 1e-10);
    add("unbounded boundary maps into the Heisenberg model", sph.pass, to_json(sph));

    Json j;
    j["pass"] = all;
    j["samples"] = n;
    j["seed"] = seed;
    j["checks"] = std::move(checks);
    return {j, all, {}};
}

RunConfig load_config(const Context& c) {
    RunConfig cfg;
    if (!c.args.config_path.empty()) {
        std::ifstream in(c.args.config_path);
        if (!in) {
            throw UsageError("cannot read config file: " + c.args.config_path);
        }
        std::stringstream buf;
        buf << in.rdbuf();
        cfg = parse_run_config(buf.str());
    }
    const Args& a = c.args;
    if (c.given("--variant")) {
        cfg.worm.variant = a.variant == "unbounded" ? Variant::Unbounded : Variant::Bounded;
    }
    if (c.given("--mu")) {
        cfg.worm.mu = a.mu;
        cfg.worm.c.reset();
        cfg.worm.a.reset();
    }
    if (c.given("--samples")) {
        cfg.sampling.count = a.samples;
    }
    if (c.given("--seed")) {
        cfg.sampling.seed = a.seed;
    }
    if (c.given("--format")) {
        cfg.output.format = a.format;
    }
    if (c.given("--out")) {
        cfg.output.path = a.out_path;
    }
    return cfg;
}

using Handler = Result (*)(const Context&);

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Numerical checks for the worm domain and its CR automorphisms", "wormcr"};
    app.require_subcommand(1);
    Args args;

    const std::vector<std::pair<std::string, Handler>> handlers = {
        {"classify", cmd_classify},   {"sample", cmd_sample},
        {"levi", cmd_levi},           {"verify-map", cmd_verify_map},
        {"verify-eq1", cmd_verify_eq1}, {"verify-isotropy", cmd_verify_isotropy},
        {"monodromy", cmd_monodromy}, {"segre", cmd_segre},
        {"sphericity", cmd_sphericity}, {"rank", cmd_rank},
        {"connectivity", cmd_connectivity}, {"report", cmd_report},
    };
    const std::map<std::string, std::string> help = {
        {"classify", "stratum and Levi type of a boundary point"},
        {"sample", "seeded boundary samples (json or csv)"},
        {"levi", "normalized Levi form at a point or over a region"},
        {"verify-map", "check that a map preserves the boundary"},
        {"verify-eq1", "complexified functional equation (--system adds the tangency equation)"},
        {"verify-isotropy", "isotropy conditions on the 2-jet at (1, 2)"},
        {"monodromy", "single-valuedness under log z -> log z + 2 pi i n"},
        {"segre", "Segre maps, rank and desingularization"},
        {"sphericity", "map into the Heisenberg model"},
        {"rank", "dimension of the identity component of the isotropy group"},
        {"connectivity", "connected components of a boundary sample"},
        {"report", "summary of the rotation-only evidence"},
    };

    std::map<CLI::App*, Handler> by_app;
    for (const auto& [name, handler] : handlers) {
        CLI::App* s = app.add_subcommand(name, help.at(name));
        add_common(s, args);
        by_app[s] = handler;
        if (name == "classify" || name == "levi" || name == "monodromy" || name == "segre" || name == "sphericity") {
            add_point(s, args);
        }
        if (name == "sample" || name == "levi" || name == "verify-map" || name == "connectivity") {
            s->add_option("--region", args.region, "non-annulus, core, cap-plus, cap-minus, caps, rim-plus, rim-minus, annulus");
            s->add_option("--window-radius", args.window_radius, "sample only near the base point");
        }
        if (name == "verify-map" || name == "verify-eq1" || name == "verify-isotropy" || name == "monodromy") {
            add_family(s, args);
        }
        if (name == "verify-map") {
            s->add_option("--compose", args.compose, "compose the rotation with this angle");
            s->add_flag("--invert", args.invert, "use the inverse rotation");
            s->add_flag("--audit", args.audit, "run the printed-formula audit");
            s->add_option("--exclusion-alphas", args.exclusion_alphas, "bounded-worm dilation evidence")
                ->delimiter(',');
        }
        if (name == "verify-eq1") {
            s->add_flag("--system", args.system, "also check the tangency equation");
        }
        if (name == "verify-isotropy") {
            s->add_option("--mode", args.mode, "corrected-iv or literal")
                ->check(CLI::IsMember({"corrected-iv", "literal"}));
        }
        if (name == "monodromy") {
            s->add_option("--n", args.n_list, "comma-separated shifts")->delimiter(',');
        }
        if (name == "segre") {
            s->add_option("--xi-re", args.xi_re, "Re xi, xi = log chi");
            s->add_option("--xi-im", args.xi_im, "Im xi");
            s->add_option("--desing-u", args.desing_u, "round-trip check at these u")->delimiter(',');
            s->add_option("--desing-form", args.desing_form, "corrected or printed")
                ->check(CLI::IsMember({"corrected", "printed"}));
        }
        if (name == "segre" || name == "sphericity") {
            s->add_flag("--sweep", args.sweep, "sweep over random samples");
        }
        if (name == "sphericity") {
            s->add_option("--model", args.model, "im (Im q2 = |q1|^2) or re")->check(CLI::IsMember({"im", "re"}));
        }
        if (name == "rank") {
            s->add_option("--step", args.h, "finite-difference step");
            s->add_option("--sv-tol", args.sv_tol, "singular value threshold");
        }
        if (name == "connectivity") {
            s->add_option("--eps", args.eps, "join distance (default: from nearest neighbours)");
            s->add_option("--expect", args.expect, "expected component count; mismatch exits 1");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    Context ctx;
    ctx.args = args;
    ctx.sub = app.get_subcommands().front();
    try {
        ctx.config = load_config(ctx);
        const Result r = by_app.at(ctx.sub)(ctx);
        const std::string text = r.csv.empty() ? r.json.dump(2) + "\n" : r.csv;
        if (r.csv.empty() && ctx.config.output.format == "csv") {
            throw UsageError("csv output is only available for sample");
        }
        if (ctx.config.output.path.empty()) {
            out << text;
        } else {
            std::ofstream f(ctx.config.output.path, std::ios::binary);
            if (!f) {
                throw UsageError("cannot write " + ctx.config.output.path);
            }
            f << text;
        }
        return r.pass ? 0 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace wormcr
