#include "wormcr/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "germ_formulas.hpp"
#include "wormcr/errors.hpp"

namespace wormcr {

namespace {

constexpr std::array<MapTag, 9> kAllTags = {MapTag::Identity, MapTag::Rotation, MapTag::H1,
                                            MapTag::H2,       MapTag::H3,       MapTag::H4,
                                            MapTag::H5,       MapTag::Sphericity, MapTag::Perturbed};

}  // namespace

std::string to_string(MapTag tag) {
    switch (tag) {
        case MapTag::Identity: return "identity";
        case MapTag::Rotation: return "rotation";
        case MapTag::H1: return "h1";
        case MapTag::H2: return "h2";
        case MapTag::H3: return "h3";
        case MapTag::H4: return "h4";
        case MapTag::H5: return "h5";
        case MapTag::Sphericity: return "sphericity";
        case MapTag::Perturbed: return "perturbed";
    }
    return "?";
}

std::optional<MapTag> parse_map_tag(const std::string& name) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char ch) { return std::tolower(ch); });
    for (MapTag t : kAllTags) {
        if (to_string(t) == lower) {
            return t;
        }
    }
    return std::nullopt;
}

std::string to_string(Formula f) { return f == Formula::Printed ? "printed" : "corrected"; }

std::optional<Formula> parse_formula(const std::string& name) {
    if (name == "printed") {
        return Formula::Printed;
    }
    if (name == "corrected") {
        return Formula::Corrected;
    }
    return std::nullopt;
}

const std::vector<std::string>& parameter_names(MapTag tag) {
    static const std::map<MapTag, std::vector<std::string>> names = {
        {MapTag::Identity, {}},
        {MapTag::Rotation, {"theta"}},
        {MapTag::H1, {"mu", "nu", "xi", "rho", "sigma", "phi", "psi"}},
        {MapTag::H2, {"mu", "xi", "rho", "sigma", "phi", "psi"}},
        {MapTag::H3, {"mu", "nu", "psi"}},
        {MapTag::H4, {"mu", "psi"}},
        {MapTag::H5, {"alpha", "beta", "gamma"}},
        {MapTag::Sphericity, {}},
        {MapTag::Perturbed, {"theta", "lambda"}},
    };
    return names.at(tag);
}

MapFamily::MapFamily(MapTag tag, std::vector<double> params, Formula formula)
    : tag_(tag), params_(std::move(params)), formula_(formula) {
    const auto& names = parameter_names(tag_);
    if (params_.size() != names.size()) {
        throw PreconditionError(to_string(tag_) + " takes " + std::to_string(names.size()) + " parameters, got " +
                                std::to_string(params_.size()));
    }
    for (double v : params_) {
        if (!std::isfinite(v)) {
            throw PreconditionError(to_string(tag_) + ": parameters must be finite");
        }
    }
    const auto& p = params_;
    switch (tag_) {
        case MapTag::H1:
            if (p[1] == 0.0) {
                throw PreconditionError("h1 requires nu != 0");
            }
            if (p[2] == 0.0 && p[3] == 0.0) {
                throw PreconditionError("h1 requires (xi, rho) != (0, 0)");
            }
            break;
        case MapTag::H2:
            if (p[1] == 0.0 && p[2] == 0.0) {
                throw PreconditionError("h2 requires (xi, rho) != (0, 0)");
            }
            if (p[0] == 0.0) {
                throw PreconditionError("h2 requires mu != 0");
            }
            break;
        case MapTag::H3:
            if (p[1] == 0.0) {
                throw PreconditionError("h3 requires nu != 0");
            }
            break;
        case MapTag::Perturbed:
            if (p[1] == 0.0) {
                throw PreconditionError("perturbed requires lambda != 0");
            }
            break;
        default:
            break;
    }
}

MapFamily MapFamily::identity() { return MapFamily(MapTag::Identity); }
MapFamily MapFamily::rotation(double theta) { return MapFamily(MapTag::Rotation, {theta}); }
MapFamily MapFamily::h1(double mu, double nu, double xi, double rho, double sigma, double phi, double psi,
                        Formula formula) {
    return MapFamily(MapTag::H1, {mu, nu, xi, rho, sigma, phi, psi}, formula);
}
MapFamily MapFamily::h2(double mu, double xi, double rho, double sigma, double phi, double psi, Formula formula) {
    return MapFamily(MapTag::H2, {mu, xi, rho, sigma, phi, psi}, formula);
}
MapFamily MapFamily::h3(double mu, double nu, double psi) { return MapFamily(MapTag::H3, {mu, nu, psi}); }
MapFamily MapFamily::h4(double mu, double psi) { return MapFamily(MapTag::H4, {mu, psi}); }
MapFamily MapFamily::h5(double alpha, double beta, double gamma) {
    return MapFamily(MapTag::H5, {alpha, beta, gamma});
}
MapFamily MapFamily::sphericity() { return MapFamily(MapTag::Sphericity); }
MapFamily MapFamily::perturbed(double theta, double lambda) { return MapFamily(MapTag::Perturbed, {theta, lambda}); }

bool MapFamily::is_germ() const {
    return tag_ == MapTag::H1 || tag_ == MapTag::H2 || tag_ == MapTag::H3 || tag_ == MapTag::H4;
}

bool MapFamily::is_isotropy() const { return tag_ == MapTag::Identity || is_germ(); }

namespace {

void check_denominator(cplx num, cplx den, const ChartOptions& chart, const char* what) {
    if (!is_finite(num) || !is_finite(den) || den == cplx{0.0, 0.0} ||
        std::abs(den) < chart.denominator_margin * std::abs(num)) {
        throw OutsideChart(std::string("outside chart: denominator of ") + what + " below margin");
    }
}

struct GermValue {
    cplx e;  // inner argument of f = e^i
    cplx g;
};

GermValue germ_value(const MapFamily& family, const CoverPoint& p, const ChartOptions& chart) {
    const cplx s = std::exp(kI * p.zeta());
    const auto t = detail::germ_terms(family.tag(), family.params(), family.formula(), s, p.w());
    check_denominator(t.nf, t.df, chart, "f");
    check_denominator(t.ng, t.dg, chart, "g");
    return {t.nf / t.df, t.ng / t.dg};
}

CoverPoint exact_image(const MapFamily& family, const CoverPoint& p, const ChartOptions& chart) {
    switch (family.tag()) {
        case MapTag::Identity:
            return p;
        case MapTag::Rotation:
            return p.translated(kI * family.param(0));
        case MapTag::Perturbed:
            return CoverPoint{p.chart_zeta() + kI * family.param(0), family.param(1) * p.w(), p.sheet()};
        case MapTag::H5: {
            const double alpha = family.param(0);
            const double beta = family.param(1);
            const double gamma = family.param(2);
            // e^{2i alpha} z^{2i} w / (z^{2i} - gamma i w), divided through by z^{2i}.
            const cplx num = std::polar(1.0, 2.0 * alpha) * p.w();
            const cplx den = 1.0 - kI * gamma * p.w() * std::exp(-2.0 * kI * p.zeta());
            check_denominator(num, den, chart, "h5");
            return CoverPoint{p.chart_zeta() + cplx{alpha, beta}, num / den, p.sheet()};
        }
        default:
            throw PreconditionError("exact_image: not an exact-lift family");
    }
}

}  // namespace

CoverPoint eval(const MapFamily& family, const CoverPoint& p, const ChartOptions& chart) {
    if (family.tag() == MapTag::Sphericity) {
        throw PreconditionError("sphericity maps into the Heisenberg model, not the worm; use sphericity_map");
    }
    if (!family.is_germ()) {
        return exact_image(family, p, chart);
    }
    const GermValue v = germ_value(family, p, chart);
    if (chart.restrict_to_germ_chart && !(std::abs(v.e - 1.0) < chart.log_disc_radius)) {
        throw OutsideChart("outside chart: inner argument of (.)^i left the principal-branch disc");
    }
    if (v.e == cplx{0.0, 0.0}) {
        throw OutsideChart("outside chart: inner argument of (.)^i vanishes");
    }
    return CoverPoint{kI * std::log(v.e), v.g};
}

std::pair<cplx, cplx> eval_projected(const MapFamily& family, const CoverPoint& p, const ChartOptions& chart) {
    if (family.tag() == MapTag::Sphericity) {
        return sphericity_map(p);
    }
    return project(eval(family, p, chart));
}

PathEvaluator::PathEvaluator(MapFamily family, ChartOptions chart, double max_jump)
    : family_(std::move(family)), chart_(chart), log_(max_jump) {}

CoverPoint PathEvaluator::operator()(const CoverPoint& p) {
    if (!family_.is_germ()) {
        return eval(family_, p, chart_);
    }
    const GermValue v = germ_value(family_, p, chart_);
    if (v.e == cplx{0.0, 0.0}) {
        throw OutsideChart("outside chart: inner argument of (.)^i vanishes");
    }
    return CoverPoint{kI * log_(v.e), v.g};
}

std::pair<cplx, cplx> sphericity_map(const CoverPoint& p, double margin) {
    if (!(std::abs(p.w()) >= margin)) {
        throw DomainError("sphericity_map: |w| below margin");
    }
    const cplx s = std::exp(kI * p.zeta());
    return {kI - kI * s, kI - 2.0 * kI * s + 2.0 * kI * s * s / p.w()};
}

double heisenberg_residual(std::pair<cplx, cplx> q, HeisenbergModel model) {
    const double lhs = model == HeisenbergModel::ImaginaryPart ? q.second.imag() : q.second.real();
    return lhs - std::norm(q.first);
}

const std::array<const char*, 10>& JetAtBase::entry_names() {
    static const std::array<const char*, 10> names = {"f_z",  "f_w",  "g_z",  "g_w",  "f_zz",
                                                      "f_zw", "f_ww", "g_zz", "g_zw", "g_ww"};
    return names;
}

namespace {

struct Estimate {
    cplx value;
    double error;
};

template <typename D>
Estimate richardson(D&& d, double h) {
    const cplx d1 = d(h);
    const cplx d2 = d(0.5 * h);
    const cplx d3 = d(0.25 * h);
    const cplx r1a = (4.0 * d2 - d1) / 3.0;
    const cplx r1b = (4.0 * d3 - d2) / 3.0;
    const cplx r2 = (16.0 * r1b - r1a) / 15.0;
    return {r2, std::abs(r2 - r1b)};
}

std::optional<JetAtBase> exact_jet(const MapFamily& family) {
    JetAtBase j{};
    switch (family.tag()) {
        case MapTag::Identity:
            j.f_z = 1.0;
            j.g_w = 1.0;
            return j;
        case MapTag::Rotation:
            j.f_z = std::polar(1.0, family.param(0));
            j.g_w = 1.0;
            return j;
        case MapTag::Perturbed:
            j.f_z = std::polar(1.0, family.param(0));
            j.g_w = family.param(1);
            return j;
        default:
            return std::nullopt;
    }
}

}  // namespace

JetAtBase jet_at_base(const MapFamily& family, const JetOptions& options) {
    if (auto j = exact_jet(family)) {
        return *j;
    }
    const cplx z0{1.0, 0.0};
    const cplx w0{2.0, 0.0};
    auto F = [&](cplx dz, cplx dw) {
        return eval_projected(family, CoverPoint::from_z(z0 + dz, 0, w0 + dw), options.chart);
    };
    const auto base = F(0.0, 0.0);

    // One finite-difference quotient per entry; `dir` is 1 or i.
    using Pick = cplx (*)(const std::pair<cplx, cplx>&);
    const Pick pick_f = [](const std::pair<cplx, cplx>& v) { return v.first; };
    const Pick pick_g = [](const std::pair<cplx, cplx>& v) { return v.second; };

    auto first_z = [&](Pick pick, cplx dir) {
        return [&, pick, dir](double h) {
            const cplx d = dir * h;
            return (pick(F(d, 0.0)) - pick(F(-d, 0.0))) / (2.0 * d);
        };
    };
    auto first_w = [&](Pick pick, cplx dir) {
        return [&, pick, dir](double h) {
            const cplx d = dir * h;
            return (pick(F(0.0, d)) - pick(F(0.0, -d))) / (2.0 * d);
        };
    };
    auto second_zz = [&](Pick pick, cplx dir) {
        return [&, pick, dir](double h) {
            const cplx d = dir * h;
            return (pick(F(d, 0.0)) - 2.0 * pick(base) + pick(F(-d, 0.0))) / (d * d);
        };
    };
    auto second_ww = [&](Pick pick, cplx dir) {
        return [&, pick, dir](double h) {
            const cplx d = dir * h;
            return (pick(F(0.0, d)) - 2.0 * pick(base) + pick(F(0.0, -d))) / (d * d);
        };
    };
    auto second_zw = [&](Pick pick, cplx dir) {
        return [&, pick, dir](double h) {
            const cplx d = dir * h;
            return (pick(F(d, d)) - pick(F(d, -d)) - pick(F(-d, d)) + pick(F(-d, -d))) / (4.0 * d * d);
        };
    };

    JetAtBase jet{};
    auto fill = [&](cplx& slot, auto make, Pick pick, bool second) {
        const Estimate ex = richardson(make(pick, cplx{1.0, 0.0}), options.step);
        const Estimate ey = richardson(make(pick, kI), options.step);
        slot = ex.value;
        double& err = second ? jet.error_second : jet.error_first;
        err = std::max({err, ex.error, ey.error});
        jet.holomorphy_defect = std::max(jet.holomorphy_defect, std::abs(ex.value - ey.value));
    };
    fill(jet.f_z, first_z, pick_f, false);
    fill(jet.f_w, first_w, pick_f, false);
    fill(jet.g_z, first_z, pick_g, false);
    fill(jet.g_w, first_w, pick_g, false);
    fill(jet.f_zz, second_zz, pick_f, true);
    fill(jet.f_zw, second_zw, pick_f, true);
    fill(jet.f_ww, second_ww, pick_f, true);
    fill(jet.g_zz, second_zz, pick_g, true);
    fill(jet.g_zw, second_zw, pick_g, true);
    fill(jet.g_ww, second_ww, pick_g, true);

    if (jet.error_first > options.max_error_first || jet.error_second > options.max_error_second) {
        throw IllConditioned("ill-conditioned jet: error estimate " +
                             std::to_string(std::max(jet.error_first, jet.error_second)) + " above threshold");
    }
    return jet;
}

Rotation make_rotation(double theta) {
    double t = std::remainder(theta, kTwoPi);
    if (t <= -std::numbers::pi) {
        t += kTwoPi;
    }
    return {t};
}

Rotation compose_rotation(const Rotation& r1, const Rotation& r2) { return make_rotation(r1.theta + r2.theta); }

Rotation invert_rotation(const Rotation& r) { return make_rotation(-r.theta); }

}  // namespace wormcr
