#include "wormcr/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <locale>
#include <sstream>
#include <thread>

#include "wormcr/errors.hpp"
#include "wormcr/random.hpp"

namespace wormcr {

std::optional<double> VerificationReport::metric(const std::string& name) const {
    for (const auto& [k, v] : metrics) {
        if (k == name) {
            return v;
        }
    }
    return std::nullopt;
}

namespace {

struct Outcome {
    bool skipped = false;
    double residual = 0.0;
    cplx zeta;
    cplx w;
};

unsigned resolve_threads(unsigned requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("WORMCR_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) {
            return static_cast<unsigned>(std::min<long>(v, 256));
        }
    }
    return 1;
}

/// Fills out[i] = fn(i).  Each index is computed independently, so the result
/// does not depend on the thread count.
template <typename Fn>
std::vector<Outcome> run_indexed(std::size_t n, unsigned threads, Fn&& fn) {
    std::vector<Outcome> out(n);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = fn(i);
        }
        return out;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) {
                    out[i] = fn(i);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

VerificationReport reduce(std::string op, const std::vector<Outcome>& outcomes, double tol, std::uint64_t seed,
                          std::size_t max_failures) {
    VerificationReport r;
    r.op = std::move(op);
    r.samples = outcomes.size();
    r.tol = tol;
    r.seed = seed;
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const Outcome& o = outcomes[i];
        if (o.skipped) {
            ++r.skipped;
            continue;
        }
        ++used;
        sum += o.residual;
        const bool bad = !(o.residual <= tol);
        r.max_residual = std::max(r.max_residual, std::isfinite(o.residual) ? o.residual : std::numeric_limits<double>::max());
        if (bad && r.failures.size() < std::max<std::size_t>(max_failures, 1)) {
            r.failures.push_back({i, o.residual, o.zeta, o.w});
        }
    }
    if (used == 0) {
        throw EmptyVerification("empty verification: all " + std::to_string(outcomes.size()) +
                                " samples were outside the chart");
    }
    r.mean_residual = sum / static_cast<double>(used);
    r.pass = r.max_residual <= tol && r.failures.empty();
    return r;
}

cplx disc_sample(UniformSource& rng, cplx center, double radius) {
    const double r = radius * std::sqrt(rng.unit());
    const double a = rng.uniform(-std::numbers::pi, std::numbers::pi);
    return center + std::polar(r, a);
}

struct Quad {
    cplx zeta, w, xi, tau;
};

/// Free (zeta, xi, tau) near (0, 0, 2), w from w tau - w/(sc) - tau sc = 0.
std::vector<Quad> constrained_quads(std::size_t n, std::uint64_t seed) {
    UniformSource rng(seed);
    std::vector<Quad> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const cplx zeta = disc_sample(rng, 0.0, 0.1);
        const cplx xi = disc_sample(rng, 0.0, 0.1);
        const cplx tau = disc_sample(rng, 2.0, 0.1);
        const cplx e = std::exp(kI * (zeta + xi));
        out.push_back({zeta, tau * e * e / (tau * e - 1.0), xi, tau});
    }
    return out;
}

/// (xi_f, conj g) with xi_f = conj of the image zeta at the reflected point:
/// the barred functions evaluated at (xi, tau).
std::pair<cplx, cplx> barred(const MapFamily& map, cplx xi, cplx tau, const ChartOptions& chart) {
    const CoverPoint q = eval(map, CoverPoint{std::conj(xi), std::conj(tau)}, chart);
    return {std::conj(q.zeta()), std::conj(q.w())};
}

cplx eq1_value(cplx zeta_f, cplx g, cplx xi_f, cplx gbar) {
    const cplx e = std::exp(kI * (zeta_f + xi_f));
    return g * gbar - g / e - gbar * e;
}

}  // namespace

VerificationReport verify_map_preserves(const MapFamily& map, const WormSpec& source, std::size_t samples,
                                        std::uint64_t seed, double tol, const SweepOptions& options) {
    const SamplingWindow window =
        options.window.value_or(map.is_germ() ? SamplingWindow::near_base(0.25) : SamplingWindow{});
    const auto points = sample_boundary(source, options.region, samples, seed, window);
    const auto outcomes = run_indexed(points.size(), resolve_threads(options.threads), [&](std::size_t i) {
        const CoverPoint& p = points[i].point;
        Outcome o{false, 0.0, p.zeta(), p.w()};
        try {
            o.residual = std::abs(rho(source, eval(map, p, options.chart)));
        } catch (const OutsideChart&) {
            o.skipped = true;
        } catch (const BranchAmbiguity&) {
            o.skipped = true;
        }
        return o;
    });
    return reduce("verify_map_preserves", outcomes, tol, seed, options.max_failures);
}

VerificationReport verify_eq1_complexified(const MapFamily& map, std::size_t samples, std::uint64_t seed, double tol,
                                           const ChartOptions& chart) {
    const auto quads = constrained_quads(samples, seed);
    std::vector<Outcome> outcomes(quads.size());
    for (std::size_t i = 0; i < quads.size(); ++i) {
        const Quad& q = quads[i];
        Outcome& o = outcomes[i];
        o.zeta = q.zeta;
        o.w = q.w;
        try {
            const CoverPoint img = eval(map, CoverPoint{q.zeta, q.w}, chart);
            const auto [xi_f, gbar] = barred(map, q.xi, q.tau, chart);
            o.residual = std::abs(eq1_value(img.zeta(), img.w(), xi_f, gbar));
        } catch (const OutsideChart&) {
            o.skipped = true;
        }
    }
    return reduce("verify_eq1_complexified", outcomes, tol, seed, 20);
}

VerificationReport verify_tangency_system(const MapFamily& map, std::size_t samples, std::uint64_t seed, double tol,
                                          const ChartOptions& chart) {
    const auto quads = constrained_quads(samples, seed);
    std::vector<Outcome> outcomes(quads.size());
    double max_eq1 = 0.0;
    double max_eq2 = 0.0;
    constexpr double h = 1e-3;

    // Richardson-extrapolated central difference of a holomorphic function of
    // one complex variable along the real direction.
    auto derivative = [&](auto&& fn) {
        auto d = [&](double step) { return (fn(step) - fn(-step)) / (2.0 * step); };
        const cplx d1 = d(h);
        const cplx d2 = d(0.5 * h);
        const cplx d3 = d(0.25 * h);
        const cplx r1a = (4.0 * d2 - d1) / 3.0;
        const cplx r1b = (4.0 * d3 - d2) / 3.0;
        return (16.0 * r1b - r1a) / 15.0;
    };

    for (std::size_t i = 0; i < quads.size(); ++i) {
        const Quad& q = quads[i];
        Outcome& o = outcomes[i];
        o.zeta = q.zeta;
        o.w = q.w;
        try {
            const CoverPoint img = eval(map, CoverPoint{q.zeta, q.w}, chart);
            const cplx zeta_f = img.zeta();
            const cplx g = img.w();
            const auto [xi_f, gbar] = barred(map, q.xi, q.tau, chart);
            const cplx eq1 = eq1_value(zeta_f, g, xi_f, gbar);

            const cplx dxf_dxi = derivative([&](double s) { return barred(map, q.xi + s, q.tau, chart).first; });
            const cplx dgb_dxi = derivative([&](double s) { return barred(map, q.xi + s, q.tau, chart).second; });
            const cplx dxf_dtau = derivative([&](double s) { return barred(map, q.xi, q.tau + s, chart).first; });
            const cplx dgb_dtau = derivative([&](double s) { return barred(map, q.xi, q.tau + s, chart).second; });

            // Lbar = rho_tau d/dchi - rho_chi d/dtau with d/dchi = (1/chi) d/dxi.
            const cplx chi = std::exp(q.xi);
            const cplx e = std::exp(kI * (q.zeta + q.xi));
            const cplx rho_tau = q.w - e;
            const cplx rho_chi = kI * q.w / (chi * e) - kI * q.tau * e / chi;
            auto lbar = [&](cplx d_xi, cplx d_tau) { return rho_tau * d_xi / chi - rho_chi * d_tau; };

            // Lbar fbar / fbar = Lbar xi_f since fbar = e^{xi_f}.
            const cplx big = std::exp(kI * (zeta_f + xi_f));
            const cplx eq2 = (g - big) * lbar(dgb_dxi, dgb_dtau) +
                             (kI * g / big - kI * gbar * big) * lbar(dxf_dxi, dxf_dtau);
            max_eq1 = std::max(max_eq1, std::abs(eq1));
            max_eq2 = std::max(max_eq2, std::abs(eq2));
            o.residual = std::max(std::abs(eq1), std::abs(eq2));
        } catch (const OutsideChart&) {
            o.skipped = true;
        }
    }
    VerificationReport r = reduce("verify_tangency_system", outcomes, tol, seed, 20);
    r.metrics.emplace_back("max_eq1", max_eq1);
    r.metrics.emplace_back("max_eq2", max_eq2);
    return r;
}

std::string to_string(IsotropyMode m) { return m == IsotropyMode::LiteralPaper ? "literal" : "corrected-iv"; }

bool IsotropyVerdict::all_pass() const {
    return std::all_of(conditions.begin(), conditions.end(), [](const ConditionRecord& c) { return c.pass; });
}

IsotropyVerdict check_isotropy_conditions(const JetAtBase& jet, IsotropyMode mode, double tol) {
    for (const cplx v : jet.entries()) {
        if (!is_finite(v)) {
            throw PreconditionError("check_isotropy_conditions: jet has non-finite entries");
        }
    }
    if (std::abs(jet.jacobian_determinant()) == 0.0) {
        throw PreconditionError("check_isotropy_conditions: Jacobian determinant vanishes");
    }
    const cplx fz = jet.f_z;
    const cplx fw = jet.f_w;
    const double fz2 = std::norm(fz);
    IsotropyVerdict v{mode, {}};
    auto nonzero = [&](const char* id, cplx value) {
        v.conditions.push_back({id, value, 0.0, std::abs(value), std::abs(value) > tol});
    };
    auto equal = [&](const char* id, cplx lhs, cplx rhs) {
        const double res = std::abs(lhs - rhs);
        v.conditions.push_back({id, lhs, rhs, res, res <= tol});
    };
    nonzero("i", fz);
    nonzero("ii", jet.g_w);
    equal("iii", jet.g_z, 0.0);
    // Realness of g_w is part of the same residual.
    equal("iv", jet.g_w, mode == IsotropyMode::LiteralPaper ? std::norm(fw) : fz2);
    equal("v", jet.g_zz, -4.0 * fz * fz + 4.0 * fz2);
    equal("vi", jet.g_zw, -4.0 * fw * fz + 4.0 * std::conj(fw) * fz + 2.0 * kI * fz2 * (1.0 - fz));
    equal("vii", jet.f_zz,
          8.0 * fz * std::conj(fw) / std::conj(fz) + cplx{1.0, -1.0} * fz * fz - cplx{1.0, -1.0} * fz + 4.0 * fw);
    return v;
}

namespace {

ChartOptions unrestricted_chart() {
    ChartOptions c;
    c.restrict_to_germ_chart = false;
    return c;
}

}  // namespace

std::pair<cplx, cplx> monodromy_image(const MapFamily& map, const CoverPoint& base, std::int64_t n) {
    return eval_projected(map, monodromy_shift(base, n), unrestricted_chart());
}

VerificationReport monodromy_test(const MapFamily& map, const CoverPoint& base, const std::vector<std::int64_t>& n_list,
                                  double tol) {
    if (n_list.empty()) {
        throw PreconditionError("monodromy_test: n_list is empty");
    }
    const auto ref = monodromy_image(map, base, 0);
    std::vector<Outcome> outcomes(n_list.size());
    std::vector<std::pair<std::string, double>> metrics;
    for (std::size_t i = 0; i < n_list.size(); ++i) {
        const std::int64_t n = n_list[i];
        const CoverPoint shifted = monodromy_shift(base, n);
        Outcome& o = outcomes[i];
        o.zeta = shifted.zeta();
        o.w = shifted.w();
        try {
            const auto img = monodromy_image(map, base, n);
            o.residual = std::max(std::abs(img.first - ref.first), std::abs(img.second - ref.second));
            const std::string tag = "[" + std::to_string(n) + "]";
            metrics.emplace_back("re_f" + tag, img.first.real());
            metrics.emplace_back("im_f" + tag, img.first.imag());
            metrics.emplace_back("abs_f" + tag, std::abs(img.first));
            metrics.emplace_back("re_g" + tag, img.second.real());
            metrics.emplace_back("im_g" + tag, img.second.imag());
        } catch (const OutsideChart&) {
            o.skipped = true;
        }
    }
    VerificationReport r = reduce("monodromy_test", outcomes, tol, 0, 20);
    r.metrics = std::move(metrics);
    return r;
}

namespace {

std::vector<double> flatten(const JetAtBase& j) {
    std::vector<double> out;
    for (const cplx v : j.entries()) {
        out.push_back(v.real());
        out.push_back(v.imag());
    }
    return out;
}

void require_isotropy(const FamilyPath& path, double s) {
    const MapFamily f = path.family(s);
    if (!f.is_isotropy()) {
        throw PreconditionError("path " + path.name + ": " + to_string(f.tag()) +
                                " is not an isotropy family (it does not fix (1, 2))");
    }
    const auto img = eval_projected(f, CoverPoint{0.0, 2.0});
    if (std::abs(img.first - 1.0) > 1e-9 || std::abs(img.second - 2.0) > 1e-9) {
        throw PreconditionError("path " + path.name + " does not fix the base point (1, 2)");
    }
}

}  // namespace

RankResult jet_velocity_rank(const std::vector<FamilyPath>& paths, double h, double tol_sv, std::size_t pad_rows) {
    if (paths.empty()) {
        throw PreconditionError("jet_velocity_rank: no paths");
    }
    if (!(h > 0.0)) {
        throw PreconditionError("jet_velocity_rank: h must be positive");
    }
    const std::size_t rows = std::max(paths.size(), pad_rows);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), 20);
    for (std::size_t r = 0; r < paths.size(); ++r) {
        const FamilyPath& path = paths[r];
        require_isotropy(path, path.s0 + h);
        require_isotropy(path, path.s0 - h);
        const auto plus = flatten(jet_at_base(path.family(path.s0 + h)));
        const auto minus = flatten(jet_at_base(path.family(path.s0 - h)));
        for (int c = 0; c < 20; ++c) {
            m(static_cast<Eigen::Index>(r), c) = (plus[c] - minus[c]) / (2.0 * h);
        }
    }
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    RankResult out;
    const auto& sv = svd.singularValues();
    for (Eigen::Index i = 0; i < sv.size(); ++i) {
        out.singular_values.push_back(sv(i));
        out.rank += sv(i) > tol_sv ? 1 : 0;
    }
    // Report the padded rows as explicit zeros.
    while (out.singular_values.size() < rows) {
        out.singular_values.push_back(0.0);
    }
    if (out.rank > 0) {
        const double top = out.singular_values.front();
        const double next =
            static_cast<std::size_t>(out.rank) < out.singular_values.size() ? out.singular_values[out.rank] : 0.0;
        out.gap = out.singular_values[out.rank - 1] /
                  std::max(next, std::numeric_limits<double>::epsilon() * top);
    }
    return out;
}

std::vector<FamilyPath> identity_component_paths() {
    return {
        {"h2_xi", [](double s) { return MapFamily::h2(1.0, s, 0.0, 0.0, 0.0, 0.0); }, 0.0},
        {"h2_rho", [](double s) { return MapFamily::h2(1.0, 0.0, s, 0.0, 0.0, 0.0); }, 0.0},
        {"h3_nu", [](double s) { return MapFamily::h3(1.0, s, 0.0); }, 0.0},
        {"h4_mu", [](double s) { return MapFamily::h4(s, 0.0); }, 1.0},
        {"h4_psi", [](double s) { return MapFamily::h4(1.0, s); }, 0.0},
    };
}

RankResult identity_component_rank(double h, double tol_sv) {
    return jet_velocity_rank(identity_component_paths(), h, tol_sv, 6);
}

namespace {

std::string alpha_key(const std::string& name, double alpha) {
    std::ostringstream s;
    s.imbue(std::locale::classic());
    s << name << '[' << alpha << ']';
    return s.str();
}

}  // namespace

VerificationReport bounded_rotation_only_evidence(const std::vector<double>& alphas, std::size_t samples,
                                                  const WormSpec& spec, std::uint64_t seed) {
    if (spec.variant() != Variant::Bounded) {
        throw PreconditionError("bounded_rotation_only_evidence: requires the bounded worm");
    }
    if (alphas.empty()) {
        throw PreconditionError("bounded_rotation_only_evidence: no alpha values");
    }
    const double mu = spec.mu();
    std::vector<Outcome> outcomes;
    std::vector<std::pair<std::string, double>> metrics;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        const double alpha = alphas[k];
        if (alpha == 0.0 || !std::isfinite(alpha)) {
            throw PreconditionError("bounded_rotation_only_evidence: alpha must be nonzero");
        }
        // z -> e^{alpha} z shifts x = log|z|^2 by 2 alpha.  Core points with
        // x within |alpha| of the rim land at least |alpha| inside the cap.
        SamplingWindow window;
        window.x_range = alpha > 0 ? std::pair{mu - std::abs(alpha), mu} : std::pair{-mu, -mu + std::abs(alpha)};
        const auto points = sample_boundary(spec, RegionFilter::CoreB, samples, seed + k, window);
        double bound = std::numeric_limits<double>::infinity();
        double lhs = 0.0;
        Outcome worst{};
        for (const auto& p : points) {
            const double shifted = spec.eta_at(p.x + 2.0 * alpha);
            if (shifted < bound) {
                bound = shifted;
                worst = {false, 0.0, p.point.zeta(), p.point.w()};
            }
            lhs = std::max(lhs, std::abs(std::norm(p.point.w() - std::polar(1.0, p.x)) - 1.0));
        }
        worst.residual = bound > 0.0 ? 0.0 : 1.0;
        outcomes.push_back(worst);
        metrics.emplace_back(alpha_key("eta_bound", alpha), bound);
        metrics.emplace_back(alpha_key("eta_floor", alpha), spec.eta_at(mu + std::abs(alpha)));
        metrics.emplace_back(alpha_key("lhs_max", alpha), lhs);
    }
    VerificationReport r = reduce("bounded_rotation_only_evidence", outcomes, 0.0, seed, 20);
    r.samples = samples * alphas.size();
    r.metrics = std::move(metrics);
    return r;
}

SamplingWindow sphericity_window() {
    SamplingWindow w;
    w.phi_lo = -std::numbers::pi / 2.0;
    w.phi_hi = std::numbers::pi / 2.0;
    w.annulus_margin = 0.1;
    return w;
}

VerificationReport verify_sphericity(std::size_t samples, std::uint64_t seed, double tol, HeisenbergModel model,
                                     const SamplingWindow& window) {
    const WormSpec un = WormSpec::unbounded();
    const auto points = sample_boundary(un, RegionFilter::NonAnnulus, samples, seed, window);
    const HeisenbergModel other =
        model == HeisenbergModel::ImaginaryPart ? HeisenbergModel::RealPart : HeisenbergModel::ImaginaryPart;
    double alternate = 0.0;
    std::vector<Outcome> outcomes(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        const CoverPoint& p = points[i].point;
        Outcome& o = outcomes[i];
        o.zeta = p.zeta();
        o.w = p.w();
        try {
            const auto q = sphericity_map(p);
            o.residual = std::abs(heisenberg_residual(q, model));
            alternate = std::max(alternate, std::abs(heisenberg_residual(q, other)));
        } catch (const DomainError&) {
            o.skipped = true;
        }
    }
    VerificationReport r = reduce("verify_sphericity", outcomes, tol, seed, 20);
    r.metrics.emplace_back("alternate_max", alternate);
    return r;
}

VerificationReport verify_segre2_complexified(std::size_t samples, std::uint64_t seed, double tol) {
    UniformSource rng(seed);
    std::vector<Outcome> outcomes(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const cplx zeta = disc_sample(rng, 0.0, 0.1);
        const cplx xi = disc_sample(rng, 0.0, 0.1);
        Outcome& o = outcomes[i];
        o.zeta = zeta;
        try {
            o.w = segre2(zeta, xi);
            o.residual = std::abs(rho_complexified({zeta, o.w, xi, segre2_partner_tau(xi)}));
        } catch (const OutsideChart&) {
            o.skipped = true;
        }
    }
    return reduce("verify_segre2_complexified", outcomes, tol, seed, 20);
}

VerificationReport verify_desing_roundtrip(const std::vector<double>& us, std::size_t points, std::uint64_t seed,
                                           double tol, DesingForm form) {
    if (us.empty() || points == 0) {
        throw PreconditionError("verify_desing_roundtrip: needs at least one u and one point");
    }
    UniformSource rng(seed);
    std::vector<cplx> zetas(points);
    for (auto& z : zetas) {
        z = std::polar(0.3, rng.uniform(-std::numbers::pi, std::numbers::pi));
    }
    std::vector<Outcome> outcomes;
    std::vector<std::pair<std::string, double>> metrics;
    for (double u0 : us) {
        if (!(u0 != 0.0) || !std::isfinite(u0)) {
            throw PreconditionError("verify_desing_roundtrip: u must be finite and nonzero");
        }
        double t_ratio = 0.0;
        for (const cplx zeta : zetas) {
            const cplx u{u0, 0.0};
            Outcome o{false, 0.0, zeta, 0.0};
            try {
                const cplx xi = desing_xi_from_u(zeta, u, form);
                o.w = segre2(zeta, xi);
                const cplx t = desing_forward(zeta, o.w, form);
                o.residual = std::abs(desing_phi(zeta, t, form) - u) / (u0 * u0);
                t_ratio = std::max(t_ratio, std::abs(t - u) / (u0 * u0));
                if (!std::isfinite(o.residual)) {
                    o.residual = std::numeric_limits<double>::infinity();
                }
            } catch (const OutsideChart&) {
                o.skipped = true;
            }
            outcomes.push_back(o);
        }
        metrics.emplace_back(alpha_key("t_ratio", u0), t_ratio);
    }
    VerificationReport r = reduce("verify_desing_roundtrip", outcomes, tol, seed, 20);
    r.metrics = std::move(metrics);
    return r;
}

std::string to_string(AuditVerdict v) {
    switch (v) {
        case AuditVerdict::Verified: return "verified";
        case AuditVerdict::ErratumCorrected: return "suspected transcription/typo (corrected form verified)";
        case AuditVerdict::ErratumUnresolved: return "suspected transcription/typo (unresolved)";
        case AuditVerdict::HarnessFailure: return "harness failure";
    }
    return "?";
}

namespace {

double base_defect(const MapFamily& f) {
    try {
        const auto img = eval_projected(f, CoverPoint{0.0, 2.0}, unrestricted_chart());
        return std::max(std::abs(img.first - 1.0), std::abs(img.second - 2.0));
    } catch (const OutsideChart&) {
        return std::numeric_limits<double>::infinity();
    }
}

}  // namespace

FormulaAudit audit_formula(const MapFamily& family, std::size_t samples, std::uint64_t seed, double tol) {
    if (!family.is_germ()) {
        throw PreconditionError("audit_formula: only the germ families H1-H4 are audited");
    }
    SweepOptions sweep;
    sweep.chart = unrestricted_chart();
    const WormSpec un = WormSpec::unbounded();

    const MapFamily printed(family.tag(), family.params(), Formula::Printed);
    FormulaAudit a{printed,
                   verify_map_preserves(printed, un, samples, seed, tol, sweep),
                   std::nullopt,
                   base_defect(printed),
                   std::nullopt,
                   verify_map_preserves(MapFamily::h4(1.05, 0.02), un, samples, seed, tol, sweep),
                   AuditVerdict::Verified};
    if (family.tag() == MapTag::H2) {
        const MapFamily corrected(family.tag(), family.params(), Formula::Corrected);
        a.corrected = verify_map_preserves(corrected, un, samples, seed, tol, sweep);
        a.corrected_base_defect = base_defect(corrected);
    }

    if (!a.control.pass) {
        a.verdict = AuditVerdict::HarnessFailure;
    } else if (a.printed.pass && a.printed_base_defect <= 1e-9) {
        a.verdict = AuditVerdict::Verified;
    } else if (a.corrected && a.corrected->pass && *a.corrected_base_defect <= 1e-9) {
        a.verdict = AuditVerdict::ErratumCorrected;
    } else {
        a.verdict = AuditVerdict::ErratumUnresolved;
    }
    return a;
}

}  // namespace wormcr
