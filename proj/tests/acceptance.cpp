// One line per acceptance criterion; exit status 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wormcr/catalog.hpp"
#include "wormcr/errors.hpp"
#include "wormcr/geometry.hpp"
#include "wormcr/random.hpp"
#include "wormcr/segre.hpp"
#include "wormcr/verify.hpp"

using namespace wormcr;
using std::numbers::pi;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Outcome rotation_invariance() {
    UniformSource rng(101);
    const WormSpec b = WormSpec::bounded(2.0);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
        const double theta = rng.uniform(-pi, pi);
        worst = std::max(worst, verify_map_preserves(MapFamily::rotation(theta), b, 10000, 1000 + k, 1e-12).max_residual);
    }
    return {worst <= 1e-12, fmt("10 angles x 10^4 samples, max |rho| = %.3g (tol 1e-12)", worst)};
}

Outcome h5_automorphism() {
    UniformSource rng(202);
    const WormSpec un = WormSpec::unbounded();
    double worst = 0.0;
    std::size_t skipped = 0;
    for (int k = 0; k < 20; ++k) {
        const double alpha = rng.uniform(-1.0, 1.0);
        const double beta = rng.uniform(-1.0, 1.0);
        const double gamma = rng.uniform(-0.2, 0.2);
        const auto r = verify_map_preserves(MapFamily::h5(alpha, beta, gamma), un, 10000, 2000 + k, 1e-9);
        worst = std::max(worst, r.max_residual);
        skipped += r.skipped;
    }
    return {worst <= 1e-9, fmt("20 parameter sets x 10^4 samples, max |rho| = %.3g (tol 1e-9), %zu outside chart",
                               worst, skipped)};
}

Outcome sphericity() {
    const auto r = verify_sphericity(10000, 303, 1e-10);
    double anchor = 0.0;
    for (double theta : {0.4, 1.3, -2.2}) {
        const auto [q1, q2] = sphericity_map(CoverPoint{0.0, 1.0 + std::polar(1.0, theta)});
        anchor = std::max({anchor, std::abs(q1), std::abs(q2 - std::sin(theta) / (1.0 + std::cos(theta)))});
    }
    const auto [q1, q2] = sphericity_map(CoverPoint{pi / 2.0, cplx{-1.0, 1.0}});
    anchor = std::max({anchor, std::abs(q1 - cplx{1.0, 1.0}), std::abs(q2 - cplx{1.0, 2.0})});
    return {r.pass && anchor <= 1e-12,
            fmt("sweep max = %.3g (tol 1e-10), Re model max = %.3g, anchors max error = %.3g (tol 1e-12)",
                r.max_residual, r.metric("alternate_max").value_or(0.0), anchor)};
}

Outcome levi_stratification() {
    const WormSpec b = WormSpec::bounded(2.0);
    double annulus = 0.0;
    for (const auto& p : sample_boundary(b, RegionFilter::ExceptionalAnnulus, 1000, 404)) {
        annulus = std::max(annulus, std::abs(levi_form(b, p).normalized));
    }
    double rest = std::numeric_limits<double>::infinity();
    for (const auto& p : sample_boundary(b, RegionFilter::NonAnnulus, 10000, 405)) {
        rest = std::min(rest, levi_form(b, p).normalized);
    }
    return {annulus <= 1e-9 && rest >= 1e-6,
            fmt("annulus max = %.3g (tol 1e-9), non-annulus min = %.3g (floor 1e-6)", annulus, rest)};
}

Outcome monodromy() {
    const CoverPoint base{0.0, 2.0};
    const auto bad = monodromy_test(MapFamily::h5(0.2, 0.5, 0.3), base, {1}, 1e-12);
    const auto good = monodromy_test(MapFamily::h5(0.2, 0.5, 0.0), base, {1, 2, 3, 4, 5}, 1e-12);
    const double e2 = std::exp(2.0 * pi);
    const auto h4 = monodromy_test(MapFamily::h4((e2 + 1.0) / (e2 - 1.0), 0.0), base, {1}, 1e-9);
    const double abs_f = h4.metric("abs_f[1]").value_or(0.0);
    const double dev = std::abs(abs_f - std::exp(-pi));
    return {bad.max_residual > 1e-3 && good.pass && dev <= 1e-9,
            fmt("h5 gamma=0.3 residual = %.3g (> 1e-3), gamma=0 residual = %.3g (tol 1e-12), "
                "h4 |f| = %.15f vs e^-pi off by %.3g (tol 1e-9)",
                bad.max_residual, good.max_residual, abs_f, dev)};
}

Outcome identity_rank() {
    bool ok = true;
    std::string detail;
    for (double h : {1e-3, 1e-4, 1e-5}) {
        const RankResult r = identity_component_rank(h, 1e-6);
        ok = ok && r.rank == 5 && r.gap >= 1e3;
        detail += fmt("h=%.0e: rank %d, sigma5 = %.3g, gap %.3g; ", h, r.rank, r.singular_values.at(4), r.gap);
    }
    return {ok, detail};
}

Outcome isotropy() {
    const std::vector<MapFamily> families = {
        MapFamily::h2(1.0, 0.01, 0.02, 0.0, 0.0, 0.0), MapFamily::h2(1.0, -0.03, 0.01, 0.0, 0.0, 0.0),
        MapFamily::h3(1.0, 0.05, 0.0),                 MapFamily::h3(1.0, 0.1, 0.0),
        MapFamily::h4(1.05, 0.02),                     MapFamily::h4(0.97, -0.03)};
    bool ok = true;
    double worst = 0.0;
    for (const auto& f : families) {
        const IsotropyVerdict v = check_isotropy_conditions(jet_at_base(f), IsotropyMode::CorrectedIV, 1e-7);
        ok = ok && v.all_pass();
        for (const auto& c : v.conditions) {
            if (c.id != "i" && c.id != "ii") {
                worst = std::max(worst, c.residual);
            }
        }
    }
    const IsotropyVerdict literal =
        check_isotropy_conditions(jet_at_base(MapFamily::identity()), IsotropyMode::LiteralPaper, 1e-7);
    bool iv_fails = false;
    for (const auto& c : literal.conditions) {
        if (c.id == "iv") {
            iv_fails = !c.pass;
        }
    }
    return {ok && iv_fails, fmt("6 jets pass CorrectedIV, worst residual = %.3g (tol 1e-7); literal (iv) on the "
                                "identity %s",
                                worst, iv_fails ? "fails as expected" : "PASSES (unexpected)")};
}

Outcome connectivity() {
    const WormSpec b = WormSpec::bounded(2.0);
    const auto core = sample_boundary(b, RegionFilter::CoreB, 5000, 808);
    const double ec = suggest_connectivity_eps(core);
    const std::size_t nc = connectivity_probe(core, ec);
    const auto caps = sample_boundary(b, RegionFilter::Caps, 5000, 809);
    const double ek = suggest_connectivity_eps(caps);
    const std::size_t nk = connectivity_probe(caps, ek);
    return {nc == 1 && nk == 2,
            fmt("core: %zu component(s) at eps %.3g; caps: %zu component(s) at eps %.3g", nc, ec, nk, ek)};
}

Outcome exclusion() {
    const WormSpec b = WormSpec::bounded(2.0);
    bool ok = true;
    std::string detail;
    for (double alpha : {0.5, -0.5, 1.0, -1.0}) {
        const auto ev = bounded_rotation_only_evidence({alpha}, 10000, b, 900);
        const double bound = ev.metrics.at(0).second;
        const auto r = verify_map_preserves(MapFamily::h5(alpha, 0.0, 0.0), b, 10000, 901, 1e-12);
        ok = ok && ev.pass && bound > 0.0 && !r.pass && r.max_residual >= bound - 1e-12;
        detail += fmt("alpha=%g: bound %.4g, max residual %.4g; ", alpha, bound, r.max_residual);
    }
    return {ok, detail};
}

Outcome segre() {
    const auto s = verify_segre2_complexified(1000, 1001, 1e-11);
    const auto rt = verify_desing_roundtrip({1e-2, 1e-3, 1e-4}, 100, 1002, 10.0);
    return {s.pass && rt.pass,
            fmt("second Segre max residual = %.3g (tol 1e-11); max |phi(t(u)) - u| / u^2 = %.3g (C = 10), "
                "|t - u| / u^2 = %.3g, %.3g, %.3g",
                s.max_residual, rt.max_residual, rt.metrics.at(0).second, rt.metrics.at(1).second,
                rt.metrics.at(2).second)};
}

Outcome oracles() {
    const WormSpec b = WormSpec::bounded(2.0);
    double worst = 0.0;
    for (const auto& p : sample_boundary(b, RegionFilter::NonAnnulus, 1000, 1101)) {
        const auto [z, w] = project(p.point);
        worst = std::max(worst, oracle::rho_derivative_error(rho_derivatives(b, p.point), oracle::rho_fd(b, z, w)));
    }
    double defect = 0.0;
    for (const auto& f : {MapFamily::h2(1.1, 0.1, 0.05, 0.02, 0.03, 0.01), MapFamily::h2(1.0, 0.01, 0.02, 0, 0, 0),
                          MapFamily::h3(1.0, 0.1, 0.0), MapFamily::h4(1.05, 0.02), MapFamily::h5(0.2, 0.5, 0.1)}) {
        defect = std::max(defect, jet_at_base(f).holomorphy_defect);
    }
    return {worst <= 1e-6 && defect <= 1e-7,
            fmt("rho derivatives vs finite differences: max relative error %.3g (tol 1e-6); jet x/y defect %.3g "
                "(tol 1e-7)",
                worst, defect)};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"rotation invariance", rotation_invariance},
        {"h5 automorphism property", h5_automorphism},
        {"sphericity", sphericity},
        {"Levi stratification", levi_stratification},
        {"monodromy eliminations", monodromy},
        {"identity-component dimension", identity_rank},
        {"isotropy conditions", isotropy},
        {"core connectivity", connectivity},
        {"bounded-worm exclusion", exclusion},
        {"Segre consistency", segre},
        {"oracle cross-checks", oracles},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failed += o.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
