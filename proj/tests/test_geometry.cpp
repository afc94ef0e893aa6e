#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "wormcr/errors.hpp"
#include "wormcr/geometry.hpp"

using namespace wormcr;
using std::numbers::pi;

TEST_CASE("rho reference values") {
    const WormSpec un = WormSpec::unbounded();
    CHECK(rho(un, CoverPoint{0.0, 2.0}) == doctest::Approx(0.0));
    CHECK(rho(un, CoverPoint{0.0, 1.0}) == doctest::Approx(-1.0));

    const WormSpec b = WormSpec::bounded(2.0);
    const double eta3 = b.eta_at(3.0);
    for (double theta : {0.0, 1.0, 2.5, -2.0}) {
        const cplx w = std::polar(1.0, 3.0) + std::sqrt(std::max(0.0, 1.0 - eta3)) * std::polar(1.0, theta);
        CHECK(std::abs(rho(b, CoverPoint{1.5, w})) < 1e-12);
    }
}

TEST_CASE("rho is invariant under deck translations") {
    const WormSpec b = WormSpec::bounded(2.0);
    const CoverPoint p{{0.7, 0.3}, {0.2, 1.1}};
    CHECK(rho(b, p) == rho(b, monodromy_shift(p, 3)));
    CHECK(rho(b, p) == doctest::Approx(rho_at(b, project(p).first, p.w())).epsilon(1e-13));
}

TEST_CASE("complexified rho") {
    CHECK(std::abs(rho_complexified(ComplexifiedQuad::diagonal(CoverPoint{0.0, 2.0}))) < 1e-15);
    // w tau - w - tau = 0 with tau = 2 gives w = 2.
    CHECK(std::abs(rho_complexified({0.0, 2.0, 0.0, 2.0})) < 1e-15);
    const WormSpec un = WormSpec::unbounded();
    const CoverPoint p{{0.3, -0.4}, {0.5, 0.8}};
    CHECK(std::abs(rho_complexified(ComplexifiedQuad::diagonal(p)) - rho(un, p)) < 1e-14);
}

TEST_CASE("hand-coded rho derivatives match finite differences") {
    const WormSpec b = WormSpec::bounded(2.0);
    const auto pts = sample_boundary(b, RegionFilter::NonAnnulus, 300, 5);
    for (const auto& p : pts) {
        const auto [z, w] = project(p.point);
        const double err = oracle::rho_derivative_error(rho_derivatives(b, p.point), oracle::rho_fd(b, z, w));
        CHECK(err <= 1e-6);
    }
}

TEST_CASE("Levi form at the base point matches the finite-difference Hessian") {
    const WormSpec un = WormSpec::unbounded();
    const BoundaryPoint bp = boundary_point(un, 0.0, 0.0, 0.0);
    CHECK(std::abs(bp.point.w() - 2.0) < 1e-15);
    const LeviValue v = levi_form(un, bp);
    CHECK(v.normalized > 0.0);
    const double fd = oracle::levi_raw_fd(oracle::rho_fd(un, 1.0, 2.0));
    CHECK(v.raw == doctest::Approx(fd).epsilon(1e-6));
    CHECK(v.raw == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(v.normalized == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("Levi form vanishes on the annulus and is positive elsewhere") {
    const WormSpec b = WormSpec::bounded(2.0);
    for (const auto& p : sample_boundary(b, RegionFilter::ExceptionalAnnulus, 200, 2)) {
        CHECK(std::abs(p.point.w()) == 0.0);
        CHECK(std::abs(p.x) <= 2.0);
        CHECK(std::abs(levi_form(b, p).normalized) <= 1e-9);
    }
    for (const auto& p : sample_boundary(b, RegionFilter::Caps, 200, 2)) {
        CHECK(levi_form(b, p).normalized > 1e-6);
    }
    for (const auto& p : sample_boundary(b, RegionFilter::CoreB, 200, 2)) {
        CHECK(levi_form(b, p).normalized > 1e-6);
    }
}

TEST_CASE("levi_form preconditions") {
    const WormSpec un = WormSpec::unbounded();
    CHECK_THROWS_AS(levi_form(un, BoundaryPoint{CoverPoint{0.0, 1.0}, 0.0, 0.0}), PreconditionError);
}

TEST_CASE("sampler reference cases") {
    const WormSpec un = WormSpec::unbounded();
    const auto one = sample_boundary(un, RegionFilter::CoreB, 1, 42);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(rho(un, one[0])) < 1e-12);

    const WormSpec b = WormSpec::bounded(2.0);
    const auto ann = sample_boundary(b, RegionFilter::ExceptionalAnnulus, 1, 42);
    CHECK(ann[0].point.w() == cplx{0.0, 0.0});
    CHECK(std::abs(ann[0].x) <= 2.0);

    const auto rim = sample_boundary(b, RegionFilter::RimPlus, 1, 42);
    CHECK(rim[0].x == doctest::Approx(2.0).epsilon(1e-15));
    const auto rim_minus = sample_boundary(b, RegionFilter::RimMinus, 1, 42);
    CHECK(rim_minus[0].x == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("sampler is deterministic and stays on the boundary") {
    const WormSpec b = WormSpec::bounded(2.0);
    for (RegionFilter f : {RegionFilter::NonAnnulus, RegionFilter::CoreB, RegionFilter::CapPlus, RegionFilter::CapMinus,
                           RegionFilter::Caps, RegionFilter::RimPlus, RegionFilter::RimMinus,
                           RegionFilter::ExceptionalAnnulus}) {
        const auto a = sample_boundary(b, f, 100, 9);
        const auto c = sample_boundary(b, f, 100, 9);
        REQUIRE(a.size() == 100);
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].point.zeta() == c[i].point.zeta());
            CHECK(a[i].point.w() == c[i].point.w());
            CHECK(std::abs(rho(b, a[i])) <= 1e-12);
        }
        CHECK(parse_region_filter(to_string(f)) == f);
    }
}

TEST_CASE("sampler errors") {
    const WormSpec un = WormSpec::unbounded();
    CHECK_THROWS_AS(sample_boundary(un, RegionFilter::Caps, 10, 1), EmptyStratum);
    CHECK_THROWS_AS(sample_boundary(un, RegionFilter::RimPlus, 10, 1), EmptyStratum);
    CHECK_THROWS_AS(sample_boundary(un, RegionFilter::CoreB, 0, 1), PreconditionError);
    SamplingWindow w;
    w.x_range = std::pair{-1.0, 1.0};
    CHECK_THROWS_AS(sample_boundary(WormSpec::bounded(2.0), RegionFilter::CapPlus, 10, 1, w), EmptyStratum);
    CHECK_THROWS_AS(boundary_point(WormSpec::bounded(2.0), 3.5, 0.0, 0.0), EmptyStratum);
}

TEST_CASE("classify reference points") {
    const WormSpec b = WormSpec::bounded(2.0);
    const StratumLabel ann = classify(b, BoundaryPoint{CoverPoint{0.0, 0.0}, 0.0, pi});
    CHECK(ann == StratumLabel{Region::ExceptionalAnnulus, LeviType::LeviFlat});

    CHECK(classify(b, boundary_point(b, 0.0, 0.0, 0.0)) == StratumLabel{Region::CoreB, LeviType::StronglyPseudoconvex});
    const BoundaryPoint rim = boundary_point(b, 2.0, 0.0, 2.0);
    CHECK(rim.point.chart_zeta() == cplx{1.0, 0.0});
    CHECK(classify(b, rim) == StratumLabel{Region::RimPlus, LeviType::StronglyPseudoconvex});
    CHECK(classify(b, boundary_point(b, -2.0, 0.0, 0.0)).region == Region::RimMinus);
    CHECK(classify(b, boundary_point(b, 2.5, 0.0, 0.0)).region == Region::CapPlus);
    CHECK(classify(b, boundary_point(b, -2.5, 0.0, 0.0)).region == Region::CapMinus);
}

TEST_CASE("classify agrees with the sampled stratum") {
    const WormSpec b = WormSpec::bounded(2.0);
    const std::pair<RegionFilter, Region> cases[] = {{RegionFilter::CoreB, Region::CoreB},
                                                     {RegionFilter::CapPlus, Region::CapPlus},
                                                     {RegionFilter::CapMinus, Region::CapMinus},
                                                     {RegionFilter::RimPlus, Region::RimPlus},
                                                     {RegionFilter::RimMinus, Region::RimMinus},
                                                     {RegionFilter::ExceptionalAnnulus, Region::ExceptionalAnnulus}};
    for (const auto& [filter, region] : cases) {
        for (const auto& p : sample_boundary(b, filter, 50, 4)) {
            CHECK(classify(b, p).region == region);
        }
    }
}

TEST_CASE("connectivity probe") {
    const WormSpec b = WormSpec::bounded(2.0);
    const BoundaryPoint p = boundary_point(b, 0.0, 0.0, 0.0);
    CHECK(connectivity_probe({p, p}, 1e-9) == 1);
    CHECK_THROWS_AS(connectivity_probe({p}, 1.0), PreconditionError);
    CHECK_THROWS_AS(connectivity_probe({p, p}, 0.0), PreconditionError);

    const auto caps = sample_boundary(b, RegionFilter::Caps, 2000, 3);
    CHECK(connectivity_probe(caps, suggest_connectivity_eps(caps)) == 2);
    const auto core = sample_boundary(b, RegionFilter::CoreB, 2000, 3);
    CHECK(connectivity_probe(core, suggest_connectivity_eps(core)) == 1);
}

TEST_CASE("boundary CSV") {
    const WormSpec b = WormSpec::bounded(2.0);
    std::ostringstream os;
    write_boundary_csv(os, b, sample_boundary(b, RegionFilter::ExceptionalAnnulus, 3, 1));
    const std::string s = os.str();
    CHECK(s.rfind("re_zeta,im_zeta,re_w,im_w,x,theta,rho_residual,levi_normalized,region\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 4);
    CHECK(s.find("ExceptionalAnnulus") != std::string::npos);
}
