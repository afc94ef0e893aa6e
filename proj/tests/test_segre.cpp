#include <cmath>

#include "doctest.h"
#include "wormcr/errors.hpp"
#include "wormcr/geometry.hpp"
#include "wormcr/random.hpp"
#include "wormcr/segre.hpp"

using namespace wormcr;

namespace {

// Independent transcription of the first Segre map for the oracle.
cplx segre1_oracle(cplx zeta) {
    const cplx s = std::exp(kI * zeta);
    return 2.0 * s * s / (2.0 * s - 1.0);
}

double paired_residual(cplx zeta, cplx xi) {
    return std::abs(rho_complexified({zeta, segre2(zeta, xi), xi, segre2_partner_tau(xi)}));
}

}  // namespace

TEST_CASE("first Segre variety") {
    CHECK(std::abs(segre1(0.0) - 2.0) < 1e-15);
    for (cplx zeta : {cplx{0.1, 0.0}, cplx{-0.05, 0.02}}) {
        const cplx v = segre1(zeta);
        CHECK(std::abs(v - segre1_oracle(zeta)) < 1e-15);
        CHECK(std::abs(rho_complexified({zeta, v, 0.0, 2.0})) < 1e-12);
    }
    CHECK(std::abs(segre1(0.1) - cplx{1.9803102937268847, 0.0019559192009600491}) < 1e-14);
    CHECK(std::abs(segre1(cplx{-0.05, 0.02}) - cplx{1.9955193222870124, 0.0038428671169539014}) < 1e-14);
}

TEST_CASE("second Segre variety") {
    CHECK(std::abs(segre2(0.0, 0.0) - 2.0) < 1e-15);
    CHECK(std::abs(segre2(0.1, 0.0) - segre1(0.1)) < 1e-15);
    CHECK(std::abs(segre2_partner_tau(0.0) - 2.0) < 1e-15);
    CHECK(std::abs(segre2(0.05, 0.03) - cplx{1.98909192876478, 0.00078045539260861671}) < 1e-14);
    CHECK(paired_residual(0.05, 0.03) < 1e-12);

    UniformSource rng(12);
    for (int k = 0; k < 200; ++k) {
        const cplx zeta{rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)};
        const cplx xi{rng.uniform(-0.1, 0.1), rng.uniform(-0.1, 0.1)};
        CHECK(paired_residual(zeta, xi) < 1e-12);
    }
}

TEST_CASE("the printed second Segre display is off the variety") {
    const cplx zeta = 0.05;
    const cplx xi = 0.03;
    const cplx w = segre2_printed(zeta, xi);
    CHECK(std::abs(rho_complexified({zeta, w, xi, segre2_partner_tau(xi)})) > 1e-3);
    // At xi = 0 the missing factor is 1 and the two agree.
    CHECK(std::abs(segre2_printed(zeta, 0.0) - segre2(zeta, 0.0)) < 1e-15);
}

TEST_CASE("Segre chart margins") {
    // 2 s - 1 = 0 at s = 1/2, i.e. zeta = i log 2.
    CHECK_THROWS_AS(segre1(cplx{0.0, std::log(2.0)}), OutsideChart);
}

TEST_CASE("rank of the second Segre map") {
    CHECK(segre2_rank(0.05, 0.03) == 2);
    CHECK(segre2_rank(0.0, 0.0) == 1);
    // The chi-derivative vanishes only at z^i = 1, so zeta = 0.1 is generic.
    CHECK(segre2_rank(0.1, 0.0) == 2);
}

TEST_CASE("desingularization reference values") {
    const cplx z0 = 0.1;
    CHECK(std::abs(desing_forward(z0, segre2(z0, 0.0))) < 1e-12);
    CHECK(std::abs(desing_phi(z0, 0.0)) < 1e-15);
    CHECK_THROWS_AS(desing_forward(0.0, 2.0), DesingularizationCenter);
    CHECK_THROWS_AS(desing_phi(1e-9, 0.01), DesingularizationCenter);

    const cplx s = std::exp(kI * z0);
    const cplx coef = 4.0 * kI * (s - 1.0) * s * s / ((2.0 * s - 1.0) * (2.0 * s - 1.0));
    CHECK(std::abs(desing_coefficient(z0) - coef) < 1e-15);
}

TEST_CASE("desingularization round trip") {
    const cplx z0 = 0.1;
    for (double u0 : {1e-2, 1e-3, 1e-4}) {
        const cplx xi = desing_xi_from_u(z0, u0);
        const cplx t = desing_forward(z0, segre2(z0, xi));
        CHECK(std::abs(desing_phi(z0, t) - u0) < 1e-8);
        CHECK(std::abs(t - u0) <= 10.0 * u0 * u0);
    }
}

TEST_CASE("printed desingularization displays do not round trip") {
    const cplx z0 = 0.1;
    const double u0 = 1e-2;
    const cplx xi = desing_xi_from_u(z0, u0, DesingForm::Printed);
    const cplx t = desing_forward(z0, segre2(z0, xi), DesingForm::Printed);
    CHECK(std::abs(desing_phi(z0, t, DesingForm::Printed) - u0) > 1e-4);
}
