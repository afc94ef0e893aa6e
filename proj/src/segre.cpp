#include "wormcr/segre.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "wormcr/errors.hpp"

namespace wormcr {
namespace {

cplx checked_ratio(cplx num, cplx den, double margin, const char* what) {
    if (!is_finite(num) || !is_finite(den) || std::abs(den) < margin) {
        throw OutsideChart(std::string("outside chart: denominator of ") + what + " below margin");
    }
    return num / den;
}

cplx z_i(cplx zeta) { return std::exp(kI * zeta); }

cplx check_center(cplx zeta, double margin) {
    const cplx s = z_i(zeta);
    if (std::abs(s - 1.0) < margin) {
        throw DesingularizationCenter("desingularization center: z^i = 1 within margin");
    }
    return s;
}

}  // namespace

cplx segre1(cplx zeta, double margin) {
    const cplx s = z_i(zeta);
    return checked_ratio(2.0 * s * s, 2.0 * s - 1.0, margin, "segre1");
}

cplx segre2(cplx zeta, cplx xi, double margin) {
    const cplx s = z_i(zeta);
    const cplx c = z_i(xi);
    return checked_ratio(2.0 * s * s * c * c, 2.0 * s * c + c * c - 2.0 * c, margin, "segre2");
}

cplx segre2_printed(cplx zeta, cplx xi, double margin) {
    const cplx s = z_i(zeta);
    const cplx c = z_i(xi);
    return checked_ratio(2.0 * s * s, 2.0 * s * c + c * c - 2.0 * c, margin, "segre2");
}

cplx segre2_partner_tau(cplx xi, double margin) {
    const cplx c = z_i(xi);
    return checked_ratio(cplx{2.0, 0.0}, 2.0 * c - c * c, margin, "partner tau");
}

int segre2_rank(cplx zeta, cplx xi, double h, double sv_tol) {
    if (!(h > 0.0)) {
        throw PreconditionError("segre2_rank: step must be positive");
    }
    auto partial = [&](bool in_zeta, double step) {
        const cplx dz = in_zeta ? cplx{step, 0.0} : cplx{0.0, 0.0};
        const cplx dx = in_zeta ? cplx{0.0, 0.0} : cplx{step, 0.0};
        return (segre2(zeta + dz, xi + dx) - segre2(zeta - dz, xi - dx)) / (2.0 * step);
    };
    const cplx d_zeta = partial(true, h);
    const cplx d_xi = partial(false, h);
    const double scale = std::max({std::abs(d_zeta), std::abs(d_xi), 1.0});
    if (std::abs(d_zeta - partial(true, 0.5 * h)) > 1e-6 * scale ||
        std::abs(d_xi - partial(false, 0.5 * h)) > 1e-6 * scale) {
        throw IllConditioned("segre2_rank: finite differences disagree across steps");
    }
    // Chain rule back to z = e^zeta and chi = e^xi.
    Eigen::Matrix2cd jac;
    jac << cplx{1.0, 0.0}, cplx{0.0, 0.0}, d_zeta / std::exp(zeta), d_xi / std::exp(xi);
    const Eigen::JacobiSVD<Eigen::Matrix2cd> svd(jac);
    int rank = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) {
        rank += svd.singularValues()(i) > sv_tol ? 1 : 0;
    }
    return rank;
}

cplx desing_coefficient(cplx zeta) {
    const cplx s = z_i(zeta);
    return 4.0 * kI * (s - 1.0) * s * s / ((2.0 * s - 1.0) * (2.0 * s - 1.0));
}

cplx desing_forward(cplx zeta, cplx w, DesingForm form, double margin) {
    const cplx s = check_center(zeta, margin);
    const cplx coef = desing_coefficient(zeta);
    // Printed leading term 2 z^{2i} / (2 z^i) reduces to z^i.
    const cplx lead = form == DesingForm::Corrected ? segre1(zeta) : s;
    return (w - lead) / (coef * coef);
}

cplx desing_phi(cplx zeta, cplx t, DesingForm form, double margin) {
    const cplx s = check_center(zeta, margin);
    const cplx s2 = s * s;
    const cplx s3 = s2 * s;
    const cplx s4 = s2 * s2;
    const cplx prefactor = -kI * (1.0 - 2.0 * s) * (1.0 - 2.0 * s) / (4.0 * s2 * (s - 1.0));
    cplx num;
    cplx den;
    if (form == DesingForm::Printed) {
        num = -8.0 * t * s4 + 4.0 * (t + 2.0) * s3 - 4.0 * (t + 3.0) * s2 + 6.0 * s - 1.0;
        den = 8.0 * (2.0 * t + 1.0) * s3 - 4.0 * (2.0 * t + 3.0) * s2 + 6.0 * s - 1.0;
    } else {
        // The -8 t z^{4i} term belongs to the denominator.
        num = 4.0 * (t + 2.0) * s3 - 4.0 * (t + 3.0) * s2 + 6.0 * s - 1.0;
        den = -8.0 * t * s4 + 8.0 * (2.0 * t + 1.0) * s3 - 4.0 * (2.0 * t + 3.0) * s2 + 6.0 * s - 1.0;
    }
    const cplx ratio = checked_ratio(num, den, margin, "phi");
    return prefactor * (principal_power_i(ratio) - 1.0);
}

cplx desing_xi_from_u(cplx zeta, cplx u, DesingForm form, double margin) {
    check_center(zeta, margin);
    const cplx coef = desing_coefficient(zeta);
    const cplx chi = 1.0 + (form == DesingForm::Corrected ? coef : coef * coef) * u;
    if (std::abs(chi) < margin) {
        throw OutsideChart("outside chart: chi = 0");
    }
    return std::log(chi);
}

}  // namespace wormcr
