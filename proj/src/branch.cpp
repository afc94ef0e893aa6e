#include "wormcr/branch.hpp"

#include <cmath>

#include "wormcr/errors.hpp"

namespace wormcr {

bool is_finite(cplx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

CoverPoint::CoverPoint(cplx zeta, cplx w, std::int64_t sheet)
    : chart_zeta_(zeta), w_(w), sheet_(sheet) {
    if (!is_finite(zeta) || !is_finite(w)) {
        throw DomainError("CoverPoint: coordinates must be finite");
    }
}

CoverPoint CoverPoint::from_z(cplx z, std::int64_t branch, cplx w) {
    if (!is_finite(z) || z == cplx{0.0, 0.0}) {
        throw DomainError("CoverPoint::from_z: z must be finite and nonzero");
    }
    return CoverPoint{std::log(z), w, branch};
}

cplx power_ia(cplx zeta, double a) {
    if (!is_finite(zeta) || !std::isfinite(a)) {
        throw DomainError("power_ia: non-finite argument");
    }
    return std::exp(kI * a * zeta);
}

CoverPoint monodromy_shift(const CoverPoint& p, std::int64_t n) {
    return CoverPoint{p.chart_zeta(), p.w(), p.sheet() + n};
}

std::pair<cplx, cplx> project(const CoverPoint& p) { return {std::exp(p.chart_zeta()), p.w()}; }

cplx principal_power_i(cplx e) { return std::exp(kI * std::log(e)); }

cplx ContinuousLog::operator()(cplx e) {
    cplx value = std::log(e);
    if (previous_) {
        const double k = std::round((previous_->imag() - value.imag()) / kTwoPi);
        value += kI * (kTwoPi * k);
        if (std::abs(value.imag() - previous_->imag()) > max_jump_) {
            throw BranchAmbiguity("log argument moved too far between consecutive path samples");
        }
    }
    previous_ = value;
    return value;
}

}  // namespace wormcr
