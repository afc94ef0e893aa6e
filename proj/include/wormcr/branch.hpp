#pragma once

// Arithmetic on the logarithmic universal cover of C \ {0}.
//
// A point z is stored as zeta with z = exp(zeta).  Multivalued powers
// z^{ia} = exp(i a log z) are single-valued functions of zeta, and going once
// around the origin is the translation zeta -> zeta + 2 pi i.

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>

namespace wormcr {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

bool is_finite(cplx v);

/// A point (zeta, w) on the cover.  The deck-translation count is kept as an
/// integer sheet index so that monodromy shifts are exact and never perturb the
/// projected coordinates.
class CoverPoint {
public:
    CoverPoint() = default;
    /// Throws DomainError unless both coordinates are finite.
    CoverPoint(cplx zeta, cplx w, std::int64_t sheet = 0);

    /// Build from a projected z with an explicit branch index k:
    /// zeta = Log|z| + i(Arg z + 2 pi k), Arg in (-pi, pi].
    static CoverPoint from_z(cplx z, std::int64_t branch, cplx w);

    /// Full log-chart coordinate, including the sheet offset.
    cplx zeta() const { return chart_zeta_ + kI * (kTwoPi * static_cast<double>(sheet_)); }
    cplx chart_zeta() const { return chart_zeta_; }
    std::int64_t sheet() const { return sheet_; }
    cplx w() const { return w_; }

    /// x = log|z|^2 = 2 Re zeta.  Independent of the sheet.
    double log_abs_z_sq() const { return 2.0 * chart_zeta_.real(); }

    CoverPoint with_w(cplx w) const { return {chart_zeta_, w, sheet_}; }
    CoverPoint translated(cplx dzeta) const { return {chart_zeta_ + dzeta, w_, sheet_}; }

private:
    cplx chart_zeta_{0.0, 0.0};
    cplx w_{0.0, 0.0};
    std::int64_t sheet_ = 0;
};

/// exp(i a zeta), i.e. z^{ia} with z = exp(zeta).  Throws DomainError on
/// non-finite input.
cplx power_ia(cplx zeta, double a);

CoverPoint monodromy_shift(const CoverPoint& p, std::int64_t n);

std::pair<cplx, cplx> project(const CoverPoint& p);

/// E^i = exp(i Log E) on the principal branch.
cplx principal_power_i(cplx e);

/// Log with the branch chosen to stay continuous along a path.  Each call picks
/// the representative of log(e) closest to the previous value; a jump larger
/// than `max_jump` in the imaginary part raises BranchAmbiguity.
class ContinuousLog {
public:
    explicit ContinuousLog(double max_jump = std::numbers::pi / 2.0) : max_jump_(max_jump) {}

    cplx operator()(cplx e);
    void reset() { previous_.reset(); }
    std::optional<cplx> previous() const { return previous_; }

private:
    double max_jump_;
    std::optional<cplx> previous_;
};

}  // namespace wormcr
