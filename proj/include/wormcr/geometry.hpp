#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wormcr/branch.hpp"
#include "wormcr/bump.hpp"

namespace wormcr {

enum class Variant { Bounded, Unbounded };

/// One worm-domain instance.  The bump is ignored for the unbounded variant.
class WormSpec {
public:
    WormSpec(Variant variant, BumpFunction bump, double residual_tol = 1e-10);

    static WormSpec bounded(double mu = 2.0, double residual_tol = 1e-10);
    static WormSpec unbounded(double residual_tol = 1e-10);

    Variant variant() const { return variant_; }
    const BumpFunction& bump() const { return bump_; }
    double residual_tol() const { return residual_tol_; }
    double mu() const { return bump_.mu(); }

    /// eta(x) for the bounded worm, 0 for the unbounded one.
    double eta_at(double x, int order = 0) const;

private:
    Variant variant_;
    BumpFunction bump_;
    double residual_tol_;
};

/// A point (zeta, w, xi, tau) of the complexification, xi being the log chart
/// of chi (chi = exp(xi)).
struct ComplexifiedQuad {
    cplx zeta;
    cplx w;
    cplx xi;
    cplx tau;

    /// The real point itself: xi = conj(zeta), tau = conj(w).
    static ComplexifiedQuad diagonal(const CoverPoint& p);
};

struct BoundaryPoint {
    CoverPoint point;
    double x = 0.0;      // log|z|^2
    double theta = 0.0;  // fiber angle: w = e^{ix} + sqrt(1 - eta(x)) e^{i theta}
};

enum class Region { CoreB, CapPlus, CapMinus, RimPlus, RimMinus, ExceptionalAnnulus };
enum class LeviType { StronglyPseudoconvex, LeviFlat };

struct StratumLabel {
    Region region;
    LeviType levi;
    bool operator==(const StratumLabel&) const = default;
};

std::string to_string(Region r);
std::string to_string(LeviType l);

/// Which part of the boundary to sample.
enum class RegionFilter { NonAnnulus, CoreB, CapPlus, CapMinus, Caps, RimPlus, RimMinus, ExceptionalAnnulus };

std::string to_string(RegionFilter f);
std::optional<RegionFilter> parse_region_filter(const std::string& name);

/// Parameter box for the sampler.  Samples are drawn uniformly in
/// (x, Im zeta, theta - x) and then restricted to the requested stratum.
struct SamplingWindow {
    /// Intersected with the stratum's own x range.  Required to be finite for
    /// the unbounded worm; defaults to [-2, 2] there.
    std::optional<std::pair<double, double>> x_range;
    double phi_lo = -std::numbers::pi;
    double phi_hi = std::numbers::pi;
    /// theta - x; the exceptional annulus sits at theta - x = pi.
    double dtheta_lo = -std::numbers::pi;
    double dtheta_hi = std::numbers::pi;
    /// Non-annulus samples keep |w| at least this large.
    double annulus_margin = 1e-2;

    /// Small box around the base point (1, 2): |x|, |Im zeta|, |theta - x| <= radius.
    static SamplingWindow near_base(double radius);
};

double rho(const WormSpec& spec, const CoverPoint& p);
double rho(const WormSpec& spec, const BoundaryPoint& p);
/// rho as a function of projected coordinates; used by finite-difference oracles.
double rho_at(const WormSpec& spec, cplx z, cplx w);

/// w tau - w e^{-i(zeta + xi)} - tau e^{i(zeta + xi)}.
cplx rho_complexified(const ComplexifiedQuad& q);

/// Wirtinger derivatives of rho in the (z, w) coordinates.
struct RhoDerivatives {
    cplx rho_z;
    cplx rho_w;
    double rho_zzbar;
    cplx rho_zwbar;
    double rho_wwbar;
};

RhoDerivatives rho_derivatives(const WormSpec& spec, const CoverPoint& p);

struct LeviValue {
    double raw;
    double normalized;  // raw / (|d rho| |v|^2)
};

/// Levi form on the complex tangent vector v = (-rho_w, rho_z).  Positive means
/// strongly pseudoconvex.  Throws PreconditionError off the boundary and
/// NotSmoothPoint where d rho vanishes.
LeviValue levi_form(const WormSpec& spec, const BoundaryPoint& p);

/// Throws EmptyStratum for strata the variant does not have.
std::vector<BoundaryPoint> sample_boundary(const WormSpec& spec, RegionFilter region, std::size_t count,
                                           std::uint64_t seed, const SamplingWindow& window = {});

/// Boundary point over a given (x, Im zeta, theta).
BoundaryPoint boundary_point(const WormSpec& spec, double x, double phi, double theta);

/// Region from x and w, Levi type from levi_form against `tol`.  Throws
/// DomainError when the two disagree, which happens only within numerical
/// resolution of the exceptional annulus.
StratumLabel classify(const WormSpec& spec, const BoundaryPoint& p, double tol = 1e-7);

/// Number of connected components of the graph joining points closer than eps
/// in projected (z, w) coordinates.
std::size_t connectivity_probe(const std::vector<BoundaryPoint>& points, double eps);

/// factor times the largest nearest-neighbour distance in the sample.
double suggest_connectivity_eps(const std::vector<BoundaryPoint>& points, double factor = 2.5);

/// CSV with columns re_zeta, im_zeta, re_w, im_w, x, theta, rho_residual,
/// levi_normalized, region.
void write_boundary_csv(std::ostream& out, const WormSpec& spec, const std::vector<BoundaryPoint>& points);

}  // namespace wormcr
