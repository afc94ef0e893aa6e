#include "wormcr/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <locale>
#include <numeric>
#include <ostream>
#include <sstream>

#include "wormcr/errors.hpp"
#include "wormcr/random.hpp"

namespace wormcr {

WormSpec::WormSpec(Variant variant, BumpFunction bump, double residual_tol)
    : variant_(variant), bump_(std::move(bump)), residual_tol_(residual_tol) {
    if (!(residual_tol > 0.0)) {
        throw DomainError("WormSpec: residual_tol must be positive");
    }
}

WormSpec WormSpec::bounded(double mu, double residual_tol) {
    return WormSpec(Variant::Bounded, BumpFunction::standard(mu), residual_tol);
}

WormSpec WormSpec::unbounded(double residual_tol) {
    return WormSpec(Variant::Unbounded, BumpFunction::standard(), residual_tol);
}

double WormSpec::eta_at(double x, int order) const {
    return variant_ == Variant::Bounded ? bump_(x, order) : 0.0;
}

ComplexifiedQuad ComplexifiedQuad::diagonal(const CoverPoint& p) {
    return {p.zeta(), p.w(), std::conj(p.zeta()), std::conj(p.w())};
}

std::string to_string(Region r) {
    switch (r) {
        case Region::CoreB: return "CoreB";
        case Region::CapPlus: return "CapPlus";
        case Region::CapMinus: return "CapMinus";
        case Region::RimPlus: return "RimPlus";
        case Region::RimMinus: return "RimMinus";
        case Region::ExceptionalAnnulus: return "ExceptionalAnnulus";
    }
    return "?";
}

std::string to_string(LeviType l) {
    return l == LeviType::LeviFlat ? "LeviFlat" : "StronglyPseudoconvex";
}

std::string to_string(RegionFilter f) {
    switch (f) {
        case RegionFilter::NonAnnulus: return "non-annulus";
        case RegionFilter::CoreB: return "core";
        case RegionFilter::CapPlus: return "cap-plus";
        case RegionFilter::CapMinus: return "cap-minus";
        case RegionFilter::Caps: return "caps";
        case RegionFilter::RimPlus: return "rim-plus";
        case RegionFilter::RimMinus: return "rim-minus";
        case RegionFilter::ExceptionalAnnulus: return "annulus";
    }
    return "?";
}

std::optional<RegionFilter> parse_region_filter(const std::string& name) {
    for (auto f : {RegionFilter::NonAnnulus, RegionFilter::CoreB, RegionFilter::CapPlus, RegionFilter::CapMinus,
                   RegionFilter::Caps, RegionFilter::RimPlus, RegionFilter::RimMinus,
                   RegionFilter::ExceptionalAnnulus}) {
        if (to_string(f) == name) {
            return f;
        }
    }
    return std::nullopt;
}

SamplingWindow SamplingWindow::near_base(double radius) {
    SamplingWindow w;
    w.x_range = std::pair{-radius, radius};
    w.phi_lo = -radius;
    w.phi_hi = radius;
    w.dtheta_lo = -radius;
    w.dtheta_hi = radius;
    return w;
}

double rho(const WormSpec& spec, const CoverPoint& p) {
    const double x = p.log_abs_z_sq();
    return std::norm(p.w() - std::polar(1.0, x)) - 1.0 + spec.eta_at(x);
}

double rho(const WormSpec& spec, const BoundaryPoint& p) { return rho(spec, p.point); }

double rho_at(const WormSpec& spec, cplx z, cplx w) {
    const double x = std::log(std::norm(z));
    return std::norm(w - std::polar(1.0, x)) - 1.0 + spec.eta_at(x);
}

cplx rho_complexified(const ComplexifiedQuad& q) {
    const cplx e = std::exp(kI * (q.zeta + q.xi));
    return q.w * q.tau - q.w / e - q.tau * e;
}

RhoDerivatives rho_derivatives(const WormSpec& spec, const CoverPoint& p) {
    const double x = p.log_abs_z_sq();
    const cplx a = std::polar(1.0, x);
    const cplx w = p.w();
    const cplx z = std::exp(p.chart_zeta());

    // Derivatives in the zeta chart, where x = zeta + conj(zeta).
    const cplx rho_zeta = kI * w * std::conj(a) - kI * std::conj(w) * a + spec.eta_at(x, 1);
    const double rho_zeta_zetabar = 2.0 * (w * std::conj(a)).real() + spec.eta_at(x, 2);
    const cplx rho_zeta_wbar = -kI * a;

    return RhoDerivatives{
        .rho_z = rho_zeta / z,
        .rho_w = std::conj(w) - std::conj(a),
        .rho_zzbar = rho_zeta_zetabar / std::norm(z),
        .rho_zwbar = rho_zeta_wbar / z,
        .rho_wwbar = 1.0,
    };
}

LeviValue levi_form(const WormSpec& spec, const BoundaryPoint& p) {
    if (std::abs(rho(spec, p)) > spec.residual_tol()) {
        throw PreconditionError("levi_form: point is not on the boundary within residual_tol");
    }
    const RhoDerivatives d = rho_derivatives(spec, p.point);
    const double grad_sq = std::norm(d.rho_z) + std::norm(d.rho_w);
    if (grad_sq < 1e-28) {
        throw NotSmoothPoint("levi_form: not a smooth boundary point (d rho = 0)");
    }
    const cplx v1 = -d.rho_w;
    const cplx v2 = d.rho_z;
    const double raw = d.rho_zzbar * std::norm(v1) + 2.0 * (d.rho_zwbar * v1 * std::conj(v2)).real() +
                       d.rho_wwbar * std::norm(v2);
    // |v|^2 = |d rho|^2 for this choice of v.
    return {raw, raw / (std::sqrt(grad_sq) * grad_sq)};
}

BoundaryPoint boundary_point(const WormSpec& spec, double x, double phi, double theta) {
    const double radius_sq = 1.0 - spec.eta_at(x);
    if (radius_sq < 0.0) {
        throw EmptyStratum("boundary_point: eta(x) > 1, the fiber over x is empty");
    }
    const cplx w = std::polar(1.0, x) + std::sqrt(radius_sq) * std::polar(1.0, theta);
    return {CoverPoint{cplx{0.5 * x, phi}, w}, x, theta};
}

namespace {

struct Interval {
    double lo;
    double hi;
    double length() const { return hi - lo; }
};

std::vector<Interval> x_intervals(const WormSpec& spec, RegionFilter region, const SamplingWindow& window) {
    std::vector<Interval> raw;
    if (spec.variant() == Variant::Unbounded) {
        const auto [lo, hi] = window.x_range.value_or(std::pair{-2.0, 2.0});
        switch (region) {
            case RegionFilter::NonAnnulus:
            case RegionFilter::CoreB:
            case RegionFilter::ExceptionalAnnulus:
                raw.push_back({lo, hi});
                break;
            default:
                throw EmptyStratum("empty stratum: the unbounded worm has no caps or rims");
        }
        return raw;
    }

    const double mu = spec.mu();
    const double cut = spec.bump().unit_level();
    switch (region) {
        case RegionFilter::NonAnnulus: raw.push_back({-cut, cut}); break;
        case RegionFilter::CoreB:
        case RegionFilter::ExceptionalAnnulus: raw.push_back({-mu, mu}); break;
        case RegionFilter::CapPlus: raw.push_back({mu, cut}); break;
        case RegionFilter::CapMinus: raw.push_back({-cut, -mu}); break;
        case RegionFilter::Caps:
            raw.push_back({-cut, -mu});
            raw.push_back({mu, cut});
            break;
        case RegionFilter::RimPlus: raw.push_back({mu, mu}); break;
        case RegionFilter::RimMinus: raw.push_back({-mu, -mu}); break;
    }
    if (!window.x_range) {
        return raw;
    }
    std::vector<Interval> clipped;
    for (const auto& iv : raw) {
        const Interval c{std::max(iv.lo, window.x_range->first), std::min(iv.hi, window.x_range->second)};
        if (c.lo <= c.hi) {
            clipped.push_back(c);
        }
    }
    return clipped;
}

}  // namespace

std::vector<BoundaryPoint> sample_boundary(const WormSpec& spec, RegionFilter region, std::size_t count,
                                           std::uint64_t seed, const SamplingWindow& window) {
    if (count == 0) {
        throw PreconditionError("sample_boundary: count must be at least 1");
    }
    const auto intervals = x_intervals(spec, region, window);
    double total = 0.0;
    for (const auto& iv : intervals) {
        total += iv.length();
    }
    const bool rim = region == RegionFilter::RimPlus || region == RegionFilter::RimMinus;
    if (intervals.empty() || (!rim && !(total > 0.0))) {
        throw EmptyStratum("empty stratum: " + to_string(region) + " does not meet the sampling window");
    }

    UniformSource rng(seed);
    auto draw_x = [&] {
        if (rim) {
            return intervals.front().lo;
        }
        double u = rng.uniform(0.0, total);
        for (const auto& iv : intervals) {
            if (u <= iv.length()) {
                return iv.lo + u;
            }
            u -= iv.length();
        }
        return intervals.back().hi;
    };

    std::vector<BoundaryPoint> out;
    out.reserve(count);
    constexpr int kMaxAttempts = 10000;
    while (out.size() < count) {
        bool placed = false;
        for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
            const double x = draw_x();
            const double phi = rng.uniform(window.phi_lo, window.phi_hi);
            if (region == RegionFilter::ExceptionalAnnulus) {
                out.push_back({CoverPoint{cplx{0.5 * x, phi}, cplx{0.0, 0.0}}, x, x + std::numbers::pi});
                placed = true;
                break;
            }
            const double theta = x + rng.uniform(window.dtheta_lo, window.dtheta_hi);
            BoundaryPoint bp = boundary_point(spec, x, phi, theta);
            if (std::abs(bp.point.w()) >= window.annulus_margin) {
                out.push_back(bp);
                placed = true;
            }
        }
        if (!placed) {
            throw EmptyStratum("empty stratum: no admissible sample away from the annulus");
        }
    }
    return out;
}

StratumLabel classify(const WormSpec& spec, const BoundaryPoint& p, double tol) {
    const double x = p.point.log_abs_z_sq();
    const double w_abs = std::abs(p.point.w());

    Region region = Region::CoreB;
    if (spec.variant() == Variant::Unbounded) {
        region = w_abs <= tol ? Region::ExceptionalAnnulus : Region::CoreB;
    } else {
        const double mu = spec.mu();
        if (w_abs <= tol && std::abs(x) <= mu + tol) {
            region = Region::ExceptionalAnnulus;
        } else if (std::abs(x - mu) <= tol) {
            region = Region::RimPlus;
        } else if (std::abs(x + mu) <= tol) {
            region = Region::RimMinus;
        } else if (x > mu) {
            region = Region::CapPlus;
        } else if (x < -mu) {
            region = Region::CapMinus;
        }
    }

    const LeviValue levi = levi_form(spec, p);
    const LeviType type = levi.normalized > tol ? LeviType::StronglyPseudoconvex : LeviType::LeviFlat;
    if ((region == Region::ExceptionalAnnulus) != (type == LeviType::LeviFlat)) {
        std::ostringstream msg;
        msg << "classify: point is within numerical resolution of the exceptional annulus (|w| = " << w_abs
            << ", normalized Levi form = " << levi.normalized << ")";
        throw DomainError(msg.str());
    }
    return {region, type};
}

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t i) {
        while (parent_[i] != i) {
            parent_[i] = parent_[parent_[i]];
            i = parent_[i];
        }
        return i;
    }
    bool unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        parent_[b] = a;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
};

double projected_distance_sq(const BoundaryPoint& a, const BoundaryPoint& b) {
    const auto [za, wa] = project(a.point);
    const auto [zb, wb] = project(b.point);
    return std::norm(za - zb) + std::norm(wa - wb);
}

}  // namespace

std::size_t connectivity_probe(const std::vector<BoundaryPoint>& points, double eps) {
    if (points.size() < 2) {
        throw PreconditionError("connectivity_probe: need at least two points");
    }
    if (!(eps > 0.0)) {
        throw PreconditionError("connectivity_probe: eps must be positive");
    }
    DisjointSets sets(points.size());
    std::size_t components = points.size();
    const double eps_sq = eps * eps;
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (projected_distance_sq(points[i], points[j]) < eps_sq && sets.unite(i, j)) {
                --components;
            }
        }
    }
    return components;
}

double suggest_connectivity_eps(const std::vector<BoundaryPoint>& points, double factor) {
    if (points.size() < 2) {
        throw PreconditionError("suggest_connectivity_eps: need at least two points");
    }
    std::vector<double> nearest(points.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            const double d = projected_distance_sq(points[i], points[j]);
            nearest[i] = std::min(nearest[i], d);
            nearest[j] = std::min(nearest[j], d);
        }
    }
    return factor * std::sqrt(*std::max_element(nearest.begin(), nearest.end()));
}

void write_boundary_csv(std::ostream& out, const WormSpec& spec, const std::vector<BoundaryPoint>& points) {
    std::ostringstream buf;
    buf.imbue(std::locale::classic());
    buf.precision(17);
    buf << "re_zeta,im_zeta,re_w,im_w,x,theta,rho_residual,levi_normalized,region\n";
    for (const auto& p : points) {
        const cplx zeta = p.point.zeta();
        double levi = std::numeric_limits<double>::quiet_NaN();
        std::string region = "unresolved";
        try {
            levi = levi_form(spec, p).normalized;
            region = to_string(classify(spec, p).region);
        } catch (const Error&) {
        }
        buf << zeta.real() << ',' << zeta.imag() << ',' << p.point.w().real() << ',' << p.point.w().imag() << ','
            << p.x << ',' << p.theta << ',' << rho(spec, p) << ',' << levi << ',' << region << '\n';
    }
    out << buf.str();
}

}  // namespace wormcr
