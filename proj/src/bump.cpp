#include "wormcr/bump.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "wormcr/errors.hpp"

namespace wormcr {
namespace {

// 10-point Gauss-Legendre, positive half of the symmetric rule.
constexpr std::array<std::pair<double, double>, 5> kGauss10 = {{
    {0.14887433898163122, 0.29552422471475298},
    {0.43339539412924721, 0.26926671930999652},
    {0.67940956829902444, 0.21908636251598201},
    {0.86506336668898454, 0.14945134915058036},
    {0.97390652851717174, 0.066671344308688069},
}};

// exp(-1/u) underflows to zero below this.
constexpr double kUnderflowT = 1.0 / 745.0;

double flat_density(double u) { return u <= kUnderflowT ? 0.0 : std::exp(-1.0 / u); }

double gauss_panel(double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0.0;
    for (const auto& [node, weight] : kGauss10) {
        sum += weight * (flat_density(mid - half * node) + flat_density(mid + half * node));
    }
    return half * sum;
}

double adaptive(double a, double b, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double left = gauss_panel(a, m);
    const double right = gauss_panel(m, b);
    if (depth >= 40 || std::abs(left + right - whole) <= tol) {
        return left + right;
    }
    return adaptive(a, m, left, 0.5 * tol, depth + 1) + adaptive(m, b, right, 0.5 * tol, depth + 1);
}

double integrate(double a, double b, double tol) {
    if (b <= a) {
        return 0.0;
    }
    return adaptive(a, b, gauss_panel(a, b), tol, 0);
}

// Table covers t in [0, kTableSpan]; beyond it values are integrated directly.
constexpr double kTableSpan = 8.0;
constexpr int kTablePerUnit = 1024;
// Below this s is evaluated by direct quadrature instead of the table.
constexpr double kDirectSpan = 1.0;

/// s(t) = t^2 e^{-1/t} I(t) with I(t) = int_0^inf e^{-v} (1 + t v)^{-2} dv, from
/// the substitution v = 1/u - 1/t.  I is smooth and of order one, so fixed
/// Gauss panels give full relative accuracy where s itself is tiny.
double flat_integral_near_zero(double t) {
    const double scale = t * t * flat_density(t);
    if (scale == 0.0) {
        return 0.0;
    }
    constexpr double kPanel = 0.5;
    constexpr int kPanels = 80;  // e^{-40} is below double resolution of I
    double sum = 0.0;
    for (int p = kPanels - 1; p >= 0; --p) {
        const double mid = (p + 0.5) * kPanel;
        const double half = 0.5 * kPanel;
        for (const auto& [node, weight] : kGauss10) {
            for (double v : {mid - half * node, mid + half * node}) {
                const double d = 1.0 + t * v;
                sum += half * weight * std::exp(-v) / (d * d);
            }
        }
    }
    return scale * sum;
}

}  // namespace

double flat_integral(double t, double tol) {
    if (t <= 0.0) {
        return 0.0;
    }
    // Panels of unit width keep the adaptive recursion shallow for large t.
    double sum = 0.0;
    double lo = 0.0;
    while (lo < t) {
        const double hi = std::min(t, lo + 1.0);
        sum += integrate(lo, hi, tol);
        lo = hi;
    }
    return sum;
}

BumpFunction::BumpFunction(double mu, double c, double a, double quad_tol)
    : mu_(mu), c_(c), a_(a), quad_tol_(quad_tol) {
    if (!(mu > 0.0) || !(c > 0.0) || !(a > mu) || !(quad_tol > 0.0)) {
        throw DomainError("BumpFunction: require mu > 0, c > 0, a > mu, quad_tol > 0");
    }

    auto table = std::make_shared<Table>();
    const int n = static_cast<int>(kTableSpan) * kTablePerUnit;
    table->step = 1.0 / kTablePerUnit;
    table->values.resize(n + 1);
    table->values[0] = 0.0;
    const double panel_tol = quad_tol / n;
    for (int k = 0; k < n; ++k) {
        table->values[k + 1] = table->values[k] + integrate(k * table->step, (k + 1) * table->step, panel_tol);
    }
    table_ = std::move(table);

    if (!((*this)(a_) > 1.0)) {
        throw DomainError("BumpFunction: eta(a) must exceed 1");
    }

    // eta is strictly increasing on (mu, a] and eta(a) > 1, so bisect.
    double lo = mu_;
    double hi = a_;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((*this)(mid) < 1.0 ? lo : hi) = mid;
    }
    unit_level_ = 0.5 * (lo + hi);
}

BumpFunction BumpFunction::standard(double mu) {
    return BumpFunction(mu, 1.0 / flat_integral(1.0), mu + 2.0);
}

double BumpFunction::s_value(double t) const {
    if (t <= 0.0) {
        return 0.0;
    }
    if (t < kDirectSpan) {
        return flat_integral_near_zero(t);
    }
    const Table& tab = *table_;
    const auto last = static_cast<double>(tab.values.size() - 1);
    const double pos = t / tab.step;
    if (pos >= last) {
        return tab.values.back() + integrate(kTableSpan, t, quad_tol_);
    }
    // Cubic Hermite on [t0, t1] with exact slopes s'(t) = exp(-1/t).
    const auto k = static_cast<std::size_t>(pos);
    const double h = tab.step;
    const double t0 = static_cast<double>(k) * h;
    const double u = (t - t0) / h;
    const double y0 = tab.values[k];
    const double y1 = tab.values[k + 1];
    const double m0 = flat_density(t0) * h;
    const double m1 = flat_density(t0 + h) * h;
    const double u2 = u * u;
    const double u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * m0 + (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * m1;
}

double BumpFunction::operator()(double x, int order) const {
    const double t = std::abs(x) - mu_;
    switch (order) {
        case 0:
            return c_ * s_value(t);
        case 1:
            if (t <= kUnderflowT) {
                return 0.0;
            }
            return (x < 0 ? -c_ : c_) * std::exp(-1.0 / t);
        case 2:
            if (t <= kUnderflowT) {
                return 0.0;
            }
            return c_ * std::exp(-1.0 / t) / (t * t);
        default:
            throw DomainError("eta: derivative order must be 0, 1 or 2");
    }
}

double eta(const BumpFunction& bump, double x, int order) { return bump(x, order); }

}  // namespace wormcr
