#pragma once

#include <memory>
#include <vector>

namespace wormcr {

/// s(t) = int_0^t exp(-1/u) du for t > 0, and 0 for t <= 0.  Evaluated by
/// adaptive Gauss-Legendre quadrature to absolute tolerance `tol`.
double flat_integral(double t, double tol = 1e-15);

/// The even, convex bump eta(x) = c * s(|x| - mu).
///
/// eta vanishes exactly on [-mu, mu], increases strictly in |x| outside it and
/// has closed-form first and second derivatives.  For |x| - mu >= 1 order-0
/// values come from a table of s built once at construction and read back with
/// cubic Hermite interpolation on the exact slopes s'(t) = exp(-1/t); closer to
/// the flat zone s is integrated directly to relative tolerance quad_tol.  The
/// table is immutable and shared between copies.
class BumpFunction {
public:
    /// Throws DomainError unless mu > 0, c > 0, a > mu and eta(a) > 1.
    BumpFunction(double mu, double c, double a, double quad_tol = 1e-14);

    /// mu, c = 1/s(1) so that eta(mu + 1) = 1, a = mu + 2.
    static BumpFunction standard(double mu = 2.0);

    double mu() const { return mu_; }
    double c() const { return c_; }
    double a() const { return a_; }
    double quad_tol() const { return quad_tol_; }

    /// order 0, 1 or 2; any other order throws DomainError.
    double operator()(double x, int order = 0) const;

    /// Unique x > mu with eta(x) = 1.
    double unit_level() const { return unit_level_; }

private:
    double s_value(double t) const;

    double mu_;
    double c_;
    double a_;
    double quad_tol_;
    double unit_level_ = 0.0;

    struct Table {
        double step = 0.0;
        std::vector<double> values;
    };
    std::shared_ptr<const Table> table_;
};

double eta(const BumpFunction& bump, double x, int order = 0);

}  // namespace wormcr
