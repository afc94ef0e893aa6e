#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wormcr/branch.hpp"

namespace wormcr {

/// Perturbed is not one of the catalog families: (e^{i theta} z, lambda w), used as a
/// negative control that is not an automorphism for lambda != 1.
enum class MapTag { Identity, Rotation, H1, H2, H3, H4, H5, Sphericity, Perturbed };

/// Printed: the formula exactly as it appears in the source.  Corrected: the
/// repaired version where a printed formula fails its residual check.  The two
/// differ only for H2 at present.
enum class Formula { Corrected, Printed };

std::string to_string(MapTag tag);
std::optional<MapTag> parse_map_tag(const std::string& name);
std::string to_string(Formula f);
std::optional<Formula> parse_formula(const std::string& name);

/// Parameter names in storage order.
const std::vector<std::string>& parameter_names(MapTag tag);

class MapFamily {
public:
    /// Throws PreconditionError on wrong arity or violated side conditions.
    MapFamily(MapTag tag, std::vector<double> params = {}, Formula formula = Formula::Corrected);

    static MapFamily identity();
    static MapFamily rotation(double theta);
    static MapFamily h1(double mu, double nu, double xi, double rho, double sigma, double phi, double psi,
                        Formula formula = Formula::Corrected);
    static MapFamily h2(double mu, double xi, double rho, double sigma, double phi, double psi,
                        Formula formula = Formula::Corrected);
    static MapFamily h3(double mu, double nu, double psi);
    static MapFamily h4(double mu, double psi);
    static MapFamily h5(double alpha, double beta, double gamma);
    static MapFamily sphericity();
    static MapFamily perturbed(double theta, double lambda);

    MapTag tag() const { return tag_; }
    const std::vector<double>& params() const { return params_; }
    double param(std::size_t i) const { return params_.at(i); }
    Formula formula() const { return formula_; }

    /// H1-H4: germs at (1, 2) built from (N/D)^i.
    bool is_germ() const;
    /// Families that fix (1, 2) by construction.
    bool is_isotropy() const;

private:
    MapTag tag_;
    std::vector<double> params_;
    Formula formula_;
};

struct ChartOptions {
    /// |denominator| must be nonzero and at least margin * |numerator|.
    double denominator_margin = 1e-6;
    /// Principal-branch mode requires |E - 1| < log_disc_radius for inner (E)^i.
    double log_disc_radius = 0.9;
    bool restrict_to_germ_chart = true;

    bool operator==(const ChartOptions&) const = default;
};

/// Image of p.  Rotation, H5 and Perturbed keep the sheet and shift zeta
/// exactly; H1-H4 return zeta' = i Log E on sheet 0.  Throws OutsideChart and
/// PreconditionError (Sphericity has no CoverPoint image, see sphericity_map).
CoverPoint eval(const MapFamily& family, const CoverPoint& p, const ChartOptions& chart = {});

/// Projected image (f, g).
std::pair<cplx, cplx> eval_projected(const MapFamily& family, const CoverPoint& p, const ChartOptions& chart = {});

/// Evaluation along a path: the log of each inner E is continued from the
/// previous sample instead of taken on the principal branch.
class PathEvaluator {
public:
    explicit PathEvaluator(MapFamily family, ChartOptions chart = {}, double max_jump = std::numbers::pi / 2.0);

    CoverPoint operator()(const CoverPoint& p);
    void reset() { log_.reset(); }

private:
    MapFamily family_;
    ChartOptions chart_;
    ContinuousLog log_;
};

/// (i - i z^i, i - 2i z^i + 2i z^{2i} / w).  Throws DomainError for |w| < margin.
std::pair<cplx, cplx> sphericity_map(const CoverPoint& p, double margin = 1e-6);

enum class HeisenbergModel { ImaginaryPart, RealPart };

/// Im q2 - |q1|^2, or Re q2 - |q1|^2 for the alternate model.
double heisenberg_residual(std::pair<cplx, cplx> q, HeisenbergModel model = HeisenbergModel::ImaginaryPart);

/// Derivatives of (f, g) at (z, w) = (1, 2) with respect to z and w.
struct JetAtBase {
    cplx f_z, f_w, g_z, g_w;
    cplx f_zz, f_zw, f_ww, g_zz, g_zw, g_ww;
    /// Richardson error bound, first and second order entries.
    double error_first = 0.0;
    double error_second = 0.0;
    /// Largest disagreement between real- and imaginary-direction estimates.
    double holomorphy_defect = 0.0;

    std::array<cplx, 10> entries() const { return {f_z, f_w, g_z, g_w, f_zz, f_zw, f_ww, g_zz, g_zw, g_ww}; }
    static const std::array<const char*, 10>& entry_names();
    cplx jacobian_determinant() const { return f_z * g_w - f_w * g_z; }
};

struct JetOptions {
    /// Largest of the three steps h, h/2, h/4.
    double step = 1e-3;
    double max_error_first = 1e-8;
    double max_error_second = 1e-8;
    ChartOptions chart{};
};

/// Exact jets for Identity, Rotation and Perturbed; Richardson-extrapolated
/// central differences through z = e^zeta for everything else.  Throws
/// IllConditioned if an error estimate exceeds its threshold.
JetAtBase jet_at_base(const MapFamily& family, const JetOptions& options = {});

/// Rotation z -> e^{i theta} z; theta normalized to (-pi, pi].
struct Rotation {
    double theta = 0.0;
};

Rotation make_rotation(double theta);
Rotation compose_rotation(const Rotation& r1, const Rotation& r2);
Rotation invert_rotation(const Rotation& r);

}  // namespace wormcr
