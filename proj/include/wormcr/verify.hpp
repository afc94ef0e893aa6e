#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wormcr/catalog.hpp"
#include "wormcr/geometry.hpp"
#include "wormcr/segre.hpp"

namespace wormcr {

struct FailureRecord {
    std::size_t index = 0;
    double residual = 0.0;
    cplx zeta;
    cplx w;
};

/// pass <=> max_residual <= tol, and failures is nonempty exactly when pass is
/// false.  Skipped samples (outside a map's chart) are counted separately and
/// do not enter max/mean.
struct VerificationReport {
    std::string op;
    std::size_t samples = 0;
    std::size_t skipped = 0;
    double max_residual = 0.0;
    double mean_residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    std::vector<FailureRecord> failures;
    /// Extra named quantities, in insertion order.
    std::vector<std::pair<std::string, double>> metrics;

    std::optional<double> metric(const std::string& name) const;
};

struct SweepOptions {
    /// Defaults to SamplingWindow::near_base(0.25) for germ families and to the
    /// full default window otherwise.
    std::optional<SamplingWindow> window;
    RegionFilter region = RegionFilter::NonAnnulus;
    ChartOptions chart{};
    std::size_t max_failures = 20;
    /// Worker threads; 0 reads WORMCR_THREADS (default 1).  Never affects results.
    unsigned threads = 0;
};

/// |rho(source, eval(map, p))| over boundary samples p of `source`.
VerificationReport verify_map_preserves(const MapFamily& map, const WormSpec& source, std::size_t samples,
                                        std::uint64_t seed, double tol, const SweepOptions& options = {});

/// Left side of the functional equation on free (zeta, xi, tau) near (0, 0, 2)
/// with w solved from the complexified constraint.
VerificationReport verify_eq1_complexified(const MapFamily& map, std::size_t samples, std::uint64_t seed, double tol,
                                           const ChartOptions& chart = {});

/// Both equations of the tangency system on the same constrained quadruples;
/// the residual is the larger of the two.
VerificationReport verify_tangency_system(const MapFamily& map, std::size_t samples, std::uint64_t seed, double tol,
                                          const ChartOptions& chart = {});

enum class IsotropyMode { LiteralPaper, CorrectedIV };

std::string to_string(IsotropyMode m);

struct ConditionRecord {
    std::string id;
    cplx lhs;
    cplx rhs;
    double residual;
    bool pass;
};

struct IsotropyVerdict {
    IsotropyMode mode;
    std::vector<ConditionRecord> conditions;
    bool all_pass() const;
};

/// Conditions (i)-(vii) on a jet at (1, 2).  (i) and (ii) pass when the entry
/// exceeds tol in modulus; the others when |lhs - rhs| <= tol.  CorrectedIV
/// tests (iv) as g_w = |f_z|^2 instead of g_w = |f_w|^2.
IsotropyVerdict check_isotropy_conditions(const JetAtBase& jet, IsotropyMode mode, double tol);

/// Distance between the projected images of base and its shifts by 2 pi i n.
/// Germ families are evaluated without the principal-branch disc restriction.
VerificationReport monodromy_test(const MapFamily& map, const CoverPoint& base, const std::vector<std::int64_t>& n_list,
                                  double tol);

/// Projected image of monodromy_shift(base, n) under the unrestricted chart.
std::pair<cplx, cplx> monodromy_image(const MapFamily& map, const CoverPoint& base, std::int64_t n);

/// One-parameter family through a base parameter value.
struct FamilyPath {
    std::string name;
    std::function<MapFamily(double)> family;
    double s0 = 0.0;
};

struct RankResult {
    int rank = 0;
    std::vector<double> singular_values;
    /// sigma_rank / max(sigma_{rank+1}, eps * sigma_1); 0 when rank is 0.
    double gap = 0.0;
};

/// Rank of the stacked jet velocities d/ds jet(family(s)) at s0.  Rows are
/// padded with zeros up to `pad_rows`.  Throws PreconditionError if a path
/// leaves the isotropy group (does not fix (1, 2)).
RankResult jet_velocity_rank(const std::vector<FamilyPath>& paths, double h, double tol_sv, std::size_t pad_rows = 0);

/// The five identity-component directions: H2 in xi and rho, H3 in nu, H4 in mu
/// and psi.
std::vector<FamilyPath> identity_component_paths();

RankResult identity_component_rank(double h = 1e-4, double tol_sv = 1e-6);

/// For each alpha != 0, samples bounded-worm boundary points with x < mu and
/// x + 2 alpha > mu (mirrored for alpha < 0) and reports the smallest
/// eta(x + 2 alpha) found as metric "eta_bound[alpha]".  pass means every
/// bound is strictly positive.
VerificationReport bounded_rotation_only_evidence(const std::vector<double>& alphas, std::size_t samples,
                                                  const WormSpec& spec, std::uint64_t seed = 1);

/// Sampling chart for the sphericity sweep: |Im zeta| <= pi/2 and |w| >= 0.1,
/// where the map is evaluated with relative rounding below 1e-12.
SamplingWindow sphericity_window();

/// |Im F2 - |F1|^2| (or the Re model) of the sphericity map over unbounded-worm
/// boundary samples.  Metric "alternate_max" is the largest residual of the
/// other model on the same points.
VerificationReport verify_sphericity(std::size_t samples, std::uint64_t seed, double tol,
                                     HeisenbergModel model = HeisenbergModel::ImaginaryPart,
                                     const SamplingWindow& window = sphericity_window());

/// |rho_complexified(zeta, segre2(zeta, xi), xi, segre2_partner_tau(xi))| for
/// zeta, xi in discs of radius 0.1 around 0.
VerificationReport verify_segre2_complexified(std::size_t samples, std::uint64_t seed, double tol);

/// Round trip u -> xi -> w0 -> t -> phi(t) at `points` random zeta on |zeta| = 0.3.
/// The residual is |phi(t(u)) - u| / |u|^2, compared against tol = C.
/// Metric "t_ratio[u]" is the largest |t - u| / |u|^2 seen for that u.
VerificationReport verify_desing_roundtrip(const std::vector<double>& us, std::size_t points, std::uint64_t seed,
                                           double tol, DesingForm form = DesingForm::Corrected);

enum class AuditVerdict { Verified, ErratumCorrected, ErratumUnresolved, HarnessFailure };

std::string to_string(AuditVerdict v);

/// Erratum protocol for one germ family at given parameters.
struct FormulaAudit {
    MapFamily family;
    VerificationReport printed;
    std::optional<VerificationReport> corrected;
    double printed_base_defect = 0.0;
    std::optional<double> corrected_base_defect;
    /// The same harness on a verified degenerate family (H4 at the identity).
    VerificationReport control;
    AuditVerdict verdict = AuditVerdict::Verified;
};

FormulaAudit audit_formula(const MapFamily& family, std::size_t samples, std::uint64_t seed, double tol);

}  // namespace wormcr
