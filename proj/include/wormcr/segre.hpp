#pragma once

// Segre varieties of the unbounded worm boundary at (1, 2), written in the log
// charts zeta = log z and xi = log chi.  Throughout s = z^i = e^{i zeta} and
// c = chi^i = e^{i xi}.

#include "wormcr/branch.hpp"

namespace wormcr {

/// 2 s^2 / (2 s - 1); satisfies rho_complexified(zeta, w, 0, 2) = 0.
cplx segre1(cplx zeta, double margin = 1e-8);

/// w0 = 2 s^2 c^2 / (2 s c + c^2 - 2 c), the second Segre map.  Paired with
/// tau = segre2_partner_tau(xi) it solves the complexified equation.
cplx segre2(cplx zeta, cplx xi, double margin = 1e-8);

/// 2 s^2 / (2 s c + c^2 - 2 c), the display without the c^2 factor in the
/// numerator.  Kept for the erratum record; it does not lie on the variety.
cplx segre2_printed(cplx zeta, cplx xi, double margin = 1e-8);

/// 2 / (2 c - c^2).
cplx segre2_partner_tau(cplx xi, double margin = 1e-8);

/// Numeric rank of the complex Jacobian of (z, chi) -> (z, w0) at the given
/// point, singular values thresholded at sv_tol.
int segre2_rank(cplx zeta, cplx xi, double h = 1e-5, double sv_tol = 1e-8);

/// Linear coefficient 4 i (s - 1) s^2 / (2 s - 1)^2 of w0 in chi - 1.
cplx desing_coefficient(cplx zeta);

/// Corrected: leading term segre1 and chi - 1 = coef * u, which gives
/// t = u + O(u^2).  Printed: leading term 2 z^{2i} / (2 z^i) and the u and phi
/// displays exactly as printed.
enum class DesingForm { Corrected, Printed };

/// t = (w - leading term) / coef^2.  Throws DesingularizationCenter when
/// |z^i - 1| < margin.
cplx desing_forward(cplx zeta, cplx w, DesingForm form = DesingForm::Corrected, double margin = 1e-6);

/// Closed form u = phi(z, t).
cplx desing_phi(cplx zeta, cplx t, DesingForm form = DesingForm::Corrected, double margin = 1e-6);

/// xi = log chi for a given u (inverse of the u display).
cplx desing_xi_from_u(cplx zeta, cplx u, DesingForm form = DesingForm::Corrected, double margin = 1e-6);

}  // namespace wormcr
