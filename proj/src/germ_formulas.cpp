// Transcriptions of the germ families H1-H4.  Notation follows the source:
// s = z^i, s2 = z^{2i}, K = xi^2 + rho^2, c = xi + i rho, cb = xi - i rho.
// Each block is transcribed term by term in the printed order.

#include "germ_formulas.hpp"

#include "wormcr/errors.hpp"

namespace wormcr::detail {
namespace {

constexpr cplx I{0.0, 1.0};

template <typename T>
T sq(T v) {
    return v * v;
}

GermTerms h1_terms(const std::vector<double>& p, cplx s, cplx w) {
    const double mu = p[0], nu = p[1], xi = p[2], rh = p[3], sg = p[4], ph = p[5], ps = p[6];
    const cplx s2 = s * s;
    const double K = xi * xi + rh * rh;
    const cplx c{xi, rh};
    const cplx cb{xi, -rh};

    // N_{f_1}
    const cplx nf =
        w * (mu * c *
                 (-4.0 * s * (xi + sg - I * (rh + ph)) + nu * (xi + 2.0 * sg - I * (2.0 * ph + rh)) +
                  2.0 * (2.0 * s - 1.0) * (rh + I * xi) * (2.0 * rh + ps)) -
             2.0 * I * sq(mu) * (2.0 * s - 1.0) * (K + xi * sg + rh * ph) +
             sq(nu) * ((4.0 * s + 2.0) * (xi * ph - rh * sg) + I * K) - 4.0 * I * (2.0 * s - 1.0) * sq(K) +
             2.0 * nu * K * (2.0 * s * (rh + ps - I * xi) - ps + 2.0 * I * xi)) +
        4.0 * I * s2 *
            (sq(mu) * (K + xi * sg + rh * ph) - mu * nu * c * (rh + ph + I * (xi + sg)) -
             (mu - I * nu) * K * (2.0 * rh + ps) + 2.0 * sq(K) + I * sq(nu) * (xi * ps - rh * sg));

    // D_{f_1}
    const cplx df =
        w * (sq(mu) * ((s - 1.0) * (-nu * K + 2.0 * I * (K + xi * sg + rh * ph))) +
             mu * c *
                 (nu * (4.0 * s * (xi + sg + I * (rh + ph)) - 2.0 * I * (2.0 * s - 1.0) * K + xi + 2.0 * sg +
                        I * (rh + ph)) +
                  2.0 * (2.0 * s - 1.0) * (rh + I * xi) * (2.0 * rh + ps)) -
             nu * nu * nu * (s - 2.0) * K +
             sq(nu) * (-4.0 * s * (K * c - xi * ph + rh * sg) + 2.0 * K * (2.0 * xi + I * (2.0 * rh + 1.0)) +
                       2.0 * (xi * ph + rh * sg)) +
             2.0 * nu * K * (2.0 * s * (rh + ps - I * xi) + 2.0 * I * xi - ps) - 4.0 * I * (2.0 * s - 1.0) * sq(K)) +
        4.0 * s2 *
            (I * sq(mu) * (K + xi * sg + rh * ph) +
             mu * c * (nu * (xi + sg + I * (K - rh - ph)) - I * cb * (2.0 * rh + ps)) +
             sq(nu) * (K * c + rh * sg - xi * ph) - nu * K * (2.0 * rh + ps) + 2.0 * I * sq(K));

    // N_{g_1} = -2i Q^2
    const cplx q =
        w * (sq(mu) * (I * nu * (s - 1.0) * K - 2.0 * (2.0 * s - 1.0) * (K + ph * rh + xi * sg)) +
             mu * c *
                 (nu * ((4.0 * s - 1.0) * c - 2.0 * (2.0 * s - 1.0) * (K - I * sg - ph)) +
                  2.0 * (2.0 * s - 1.0) * cb * (2.0 * rh + ps)) +
             I * nu * nu * nu * (s - 1.0) * K + sq(nu) * (2.0 * I * (2.0 * s - 1.0) * (K * c - xi * ph + rh * sg) + K) -
             2.0 * nu * K * (2.0 * s * (xi + I * (rh + ps)) - 2.0 * xi - I * ps) - 4.0 * (2.0 * s - 1.0) * sq(K)) +
        4.0 * s2 *
            (sq(mu) * (K + xi * sg + rh * ph) + mu * c * (nu * (K - rh - ph - I * (xi + sg)) - cb * (2.0 * rh + ps)) -
             I * sq(nu) * (K * c - xi * ph + rh * sg) + I * nu * K * (2.0 * rh + ps) + 2.0 * sq(K));
    const cplx ng = -2.0 * I * sq(q);

    // D_{g_1} = A * B, both factors as printed
    const double nu2 = nu * nu, nu3 = nu2 * nu, nu4 = nu2 * nu2;
    const cplx a =
        2.0 * s2 *
            (-I * K * nu4 - 2.0 * (2.0 * K * c - ph * xi + rh * sg) * nu2 + mu * mu * mu * K * nu +
             2.0 * K * (2.0 * rh + ps) * nu - 4.0 * I * sq(K) - I * sq(mu) * ((nu2 + 2.0) * K + 2.0 * sg * xi + 2.0 * ph * rh) +
             mu * (rh - I * xi) *
                 ((I * xi + rh) * nu3 + 2.0 * (2.0 * K - (ph + rh) - I * (xi + sg)) * nu - 2.0 * cb * (2.0 * rh + ps))) -
        w * (-I * (2.0 * s - 1.0) * K * nu4 - 2.0 * (s - 1.0) * K * nu3 +
             (-2.0 * (2.0 * s - 1.0) * (2.0 * K * c - ph * xi - rh * sg) + I * K) * nu2 +
             (2.0 * s - 1.0) * mu * mu * mu * K * nu + 2.0 * K * (2.0 * (rh + ps - I * xi) * s + 2.0 * I * xi - ps) * nu -
             4.0 * I * (2.0 * s - 1.0) * sq(K) +
             sq(mu) * ((-I * (2.0 * s - 1.0) * (nu2 + 2.0) - 2.0 * nu * (s - 1.0)) * xi * xi -
                       2.0 * I * (2.0 * s - 1.0) * sg * xi +
                       rh * (-2.0 * s * (nu * rh + I * (nu2 * rh + 2.0 * rh + 2.0 * ph)) + 2.0 * nu * rh +
                             I * (2.0 * rh + nu2 * rh + 2.0 * ph))) +
             mu * c *
                 ((2.0 * s - 1.0) * cb * nu3 -
                  ((4.0 * s - 1.0) * cb + 2.0 * (2.0 * s - 1.0) * (sg - I * (ph + 2.0 * K))) * nu +
                  2.0 * (2.0 * s - 1.0) * (I * xi + rh) * (2.0 * rh + ps)));
    const cplx b =
        4.0 * s2 *
            ((K + xi * sg + rh * ph) * sq(mu) - c * (nu * (rh + ph + I * (sg + xi)) + cb * (2.0 * rh + ps)) * mu +
             I * (-2.0 * I * sq(sq(xi)) + (2.0 * rh * (nu - 2.0 * I * rh) + nu * ps) * sq(xi) + nu2 * ph * xi +
                  rh * (-2.0 * I * rh * rh * rh + nu * (2.0 * rh + ps) * rh - nu2 * sg))) +
        w * (-2.0 * (2.0 * s - 1.0) * (K + xi * sg + rh * ph) * sq(mu) +
             c *
                 (4.0 * nu * (I * xi + rh + I * sg + ph) * s - I * nu * xi - nu * (rh + 2.0 * I * sg + 2.0 * ph) +
                  2.0 * (2.0 * s - 1.0) * cb * (2.0 * rh + ps)) *
                 mu -
             4.0 * (2.0 * s - 1.0) * sq(K) +
             nu2 * (4.0 * I * (rh * sg - xi * ph) * s + K - 2.0 * I * (rh * sg - xi * ph)) +
             2.0 * nu * K * (-2.0 * (xi + I * (rh + ps)) * s + 2.0 * xi + I * ps));

    return {nf, df, ng, a * b};
}

GermTerms h2_terms(const std::vector<double>& p, Formula formula, cplx s, cplx w) {
    const double mu = p[0], xi = p[1], rh = p[2], sg = p[3], ph = p[4], ps = p[5];
    const cplx s2 = s * s;
    const double K = xi * xi + rh * rh;
    const cplx c{xi, rh};
    const double mu2 = mu * mu, mu3 = mu2 * mu, mu4 = mu2 * mu2;

    // D_{f_2}; also the squared factor of N_{g_2}
    const cplx df = w * (mu3 * (s - 1.0) * K + mu2 * (2.0 * I * (2.0 * s - 1.0) * (K * c + rh * sg - xi * ph) + K) +
                         2.0 * mu * K * (2.0 * s * (-I * xi + rh + I * ps) - 2.0 * rh - I * ps) -
                         4.0 * (2.0 * s - 1.0) * sq(K)) -
                    4.0 * I * s2 * (mu2 * (K * c - xi * ph + rh * sg) - mu * K * (2.0 * xi - ps) + 2.0 * I * sq(K));

    // First factor of D_{g_2}
    const cplx dg1 = w * (mu2 * (2.0 * I * (2.0 * s - 1.0) * (rh * sg - xi * ph) + K) +
                          2.0 * mu * K * (2.0 * s * (rh + I * (ps - xi)) - 2.0 * rh - I * ps) -
                          4.0 * (2.0 * s - 1.0) * sq(K)) +
                     4.0 * s2 * (I * mu2 * (xi * ph - rh * sg) + I * mu * K * (2.0 * xi - ps) + 2.0 * sq(K));

    // Second factor of D_{g_2}
    const cplx dg2 = w * (-mu4 * (2.0 * s - 1.0) * K + 2.0 * mu3 * (s - 1.0) * K +
                          mu2 * (2.0 * I * (2.0 * s - 1.0) * (2.0 * K * c - xi * ph + rh * sg) + K) +
                          2.0 * mu * K * (2.0 * s * (rh + I * (ps - xi)) - 2.0 * rh - I * ps) -
                          4.0 * (2.0 * s - 1.0) * sq(K)) +
                     2.0 * s2 *
                         (mu4 * K - 2.0 * I * mu2 * (2.0 * K * c - xi * ph + rh * sg) + 2.0 * I * mu * K * (2.0 * xi - ps) +
                          4.0 * sq(K));

    cplx nf;
    if (formula == Formula::Printed) {
        // N_{f_2} as printed
        nf = w * (mu2 * (4.0 * I * s * (K + (2.0 * I - 1.0) * (rh * sg - xi * ph))) +
                  2.0 * mu * K * (2.0 * s * (rh + I * (ps - xi)) - 2.0 * rh - I * ps) - 4.0 * (2.0 * s - 1.0) * sq(K)) +
             4.0 * s2 * (I * mu2 * (xi * ph - rh * sg) + I * mu * K * (2.0 * xi - ps) + 2.0 * sq(K));
    } else {
        // Same pattern as H3 and H4, where g = 2 D_f^2 / (N_f X): the numerator
        // of f is the first factor of D_{g_2}.
        nf = dg1;
    }
    return {nf, df, 2.0 * sq(df), dg1 * dg2};
}

GermTerms h3_terms(const std::vector<double>& p, cplx s, cplx w) {
    const double mu = p[0], nu = p[1], ps = p[2];
    const cplx s2 = s * s;
    const cplx nf = w * (4.0 * ps * s - I * nu - 2.0 * ps) - 4.0 * ps * s2;
    const cplx df = w * (4.0 * ps * s + nu * nu * (s - 1.0) - I * nu * (1.0 + mu * (s - 1.0)) - 2.0 * ps) - 4.0 * ps * s2;
    const cplx ng =
        -(2.0 * I * sq(w * (-4.0 * ps * s - nu * nu * (s - 1.0) + I * nu * (1.0 + mu * (s - 1.0)) + 2.0 * ps) + 4.0 * ps * s2));
    const cplx dg = (w * (-4.0 * ps * s + I * nu + 2.0 * ps) + 4.0 * ps * s2) *
                    (w * (-(mu - 1.0) * nu * (2.0 * mu * s - mu + 1.0) - nu * nu * nu * (2.0 * s - 1.0) +
                          2.0 * I * nu * nu * (s - 1.0) + 2.0 * I * ps * (2.0 * s - 1.0)) +
                     2.0 * s2 * (mu * mu * nu + nu * nu * nu - 2.0 * I * ps));
    return {nf, df, ng, dg};
}

GermTerms h4_terms(const std::vector<double>& p, cplx s, cplx w) {
    const double mu = p[0], ps = p[1];
    const cplx s2 = s * s;
    const cplx nf = w * (2.0 * I * ps * (2.0 * s - 1.0) - mu) - 4.0 * I * ps * s2;
    const cplx df = w * (2.0 * I * ps * (2.0 * s - 1.0) - mu * mu * (s - 1.0) - mu) - 4.0 * I * ps * s2;
    const cplx ng = 2.0 * sq(w * (-2.0 * I * ps * (2.0 * s - 1.0) + mu * mu * (s - 1.0) + mu) + 4.0 * I * ps * s2);
    const cplx dg = (w * (-2.0 * I * ps * (2.0 * s - 1.0) + mu) + 4.0 * I * ps * s2) *
                    (w * (-2.0 * I * ps * (2.0 * s - 1.0) + mu * mu * (-2.0 * (mu - 1.0) * s + mu - 2.0) + mu) +
                     2.0 * s2 * (mu * mu * mu + 2.0 * I * ps));
    return {nf, df, ng, dg};
}

}  // namespace

GermTerms germ_terms(MapTag tag, const std::vector<double>& params, Formula formula, cplx s, cplx w) {
    switch (tag) {
        case MapTag::H1: return h1_terms(params, s, w);
        case MapTag::H2: return h2_terms(params, formula, s, w);
        case MapTag::H3: return h3_terms(params, s, w);
        case MapTag::H4: return h4_terms(params, s, w);
        default: throw PreconditionError("germ_terms: not a germ family");
    }
}

}  // namespace wormcr::detail
