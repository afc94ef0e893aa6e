#pragma once

#include <vector>

#include "wormcr/branch.hpp"
#include "wormcr/catalog.hpp"

namespace wormcr::detail {

/// f = (nf / df)^i and g = ng / dg for the germ families H1-H4, as functions of
/// s = z^i = e^{i zeta} and w.
struct GermTerms {
    cplx nf;
    cplx df;
    cplx ng;
    cplx dg;
};

GermTerms germ_terms(MapTag tag, const std::vector<double>& params, Formula formula, cplx s, cplx w);

}  // namespace wormcr::detail
