#pragma once

// Univariate dense complex polynomials: evaluation, companion-matrix roots,
// Sylvester resultants (numeric and exact Gaussian-rational).

#include <vector>

#include "fq/exact.hpp"

namespace fq {

// coefficients c[0] + c[1] z + ... + c[d] z^d
using Poly1 = std::vector<cplx>;

cplx poly_eval(const Poly1& p, cplx z);
Poly1 poly_derivative(const Poly1& p);

// all complex roots (degree = trimmed size - 1), via balanced companion matrix
std::vector<cplx> poly_roots(const Poly1& p);

// drop leading coefficients with |c| <= rel_tol * max|c|
Poly1 poly_trim(const Poly1& p, double rel_tol = 1e-13);

cplx sylvester_resultant(const Poly1& a, const Poly1& b);
GaussRat sylvester_resultant_exact(const std::vector<GaussRat>& a,
                                   const std::vector<GaussRat>& b);

}  // namespace fq
