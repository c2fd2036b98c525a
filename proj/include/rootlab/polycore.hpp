// Monic complex polynomials: evaluation, simultaneous root finding,
// coefficient/root conversions, Tschirnhausen form, numeric factor splitting.
#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "rootlab/errors.hpp"

namespace rootlab {

using cplx = std::complex<double>;

// P(Z) = Z^d + a_1 Z^{d-1} + ... + a_d, stored as (a_1, ..., a_d).
struct MonicPolynomial {
    int degree = 0;
    std::vector<cplx> coeffs;

    MonicPolynomial() = default;
    explicit MonicPolynomial(std::vector<cplx> a);

    bool valid() const;
};

struct RootMultiset {
    std::vector<cplx> roots;
    // max |P(root)| over roots, divided by max(1, cauchy_bound)^d.
    double residual = 0.0;
};

struct SplitResult {
    std::vector<MonicPolynomial> factors;
    // max coefficient error of (product of factors) - p
    double coeff_residual = 0.0;
};

cplx eval(const MonicPolynomial& p, cplx z);
cplx eval_derivative(const MonicPolynomial& p, cplx z);

// 2 * max_j |a_j|^{1/j}; every root of p has modulus <= this.
double cauchy_bound(const MonicPolynomial& p);

// Aberth-Ehrlich all-roots iteration. Residual is certified against
// tol * max(1, cauchy_bound)^degree; throws NonConvergence past the budget.
RootMultiset roots(const MonicPolynomial& p, double tol = 1e-12);

// Shift Z -> Z - a_1/d so the Z^{d-1} coefficient vanishes. Returns the
// transformed polynomial (first coefficient exactly zero) and the shift
// -a_1/d. Roots of the result are the roots of p plus a_1/d.
struct Tschirnhausen {
    MonicPolynomial poly;
    cplx shift;
};
Tschirnhausen tschirnhausen(const MonicPolynomial& p);

// a_j = (-1)^j e_j(rs); linear factors multiplied in order of increasing
// modulus to limit cancellation.
MonicPolynomial from_roots(std::vector<cplx> rs);

// Smallest k in {2..d} maximizing |a_k|^{1/k} for a polynomial in
// Tschirnhausen form; nullopt iff all coefficients vanish.
std::optional<int> dominant_index(const MonicPolynomial& p_tilde);

// Factor p by single-linkage clustering of its roots. The linkage threshold
// is gap_factor * tol^{1/d} * max(1, cauchy_bound), the solver's worst-case
// root resolution at a d-fold cluster.
SplitResult split(const MonicPolynomial& p, double gap_factor, double tol = 1e-12);

// Coefficient convolution of two monic polynomials.
MonicPolynomial multiply(const MonicPolynomial& a, const MonicPolynomial& b);

}  // namespace rootlab
