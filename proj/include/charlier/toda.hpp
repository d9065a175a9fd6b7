#pragma once

#include <utility>
#include <vector>

#include "charlier/bigreal.hpp"
#include "charlier/measures.hpp"

namespace charlier::toda {

// Finite-difference probe of the flow in the parameter a.
struct TodaProbe {
    MeasureSpec spec;
    long n = 0;
    BigReal a_center;
    BigReal h; // step of the 5-point stencil
    Precision prec = 512;
};

// Residuals at one index n, all derivatives taken by 5-point central
// differences of Hankel-oracle data at a_center + k h, k = -2..2.
struct FlowResiduals {
    long n = 0;
    BigReal toda_a2; // d(a_n^2)/da - (a_n^2/a)(b_n - b_{n-1})
    BigReal toda_b;  // d(b_n)/da - (a_{n+1}^2 - a_n^2)/a
    BigReal xprime;  // d(a_n^2)/da - ((beta - n + 2 b_n) a_n^2 - a n)/a
    BigReal bprime;  // d(b_n)/da - closed-form right-hand side in (a, b_n, a_n^2)
};

// Residuals for every n in [0, n_max] from one set of five oracle tables.
// Throws DomainError for h <= 0 or a_center - 2h <= 0 and PrecisionError
// when h < 2^(-prec/4), where oracle rounding would swamp the stencil.
std::vector<FlowResiduals> flow_residuals(const MeasureSpec& spec, const BigReal& a_center, const BigReal& h,
                                          long n_max, Precision prec);

std::pair<BigReal, BigReal> toda_residual(const TodaProbe& probe);
BigReal xprime_residual(const TodaProbe& probe);
BigReal bprime_residual(const TodaProbe& probe);

// The same flow in t = log a, where d/dt = a d/da:
//   (a_n^2)_t = a_n^2 (b_n - b_{n-1}),  (b_n)_t = a_{n+1}^2 - a_n^2.
std::pair<BigReal, BigReal> toda_t_residual(const TodaProbe& probe);

// d b_0 / da from the Bessel derivative identities
// I_nu'(z) = I_{nu+1}(z) + (nu/z) I_nu(z), no differencing involved.
BigReal b0_derivative(const MeasureSpec& spec, const BigReal& a, Precision prec);

// a^2 b' + a b^2 - a(1 - beta) b - a^2 for given b and b'.
BigReal riccati_value(const BigReal& a, const BigReal& beta, const BigReal& b, const BigReal& b_prime);

// Riccati residual of the lattice's Bessel-ratio b_0 at parameter a.
BigReal riccati_b0_residual(const MeasureSpec& spec, const BigReal& a, Precision prec);

} // namespace charlier::toda
