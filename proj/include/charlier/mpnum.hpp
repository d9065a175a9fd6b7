#pragma once

#include <vector>

#include "charlier/bigreal.hpp"

namespace charlier::mpnum {

// Result of a truncated series together with a bound on what was left out.
struct SeriesSum {
    BigReal partial;
    long terms_used = 0;
    BigReal tail_bound; // absolute bound on the omitted remainder
};

// Bernoulli numbers B_0, B_2, ..., B_{2n} (index k holds B_{2k}) computed
// exactly from tangent numbers and rounded once to `prec`.
std::vector<BigReal> bernoulli_even(long n, Precision prec);

// Gamma function for x > 0 with relative error below 2^-prec.
BigReal gamma(const BigReal& x, Precision prec);

// Rising factorial beta (beta+1) ... (beta+k-1) as an explicit product.
BigReal pochhammer(const BigReal& beta, long k, Precision prec);

// Ascending series for I_nu(z), nu > -1, with its tail certificate.
SeriesSum bessel_i_series(const BigReal& nu, const BigReal& z, Precision prec);

// Modified Bessel function of the first kind for real order and z > 0.
// Orders nu <= -1 are reached by the contiguous recurrence from orders in
// (-1, 1]; negative integer orders use I_{-n} = I_n.
BigReal bessel_i(const BigReal& nu, const BigReal& z, Precision prec);

} // namespace charlier::mpnum
