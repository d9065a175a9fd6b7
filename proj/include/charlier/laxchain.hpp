#pragma once

#include <optional>
#include <utility>

#include "charlier/bigreal.hpp"
#include "charlier/measures.hpp"
#include "charlier/oracle.hpp"
#include "charlier/report.hpp"

namespace charlier::laxchain {

// State of the forward recursion at index n: x = a_n^2, b = b_n and
// b_prev = b_{n-1} (absent at n = 0).
struct DiscreteState {
    long n = 0;
    BigReal x;
    BigReal b;
    std::optional<BigReal> b_prev;
};

// Weights (c1, c2) of the lattice inside the one-parameter family
//   b0 = sqrt(a) (c1 I_beta + c2 I_-beta) / (c1 I_{beta-1} + c2 I_{1-beta}),  z = 2 sqrt(a):
// N -> (1, 0), shifted -> (0, 1), bi-lattice -> (1, tau).
std::pair<BigReal, BigReal> bessel_mixing(const MeasureSpec& spec, Precision prec);

// The family above for arbitrary real (c1, c2). Throws DomainError when the
// denominator vanishes to working precision.
BigReal bessel_ratio_b0(const BigReal& a, const BigReal& beta, const BigReal& c1, const BigReal& c2,
                        Precision prec);

BigReal initial_b0(const MeasureSpec& spec, Precision prec);

// One step of
//   x_{n+1} = a (a + n(beta-n-1) + (1+2n-beta-b_n) b_n - x_n) / (a - x_n),
//   b_{n+1} = a(n+1)/x_{n+1} - b_n + (n+1) - beta.
// Throws SingularityError when |x_n - a| or |x_{n+1}| falls below
// 2^(-prec/2) a, prec being the working precision of the inputs.
DiscreteState step(const BigReal& a, const BigReal& beta, const DiscreteState& state);

// Iterates `step` from (x_0 = 0, b_0 = initial_b0). The recursion is
// forward-unstable: it runs at prec + 40 n_max bits and is compared against
// a second run with 64 more bits; disagreement beyond 2^-prec raises
// PrecisionError.
RecurrenceTable recurrence_forward(const MeasureSpec& spec, long n_max, Precision prec);

// Residuals of
//   (1) b_n + b_{n-1} - n + beta - a n / a_n^2        for 1 <= n <= n_max
//   (2) (a_{n+1}^2 - a)(a_n^2 - a) - a (b_n - n)(b_n - n + beta - 1)   for 0 <= n < n_max
// Never throws on failing residuals; the report carries the outcome.
VerificationReport check_discrete_residuals(const RecurrenceTable& table, const MeasureSpec& spec,
                                            const BigReal& tol);
// Tolerance 2^(-prec/2) at the table precision.
VerificationReport check_discrete_residuals(const RecurrenceTable& table, const MeasureSpec& spec);

} // namespace charlier::laxchain
