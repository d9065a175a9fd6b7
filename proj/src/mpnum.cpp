#include "charlier/mpnum.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace charlier::mpnum {

namespace {

// Number of Stirling correction terms so that the first omitted term at
// argument y is below 2^-bits. Estimated in double precision from
// |B_2k| ~ 2 (2k)! / (2 pi)^(2k).
long stirling_terms(double y, Precision bits)
{
    const double target = -static_cast<double>(bits) * std::log(2.0);
    for (long k = 1;; ++k) {
        const double two_k = 2.0 * static_cast<double>(k);
        const double log_term = std::log(2.0) + std::lgamma(two_k + 1.0) - two_k * std::log(2.0 * M_PI)
                                - std::log(two_k * (two_k - 1.0)) - (two_k - 1.0) * std::log(y);
        if (log_term < target) {
            return k;
        }
        if (k > 100000) {
            throw PrecisionError("Stirling series does not reach the requested precision");
        }
    }
}

} // namespace

std::vector<BigReal> bernoulli_even(long n, Precision prec)
{
    // Tangent numbers T_1..T_n (Brent & Harvey), exact integers.
    std::vector<mpz_class> t(static_cast<std::size_t>(n) + 1);
    if (n >= 1) {
        t[1] = 1;
    }
    for (long k = 2; k <= n; ++k) {
        t[k] = (k - 1) * t[k - 1];
    }
    for (long k = 2; k <= n; ++k) {
        for (long j = k; j <= n; ++j) {
            t[j] = (j - k) * t[j - 1] + (j - k + 2) * t[j];
        }
    }

    std::vector<BigReal> b;
    b.reserve(static_cast<std::size_t>(n) + 1);
    b.emplace_back(1, prec);
    for (long k = 1; k <= n; ++k) {
        // B_2k = (-1)^(k-1) 2k T_k / (2^2k (2^2k - 1))
        mpz_class num = 2 * k * t[k];
        if (k % 2 == 0) {
            num = -num;
        }
        mpz_class den = 1;
        den <<= static_cast<mp_bitcnt_t>(2 * k);
        den = den * (den - 1);
        mpq_class q(num, den);
        q.canonicalize();
        BigReal v(prec);
        mpfr_set_q(v.get(), q.get_mpq_t(), MPFR_RNDN);
        b.push_back(std::move(v));
    }
    return b;
}

BigReal gamma(const BigReal& x, Precision prec)
{
    if (!(x > 0)) {
        throw DomainError("gamma: argument must be positive, got " + x.to_string(20));
    }

    // Shift the argument to y >= prec so a modest number of Stirling terms
    // suffices; the shift product adds about log2(shift) bits of rounding.
    const long target_arg = static_cast<long>(prec) + 32;
    long shift = 0;
    const double xd = x.to_double();
    if (xd < static_cast<double>(target_arg)) {
        shift = static_cast<long>(std::ceil(static_cast<double>(target_arg) - xd));
    }
    const Precision work = prec + 2 * kGuardBits + static_cast<Precision>(std::log2(2.0 + static_cast<double>(shift)))
                           + static_cast<Precision>(std::log2(2.0 + xd + static_cast<double>(shift))) + 8;

    BigReal y = x.with_prec(work);
    BigReal shift_product(1, work);
    for (long i = 0; i < shift; ++i) {
        shift_product *= y;
        y += 1;
    }

    const long terms = stirling_terms(y.to_double(), work);
    const std::vector<BigReal> bern = bernoulli_even(terms + 1, work);

    // log Gamma(y) = (y - 1/2) log y - y + log(2 pi)/2 + sum B_2k / (2k (2k-1) y^(2k-1))
    BigReal log_gamma = (y - BigReal(0.5, work)) * log(y) - y + log(BigReal::pi(work) * 2) / 2;
    const BigReal y_sq = square(y);
    BigReal y_pow = y; // y^(2k-1)
    for (long k = 1; k <= terms; ++k) {
        log_gamma += bern[k] / (y_pow * (2 * k * (2 * k - 1)));
        y_pow *= y_sq;
    }
    // The Stirling remainder for real y > 0 is bounded by the first omitted
    // term, which stirling_terms placed below 2^-work.
    return (exp(log_gamma) / shift_product).with_prec(prec);
}

BigReal pochhammer(const BigReal& beta, long k, Precision prec)
{
    if (k < 0) {
        throw DomainError("pochhammer: k must be nonnegative");
    }
    const Precision work = prec + kGuardBits;
    BigReal result(1, work);
    BigReal factor = beta.with_prec(work);
    for (long i = 0; i < k; ++i) {
        result *= factor;
        factor += 1;
    }
    return result.with_prec(prec);
}

SeriesSum bessel_i_series(const BigReal& nu, const BigReal& z, Precision prec)
{
    if (!(z > 0)) {
        throw DomainError("bessel_i: z must be positive");
    }
    if (!(nu > -1)) {
        throw DomainError("bessel_i_series: order must exceed -1, got " + nu.to_string(20));
    }
    const Precision work = prec + kGuardBits;
    const BigReal nu_w = nu.with_prec(work);
    const BigReal half_z = z.with_prec(work) / 2;
    const BigReal q = square(half_z);

    BigReal term = pow(half_z, nu_w) / gamma(nu_w + 1, work);
    BigReal sum = term;
    const BigReal rel_target = BigReal::pow2(-(static_cast<long>(prec) + 16), work);

    for (long k = 0;; ++k) {
        // Ratio term_{k+1} / term_k. For nu > -1 the ratios decrease
        // monotonically in k, so once below one they bound the whole tail.
        const BigReal ratio = q / ((nu_w + (k + 1)) * (k + 1));
        term *= ratio;
        sum += term;
        const BigReal next_ratio = q / ((nu_w + (k + 2)) * (k + 2));
        if (next_ratio < 1) {
            BigReal tail = term * next_ratio / (1 - next_ratio);
            if (tail <= rel_target * sum) {
                return SeriesSum{sum.with_prec(prec), k + 2, tail.with_prec(prec)};
            }
        }
        if (k > 10'000'000) {
            throw PrecisionError("bessel_i: series failed to converge");
        }
    }
}

BigReal bessel_i(const BigReal& nu, const BigReal& z, Precision prec)
{
    if (!(z > 0)) {
        throw DomainError("bessel_i: z must be positive");
    }
    if (nu > -1) {
        return bessel_i_series(nu, z, prec).partial;
    }
    if (nu.is_integer()) {
        return bessel_i_series(-nu, z, prec).partial;
    }

    // Downward recurrence I_{mu-1} = I_{mu+1} + (2 mu / z) I_mu from the two
    // orders just above -1. For negative mu the two summands can cancel, so
    // the achieved cancellation is measured and the run repeated with more
    // bits when it ate into the guard.
    long steps = 0;
    {
        BigReal mu = nu;
        while (!(mu > -1)) {
            mu += 1;
            ++steps;
        }
    }
    Precision extra = 0;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const Precision work = prec + kGuardBits + extra;
        const BigReal zw = z.with_prec(work);
        BigReal mu = nu.with_prec(work) + steps; // in (-1, 0)
        BigReal upper = bessel_i_series(mu + 1, zw, work).partial;
        BigReal current = bessel_i_series(mu, zw, work).partial;
        long lost = 0;
        for (long s = 0; s < steps; ++s) {
            const BigReal a = upper;
            const BigReal b = mu * 2 / zw * current;
            BigReal next = a + b;
            if (next.is_zero()) {
                lost = static_cast<long>(work);
            } else {
                const long big = std::max(a.exponent(), b.exponent());
                lost = std::max(lost, big - next.exponent());
            }
            upper = std::move(current);
            current = std::move(next);
            mu -= 1;
        }
        if (lost <= kGuardBits / 2) {
            return current.with_prec(prec);
        }
        extra += lost + kGuardBits;
    }
    throw PrecisionError("bessel_i: recurrence cancellation exceeds the precision budget for order "
                         + nu.to_string(20));
}

} // namespace charlier::mpnum
