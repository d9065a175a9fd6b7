#pragma once

#include <mpfr.h>

#include <concepts>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include "charlier/errors.hpp"

namespace charlier {

using Precision = mpfr_prec_t;

inline constexpr Precision kMinPrecision = 64;
inline constexpr Precision kGuardBits = 32;

// Arbitrary-precision real number backed by an MPFR value.
//
// Every value carries its own working precision in bits. Binary
// operations round to nearest at the larger of the two operand
// precisions; operations with machine integers use the precision of the
// BigReal operand.
class BigReal {
public:
    explicit BigReal(Precision prec = kMinPrecision);

    template <std::integral I>
    BigReal(I value, Precision prec) : BigReal(prec)
    {
        if constexpr (std::is_signed_v<I>) {
            mpfr_set_si(v_, static_cast<long>(value), MPFR_RNDN);
        } else {
            mpfr_set_ui(v_, static_cast<unsigned long>(value), MPFR_RNDN);
        }
    }

    BigReal(double value, Precision prec);

    BigReal(const BigReal& other);
    BigReal(BigReal&& other) noexcept;
    BigReal& operator=(const BigReal& other);
    BigReal& operator=(BigReal&& other) noexcept;
    ~BigReal();

    // Parses a decimal (or scientific) string, rounding once to `prec`.
    static BigReal parse(std::string_view text, Precision prec);
    static BigReal pi(Precision prec);
    // 2^e at the given precision.
    static BigReal pow2(long e, Precision prec);

    [[nodiscard]] Precision prec() const { return mpfr_get_prec(v_); }
    // Copy rounded (or exactly widened) to `prec`.
    [[nodiscard]] BigReal with_prec(Precision prec) const;

    [[nodiscard]] bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    [[nodiscard]] bool is_finite() const { return mpfr_number_p(v_) != 0; }
    [[nodiscard]] bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    [[nodiscard]] int sign() const { return mpfr_sgn(v_); }
    // Binary exponent e with 0.5 <= |x| 2^-e < 1; very negative for zero.
    [[nodiscard]] long exponent() const;
    [[nodiscard]] double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    [[nodiscard]] long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    // Scientific notation. With digits == 0 the shortest string that reads
    // back to the same value at this precision is produced.
    [[nodiscard]] std::string to_string(int digits = 0) const;

    [[nodiscard]] mpfr_srcptr get() const { return v_; }
    [[nodiscard]] mpfr_ptr get() { return v_; }

    BigReal& operator+=(const BigReal& rhs);
    BigReal& operator-=(const BigReal& rhs);
    BigReal& operator*=(const BigReal& rhs);
    BigReal& operator/=(const BigReal& rhs);
    BigReal& operator+=(long rhs);
    BigReal& operator-=(long rhs);
    BigReal& operator*=(long rhs);
    BigReal& operator/=(long rhs);

    BigReal operator-() const;

    friend BigReal operator+(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, const BigReal& b);

    friend BigReal operator+(const BigReal& a, long b);
    friend BigReal operator-(const BigReal& a, long b);
    friend BigReal operator*(const BigReal& a, long b);
    friend BigReal operator/(const BigReal& a, long b);
    friend BigReal operator+(long a, const BigReal& b);
    friend BigReal operator-(long a, const BigReal& b);
    friend BigReal operator*(long a, const BigReal& b);
    friend BigReal operator/(long a, const BigReal& b);

    friend int compare(const BigReal& a, const BigReal& b) { return mpfr_cmp(a.v_, b.v_); }
    friend int compare(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b); }

private:
    mpfr_t v_;
};

inline bool operator==(const BigReal& a, const BigReal& b) { return compare(a, b) == 0; }
inline bool operator<(const BigReal& a, const BigReal& b) { return compare(a, b) < 0; }
inline bool operator>(const BigReal& a, const BigReal& b) { return compare(a, b) > 0; }
inline bool operator<=(const BigReal& a, const BigReal& b) { return compare(a, b) <= 0; }
inline bool operator>=(const BigReal& a, const BigReal& b) { return compare(a, b) >= 0; }
inline bool operator==(const BigReal& a, long b) { return compare(a, b) == 0; }
inline bool operator<(const BigReal& a, long b) { return compare(a, b) < 0; }
inline bool operator>(const BigReal& a, long b) { return compare(a, b) > 0; }
inline bool operator<=(const BigReal& a, long b) { return compare(a, b) <= 0; }
inline bool operator>=(const BigReal& a, long b) { return compare(a, b) >= 0; }
// Mixing with floating-point would narrow through the long overloads above.
template <std::floating_point F> bool operator==(const BigReal&, F) = delete;
template <std::floating_point F> bool operator<(const BigReal&, F) = delete;
template <std::floating_point F> bool operator>(const BigReal&, F) = delete;
template <std::floating_point F> bool operator<=(const BigReal&, F) = delete;
template <std::floating_point F> bool operator>=(const BigReal&, F) = delete;
template <std::floating_point F> BigReal operator+(const BigReal&, F) = delete;
template <std::floating_point F> BigReal operator-(const BigReal&, F) = delete;
template <std::floating_point F> BigReal operator*(const BigReal&, F) = delete;
template <std::floating_point F> BigReal operator/(const BigReal&, F) = delete;
template <std::floating_point F> BigReal operator+(F, const BigReal&) = delete;
template <std::floating_point F> BigReal operator-(F, const BigReal&) = delete;
template <std::floating_point F> BigReal operator*(F, const BigReal&) = delete;
template <std::floating_point F> BigReal operator/(F, const BigReal&) = delete;

BigReal abs(const BigReal& x);
BigReal sqrt(const BigReal& x);
BigReal exp(const BigReal& x);
BigReal log(const BigReal& x);
BigReal log2(const BigReal& x);
BigReal sin(const BigReal& x);
BigReal cos(const BigReal& x);
BigReal cosh(const BigReal& x);
BigReal sinh(const BigReal& x);
BigReal pow(const BigReal& base, const BigReal& e);
BigReal pow(const BigReal& base, long e);
BigReal square(const BigReal& x);
// x * 2^e, exact.
BigReal ldexp(const BigReal& x, long e);
BigReal floor(const BigReal& x);
const BigReal& max(const BigReal& a, const BigReal& b);
const BigReal& min(const BigReal& a, const BigReal& b);

// |a - b| <= tol * max(1, |b|)
bool close_rel(const BigReal& a, const BigReal& b, const BigReal& tol);

// Writes to_string(20).
std::ostream& operator<<(std::ostream& os, const BigReal& x);

} // namespace charlier
