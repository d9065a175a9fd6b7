#include "charlier/bigreal.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <string>

namespace charlier {

namespace {

Precision checked(Precision prec)
{
    if (prec < kMinPrecision) {
        throw DomainError("precision must be at least 64 bits, got " + std::to_string(prec));
    }
    if (prec > MPFR_PREC_MAX) {
        throw DomainError("precision exceeds MPFR_PREC_MAX");
    }
    return prec;
}

Precision joint(const BigReal& a, const BigReal& b) { return std::max(a.prec(), b.prec()); }

template <class Op>
BigReal unary(const BigReal& x, Op op)
{
    BigReal r(x.prec());
    op(r.get(), x.get(), MPFR_RNDN);
    return r;
}

} // namespace

BigReal::BigReal(Precision prec)
{
    mpfr_init2(v_, checked(prec));
    mpfr_set_zero(v_, 1);
}

BigReal::BigReal(double value, Precision prec) : BigReal(prec)
{
    mpfr_set_d(v_, value, MPFR_RNDN);
}

BigReal::BigReal(const BigReal& other)
{
    mpfr_init2(v_, other.prec());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept
{
    // Leave `other` valid but minimal so its destructor stays cheap.
    mpfr_init2(v_, kMinPrecision);
    mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other)
{
    if (this != &other) {
        mpfr_set_prec(v_, other.prec());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept
{
    mpfr_swap(v_, other.v_);
    return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal BigReal::parse(std::string_view text, Precision prec)
{
    BigReal r(prec);
    const std::string s(text);
    char* end = nullptr;
    if (!s.empty()) {
        mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    }
    if (s.empty() || end == s.c_str() || *end != '\0') {
        throw DomainError("not a decimal number: '" + s + "'");
    }
    if (!r.is_finite()) {
        throw DomainError("non-finite value: '" + s + "'");
    }
    return r;
}

BigReal BigReal::pi(Precision prec)
{
    BigReal r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigReal BigReal::pow2(long e, Precision prec)
{
    BigReal r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
}

BigReal BigReal::with_prec(Precision prec) const
{
    BigReal r(prec);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
}

long BigReal::exponent() const
{
    if (is_zero()) {
        return mpfr_get_emin();
    }
    return mpfr_get_exp(v_);
}

std::string BigReal::to_string(int digits) const
{
    if (mpfr_nan_p(v_)) {
        return "nan";
    }
    if (mpfr_inf_p(v_)) {
        return sign() > 0 ? "inf" : "-inf";
    }
    if (is_zero()) {
        return "0";
    }
    mpfr_exp_t exp10 = 0;
    const std::size_t n = digits > 0 ? static_cast<std::size_t>(digits) : 0;
    std::unique_ptr<char, void (*)(char*)> raw(mpfr_get_str(nullptr, &exp10, 10, n, v_, MPFR_RNDN),
                                              mpfr_free_str);
    std::string mant(raw.get());
    std::string out;
    if (mant.front() == '-') {
        out.push_back('-');
        mant.erase(0, 1);
    }
    // Trailing zeros carry no information.
    while (mant.size() > 1 && mant.back() == '0') {
        mant.pop_back();
    }
    out.push_back(mant.front());
    if (mant.size() > 1) {
        out.push_back('.');
        out.append(mant, 1, std::string::npos);
    }
    out.push_back('e');
    out += std::to_string(static_cast<long>(exp10) - 1);
    return out;
}

BigReal& BigReal::operator+=(const BigReal& rhs)
{
    if (rhs.prec() > prec()) {
        mpfr_prec_round(v_, rhs.prec(), MPFR_RNDN);
    }
    mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator-=(const BigReal& rhs)
{
    if (rhs.prec() > prec()) {
        mpfr_prec_round(v_, rhs.prec(), MPFR_RNDN);
    }
    mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator*=(const BigReal& rhs)
{
    if (rhs.prec() > prec()) {
        mpfr_prec_round(v_, rhs.prec(), MPFR_RNDN);
    }
    mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator/=(const BigReal& rhs)
{
    if (rhs.prec() > prec()) {
        mpfr_prec_round(v_, rhs.prec(), MPFR_RNDN);
    }
    mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator+=(long rhs)
{
    mpfr_add_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator-=(long rhs)
{
    mpfr_sub_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator*=(long rhs)
{
    mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator/=(long rhs)
{
    mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
}

BigReal BigReal::operator-() const { return unary(*this, mpfr_neg); }

BigReal operator+(const BigReal& a, const BigReal& b)
{
    BigReal r(joint(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator-(const BigReal& a, const BigReal& b)
{
    BigReal r(joint(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator*(const BigReal& a, const BigReal& b)
{
    BigReal r(joint(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator/(const BigReal& a, const BigReal& b)
{
    BigReal r(joint(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator+(const BigReal& a, long b)
{
    BigReal r(a.prec());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigReal operator-(const BigReal& a, long b)
{
    BigReal r(a.prec());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigReal operator*(const BigReal& a, long b)
{
    BigReal r(a.prec());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigReal operator/(const BigReal& a, long b)
{
    BigReal r(a.prec());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

BigReal operator+(long a, const BigReal& b) { return b + a; }

BigReal operator-(long a, const BigReal& b)
{
    BigReal r(b.prec());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator*(long a, const BigReal& b) { return b * a; }

BigReal operator/(long a, const BigReal& b)
{
    BigReal r(b.prec());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

BigReal abs(const BigReal& x) { return unary(x, mpfr_abs); }
BigReal sqrt(const BigReal& x) { return unary(x, mpfr_sqrt); }
BigReal exp(const BigReal& x) { return unary(x, mpfr_exp); }
BigReal log(const BigReal& x) { return unary(x, mpfr_log); }
BigReal log2(const BigReal& x) { return unary(x, mpfr_log2); }
BigReal sin(const BigReal& x) { return unary(x, mpfr_sin); }
BigReal cos(const BigReal& x) { return unary(x, mpfr_cos); }
BigReal cosh(const BigReal& x) { return unary(x, mpfr_cosh); }
BigReal sinh(const BigReal& x) { return unary(x, mpfr_sinh); }
BigReal square(const BigReal& x) { return unary(x, mpfr_sqr); }
BigReal floor(const BigReal& x)
{
    BigReal r(x.prec());
    mpfr_floor(r.get(), x.get());
    return r;
}

BigReal pow(const BigReal& base, const BigReal& e)
{
    BigReal r(joint(base, e));
    mpfr_pow(r.get(), base.get(), e.get(), MPFR_RNDN);
    return r;
}

BigReal pow(const BigReal& base, long e)
{
    BigReal r(base.prec());
    mpfr_pow_si(r.get(), base.get(), e, MPFR_RNDN);
    return r;
}

BigReal ldexp(const BigReal& x, long e)
{
    BigReal r(x.prec());
    mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
    return r;
}

const BigReal& max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
const BigReal& min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }

bool close_rel(const BigReal& a, const BigReal& b, const BigReal& tol)
{
    BigReal scale = abs(b);
    if (scale < 1) {
        scale = BigReal(1, b.prec());
    }
    return abs(a - b) <= tol * scale;
}

std::ostream& operator<<(std::ostream& os, const BigReal& x) { return os << x.to_string(20); }

} // namespace charlier
