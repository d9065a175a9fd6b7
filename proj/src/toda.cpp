#include "charlier/toda.hpp"

#include "charlier/laxchain.hpp"
#include "charlier/mpnum.hpp"
#include "charlier/oracle.hpp"

namespace charlier::toda {

namespace {

BigReal stencil(const std::vector<BigReal>& f, const BigReal& h)
{
    // f holds samples at -2h, -h, 0, h, 2h.
    return (f[0] - f[4] + 8 * (f[3] - f[1])) / (12 * h);
}

} // namespace

std::vector<FlowResiduals> flow_residuals(const MeasureSpec& spec, const BigReal& a_center, const BigReal& h,
                                          long n_max, Precision prec)
{
    spec.validate();
    if (!(h > 0)) {
        throw DomainError("toda: step h must be positive");
    }
    if (!(a_center - 2 * h > 0)) {
        throw DomainError("toda: stencil leaves a > 0 (a_center - 2h <= 0)");
    }
    if (h < BigReal::pow2(-static_cast<long>(prec) / 4, prec)) {
        throw PrecisionError("toda: step h is below 2^(-prec/4); raise the precision or the step");
    }
    const Precision work = prec + 64;
    const BigReal ac = a_center.with_prec(work);
    const BigReal hw = h.with_prec(work);

    std::vector<RecurrenceTable> tables;
    for (long k = -2; k <= 2; ++k) {
        tables.push_back(oracle::recurrence_from_hankel(spec.with_a(ac + k * hw), n_max + 1, prec));
    }
    const RecurrenceTable& mid = tables[2];
    const BigReal& a = ac;
    const BigReal beta = spec.beta.at(work);

    std::vector<FlowResiduals> out;
    for (long n = 0; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        std::vector<BigReal> xs;
        std::vector<BigReal> bs;
        for (const auto& t : tables) {
            xs.push_back(t.a2[i].with_prec(work));
            bs.push_back(t.b[i].with_prec(work));
        }
        const BigReal dx = stencil(xs, hw);
        const BigReal db = stencil(bs, hw);
        const BigReal x = mid.a2[i].with_prec(work);
        const BigReal b = mid.b[i].with_prec(work);
        const BigReal x_next = mid.a2[i + 1].with_prec(work);
        const BigReal b_prev = n == 0 ? BigReal(work) : mid.b[i - 1].with_prec(work);

        FlowResiduals r{n, BigReal(work), BigReal(work), BigReal(work), BigReal(work)};
        r.toda_a2 = n == 0 ? dx : dx - x / a * (b - b_prev);
        r.toda_b = db - (x_next - x) / a;
        r.xprime = dx - ((beta - n + 2 * b) * x - a * n) / a;
        const BigReal rhs
            = (a * (n - a + n * n - n * beta) - a * (1 + 2 * n - beta) * b + a * square(b) + 2 * a * x - square(x))
              / (a * (x - a));
        r.bprime = db - rhs;
        out.push_back(std::move(r));
    }
    return out;
}

std::pair<BigReal, BigReal> toda_residual(const TodaProbe& probe)
{
    auto r = flow_residuals(probe.spec, probe.a_center, probe.h, probe.n, probe.prec).back();
    return {r.toda_a2.with_prec(probe.prec), r.toda_b.with_prec(probe.prec)};
}

BigReal xprime_residual(const TodaProbe& probe)
{
    return flow_residuals(probe.spec, probe.a_center, probe.h, probe.n, probe.prec).back().xprime.with_prec(probe.prec);
}

BigReal bprime_residual(const TodaProbe& probe)
{
    return flow_residuals(probe.spec, probe.a_center, probe.h, probe.n, probe.prec).back().bprime.with_prec(probe.prec);
}

std::pair<BigReal, BigReal> toda_t_residual(const TodaProbe& probe)
{
    // With a = e^t the t-derivative is a times the a-derivative, so the
    // t-form residuals are a times the a-form ones, evaluated directly here.
    const Precision work = probe.prec + 64;
    const BigReal a = probe.a_center.with_prec(work);
    const BigReal h = probe.h.with_prec(work);
    std::vector<RecurrenceTable> tables;
    for (long k = -2; k <= 2; ++k) {
        tables.push_back(oracle::recurrence_from_hankel(probe.spec.with_a(a + k * h), probe.n + 1, probe.prec));
    }
    const auto i = static_cast<std::size_t>(probe.n);
    std::vector<BigReal> xs;
    std::vector<BigReal> bs;
    for (const auto& t : tables) {
        xs.push_back(t.a2[i]);
        bs.push_back(t.b[i]);
    }
    const BigReal dx_dt = a * stencil(xs, h);
    const BigReal db_dt = a * stencil(bs, h);
    const RecurrenceTable& mid = tables[2];
    const BigReal b_prev = probe.n == 0 ? BigReal(work) : mid.b[i - 1];
    const BigReal r1 = probe.n == 0 ? dx_dt : dx_dt - mid.a2[i] * (mid.b[i] - b_prev);
    const BigReal r2 = db_dt - (mid.a2[i + 1] - mid.a2[i]);
    return {r1.with_prec(probe.prec), r2.with_prec(probe.prec)};
}

BigReal b0_derivative(const MeasureSpec& spec, const BigReal& a, Precision prec)
{
    spec.validate();
    const Precision work = prec + kGuardBits;
    const BigReal aw = a.with_prec(work);
    const BigReal sa = sqrt(aw);
    const BigReal z = sa * 2;
    const BigReal beta = spec.beta.at(work);
    const auto [c1, c2] = laxchain::bessel_mixing(spec, work);

    auto I = [&](const BigReal& nu) { return mpnum::bessel_i(nu, z, work); };
    BigReal f(work), g(work), fz(work), gz(work);
    if (!c1.is_zero()) {
        const BigReal i_b = I(beta);
        const BigReal i_bm1 = I(beta - 1);
        f += c1 * i_b;
        g += c1 * i_bm1;
        fz += c1 * (I(beta + 1) + beta / z * i_b);
        gz += c1 * (i_b + (beta - 1) / z * i_bm1);
    }
    if (!c2.is_zero()) {
        const BigReal i_mb = I(-beta);
        const BigReal i_1mb = I(1 - beta);
        f += c2 * i_mb;
        g += c2 * i_1mb;
        fz += c2 * (i_1mb - beta / z * i_mb);
        gz += c2 * (I(2 - beta) + (1 - beta) / z * i_1mb);
    }
    // b0 = sqrt(a) f(z)/g(z), dz/da = 1/sqrt(a)
    const BigReal d = f / (2 * sa * g) + (fz * g - f * gz) / square(g);
    return d.with_prec(prec);
}

BigReal riccati_value(const BigReal& a, const BigReal& beta, const BigReal& b, const BigReal& b_prime)
{
    return square(a) * b_prime + a * square(b) - a * (1 - beta) * b - square(a);
}

BigReal riccati_b0_residual(const MeasureSpec& spec, const BigReal& a, Precision prec)
{
    const Precision work = prec + kGuardBits;
    const BigReal aw = a.with_prec(work);
    const BigReal b0 = laxchain::initial_b0(spec.with_a(aw), work);
    const BigReal db0 = b0_derivative(spec, aw, work);
    return riccati_value(aw, spec.beta.at(work), b0, db0).with_prec(prec);
}

} // namespace charlier::toda
