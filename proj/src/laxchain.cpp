#include "charlier/laxchain.hpp"

#include <algorithm>
#include <string>

#include "charlier/mpnum.hpp"

namespace charlier::laxchain {

std::pair<BigReal, BigReal> bessel_mixing(const MeasureSpec& spec, Precision prec)
{
    switch (spec.lattice) {
    case Lattice::N:
        return {BigReal(1, prec), BigReal(0, prec)};
    case Lattice::Shifted:
        return {BigReal(0, prec), BigReal(1, prec)};
    case Lattice::BiLattice:
        break;
    }
    return {BigReal(1, prec), spec.tau.at(prec)};
}

BigReal bessel_ratio_b0(const BigReal& a, const BigReal& beta, const BigReal& c1, const BigReal& c2,
                        Precision prec)
{
    if (!(a > 0)) {
        throw DomainError("initial_b0: a must be positive");
    }
    const Precision work = prec + kGuardBits;
    const BigReal sa = sqrt(a.with_prec(work));
    const BigReal z = sa * 2;
    const BigReal bw = beta.with_prec(work);
    BigReal num(work);
    BigReal den(work);
    BigReal den_scale(work);
    if (!c1.is_zero()) {
        num += c1 * mpnum::bessel_i(bw, z, work);
        const BigReal d = c1 * mpnum::bessel_i(bw - 1, z, work);
        den += d;
        den_scale += abs(d);
    }
    if (!c2.is_zero()) {
        num += c2 * mpnum::bessel_i(-bw, z, work);
        const BigReal d = c2 * mpnum::bessel_i(1 - bw, z, work);
        den += d;
        den_scale += abs(d);
    }
    if (!(abs(den) > BigReal::pow2(-static_cast<long>(prec) / 2, work) * den_scale)) {
        throw DomainError("initial_b0: the Bessel denominator vanishes for a = " + a.to_string(20)
                          + ", beta = " + beta.to_string(20));
    }
    return (sa * num / den).with_prec(prec);
}

BigReal initial_b0(const MeasureSpec& spec, Precision prec)
{
    spec.validate();
    const auto [c1, c2] = bessel_mixing(spec, prec + kGuardBits);
    return bessel_ratio_b0(spec.a.at(prec + kGuardBits), spec.beta.at(prec + kGuardBits), c1, c2, prec);
}

DiscreteState step(const BigReal& a, const BigReal& beta, const DiscreteState& state)
{
    const long n = state.n;
    const Precision work = std::max({a.prec(), state.x.prec(), state.b.prec()});
    const BigReal guard = BigReal::pow2(-static_cast<long>(work) / 2, work) * a;
    const BigReal& x = state.x;
    const BigReal& b = state.b;
    const BigReal denom = a - x;
    if (abs(denom) < guard) {
        throw SingularityError("recursion singular at n = " + std::to_string(n) + ": a_n^2 = a");
    }
    const BigReal x_next = a * (a + n * (beta - (n + 1)) + (1 + 2 * n - beta - b) * b - x) / denom;
    if (abs(x_next) < guard) {
        throw SingularityError("recursion singular at n = " + std::to_string(n + 1) + ": a_n^2 = 0");
    }
    BigReal b_next = a * (n + 1) / x_next - b + (n + 1) - beta;
    return DiscreteState{n + 1, x_next, std::move(b_next), b};
}

namespace {

RecurrenceTable forward_at(const MeasureSpec& spec, long n_max, Precision work)
{
    const BigReal a = spec.a.at(work);
    const BigReal beta = spec.beta.at(work);
    DiscreteState s{0, BigReal(0, work), initial_b0(spec, work), std::nullopt};
    RecurrenceTable t{spec, n_max, {s.x}, {s.b}, work, Source::Recursion};
    while (s.n < n_max) {
        s = step(a, beta, s);
        t.a2.push_back(s.x);
        t.b.push_back(s.b);
    }
    return t;
}

} // namespace

RecurrenceTable recurrence_forward(const MeasureSpec& spec, long n_max, Precision prec)
{
    spec.validate();
    if (n_max < 0) {
        throw DomainError("n_max must be nonnegative");
    }
    const Precision work = prec + 40 * n_max + kGuardBits;
    RecurrenceTable t = forward_at(spec, n_max, work);
    const RecurrenceTable check = forward_at(spec, n_max, work + 64);
    const BigReal tol = BigReal::pow2(-static_cast<long>(prec), work);
    for (long n = 0; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        if (!close_rel(t.a2[i], check.a2[i], tol) || !close_rel(t.b[i], check.b[i], tol)) {
            throw PrecisionError("recurrence_forward: precision collapse at n = " + std::to_string(n)
                                 + " (forward instability exceeds the " + std::to_string(work) + "-bit budget)");
        }
    }
    for (auto& v : t.a2) {
        v = v.with_prec(prec);
    }
    for (auto& v : t.b) {
        v = v.with_prec(prec);
    }
    t.prec = prec;
    return t;
}

VerificationReport check_discrete_residuals(const RecurrenceTable& table, const MeasureSpec& spec,
                                            const BigReal& tol)
{
    VerificationReport report;
    report.suite = "discrete";
    report.prec_bits = table.prec;
    if (table.b.size() < 2) {
        return report;
    }
    const Precision work = table.prec + kGuardBits;
    const BigReal a = spec.a.at(work);
    const BigReal beta = spec.beta.at(work);
    const CellParams params = CellParams::of(spec);
    const auto last = static_cast<long>(table.b.size()) - 1;
    for (long n = 0; n <= last; ++n) {
        const auto i = static_cast<std::size_t>(n);
        const BigReal x = table.a2[i].with_prec(work);
        const BigReal b = table.b[i].with_prec(work);
        if (n >= 1) {
            const BigReal r1 = b + table.b[i - 1] - n + beta - a * n / x;
            report.add(params, n, "discrete1", {r1}, tol);
        }
        if (n < last) {
            const BigReal r2 = (table.a2[i + 1] - a) * (x - a) - a * (b - n) * (b - n + beta - 1);
            report.add(params, n, "discrete2", {r2}, tol);
        }
    }
    return report;
}

VerificationReport check_discrete_residuals(const RecurrenceTable& table, const MeasureSpec& spec)
{
    return check_discrete_residuals(table, spec, BigReal::pow2(-static_cast<long>(table.prec) / 2, table.prec));
}

} // namespace charlier::laxchain
