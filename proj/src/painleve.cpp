#include "charlier/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "charlier/laxchain.hpp"

namespace charlier::painleve {

namespace {

Precision prec_of(std::initializer_list<const BigReal*> xs)
{
    Precision p = kMinPrecision;
    for (const BigReal* x : xs) {
        p = std::max(p, x->prec());
    }
    return p;
}

// Relative smallness test used for every denominator in this file.
bool negligible(const BigReal& value, const BigReal& scale, Precision prec)
{
    return !(abs(value) > BigReal::pow2(-static_cast<long>(prec) / 2, prec) * max(scale, BigReal(1, prec)));
}

void require_regular(const P5Point& pt, const char* who)
{
    if (pt.y.is_zero() || pt.y == 1) {
        throw DomainError(std::string(who) + ": y must avoid 0 and 1");
    }
}

} // namespace

P5Params chain_params(long n, const BigReal& beta, const BigReal& k1)
{
    const Precision p = prec_of({&beta, &k1});
    return P5Params{square(beta - 1) / 2, -BigReal((n + 1) * (n + 1), p) / 2, k1 * 2, BigReal(0, p)};
}

BigReal p5_second_derivative(const P5Params& params, const P5Point& pt)
{
    require_regular(pt, "p5_second_derivative");
    if (pt.t.is_zero()) {
        throw DomainError("p5_second_derivative: t must be nonzero");
    }
    const BigReal& t = pt.t;
    const BigReal& y = pt.y;
    const BigReal& v = pt.yp;
    const BigReal ym1 = y - 1;
    BigReal r = (1 / (2 * y) + 1 / ym1) * square(v) - v / t + square(ym1) / square(t) * (params.A * y + params.B / y)
                + params.C * y / t;
    if (!params.D.is_zero()) {
        r += params.D * y * (y + 1) / ym1;
    }
    return r;
}

BigReal first_order_residual(const BigReal& beta, const P5Point& pt)
{
    const BigReal& t = pt.t;
    const BigReal& y = pt.y;
    const BigReal& v = pt.yp;
    const BigReal g = square(beta - 1);
    return (y - 1) * (1 + y * (g * square(y) - (4 * t + g) * y - 1)) + 2 * t * (y - 1) * v - square(t) * square(v);
}

P5Point seed_classical_y0(const BigReal& t0, const BigReal& beta, const BigReal& b0, Precision prec)
{
    const Precision work = prec + kGuardBits;
    const BigReal t = t0.with_prec(work);
    const BigReal b = b0.with_prec(work);
    const BigReal q = b * (b + beta.with_prec(work) - 1);
    if (negligible(q, abs(b), work)) {
        throw SingularityError("seed_classical_y0: b0 (b0 + beta - 1) vanishes at t = " + t0.to_string(20)
                               + ", b0 = " + b0.to_string(20));
    }
    const BigReal y = 1 - t / q;
    const BigReal yp = yprime_from_b(0, beta.with_prec(work), t, y, b);
    return P5Point{t.with_prec(prec), y.with_prec(prec), yp.with_prec(prec)};
}

BigReal bn_from_y(long n, const BigReal& beta, const P5Point& pt)
{
    const BigReal& y = pt.y;
    const BigReal den = 2 * y * (y - 1);
    if (negligible(den, abs(y), prec_of({&y, &pt.yp}))) {
        throw DomainError("bn_from_y: y is 0 or 1 to working precision");
    }
    return (1 + n + (beta - (3 * n + 2)) * y + ((1 + 2 * n) - beta) * square(y) + pt.t * pt.yp) / den;
}

BigReal bnext_from_y(long n, const BigReal& beta, const P5Point& pt)
{
    const BigReal& y = pt.y;
    const BigReal den = 2 * y * (y - 1);
    if (negligible(den, abs(y), prec_of({&y, &pt.yp}))) {
        throw DomainError("bnext_from_y: y is 0 or 1 to working precision");
    }
    return (1 + n + (beta - (3 * n + 4)) * y + ((3 + 2 * n) - beta) * square(y) - pt.t * pt.yp) / den;
}

BigReal yprime_from_b(long n, const BigReal& beta, const BigReal& t, const BigReal& y, const BigReal& bn)
{
    if (t.is_zero()) {
        throw DomainError("yprime_from_b: t must be nonzero");
    }
    return (2 * y * (y - 1) * bn - (1 + n) - (beta - (3 * n + 2)) * y - ((1 + 2 * n) - beta) * square(y)) / t;
}

namespace {

BigReal backlund_shift(const P5Point& pt, long n, const BigReal& beta, int sign, const char* who)
{
    const BigReal& t = pt.t;
    const BigReal& y = pt.y;
    if (y == 1) {
        throw DomainError(std::string(who) + ": y = 1 is outside the transformation's domain");
    }
    const BigReal ym1 = y - 1;
    const BigReal first = square(beta - 1) * square(ym1) * square(y);
    const BigReal inner = (n + 1) * ym1 + (sign > 0 ? t * pt.yp : -(t * pt.yp));
    const BigReal second = square(inner);
    const BigReal den = first - second;
    if (negligible(den, max(abs(first), second), prec_of({&t, &y, &pt.yp}))) {
        throw SingularityError(std::string(who) + ": denominator vanishes at n = " + std::to_string(n));
    }
    return 1 - 4 * t * ym1 * square(y) / den;
}

} // namespace

BigReal backlund_up(const P5Point& pt, long n, const BigReal& beta)
{
    return backlund_shift(pt, n, beta, +1, "backlund_up");
}

BigReal backlund_down(const P5Point& pt, long n, const BigReal& beta)
{
    return backlund_shift(pt, n, beta, -1, "backlund_down");
}

std::vector<P5Point> chain_points(const BigReal& a, const BigReal& beta, const BigReal& b0, long n_max)
{
    const Precision work = prec_of({&a, &beta, &b0});
    std::vector<P5Point> pts{seed_classical_y0(a, beta, b0, work)};
    pts.reserve(static_cast<std::size_t>(n_max) + 1);
    for (long n = 0; n < n_max; ++n) {
        const P5Point& cur = pts.back();
        BigReal y = backlund_up(cur, n, beta);
        const BigReal b_next = bnext_from_y(n, beta, cur);
        BigReal yp = yprime_from_b(n + 1, beta, cur.t, y, b_next);
        pts.push_back(P5Point{cur.t, std::move(y), std::move(yp)});
    }
    return pts;
}

namespace {

std::vector<BigReal> chain_b(const MeasureSpec& spec, long n_max, Precision work, const std::optional<BigReal>& delta)
{
    const BigReal a = spec.a.at(work);
    const BigReal beta = spec.beta.at(work);
    const auto [c1, c2] = laxchain::bessel_mixing(spec, work);
    auto run = [&](const BigReal& w1, const BigReal& w2) {
        const BigReal b0 = laxchain::bessel_ratio_b0(a, beta, w1, w2, work);
        const auto pts = chain_points(a, beta, b0, n_max);
        std::vector<BigReal> b;
        for (long n = 0; n <= n_max; ++n) {
            b.push_back(bn_from_y(n, beta, pts[static_cast<std::size_t>(n)]));
        }
        return b;
    };
    if (!delta) {
        return run(c1, c2);
    }
    // Move the weight that is present (c2 unless the lattice is shifted).
    const bool move_c1 = c1.is_zero();
    const auto plus = move_c1 ? run(c1 + *delta, c2) : run(c1, c2 + *delta);
    const auto minus = move_c1 ? run(c1 - *delta, c2) : run(c1, c2 - *delta);
    std::vector<BigReal> b;
    for (std::size_t i = 0; i < plus.size(); ++i) {
        b.push_back((plus[i] + minus[i]) / 2);
    }
    return b;
}

} // namespace

RecurrenceTable p5_chain(const MeasureSpec& spec, long n_max, Precision prec)
{
    spec.validate();
    if (n_max < 0) {
        throw DomainError("n_max must be nonnegative");
    }
    std::optional<BigReal> delta;
    long delta_bits = 0;
    Precision extra = 0;
    for (int attempt = 0; attempt < 6; ++attempt) {
        const Precision work = prec + 40 * n_max + 64 + extra;
        std::optional<BigReal> d;
        if (delta) {
            d = BigReal::pow2(-delta_bits, work);
        }
        std::vector<BigReal> b;
        std::vector<BigReal> check;
        try {
            b = chain_b(spec, n_max, work, d);
            check = chain_b(spec, n_max, work + 64, d);
        } catch (const SingularityError&) {
            if (delta) {
                throw;
            }
            delta_bits = static_cast<long>(prec) / 2 + 16;
            delta = BigReal::pow2(-delta_bits, prec);
            extra += 6 * delta_bits;
            continue;
        }
        const BigReal tol = BigReal::pow2(-static_cast<long>(prec), work);
        bool ok = true;
        for (std::size_t i = 0; i < b.size() && ok; ++i) {
            ok = close_rel(b[i], check[i], tol);
        }
        if (!ok) {
            extra = extra == 0 ? prec + 40 * n_max : 2 * extra;
            continue;
        }
        RecurrenceTable t{spec, n_max, {}, {}, prec, Source::P5Chain};
        const BigReal a = spec.a.at(work);
        const BigReal beta = spec.beta.at(work);
        t.a2.push_back(BigReal(0, prec));
        for (long n = 1; n <= n_max; ++n) {
            const auto i = static_cast<std::size_t>(n);
            const BigReal den = b[i] + b[i - 1] - n + beta;
            if (negligible(den, abs(b[i]), work)) {
                throw SingularityError("p5_chain: a_n^2 is unbounded at n = " + std::to_string(n));
            }
            t.a2.push_back((a * n / den).with_prec(prec));
        }
        for (auto& v : b) {
            t.b.push_back(v.with_prec(prec));
        }
        return t;
    }
    throw PrecisionError("p5_chain: chain values did not stabilise within the precision budget");
}

ChainVerification p5_chain_verify(const MeasureSpec& spec, long n_max, Precision prec, const BigReal& tol)
{
    ChainVerification out{VerificationReport{}, p5_chain(spec, n_max, prec)};
    out.report.suite = "p5chain";
    out.report.prec_bits = prec;
    const RecurrenceTable oracle = oracle::recurrence_from_hankel(spec, n_max, prec);
    const CellParams params = CellParams::of(spec);
    for (long n = 0; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        out.report.add(params, n, "p5chain", {out.table.b[i] - oracle.b[i], out.table.a2[i] - oracle.a2[i]}, tol);
    }
    return out;
}

ChainVerification p5_chain_verify(const MeasureSpec& spec, long n_max, Precision prec)
{
    return p5_chain_verify(spec, n_max, prec, BigReal::pow2(-static_cast<long>(prec) / 2, prec));
}

// ---------------------------------------------------------------------------
// Integration

namespace {

struct State {
    BigReal y;
    BigReal v;
};

bool finite(const State& s) { return s.y.is_finite() && s.v.is_finite(); }

// Modified midpoint rule over [t, t + H] with `steps` substeps. Empty when
// the path hits a singular value of the equation.
std::optional<State> midpoint(const P5Params& p, const BigReal& t, const State& s, const BigReal& H, long steps)
{
    try {
        const BigReal h = H / steps;
        State z0 = s;
        State z1{s.y + h * s.v, s.v + h * p5_second_derivative(p, P5Point{t, s.y, s.v})};
        for (long m = 1; m < steps; ++m) {
            const BigReal tm = t + h * m;
            State z2{z0.y + 2 * h * z1.v, z0.v + 2 * h * p5_second_derivative(p, P5Point{tm, z1.y, z1.v})};
            z0 = std::move(z1);
            z1 = std::move(z2);
        }
        const BigReal acc = p5_second_derivative(p, P5Point{t + H, z1.y, z1.v});
        State out{(z1.y + z0.y + h * z1.v) / 2, (z1.v + z0.v + h * acc) / 2};
        if (!finite(out)) {
            return std::nullopt;
        }
        return out;
    } catch (const DomainError&) {
        return std::nullopt;
    }
}

BigReal scaled_diff(const State& a, const State& b)
{
    const BigReal dy = abs(a.y - b.y) / max(abs(b.y), BigReal(1, b.y.prec()));
    const BigReal dv = abs(a.v - b.v) / max(abs(b.v), BigReal(1, b.v.prec()));
    return max(dy, dv);
}

constexpr int kRows = 12;

class Integrator {
public:
    Integrator(const P5Params& params, Precision work, BigReal tol)
        : params_(params), work_(work), tol_(std::move(tol)), h_(BigReal(0, work))
    {
    }

    // Advances `cur` to exactly t1.
    void advance(P5Point& cur, const BigReal& t1)
    {
        long steps = 0;
        while (!(cur.t == t1)) {
            if (++steps > 200000) {
                throw IntegrationError("p5_integrate: step budget exhausted", cur.t.to_string(30));
            }
            const BigReal remaining = t1 - cur.t;
            if (h_.is_zero()) {
                h_ = abs(remaining);
            }
            const bool truncated = abs(remaining) <= h_;
            BigReal H = truncated ? remaining : (remaining.sign() > 0 ? h_ : -h_);
            int rows_used = 0;
            BigReal err(work_);
            auto result = extrapolate(cur, H, rows_used, err);
            if (!result) {
                h_ = abs(H) / 4;
                if (h_ < BigReal::pow2(-static_cast<long>(work_) / 8, work_) * max(abs(cur.t), BigReal(1, work_))) {
                    throw IntegrationError("p5_integrate: step size underflow near a singularity",
                                           cur.t.to_string(30));
                }
                continue;
            }
            const BigReal t_next = truncated ? BigReal(t1) : cur.t + H;
            check_guards(*result, cur);
            cur = P5Point{t_next, std::move(result->y), std::move(result->v)};
            BigReal grow(4, work_);
            if (!err.is_zero()) {
                const double ratio = (tol_ / err).to_double();
                grow = BigReal(std::clamp(0.9 * std::pow(ratio, 1.0 / (2 * rows_used + 1)), 0.5, 4.0), work_);
            }
            const BigReal proposal = abs(H) * grow;
            h_ = truncated ? max(h_, proposal) : proposal;
        }
    }

private:
    std::optional<State> extrapolate(const P5Point& cur, const BigReal& H, int& rows_used, BigReal& err)
    {
        const State s{cur.y, cur.yp};
        std::vector<std::vector<State>> T;
        for (int k = 0; k < kRows; ++k) {
            const long nk = 2 * (k + 1);
            auto base = midpoint(params_, cur.t, s, H, nk);
            if (!base) {
                return std::nullopt;
            }
            std::vector<State> row{std::move(*base)};
            for (int j = 1; j <= k; ++j) {
                const long nkj = 2 * (k - j + 1);
                const BigReal f = BigReal(nk * nk, work_) / (nkj * nkj) - 1;
                const State& a = row[static_cast<std::size_t>(j - 1)];
                const State& b = T[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(j - 1)];
                row.push_back(State{a.y + (a.y - b.y) / f, a.v + (a.v - b.v) / f});
            }
            T.push_back(std::move(row));
            if (k >= 2) {
                const auto& last = T.back();
                err = scaled_diff(last[static_cast<std::size_t>(k)], last[static_cast<std::size_t>(k - 1)]);
                if (err <= tol_) {
                    rows_used = k;
                    return last.back();
                }
            }
        }
        return std::nullopt;
    }

    void check_guards(const State& s, const P5Point& last)
    {
        const BigReal near = tol_ * 10;
        if (!finite(s) || abs(s.y) > 1 / tol_) {
            throw IntegrationError("p5_integrate: solution runs into a pole", last.t.to_string(30));
        }
        if (abs(s.y) < near || abs(s.y - 1) < near) {
            throw IntegrationError("p5_integrate: solution approaches y = 0 or y = 1", last.t.to_string(30));
        }
    }

    const P5Params& params_;
    Precision work_;
    BigReal tol_;
    BigReal h_;
};

P5Params params_at(const P5Params& p, Precision prec)
{
    return P5Params{p.A.with_prec(prec), p.B.with_prec(prec), p.C.with_prec(prec), p.D.with_prec(prec)};
}

P5Point point_at(const P5Point& p, Precision prec)
{
    return P5Point{p.t.with_prec(prec), p.y.with_prec(prec), p.yp.with_prec(prec)};
}

} // namespace

std::vector<P5Point> p5_integrate_grid(const P5Params& params, const P5Point& start, const std::vector<BigReal>& grid,
                                       Precision prec, const std::optional<BigReal>& tol)
{
    if (!(start.t > 0)) {
        throw DomainError("p5_integrate: start time must be positive");
    }
    require_regular(start, "p5_integrate");
    const Precision work = prec + kGuardBits;
    const BigReal eps = tol ? tol->with_prec(work) : BigReal::pow2(-static_cast<long>(prec) / 4, work);
    if (!(eps > 0)) {
        throw DomainError("p5_integrate: tolerance must be positive");
    }
    const P5Params p = params_at(params, work);
    Integrator integrator(p, work, eps);
    P5Point cur = point_at(start, work);
    std::vector<P5Point> out;
    for (const BigReal& t : grid) {
        const BigReal tw = t.with_prec(work);
        if (!(tw > 0)) {
            throw DomainError("p5_integrate: grid must stay in t > 0");
        }
        integrator.advance(cur, tw);
        out.push_back(point_at(cur, prec));
    }
    return out;
}

P5Point p5_integrate(const P5Params& params, const P5Point& start, const BigReal& t1, Precision prec,
                     const std::optional<BigReal>& tol)
{
    return p5_integrate_grid(params, start, {t1}, prec, tol).front();
}

// ---------------------------------------------------------------------------
// General transformations

namespace {

struct Roots {
    BigReal a;
    BigReal b;
    BigReal d;
};

Roots general_roots(const P5Params& p, const Signs& eps)
{
    if (p.D.is_zero()) {
        throw DomainError("backlund_general: D = 0; use backlund_up/backlund_down");
    }
    if (p.A < 0 || p.B > 0 || p.D > 0) {
        throw DomainError("backlund_general: needs 2A >= 0, -2B >= 0, -2D > 0 for real roots");
    }
    for (int e : eps) {
        if (e != 1 && e != -1) {
            throw DomainError("backlund_general: signs must be +1 or -1");
        }
    }
    return Roots{eps[0] * sqrt(2 * p.A), eps[1] * sqrt(-2 * p.B), eps[2] * sqrt(-2 * p.D)};
}

P5Params general_params(const P5Params& p, const Roots& r)
{
    const BigReal s = 1 - r.a - r.b;
    return P5Params{-square(p.C + r.d * s) / (16 * p.D), square(p.C - r.d * s) / (16 * p.D), r.d * (r.b - r.a), p.D};
}

BigReal general_denominator(const P5Point& pt, const Roots& r)
{
    const BigReal& t = pt.t;
    const BigReal& y = pt.y;
    return t * pt.yp - r.a * square(y) + (r.a - r.b + r.d * t) * y + r.b;
}

void require_nonsingular(const BigReal& den, const P5Point& pt)
{
    const BigReal scale = abs(pt.t * pt.yp) + abs(pt.y) + 1;
    if (negligible(den, scale, prec_of({&pt.t, &pt.y, &pt.yp}))) {
        throw SingularityError("backlund_general: denominator vanishes at t = " + pt.t.to_string(20));
    }
}

} // namespace

std::pair<BigReal, P5Params> backlund_general(const P5Point& pt, const P5Params& params, const Signs& eps)
{
    const Roots r = general_roots(params, eps);
    const BigReal den = general_denominator(pt, r);
    require_nonsingular(den, pt);
    return {1 - 2 * r.d * pt.t * pt.y / den, general_params(params, r)};
}

P5Params backlund_general_params(const P5Params& params, const Signs& eps)
{
    return general_params(params, general_roots(params, eps));
}

std::pair<P5Point, P5Params> backlund_general_point(const P5Point& pt, const P5Params& params, const Signs& eps)
{
    const Roots r = general_roots(params, eps);
    const BigReal& t = pt.t;
    const BigReal& y = pt.y;
    const BigReal& v = pt.yp;
    const BigReal den = general_denominator(pt, r);
    require_nonsingular(den, pt);
    const BigReal ypp = p5_second_derivative(params, pt);
    const BigReal lin = r.a - r.b + r.d * t;
    const BigReal dden = v + t * ypp - 2 * r.a * y * v + r.d * y + lin * v;
    BigReal y1 = 1 - 2 * r.d * t * y / den;
    BigReal y1p = -2 * r.d * ((y + t * v) * den - t * y * dden) / square(den);
    return {P5Point{t, std::move(y1), std::move(y1p)}, general_params(params, r)};
}

P5Params invert_params(const P5Params& p) { return P5Params{-p.B, -p.A, -p.C, p.D}; }

P5Params quadratic_image_params(const P5Params& p)
{
    if (!(p.A == -p.B) || !p.C.is_zero()) {
        throw DomainError("quadratic_image_params: needs A = -B and C = 0");
    }
    return P5Params{4 * p.A, BigReal(0, p.A.prec()), p.D / 4, BigReal(0, p.D.prec())};
}

P5Params quadratic_preimage_params(const P5Params& p)
{
    if (!p.B.is_zero() || !p.D.is_zero()) {
        throw DomainError("quadratic_preimage_params: needs B = 0 and D = 0");
    }
    return P5Params{p.A / 4, -p.A / 4, BigReal(0, p.C.prec()), 4 * p.C};
}

// ---------------------------------------------------------------------------
// beta = 1

BigReal beta1_bn(long n, const P5Point& pt)
{
    const BigReal& z = pt.t;
    const BigReal& y = pt.y;
    const BigReal& v = pt.yp;
    const BigReal den = 8 * y * (y - 1);
    if (negligible(den, abs(y), prec_of({&z, &y, &v}))) {
        throw DomainError("beta1_bn: y is 0 or 1 to working precision");
    }
    const BigReal zv2 = 2 * z * v;
    return (n + 7 * n * square(y) - n * y * square(y) - zv2 - y * (7 * n + zv2)) / den;
}

P5Point beta1_lift(const P5Point& chain_point)
{
    const BigReal& y = chain_point.y;
    if (y.is_zero()) {
        throw DomainError("beta1_lift: y = 0");
    }
    const BigReal w = 1 / y;
    const BigReal wp = -chain_point.yp / square(y);
    const BigReal disc = square(w) - w;
    if (disc < 0) {
        throw DomainError("beta1_lift: 1/y lies in (0, 1), no real preimage under (Y+1)^2/(4Y)");
    }
    const BigReal Y = 2 * w - 1 + 2 * sqrt(disc);
    const BigReal z = sqrt(chain_point.t);
    const BigReal jac = 1 - 1 / square(Y);
    if (jac.is_zero()) {
        throw SingularityError("beta1_lift: Y = +-1");
    }
    return P5Point{z, Y, 8 * z * wp / jac};
}

RecurrenceTable beta1_table(const BigReal& a, long n_max, int eps, Precision prec)
{
    if (!(a > 0)) {
        throw DomainError("beta1_table: a must be positive");
    }
    if (eps != 1 && eps != -1) {
        throw DomainError("beta1_table: eps must be +1 or -1");
    }
    if (n_max < 0) {
        throw DomainError("n_max must be nonnegative");
    }
    const MeasureSpec spec = MeasureSpec::on_n(Param(a), "1");
    auto run = [&](Precision work) {
        const BigReal aw = a.with_prec(work);
        const BigReal one(1, work);
        const BigReal b0 = laxchain::initial_b0(spec, work);
        std::vector<BigReal> b{b0};
        if (n_max == 0) {
            return b;
        }
        const P5Point seed = seed_classical_y0(aw, one, b0, work);
        P5Point Y = beta1_lift(seed);
        b.push_back(beta1_bn(1, Y));
        for (long m = 1; m < n_max; ++m) {
            const BigReal q = BigReal(m * m, work) / 8;
            const P5Params par{q, -q, BigReal(0, work), BigReal(-8, work)};
            Y = backlund_general_point(Y, par, Signs{-1, -1, eps}).first;
            b.push_back(beta1_bn(m + 1, Y));
        }
        return b;
    };
    const Precision work = prec + 40 * n_max + 64;
    const auto b = run(work);
    const auto check = run(work + 64);
    const BigReal tol = BigReal::pow2(-static_cast<long>(prec), work);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!close_rel(b[i], check[i], tol)) {
            throw PrecisionError("beta1_table: precision collapse at n = " + std::to_string(i));
        }
    }
    RecurrenceTable t{spec, n_max, {BigReal(0, prec)}, {}, prec, Source::P5Chain};
    const BigReal aw = a.with_prec(work);
    for (long n = 1; n <= n_max; ++n) {
        const auto i = static_cast<std::size_t>(n);
        t.a2.push_back((aw * n / (b[i] + b[i - 1] - n + 1)).with_prec(prec));
    }
    for (const auto& v : b) {
        t.b.push_back(v.with_prec(prec));
    }
    return t;
}

// ---------------------------------------------------------------------------
// P3

std::pair<P5Point, P5Params> rescale_time(const P5Point& pt, const P5Params& params, const BigReal& factor)
{
    if (factor.is_zero()) {
        throw DomainError("rescale_time: factor must be nonzero");
    }
    return {P5Point{pt.t * factor, pt.y, pt.yp / factor},
            P5Params{params.A, params.B, params.C / factor, params.D / square(factor)}};
}

namespace {

std::pair<BigReal, BigReal> p3_roots(const P5Params& params, int s1, int s2)
{
    if ((s1 != 1 && s1 != -1) || (s2 != 1 && s2 != -1)) {
        throw DomainError("p3: signs must be +1 or -1");
    }
    if (!params.D.is_zero()) {
        throw DomainError("p3: requires D = 0");
    }
    if (!(square(params.C) == 1)) {
        throw DomainError("p3: requires C^2 = 1; rescale t first");
    }
    if (params.A < 0 || params.B > 0) {
        throw DomainError("p3: needs A >= 0 and B <= 0");
    }
    return {s1 * sqrt(2 * params.A), s2 * sqrt(-2 * params.B)};
}

} // namespace

P3Params p3_parameters(const P5Params& params, int s1, int s2)
{
    const auto [s, r] = p3_roots(params, s1, s2);
    return P3Params{2 * params.C * (s - r - 1), 2 * (s + r)};
}

std::pair<P3Point, P3Params> p3_from_p5(const P5Point& pt, const P5Params& params, int s1, int s2)
{
    const auto [s, r] = p3_roots(params, s1, s2);
    const BigReal& t = pt.t;
    const BigReal& y = pt.y;
    const BigReal& v = pt.yp;
    if (!(t > 0)) {
        throw DomainError("p3_from_p5: t must be positive");
    }
    const BigReal phi = t * v - s * square(y) + (s + r) * y - r;
    if (negligible(phi, abs(t * v) + abs(y) + abs(r), prec_of({&t, &y, &v}))) {
        throw SingularityError("p3_from_p5: Phi vanishes at t = " + t.to_string(20));
    }
    const BigReal z = sqrt(2 * t);
    const BigReal ypp = p5_second_derivative(params, pt);
    const BigReal dphi = v + t * ypp - 2 * s * y * v + (s + r) * v;
    const BigReal du_dt = (y / z + z * v) / phi - z * y * dphi / square(phi);
    return {P3Point{z, z * y / phi, z * du_dt}, P3Params{2 * params.C * (s - r - 1), 2 * (s + r)}};
}

BigReal p3_second_derivative(const P3Params& params, const P3Point& pt)
{
    const BigReal& z = pt.z;
    const BigReal& u = pt.u;
    const BigReal& v = pt.up;
    if (u.is_zero() || z.is_zero()) {
        throw DomainError("p3_second_derivative: u and z must be nonzero");
    }
    return square(v) / u - v / z + (params.alpha * square(u) + params.beta) / z + u * square(u) - 1 / u;
}

std::pair<int, int> p3_signs(int which, const BigReal& beta)
{
    // Sign of s relative to (beta - 1), and of r.
    static constexpr std::array<std::pair<int, int>, 4> rel{{{-1, -1}, {1, 1}, {1, -1}, {-1, 1}}};
    if (which < 1 || which > 4) {
        throw DomainError("p3_signs: parameter set must be 1..4");
    }
    const auto [sigma, s2] = rel[static_cast<std::size_t>(which - 1)];
    const int orient = beta < 1 ? -1 : 1;
    return {sigma * orient, s2};
}

P3Params p3_listed_parameters(int which, long n, const BigReal& beta)
{
    switch (which) {
    case 1:
        return {2 * ((1 + n) - beta), -2 * (n + beta)};
    case 2:
        return {-2 * ((3 + n) - beta), 2 * (n + beta)};
    case 3:
        return {2 * ((n - 1) + beta), -2 * ((2 + n) - beta)};
    case 4:
        return {-2 * ((1 + n) + beta), 2 * ((2 + n) - beta)};
    default:
        throw DomainError("p3_listed_parameters: parameter set must be 1..4");
    }
}

BigReal btilde_from_p3(int branch, const P3Point& pt, long n, const BigReal& beta)
{
    const BigReal& z = pt.z;
    const BigReal& u = pt.u;
    const BigReal& v = pt.up;
    if (u.is_zero()) {
        throw DomainError("btilde_from_p3: u must be nonzero");
    }
    const Precision p = prec_of({&z, &u, &v});
    auto inner = [&](const BigReal& den) {
        if (negligible(den, abs(z) + abs(z * v), p)) {
            throw DomainError("btilde_from_p3: inner denominator vanishes");
        }
        return ((1 + 2 * n) - 2 * beta + z * (8 * (n + 1) / den - (v + square(u) + 1) / u)) / 4;
    };
    switch (branch) {
    case 1:
    case 3:
        return -(z + u * (2 * beta - (2 * n + 1) + z * u) + z * v) / (4 * u);
    case 2:
        return inner(z - u * (z * u + 2 * beta - (2 * n + 5)) - z * v);
    case 4:
        return inner(z + u * ((1 + 2 * n) + 2 * beta - z * u) - z * v);
    default:
        throw DomainError("btilde_from_p3: branch must be 1..4");
    }
}

} // namespace charlier::painleve
