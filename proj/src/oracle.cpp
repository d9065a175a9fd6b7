#include "charlier/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace charlier {

std::string_view to_string(Source source)
{
    switch (source) {
    case Source::Hankel:
        return "hankel";
    case Source::Stieltjes:
        return "stieltjes";
    case Source::Recursion:
        return "recursion";
    case Source::P5Chain:
        return "p5chain";
    }
    return "?";
}

Source parse_source(std::string_view text)
{
    for (Source s : {Source::Hankel, Source::Stieltjes, Source::Recursion, Source::P5Chain}) {
        if (text == to_string(s)) {
            return s;
        }
    }
    throw DomainError("unknown source '" + std::string(text) + "' (expected hankel, stieltjes, recursion, p5chain)");
}

} // namespace charlier

namespace charlier::oracle {

namespace {

using Matrix = std::vector<std::vector<BigReal>>;

Matrix hankel_matrix(const MomentVector& m, long n, bool shifted_last)
{
    const long needed = shifted_last ? 2 * n : 2 * n - 1;
    if (static_cast<long>(m.m.size()) < needed) {
        throw DomainError("hankel_det: order " + std::to_string(n) + " needs " + std::to_string(needed)
                          + " moments, have " + std::to_string(m.m.size()));
    }
    Matrix a(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        auto& row = a[static_cast<std::size_t>(i)];
        row.reserve(static_cast<std::size_t>(n));
        for (long j = 0; j < n; ++j) {
            const long idx = (shifted_last && j == n - 1) ? i + j + 1 : i + j;
            row.push_back(m.m[static_cast<std::size_t>(idx)]);
        }
    }
    return a;
}

RecurrenceTable hankel_table_at(const MeasureSpec& spec, long n_max, Precision work)
{
    const MomentVector mv = moments(spec, 2 * n_max + 2, work);
    std::vector<BigReal> d;
    std::vector<BigReal> dt;
    for (long n = 0; n <= n_max + 1; ++n) {
        d.push_back(hankel_det(mv, n));
        dt.push_back(hankel_det_shifted(mv, n));
    }
    RecurrenceTable t{spec, n_max, {}, {}, work, Source::Hankel};
    for (long n = 0; n <= n_max; ++n) {
        const auto un = static_cast<std::size_t>(n);
        if (!(d[un + 1] > 0)) {
            throw PrecisionError("Hankel determinant D_" + std::to_string(n + 1)
                                 + " is not positive at the working precision");
        }
        if (n == 0) {
            t.a2.emplace_back(0, work);
        } else {
            t.a2.push_back(d[un - 1] * d[un + 1] / square(d[un]));
        }
        t.b.push_back(dt[un + 1] / d[un + 1] - dt[un] / d[un]);
    }
    return t;
}

bool agree(const RecurrenceTable& x, const RecurrenceTable& y, Precision prec)
{
    const BigReal tol = BigReal::pow2(-static_cast<long>(prec), x.prec);
    for (std::size_t n = 0; n < x.b.size(); ++n) {
        if (!close_rel(x.a2[n], y.a2[n], tol) || !close_rel(x.b[n], y.b[n], tol)) {
            return false;
        }
    }
    return true;
}

RecurrenceTable rounded(RecurrenceTable t, Precision prec)
{
    for (auto& v : t.a2) {
        v = v.with_prec(prec);
    }
    for (auto& v : t.b) {
        v = v.with_prec(prec);
    }
    t.prec = prec;
    return t;
}

} // namespace

BigReal determinant(std::vector<std::vector<BigReal>> rows)
{
    const std::size_t n = rows.size();
    if (n == 0) {
        return BigReal(1, kMinPrecision);
    }
    Precision prec = kMinPrecision;
    for (const auto& r : rows) {
        if (r.size() != n) {
            throw DomainError("determinant: matrix is not square");
        }
        for (const auto& v : r) {
            prec = std::max(prec, v.prec());
        }
    }
    int sign = 1;
    BigReal prev(1, prec);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t pivot = k;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (abs(rows[i][k]) > abs(rows[pivot][k])) {
                pivot = i;
            }
        }
        if (rows[pivot][k].is_zero()) {
            return BigReal(0, prec);
        }
        if (pivot != k) {
            std::swap(rows[pivot], rows[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) / prev;
            }
        }
        prev = rows[k][k];
    }
    BigReal det = rows[n - 1][n - 1];
    return sign > 0 ? det : -det;
}

BigReal hankel_det(const MomentVector& m, long n)
{
    if (n < 0) {
        throw DomainError("hankel_det: negative order");
    }
    if (n == 0) {
        return BigReal(1, m.prec);
    }
    return determinant(hankel_matrix(m, n, false));
}

BigReal hankel_det_shifted(const MomentVector& m, long n)
{
    if (n < 0) {
        throw DomainError("hankel_det_shifted: negative order");
    }
    if (n == 0) {
        return BigReal(0, m.prec);
    }
    return determinant(hankel_matrix(m, n, true));
}

RecurrenceTable recurrence_from_hankel(const MeasureSpec& spec, long n_max, Precision prec)
{
    spec.validate();
    if (n_max < 0) {
        throw DomainError("n_max must be nonnegative");
    }
    Precision work = prec + 12 * n_max + kGuardBits;
    for (int attempt = 0; attempt < 5; ++attempt) {
        RecurrenceTable t = hankel_table_at(spec, n_max, work);
        const RecurrenceTable check = hankel_table_at(spec, n_max, work + 64);
        if (agree(t, check, prec)) {
            return rounded(std::move(t), prec);
        }
        work *= 2;
    }
    throw PrecisionError("recurrence_from_hankel: could not certify " + std::to_string(prec)
                         + " bits; retry with a larger precision");
}

RecurrenceTable recurrence_from_stieltjes(const MeasureSpec& spec, long n_max, Precision prec)
{
    spec.validate();
    if (n_max < 0) {
        throw DomainError("n_max must be nonnegative");
    }
    const Precision work = prec + 4 * n_max + 2 * kGuardBits;
    const BigReal a = spec.a.at(work);
    const BigReal rel = BigReal::pow2(-(static_cast<long>(prec) + kGuardBits), work);
    long k_count = std::max<long>(50, 10 * n_max + static_cast<long>(std::ceil(20 * std::sqrt(a.to_double()))));

    for (int attempt = 0; attempt < 16; ++attempt) {
        const std::vector<LatticePoint> pts = lattice_points(spec, k_count, work);

        RecurrenceTable t{spec, n_max, {}, {}, prec, Source::Stieltjes};
        std::vector<BigReal> norms;
        std::vector<BigReal> p_prev(pts.size(), BigReal(work));
        std::vector<BigReal> p(pts.size(), BigReal(1, work));
        for (long n = 0; n <= n_max; ++n) {
            BigReal h(work);
            BigReal xh(work);
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const BigReal wp2 = pts[i].weight * square(p[i]);
                h += wp2;
                xh += pts[i].node * wp2;
            }
            const BigReal bn = xh / h;
            const BigReal an2 = n == 0 ? BigReal(0, work) : h / norms.back();
            for (std::size_t i = 0; i < pts.size(); ++i) {
                BigReal next = (pts[i].node - bn) * p[i] - an2 * p_prev[i];
                p_prev[i] = std::move(p[i]);
                p[i] = std::move(next);
            }
            t.b.push_back(bn);
            t.a2.push_back(an2);
            norms.push_back(h);
        }

        // Zeros of the truncated-measure P_n lie inside [x_min, x_max] of the
        // retained nodes, so beyond them |P_n(x)| <= (x - x_min)^n.
        BigReal x_min = pts.front().node;
        for (const auto& pt : pts) {
            x_min = min(x_min, pt.node);
        }
        bool certified = true;
        for (const Sublattice& sub : sublattices(spec, work)) {
            BigReal w = sub.scale;
            for (long k = 0; k < k_count; ++k) {
                w *= a;
                w /= (sub.gamma + k) * (k + 1);
            }
            const BigReal x0 = sub.offset + k_count;
            const BigReal x1 = x0 + 1;
            const BigReal w_ratio = a / ((sub.gamma + k_count) * (k_count + 1));
            for (long n = 0; n <= n_max && certified; ++n) {
                const BigReal first = pow(x0 - x_min, 2 * n) * (1 + abs(x0)) * w;
                const BigReal ratio = pow((x1 - x_min) / (x0 - x_min), 2 * n) * (1 + abs(x1)) / (1 + abs(x0)) * w_ratio;
                if (!(ratio < 1)) {
                    certified = false;
                    break;
                }
                const BigReal tail = first / (1 - ratio);
                if (!(tail <= rel * norms[static_cast<std::size_t>(n)])) {
                    certified = false;
                }
            }
        }
        if (certified) {
            return rounded(std::move(t), prec);
        }
        k_count *= 2;
    }
    throw PrecisionError("recurrence_from_stieltjes: truncation certificate failed; try K > "
                         + std::to_string(k_count));
}

} // namespace charlier::oracle
