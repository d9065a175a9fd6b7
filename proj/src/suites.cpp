#include "charlier/suites.hpp"

#include <chrono>

#include "charlier/laxchain.hpp"
#include "charlier/mpnum.hpp"
#include "charlier/oracle.hpp"
#include "charlier/painleve.hpp"
#include "charlier/toda.hpp"

namespace charlier::suites {

namespace {

using Clock = std::chrono::steady_clock;

BigReal half_prec_tol(Precision prec) { return BigReal::pow2(-static_cast<long>(prec) / 2, prec); }

MeasureSpec make_spec(Lattice lattice, const std::string& a, const std::string& beta, const std::string& tau)
{
    switch (lattice) {
    case Lattice::N:
        return MeasureSpec::on_n(a, beta);
    case Lattice::Shifted:
        return MeasureSpec::shifted(a, beta);
    case Lattice::BiLattice:
        break;
    }
    return MeasureSpec::bilattice(a, beta, tau);
}

bool valid(const MeasureSpec& spec)
{
    try {
        spec.validate();
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

VerificationReport start(const char* name, const GridOptions& grid)
{
    VerificationReport r;
    r.suite = name;
    r.prec_bits = grid.prec;
    return r;
}

void absorb(VerificationReport& into, const VerificationReport& part)
{
    into.cells.insert(into.cells.end(), part.cells.begin(), part.cells.end());
    into.pass = into.pass && part.pass;
}

template <typename F>
VerificationReport timed(F&& body)
{
    const auto t0 = Clock::now();
    VerificationReport r = body();
    r.wall_time = std::chrono::duration<double>(Clock::now() - t0).count();
    return r;
}

} // namespace

std::vector<MeasureSpec> grid_specs(const GridOptions& grid)
{
    std::vector<MeasureSpec> out;
    for (Lattice lattice : grid.lattices) {
        for (const auto& a : grid.a) {
            for (const auto& beta : grid.beta) {
                if (lattice != Lattice::BiLattice) {
                    MeasureSpec spec = make_spec(lattice, a, beta, "1");
                    if (valid(spec)) {
                        out.push_back(std::move(spec));
                    }
                    continue;
                }
                for (const auto& tau : grid.tau) {
                    MeasureSpec spec = make_spec(lattice, a, beta, tau);
                    if (valid(spec)) {
                        out.push_back(std::move(spec));
                    }
                }
            }
        }
    }
    return out;
}

const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"discrete", "toda",    "riccati", "pearson", "symmetry",
                                                "p5chain",  "p3",      "beta1",   "all"};
    return names;
}

VerificationReport discrete_suite(const GridOptions& grid)
{
    return timed([&] {
        VerificationReport r = start("discrete", grid);
        const Precision prec = grid.prec;
        const BigReal tol = half_prec_tol(prec);
        for (const MeasureSpec& spec : grid_specs(grid)) {
            const CellParams params = CellParams::of(spec);
            const RecurrenceTable hankel = oracle::recurrence_from_hankel(spec, grid.n_max, prec);
            absorb(r, laxchain::check_discrete_residuals(hankel, spec, tol));

            const RecurrenceTable stieltjes = oracle::recurrence_from_stieltjes(spec, grid.n_max, prec);
            for (long n = 0; n <= grid.n_max; ++n) {
                const auto i = static_cast<std::size_t>(n);
                r.add(params, n, "stieltjes", {stieltjes.a2[i] - hankel.a2[i], stieltjes.b[i] - hankel.b[i]}, tol);
            }

            try {
                const RecurrenceTable forward = laxchain::recurrence_forward(spec, grid.n_max, prec);
                for (long n = 0; n <= grid.n_max; ++n) {
                    const auto i = static_cast<std::size_t>(n);
                    r.add(params, n, "recursion", {forward.a2[i] - hankel.a2[i], forward.b[i] - hankel.b[i]}, tol);
                }
            } catch (const SingularityError&) {
                // The recursion divides by a - a_n^2; confirm that the oracle
                // really has a_n^2 = a somewhere on the table.
                const BigReal a = spec.a.at(prec);
                long where = 1;
                BigReal closest = abs(hankel.a2[1] - a);
                for (long n = 2; n <= grid.n_max; ++n) {
                    const BigReal d = abs(hankel.a2[static_cast<std::size_t>(n)] - a);
                    if (d < closest) {
                        closest = d;
                        where = n;
                    }
                }
                r.add(params, where, "recursion_singular", {closest}, tol);
            }
        }
        return r;
    });
}

VerificationReport toda_suite(const GridOptions& grid)
{
    return timed([&] {
        VerificationReport r = start("toda", grid);
        const Precision prec = grid.prec;
        const BigReal h = BigReal::pow2(-static_cast<long>(prec) / 10, prec);
        // Truncation error of the stencil is O(h^4); oracle rounding enters as 2^-prec / h.
        const BigReal tol = (square(square(h)) + BigReal::pow2(-static_cast<long>(prec), prec) / h) * (1L << 20);
        for (const MeasureSpec& spec : grid_specs(grid)) {
            const CellParams params = CellParams::of(spec);
            const BigReal a = spec.a.at(prec);
            for (const auto& fr : toda::flow_residuals(spec, a, h, grid.n_max, prec)) {
                r.add(params, fr.n, "toda", {fr.toda_a2, fr.toda_b}, tol);
                r.add(params, fr.n, "xprime", {fr.xprime}, tol);
                r.add(params, fr.n, "bprime", {fr.bprime}, tol);
            }
            const long n_t = std::min(1L, grid.n_max);
            const auto [r1, r2] = toda::toda_t_residual(toda::TodaProbe{spec, n_t, a, h, prec});
            r.add(params, n_t, "toda_t", {r1, r2}, tol * max(a, BigReal(1, prec)));
        }
        return r;
    });
}

VerificationReport riccati_suite(const GridOptions& grid)
{
    return timed([&] {
        VerificationReport r = start("riccati", grid);
        const Precision prec = grid.prec;
        const Precision work = prec + kGuardBits;
        for (const MeasureSpec& spec : grid_specs(grid)) {
            const CellParams params = CellParams::of(spec);
            const BigReal a = spec.a.at(work);
            const BigReal beta = spec.beta.at(work);
            const BigReal tol = BigReal::pow2(-static_cast<long>(prec) + 16, prec) * max(square(a), BigReal(1, work));
            r.add(params, 0, "riccati", {toda::riccati_b0_residual(spec, a, prec)}, tol);

            const BigReal b0 = laxchain::initial_b0(spec, work);
            const BigReal db0 = toda::b0_derivative(spec, a, work);
            r.add(params, 0, "riccati_symmetry", {toda::riccati_value(a, 2 - beta, b0 - 1 + beta, db0)}, tol);

            const MomentVector m = moments(spec, 2, work);
            r.add(params, 0, "initial", {m.m[1] / m.m[0] - b0}, half_prec_tol(prec));
        }
        return r;
    });
}

VerificationReport pearson_suite(const GridOptions& grid)
{
    return timed([&] {
        VerificationReport r = start("pearson", grid);
        const Precision prec = grid.prec;
        for (const MeasureSpec& spec : grid_specs(grid)) {
            if (spec.lattice != Lattice::N) {
                continue;
            }
            const CellParams params = CellParams::of(spec);
            for (long k = 1; k <= 50; ++k) {
                const BigReal w = weight_at(spec, k, prec + kGuardBits);
                r.add(params, k, "pearson", {pearson_residual(spec, k, prec) / w}, half_prec_tol(prec));
            }
        }
        return r;
    });
}

VerificationReport symmetry_suite(const GridOptions& grid)
{
    return timed([&] {
        VerificationReport r = start("symmetry", grid);
        const Precision prec = grid.prec;
        const Precision work = prec + kGuardBits;
        const BigReal tol = half_prec_tol(prec);
        for (const auto& a_text : grid.a) {
            for (const auto& beta_text : grid.beta) {
                const MeasureSpec shifted = MeasureSpec::shifted(a_text, beta_text);
                if (!valid(shifted)) {
                    continue;
                }
                const BigReal beta = shifted.beta.at(work);
                const BigReal reflected = 2 - beta;
                const MeasureSpec plain = MeasureSpec::on_n(a_text, Param(reflected));
                const CellParams params = CellParams::of(shifted);

                const RecurrenceTable hat = oracle::recurrence_from_hankel(shifted, grid.n_max, prec);
                const RecurrenceTable base = oracle::recurrence_from_hankel(plain, grid.n_max, prec);
                for (long n = 0; n <= grid.n_max; ++n) {
                    const auto i = static_cast<std::size_t>(n);
                    r.add(params, n, "symmetry", {hat.a2[i] - base.a2[i], hat.b[i] - (base.b[i] + 1 - beta)}, tol);
                }

                const BigReal z = 2 * sqrt(shifted.a.at(work));
                const BigReal lhs = mpnum::bessel_i(-beta, z, work);
                const BigReal rhs = mpnum::bessel_i(2 - beta, z, work)
                                    + 2 * (1 - beta) / z * mpnum::bessel_i(1 - beta, z, work);
                r.add(params, 0, "bessel_contiguous", {(lhs - rhs) / max(abs(lhs), BigReal(1, work))}, tol);

                const BigReal one(1, work);
                const auto pa = painleve::chain_params(0, beta, one);
                const auto pb = painleve::chain_params(0, reflected, one);
                r.add(params, 0, "p5_params", {pa.A - pb.A}, BigReal(0, prec));

                const long n_rec = std::min(5L, grid.n_max);
                const RecurrenceTable fh = laxchain::recurrence_forward(shifted, n_rec, prec);
                const RecurrenceTable fb = laxchain::recurrence_forward(plain, n_rec, prec);
                for (long n = 0; n <= n_rec; ++n) {
                    const auto i = static_cast<std::size_t>(n);
                    r.add(params, n, "recursion_symmetry", {fh.a2[i] - fb.a2[i], fh.b[i] - (fb.b[i] + 1 - beta)},
                          tol);
                }
            }
        }
        return r;
    });
}

VerificationReport p5chain_suite(const GridOptions& grid)
{
    return timed([&] {
        VerificationReport r = start("p5chain", grid);
        const Precision prec = grid.prec;
        const BigReal tol = half_prec_tol(prec);
        for (const MeasureSpec& spec : grid_specs(grid)) {
            const CellParams params = CellParams::of(spec);
            absorb(r, painleve::p5_chain_verify(spec, grid.n_max, prec, tol).report);

            const Precision work = prec + 40 * grid.n_max + 64;
            const BigReal a = spec.a.at(work);
            const BigReal beta = spec.beta.at(work);
            const BigReal b0 = laxchain::initial_b0(spec, work);
            try {
                const auto pts = painleve::chain_points(a, beta, b0, grid.n_max);
                for (long n = 1; n <= grid.n_max; ++n) {
                    const auto i = static_cast<std::size_t>(n);
                    const BigReal back = painleve::backlund_down(pts[i], n, beta);
                    r.add(params, n, "involution", {back - pts[i - 1].y}, tol);
                }
            } catch (const SingularityError&) {
                // The chain passes through a pole of the up-map here; the
                // table above was produced by the regularised chain instead.
            }

            // n = 0 flow: integrate the seed over [a, a + 1/2] and compare
            // with the Bessel ratio on ten grid points.
            const BigReal one(1, work);
            const auto seed = painleve::seed_classical_y0(a, beta, b0, prec);
            std::vector<BigReal> ts;
            for (int k = 1; k <= 10; ++k) {
                ts.push_back(spec.a.at(prec) + BigReal(k, prec) / 20);
            }
            const auto path = painleve::p5_integrate_grid(painleve::chain_params(0, beta, one), seed, ts, prec);
            const BigReal flow_tol = BigReal::pow2(-static_cast<long>(prec) / 4 + 24, prec);
            for (std::size_t k = 0; k < ts.size(); ++k) {
                const BigReal b_flow = painleve::bn_from_y(0, beta, path[k]);
                const BigReal b_ref = laxchain::initial_b0(spec.with_a(ts[k]), prec);
                r.add(params, static_cast<long>(k) + 1, "flow", {b_flow - b_ref}, flow_tol);
            }
        }
        return r;
    });
}

namespace {

// u, u' of the chain at index n with k1 = 1/2, evaluated at z = 2 sqrt(a).
std::pair<painleve::P3Point, painleve::P3Params> p3_point(const MeasureSpec& spec, const BigReal& a, long n,
                                                          int which, Precision work)
{
    const BigReal beta = spec.beta.at(work);
    const BigReal b0 = laxchain::initial_b0(spec.with_a(a), work);
    const auto pts = painleve::chain_points(a, beta, b0, n);
    const auto [pt, par] = painleve::rescale_time(pts.back(), painleve::chain_params(n, beta, BigReal(1, work)),
                                                  BigReal(2, work));
    const auto [s1, s2] = painleve::p3_signs(which, beta);
    return painleve::p3_from_p5(pt, par, s1, s2);
}

} // namespace

VerificationReport p3_suite(const GridOptions& grid)
{
    return timed([&] {
        VerificationReport r = start("p3", grid);
        const Precision prec = grid.prec;
        const Precision work = prec + 40 * grid.n_max + 64;
        const BigReal tol = half_prec_tol(prec);
        for (const MeasureSpec& spec : grid_specs(grid)) {
            const CellParams params = CellParams::of(spec);
            const BigReal a = spec.a.at(work);
            const BigReal beta = spec.beta.at(work);
            const RecurrenceTable oracle = oracle::recurrence_from_hankel(spec, grid.n_max, prec);
            const BigReal h = BigReal::pow2(-static_cast<long>(prec) / 6, work);
            try {
                for (long n = 0; n <= grid.n_max; ++n) {
                    for (int which = 1; which <= 4; ++which) {
                        const auto [pt, p3] = p3_point(spec, a, n, which, work);
                        const auto listed = painleve::p3_listed_parameters(which, n, beta);
                        r.add(params, n, "p3_params", {p3.alpha - listed.alpha, p3.beta - listed.beta},
                              BigReal(0, prec));
                        const BigReal bt = painleve::btilde_from_p3(which, pt, n, beta);
                        r.add(params, n, "p3_branch", {bt - oracle.b[static_cast<std::size_t>(n)]}, tol);

                        // u'' by a 5-point stencil in z from chain values at
                        // a = (z + k h)^2 / 4 against the equation.
                        std::vector<BigReal> us;
                        for (long k = -2; k <= 2; ++k) {
                            const BigReal zk = pt.z + k * h;
                            us.push_back(p3_point(spec, square(zk) / 4, n, which, work).first.u);
                        }
                        const BigReal upp = (-us[0] + 16 * us[1] - 30 * us[2] + 16 * us[3] - us[4]) / (12 * square(h));
                        r.add(params, n, "p3_equation", {upp - painleve::p3_second_derivative(p3, pt)}, tol);
                    }
                }
            } catch (const SingularityError&) {
                // Chain points are singular for this measure (see p5chain).
            }
        }
        return r;
    });
}

VerificationReport beta1_suite(const GridOptions& grid)
{
    return timed([&] {
        VerificationReport r = start("beta1", grid);
        const Precision prec = grid.prec;
        const BigReal tol = half_prec_tol(prec);
        for (const auto& a_text : grid.a) {
            const MeasureSpec spec = MeasureSpec::on_n(a_text, "1");
            const CellParams params = CellParams::of(spec);
            const RecurrenceTable oracle = oracle::recurrence_from_hankel(spec, grid.n_max, prec);
            for (int eps : {1, -1}) {
                const RecurrenceTable t = painleve::beta1_table(spec.a.at(prec), grid.n_max, eps, prec);
                const std::string check = eps > 0 ? "beta1_eps+" : "beta1_eps-";
                for (long n = 0; n <= grid.n_max; ++n) {
                    const auto i = static_cast<std::size_t>(n);
                    r.add(params, n, check, {t.b[i] - oracle.b[i], t.a2[i] - oracle.a2[i]}, tol);
                }
            }
        }
        // Parameter bookkeeping, independent of a.
        const CellParams none{"", "1", "N", ""};
        const BigReal one(1, prec);
        for (long n = 0; n <= grid.n_max; ++n) {
            const BigReal q = BigReal((n + 1) * (n + 1), prec) / 8;
            const auto p = painleve::quadratic_preimage_params(painleve::invert_params(painleve::chain_params(n, one, one)));
            r.add(none, n, "beta1_params", {p.A - q, p.B + q, p.C, p.D + 8}, BigReal(0, prec));

            const BigReal m2 = BigReal(n * n, prec) / 8;
            for (int eps : {1, -1}) {
                const auto e = painleve::backlund_general_params(
                    painleve::P5Params{m2, -m2, BigReal(0, prec), BigReal(-8, prec)}, {-1, -1, eps});
                r.add(none, n, "example_params", {e.A - q, e.B + q, e.C, e.D + 8}, BigReal(0, prec));
            }

            // Parameter sets of the P3 bridge at beta = 1.
            const auto p1 = painleve::p3_listed_parameters(1, n, one);
            const auto p2 = painleve::p3_listed_parameters(2, n, one);
            const auto p3 = painleve::p3_listed_parameters(3, n, one);
            const auto p4 = painleve::p3_listed_parameters(4, n, one);
            r.add(none, n, "p3_beta1",
                  {p1.alpha - 2 * n, p1.beta + 2 * (n + 1), p3.alpha - 2 * n, p3.beta + 2 * (n + 1),
                   p2.alpha + 2 * (n + 2), p2.beta - 2 * (n + 1), p4.alpha + 2 * (n + 2), p4.beta - 2 * (n + 1)},
                  BigReal(0, prec));
        }
        return r;
    });
}

VerificationReport run_suite(std::string_view name, const GridOptions& grid)
{
    if (name == "discrete") {
        return discrete_suite(grid);
    }
    if (name == "toda") {
        return toda_suite(grid);
    }
    if (name == "riccati") {
        return riccati_suite(grid);
    }
    if (name == "pearson") {
        return pearson_suite(grid);
    }
    if (name == "symmetry") {
        return symmetry_suite(grid);
    }
    if (name == "p5chain") {
        return p5chain_suite(grid);
    }
    if (name == "p3") {
        return p3_suite(grid);
    }
    if (name == "beta1") {
        return beta1_suite(grid);
    }
    if (name == "all") {
        std::vector<VerificationReport> parts;
        for (const auto& n : suite_names()) {
            if (n != "all") {
                parts.push_back(run_suite(n, grid));
            }
        }
        return merge(parts);
    }
    throw DomainError("unknown suite '" + std::string(name) + "'");
}

} // namespace charlier::suites
