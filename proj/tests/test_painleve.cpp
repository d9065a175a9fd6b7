#include <gtest/gtest.h>

#include <optional>

#include <vector>

#include "charlier/laxchain.hpp"
#include "charlier/oracle.hpp"
#include "charlier/painleve.hpp"

using namespace charlier;
namespace pv = charlier::painleve;

namespace {

constexpr Precision kP = 512;

BigReal tight() { return BigReal::parse("1e-20", kP); }

std::vector<pv::P5Point> chain_for(const MeasureSpec& spec, const BigReal& a, long n_max, Precision work)
{
    const BigReal b0 = laxchain::initial_b0(spec.with_a(a), work);
    return pv::chain_points(a.with_prec(work), spec.beta.at(work), b0, n_max);
}

// P3 point of the index-n chain for the given sign set, at a = z^2/4.
std::pair<pv::P3Point, pv::P3Params> p3_at(const MeasureSpec& spec, const pv::P5Point& chain_pt, long n, int which,
                                           Precision work)
{
    const BigReal beta = spec.beta.at(work);
    const auto [pt, par] = pv::rescale_time(chain_pt, pv::chain_params(n, beta, BigReal(1, work)), BigReal(2, work));
    const auto [s1, s2] = pv::p3_signs(which, beta);
    return pv::p3_from_p5(pt, par, s1, s2);
}

} // namespace

TEST(P5Equation, ConstantsSolveTheTrivialEquation)
{
    const BigReal z(0, kP);
    const pv::P5Params zero{z, z, z, z};
    EXPECT_EQ(pv::p5_second_derivative(zero, {BigReal(2, kP), BigReal::parse("0.3", kP), z}), z);
    EXPECT_THROW(pv::p5_second_derivative(zero, {BigReal(2, kP), BigReal(1, kP), z}), DomainError);
    EXPECT_THROW(pv::p5_second_derivative(zero, {BigReal(2, kP), z, z}), DomainError);
    EXPECT_THROW(pv::p5_second_derivative(zero, {z, BigReal(0.5, kP), z}), DomainError);
}

TEST(P5Equation, ChainParametersAreReflectionInvariant)
{
    const BigReal one(1, kP);
    for (long n = 0; n < 5; ++n) {
        // Dyadic beta so that beta and 2 - beta are both exact.
        const BigReal beta = BigReal::parse("0.375", kP);
        const auto p = pv::chain_params(n, beta, one);
        const auto q = pv::chain_params(n, 2 - beta, one);
        EXPECT_EQ(p.A, q.A);
        EXPECT_EQ(p.B, BigReal(-(n + 1) * (n + 1), kP) / 2);
        EXPECT_EQ(p.C, BigReal(2, kP));
        EXPECT_EQ(p.D, BigReal(0, kP));
    }
}

TEST(Seed, SatisfiesBothDefiningEquations)
{
    for (const auto& spec : {MeasureSpec::on_n("1", "1.5"), MeasureSpec::shifted("1", "0.5"),
                             MeasureSpec::bilattice("0.8", "0.5", "2")}) {
        const BigReal a = spec.a.at(kP);
        const BigReal beta = spec.beta.at(kP);
        const BigReal b0 = laxchain::initial_b0(spec, kP);
        const auto pt = pv::seed_classical_y0(a, beta, b0, kP);
        EXPECT_LT(abs(pv::first_order_residual(beta, pt)), BigReal::pow2(-kP + 16, kP)) << to_string(spec.lattice);
        EXPECT_LT(abs(pv::bn_from_y(0, beta, pt) - b0), BigReal::pow2(-kP + 16, kP)) << to_string(spec.lattice);
    }
}

TEST(Seed, DegenerateBesselRatioIsSingular)
{
    const BigReal beta = BigReal::parse("1.5", kP);
    EXPECT_THROW(pv::seed_classical_y0(BigReal(1, kP), beta, 1 - beta, kP), SingularityError);
}

TEST(Seed, SecondDerivativeMatchesImplicitDifferentiation)
{
    // On the seed curve E(t, y, y') = 0, so y'' = -(E_t + E_y y') / E_y'.
    // Partial derivatives by central differences with a tiny step at
    // triple precision.
    const Precision w = 3 * kP;
    const MeasureSpec spec = MeasureSpec::on_n("1", "1.5");
    const BigReal beta = spec.beta.at(w);
    const auto pt = pv::seed_classical_y0(BigReal(1, w), beta, laxchain::initial_b0(spec, w), w);
    const BigReal h = BigReal::pow2(-300, w);
    auto e = [&](const BigReal& t, const BigReal& y, const BigReal& yp) {
        return pv::first_order_residual(beta, {t, y, yp});
    };
    const BigReal et = (e(pt.t + h, pt.y, pt.yp) - e(pt.t - h, pt.y, pt.yp)) / (2 * h);
    const BigReal ey = (e(pt.t, pt.y + h, pt.yp) - e(pt.t, pt.y - h, pt.yp)) / (2 * h);
    const BigReal ep = (e(pt.t, pt.y, pt.yp + h) - e(pt.t, pt.y, pt.yp - h)) / (2 * h);
    const BigReal implicit = -(et + ey * pt.yp) / ep;
    const BigReal rhs = pv::p5_second_derivative(pv::chain_params(0, beta, BigReal(1, w)), pt);
    EXPECT_LT(abs(implicit - rhs), tight());
}

TEST(Transformation, AlgebraicRoundTrips)
{
    const BigReal beta = BigReal::parse("0.7", kP);
    const pv::P5Point pt{BigReal::parse("1.3", kP), BigReal::parse("-0.4", kP), BigReal::parse("2.5", kP)};
    for (long n = 0; n < 4; ++n) {
        const BigReal b = pv::bn_from_y(n, beta, pt);
        EXPECT_LT(abs(pv::yprime_from_b(n, beta, pt.t, pt.y, b) - pt.yp), BigReal::pow2(-kP + 8, kP));
        // A change in b moves y' by 2y(y-1) db / t.
        const BigReal db = BigReal::parse("1e-30", kP);
        const BigReal dyp = pv::yprime_from_b(n, beta, pt.t, pt.y, b + db) - pt.yp;
        EXPECT_LT(abs(dyp - 2 * pt.y * (pt.y - 1) * db / pt.t), BigReal::pow2(-kP + 16, kP));
    }
    EXPECT_THROW(pv::yprime_from_b(0, beta, BigReal(0, kP), pt.y, BigReal(1, kP)), DomainError);
    EXPECT_THROW(pv::bn_from_y(0, beta, {pt.t, BigReal(1, kP), pt.yp}), DomainError);
}

TEST(Backlund, UpAndDownAreInverse)
{
    const Precision work = kP + 40 * 10 + 64;
    const MeasureSpec spec = MeasureSpec::on_n("1", "1.5");
    const BigReal beta = spec.beta.at(work);
    const auto pts = chain_for(spec, BigReal(1, work), 10, work);
    for (long n = 1; n <= 10; ++n) {
        const auto i = static_cast<std::size_t>(n);
        EXPECT_LT(abs(pv::backlund_down(pts[i], n, beta) - pts[i - 1].y), BigReal::pow2(-kP / 2, kP)) << n;
    }
    EXPECT_THROW(pv::backlund_up({BigReal(1, kP), BigReal(1, kP), BigReal(0.5, kP)}, 0, BigReal(1.5, kP)), DomainError);
    EXPECT_THROW(pv::backlund_down({BigReal(1, kP), BigReal(1, kP), BigReal(0.5, kP)}, 1, BigReal(1.5, kP)), DomainError);
}

TEST(Backlund, PointRebuiltFromOracleStepsBackToTheSeed)
{
    const Precision work = kP + 128;
    const MeasureSpec spec = MeasureSpec::on_n("1", "1.5");
    const BigReal beta = spec.beta.at(work);
    const BigReal t(1, work);
    const auto oracle = oracle::recurrence_from_hankel(spec, 3, work);
    const auto seed = pv::seed_classical_y0(t, beta, oracle.b[0], work);
    const BigReal y1 = pv::backlund_up(seed, 0, beta);
    const pv::P5Point p1{t, y1, pv::yprime_from_b(1, beta, t, y1, oracle.b[1])};
    EXPECT_LT(abs(pv::backlund_down(p1, 1, beta) - seed.y), tight());
    // The companion formula at the index-n point gives b_{n+1}.
    EXPECT_LT(abs(pv::bnext_from_y(0, beta, seed) - oracle.b[1]), tight());
    EXPECT_LT(abs(pv::bnext_from_y(1, beta, p1) - oracle.b[2]), tight());
}

TEST(Chain, MatchesTheOracleOnEveryLattice)
{
    for (const char* a : {"0.8", "1", "1.3"}) {
        for (const char* beta : {"0.5", "1.5"}) {
            for (const auto& spec :
                 {MeasureSpec::on_n(a, beta), MeasureSpec::shifted(a, beta), MeasureSpec::bilattice(a, beta, "1")}) {
                const auto chain = pv::p5_chain(spec, 10, kP);
                const auto oracle = oracle::recurrence_from_hankel(spec, 10, kP);
                EXPECT_EQ(chain.source, Source::P5Chain);
                for (std::size_t n = 0; n <= 10; ++n) {
                    EXPECT_LT(abs(chain.b[n] - oracle.b[n]), tight()) << to_string(spec.lattice) << " " << a << " "
                                                                     << beta << " " << n;
                    EXPECT_LT(abs(chain.a2[n] - oracle.a2[n]), tight()) << n;
                }
            }
        }
    }
}

TEST(Chain, VerifyReportCarriesOneCellPerIndex)
{
    const auto v = pv::p5_chain_verify(MeasureSpec::shifted("1", "0.5"), 6, kP);
    EXPECT_TRUE(v.report.pass);
    EXPECT_EQ(v.report.cells.size(), 7u);
    EXPECT_EQ(v.report.cells.back().check, "p5chain");
    EXPECT_EQ(v.table.b.size(), 7u);
}

TEST(Integrator, FlowOfTheSeedFollowsTheBesselRatio)
{
    const MeasureSpec spec = MeasureSpec::on_n("1", "1.5");
    const BigReal beta = spec.beta.at(kP);
    const auto seed = pv::seed_classical_y0(BigReal(1, kP), beta, laxchain::initial_b0(spec, kP), kP);
    const auto params = pv::chain_params(0, beta, BigReal(1, kP));
    const auto end = pv::p5_integrate(params, seed, BigReal(1.5, kP), kP);
    EXPECT_EQ(end.t, BigReal(1.5, kP));
    EXPECT_LT(abs(pv::bn_from_y(0, beta, end) - laxchain::initial_b0(spec.with_a(BigReal(1.5, kP)), kP)), tight());

    const auto short_hop = pv::p5_integrate(params, seed, BigReal::parse("1.1", kP), kP);
    EXPECT_LT(abs(pv::bn_from_y(0, beta, short_hop) - laxchain::initial_b0(spec.with_a(short_hop.t), kP)), tight());
}

TEST(Integrator, ZeroLengthReturnsStart)
{
    const pv::P5Point start{BigReal(1, kP), BigReal::parse("0.3", kP), BigReal::parse("0.2", kP)};
    const auto end = pv::p5_integrate(pv::chain_params(0, BigReal(1.5, kP), BigReal(1, kP)), start, start.t, kP);
    EXPECT_EQ(end.t, start.t);
    EXPECT_EQ(end.y, start.y);
    EXPECT_EQ(end.yp, start.yp);
}

TEST(Integrator, DefectFollowsTheTolerance)
{
    const MeasureSpec spec = MeasureSpec::on_n("1", "1.5");
    const BigReal beta = spec.beta.at(kP);
    const auto seed = pv::seed_classical_y0(BigReal(1, kP), beta, laxchain::initial_b0(spec, kP), kP);
    const auto params = pv::chain_params(0, beta, BigReal(1, kP));
    const BigReal ref = laxchain::initial_b0(spec.with_a(BigReal(1.5, kP)), kP);
    BigReal previous(1, kP);
    for (long bits : {20, 40, 80}) {
        const BigReal tol = BigReal::pow2(-bits, kP);
        const BigReal defect = abs(pv::bn_from_y(0, beta, pv::p5_integrate(params, seed, BigReal(1.5, kP), kP, tol)) - ref);
        EXPECT_LT(defect, 1000 * tol) << bits;
        EXPECT_LT(defect, previous) << bits;
        previous = defect;
    }
}

TEST(Integrator, DenseOutputSatisfiesTheEquation)
{
    const MeasureSpec spec = MeasureSpec::on_n("1", "1.5");
    const BigReal beta = spec.beta.at(kP);
    const auto seed = pv::seed_classical_y0(BigReal(1, kP), beta, laxchain::initial_b0(spec, kP), kP);
    const auto params = pv::chain_params(0, beta, BigReal(1, kP));
    const BigReal t0 = BigReal::parse("1.2", kP);
    auto fd_error = [&](const BigReal& h) {
        std::vector<BigReal> grid;
        for (long k = -2; k <= 2; ++k) {
            grid.push_back(t0 + k * h);
        }
        const auto pts = pv::p5_integrate_grid(params, seed, grid, kP);
        const BigReal ypp = (-pts[0].y + 16 * pts[1].y - 30 * pts[2].y + 16 * pts[3].y - pts[4].y) / (12 * square(h));
        return abs(ypp - pv::p5_second_derivative(params, pts[2]));
    };
    const BigReal e1 = fd_error(BigReal::parse("1e-2", kP));
    const BigReal e2 = fd_error(BigReal::parse("5e-3", kP));
    EXPECT_LT(e1, BigReal::parse("1e-6", kP));
    EXPECT_GT(e1 / e2, 14);
    EXPECT_LT(e1 / e2, 18);
}

TEST(Integrator, ReportsTheLastGoodPointNearAPole)
{
    // Starting just off y = 1 the solution leaves the admissible region at once.
    const BigReal tol = BigReal::pow2(-40, kP);
    const pv::P5Point start{BigReal(1, kP), 1 + BigReal::pow2(-60, kP), BigReal(0, kP)};
    try {
        (void)pv::p5_integrate(pv::chain_params(0, BigReal(1.5, kP), BigReal(1, kP)), start, BigReal(2, kP), kP, tol);
        FAIL() << "expected IntegrationError";
    } catch (const IntegrationError& e) {
        const BigReal last = BigReal::parse(e.last_good_t(), kP);
        EXPECT_GE(last, BigReal(1, kP));
        EXPECT_LT(last, BigReal(2, kP));
    }
}

TEST(GeneralBacklund, ParameterArithmeticAtIndexTwo)
{
    const BigReal z(0, kP);
    const pv::P5Params p{BigReal(0.5, kP), BigReal(-0.5, kP), z, BigReal(-8, kP)};
    // a = b = 1, d = 4: A1 = -(4(1-2))^2/(-128) = 1/8, B1 = -1/8, C1 = 0.
    const auto q = pv::backlund_general_params(p, {1, 1, 1});
    EXPECT_EQ(q.A, BigReal(0.125, kP));
    EXPECT_EQ(q.B, BigReal(-0.125, kP));
    EXPECT_EQ(q.C, z);
    EXPECT_EQ(q.D, BigReal(-8, kP));
    // a = b = -1: 1 - a - b = 3 and the index goes up by one.
    for (int eps : {1, -1}) {
        const auto r = pv::backlund_general_params(p, {-1, -1, eps});
        EXPECT_EQ(r.A, BigReal(9, kP) / 8);
        EXPECT_EQ(r.B, BigReal(-9, kP) / 8);
        EXPECT_EQ(r.C, z);
        EXPECT_EQ(r.D, BigReal(-8, kP));
    }
    // a = 1, b = -1, d = -4: C1 = d(b - a) = 8.
    EXPECT_EQ(pv::backlund_general_params(p, {1, -1, -1}).C, BigReal(8, kP));
}

TEST(GeneralBacklund, ZeroMapsToOneAndDZeroIsRejected)
{
    const BigReal z(0, kP);
    const pv::P5Params p{BigReal(0.5, kP), BigReal(-0.5, kP), z, BigReal(-8, kP)};
    const auto [y1, q] = pv::backlund_general({BigReal(2, kP), z, BigReal(3, kP)}, p, {1, 1, 1});
    EXPECT_EQ(y1, BigReal(1, kP));
    const pv::P5Params no_d{BigReal(0.5, kP), BigReal(-0.5, kP), BigReal(1, kP), z};
    EXPECT_THROW(pv::backlund_general({BigReal(2, kP), BigReal(0.3, kP), z}, no_d, {1, 1, 1}), DomainError);
}

TEST(ParameterMaps, InversionAndQuadraticChange)
{
    const BigReal one(1, kP);
    const pv::P5Params p{BigReal(2, kP), BigReal(-3, kP), BigReal(5, kP), BigReal(7, kP)};
    const auto inv = pv::invert_params(p);
    EXPECT_EQ(inv.A, BigReal(3, kP));
    EXPECT_EQ(inv.B, BigReal(-2, kP));
    EXPECT_EQ(inv.C, BigReal(-5, kP));
    EXPECT_EQ(inv.D, BigReal(7, kP));
    // y -> 1/y then the quadratic change take the beta = 1 chain parameters
    // (0, -(n+1)^2/2, 2 k1, 0) to ((n+1)^2/8, -(n+1)^2/8, 0, -8 k1).
    for (const char* k1_text : {"1", "0.5"}) {
        const BigReal k1 = BigReal::parse(k1_text, kP);
        for (long n = 0; n < 5; ++n) {
            const auto q = pv::quadratic_preimage_params(pv::invert_params(pv::chain_params(n, one, k1)));
            const BigReal m = BigReal((n + 1) * (n + 1), kP) / 8;
            EXPECT_EQ(q.A, m);
            EXPECT_EQ(q.B, -m);
            EXPECT_EQ(q.C, BigReal(0, kP));
            EXPECT_EQ(q.D, -8 * k1);
            const auto back = pv::quadratic_image_params(q);
            EXPECT_EQ(back.A, 4 * m);
            EXPECT_EQ(back.B, BigReal(0, kP));
            EXPECT_EQ(back.C, -2 * k1);
        }
    }
}

TEST(BetaOne, BothExampleBranchesReproduceTheOracle)
{
    const MeasureSpec spec = MeasureSpec::on_n("1", "1");
    const auto oracle = oracle::recurrence_from_hankel(spec, 6, kP);
    for (int eps : {1, -1}) {
        const auto t = pv::beta1_table(BigReal(1, kP), 6, eps, kP);
        for (std::size_t n = 0; n <= 6; ++n) {
            EXPECT_LT(abs(t.b[n] - oracle.b[n]), BigReal::parse("1e-15", kP)) << eps << " " << n;
            EXPECT_LT(abs(t.a2[n] - oracle.a2[n]), BigReal::parse("1e-15", kP)) << eps << " " << n;
        }
    }
}

TEST(BetaOne, LiftedPointGivesTheNextCoefficient)
{
    const Precision work = kP + 128;
    const MeasureSpec spec = MeasureSpec::on_n("1.4", "1");
    const auto oracle = oracle::recurrence_from_hankel(spec, 3, kP);
    const auto pts = chain_for(spec, BigReal::parse("1.4", work), 2, work);
    for (long n = 0; n <= 2; ++n) {
        const auto lifted = pv::beta1_lift(pts[static_cast<std::size_t>(n)]);
        EXPECT_LT(abs(square(lifted.t) - BigReal::parse("1.4", kP)), BigReal::pow2(-kP + 8, kP));
        EXPECT_LT(abs(pv::beta1_bn(n + 1, lifted) - oracle.b[static_cast<std::size_t>(n) + 1]), tight()) << n;
    }
}

TEST(P3Bridge, SignEnumerationGivesTheListedSets)
{
    const Precision work = kP + 128;
    for (const char* beta_text : {"0.5", "1.5"}) {
        const MeasureSpec spec = MeasureSpec::on_n("1", beta_text);
        const BigReal beta = spec.beta.at(work);
        const auto pts = chain_for(spec, BigReal(1, work), 3, work);
        for (long n = 0; n <= 3; ++n) {
            for (int which = 1; which <= 4; ++which) {
                const auto [pt, p3] = p3_at(spec, pts[static_cast<std::size_t>(n)], n, which, work);
                const auto listed = pv::p3_listed_parameters(which, n, beta);
                EXPECT_EQ(p3.alpha, listed.alpha) << beta_text << " " << n << " " << which;
                EXPECT_EQ(p3.beta, listed.beta) << beta_text << " " << n << " " << which;
            }
        }
        // First set in closed form: alpha = 2(1 + n - beta), beta~ = -2(n + beta).
        const auto first = pv::p3_listed_parameters(1, 2, beta);
        EXPECT_EQ(first.alpha, 2 * (3 - beta));
        EXPECT_EQ(first.beta, -2 * (2 + beta));
    }
    const BigReal one(1, kP);
    for (long n = 0; n < 4; ++n) {
        EXPECT_EQ(pv::p3_listed_parameters(1, n, one).alpha, BigReal(2 * n, kP));
        EXPECT_EQ(pv::p3_listed_parameters(1, n, one).beta, BigReal(-2 * (n + 1), kP));
        EXPECT_EQ(pv::p3_listed_parameters(2, n, one).alpha, BigReal(-2 * (n + 2), kP));
        EXPECT_EQ(pv::p3_listed_parameters(2, n, one).beta, BigReal(2 * (n + 1), kP));
    }
}

TEST(P3Bridge, BranchesRecoverTheOracleCoefficient)
{
    // N lattice, beta = 1.5, n = 2, z = 2 (so a = z^2/4 = 1).
    const Precision work = kP + 128;
    const MeasureSpec spec = MeasureSpec::on_n("1", "1.5");
    const BigReal beta = spec.beta.at(work);
    const auto oracle = oracle::recurrence_from_hankel(spec, 2, kP);
    const auto pts = chain_for(spec, BigReal(1, work), 2, work);
    const auto [pt1, par1] = p3_at(spec, pts[2], 2, 1, work);
    EXPECT_EQ(pt1.z, BigReal(2, work));
    const BigReal b1 = pv::btilde_from_p3(1, pt1, 2, beta);
    EXPECT_LT(abs(b1 - oracle.b[2]), BigReal::parse("1e-15", kP));
    EXPECT_EQ(pv::btilde_from_p3(3, pt1, 2, beta), b1);
    for (int which : {2, 3, 4}) {
        const auto [pt, par] = p3_at(spec, pts[2], 2, which, work);
        EXPECT_LT(abs(pv::btilde_from_p3(which, pt, 2, beta) - b1), tight()) << which;
    }
}

TEST(P3Bridge, MappedSolutionSolvesTheEquationToFourthOrder)
{
    const Precision work = kP + 128;
    const MeasureSpec spec = MeasureSpec::shifted("1", "0.5");
    const long n = 1;
    const BigReal z0(2, work);
    auto residual = [&](const BigReal& h) {
        std::vector<pv::P3Point> us;
        std::optional<pv::P3Params> par;
        for (long k = -2; k <= 2; ++k) {
            const BigReal z = z0 + k * h;
            const auto pts = chain_for(spec, square(z) / 4, n, work);
            const auto mapped = p3_at(spec, pts.back(), n, 2, work);
            us.push_back(mapped.first);
            par = mapped.second;
        }
        const BigReal upp = (-us[0].u + 16 * us[1].u - 30 * us[2].u + 16 * us[3].u - us[4].u) / (12 * square(h));
        return abs(upp - pv::p3_second_derivative(*par, us[2]));
    };
    const BigReal r1 = residual(BigReal::parse("1e-2", work));
    const BigReal r2 = residual(BigReal::parse("5e-3", work));
    EXPECT_LT(r1, BigReal::parse("1e-6", kP));
    EXPECT_GT(r1 / r2, 14);
    EXPECT_LT(r1 / r2, 18);
}

TEST(P3Bridge, VanishingPhiIsSingular)
{
    const BigReal z(0, kP);
    // Phi = t y' - s y^2 + (s + r) y - r with A = 2, B = 0: s = 2, r = 0, y = 1, y' = 0.
    const pv::P5Params p{BigReal(2, kP), z, BigReal(1, kP), z};
    EXPECT_THROW(pv::p3_from_p5({BigReal(1, kP), BigReal(1, kP), z}, p, 1, 1), SingularityError);
    const pv::P5Params bad{BigReal(2, kP), z, BigReal(3, kP), z};
    EXPECT_THROW(pv::p3_parameters(bad, 1, 1), DomainError);
}
