#include <gtest/gtest.h>

#include "charlier/measures.hpp"
#include "charlier/mpnum.hpp"
#include "charlier/oracle.hpp"

using namespace charlier;

namespace {

constexpr Precision kP = 256;

BigReal rel_err(const BigReal& x, const BigReal& ref) { return abs(x - ref) / abs(ref); }

} // namespace

TEST(Weights, EmptyProductsGiveOne)
{
    for (const char* a : {"0.5", "1", "7"}) {
        for (const char* beta : {"0.3", "2", "11"}) {
            EXPECT_EQ(weight_at(MeasureSpec::on_n(a, beta), 0, kP), BigReal(1, kP));
        }
    }
}

TEST(Weights, SmallClosedForms)
{
    EXPECT_LT(rel_err(weight_at(MeasureSpec::on_n("1", "2"), 2, kP), BigReal(1, kP) / 12L), BigReal::pow2(-kP + 4, kP));
    EXPECT_LT(rel_err(weight_at(MeasureSpec::shifted("1", "0.5"), 0, kP), BigReal(2, kP)), BigReal::pow2(-kP + 8, kP));
}

TEST(Weights, StrictlyPositiveOnEveryLattice)
{
    for (const auto& spec : {MeasureSpec::on_n("2", "0.3"), MeasureSpec::shifted("2", "-0.5"),
                             MeasureSpec::shifted("2", "1.7"), MeasureSpec::bilattice("2", "0.4", "3")}) {
        for (long k = 0; k < 40; ++k) {
            EXPECT_GT(weight_at(spec, k, kP), 0) << k;
        }
    }
}

TEST(Pearson, IdentityIsExact)
{
    for (const auto& [a, beta] : {std::pair{"1", "2"}, std::pair{"3", "0.7"}, std::pair{"0.25", "1.5"}}) {
        const MeasureSpec spec = MeasureSpec::on_n(a, beta);
        for (long k = 1; k <= 50; ++k) {
            EXPECT_LE(abs(pearson_residual(spec, k, kP)), BigReal::pow2(-kP + 8, kP) * weight_at(spec, k, kP))
                << a << " " << beta << " " << k;
        }
    }
}

TEST(Pearson, PerturbationShowsUpLinearly)
{
    const MeasureSpec spec = MeasureSpec::on_n("1", "2");
    const BigReal eps = BigReal::parse("1e-20", kP);
    const BigReal r = pearson_residual(spec, 1, eps, kP);
    const BigReal expect = -eps * weight_at(spec, 1, kP);
    EXPECT_LT(rel_err(r, expect), BigReal::parse("1e-40", kP));
}

TEST(Pearson, OnlyDefinedOnN)
{
    EXPECT_THROW(pearson_residual(MeasureSpec::shifted("1", "0.5"), 1, kP), DomainError);
    EXPECT_THROW(pearson_residual(MeasureSpec::on_n("1", "0.5"), 0, kP), DomainError);
}

TEST(Moments, ZerothMomentIsABesselFunction)
{
    for (const char* a_text : {"0.5", "1", "4"}) {
        for (const char* beta_text : {"0.3", "1", "1.5"}) {
            const BigReal a = BigReal::parse(a_text, kP);
            const BigReal beta = BigReal::parse(beta_text, kP);
            const BigReal closed = mpnum::gamma(beta, kP) * pow(a, (1 - beta) / 2)
                                   * mpnum::bessel_i(beta - 1, 2 * sqrt(a), kP);
            const BigReal m0 = moment(MeasureSpec::on_n(a_text, beta_text), 0, kP);
            EXPECT_LT(rel_err(m0, closed), BigReal::pow2(-kP + 8, kP)) << a_text << " " << beta_text;
        }
    }
    EXPECT_LT(rel_err(moment(MeasureSpec::on_n("1", "2"), 0, kP), mpnum::bessel_i(BigReal(1, kP), BigReal(2, kP), kP)),
              BigReal::pow2(-kP + 8, kP));
}

TEST(Moments, MatchDirectSummation)
{
    const MeasureSpec spec = MeasureSpec::bilattice("1.3", "0.6", "2");
    const MomentVector mv = moments(spec, 6, kP);
    const auto pts = lattice_points(spec, 200, kP + 64);
    for (long j = 0; j < 6; ++j) {
        BigReal sum(0, kP + 64);
        for (const auto& p : pts) {
            sum += pow(p.node, j) * p.weight;
        }
        EXPECT_LT(rel_err(mv.m[static_cast<std::size_t>(j)], sum), BigReal::pow2(-kP + 4, kP)) << j;
    }
}

TEST(Moments, RatioGivesBesselInitialValue)
{
    for (const char* beta_text : {"0.4", "1", "2.5"}) {
        const MeasureSpec spec = MeasureSpec::on_n("1.7", beta_text);
        const MomentVector mv = moments(spec, 2, kP);
        const BigReal a = BigReal::parse("1.7", kP);
        const BigReal beta = BigReal::parse(beta_text, kP);
        const BigReal z = 2 * sqrt(a);
        const BigReal ratio = sqrt(a) * mpnum::bessel_i(beta, z, kP) / mpnum::bessel_i(beta - 1, z, kP);
        EXPECT_LT(rel_err(mv.m[1] / mv.m[0], ratio), BigReal::pow2(-kP + 8, kP)) << beta_text;
    }
}

TEST(Moments, BiLatticeReducesToNForTinyTau)
{
    const MeasureSpec bi = MeasureSpec::bilattice("1", "0.5", "1e-40");
    const MeasureSpec n = MeasureSpec::on_n("1", "0.5");
    for (long j = 0; j < 4; ++j) {
        EXPECT_LT(rel_err(moment(bi, j, kP), moment(n, j, kP)), BigReal::pow2(-100, kP)) << j;
    }
}

TEST(Moments, ShiftedLatticeIsReflectedNWithMovedNodes)
{
    // Q_n(x) = P_n(x + beta - 1; a, 2 - beta): the shifted measure is the N
    // measure at 2 - beta, translated by 1 - beta and scaled by v_0.
    const BigReal beta = BigReal::parse("0.35", kP);
    const MeasureSpec sh = MeasureSpec::shifted("1.2", "0.35");
    const MeasureSpec refl = MeasureSpec::on_n("1.2", Param(2 - beta));
    const MomentVector mr = moments(refl, 4, kP);
    const BigReal v0 = weight_at(sh, 0, kP);
    const BigReal shift = 1 - beta;
    for (long j = 0; j < 4; ++j) {
        BigReal expect(0, kP);
        BigReal binom(1, kP);
        for (long i = 0; i <= j; ++i) {
            expect += binom * pow(shift, j - i) * mr.m[static_cast<std::size_t>(i)];
            binom = binom * (j - i) / (i + 1);
        }
        EXPECT_LT(rel_err(moment(sh, j, kP), v0 * expect), BigReal::pow2(-kP + 8, kP)) << j;
    }
}

TEST(Moments, HankelDeterminantsArePositive)
{
    for (const auto& spec : {MeasureSpec::on_n("0.5", "0.3"), MeasureSpec::on_n("4", "1.9"),
                             MeasureSpec::shifted("1", "0.5"), MeasureSpec::shifted("2", "-1.5"),
                             MeasureSpec::bilattice("1", "1.5", "1"), MeasureSpec::bilattice("5", "0.2", "0.1")}) {
        const MomentVector mv = moments(spec, 16, 512);
        for (long n = 1; n <= 8; ++n) {
            EXPECT_GT(oracle::hankel_det(mv, n), 0) << to_string(spec.lattice) << " " << n;
        }
    }
}

TEST(Validation, RejectsOutOfRangeParameters)
{
    EXPECT_THROW(MeasureSpec::on_n("0", "1").validate(), DomainError);
    EXPECT_THROW(MeasureSpec::on_n("1", "-0.5").validate(), DomainError);
    EXPECT_THROW(MeasureSpec::shifted("1", "1").validate(), DomainError);
    EXPECT_THROW(MeasureSpec::shifted("1", "2").validate(), DomainError);
    EXPECT_THROW(MeasureSpec::shifted("1", "-3").validate(), DomainError);
    EXPECT_THROW(MeasureSpec::bilattice("1", "1", "1").validate(), DomainError);
    EXPECT_THROW(MeasureSpec::bilattice("1", "0.5", "0").validate(), DomainError);
    EXPECT_THROW(MeasureSpec::bilattice("1", "2.5", "1").validate(), DomainError);
    EXPECT_NO_THROW(MeasureSpec::shifted("1", "-2.5").validate());
    EXPECT_THROW(weight_at(MeasureSpec::on_n("-1", "1"), 0, kP), DomainError);
}

TEST(Validation, LatticeNames)
{
    EXPECT_EQ(parse_lattice("n"), Lattice::N);
    EXPECT_EQ(parse_lattice("Shifted"), Lattice::Shifted);
    EXPECT_EQ(parse_lattice("bi"), Lattice::BiLattice);
    EXPECT_THROW(parse_lattice("Z"), DomainError);
}

TEST(ParamValues, RoundOnlyWhenAsked)
{
    const Param p("0.1");
    EXPECT_EQ(p.at(512).with_prec(128), p.at(128));
    EXPECT_EQ(p.text(), "0.1");
    EXPECT_THROW((void)Param("x1").at(64), DomainError);
}
