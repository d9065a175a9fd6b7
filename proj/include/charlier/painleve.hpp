#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "charlier/bigreal.hpp"
#include "charlier/measures.hpp"
#include "charlier/oracle.hpp"
#include "charlier/report.hpp"

namespace charlier::painleve {

// Coefficients of
//   y'' = (1/(2y) + 1/(y-1)) y'^2 - y'/t + (y-1)^2/t^2 (A y + B/y) + C y/t + D y (y+1)/(y-1).
struct P5Params {
    BigReal A;
    BigReal B;
    BigReal C;
    BigReal D;
};

struct P5Point {
    BigReal t;
    BigReal y;
    BigReal yp; // dy/dt
};

// Coefficients of u'' = u'^2/u - u'/z + (alpha u^2 + beta)/z + gamma u^3 + delta/u
// with gamma = 1, delta = -1.
struct P3Params {
    BigReal alpha;
    BigReal beta;
};

struct P3Point {
    BigReal z;
    BigReal u;
    BigReal up; // du/dz
};

// (A, B, C, D) = ((beta-1)^2/2, -(n+1)^2/2, 2 k1, 0): the equation met by
// the chain function whose image under bn_from_y is b_n(a) with a = k1 t.
P5Params chain_params(long n, const BigReal& beta, const BigReal& k1);

// Throws DomainError when y is 0 or 1 or t is 0.
BigReal p5_second_derivative(const P5Params& params, const P5Point& pt);

// (y-1)(1 + y((beta-1)^2 y^2 - (4t + (beta-1)^2) y - 1)) + 2t(y-1)y' - t^2 y'^2
BigReal first_order_residual(const BigReal& beta, const P5Point& pt);

// The point (t0, y, y') of the classical n = 0 solution that maps to b0.
// Eliminating y' through yprime_from_b turns the first-order equation into
// (y-1) y^2 (b0 (b0 + beta - 1)(1 - y) - t0) = 0, so the admissible root
// y = 1 - t0/(b0 (b0 + beta - 1)) is unique. Throws SingularityError when
// b0 (b0 + beta - 1) vanishes.
P5Point seed_classical_y0(const BigReal& t0, const BigReal& beta, const BigReal& b0, Precision prec);

// B_n = (1 + n + (beta-3n-2) y + (1+2n-beta) y^2 + t y') / (2y(y-1))
BigReal bn_from_y(long n, const BigReal& beta, const P5Point& pt);
// b_{n+1} from the index-n point:
// (1 + n + (beta-3n-4) y + (3+2n-beta) y^2 - t y') / (2y(y-1))
BigReal bnext_from_y(long n, const BigReal& beta, const P5Point& pt);
// Solves bn_from_y for y'.
BigReal yprime_from_b(long n, const BigReal& beta, const BigReal& t, const BigReal& y, const BigReal& bn);

// y_{n+1} and y_{n-1} at the same t:
//   1 - 4t(y-1)y^2 / ((beta-1)^2 (y-1)^2 y^2 - ((n+1)(y-1) +- t y')^2).
// Throw SingularityError on a vanishing denominator and DomainError at y = 1.
BigReal backlund_up(const P5Point& pt, long n, const BigReal& beta);
BigReal backlund_down(const P5Point& pt, long n, const BigReal& beta);

// Points (t = a, y_n, y_n') for n = 0..n_max, built from the seed by
// backlund_up, with y_{n+1}' recovered from bnext_from_y. Runs at the
// precision of the inputs; throws SingularityError when a step degenerates.
std::vector<P5Point> chain_points(const BigReal& a, const BigReal& beta, const BigReal& b0, long n_max);

// b_n (n = 0..n_max, a2 from b via the first string equation) from the
// chain alone, certified to 2^-prec against a run with 64 more bits.
// When the chain passes through a pole of the Baecklund map the Bessel
// mixing weight is moved by +-delta and the two chains are averaged,
// which is exact up to O(delta^2).
RecurrenceTable p5_chain(const MeasureSpec& spec, long n_max, Precision prec);

struct ChainVerification {
    VerificationReport report;
    RecurrenceTable table;
};

// Chain table plus per-n residuals b_chain - b_oracle (Hankel oracle).
ChainVerification p5_chain_verify(const MeasureSpec& spec, long n_max, Precision prec, const BigReal& tol);
ChainVerification p5_chain_verify(const MeasureSpec& spec, long n_max, Precision prec);

// Extrapolated modified-midpoint (Gragg-Bulirsch-Stoer) integration of the
// equation from `start` to t1 with relative local tolerance `tol`
// (default 2^(-prec/4)). Throws IntegrationError when y gets within 10 tol
// of 0 or 1 or grows past 1/tol.
P5Point p5_integrate(const P5Params& params, const P5Point& start, const BigReal& t1, Precision prec,
                     const std::optional<BigReal>& tol = std::nullopt);
// Same, returning the solution at every grid point (steps land on them exactly).
std::vector<P5Point> p5_integrate_grid(const P5Params& params, const P5Point& start, const std::vector<BigReal>& grid,
                                       Precision prec, const std::optional<BigReal>& tol = std::nullopt);

using Signs = std::array<int, 3>;

// T_eps: y1 = 1 - 2 d t y / (t y' - a y^2 + (a - b + d t) y + b) with
// a = e1 sqrt(2A), b = e2 sqrt(-2B), d = e3 sqrt(-2D), and
// A1 = -(C + d(1-a-b))^2/(16D), B1 = (C - d(1-a-b))^2/(16D), C1 = d(b-a), D1 = D.
// DomainError for D = 0 or 2A < 0 or -2B < 0; SingularityError on the denominator.
std::pair<BigReal, P5Params> backlund_general(const P5Point& pt, const P5Params& params, const Signs& eps);
// Only the parameter part of backlund_general.
P5Params backlund_general_params(const P5Params& params, const Signs& eps);
// As above with y1' included (uses y'' from the equation, so y must avoid 0 and 1).
std::pair<P5Point, P5Params> backlund_general_point(const P5Point& pt, const P5Params& params, const Signs& eps);

// y -> 1/y maps (A, B, C, D) to (-B, -A, -C, D).
P5Params invert_params(const P5Params& p);
// If y(z) solves the equation with A = -B, C = 0, then (y+1)^2/(4y) as a
// function of t = z^2 solves it with (4A, 0, D/4, 0).
P5Params quadratic_image_params(const P5Params& p);
// Inverse bookkeeping: (A, 0, C, 0) -> (A/4, -A/4, 0, 4C).
P5Params quadratic_preimage_params(const P5Params& p);

// For the weight a^k/(k!)^2 with y = y(z) solving the equation with
// (n^2/8, -n^2/8, 0, -8) and t = z^2 = a:
//   b_n = (n + 7n y^2 - n y^3 - 2z y' - y(7n + 2z y')) / (8y(y-1)).
// pt.t holds z.
BigReal beta1_bn(long n, const P5Point& pt);

// Maps the beta = 1 chain point of index n (variable t = a) to the point of
// index n+1 in z = sqrt(t): w = 1/y, Y = 2w - 1 + 2 sqrt(w^2 - w) (the root
// with |Y| <= 1), Y' = 8 z w'(t) / (1 - 1/Y^2).
P5Point beta1_lift(const P5Point& chain_point);

// b_0..b_{n_max} for a^k/(k!)^2: b_0 from the seed, b_1 from the lifted
// chain point, then b_{m+1} after each Example step (eps = +-1) of
// backlund_general with signs (-1, -1, eps).
RecurrenceTable beta1_table(const BigReal& a, long n_max, int eps, Precision prec);

// Rescales the independent variable t -> factor t: y' -> y'/factor,
// C -> C/factor, D -> D/factor^2.
std::pair<P5Point, P5Params> rescale_time(const P5Point& pt, const P5Params& params, const BigReal& factor);

// alpha = 2C(s - r - 1), beta = 2(s + r) with s = s1 sqrt(2A), r = s2 sqrt(-2B).
// Requires C^2 = 1 and D = 0.
P3Params p3_parameters(const P5Params& params, int s1, int s2);
// u = sqrt(2t) y / Phi at z = sqrt(2t), Phi = t y' - s y^2 + (s + r) y - r.
// Throws SingularityError when Phi vanishes.
std::pair<P3Point, P3Params> p3_from_p5(const P5Point& pt, const P5Params& params, int s1, int s2);
BigReal p3_second_derivative(const P3Params& params, const P3Point& pt);

// Root signs (s1, s2) that give the listed parameter set `which` (1..4)
// for the chain at index n, k1 = 1/2. Depends on the sign of beta - 1.
std::pair<int, int> p3_signs(int which, const BigReal& beta);
// The closed-form parameter sets 1..4 for index n.
P3Params p3_listed_parameters(int which, long n, const BigReal& beta);

// b_n(a = z^2/4) from a solution u of the P3 equation with parameter set
// `branch`. Branches 1 and 3 are the same formula.
BigReal btilde_from_p3(int branch, const P3Point& pt, long n, const BigReal& beta);

} // namespace charlier::painleve
