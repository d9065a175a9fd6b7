#pragma once

#include <string_view>
#include <vector>

#include "charlier/bigreal.hpp"
#include "charlier/measures.hpp"

namespace charlier {

enum class Source { Hankel, Stieltjes, Recursion, P5Chain };

std::string_view to_string(Source source);
Source parse_source(std::string_view text);

// Coefficients of  x P_n = P_{n+1} + b_n P_n + a_n^2 P_{n-1}  for n = 0..n_max.
// a2[0] is 0 by convention.
struct RecurrenceTable {
    MeasureSpec spec;
    long n_max = 0;
    std::vector<BigReal> a2;
    std::vector<BigReal> b;
    Precision prec = kMinPrecision;
    Source source = Source::Hankel;
};

} // namespace charlier

namespace charlier::oracle {

// Determinant by fraction-free (Bareiss) elimination with partial pivoting.
// `rows` is consumed.
BigReal determinant(std::vector<std::vector<BigReal>> rows);

// D_n = det(m_{i+j}), i, j = 0..n-1; D_0 = 1.
BigReal hankel_det(const MomentVector& m, long n);

// D~_n: as D_n but with the last column holding m_{i+n} instead of m_{i+n-1};
// D~_0 = 0. These give the subleading coefficient of the monic P_n.
BigReal hankel_det_shifted(const MomentVector& m, long n);

// a_n^2 = D_{n-1} D_{n+1} / D_n^2,  b_n = D~_{n+1}/D_{n+1} - D~_n/D_n.
//
// Runs at prec + 12 n_max bits and certifies every entry to 2^-prec
// (relative, or absolute below one) against a second evaluation with 64
// more bits; the budget doubles on failure.
RecurrenceTable recurrence_from_hankel(const MeasureSpec& spec, long n_max, Precision prec);

// Discrete Stieltjes procedure on the truncated lattice. The truncation K
// grows until the discarded inner-product mass is certified below
// 2^-(prec+guard) of every retained norm.
RecurrenceTable recurrence_from_stieltjes(const MeasureSpec& spec, long n_max, Precision prec);

} // namespace charlier::oracle
