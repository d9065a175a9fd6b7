#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "charlier/bigreal.hpp"

namespace charlier {

enum class Lattice { N, Shifted, BiLattice };

std::string_view to_string(Lattice lattice);
// Accepts "N", "shifted", "bilattice" (case-insensitive; "bi" also works).
Lattice parse_lattice(std::string_view text);

// A real parameter kept in its exact form: either the decimal text it was
// given as, or an exact binary value. Rounding to a working precision
// happens only when a value is requested, so raising the precision never
// inherits the error of an earlier rounding.
class Param {
public:
    Param(const char* decimal);        // NOLINT(google-explicit-constructor)
    Param(std::string decimal);        // NOLINT(google-explicit-constructor)
    explicit Param(BigReal exact);

    [[nodiscard]] BigReal at(Precision prec) const;
    [[nodiscard]] std::string text() const;

private:
    std::variant<std::string, BigReal> value_;
};

// Parameters of the orthogonality measure. `tau` is the mixing ratio
// c2/c1 and is only read for the bi-lattice.
struct MeasureSpec {
    Param a = "1";
    Param beta = "1";
    Lattice lattice = Lattice::N;
    Param tau = "1";

    static MeasureSpec on_n(Param a, Param beta);
    static MeasureSpec shifted(Param a, Param beta);
    static MeasureSpec bilattice(Param a, Param beta, Param tau);

    // Throws DomainError unless:
    //   a > 0;
    //   N:         beta > 0;
    //   Shifted:   beta < 2, beta != 1, beta not a nonpositive integer;
    //   BiLattice: 0 < beta < 2, beta != 1, tau > 0.
    void validate() const;

    [[nodiscard]] MeasureSpec with_a(const BigReal& a_value) const;
};

// One arithmetic progression of nodes  offset + k  carrying weights
// scale * a^k / ((gamma)_k k!),  k = 0, 1, 2, ...
struct Sublattice {
    BigReal offset;
    BigReal gamma;
    BigReal scale;
};

// The sublattices of a measure: one for N and Shifted, two for the
// bi-lattice (N with scale 1, then the shifted one with scale tau).
std::vector<Sublattice> sublattices(const MeasureSpec& spec, Precision prec);

struct LatticePoint {
    BigReal node;
    BigReal weight;
};

// First `count` points of every sublattice, in sublattice order.
std::vector<LatticePoint> lattice_points(const MeasureSpec& spec, long count, Precision prec);

// Prefactor |Gamma(beta)| a^(1-beta) / Gamma(2-beta) of the shifted weight.
BigReal shifted_prefactor(const BigReal& a, const BigReal& beta, Precision prec);

// w_k on N, v_k on the shifted lattice; for the bi-lattice the N weight w_k.
BigReal weight_at(const MeasureSpec& spec, long k, Precision prec);

// w_k - w_{k-1} - ((a - k(beta-1) - k^2)/a + perturbation) w_k on N.
BigReal pearson_residual(const MeasureSpec& spec, long k, Precision prec);
BigReal pearson_residual(const MeasureSpec& spec, long k, const BigReal& perturbation, Precision prec);

struct MomentVector {
    MeasureSpec spec;
    std::vector<BigReal> m;
    Precision prec = kMinPrecision;
};

// Power moments m_0 .. m_{count-1}, each truncated once the remainder is
// certified below 2^-(prec+guard) relative to the accumulated sum.
MomentVector moments(const MeasureSpec& spec, long count, Precision prec);
BigReal moment(const MeasureSpec& spec, long j, Precision prec);

} // namespace charlier
