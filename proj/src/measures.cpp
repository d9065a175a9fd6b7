#include "charlier/measures.hpp"

#include <algorithm>
#include <cctype>

#include "charlier/mpnum.hpp"

namespace charlier {

namespace {

constexpr Precision kCheckPrecision = 256;

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

} // namespace

std::string_view to_string(Lattice lattice)
{
    switch (lattice) {
    case Lattice::N:
        return "N";
    case Lattice::Shifted:
        return "shifted";
    case Lattice::BiLattice:
        return "bilattice";
    }
    return "?";
}

Lattice parse_lattice(std::string_view text)
{
    const std::string s = lower(text);
    if (s == "n") {
        return Lattice::N;
    }
    if (s == "shifted") {
        return Lattice::Shifted;
    }
    if (s == "bilattice" || s == "bi") {
        return Lattice::BiLattice;
    }
    throw DomainError("unknown lattice '" + std::string(text) + "' (expected N, shifted, bilattice)");
}

Param::Param(const char* decimal) : Param(std::string(decimal)) {}

Param::Param(std::string decimal) : value_(std::move(decimal))
{
    // Validate eagerly so malformed input fails at the boundary.
    (void)BigReal::parse(std::get<std::string>(value_), kMinPrecision);
}

Param::Param(BigReal exact) : value_(std::move(exact)) {}

BigReal Param::at(Precision prec) const
{
    if (const auto* text = std::get_if<std::string>(&value_)) {
        return BigReal::parse(*text, prec);
    }
    return std::get<BigReal>(value_).with_prec(prec);
}

std::string Param::text() const
{
    if (const auto* text = std::get_if<std::string>(&value_)) {
        return *text;
    }
    return std::get<BigReal>(value_).to_string();
}

MeasureSpec MeasureSpec::on_n(Param a, Param beta)
{
    return MeasureSpec{std::move(a), std::move(beta), Lattice::N, "1"};
}

MeasureSpec MeasureSpec::shifted(Param a, Param beta)
{
    return MeasureSpec{std::move(a), std::move(beta), Lattice::Shifted, "1"};
}

MeasureSpec MeasureSpec::bilattice(Param a, Param beta, Param tau)
{
    return MeasureSpec{std::move(a), std::move(beta), Lattice::BiLattice, std::move(tau)};
}

void MeasureSpec::validate() const
{
    const BigReal av = a.at(kCheckPrecision);
    const BigReal bv = beta.at(kCheckPrecision);
    if (!(av > 0)) {
        throw DomainError("a must be positive, got " + a.text());
    }
    switch (lattice) {
    case Lattice::N:
        if (!(bv > 0)) {
            throw DomainError("lattice N requires beta > 0, got " + beta.text());
        }
        break;
    case Lattice::Shifted:
        if (!(bv < 2) || bv == 1) {
            throw DomainError("shifted lattice requires beta < 2 and beta != 1 (at beta = 1 both lattices "
                              "coincide), got "
                              + beta.text());
        }
        if (bv <= 0 && bv.is_integer()) {
            throw DomainError("shifted lattice weight has a Gamma pole at beta = " + beta.text());
        }
        break;
    case Lattice::BiLattice:
        if (!(bv > 0) || !(bv < 2) || bv == 1) {
            throw DomainError("bi-lattice requires 0 < beta < 2 and beta != 1, got " + beta.text());
        }
        if (!(tau.at(kCheckPrecision) > 0)) {
            throw DomainError("bi-lattice requires tau > 0, got " + tau.text());
        }
        break;
    }
}

MeasureSpec MeasureSpec::with_a(const BigReal& a_value) const
{
    MeasureSpec copy = *this;
    copy.a = Param(a_value);
    return copy;
}

BigReal shifted_prefactor(const BigReal& a, const BigReal& beta, Precision prec)
{
    const Precision work = prec + kGuardBits;
    const BigReal b = beta.with_prec(work);
    // |Gamma(beta)| through Gamma(beta + m) / |(beta)_m| when beta <= 0.
    long m = 0;
    BigReal shifted = b;
    while (!(shifted > 0)) {
        shifted += 1;
        ++m;
    }
    BigReal gamma_beta = mpnum::gamma(shifted, work) / abs(mpnum::pochhammer(b, m, work));
    const BigReal result = gamma_beta * pow(a.with_prec(work), 1 - b) / mpnum::gamma(2 - b, work);
    return result.with_prec(prec);
}

std::vector<Sublattice> sublattices(const MeasureSpec& spec, Precision prec)
{
    spec.validate();
    const BigReal a = spec.a.at(prec);
    const BigReal beta = spec.beta.at(prec);
    std::vector<Sublattice> out;
    if (spec.lattice == Lattice::N || spec.lattice == Lattice::BiLattice) {
        out.push_back(Sublattice{BigReal(0, prec), beta, BigReal(1, prec)});
    }
    if (spec.lattice == Lattice::Shifted || spec.lattice == Lattice::BiLattice) {
        BigReal scale = shifted_prefactor(a, beta, prec);
        if (spec.lattice == Lattice::BiLattice) {
            scale *= spec.tau.at(prec);
        }
        out.push_back(Sublattice{1 - beta, 2 - beta, std::move(scale)});
    }
    return out;
}

std::vector<LatticePoint> lattice_points(const MeasureSpec& spec, long count, Precision prec)
{
    const BigReal a = spec.a.at(prec);
    std::vector<LatticePoint> pts;
    for (const Sublattice& sub : sublattices(spec, prec)) {
        BigReal w = sub.scale;
        for (long k = 0; k < count; ++k) {
            pts.push_back(LatticePoint{sub.offset + k, w});
            w *= a;
            w /= (sub.gamma + k) * (k + 1);
        }
    }
    return pts;
}

BigReal weight_at(const MeasureSpec& spec, long k, Precision prec)
{
    if (k < 0) {
        throw DomainError("weight_at: k must be nonnegative");
    }
    const Precision work = prec + kGuardBits;
    const Sublattice sub = sublattices(spec, work).front();
    const BigReal a = spec.a.at(work);
    BigReal k_fact(1, work);
    for (long i = 2; i <= k; ++i) {
        k_fact *= i;
    }
    const BigReal w = sub.scale * pow(a, k) / (mpnum::pochhammer(sub.gamma, k, work) * k_fact);
    return w.with_prec(prec);
}

BigReal pearson_residual(const MeasureSpec& spec, long k, Precision prec)
{
    return pearson_residual(spec, k, BigReal(0, prec), prec);
}

BigReal pearson_residual(const MeasureSpec& spec, long k, const BigReal& perturbation, Precision prec)
{
    if (spec.lattice != Lattice::N) {
        throw DomainError("pearson_residual is defined on the lattice N");
    }
    if (k < 1) {
        throw DomainError("pearson_residual: k must be at least 1");
    }
    const Precision work = prec + kGuardBits;
    const BigReal a = spec.a.at(work);
    const BigReal beta = spec.beta.at(work);
    const BigReal wk = weight_at(spec, k, work);
    const BigReal wkm1 = weight_at(spec, k - 1, work);
    const BigReal poly = (a - k * (beta - 1) - k * k) / a + perturbation;
    return (wk - wkm1 - poly * wk).with_prec(prec);
}

MomentVector moments(const MeasureSpec& spec, long count, Precision prec)
{
    if (count < 1) {
        throw DomainError("moments: count must be positive");
    }
    const Precision work = prec + kGuardBits;
    const BigReal a = spec.a.at(work);
    const BigReal rel = BigReal::pow2(-(static_cast<long>(prec) + kGuardBits), work);
    const auto ucount = static_cast<std::size_t>(count);

    std::vector<BigReal> m(ucount, BigReal(work));
    for (const Sublattice& sub : sublattices(spec, work)) {
        std::vector<BigReal> partial(ucount, BigReal(work));
        std::vector<BigReal> abs_sum(ucount, BigReal(work));
        BigReal w = sub.scale;
        for (long k = 0;; ++k) {
            const BigReal node = sub.offset + k;
            const BigReal abs_node = abs(node);
            BigReal power(1, work);
            std::vector<BigReal> terms;
            terms.reserve(ucount);
            for (std::size_t j = 0; j < ucount; ++j) {
                BigReal term = power * w;
                partial[j] += term;
                abs_sum[j] += abs(term);
                terms.push_back(std::move(term));
                power *= node;
            }

            // Successive-term ratio bound, monotone once the node and the
            // Pochhammer argument are positive.
            if (node > 0 && sub.gamma + k > 0) {
                const BigReal w_ratio = a / ((sub.gamma + k) * (k + 1));
                const BigReal node_ratio = (abs_node + 1) / abs_node;
                bool done = true;
                BigReal node_pow(1, work);
                for (std::size_t j = 0; j < ucount && done; ++j) {
                    const BigReal r = node_pow * w_ratio;
                    node_pow *= node_ratio;
                    if (!(r < 1)) {
                        done = false;
                        break;
                    }
                    const BigReal term_abs = abs(terms[j]);
                    const BigReal tail = term_abs * r / (1 - r);
                    if (!(term_abs <= rel * abs_sum[j]) || !(tail <= rel * abs_sum[j])) {
                        done = false;
                    }
                }
                if (done) {
                    break;
                }
            }
            w *= a;
            w /= (sub.gamma + k) * (k + 1);
            if (k > 50'000'000) {
                throw PrecisionError("moments: truncation certificate not reached");
            }
        }
        for (std::size_t j = 0; j < ucount; ++j) {
            m[j] += partial[j];
        }
    }
    MomentVector out{spec, {}, prec};
    out.m.reserve(ucount);
    for (auto& v : m) {
        out.m.push_back(v.with_prec(prec));
    }
    return out;
}

BigReal moment(const MeasureSpec& spec, long j, Precision prec)
{
    if (j < 0) {
        throw DomainError("moment: index must be nonnegative");
    }
    return moments(spec, j + 1, prec).m.back();
}

} // namespace charlier
