#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "charlier/laxchain.hpp"
#include "charlier/oracle.hpp"
#include "charlier/painleve.hpp"
#include "charlier/report.hpp"
#include "charlier/suites.hpp"
#include "charlier/toda.hpp"

namespace py = pybind11;
using namespace charlier;

namespace {

MeasureSpec make_spec(const std::string& lattice, const std::string& a, const std::string& beta, const std::string& tau)
{
    const Lattice l = parse_lattice(lattice);
    MeasureSpec spec = l == Lattice::N         ? MeasureSpec::on_n(a, beta)
                       : l == Lattice::Shifted ? MeasureSpec::shifted(a, beta)
                                               : MeasureSpec::bilattice(a, beta, tau);
    (void)spec.a.at(kMinPrecision);
    (void)spec.beta.at(kMinPrecision);
    (void)spec.tau.at(kMinPrecision);
    spec.validate();
    return spec;
}

void check_prec(long prec)
{
    if (prec < static_cast<long>(kMinPrecision)) {
        throw DomainError("prec_bits must be at least " + std::to_string(kMinPrecision));
    }
}

py::dict recurrence(const std::string& lattice, const std::string& a, const std::string& beta, const std::string& tau,
                    const std::string& source, long n_max, long prec_bits)
{
    check_prec(prec_bits);
    if (n_max < 0) {
        throw DomainError("n_max must be nonnegative");
    }
    const MeasureSpec spec = make_spec(lattice, a, beta, tau);
    const Source src = parse_source(source);
    const auto prec = static_cast<Precision>(prec_bits);
    RecurrenceTable t;
    {
        py::gil_scoped_release release;
        switch (src) {
        case Source::Hankel:
            t = oracle::recurrence_from_hankel(spec, n_max, prec);
            break;
        case Source::Stieltjes:
            t = oracle::recurrence_from_stieltjes(spec, n_max, prec);
            break;
        case Source::Recursion:
            t = laxchain::recurrence_forward(spec, n_max, prec);
            break;
        case Source::P5Chain:
            t = painleve::p5_chain(spec, n_max, prec);
            break;
        }
    }
    std::vector<std::string> a2;
    std::vector<std::string> b;
    for (std::size_t n = 0; n < t.b.size(); ++n) {
        a2.push_back(t.a2[n].to_string());
        b.push_back(t.b[n].to_string());
    }
    py::dict out;
    out["lattice"] = std::string(to_string(spec.lattice));
    out["a2"] = a2;
    out["b"] = b;
    out["source"] = std::string(to_string(t.source));
    out["prec_bits"] = prec_bits;
    return out;
}

std::string verify_json(const std::string& suite, const std::optional<std::vector<std::string>>& a,
                        const std::optional<std::vector<std::string>>& beta,
                        const std::optional<std::vector<std::string>>& lattices,
                        const std::optional<std::vector<std::string>>& tau, long n_max, long prec_bits)
{
    check_prec(prec_bits);
    suites::GridOptions grid;
    grid.n_max = n_max;
    grid.prec = static_cast<Precision>(prec_bits);
    if (a) {
        grid.a = *a;
    }
    if (beta) {
        grid.beta = *beta;
    }
    if (tau) {
        grid.tau = *tau;
    }
    if (lattices) {
        grid.lattices.clear();
        for (const auto& l : *lattices) {
            grid.lattices.push_back(parse_lattice(l));
        }
    }
    VerificationReport r;
    {
        py::gil_scoped_release release;
        r = suites::run_suite(suite, grid);
    }
    return serialize(r);
}

} // namespace

PYBIND11_MODULE(_charlier, m)
{
    m.doc() = "Recurrence coefficients of generalized Charlier weights at arbitrary precision.";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<PrecisionError>(m, "PrecisionError", error.ptr());
    auto singular = py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);
    py::register_exception<IntegrationError>(m, "IntegrationError", singular.ptr());

    m.def("recurrence", &recurrence, py::arg("lattice") = "N", py::arg("a") = "1", py::arg("beta") = "1.5",
          py::arg("tau") = "1", py::arg("source") = "hankel", py::arg("n_max") = 10, py::arg("prec_bits") = 512,
          "Table of a_n^2 and b_n for n = 0..n_max as decimal strings.");

    m.def(
        "initial_b0",
        [](const std::string& lattice, const std::string& a, const std::string& beta, const std::string& tau,
           long prec_bits) {
            check_prec(prec_bits);
            return laxchain::initial_b0(make_spec(lattice, a, beta, tau), static_cast<Precision>(prec_bits)).to_string();
        },
        py::arg("lattice") = "N", py::arg("a") = "1", py::arg("beta") = "1.5", py::arg("tau") = "1",
        py::arg("prec_bits") = 512, "b_0 = m_1/m_0 from the closed Bessel form.");

    m.def(
        "riccati_residual",
        [](const std::string& lattice, const std::string& a, const std::string& beta, const std::string& tau,
           long prec_bits) {
            check_prec(prec_bits);
            const auto prec = static_cast<Precision>(prec_bits);
            const MeasureSpec spec = make_spec(lattice, a, beta, tau);
            return toda::riccati_b0_residual(spec, spec.a.at(prec), prec).to_string(6);
        },
        py::arg("lattice") = "N", py::arg("a") = "1", py::arg("beta") = "1.5", py::arg("tau") = "1",
        py::arg("prec_bits") = 512);

    m.def("suite_names", &suites::suite_names);

    m.def("_verify_json", &verify_json, py::arg("suite") = "all", py::arg("a") = py::none(),
          py::arg("beta") = py::none(), py::arg("lattices") = py::none(), py::arg("tau") = py::none(),
          py::arg("n_max") = 10, py::arg("prec_bits") = 512);
}
