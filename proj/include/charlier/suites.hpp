#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "charlier/measures.hpp"
#include "charlier/report.hpp"

namespace charlier::suites {

// Parameter grid shared by the verification suites. Every suite runs over
// the (a, beta, lattice[, tau]) combinations that are valid for it.
struct GridOptions {
    std::vector<std::string> a{"1"};
    std::vector<std::string> beta{"0.5", "1.5"};
    std::vector<Lattice> lattices{Lattice::N, Lattice::Shifted, Lattice::BiLattice};
    std::vector<std::string> tau{"1", "2"};
    long n_max = 10;
    Precision prec = 512;
};

// "discrete", "toda", "riccati", "pearson", "symmetry", "p5chain", "p3",
// "beta1" and "all".
const std::vector<std::string>& suite_names();

// Throws DomainError for unknown names. Parameter combinations that are
// invalid for a lattice (for example beta = 1 on the shifted lattice) are
// skipped; errors raised while evaluating a valid combination propagate.
VerificationReport run_suite(std::string_view name, const GridOptions& grid);

VerificationReport discrete_suite(const GridOptions& grid);
VerificationReport toda_suite(const GridOptions& grid);
VerificationReport riccati_suite(const GridOptions& grid);
VerificationReport pearson_suite(const GridOptions& grid);
VerificationReport symmetry_suite(const GridOptions& grid);
VerificationReport p5chain_suite(const GridOptions& grid);
VerificationReport p3_suite(const GridOptions& grid);
VerificationReport beta1_suite(const GridOptions& grid);

// Valid specs of the grid, in (lattice, a, beta, tau) order.
std::vector<MeasureSpec> grid_specs(const GridOptions& grid);

} // namespace charlier::suites
