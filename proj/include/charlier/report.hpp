#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "charlier/bigreal.hpp"
#include "charlier/measures.hpp"

namespace charlier {

struct CellParams {
    std::string a;
    std::string beta;
    std::string lattice;
    std::string tau;

    static CellParams of(const MeasureSpec& spec);
    friend bool operator==(const CellParams&, const CellParams&) = default;
};

// One checked quantity: residual magnitudes, stored as decimal strings at
// full precision, against a single tolerance.
struct Cell {
    CellParams params;
    long n = 0;
    std::string check;
    std::vector<std::string> residuals;
    std::string tol;
    bool pass = true;

    friend bool operator==(const Cell&, const Cell&) = default;
};

struct VerificationReport {
    std::string suite;
    Precision prec_bits = kMinPrecision;
    std::vector<Cell> cells;
    bool pass = true;
    double wall_time = 0.0; // seconds

    // Appends a cell; its pass flag is |r| <= tol for every residual r.
    const Cell& add(const CellParams& params, long n, std::string check, const std::vector<BigReal>& residuals,
                    const BigReal& tol);

    [[nodiscard]] long failures() const;

    friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

// Concatenates cells and conjoins pass flags. All inputs must share the
// working precision; the suite name is the distinct input names joined by
// '+'. merge({}) is an empty passing report.
VerificationReport merge(const std::vector<VerificationReport>& reports);

nlohmann::json to_json(const VerificationReport& report);
VerificationReport report_from_json(const nlohmann::json& j);

std::string serialize(const VerificationReport& report, int indent = 2);
VerificationReport deserialize(const std::string& text);

} // namespace charlier
