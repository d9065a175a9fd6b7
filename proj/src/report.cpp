#include "charlier/report.hpp"

#include <algorithm>

namespace charlier {

CellParams CellParams::of(const MeasureSpec& spec)
{
    return CellParams{spec.a.text(), spec.beta.text(), std::string(to_string(spec.lattice)),
                      spec.lattice == Lattice::BiLattice ? spec.tau.text() : std::string()};
}

const Cell& VerificationReport::add(const CellParams& params, long n, std::string check,
                                    const std::vector<BigReal>& residuals, const BigReal& tol)
{
    Cell cell{params, n, std::move(check), {}, tol.to_string(), true};
    for (const BigReal& r : residuals) {
        const BigReal mag = abs(r);
        // NaN compares false and therefore fails.
        if (!(mag <= tol)) {
            cell.pass = false;
        }
        cell.residuals.push_back(mag.with_prec(std::min(mag.prec(), prec_bits)).to_string());
    }
    pass = pass && cell.pass;
    cells.push_back(std::move(cell));
    return cells.back();
}

long VerificationReport::failures() const
{
    return std::count_if(cells.begin(), cells.end(), [](const Cell& c) { return !c.pass; });
}

VerificationReport merge(const std::vector<VerificationReport>& reports)
{
    VerificationReport out;
    if (reports.empty()) {
        return out;
    }
    out.prec_bits = reports.front().prec_bits;
    std::vector<std::string> names;
    for (const auto& r : reports) {
        if (r.prec_bits != out.prec_bits) {
            throw DomainError("merge: reports use different precisions (" + std::to_string(out.prec_bits) + " vs "
                              + std::to_string(r.prec_bits) + ")");
        }
        if (std::find(names.begin(), names.end(), r.suite) == names.end()) {
            names.push_back(r.suite);
        }
        out.cells.insert(out.cells.end(), r.cells.begin(), r.cells.end());
        out.pass = out.pass && r.pass;
        out.wall_time += r.wall_time;
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        out.suite += (i ? "+" : "") + names[i];
    }
    return out;
}

nlohmann::json to_json(const VerificationReport& report)
{
    nlohmann::json cells = nlohmann::json::array();
    for (const Cell& c : report.cells) {
        cells.push_back({{"params", {{"a", c.params.a}, {"beta", c.params.beta}, {"lattice", c.params.lattice},
                                     {"tau", c.params.tau}}},
                         {"n", c.n},
                         {"check", c.check},
                         {"residuals", c.residuals},
                         {"tol", c.tol},
                         {"pass", c.pass}});
    }
    return {{"suite", report.suite},
            {"prec_bits", report.prec_bits},
            {"cells", cells},
            {"pass", report.pass},
            {"wall_time", report.wall_time}};
}

VerificationReport report_from_json(const nlohmann::json& j)
{
    try {
        VerificationReport r;
        r.suite = j.at("suite").get<std::string>();
        r.prec_bits = j.at("prec_bits").get<Precision>();
        r.pass = j.at("pass").get<bool>();
        r.wall_time = j.value("wall_time", 0.0);
        for (const auto& c : j.at("cells")) {
            const auto& p = c.at("params");
            r.cells.push_back(Cell{CellParams{p.at("a").get<std::string>(), p.at("beta").get<std::string>(),
                                              p.at("lattice").get<std::string>(), p.at("tau").get<std::string>()},
                                   c.at("n").get<long>(), c.value("check", std::string()),
                                   c.at("residuals").get<std::vector<std::string>>(), c.at("tol").get<std::string>(),
                                   c.at("pass").get<bool>()});
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed verification report: ") + e.what());
    }
}

std::string serialize(const VerificationReport& report, int indent) { return to_json(report).dump(indent); }

VerificationReport deserialize(const std::string& text)
{
    try {
        return report_from_json(nlohmann::json::parse(text));
    } catch (const nlohmann::json::parse_error& e) {
        throw DomainError(std::string("report is not valid JSON: ") + e.what());
    }
}

} // namespace charlier
