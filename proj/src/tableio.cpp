#include "charlier/tableio.hpp"

#include <sstream>

namespace charlier {

std::string table_to_csv(const RecurrenceTable& table, bool with_source)
{
    std::ostringstream out;
    out << "n,a2,b" << (with_source ? ",source" : "") << '\n';
    for (std::size_t i = 0; i < table.b.size(); ++i) {
        out << i << ',' << table.a2[i].to_string() << ',' << table.b[i].to_string();
        if (with_source) {
            out << ',' << to_string(table.source);
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json table_to_json(const RecurrenceTable& table)
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < table.b.size(); ++i) {
        rows.push_back({{"n", i}, {"a2", table.a2[i].to_string()}, {"b", table.b[i].to_string()}});
    }
    const auto& s = table.spec;
    return {{"lattice", to_string(s.lattice)},
            {"a", s.a.text()},
            {"beta", s.beta.text()},
            {"tau", s.lattice == Lattice::BiLattice ? s.tau.text() : std::string()},
            {"source", to_string(table.source)},
            {"prec_bits", table.prec},
            {"rows", rows}};
}

std::string scan_to_csv(const std::vector<RecurrenceTable>& tables)
{
    std::ostringstream out;
    out << "a,n,a2,b\n";
    for (const auto& t : tables) {
        const std::string a = t.spec.a.text();
        for (std::size_t i = 0; i < t.b.size(); ++i) {
            out << a << ',' << i << ',' << t.a2[i].to_string() << ',' << t.b[i].to_string() << '\n';
        }
    }
    return out.str();
}

nlohmann::json scan_to_json(const std::vector<RecurrenceTable>& tables)
{
    nlohmann::json out = nlohmann::json::array();
    for (const auto& t : tables) {
        out.push_back(table_to_json(t));
    }
    return out;
}

} // namespace charlier
