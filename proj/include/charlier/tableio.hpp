#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "charlier/oracle.hpp"

namespace charlier {

// Rows "n,a2,b[,source]" with full-precision decimal strings.
std::string table_to_csv(const RecurrenceTable& table, bool with_source = true);

// {"lattice", "a", "beta", "tau", "source", "prec_bits",
//  "rows": [{"n", "a2", "b"}]} with the same decimal strings as the CSV.
nlohmann::json table_to_json(const RecurrenceTable& table);

// Long format "a,n,a2,b" over several tables (one per a value).
std::string scan_to_csv(const std::vector<RecurrenceTable>& tables);
nlohmann::json scan_to_json(const std::vector<RecurrenceTable>& tables);

} // namespace charlier
