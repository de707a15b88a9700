#include "ewp/diagnostics.hpp"

#include <algorithm>

#include "json.hpp"

namespace ewp {

std::string to_line(const Diagnostic& d) {
    std::string line = d.severity == Severity::Error ? "Error" : "Warning";
    line += ' ';
    line += d.code;
    line += ' ';
    line += d.location;
    line += ": ";
    line += d.message;
    return line;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string diagnostics_json(const std::vector<Diagnostic>& diagnostics) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& d : diagnostics) {
        nlohmann::ordered_json item;
        item["severity"] = d.severity == Severity::Error ? "Error" : "Warning";
        item["code"] = d.code;
        item["location"] = d.location;
        item["message"] = d.message;
        arr.push_back(std::move(item));
    }
    return arr.dump(2) + "\n";
}

} // namespace ewp
