#pragma once

#include <string>
#include <vector>

namespace ewp {

enum class Severity { Error, Warning };

// The closed set of diagnostic codes. Graph validation emits the first six,
// report-order checking the rest.
namespace diag {
inline constexpr char dangling_link[] = "dangling-link";
inline constexpr char missing_parent[] = "missing-parent";
inline constexpr char cycle[] = "cycle";
inline constexpr char branch[] = "branch";
inline constexpr char orphan[] = "orphan";
inline constexpr char draft_in_chain[] = "draft-in-chain";
inline constexpr char unknown_ref[] = "unknown-ref";
inline constexpr char duplicate_statement[] = "duplicate-statement";
inline constexpr char unreported_statement[] = "unreported-statement";
inline constexpr char empty_section[] = "empty-section";
inline constexpr char precedence_inversion[] = "precedence-inversion";
} // namespace diag

struct Diagnostic {
    Severity severity = Severity::Warning;
    std::string code;
    std::string location;
    std::string message;
    bool operator==(const Diagnostic&) const = default;
};

// "<severity> <code> <location>: <message>"
std::string to_line(const Diagnostic& d);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// JSON array form written to out/diagnostics.json.
std::string diagnostics_json(const std::vector<Diagnostic>& diagnostics);

} // namespace ewp
