#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace ewp {

// Single uppercase letter naming a module, e.g. "F".
struct ModuleRef {
    char letter = 'A';
    auto operator<=>(const ModuleRef&) const = default;
};

// Working-paper reference: module letter plus exactly three digits, e.g. "F051".
struct WpRef {
    char letter = 'A';
    int number = 0; // 0..999
    auto operator<=>(const WpRef&) const = default;
};

// Sub-sections share the working-paper grammar; their role is declared in the
// project file, never derived from the numbering.
using SubSectionRef = WpRef;

// Controlled-statement reference, e.g. "F051!CtrlStat00".
struct StmtRef {
    WpRef wp;
    int index = 0; // 0..99
    auto operator<=>(const StmtRef&) const = default;
};

// Evidence reference, e.g. "F051/1" or "G101/2/3". layer2 == 0 means absent
// and is never rendered.
struct EvidenceRef {
    WpRef wp;
    int layer1 = 1; // >= 1
    int layer2 = 0; // 0 = absent, else >= 1
    auto operator<=>(const EvidenceRef&) const = default;
};

std::string render(ModuleRef ref);
std::string render(const WpRef& ref);
std::string render(const StmtRef& ref);
std::string render(const EvidenceRef& ref);

// All parsers accept exactly the canonical grammar (case-sensitive, no
// leading zeros in layer numbers) and throw Error{malformed_ref} otherwise.
ModuleRef parse_module_ref(std::string_view text);
WpRef parse_wp_ref(std::string_view text);
StmtRef parse_stmt_ref(std::string_view text);
EvidenceRef parse_evidence_ref(std::string_view text);

} // namespace ewp
