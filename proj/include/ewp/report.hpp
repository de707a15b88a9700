#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ewp/diagnostics.hpp"
#include "ewp/project.hpp"

namespace ewp {

enum class RowKind { ModuleHeading, WpHeading, Statement };

struct ControlSheetRow {
    RowKind kind = RowKind::Statement;
    std::optional<ModuleRef> module_ref; // ModuleHeading rows only
    std::optional<WpRef> wp_ref;         // WpHeading rows only
    std::optional<StmtRef> stmt_ref;     // Statement rows only
    std::string full_heading;
    bool operator==(const ControlSheetRow&) const = default;
};

// Row order is report order; three heading levels at most by construction.
struct ControlSheet {
    std::string title;
    std::vector<ControlSheetRow> rows;
    bool operator==(const ControlSheet&) const = default;
};

struct SheetEdit {
    enum class Kind { MoveRow, DeleteRow, RetitleRow };
    Kind kind = Kind::DeleteRow;
    std::size_t row = 0;
    std::size_t to = 0;      // MoveRow: destination index in the edited sheet
    std::string heading;     // RetitleRow

    static SheetEdit move_row(std::size_t from, std::size_t to);
    static SheetEdit delete_row(std::size_t row);
    static SheetEdit retitle_row(std::size_t row, std::string heading);
};

// One ModuleHeading per listed module, then per working paper (ref order)
// owning at least one Cleared statement a WpHeading followed by its
// statements in module flatten order.
ControlSheet generate_control_sheet(const Project& p, const std::vector<ModuleRef>& module_order);

// Pure; the input sheet is left untouched.
ControlSheet apply_sheet_edit(const ControlSheet& sheet, const SheetEdit& edit);

// Errors: unknown-ref, duplicate-statement. Warnings: unreported-statement,
// empty-section, precedence-inversion.
std::vector<Diagnostic> check_report_order(const ControlSheet& sheet, const Project& p);

// Renders the draft report (#/##/### headings plus statement bodies, with
// evidence refs in bodies linked into the index). Requires a sheet free of
// Error diagnostics, else Error{integrity_errors_present}.
std::string build_report(const ControlSheet& sheet, const Project& p);

std::string serialize_control_sheet(const ControlSheet& sheet);
ControlSheet parse_control_sheet(const std::string& text, const std::string& origin);

// The sheet lives at <root>/report_control.json so it can be hand-edited
// between check runs.
void save_control_sheet(const ControlSheet& sheet, const std::filesystem::path& root);
ControlSheet load_control_sheet(const std::filesystem::path& root);

// Writes out/report.md under root.
void write_report(const ControlSheet& sheet, const Project& p, const std::filesystem::path& root);

} // namespace ewp
