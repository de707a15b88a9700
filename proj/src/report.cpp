#include "ewp/report.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "json.hpp"

#include "ewp/error.hpp"
#include "ewp/io.hpp"
#include "ewp/review.hpp"

namespace ewp {
namespace fs = std::filesystem;

namespace {

using ojson = nlohmann::ordered_json;

constexpr const char* kSheetFormat = "ewp-report-control/1";
constexpr const char* kSheetFile = "report_control.json";

int heading_level(RowKind kind) {
    switch (kind) {
    case RowKind::ModuleHeading: return 1;
    case RowKind::WpHeading: return 2;
    case RowKind::Statement: return 3;
    }
    return 3;
}

std::string row_ref_text(const ControlSheetRow& row) {
    switch (row.kind) {
    case RowKind::ModuleHeading: return row.module_ref ? render(*row.module_ref) : "?";
    case RowKind::WpHeading: return row.wp_ref ? render(*row.wp_ref) : "?";
    case RowKind::Statement: return row.stmt_ref ? render(*row.stmt_ref) : "?";
    }
    return "?";
}

std::string slug(const std::string& rendered_ref) {
    std::string out;
    for (char c : rendered_ref)
        out += c == '/' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

bool evidence_exists(const Project& p, const EvidenceRef& ref) {
    const WorkingPaper* wp = find_wp(p, ref.wp);
    if (!wp)
        return false;
    for (const auto& item : wp->evidence)
        if (item.ref == ref)
            return true;
    return false;
}

bool is_word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) != 0;
}

// Rewrites registered evidence refs cited in a body ("see F051/1") into
// links onto the generated index.
std::string linkify_evidence(const std::string& body, const Project& p) {
    std::string out;
    std::size_t i = 0;
    while (i < body.size()) {
        char c = body[i];
        bool boundary = i == 0 || !is_word_char(body[i - 1]);
        if (boundary && c >= 'A' && c <= 'Z' && i + 5 < body.size()) {
            std::size_t j = i + 1, digits = 0;
            while (j < body.size() && digits < 3 && std::isdigit(static_cast<unsigned char>(body[j]))) {
                ++j;
                ++digits;
            }
            if (digits == 3 && j < body.size() && body[j] == '/') {
                ++j;
                std::size_t layers_start = j;
                while (j < body.size() &&
                       (std::isdigit(static_cast<unsigned char>(body[j])) || body[j] == '/'))
                    ++j;
                bool closed = j == body.size() || !is_word_char(body[j]);
                std::string candidate = body.substr(i, j - i);
                if (closed && j > layers_start) {
                    try {
                        EvidenceRef ref = parse_evidence_ref(candidate);
                        if (evidence_exists(p, ref)) {
                            out += "[" + candidate + "](evidence_index.md#" + slug(candidate) + ")";
                            i = j;
                            continue;
                        }
                    } catch (const Error&) {
                        // not an evidence ref after all
                    }
                }
            }
        }
        out += c;
        ++i;
    }
    return out;
}

} // namespace

SheetEdit SheetEdit::move_row(std::size_t from, std::size_t to) {
    SheetEdit e;
    e.kind = Kind::MoveRow;
    e.row = from;
    e.to = to;
    return e;
}

SheetEdit SheetEdit::delete_row(std::size_t row) {
    SheetEdit e;
    e.kind = Kind::DeleteRow;
    e.row = row;
    return e;
}

SheetEdit SheetEdit::retitle_row(std::size_t row, std::string heading) {
    SheetEdit e;
    e.kind = Kind::RetitleRow;
    e.row = row;
    e.heading = std::move(heading);
    return e;
}

ControlSheet generate_control_sheet(const Project& p,
                                    const std::vector<ModuleRef>& module_order) {
    for (ModuleRef m : module_order)
        if (!find_module(p, m))
            fail(Errc::unknown_module, "no module " + render(m));

    ControlSheet sheet;
    sheet.title = "Project Report Control Sheet (" + p.name + ")";
    for (ModuleRef m : module_order) {
        const Module* module = find_module(p, m);
        ControlSheetRow module_row;
        module_row.kind = RowKind::ModuleHeading;
        module_row.module_ref = m;
        module_row.full_heading = module->title;
        sheet.rows.push_back(std::move(module_row));

        ReviewDocument flat = flatten_module(p, m, false);
        std::map<StmtRef, std::size_t> position;
        for (std::size_t i = 0; i < flat.entries.size(); ++i)
            position.emplace(flat.entries[i].ref, i);

        for (const WorkingPaper* wp : wps_of_module(p, m)) {
            std::vector<const ControlledStatement*> cleared;
            for (const auto& s : wp->statements)
                if (s.status == StmtStatus::Cleared)
                    cleared.push_back(&s);
            if (cleared.empty())
                continue;
            std::sort(cleared.begin(), cleared.end(),
                      [&](const ControlledStatement* a, const ControlledStatement* b) {
                          return position.at(a->ref) < position.at(b->ref);
                      });
            ControlSheetRow wp_row;
            wp_row.kind = RowKind::WpHeading;
            wp_row.wp_ref = wp->ref;
            wp_row.full_heading = wp->title;
            sheet.rows.push_back(std::move(wp_row));
            for (const ControlledStatement* s : cleared) {
                ControlSheetRow row;
                row.kind = RowKind::Statement;
                row.stmt_ref = s->ref;
                row.full_heading = s->heading;
                sheet.rows.push_back(std::move(row));
            }
        }
    }
    return sheet;
}

ControlSheet apply_sheet_edit(const ControlSheet& sheet, const SheetEdit& edit) {
    if (edit.row >= sheet.rows.size())
        fail(Errc::index_out_of_range,
             "row " + std::to_string(edit.row) + " of " + std::to_string(sheet.rows.size()));
    ControlSheet next = sheet;
    switch (edit.kind) {
    case SheetEdit::Kind::MoveRow: {
        if (edit.to >= next.rows.size())
            fail(Errc::index_out_of_range,
                 "destination " + std::to_string(edit.to) + " of " +
                     std::to_string(next.rows.size()));
        ControlSheetRow row = std::move(next.rows[edit.row]);
        next.rows.erase(next.rows.begin() + static_cast<std::ptrdiff_t>(edit.row));
        next.rows.insert(next.rows.begin() + static_cast<std::ptrdiff_t>(edit.to),
                         std::move(row));
        break;
    }
    case SheetEdit::Kind::DeleteRow:
        next.rows.erase(next.rows.begin() + static_cast<std::ptrdiff_t>(edit.row));
        break;
    case SheetEdit::Kind::RetitleRow:
        if (edit.heading.empty())
            fail(Errc::empty_heading, "row " + std::to_string(edit.row));
        next.rows[edit.row].full_heading = edit.heading;
        break;
    }
    return next;
}

std::vector<Diagnostic> check_report_order(const ControlSheet& sheet, const Project& p) {
    std::vector<Diagnostic> out;
    const auto& rows = sheet.rows;

    std::set<StmtRef> seen_statements;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ControlSheetRow& row = rows[i];
        std::string ref_text = row_ref_text(row);
        switch (row.kind) {
        case RowKind::ModuleHeading:
            if (!row.module_ref || !find_module(p, *row.module_ref))
                out.push_back({Severity::Error, diag::unknown_ref, ref_text,
                               "row " + std::to_string(i) + " references a missing module"});
            break;
        case RowKind::WpHeading:
            if (!row.wp_ref || !find_wp(p, *row.wp_ref))
                out.push_back({Severity::Error, diag::unknown_ref, ref_text,
                               "row " + std::to_string(i) +
                                   " references a missing working paper"});
            break;
        case RowKind::Statement:
            if (!row.stmt_ref || !find_statement(p, *row.stmt_ref)) {
                out.push_back({Severity::Error, diag::unknown_ref, ref_text,
                               "row " + std::to_string(i) + " references a missing statement"});
            } else if (!seen_statements.insert(*row.stmt_ref).second) {
                out.push_back({Severity::Error, diag::duplicate_statement, ref_text,
                               "statement listed more than once"});
            }
            break;
        }
    }

    // A heading row with nothing under it before the next heading of the
    // same or higher level.
    for (std::size_t i = 0; i < rows.size(); ++i) {
        int level = heading_level(rows[i].kind);
        if (level == 3)
            continue;
        bool has_content = false;
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (heading_level(rows[j].kind) <= level)
                break;
            has_content = true;
            break;
        }
        if (!has_content)
            out.push_back({Severity::Warning, diag::empty_section, row_ref_text(rows[i]),
                           "heading '" + rows[i].full_heading + "' has no content"});
    }

    // Cleared statements of listed modules that never appear on the sheet.
    std::vector<ModuleRef> listed;
    for (const auto& row : rows)
        if (row.kind == RowKind::ModuleHeading && row.module_ref &&
            find_module(p, *row.module_ref) &&
            std::find(listed.begin(), listed.end(), *row.module_ref) == listed.end())
            listed.push_back(*row.module_ref);
    for (ModuleRef m : listed)
        for (const WorkingPaper* wp : wps_of_module(p, m))
            for (const auto& s : wp->statements)
                if (s.status == StmtStatus::Cleared && !seen_statements.count(s.ref))
                    out.push_back({Severity::Warning, diag::unreported_statement,
                                   render(s.ref),
                                   "Cleared statement missing from the report"});

    // Forward link a->b with b's row before a's row.
    std::map<StmtRef, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i].kind == RowKind::Statement && rows[i].stmt_ref &&
            !row_of.count(*rows[i].stmt_ref))
            row_of.emplace(*rows[i].stmt_ref, i);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const ControlSheetRow& row = rows[i];
        if (row.kind != RowKind::Statement || !row.stmt_ref)
            continue;
        const ControlledStatement* s = find_statement(p, *row.stmt_ref);
        if (!s)
            continue;
        for (const auto& parent_ref : s->backward_links) {
            auto it = row_of.find(parent_ref);
            if (it != row_of.end() && it->second > i)
                out.push_back({Severity::Warning, diag::precedence_inversion,
                               render(*row.stmt_ref),
                               "appears before its predecessor " + render(parent_ref)});
        }
    }

    return out;
}

std::string build_report(const ControlSheet& sheet, const Project& p) {
    auto diagnostics = check_report_order(sheet, p);
    if (has_errors(diagnostics)) {
        std::size_t errors = 0;
        for (const auto& d : diagnostics)
            if (d.severity == Severity::Error)
                ++errors;
        fail(Errc::integrity_errors_present,
             std::to_string(errors) + " error(s) from the report-order check; fix the "
                                      "control sheet and re-run the check");
    }

    std::string out = "<!-- " + sheet.title + " -->\n";
    for (const auto& row : sheet.rows) {
        switch (row.kind) {
        case RowKind::ModuleHeading:
            out += "\n# " + row.full_heading + "\n";
            break;
        case RowKind::WpHeading:
            out += "\n## " + row.full_heading + "\n";
            break;
        case RowKind::Statement: {
            out += "\n### " + row.full_heading + "\n";
            const ControlledStatement* s = find_statement(p, *row.stmt_ref);
            out += "\n" + linkify_evidence(s->body, p) + "\n";
            break;
        }
        }
    }
    return out;
}

std::string serialize_control_sheet(const ControlSheet& sheet) {
    ojson j;
    j["format"] = kSheetFormat;
    j["title"] = sheet.title;
    ojson rows = ojson::array();
    for (const auto& row : sheet.rows) {
        ojson rj;
        switch (row.kind) {
        case RowKind::ModuleHeading: rj["kind"] = "module"; break;
        case RowKind::WpHeading: rj["kind"] = "wp"; break;
        case RowKind::Statement: rj["kind"] = "statement"; break;
        }
        rj["ref"] = row_ref_text(row);
        rj["heading"] = row.full_heading;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

ControlSheet parse_control_sheet(const std::string& text, const std::string& origin) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Errc::parse_failure, origin + ": " + e.what());
    }
    if (!j.is_object() || !j.contains("format") || !j["format"].is_string() ||
        j["format"].get<std::string>() != kSheetFormat)
        fail(Errc::parse_failure, origin + ": not a control sheet file");
    ControlSheet sheet;
    if (!j.contains("title") || !j["title"].is_string())
        fail(Errc::parse_failure, origin + ": missing title");
    sheet.title = j["title"].get<std::string>();
    if (!j.contains("rows") || !j["rows"].is_array())
        fail(Errc::parse_failure, origin + ": missing rows array");
    std::size_t i = 0;
    for (const auto& rj : j["rows"]) {
        std::string where = origin + ": rows[" + std::to_string(i++) + "]";
        if (!rj.is_object() || !rj.contains("kind") || !rj["kind"].is_string() ||
            !rj.contains("ref") || !rj["ref"].is_string() || !rj.contains("heading") ||
            !rj["heading"].is_string())
            fail(Errc::parse_failure, where + ": expected kind/ref/heading strings");
        ControlSheetRow row;
        std::string kind = rj["kind"].get<std::string>();
        std::string ref = rj["ref"].get<std::string>();
        if (kind != "module" && kind != "wp" && kind != "statement")
            fail(Errc::parse_failure, where + ": unknown kind '" + kind + "'");
        try {
            if (kind == "module") {
                row.kind = RowKind::ModuleHeading;
                row.module_ref = parse_module_ref(ref);
            } else if (kind == "wp") {
                row.kind = RowKind::WpHeading;
                row.wp_ref = parse_wp_ref(ref);
            } else {
                row.kind = RowKind::Statement;
                row.stmt_ref = parse_stmt_ref(ref);
            }
        } catch (const Error& e) {
            fail(Errc::parse_failure, where + ": " + e.what());
        }
        row.full_heading = rj["heading"].get<std::string>();
        if (row.full_heading.empty())
            fail(Errc::parse_failure, where + ": heading must be nonempty");
        sheet.rows.push_back(std::move(row));
    }
    return sheet;
}

void save_control_sheet(const ControlSheet& sheet, const fs::path& root) {
    write_file(root / kSheetFile, serialize_control_sheet(sheet));
}

ControlSheet load_control_sheet(const fs::path& root) {
    fs::path file = root / kSheetFile;
    if (!fs::exists(file))
        fail(Errc::io_failure, "no control sheet at " + file.string() +
                                   " (run 'report init' first)");
    return parse_control_sheet(read_file(file), file.string());
}

void write_report(const ControlSheet& sheet, const Project& p, const fs::path& root) {
    std::string report = build_report(sheet, p);
    std::error_code ec;
    fs::create_directories(root / "out", ec);
    write_file(root / "out" / "report.md", report);
}

} // namespace ewp
