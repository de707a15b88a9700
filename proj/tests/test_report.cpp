#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>

#include "ewp/error.hpp"
#include "ewp/graph.hpp"
#include "ewp/report.hpp"
#include "ewp/store.hpp"
#include "fixtures.hpp"

using namespace ewp;

namespace {

struct Demo {
    fixtures::ScopedNow now{fixtures::kDemoNow};
    fixtures::TempDir dir;
    Project project;

    Demo() { project = fixtures::build_demo_project(dir.path() / "demo", dir.path() / "src"); }
};

std::vector<ModuleRef> dg() { return {ModuleRef{'D'}, ModuleRef{'G'}}; }

bool has_diag(const std::vector<Diagnostic>& diagnostics, const char* code) {
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [&](const Diagnostic& d) { return d.code == code; });
}

} // namespace

TEST_CASE("the generated sheet reproduces the demonstration row structure") {
    Demo demo;
    ControlSheet sheet = generate_control_sheet(demo.project, dg());
    CHECK(sheet.title == "Project Report Control Sheet (EUSPRIG 2012)");

    struct Expected {
        RowKind kind;
        const char* ref;
        const char* heading;
    };
    const Expected expected[] = {
        {RowKind::ModuleHeading, "D", "Report"},
        {RowKind::WpHeading, "D003", "Module Level Review of 'EuSpRIG 2012'"},
        {RowKind::Statement, "D003!CtrlStat00",
         "Aide Memoire for Talk/Demonstration at EuSpRIG 2012"},
        {RowKind::ModuleHeading, "G", "EuSpRIG 2012"},
        {RowKind::WpHeading, "G002",
         "Module Level Review of 'Summary of Findings & Conclusions'"},
        {RowKind::Statement, "G002!CtrlStat00", "The Standard links in a chain of Statements"},
        {RowKind::WpHeading, "G003",
         "Module Level Review of 'Linked Statements in Practice'"},
        {RowKind::Statement, "G003!CtrlStat00", "Two Types of Long Chains"},
    };
    REQUIRE(sheet.rows.size() == 8);
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(sheet.rows[i].kind == expected[i].kind);
        CHECK(sheet.rows[i].full_heading == expected[i].heading);
        switch (expected[i].kind) {
        case RowKind::ModuleHeading:
            CHECK(render(*sheet.rows[i].module_ref) == expected[i].ref);
            break;
        case RowKind::WpHeading:
            CHECK(render(*sheet.rows[i].wp_ref) == expected[i].ref);
            break;
        case RowKind::Statement:
            CHECK(render(*sheet.rows[i].stmt_ref) == expected[i].ref);
            break;
        }
    }

    // generation soundness on the fixture
    CHECK(check_report_order(sheet, demo.project).empty());

    // statements follow the module flatten order within their paper
    ControlSheet f_sheet = generate_control_sheet(demo.project, {ModuleRef{'F'}});
    std::vector<std::string> f_statements;
    for (const auto& row : f_sheet.rows)
        if (row.kind == RowKind::Statement)
            f_statements.push_back(render(*row.stmt_ref));
    // F001 lists both conclusions in flatten order (00 before 01)
    auto pos00 = std::find(f_statements.begin(), f_statements.end(), "F001!CtrlStat00");
    auto pos01 = std::find(f_statements.begin(), f_statements.end(), "F001!CtrlStat01");
    REQUIRE(pos00 != f_statements.end());
    REQUIRE(pos01 != f_statements.end());
    CHECK(pos00 < pos01);

    // module F's chain flows against working-paper ref order (the conclusions
    // live in F001), so grouping by paper must yield exactly the two
    // inversions the links imply: F053!00 -> F001!00 and F102!00 -> F001!01.
    auto f_diagnostics = check_report_order(f_sheet, demo.project);
    CHECK(!has_errors(f_diagnostics));
    std::size_t inversions = 0;
    for (const auto& d : f_diagnostics) {
        CHECK(d.code == diag::precedence_inversion);
        ++inversions;
    }
    CHECK(inversions == 2);
}

TEST_CASE("empty module lists and statement-less modules") {
    Demo demo;
    ControlSheet empty = generate_control_sheet(demo.project, {});
    CHECK(empty.rows.empty());

    ControlSheet lone = generate_control_sheet(demo.project, {ModuleRef{'A'}});
    REQUIRE(lone.rows.size() == 1);
    CHECK(lone.rows[0].kind == RowKind::ModuleHeading);
    CHECK(lone.rows[0].full_heading == "Index");
    // a statement-less module is by definition an empty section
    auto diagnostics = check_report_order(lone, demo.project);
    CHECK(has_diag(diagnostics, diag::empty_section));
    CHECK(!has_errors(diagnostics));

    try {
        (void)generate_control_sheet(demo.project, {ModuleRef{'Z'}});
        FAIL("expected unknown-module");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::unknown_module);
    }
}

TEST_CASE("sheet edits are pure and validated") {
    Demo demo;
    ControlSheet sheet = generate_control_sheet(demo.project, dg());
    ControlSheet original = sheet;

    ControlSheet moved = apply_sheet_edit(sheet, SheetEdit::move_row(7, 0));
    CHECK(sheet == original); // untouched input
    CHECK(moved.rows[0].full_heading == "Two Types of Long Chains");
    CHECK(moved.rows.size() == original.rows.size());

    ControlSheet shorter = apply_sheet_edit(sheet, SheetEdit::delete_row(4));
    CHECK(shorter.rows.size() == original.rows.size() - 1);
    // statement rows survive their deleted heading
    CHECK(shorter.rows[4].kind == RowKind::Statement);

    ControlSheet retitled = apply_sheet_edit(sheet, SheetEdit::retitle_row(0, "Findings"));
    CHECK(retitled.rows[0].full_heading == "Findings");

    try {
        (void)apply_sheet_edit(sheet, SheetEdit::retitle_row(0, ""));
        FAIL("expected empty-heading");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::empty_heading);
    }
    try {
        (void)apply_sheet_edit(sheet, SheetEdit::delete_row(99));
        FAIL("expected index-out-of-range");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::index_out_of_range);
    }
    try {
        (void)apply_sheet_edit(sheet, SheetEdit::move_row(0, 99));
        FAIL("expected index-out-of-range");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::index_out_of_range);
    }
}

TEST_CASE("order checking finds every defect class") {
    Demo demo;
    ControlSheet sheet = generate_control_sheet(demo.project, dg());
    CHECK(check_report_order(sheet, demo.project).empty());

    SUBCASE("deleting a statement row leaves it unreported") {
        ControlSheet edited = apply_sheet_edit(sheet, SheetEdit::delete_row(7));
        auto diagnostics = check_report_order(edited, demo.project);
        CHECK(has_diag(diagnostics, diag::unreported_statement));
        CHECK(has_diag(diagnostics, diag::empty_section)); // G003 now empty
        CHECK(!has_errors(diagnostics));
    }

    SUBCASE("duplicated statement row is an error") {
        ControlSheet edited = sheet;
        edited.rows.push_back(sheet.rows[2]);
        auto diagnostics = check_report_order(edited, demo.project);
        CHECK(has_diag(diagnostics, diag::duplicate_statement));
        CHECK(has_errors(diagnostics));
    }

    SUBCASE("unknown refs are errors") {
        ControlSheet edited = sheet;
        edited.rows[2].stmt_ref = parse_stmt_ref("D003!CtrlStat09");
        auto diagnostics = check_report_order(edited, demo.project);
        CHECK(has_diag(diagnostics, diag::unknown_ref));
        CHECK(has_errors(diagnostics));
    }

    SUBCASE("precedence inversion is caught pairwise") {
        ControlSheet f_sheet = generate_control_sheet(demo.project, {ModuleRef{'F'}});
        // find the rows for F051!CtrlStat00 and F052!CtrlStat00 and swap them
        std::size_t first = 0, second = 0;
        for (std::size_t i = 0; i < f_sheet.rows.size(); ++i) {
            if (f_sheet.rows[i].kind != RowKind::Statement)
                continue;
            if (render(*f_sheet.rows[i].stmt_ref) == "F051!CtrlStat00")
                first = i;
            if (render(*f_sheet.rows[i].stmt_ref) == "F052!CtrlStat00")
                second = i;
        }
        REQUIRE(first != second);
        std::swap(f_sheet.rows[first], f_sheet.rows[second]);
        auto diagnostics = check_report_order(f_sheet, demo.project);
        CHECK(has_diag(diagnostics, diag::precedence_inversion));
        CHECK(!has_errors(diagnostics));

        // pairwise oracle: recompute inversions by brute force and compare counts
        std::map<StmtRef, std::size_t> row_of;
        for (std::size_t i = 0; i < f_sheet.rows.size(); ++i)
            if (f_sheet.rows[i].kind == RowKind::Statement)
                row_of[*f_sheet.rows[i].stmt_ref] = i;
        std::size_t expected = 0;
        for (const auto& wp : demo.project.working_papers)
            for (const auto& s : wp.statements)
                for (const auto& fwd : s.forward_links) {
                    auto a = row_of.find(s.ref);
                    auto b = row_of.find(fwd);
                    if (a != row_of.end() && b != row_of.end() && b->second < a->second)
                        ++expected;
                }
        std::size_t actual = 0;
        for (const auto& d : diagnostics)
            if (d.code == diag::precedence_inversion)
                ++actual;
        CHECK(actual == expected);
    }
}

TEST_CASE("reports are built in sheet order with linked evidence") {
    Demo demo;
    ControlSheet sheet = generate_control_sheet(demo.project, dg());
    std::string report = build_report(sheet, demo.project);

    CHECK(report.rfind("<!-- Project Report Control Sheet (EUSPRIG 2012) -->\n", 0) == 0);
    auto p1 = report.find("# Report\n");
    auto p2 = report.find("## Module Level Review of 'EuSpRIG 2012'\n");
    auto p3 = report.find("### Aide Memoire for Talk/Demonstration at EuSpRIG 2012\n");
    auto p4 = report.find("# EuSpRIG 2012\n");
    REQUIRE(p1 != std::string::npos);
    REQUIRE(p2 != std::string::npos);
    REQUIRE(p3 != std::string::npos);
    REQUIRE(p4 != std::string::npos);
    CHECK(p1 < p2);
    CHECK(p2 < p3);
    CHECK(p3 < p4);

    // every statement body appears exactly once
    std::string body = "Key points for the talk and demonstration";
    CHECK(report.find(body) != std::string::npos);
    CHECK(report.find(body) == report.rfind(body));

    // evidence citation became a link into the index
    CHECK(report.find("[F051/1](evidence_index.md#f051-1)") != std::string::npos);

    SUBCASE("an empty sheet yields only the header comment") {
        ControlSheet empty;
        empty.title = "Nothing";
        CHECK(build_report(empty, demo.project) == "<!-- Nothing -->\n");
    }

    SUBCASE("integrity errors block the build") {
        ControlSheet edited = sheet;
        edited.rows[2].stmt_ref = parse_stmt_ref("D003!CtrlStat09");
        try {
            (void)build_report(edited, demo.project);
            FAIL("expected integrity-errors-present");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::integrity_errors_present);
        }
    }
}

TEST_CASE("sheets persist and survive hand edits") {
    Demo demo;
    fixtures::TempDir dir;
    ControlSheet sheet = generate_control_sheet(demo.project, dg());
    save_control_sheet(sheet, dir.path());
    ControlSheet loaded = load_control_sheet(dir.path());
    CHECK(loaded == sheet);
    CHECK(serialize_control_sheet(loaded) == serialize_control_sheet(sheet));

    CHECK_THROWS_AS((void)parse_control_sheet("{}", "x"), Error);
    CHECK_THROWS_AS(
        (void)parse_control_sheet(
            "{\"format\":\"ewp-report-control/1\",\"title\":\"t\","
            "\"rows\":[{\"kind\":\"module\",\"ref\":\"DD\",\"heading\":\"x\"}]}",
            "x"),
        Error);
}

TEST_CASE("generated sheets are error-free and always build") {
    std::mt19937 rng(7177);
    for (int round = 0; round < 20; ++round) {
        Project p = fixtures::random_project(rng);
        std::vector<ModuleRef> order;
        for (const auto& m : p.modules)
            order.push_back(m.ref);
        ControlSheet sheet = generate_control_sheet(p, order);
        auto diagnostics = check_report_order(sheet, p);
        CHECK(!has_errors(diagnostics));
        CHECK_NOTHROW((void)build_report(sheet, p));
    }
}

TEST_CASE("any edit sequence leaves the checker total") {
    Demo demo;
    std::mt19937 rng(99);
    ControlSheet sheet = generate_control_sheet(demo.project, dg());
    for (int i = 0; i < 300; ++i) {
        if (sheet.rows.empty())
            sheet = generate_control_sheet(demo.project, dg());
        std::uniform_int_distribution<std::size_t> row(0, sheet.rows.size() - 1);
        switch (rng() % 3) {
        case 0:
            sheet = apply_sheet_edit(sheet, SheetEdit::move_row(row(rng), row(rng)));
            break;
        case 1:
            sheet = apply_sheet_edit(sheet, SheetEdit::delete_row(row(rng)));
            break;
        default:
            sheet = apply_sheet_edit(sheet, SheetEdit::retitle_row(row(rng), "t"));
            break;
        }
        CHECK_NOTHROW((void)check_report_order(sheet, demo.project));
    }
}
