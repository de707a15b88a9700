// ewp: evidence-linked working papers. Registers source material in an
// integrity-checked vault, links Controlled Statements into argument chains,
// flattens them into module reviews and assembles the draft report.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ewp/clock.hpp"
#include "ewp/error.hpp"
#include "ewp/graph.hpp"
#include "ewp/io.hpp"
#include "ewp/refs.hpp"
#include "ewp/report.hpp"
#include "ewp/review.hpp"
#include "ewp/store.hpp"
#include "ewp/vault.hpp"

namespace {

namespace fs = std::filesystem;

// 0 success, 1 validation errors, 2 integrity failure (hash/anchor), 3 usage.
enum ExitCode : int { kOk = 0, kValidation = 1, kIntegrity = 2, kUsage = 3 };

struct UsageError {
    std::string message;
};

fs::path resolve_root(const std::string& root_flag) {
    if (!root_flag.empty())
        return root_flag;
    if (const char* env = std::getenv("EWP_ROOT"); env && *env)
        return env;
    return fs::current_path();
}

template <typename ParseFn>
auto cli_ref(ParseFn&& parse, const std::string& text) {
    try {
        return parse(text);
    } catch (const ewp::Error& e) {
        throw UsageError{e.what()};
    }
}

// "1" or "2/3"
std::pair<int, int> cli_layers(const std::string& text) {
    // reuse the evidence grammar by prefixing a dummy working paper
    ewp::EvidenceRef ref = cli_ref(ewp::parse_evidence_ref, "A000/" + text);
    return {ref.layer1, ref.layer2};
}

void note(const std::string& line) { std::cerr << line << "\n"; }

void style_check_letter(char ref_letter, ewp::ModuleRef module) {
    if (ref_letter != module.letter)
        note(std::string("warning: style: ref letter '") + ref_letter +
             "' differs from module '" + module.letter + "'");
}

void print_diagnostics(const std::vector<ewp::Diagnostic>& diagnostics) {
    for (const auto& d : diagnostics)
        std::cerr << ewp::to_line(d) << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"evidence-linked working papers"};
    app.require_subcommand(1);
    std::string root_flag;
    app.add_option("--root", root_flag, "project root (default: $EWP_ROOT or the current directory)");

    // init
    auto* init = app.add_subcommand("init", "create a new project");
    std::string init_path, init_name;
    init->add_option("path", init_path, "directory to create")->required();
    init->add_option("--name", init_name, "project name")->required();

    // module add
    auto* module_cmd = app.add_subcommand("module", "project modules");
    module_cmd->require_subcommand(1);
    auto* module_add = module_cmd->add_subcommand("add", "add a module");
    std::string module_ref, module_title;
    module_add->add_option("ref", module_ref, "module letter, e.g. G")->required();
    module_add->add_option("--title", module_title, "module title")->required();

    // section add
    auto* section_cmd = app.add_subcommand("section", "module sub-sections");
    section_cmd->require_subcommand(1);
    auto* section_add = section_cmd->add_subcommand("add", "add a sub-section");
    std::string section_ref, section_module, section_title;
    section_add->add_option("ref", section_ref, "sub-section ref, e.g. G100")->required();
    section_add->add_option("--module", section_module, "owning module letter")->required();
    section_add->add_option("--title", section_title, "sub-section title")->required();

    // wp add
    auto* wp_cmd = app.add_subcommand("wp", "working papers");
    wp_cmd->require_subcommand(1);
    auto* wp_add = wp_cmd->add_subcommand("add", "add a working paper");
    std::string wp_ref, wp_section, wp_title;
    wp_add->add_option("ref", wp_ref, "working-paper ref, e.g. G101")->required();
    wp_add->add_option("--section", wp_section, "owning sub-section ref")->required();
    wp_add->add_option("--title", wp_title, "working-paper title")->required();

    // evidence add|verify|index
    auto* evidence = app.add_subcommand("evidence", "the evidence vault");
    evidence->require_subcommand(1);
    auto* ev_add = evidence->add_subcommand("add", "register a source file");
    std::string ev_wp, ev_layers, ev_file, ev_desc;
    ev_add->add_option("wp", ev_wp, "owning working paper")->required();
    ev_add->add_option("layers", ev_layers, "layer ref: <l1> or <l1>/<l2>")->required();
    ev_add->add_option("file", ev_file, "source file to copy into the vault")->required();
    ev_add->add_option("--desc", ev_desc, "heading or description")->required();
    auto* ev_verify = evidence->add_subcommand("verify", "check anchor, presence and hashes");
    auto* ev_index = evidence->add_subcommand("index", "generate the Documentary Evidence Index");

    // rebind
    auto* rebind = app.add_subcommand("rebind", "re-anchor a moved project at its current path");

    // stmt add|link|clear
    auto* stmt = app.add_subcommand("stmt", "controlled statements");
    stmt->require_subcommand(1);
    auto* stmt_add = stmt->add_subcommand("add", "create a statement (prints its ref)");
    std::string sa_wp, sa_type, sa_heading, sa_body, sa_author;
    stmt_add->add_option("wp", sa_wp, "owning working paper")->required();
    stmt_add->add_option("--type", sa_type, "registered statement type")->required();
    stmt_add->add_option("--heading", sa_heading, "statement heading")->required();
    stmt_add->add_option("--body", sa_body, "statement body")->required();
    stmt_add->add_option("--author", sa_author, "author initials")->required();
    auto* stmt_link = stmt->add_subcommand("link", "link two statements into a chain");
    std::string sl_from, sl_to;
    stmt_link->add_option("from", sl_from, "source statement ref")->required();
    stmt_link->add_option("to", sl_to, "target statement ref")->required();
    auto* stmt_clear = stmt->add_subcommand("clear", "mark a statement Cleared");
    std::string sc_ref;
    stmt_clear->add_option("ref", sc_ref, "statement ref")->required();

    // graph check
    auto* graph = app.add_subcommand("graph", "statement graph");
    graph->require_subcommand(1);
    auto* graph_check = graph->add_subcommand("check", "lint the statement graph");

    // review
    auto* review = app.add_subcommand("review", "write the module layer review");
    std::string review_module, review_author;
    bool review_drafts = false;
    review->add_option("module", review_module, "module letter")->required();
    review->add_flag("--include-drafts", review_drafts, "include Draft statements");
    review->add_option("--author", review_author, "reviewer initials for the footer");

    // report init|check|build
    auto* report = app.add_subcommand("report", "report control sheet and draft report");
    report->require_subcommand(1);
    auto* report_init = report->add_subcommand("init", "generate the control sheet");
    std::vector<std::string> report_modules;
    report_init->add_option("modules", report_modules, "modules in report order")->required();
    auto* report_check = report->add_subcommand("check", "check integrity of report order");
    auto* report_build = report->add_subcommand("build", "write the draft report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (init->parsed()) {
            ewp::init_project(init_path, init_name);
            note("initialized project at " + init_path);
            return kOk;
        }

        fs::path root = resolve_root(root_flag);

        if (module_add->parsed()) {
            ewp::ModuleRef ref = cli_ref(ewp::parse_module_ref, module_ref);
            ewp::ProjectLock lock(root);
            ewp::Project p = ewp::load_project(root);
            ewp::add_module(p, ref, module_title);
            ewp::save_project(p, root);
            return kOk;
        }
        if (section_add->parsed()) {
            ewp::SubSectionRef ref = cli_ref(ewp::parse_wp_ref, section_ref);
            ewp::ModuleRef module = cli_ref(ewp::parse_module_ref, section_module);
            style_check_letter(ref.letter, module);
            ewp::ProjectLock lock(root);
            ewp::Project p = ewp::load_project(root);
            ewp::add_sub_section(p, ref, module, section_title);
            ewp::save_project(p, root);
            return kOk;
        }
        if (wp_add->parsed()) {
            ewp::WpRef ref = cli_ref(ewp::parse_wp_ref, wp_ref);
            ewp::SubSectionRef section = cli_ref(ewp::parse_wp_ref, wp_section);
            ewp::ProjectLock lock(root);
            ewp::Project p = ewp::load_project(root);
            for (const auto& m : p.modules)
                for (const auto& s : m.sub_sections)
                    if (s.ref == section)
                        style_check_letter(ref.letter, m.ref);
            ewp::add_working_paper(p, ref, section, wp_title);
            ewp::save_project(p, root);
            return kOk;
        }
        if (ev_add->parsed()) {
            ewp::WpRef wp = cli_ref(ewp::parse_wp_ref, ev_wp);
            auto [layer1, layer2] = cli_layers(ev_layers);
            ewp::ProjectLock lock(root);
            ewp::Project p = ewp::load_project(root);
            const ewp::EvidenceItem& item =
                ewp::register_evidence(p, root, wp, layer1, layer2, ev_desc, ev_file);
            ewp::save_project(p, root);
            std::cout << ewp::render(item.ref) << "\n";
            return kOk;
        }
        if (ev_verify->parsed()) {
            ewp::Project p = ewp::load_project(root);
            ewp::VerificationReport report_result = ewp::verify_evidence(p, root);
            for (const auto& item : report_result.items)
                std::cout << ewp::render(item.ref) << " " << ewp::to_string(item.status)
                          << "\n";
            return report_result.overall ? kOk : kIntegrity;
        }
        if (ev_index->parsed()) {
            ewp::Project p = ewp::load_project(root);
            ewp::write_evidence_index(p, root);
            note("wrote out/evidence_index.csv and out/evidence_index.md");
            return kOk;
        }
        if (rebind->parsed()) {
            ewp::ProjectLock lock(root);
            ewp::Project p = ewp::load_project(root);
            ewp::rebind_project(p, root);
            ewp::save_project(p, root);
            note("project re-anchored at " + p.anchor_root);
            return kOk;
        }
        if (stmt_add->parsed()) {
            ewp::WpRef wp = cli_ref(ewp::parse_wp_ref, sa_wp);
            ewp::ProjectLock lock(root);
            ewp::Project p = ewp::load_project(root);
            const ewp::ControlledStatement& s =
                ewp::create_statement(p, wp, sa_type, sa_heading, sa_body, sa_author);
            ewp::save_project(p, root);
            std::cout << ewp::render(s.ref) << "\n";
            return kOk;
        }
        if (stmt_link->parsed()) {
            ewp::StmtRef from = cli_ref(ewp::parse_stmt_ref, sl_from);
            ewp::StmtRef to = cli_ref(ewp::parse_stmt_ref, sl_to);
            ewp::ProjectLock lock(root);
            ewp::Project p = ewp::load_project(root);
            ewp::link_statements(p, from, to);
            ewp::save_project(p, root);
            return kOk;
        }
        if (stmt_clear->parsed()) {
            ewp::StmtRef ref = cli_ref(ewp::parse_stmt_ref, sc_ref);
            ewp::ProjectLock lock(root);
            ewp::Project p = ewp::load_project(root);
            ewp::set_status(p, ref, ewp::StmtStatus::Cleared);
            ewp::save_project(p, root);
            return kOk;
        }
        if (graph_check->parsed()) {
            ewp::Project p = ewp::load_project(root);
            auto diagnostics = ewp::validate_graph(p);
            print_diagnostics(diagnostics);
            std::error_code ec;
            fs::create_directories(root / "out", ec);
            ewp::write_file(root / "out" / "diagnostics.json",
                            ewp::diagnostics_json(diagnostics));
            return ewp::has_errors(diagnostics) ? kValidation : kOk;
        }
        if (review->parsed()) {
            ewp::ModuleRef module = cli_ref(ewp::parse_module_ref, review_module);
            ewp::Project p = ewp::load_project(root);
            ewp::write_review(p, root, module, review_drafts, review_author);
            note("wrote out/review_" + ewp::render(module) + ".md");
            return kOk;
        }
        if (report_init->parsed()) {
            std::vector<ewp::ModuleRef> order;
            for (const auto& m : report_modules)
                order.push_back(cli_ref(ewp::parse_module_ref, m));
            ewp::ProjectLock lock(root);
            ewp::Project p = ewp::load_project(root);
            ewp::ControlSheet sheet = ewp::generate_control_sheet(p, order);
            ewp::save_control_sheet(sheet, root);
            note("wrote report_control.json (" + std::to_string(sheet.rows.size()) + " rows)");
            return kOk;
        }
        if (report_check->parsed()) {
            ewp::Project p = ewp::load_project(root);
            ewp::ControlSheet sheet = ewp::load_control_sheet(root);
            auto diagnostics = ewp::check_report_order(sheet, p);
            print_diagnostics(diagnostics);
            return ewp::has_errors(diagnostics) ? kValidation : kOk;
        }
        if (report_build->parsed()) {
            ewp::Project p = ewp::load_project(root);
            ewp::ControlSheet sheet = ewp::load_control_sheet(root);
            ewp::write_report(sheet, p, root);
            note("wrote out/report.md");
            return kOk;
        }
        std::cerr << "error: no command\n";
        return kUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.message << "\n";
        return kUsage;
    } catch (const ewp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.code() == ewp::Errc::unanchored_project ? kIntegrity : kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
}
