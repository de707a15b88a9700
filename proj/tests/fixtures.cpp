#include "fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "ewp/error.hpp"
#include "ewp/graph.hpp"
#include "ewp/refs.hpp"
#include "ewp/store.hpp"
#include "ewp/vault.hpp"

namespace fixtures {
namespace fs = std::filesystem;

using ewp::parse_stmt_ref;
using ewp::parse_wp_ref;

ScopedNow::ScopedNow(const std::string& iso_utc) {
    if (const char* old = std::getenv("EWP_NOW")) {
        previous_ = old;
        had_previous_ = true;
    }
    setenv("EWP_NOW", iso_utc.c_str(), 1);
}

ScopedNow::~ScopedNow() {
    if (had_previous_)
        setenv("EWP_NOW", previous_.c_str(), 1);
    else
        unsetenv("EWP_NOW");
}

TempDir::TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("ewp-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    fs::create_directories(path_);
}

TempDir::~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
}

const std::vector<std::string>& evidence_descriptions() {
    static const std::vector<std::string> descriptions = {
        "Re-construct strings - Form activation code",
        "Re-construct strings - Move to previous text string",
        "Re-construct strings - Move to next text string",
        "Re-construct strings - Close/Cancel the Form",
        "Re-construct strings - Add (edited) string to the previous selection",
        "Re-construct strings - Post the prepared string to specified position on worksheet",
        "Re-construct strings - Picture of form in action",
        "Re-construct strings - Module parameters and operations",
    };
    return descriptions;
}

std::vector<fs::path> write_evidence_sources(const fs::path& dir) {
    fs::create_directories(dir);
    std::vector<fs::path> paths;
    for (int i = 1; i <= 8; ++i) {
        fs::path file = dir / ("listing" + std::to_string(i) + ".txt");
        std::ofstream out(file, std::ios::binary);
        out << "Re-construct strings source listing " << i << ".\n";
        paths.push_back(file);
    }
    return paths;
}

const std::vector<std::string>& module_f_order() {
    static const std::vector<std::string> order = {
        "F051!CtrlStat00", "F051!CtrlStat01", "F052!CtrlStat00", "F053!CtrlStat00",
        "F001!CtrlStat00", "F101!CtrlStat00", "F102!CtrlStat00", "F001!CtrlStat01",
    };
    return order;
}

ewp::Project build_demo_project(const fs::path& root, const fs::path& sources_dir) {
    ewp::Project p = ewp::init_project(root, "EUSPRIG 2012");

    ewp::add_module(p, {'A'}, "Index");
    ewp::add_sub_section(p, parse_wp_ref("A050"), {'A'}, "Draft Report Structures");
    ewp::add_working_paper(p, parse_wp_ref("A052"), parse_wp_ref("A050"),
                           "Project Report Control Sheet (EUSPRIG 2012)");

    ewp::add_module(p, {'D'}, "Report");
    ewp::add_sub_section(p, parse_wp_ref("D000"), {'D'}, "EUSPRIG 2012");
    ewp::add_working_paper(p, parse_wp_ref("D001"), parse_wp_ref("D000"),
                           "Aide Memoire for Talk/Demonstration at EuSpRIG 2012");
    ewp::add_working_paper(p, parse_wp_ref("D002"), parse_wp_ref("D000"),
                           "The Case for a New Class of 'Controlled Statement' - Method or "
                           "Detailed Audit Plan");
    ewp::add_working_paper(p, parse_wp_ref("D003"), parse_wp_ref("D000"),
                           "Module Level Review of 'EuSpRIG 2012'");

    ewp::add_module(p, {'G'}, "EuSpRIG 2012");
    ewp::add_sub_section(p, parse_wp_ref("G000"), {'G'}, "Summary of Findings & Conclusions");
    ewp::add_working_paper(p, parse_wp_ref("G001"), parse_wp_ref("G000"),
                           "The Standard links in a chain of Statements");
    ewp::add_working_paper(p, parse_wp_ref("G002"), parse_wp_ref("G000"),
                           "Module Level Review of 'Summary of Findings & Conclusions'");
    ewp::add_working_paper(p, parse_wp_ref("G003"), parse_wp_ref("G000"),
                           "Module Level Review of 'Linked Statements in Practice'");
    ewp::add_sub_section(p, parse_wp_ref("G100"), {'G'}, "Linked Statements in Practice");
    ewp::add_working_paper(p, parse_wp_ref("G101"), parse_wp_ref("G100"),
                           "Two Types of Long Chains");
    ewp::add_working_paper(p, parse_wp_ref("G102"), parse_wp_ref("G100"),
                           "Some 'Controlled Statements' must have a Parent");
    ewp::add_working_paper(p, parse_wp_ref("G103"), parse_wp_ref("G100"), "Branched Chains");

    ewp::add_module(p, {'F'}, "Describing the Primary System");
    ewp::add_sub_section(p, parse_wp_ref("F000"), {'F'}, "Primary System");
    ewp::add_working_paper(p, parse_wp_ref("F001"), parse_wp_ref("F000"), "Conclusions");
    ewp::add_working_paper(p, parse_wp_ref("F051"), parse_wp_ref("F000"),
                           "Re-construct strings");
    ewp::add_working_paper(p, parse_wp_ref("F052"), parse_wp_ref("F000"),
                           "First Pass Analysis");
    ewp::add_working_paper(p, parse_wp_ref("F053"), parse_wp_ref("F000"),
                           "Refined Analysis");
    ewp::add_sub_section(p, parse_wp_ref("F100"), {'F'}, "Secondary System");
    ewp::add_working_paper(p, parse_wp_ref("F101"), parse_wp_ref("F100"),
                           "Secondary Systems");
    ewp::add_working_paper(p, parse_wp_ref("F102"), parse_wp_ref("F100"),
                           "Secondary Analysis");

    auto sources = write_evidence_sources(sources_dir);
    const auto& descriptions = evidence_descriptions();
    for (int i = 0; i < 8; ++i)
        ewp::register_evidence(p, root, parse_wp_ref("F051"), i + 1, 0, descriptions[i],
                               sources[i]);

    struct Spec {
        const char* wp;
        const char* type;
        const char* heading;
        const char* body;
    };
    const Spec statements[] = {
        {"F051", "SystemsDescription", "Primary system context",
         "The primary system operates inside a wider business context that is set out "
         "before any detail."},
        {"F051", "SystemsDescription", "Primary system detail",
         "The detail of the primary system under examination, linked back to the earlier "
         "context."},
        {"F052", "AuditFinding", "First pass findings",
         "Interpretation of the first analysis pass over the primary system."},
        {"F053", "AuditFinding", "Refined findings",
         "A second and more refined pass over the same analysis."},
        {"F001", "Conclusion", "Primary conclusion",
         "The conclusion drawn from testing the primary system."},
        {"F101", "SystemsDescription", "Secondary system",
         "A secondary system closely related to the primary one."},
        {"F102", "AuditFinding", "Secondary findings",
         "Tests of the secondary system against both its relationship to the primary "
         "system and its own results."},
        {"F001", "Conclusion", "Secondary conclusion",
         "The conclusion drawn from testing the secondary system."},
        {"D003", "SystemsDescription", "Aide Memoire for Talk/Demonstration at EuSpRIG 2012",
         "Key points for the talk and demonstration, assembled from the module reviews."},
        {"G002", "SystemsDescription", "The Standard links in a chain of Statements",
         "How forward and backward links join statements into a single strand of logic."},
        {"G003", "SystemsDescription", "Two Types of Long Chains",
         "Long chains arise from single strands and from branched strands; see F051/1 for "
         "the source listing."},
    };
    for (const auto& s : statements)
        ewp::create_statement(p, parse_wp_ref(s.wp), s.type, s.heading, s.body, "SWA");

    const std::pair<const char*, const char*> links[] = {
        {"F051!CtrlStat00", "F051!CtrlStat01"},
        {"F051!CtrlStat01", "F052!CtrlStat00"},
        {"F052!CtrlStat00", "F053!CtrlStat00"},
        {"F053!CtrlStat00", "F001!CtrlStat00"},
        {"F051!CtrlStat01", "F101!CtrlStat00"},
        {"F101!CtrlStat00", "F102!CtrlStat00"},
        {"F102!CtrlStat00", "F001!CtrlStat01"},
    };
    for (const auto& [from, to] : links)
        ewp::link_statements(p, parse_stmt_ref(from), parse_stmt_ref(to));

    for (const auto& wp : p.working_papers)
        for (const auto& s : wp.statements)
            ewp::set_status(p, s.ref, ewp::StmtStatus::Cleared);

    ewp::save_project(p, root);
    return p;
}

namespace {

std::string random_text(std::mt19937& rng, std::size_t max_len) {
    static const std::string charset =
        "abcdefghij KLMNOP0123,;:'\"()-!/";
    std::uniform_int_distribution<std::size_t> len_dist(0, max_len);
    std::size_t len = len_dist(rng);
    std::string out;
    std::uniform_int_distribution<std::size_t> pick(0, charset.size() - 1);
    for (std::size_t i = 0; i < len; ++i)
        out += charset[pick(rng)];
    // occasional newline and non-ASCII to exercise the persistence layer
    if (len > 4 && rng() % 4 == 0)
        out += "\nß§";
    return out;
}

std::string random_hex64(std::mt19937& rng) {
    static const char* hex = "0123456789abcdef";
    std::string out;
    std::uniform_int_distribution<int> pick(0, 15);
    for (int i = 0; i < 64; ++i)
        out += hex[pick(rng)];
    return out;
}

} // namespace

ewp::Project random_project(std::mt19937& rng) {
    ewp::Project p;
    p.name = random_text(rng, 24);
    p.anchor_root = "/tmp/random-" + std::to_string(rng() % 1000000);
    p.statement_types = ewp::default_statement_types();
    if (rng() % 2 == 0)
        p.statement_types.push_back({"Note", {"Note", "AuditFinding"}, false, false});

    std::vector<char> pool = {'A', 'B', 'C', 'D', 'E', 'F', 'G', 'H', 'J', 'K'};
    std::shuffle(pool.begin(), pool.end(), rng);

    std::uniform_int_distribution<int> module_count(1, 3);
    std::uniform_int_distribution<int> number(0, 999);
    int modules = module_count(rng);
    std::vector<ewp::WpRef> wp_refs;
    for (int m = 0; m < modules; ++m) {
        char letter = pool[static_cast<std::size_t>(m)];
        ewp::add_module(p, {letter}, random_text(rng, 16));
        int sections = static_cast<int>(rng() % 3);
        for (int s = 0; s < sections; ++s) {
            ewp::SubSectionRef sref{letter, number(rng)};
            if (ewp::find_sub_section(p, sref) || ewp::find_wp(p, sref))
                continue;
            ewp::add_sub_section(p, sref, {letter}, random_text(rng, 16));
            int papers = static_cast<int>(rng() % 3);
            for (int w = 0; w < papers; ++w) {
                ewp::WpRef wref{letter, number(rng)};
                if (ewp::find_sub_section(p, wref) || ewp::find_wp(p, wref))
                    continue;
                ewp::add_working_paper(p, wref, sref, random_text(rng, 16));
                wp_refs.push_back(wref);
            }
        }
    }

    static const char* kTypes[] = {"SystemsDescription", "AuditFinding", "Conclusion"};
    std::vector<ewp::StmtRef> stmt_refs;
    for (const auto& wref : wp_refs) {
        int statements = static_cast<int>(rng() % 4);
        for (int i = 0; i < statements; ++i) {
            const auto& s = ewp::create_statement(p, wref, kTypes[rng() % 3],
                                                  random_text(rng, 12), random_text(rng, 40),
                                                  "RND");
            stmt_refs.push_back(s.ref);
            if (rng() % 2 == 0)
                ewp::set_status(p, s.ref, ewp::StmtStatus::Cleared);
        }
    }
    if (stmt_refs.size() >= 2) {
        std::uniform_int_distribution<std::size_t> pick(0, stmt_refs.size() - 1);
        for (std::size_t attempt = 0; attempt < stmt_refs.size() * 2; ++attempt) {
            try {
                ewp::link_statements(p, stmt_refs[pick(rng)], stmt_refs[pick(rng)]);
            } catch (const ewp::Error&) {
                // incompatible/cycle/duplicate/self: expected for random pairs
            }
        }
    }

    for (const auto& wref : wp_refs) {
        if (rng() % 2)
            continue;
        ewp::WorkingPaper* wp = ewp::find_wp(p, wref);
        int layer1 = 1 + static_cast<int>(rng() % 3);
        ewp::EvidenceItem item;
        item.ref = ewp::EvidenceRef{wref, layer1, static_cast<int>(rng() % 2)};
        bool taken = false;
        for (const auto& other : p.working_papers)
            for (const auto& e : other.evidence)
                if (e.ref == item.ref)
                    taken = true;
        if (taken)
            continue;
        item.description = random_text(rng, 30);
        item.original_filename = "src" + std::to_string(rng() % 100) + ".txt";
        item.vault_path = "evidence/" + ewp::render(wref) + "/" + std::to_string(layer1) +
                          "/" + item.original_filename;
        item.sha256 = random_hex64(rng);
        item.size_bytes = rng() % 100000;
        item.registered_at = "2012-01-01T00:00:00Z";
        wp->evidence.push_back(std::move(item));
    }

    return p;
}

ewp::Project random_dag_project(std::mt19937& rng, int max_statements) {
    ewp::Project p;
    p.name = "random dag";
    p.anchor_root = "/tmp/dag";
    p.statement_types = ewp::default_statement_types();
    ewp::add_module(p, {'M'}, "Random Module");
    ewp::add_sub_section(p, parse_wp_ref("M000"), {'M'}, "Random Section");
    ewp::add_working_paper(p, parse_wp_ref("M001"), parse_wp_ref("M000"), "Paper One");
    ewp::add_working_paper(p, parse_wp_ref("M002"), parse_wp_ref("M000"), "Paper Two");
    ewp::add_working_paper(p, parse_wp_ref("M003"), parse_wp_ref("M000"), "Paper Three");

    static const char* kTypes[] = {"SystemsDescription", "AuditFinding", "Conclusion"};
    static const char* kPapers[] = {"M001", "M002", "M003"};
    std::uniform_int_distribution<int> count(1, max_statements);
    int n = count(rng);
    std::vector<ewp::StmtRef> refs;
    for (int i = 0; i < n; ++i) {
        const auto& s = ewp::create_statement(p, parse_wp_ref(kPapers[rng() % 3]),
                                              kTypes[rng() % 3], "h" + std::to_string(i),
                                              "b" + std::to_string(i), "RND");
        refs.push_back(s.ref);
        ewp::set_status(p, s.ref, ewp::StmtStatus::Cleared);
    }
    if (refs.size() >= 2) {
        std::uniform_int_distribution<std::size_t> pick(0, refs.size() - 1);
        std::size_t attempts = refs.size() * 3;
        for (std::size_t i = 0; i < attempts; ++i) {
            try {
                ewp::link_statements(p, refs[pick(rng)], refs[pick(rng)]);
            } catch (const ewp::Error&) {
            }
        }
    }
    return p;
}

} // namespace fixtures
