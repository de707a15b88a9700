#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ewp/refs.hpp"

namespace ewp {

// One statement type and what may follow it in a chain.
struct StatementTypeDef {
    std::string name;
    std::vector<std::string> allowed_successors;
    bool requires_parent = false;
    bool is_terminal = false; // terminal types have no allowed successors
    bool operator==(const StatementTypeDef&) const = default;
};

enum class StmtStatus { Draft, Cleared };

const char* to_string(StmtStatus s);
StmtStatus parse_status(std::string_view text);

struct ControlledStatement {
    StmtRef ref;
    std::string type_name;
    std::string heading;
    std::string body;
    std::string author;            // initials, e.g. "SWA"
    std::string created_at;        // local "YYYY-MM-DDTHH:MM:SS"
    StmtStatus status = StmtStatus::Draft;
    std::vector<StmtRef> forward_links;  // creation order
    std::vector<StmtRef> backward_links; // creation order
    bool operator==(const ControlledStatement&) const = default;
};

struct EvidenceItem {
    EvidenceRef ref;
    std::string description;
    std::string original_filename;
    std::string vault_path;   // relative to the project root
    std::string sha256;       // 64 lowercase hex chars
    std::uint64_t size_bytes = 0;
    std::string registered_at; // UTC "YYYY-MM-DDTHH:MM:SSZ"
    bool operator==(const EvidenceItem&) const = default;
};

struct WorkingPaper {
    WpRef ref;
    std::string title;
    SubSectionRef sub_section; // owning sub-section
    int next_statement_index = 0; // monotone; statement refs are never reused
    std::vector<EvidenceItem> evidence;      // registration order
    std::vector<ControlledStatement> statements; // index order
    bool operator==(const WorkingPaper&) const = default;
};

struct SubSection {
    SubSectionRef ref;
    std::string title;
    bool operator==(const SubSection&) const = default;
};

struct Module {
    ModuleRef ref;
    std::string title;
    std::vector<SubSection> sub_sections; // declared order
    bool operator==(const Module&) const = default;
};

// The root aggregate. Working papers are kept sorted by ref; modules and
// sub-sections keep their declared order.
struct Project {
    std::string name;
    std::string anchor_root; // absolute path recorded at init/rebind
    std::vector<StatementTypeDef> statement_types;
    std::vector<Module> modules;
    std::vector<WorkingPaper> working_papers;
    bool operator==(const Project&) const = default;
};

// The registry installed by init: SystemsDescription -> {SystemsDescription,
// AuditFinding}; AuditFinding -> {AuditFinding, Conclusion}; Conclusion is
// terminal and requires a parent.
std::vector<StatementTypeDef> default_statement_types();

const StatementTypeDef* find_type(const Project& p, std::string_view name);
const Module* find_module(const Project& p, ModuleRef ref);
Module* find_module(Project& p, ModuleRef ref);
const SubSection* find_sub_section(const Project& p, SubSectionRef ref);
const WorkingPaper* find_wp(const Project& p, WpRef ref);
WorkingPaper* find_wp(Project& p, WpRef ref);
const ControlledStatement* find_statement(const Project& p, const StmtRef& ref);
ControlledStatement* find_statement(Project& p, const StmtRef& ref);

// Module that owns the working paper via its sub-section, or nullptr.
const Module* module_of_wp(const Project& p, WpRef ref);

// Working papers whose sub-section belongs to the module, in ref order.
std::vector<const WorkingPaper*> wps_of_module(const Project& p, ModuleRef ref);

// Structure building. All three enforce project-wide ref uniqueness and
// throw Error{ref_collision} / Error{unknown_module} / Error{unknown_ref}.
Module& add_module(Project& p, ModuleRef ref, const std::string& title);
SubSection& add_sub_section(Project& p, SubSectionRef ref, ModuleRef module,
                            const std::string& title);
WorkingPaper& add_working_paper(Project& p, WpRef ref, SubSectionRef sub_section,
                                const std::string& title);

} // namespace ewp
