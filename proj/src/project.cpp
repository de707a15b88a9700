#include "ewp/project.hpp"

#include <algorithm>
#include <utility>

#include "ewp/error.hpp"

namespace ewp {

const char* to_string(StmtStatus s) {
    return s == StmtStatus::Draft ? "Draft" : "Cleared";
}

StmtStatus parse_status(std::string_view text) {
    if (text == "Draft")
        return StmtStatus::Draft;
    if (text == "Cleared")
        return StmtStatus::Cleared;
    fail(Errc::parse_failure, "unknown status '" + std::string(text) + "'");
}

std::vector<StatementTypeDef> default_statement_types() {
    return {
        {"SystemsDescription", {"SystemsDescription", "AuditFinding"}, false, false},
        {"AuditFinding", {"AuditFinding", "Conclusion"}, false, false},
        {"Conclusion", {}, true, true},
    };
}

const StatementTypeDef* find_type(const Project& p, std::string_view name) {
    for (const auto& t : p.statement_types)
        if (t.name == name)
            return &t;
    return nullptr;
}

const Module* find_module(const Project& p, ModuleRef ref) {
    for (const auto& m : p.modules)
        if (m.ref == ref)
            return &m;
    return nullptr;
}

Module* find_module(Project& p, ModuleRef ref) {
    return const_cast<Module*>(find_module(std::as_const(p), ref));
}

const SubSection* find_sub_section(const Project& p, SubSectionRef ref) {
    for (const auto& m : p.modules)
        for (const auto& s : m.sub_sections)
            if (s.ref == ref)
                return &s;
    return nullptr;
}

const WorkingPaper* find_wp(const Project& p, WpRef ref) {
    auto it = std::lower_bound(p.working_papers.begin(), p.working_papers.end(), ref,
                               [](const WorkingPaper& wp, WpRef r) { return wp.ref < r; });
    if (it != p.working_papers.end() && it->ref == ref)
        return &*it;
    return nullptr;
}

WorkingPaper* find_wp(Project& p, WpRef ref) {
    return const_cast<WorkingPaper*>(find_wp(std::as_const(p), ref));
}

const ControlledStatement* find_statement(const Project& p, const StmtRef& ref) {
    const WorkingPaper* wp = find_wp(p, ref.wp);
    if (!wp)
        return nullptr;
    for (const auto& s : wp->statements)
        if (s.ref == ref)
            return &s;
    return nullptr;
}

ControlledStatement* find_statement(Project& p, const StmtRef& ref) {
    return const_cast<ControlledStatement*>(find_statement(std::as_const(p), ref));
}

const Module* module_of_wp(const Project& p, WpRef ref) {
    const WorkingPaper* wp = find_wp(p, ref);
    if (!wp)
        return nullptr;
    for (const auto& m : p.modules)
        for (const auto& s : m.sub_sections)
            if (s.ref == wp->sub_section)
                return &m;
    return nullptr;
}

std::vector<const WorkingPaper*> wps_of_module(const Project& p, ModuleRef ref) {
    std::vector<const WorkingPaper*> out;
    for (const auto& wp : p.working_papers) { // already in ref order
        const Module* m = module_of_wp(p, wp.ref);
        if (m && m->ref == ref)
            out.push_back(&wp);
    }
    return out;
}

namespace {

// Sub-section refs and working-paper refs share one namespace.
bool four_char_ref_taken(const Project& p, WpRef ref) {
    return find_sub_section(p, ref) != nullptr || find_wp(p, ref) != nullptr;
}

} // namespace

Module& add_module(Project& p, ModuleRef ref, const std::string& title) {
    if (find_module(p, ref))
        fail(Errc::ref_collision, "module " + render(ref) + " already exists");
    p.modules.push_back(Module{ref, title, {}});
    return p.modules.back();
}

SubSection& add_sub_section(Project& p, SubSectionRef ref, ModuleRef module,
                            const std::string& title) {
    Module* m = find_module(p, module);
    if (!m)
        fail(Errc::unknown_module, "no module " + render(module));
    if (four_char_ref_taken(p, ref))
        fail(Errc::ref_collision, "ref " + render(ref) + " already in use");
    m->sub_sections.push_back(SubSection{ref, title});
    return m->sub_sections.back();
}

WorkingPaper& add_working_paper(Project& p, WpRef ref, SubSectionRef sub_section,
                                const std::string& title) {
    if (!find_sub_section(p, sub_section))
        fail(Errc::unknown_ref, "no sub-section " + render(sub_section));
    if (four_char_ref_taken(p, ref))
        fail(Errc::ref_collision, "ref " + render(ref) + " already in use");
    WorkingPaper wp;
    wp.ref = ref;
    wp.title = title;
    wp.sub_section = sub_section;
    auto it = std::lower_bound(p.working_papers.begin(), p.working_papers.end(), ref,
                               [](const WorkingPaper& w, WpRef r) { return w.ref < r; });
    it = p.working_papers.insert(it, std::move(wp));
    return *it;
}

} // namespace ewp
