#include "ewp/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ewp/clock.hpp"
#include "ewp/error.hpp"

namespace ewp {
namespace {

constexpr int kMaxStatementsPerPaper = 100;

// Forward-link targets that actually exist, in creation order.
std::vector<const ControlledStatement*> resolved_forward(const Project& p,
                                                         const ControlledStatement& s) {
    std::vector<const ControlledStatement*> out;
    for (const auto& ref : s.forward_links)
        if (const ControlledStatement* target = find_statement(p, ref))
            out.push_back(target);
    return out;
}

bool reaches(const Project& p, const StmtRef& from, const StmtRef& goal) {
    std::vector<StmtRef> stack{from};
    std::set<StmtRef> seen{from};
    while (!stack.empty()) {
        StmtRef current = stack.back();
        stack.pop_back();
        if (current == goal)
            return true;
        const ControlledStatement* s = find_statement(p, current);
        if (!s)
            continue;
        for (const auto& next : s->forward_links)
            if (seen.insert(next).second)
                stack.push_back(next);
    }
    return false;
}

// All statements in deterministic global order: papers by ref, then index.
std::vector<const ControlledStatement*> all_statements(const Project& p) {
    std::vector<const ControlledStatement*> out;
    for (const auto& wp : p.working_papers)
        for (const auto& s : wp.statements)
            out.push_back(&s);
    return out;
}

} // namespace

ControlledStatement& create_statement(Project& p, WpRef wp, const std::string& type_name,
                                      const std::string& heading, const std::string& body,
                                      const std::string& author) {
    WorkingPaper* paper = find_wp(p, wp);
    if (!paper)
        fail(Errc::unknown_wp, "no working paper " + render(wp));
    if (!find_type(p, type_name))
        fail(Errc::unknown_type, "statement type '" + type_name + "' is not registered");
    if (paper->next_statement_index >= kMaxStatementsPerPaper)
        fail(Errc::index_exhausted,
             render(wp) + " already used all " + std::to_string(kMaxStatementsPerPaper) +
                 " statement refs");

    ControlledStatement s;
    s.ref = StmtRef{wp, paper->next_statement_index};
    s.type_name = type_name;
    s.heading = heading;
    s.body = body;
    s.author = author;
    s.created_at = now_local();
    s.status = StmtStatus::Draft;
    ++paper->next_statement_index;
    paper->statements.push_back(std::move(s));
    return paper->statements.back();
}

void link_statements(Project& p, const StmtRef& from, const StmtRef& to) {
    if (from == to)
        fail(Errc::self_link, render(from) + " cannot link to itself");
    ControlledStatement* source = find_statement(p, from);
    if (!source)
        fail(Errc::unknown_ref, "no statement " + render(from));
    ControlledStatement* target = find_statement(p, to);
    if (!target)
        fail(Errc::unknown_ref, "no statement " + render(to));
    if (std::find(source->forward_links.begin(), source->forward_links.end(), to) !=
        source->forward_links.end())
        fail(Errc::duplicate_link, render(from) + " already links to " + render(to));

    const StatementTypeDef* from_type = find_type(p, source->type_name);
    if (!from_type)
        fail(Errc::unknown_type, "statement type '" + source->type_name + "' is not registered");
    const auto& allowed = from_type->allowed_successors;
    if (std::find(allowed.begin(), allowed.end(), target->type_name) == allowed.end()) {
        std::string reason = from_type->is_terminal
                                 ? "'" + from_type->name + "' is terminal"
                                 : "'" + target->type_name + "' may not follow '" +
                                       from_type->name + "'";
        fail(Errc::incompatible_types, render(from) + " -> " + render(to) + ": " + reason);
    }
    if (reaches(p, to, from))
        fail(Errc::cycle_detected,
             "linking " + render(from) + " -> " + render(to) + " would close a cycle");

    source->forward_links.push_back(to);
    target->backward_links.push_back(from);
}

void set_status(Project& p, const StmtRef& ref, StmtStatus status) {
    ControlledStatement* s = find_statement(p, ref);
    if (!s)
        fail(Errc::unknown_ref, "no statement " + render(ref));
    s->status = status;
}

std::vector<Diagnostic> validate_graph(const Project& p) {
    std::vector<Diagnostic> out;
    auto statements = all_statements(p);

    for (const ControlledStatement* s : statements) {
        for (const auto& fwd : s->forward_links)
            if (!find_statement(p, fwd))
                out.push_back({Severity::Error, diag::dangling_link, render(s->ref),
                               "forward link to missing statement " + render(fwd)});
        for (const auto& back : s->backward_links)
            if (!find_statement(p, back))
                out.push_back({Severity::Error, diag::dangling_link, render(s->ref),
                               "backward link to missing statement " + render(back)});

        const StatementTypeDef* type = find_type(p, s->type_name);
        if (type && type->requires_parent && s->backward_links.empty())
            out.push_back({Severity::Error, diag::missing_parent, render(s->ref),
                           "statement type '" + s->type_name +
                               "' must have a parent but has no backward links"});

        if (s->forward_links.size() >= 2)
            out.push_back({Severity::Warning, diag::branch, render(s->ref),
                           "chain branches into " + std::to_string(s->forward_links.size()) +
                               " strands"});

        if (s->status == StmtStatus::Cleared)
            for (const ControlledStatement* target : resolved_forward(p, *s))
                if (target->status == StmtStatus::Draft)
                    out.push_back({Severity::Warning, diag::draft_in_chain,
                                   render(target->ref),
                                   "Draft statement linked from Cleared " + render(s->ref)});
    }

    // Cycle detection over resolved forward links, one error per back edge.
    std::map<StmtRef, int> color; // 0 white, 1 on stack, 2 done
    for (const ControlledStatement* s : statements)
        color[s->ref] = 0;
    std::vector<std::pair<const ControlledStatement*, std::size_t>> stack;
    for (const ControlledStatement* s : statements) {
        if (color[s->ref] != 0)
            continue;
        color[s->ref] = 1;
        stack.push_back({s, 0});
        while (!stack.empty()) {
            auto& [node, next_child] = stack.back();
            if (next_child >= node->forward_links.size()) {
                color[node->ref] = 2;
                stack.pop_back();
                continue;
            }
            StmtRef child_ref = node->forward_links[next_child++];
            const ControlledStatement* child = find_statement(p, child_ref);
            if (!child)
                continue;
            if (color[child_ref] == 1) {
                out.push_back({Severity::Error, diag::cycle, render(node->ref),
                               "forward link to " + render(child_ref) + " closes a cycle"});
                continue;
            }
            if (color[child_ref] == 0) {
                color[child_ref] = 1;
                stack.push_back({child, 0});
            }
        }
    }

    // Orphans: statements that are not roots yet unreachable from every root
    // (only possible when hand-edited links form a cycle island).
    std::set<StmtRef> reached;
    std::vector<const ControlledStatement*> queue;
    for (const ControlledStatement* s : statements)
        if (s->backward_links.empty()) {
            reached.insert(s->ref);
            queue.push_back(s);
        }
    while (!queue.empty()) {
        const ControlledStatement* s = queue.back();
        queue.pop_back();
        for (const ControlledStatement* target : resolved_forward(p, *s))
            if (reached.insert(target->ref).second)
                queue.push_back(target);
    }
    for (const ControlledStatement* s : statements)
        if (!s->backward_links.empty() && reached.find(s->ref) == reached.end())
            out.push_back({Severity::Warning, diag::orphan, render(s->ref),
                           "unreachable from any chain root"});

    return out;
}

} // namespace ewp
