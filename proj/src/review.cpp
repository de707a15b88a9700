#include "ewp/review.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "ewp/clock.hpp"
#include "ewp/error.hpp"
#include "ewp/io.hpp"

namespace ewp {
namespace fs = std::filesystem;

namespace {

struct ChainView {
    // Included statements keyed by ref, with forward edges restricted to the
    // included set (creation order preserved).
    std::map<StmtRef, const ControlledStatement*> nodes;
    std::map<StmtRef, std::vector<StmtRef>> edges;
    std::vector<StmtRef> roots; // ascending (WpRef, index)
};

// Included set: statements owned by the module's working papers plus
// everything forward-reachable from them (traversal crosses Draft statements
// and module boundaries); Drafts are then dropped unless include_drafts.
ChainView build_view(const Project& p, ModuleRef module, bool include_drafts) {
    if (!find_module(p, module))
        fail(Errc::unknown_module, "no module " + render(module));

    std::set<StmtRef> reachable;
    std::vector<const ControlledStatement*> queue;
    for (const WorkingPaper* wp : wps_of_module(p, module))
        for (const auto& s : wp->statements)
            if (reachable.insert(s.ref).second)
                queue.push_back(&s);
    while (!queue.empty()) {
        const ControlledStatement* s = queue.back();
        queue.pop_back();
        for (const auto& ref : s->forward_links)
            if (const ControlledStatement* target = find_statement(p, ref))
                if (reachable.insert(target->ref).second)
                    queue.push_back(target);
    }

    ChainView view;
    for (const auto& ref : reachable) {
        const ControlledStatement* s = find_statement(p, ref);
        if (!include_drafts && s->status == StmtStatus::Draft)
            continue;
        view.nodes.emplace(ref, s);
    }
    std::set<StmtRef> has_included_parent;
    for (const auto& [ref, s] : view.nodes) {
        auto& out_edges = view.edges[ref];
        for (const auto& target : s->forward_links)
            if (view.nodes.count(target)) {
                out_edges.push_back(target);
                has_included_parent.insert(target);
            }
    }
    for (const auto& [ref, s] : view.nodes)
        if (!has_included_parent.count(ref))
            view.roots.push_back(ref); // map iteration is already ascending
    return view;
}

// Deterministic topological order: reverse postorder with roots and forward
// links taken in reverse declared order. On tree-shaped chains this emits
// each strand depth-first in creation order (the readable order the review
// wants); with shared descendants it still never places a statement before
// one of its predecessors.
std::vector<StmtRef> linearize(const ChainView& view) {
    std::map<StmtRef, int> color; // 0 white, 1 on stack, 2 done
    std::vector<StmtRef> postorder;
    std::vector<std::pair<StmtRef, std::size_t>> stack;

    auto visit = [&](const StmtRef& root) {
        if (color[root] != 0)
            return;
        color[root] = 1;
        stack.push_back({root, 0});
        while (!stack.empty()) {
            auto& [ref, consumed] = stack.back();
            const auto& children = view.edges.at(ref);
            if (consumed >= children.size()) {
                color[ref] = 2;
                postorder.push_back(ref);
                stack.pop_back();
                continue;
            }
            // reverse creation order, so the first-created branch finishes last
            StmtRef child = children[children.size() - 1 - consumed];
            ++consumed;
            if (color[child] == 1)
                fail(Errc::cycle_detected,
                     render(ref) + " -> " + render(child) + " closes a cycle");
            if (color[child] == 0) {
                color[child] = 1;
                stack.push_back({child, 0});
            }
        }
    };

    for (auto it = view.roots.rbegin(); it != view.roots.rend(); ++it)
        visit(*it);

    if (postorder.size() != view.nodes.size())
        fail(Errc::cycle_detected,
             "statement chain contains a cycle with no reachable root");

    std::reverse(postorder.begin(), postorder.end());
    return postorder;
}

} // namespace

ReviewDocument flatten_module(const Project& p, ModuleRef module, bool include_drafts,
                              const std::string& author) {
    ChainView view = build_view(p, module, include_drafts);

    ReviewDocument doc;
    doc.module = module;
    doc.module_title = find_module(p, module)->title;
    doc.generated_at = now_local();
    doc.author = author;
    for (const auto& ref : linearize(view)) {
        const ControlledStatement* s = view.nodes.at(ref);
        const Module* owner = module_of_wp(p, ref.wp);
        ReviewEntry entry;
        entry.type_name = s->type_name;
        entry.heading = s->heading;
        entry.body = s->body;
        entry.ref = ref;
        entry.foreign = !owner || owner->ref != module;
        entry.status = s->status;
        doc.entries.push_back(std::move(entry));
    }
    return doc;
}

std::vector<StmtRef> chain_roots(const Project& p, ModuleRef module) {
    return build_view(p, module, false).roots;
}

std::string render_review(const ReviewDocument& doc) {
    std::string out = "# Module Level Review of '" + doc.module_title + "'\n";
    for (const auto& entry : doc.entries) {
        out += "\n**" + entry.type_name + "**\n\n";
        out += entry.body;
        out += "\n\n";
        out += "<p align=\"right\"><code>" + render(entry.ref) + "</code>";
        if (entry.foreign)
            out += " <em>(from " + render(entry.ref.wp) + ")</em>";
        if (entry.status == StmtStatus::Draft)
            out += " <em>(draft)</em>";
        out += "</p>\n";
    }
    out += "\n---\n\n";
    if (!doc.author.empty())
        out += doc.author + "  \n";
    out += human_datetime(doc.generated_at) + "\n";
    return out;
}

void write_review(const Project& p, const fs::path& root, ModuleRef module,
                  bool include_drafts, const std::string& author) {
    ReviewDocument doc = flatten_module(p, module, include_drafts, author);
    std::error_code ec;
    fs::create_directories(root / "out", ec);
    write_file(root / "out" / ("review_" + render(module) + ".md"), render_review(doc));
}

} // namespace ewp
