#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ewp/project.hpp"

namespace ewp {

struct ReviewEntry {
    std::string type_name; // heading line of the entry
    std::string heading;   // the statement's own heading
    std::string body;
    StmtRef ref;
    bool foreign = false;  // owning working paper lies outside the module
    StmtStatus status = StmtStatus::Cleared;
    bool operator==(const ReviewEntry&) const = default;
};

struct ReviewDocument {
    ModuleRef module;
    std::string module_title;
    std::vector<ReviewEntry> entries;
    std::string generated_at; // local ISO
    std::string author;       // initials, may be empty
};

// Pulls the module's chains into one readable order. Included: statements
// owned by the module's working papers plus everything forward-reachable
// from them; Draft statements drop out unless include_drafts is set.
//
// Entry order is a deterministic topological order of the included DAG:
// reverse postorder with roots and forward links visited in reverse declared
// order, so the first-created strand lands first and every link a->b has a
// before b. Throws Error{cycle_detected} on hand-edited cyclic files.
ReviewDocument flatten_module(const Project& p, ModuleRef module,
                              bool include_drafts = false,
                              const std::string& author = {});

// Included statements with no backward links from the included set, in
// (WpRef, index) order.
std::vector<StmtRef> chain_roots(const Project& p, ModuleRef module);

std::string render_review(const ReviewDocument& doc);

// Writes out/review_<module>.md under root.
void write_review(const Project& p, const std::filesystem::path& root,
                  ModuleRef module, bool include_drafts, const std::string& author);

} // namespace ewp
