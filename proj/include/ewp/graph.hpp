#pragma once

#include <string>
#include <vector>

#include "ewp/diagnostics.hpp"
#include "ewp/project.hpp"

namespace ewp {

// Assigns the next unused CtrlStat index in the working paper (at most 100
// per paper) and stamps the creation time. New statements start as Draft.
ControlledStatement& create_statement(Project& p, WpRef wp,
                                      const std::string& type_name,
                                      const std::string& heading,
                                      const std::string& body,
                                      const std::string& author);

// Appends to_ref to from.forward_links and from_ref to to.backward_links.
// Rejects self links, duplicates, type-incompatible pairs and anything that
// would close a directed cycle.
void link_statements(Project& p, const StmtRef& from, const StmtRef& to);

void set_status(Project& p, const StmtRef& ref, StmtStatus status);

// Lints the whole statement graph. Errors: dangling-link, missing-parent,
// cycle. Warnings: branch, orphan, draft-in-chain. Cycles and dangling
// targets cannot be produced through this API; they are checked for
// hand-edited project files.
std::vector<Diagnostic> validate_graph(const Project& p);

} // namespace ewp
