#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ewp/project.hpp"

namespace ewp {

enum class EvidenceStatus { Ok, HashMismatch, Missing, Unanchored };

const char* to_string(EvidenceStatus s);

struct VerificationItem {
    EvidenceRef ref;
    EvidenceStatus status = EvidenceStatus::Ok;
    bool operator==(const VerificationItem&) const = default;
};

struct VerificationReport {
    std::vector<VerificationItem> items; // index order (ewp_ref, layer1, layer2)
    bool overall = true;                 // true iff every item is Ok
};

// One row of the Documentary Evidence Index, columns exactly as emitted.
struct EvidenceIndexRow {
    std::string evidence_reference;
    std::string ewp_ref;
    int layer1 = 1;
    int layer2 = 0;
    std::string description;
    std::string return_ref;
    bool operator==(const EvidenceIndexRow&) const = default;
};

// Copies the source byte-exact into
// evidence/<wp>/<layer1>[/<layer2>]/<original_filename>, records its SHA-256
// and appends the item to the working paper. `root` is where the project
// actually lives and must match the recorded anchor.
EvidenceItem& register_evidence(Project& p, const std::filesystem::path& root,
                                WpRef wp, int layer1, int layer2,
                                const std::string& description,
                                const std::filesystem::path& source);

// Checks anchor, presence and hash for every item. Never throws for item
// failures; they become statuses.
VerificationReport verify_evidence(const Project& p, const std::filesystem::path& root);

// Re-anchors the project at new_root. Refuses if any vault file is absent
// there (Error{vault_incomplete}); tampered files are left for verify.
void rebind_project(Project& p, const std::filesystem::path& new_root);

// Rows sorted by (ewp_ref, layer1, layer2).
std::vector<EvidenceIndexRow> build_evidence_index(const Project& p);

std::string render_index_csv(const std::vector<EvidenceIndexRow>& rows);
std::string render_index_markdown(const Project& p, const std::vector<EvidenceIndexRow>& rows);

// Writes out/evidence_index.csv and out/evidence_index.md under root.
void write_evidence_index(const Project& p, const std::filesystem::path& root);

} // namespace ewp
