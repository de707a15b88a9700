#include "ewp/vault.hpp"

#include <algorithm>
#include <cctype>

#include "ewp/clock.hpp"
#include "ewp/error.hpp"
#include "ewp/io.hpp"
#include "ewp/sha256.hpp"

namespace ewp {
namespace fs = std::filesystem;

namespace {

constexpr const char* kCsvHeader =
    "Evidence Reference,EWP Ref,1st Layer Ref,2nd Layer Ref,"
    "Working Paper Heading or Description,Return Ref";

std::string canonical_of(const fs::path& root) {
    std::error_code ec;
    fs::path canonical = fs::canonical(root, ec);
    if (ec)
        fail(Errc::io_failure, "cannot resolve " + root.string() + ": " + ec.message());
    return canonical.string();
}

bool anchored_at(const Project& p, const fs::path& root) {
    return canonical_of(root) == p.anchor_root;
}

std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\r\n") == std::string::npos)
        return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string md_cell(const std::string& value) {
    std::string out;
    for (char c : value) {
        if (c == '|')
            out += '\\';
        if (c == '\n') {
            out += ' ';
            continue;
        }
        out += c;
    }
    return out;
}

// "F051/1" -> "f051-1", used as the per-row anchor in the markdown index.
std::string anchor_slug(const std::string& rendered_ref) {
    std::string out;
    for (char c : rendered_ref)
        out += c == '/' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

struct IndexedItem {
    const EvidenceItem* item;
    const WorkingPaper* owner;
};

std::vector<IndexedItem> items_in_index_order(const Project& p) {
    std::vector<IndexedItem> all;
    for (const auto& wp : p.working_papers)
        for (const auto& item : wp.evidence)
            all.push_back({&item, &wp});
    std::sort(all.begin(), all.end(), [](const IndexedItem& a, const IndexedItem& b) {
        return a.item->ref < b.item->ref;
    });
    return all;
}

} // namespace

const char* to_string(EvidenceStatus s) {
    switch (s) {
    case EvidenceStatus::Ok: return "OK";
    case EvidenceStatus::HashMismatch: return "HASH_MISMATCH";
    case EvidenceStatus::Missing: return "MISSING";
    case EvidenceStatus::Unanchored: return "UNANCHORED";
    }
    return "?";
}

EvidenceItem& register_evidence(Project& p, const fs::path& root, WpRef wp, int layer1,
                                int layer2, const std::string& description,
                                const fs::path& source) {
    if (layer1 < 1)
        fail(Errc::zero_layer1, "layer1 must be >= 1");
    if (layer2 < 0)
        fail(Errc::malformed_ref, "layer2 must be >= 0");
    WorkingPaper* paper = find_wp(p, wp);
    if (!paper)
        fail(Errc::unknown_wp, "no working paper " + render(wp));
    if (!anchored_at(p, root))
        fail(Errc::unanchored_project,
             "project has moved (anchored at " + p.anchor_root + "); run rebind first");

    EvidenceRef ref{wp, layer1, layer2};
    for (const auto& other : p.working_papers)
        for (const auto& item : other.evidence)
            if (item.ref == ref)
                fail(Errc::duplicate_evidence_ref, render(ref) + " is already registered");

    std::error_code ec;
    if (!fs::is_regular_file(source, ec))
        fail(Errc::source_missing, source.string() + " is not a readable file");
    std::string filename = source.filename().string();
    if (filename.empty())
        fail(Errc::source_missing, source.string() + " has no filename");

    fs::path rel = fs::path("evidence") / render(wp) / std::to_string(layer1);
    if (layer2 != 0)
        rel /= std::to_string(layer2);
    fs::create_directories(root / rel, ec);
    if (ec)
        fail(Errc::io_failure, "cannot create " + (root / rel).string() + ": " + ec.message());
    rel /= filename;
    fs::path target = root / rel;
    if (fs::exists(target))
        fail(Errc::io_failure, target.string() + " already exists in the vault");
    if (!fs::copy_file(source, target, ec) || ec)
        fail(Errc::io_failure,
             "cannot copy " + source.string() + " into the vault: " + ec.message());

    EvidenceItem item;
    item.ref = ref;
    item.description = description;
    item.original_filename = filename;
    item.vault_path = rel.generic_string();
    item.sha256 = sha256_file(target);
    item.size_bytes = fs::file_size(target);
    item.registered_at = now_utc();
    paper->evidence.push_back(std::move(item));
    return paper->evidence.back();
}

VerificationReport verify_evidence(const Project& p, const fs::path& root) {
    VerificationReport report;
    bool anchored = anchored_at(p, root);
    for (const auto& indexed : items_in_index_order(p)) {
        const EvidenceItem& item = *indexed.item;
        EvidenceStatus status;
        if (!anchored) {
            status = EvidenceStatus::Unanchored;
        } else {
            fs::path file = root / item.vault_path;
            std::error_code ec;
            if (!fs::is_regular_file(file, ec))
                status = EvidenceStatus::Missing;
            else
                status = sha256_file(file) == item.sha256 ? EvidenceStatus::Ok
                                                          : EvidenceStatus::HashMismatch;
        }
        report.items.push_back({item.ref, status});
        if (status != EvidenceStatus::Ok)
            report.overall = false;
    }
    return report;
}

void rebind_project(Project& p, const fs::path& new_root) {
    std::string canonical = canonical_of(new_root);
    std::vector<std::string> missing;
    for (const auto& wp : p.working_papers)
        for (const auto& item : wp.evidence) {
            std::error_code ec;
            if (!fs::is_regular_file(new_root / item.vault_path, ec))
                missing.push_back(render(item.ref) + " (" + item.vault_path + ")");
        }
    if (!missing.empty()) {
        std::string list;
        for (const auto& m : missing)
            list += (list.empty() ? "" : ", ") + m;
        fail(Errc::vault_incomplete, "missing under " + canonical + ": " + list);
    }
    p.anchor_root = canonical;
}

std::vector<EvidenceIndexRow> build_evidence_index(const Project& p) {
    std::vector<EvidenceIndexRow> rows;
    for (const auto& indexed : items_in_index_order(p)) {
        const EvidenceItem& item = *indexed.item;
        EvidenceIndexRow row;
        row.evidence_reference = render(item.ref);
        row.ewp_ref = render(item.ref.wp);
        row.layer1 = item.ref.layer1;
        row.layer2 = item.ref.layer2;
        row.description = item.description;
        row.return_ref = render(indexed.owner->ref);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_index_csv(const std::vector<EvidenceIndexRow>& rows) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const auto& row : rows) {
        out += csv_field(row.evidence_reference);
        out += ',';
        out += csv_field(row.ewp_ref);
        out += ',';
        out += std::to_string(row.layer1);
        out += ',';
        out += std::to_string(row.layer2);
        out += ',';
        out += csv_field(row.description);
        out += ',';
        out += csv_field(row.return_ref);
        out += '\n';
    }
    return out;
}

std::string render_index_markdown(const Project& p, const std::vector<EvidenceIndexRow>& rows) {
    std::string out = "# Documentary Evidence Index\n\n";
    out += "| Evidence Reference | EWP Ref | 1st Layer Ref | 2nd Layer Ref | "
           "Working Paper Heading or Description | Return Ref |\n";
    out += "| --- | --- | --- | --- | --- | --- |\n";
    for (const auto& row : rows) {
        const EvidenceItem* item = nullptr;
        EvidenceRef ref = parse_evidence_ref(row.evidence_reference);
        if (const WorkingPaper* wp = find_wp(p, ref.wp))
            for (const auto& e : wp->evidence)
                if (e.ref == ref)
                    item = &e;
        out += "| <a id=\"" + anchor_slug(row.evidence_reference) + "\"></a>";
        if (item)
            out += "[" + row.evidence_reference + "](../" + item->vault_path + ")";
        else
            out += row.evidence_reference;
        out += " | " + md_cell(row.ewp_ref);
        out += " | " + std::to_string(row.layer1);
        out += " | " + std::to_string(row.layer2);
        out += " | " + md_cell(row.description);
        out += " | " + md_cell(row.return_ref);
        out += " |\n";
    }
    return out;
}

void write_evidence_index(const Project& p, const fs::path& root) {
    auto rows = build_evidence_index(p);
    std::error_code ec;
    fs::create_directories(root / "out", ec);
    write_file(root / "out" / "evidence_index.csv", render_index_csv(rows));
    write_file(root / "out" / "evidence_index.md", render_index_markdown(p, rows));
}

} // namespace ewp
