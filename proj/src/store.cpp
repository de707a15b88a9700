#include "ewp/store.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cctype>
#include <set>
#include <string>

#include "json.hpp"

#include "ewp/clock.hpp"
#include "ewp/error.hpp"
#include "ewp/io.hpp"

namespace ewp {
namespace {

using ojson = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr const char* kFormat = "ewp-project/1";
constexpr const char* kProjectFile = "project.json";

[[noreturn]] void bad_field(const std::string& origin, const std::string& where,
                            const std::string& what) {
    fail(Errc::parse_failure, origin + ": " + where + ": " + what);
}

const ojson& require(const ojson& j, const char* key, const std::string& origin,
                     const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        bad_field(origin, where, std::string("missing field '") + key + "'");
    return *it;
}

std::string require_string(const ojson& j, const char* key, const std::string& origin,
                           const std::string& where) {
    const ojson& v = require(j, key, origin, where);
    if (!v.is_string())
        bad_field(origin, where + "." + key, "expected a string");
    return v.get<std::string>();
}

bool require_bool(const ojson& j, const char* key, const std::string& origin,
                  const std::string& where) {
    const ojson& v = require(j, key, origin, where);
    if (!v.is_boolean())
        bad_field(origin, where + "." + key, "expected a boolean");
    return v.get<bool>();
}

std::int64_t require_int(const ojson& j, const char* key, const std::string& origin,
                         const std::string& where) {
    const ojson& v = require(j, key, origin, where);
    if (!v.is_number_integer())
        bad_field(origin, where + "." + key, "expected an integer");
    return v.get<std::int64_t>();
}

const ojson& require_array(const ojson& j, const char* key, const std::string& origin,
                           const std::string& where) {
    const ojson& v = require(j, key, origin, where);
    if (!v.is_array())
        bad_field(origin, where + "." + key, "expected an array");
    return v;
}

bool is_hex64(const std::string& s) {
    if (s.size() != 64)
        return false;
    for (char c : s)
        if (!((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')))
            return false;
    return true;
}

template <typename ParseFn>
auto parse_ref_field(ParseFn&& parse, const std::string& text, const std::string& origin,
                     const std::string& where) {
    try {
        return parse(text);
    } catch (const Error& e) {
        bad_field(origin, where, e.what());
    }
}

ojson type_to_json(const StatementTypeDef& t) {
    ojson j;
    j["name"] = t.name;
    j["allowed_successors"] = t.allowed_successors;
    j["requires_parent"] = t.requires_parent;
    j["is_terminal"] = t.is_terminal;
    return j;
}

ojson statement_to_json(const ControlledStatement& s) {
    ojson j;
    j["ref"] = render(s.ref);
    j["type"] = s.type_name;
    j["heading"] = s.heading;
    j["body"] = s.body;
    j["author"] = s.author;
    j["created_at"] = s.created_at;
    j["status"] = to_string(s.status);
    ojson fwd = ojson::array();
    for (const auto& r : s.forward_links)
        fwd.push_back(render(r));
    j["forward_links"] = std::move(fwd);
    ojson back = ojson::array();
    for (const auto& r : s.backward_links)
        back.push_back(render(r));
    j["backward_links"] = std::move(back);
    return j;
}

ojson evidence_to_json(const EvidenceItem& e) {
    ojson j;
    j["ref"] = render(e.ref);
    j["description"] = e.description;
    j["original_filename"] = e.original_filename;
    j["vault_path"] = e.vault_path;
    j["sha256"] = e.sha256;
    j["size_bytes"] = e.size_bytes;
    j["registered_at"] = e.registered_at;
    return j;
}

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i)
        if (text[i] == '\n')
            ++line;
    return line;
}

} // namespace

std::string serialize_project(const Project& p) {
    ojson j;
    j["format"] = kFormat;
    j["name"] = p.name;
    j["anchor_root"] = p.anchor_root;

    ojson types = ojson::array();
    for (const auto& t : p.statement_types)
        types.push_back(type_to_json(t));
    j["statement_types"] = std::move(types);

    ojson modules = ojson::array();
    for (const auto& m : p.modules) {
        ojson mj;
        mj["ref"] = render(m.ref);
        mj["title"] = m.title;
        ojson subs = ojson::array();
        for (const auto& s : m.sub_sections) {
            ojson sj;
            sj["ref"] = render(s.ref);
            sj["title"] = s.title;
            subs.push_back(std::move(sj));
        }
        mj["sub_sections"] = std::move(subs);
        modules.push_back(std::move(mj));
    }
    j["modules"] = std::move(modules);

    std::vector<const WorkingPaper*> wps;
    for (const auto& wp : p.working_papers)
        wps.push_back(&wp);
    std::sort(wps.begin(), wps.end(),
              [](const WorkingPaper* a, const WorkingPaper* b) { return a->ref < b->ref; });

    ojson papers = ojson::array();
    for (const WorkingPaper* wp : wps) {
        ojson wj;
        wj["ref"] = render(wp->ref);
        wj["title"] = wp->title;
        wj["sub_section"] = render(wp->sub_section);
        wj["next_statement_index"] = wp->next_statement_index;
        ojson evidence = ojson::array();
        for (const auto& e : wp->evidence)
            evidence.push_back(evidence_to_json(e));
        wj["evidence"] = std::move(evidence);

        std::vector<const ControlledStatement*> stmts;
        for (const auto& s : wp->statements)
            stmts.push_back(&s);
        std::sort(stmts.begin(), stmts.end(),
                  [](const ControlledStatement* a, const ControlledStatement* b) {
                      return a->ref < b->ref;
                  });
        ojson statements = ojson::array();
        for (const ControlledStatement* s : stmts)
            statements.push_back(statement_to_json(*s));
        wj["statements"] = std::move(statements);
        papers.push_back(std::move(wj));
    }
    j["working_papers"] = std::move(papers);

    return j.dump(2) + "\n";
}

Project parse_project(const std::string& text, const std::string& origin) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        fail(Errc::parse_failure, origin + ": line " +
                                      std::to_string(line_of_byte(text, e.byte)) + ": " +
                                      e.what());
    }
    if (!j.is_object())
        bad_field(origin, "$", "expected a JSON object");

    std::string format = require_string(j, "format", origin, "$");
    if (format != kFormat)
        bad_field(origin, "$.format", "unsupported format '" + format + "'");

    Project p;
    p.name = require_string(j, "name", origin, "$");
    p.anchor_root = require_string(j, "anchor_root", origin, "$");
    if (p.anchor_root.empty() || p.anchor_root[0] != '/')
        bad_field(origin, "$.anchor_root", "expected an absolute path");

    std::set<std::string> type_names;
    const ojson& types = require_array(j, "statement_types", origin, "$");
    for (std::size_t i = 0; i < types.size(); ++i) {
        std::string where = "$.statement_types[" + std::to_string(i) + "]";
        const ojson& tj = types[i];
        if (!tj.is_object())
            bad_field(origin, where, "expected an object");
        StatementTypeDef t;
        t.name = require_string(tj, "name", origin, where);
        if (t.name.empty())
            bad_field(origin, where + ".name", "type name must be nonempty");
        const ojson& succ = require_array(tj, "allowed_successors", origin, where);
        for (const auto& s : succ) {
            if (!s.is_string())
                bad_field(origin, where + ".allowed_successors", "expected strings");
            t.allowed_successors.push_back(s.get<std::string>());
        }
        t.requires_parent = require_bool(tj, "requires_parent", origin, where);
        t.is_terminal = require_bool(tj, "is_terminal", origin, where);
        if (t.is_terminal && !t.allowed_successors.empty())
            bad_field(origin, where, "terminal type '" + t.name + "' must have no successors");
        if (!type_names.insert(t.name).second)
            fail(Errc::ref_collision, origin + ": duplicate statement type '" + t.name + "'");
        p.statement_types.push_back(std::move(t));
    }

    std::set<std::string> module_refs;
    std::set<std::string> four_char_refs; // sub-sections and working papers
    const ojson& modules = require_array(j, "modules", origin, "$");
    for (std::size_t i = 0; i < modules.size(); ++i) {
        std::string where = "$.modules[" + std::to_string(i) + "]";
        const ojson& mj = modules[i];
        if (!mj.is_object())
            bad_field(origin, where, "expected an object");
        Module m;
        m.ref = parse_ref_field(parse_module_ref, require_string(mj, "ref", origin, where),
                                origin, where + ".ref");
        m.title = require_string(mj, "title", origin, where);
        if (!module_refs.insert(render(m.ref)).second)
            fail(Errc::ref_collision, origin + ": duplicate module " + render(m.ref));
        const ojson& subs = require_array(mj, "sub_sections", origin, where);
        for (std::size_t k = 0; k < subs.size(); ++k) {
            std::string swhere = where + ".sub_sections[" + std::to_string(k) + "]";
            const ojson& sj = subs[k];
            if (!sj.is_object())
                bad_field(origin, swhere, "expected an object");
            SubSection s;
            s.ref = parse_ref_field(parse_wp_ref, require_string(sj, "ref", origin, swhere),
                                    origin, swhere + ".ref");
            s.title = require_string(sj, "title", origin, swhere);
            if (!four_char_refs.insert(render(s.ref)).second)
                fail(Errc::ref_collision,
                     origin + ": duplicate ref " + render(s.ref));
            m.sub_sections.push_back(std::move(s));
        }
        p.modules.push_back(std::move(m));
    }

    std::set<std::string> evidence_refs;
    std::set<std::string> stmt_refs;
    const ojson& papers = require_array(j, "working_papers", origin, "$");
    for (std::size_t i = 0; i < papers.size(); ++i) {
        std::string where = "$.working_papers[" + std::to_string(i) + "]";
        const ojson& wj = papers[i];
        if (!wj.is_object())
            bad_field(origin, where, "expected an object");
        WorkingPaper wp;
        wp.ref = parse_ref_field(parse_wp_ref, require_string(wj, "ref", origin, where),
                                 origin, where + ".ref");
        if (!four_char_refs.insert(render(wp.ref)).second)
            fail(Errc::ref_collision, origin + ": duplicate ref " + render(wp.ref));
        wp.title = require_string(wj, "title", origin, where);
        wp.sub_section =
            parse_ref_field(parse_wp_ref, require_string(wj, "sub_section", origin, where),
                            origin, where + ".sub_section");
        std::int64_t next = require_int(wj, "next_statement_index", origin, where);
        if (next < 0 || next > 100)
            bad_field(origin, where + ".next_statement_index", "expected 0..100");
        wp.next_statement_index = static_cast<int>(next);

        const ojson& evidence = require_array(wj, "evidence", origin, where);
        for (std::size_t k = 0; k < evidence.size(); ++k) {
            std::string ewhere = where + ".evidence[" + std::to_string(k) + "]";
            const ojson& ej = evidence[k];
            if (!ej.is_object())
                bad_field(origin, ewhere, "expected an object");
            EvidenceItem item;
            item.ref = parse_ref_field(parse_evidence_ref,
                                       require_string(ej, "ref", origin, ewhere), origin,
                                       ewhere + ".ref");
            if (item.ref.wp != wp.ref)
                bad_field(origin, ewhere + ".ref",
                          "evidence ref " + render(item.ref) + " does not belong to " +
                              render(wp.ref));
            if (!evidence_refs.insert(render(item.ref)).second)
                fail(Errc::ref_collision,
                     origin + ": duplicate evidence ref " + render(item.ref));
            item.description = require_string(ej, "description", origin, ewhere);
            item.original_filename = require_string(ej, "original_filename", origin, ewhere);
            item.vault_path = require_string(ej, "vault_path", origin, ewhere);
            if (item.vault_path.empty() || item.vault_path[0] == '/')
                bad_field(origin, ewhere + ".vault_path", "expected a relative path");
            item.sha256 = require_string(ej, "sha256", origin, ewhere);
            if (!is_hex64(item.sha256))
                bad_field(origin, ewhere + ".sha256", "expected 64 lowercase hex chars");
            std::int64_t size = require_int(ej, "size_bytes", origin, ewhere);
            if (size < 0)
                bad_field(origin, ewhere + ".size_bytes", "expected >= 0");
            item.size_bytes = static_cast<std::uint64_t>(size);
            item.registered_at = require_string(ej, "registered_at", origin, ewhere);
            if (!is_iso_utc(item.registered_at))
                bad_field(origin, ewhere + ".registered_at",
                          "expected YYYY-MM-DDTHH:MM:SSZ");
            wp.evidence.push_back(std::move(item));
        }

        const ojson& statements = require_array(wj, "statements", origin, where);
        int max_index = -1;
        for (std::size_t k = 0; k < statements.size(); ++k) {
            std::string swhere = where + ".statements[" + std::to_string(k) + "]";
            const ojson& sj = statements[k];
            if (!sj.is_object())
                bad_field(origin, swhere, "expected an object");
            ControlledStatement s;
            s.ref = parse_ref_field(parse_stmt_ref, require_string(sj, "ref", origin, swhere),
                                    origin, swhere + ".ref");
            if (s.ref.wp != wp.ref)
                bad_field(origin, swhere + ".ref",
                          "statement ref " + render(s.ref) + " does not belong to " +
                              render(wp.ref));
            if (!stmt_refs.insert(render(s.ref)).second)
                fail(Errc::ref_collision,
                     origin + ": duplicate statement ref " + render(s.ref));
            s.type_name = require_string(sj, "type", origin, swhere);
            if (type_names.find(s.type_name) == type_names.end())
                bad_field(origin, swhere + ".type",
                          "unknown statement type '" + s.type_name + "'");
            s.heading = require_string(sj, "heading", origin, swhere);
            s.body = require_string(sj, "body", origin, swhere);
            s.author = require_string(sj, "author", origin, swhere);
            s.created_at = require_string(sj, "created_at", origin, swhere);
            if (!is_iso_local(s.created_at))
                bad_field(origin, swhere + ".created_at", "expected YYYY-MM-DDTHH:MM:SS");
            s.status = [&] {
                std::string status = require_string(sj, "status", origin, swhere);
                try {
                    return parse_status(status);
                } catch (const Error& e) {
                    bad_field(origin, swhere + ".status", e.what());
                }
            }();
            for (const char* key : {"forward_links", "backward_links"}) {
                const ojson& links = require_array(sj, key, origin, swhere);
                auto& list = key[0] == 'f' ? s.forward_links : s.backward_links;
                for (const auto& lj : links) {
                    if (!lj.is_string())
                        bad_field(origin, swhere + "." + key, "expected strings");
                    StmtRef target =
                        parse_ref_field(parse_stmt_ref, lj.get<std::string>(), origin,
                                        swhere + "." + key);
                    if (std::find(list.begin(), list.end(), target) != list.end())
                        bad_field(origin, swhere + "." + key,
                                  "duplicate link to " + render(target));
                    list.push_back(target);
                }
            }
            max_index = std::max(max_index, s.ref.index);
            wp.statements.push_back(std::move(s));
        }
        if (wp.next_statement_index <= max_index)
            bad_field(origin, where + ".next_statement_index",
                      "must exceed every statement index in " + render(wp.ref));
        std::sort(wp.statements.begin(), wp.statements.end(),
                  [](const ControlledStatement& a, const ControlledStatement& b) {
                      return a.ref < b.ref;
                  });
        p.working_papers.push_back(std::move(wp));
    }

    std::sort(p.working_papers.begin(), p.working_papers.end(),
              [](const WorkingPaper& a, const WorkingPaper& b) { return a.ref < b.ref; });

    // Sub-section parents and link symmetry can only be checked once
    // everything is in place.
    for (const auto& wp : p.working_papers)
        if (!find_sub_section(p, wp.sub_section))
            bad_field(origin, "working paper " + render(wp.ref),
                      "unknown sub-section " + render(wp.sub_section));
    for (const auto& wp : p.working_papers) {
        for (const auto& s : wp.statements) {
            for (const auto& fwd : s.forward_links) {
                const ControlledStatement* target = find_statement(p, fwd);
                if (target && std::find(target->backward_links.begin(),
                                        target->backward_links.end(),
                                        s.ref) == target->backward_links.end())
                    bad_field(origin, render(s.ref),
                              "forward link to " + render(fwd) + " has no backward pair");
            }
            for (const auto& back : s.backward_links) {
                const ControlledStatement* source = find_statement(p, back);
                if (source && std::find(source->forward_links.begin(),
                                        source->forward_links.end(),
                                        s.ref) == source->forward_links.end())
                    bad_field(origin, render(s.ref),
                              "backward link to " + render(back) + " has no forward pair");
            }
        }
    }

    return p;
}

Project init_project(const fs::path& root, const std::string& name) {
    std::error_code ec;
    if (fs::exists(root, ec)) {
        if (!fs::is_directory(root, ec))
            fail(Errc::path_occupied, root.string() + " exists and is not a directory");
        if (fs::directory_iterator(root, ec) != fs::directory_iterator())
            fail(Errc::path_occupied, root.string() + " is not empty");
    } else {
        if (!fs::create_directories(root, ec))
            fail(Errc::io_failure, "cannot create " + root.string() +
                                       (ec ? ": " + ec.message() : ""));
    }
    fs::path canonical = fs::canonical(root, ec);
    if (ec)
        fail(Errc::io_failure, "cannot resolve " + root.string() + ": " + ec.message());

    Project p;
    p.name = name;
    p.anchor_root = canonical.string();
    p.statement_types = default_statement_types();

    fs::create_directory(root / "evidence", ec);
    if (ec)
        fail(Errc::io_failure, "cannot create evidence/: " + ec.message());
    fs::create_directory(root / "out", ec);
    if (ec)
        fail(Errc::io_failure, "cannot create out/: " + ec.message());
    save_project(p, root);
    return p;
}

Project load_project(const fs::path& root) {
    fs::path file = root / kProjectFile;
    if (!fs::exists(file))
        fail(Errc::io_failure, "no project file at " + file.string());
    return parse_project(read_file(file), file.string());
}

void save_project(const Project& p, const fs::path& root) {
    write_file(root / kProjectFile, serialize_project(p));
}

ProjectLock::ProjectLock(const fs::path& root) : lock_path_(root / ".lock") {
    int fd = ::open(lock_path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        if (errno == EEXIST)
            fail(Errc::locked, "project is locked (" + lock_path_.string() +
                                   " exists; remove it if no other process is running)");
        fail(Errc::io_failure, "cannot create " + lock_path_.string());
    }
    std::string pid = std::to_string(::getpid()) + "\n";
    [[maybe_unused]] ssize_t written = ::write(fd, pid.data(), pid.size());
    ::close(fd);
}

ProjectLock::~ProjectLock() {
    std::error_code ec;
    fs::remove(lock_path_, ec);
}

} // namespace ewp
