#pragma once

#include <filesystem>
#include <string>

#include "ewp/project.hpp"

namespace ewp {

// Creates <root>/project.json, evidence/ and out/, records the canonical
// absolute root as the anchor, and installs the default type registry.
// The target must be empty or nonexistent.
Project init_project(const std::filesystem::path& root, const std::string& name);

Project load_project(const std::filesystem::path& root);
void save_project(const Project& p, const std::filesystem::path& root);

// Deterministic serialized form: stable key order, 2-space indent, trailing
// newline. Working papers sorted by ref, statements by index.
std::string serialize_project(const Project& p);
Project parse_project(const std::string& text, const std::string& origin);

// Single-writer guard: <root>/.lock, created exclusively, removed on release.
class ProjectLock {
public:
    explicit ProjectLock(const std::filesystem::path& root);
    ~ProjectLock();
    ProjectLock(const ProjectLock&) = delete;
    ProjectLock& operator=(const ProjectLock&) = delete;

private:
    std::filesystem::path lock_path_;
};

} // namespace ewp
