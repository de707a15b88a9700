#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "ewp/project.hpp"

namespace fixtures {

inline constexpr char kDemoNow[] = "2012-07-17T09:00:00Z";

// Sets EWP_NOW for the lifetime of the object, restoring the old value after.
class ScopedNow {
public:
    explicit ScopedNow(const std::string& iso_utc);
    ~ScopedNow();
    ScopedNow(const ScopedNow&) = delete;
    ScopedNow& operator=(const ScopedNow&) = delete;

private:
    std::string previous_;
    bool had_previous_ = false;
};

// Fresh temp directory, recursively removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

// The 8 evidence descriptions of the demonstration index, layer order.
const std::vector<std::string>& evidence_descriptions();

// Writes listing1.txt..listing8.txt into dir, returns the paths in order.
std::vector<std::filesystem::path> write_evidence_sources(const std::filesystem::path& dir);

// Builds the demonstration project at root: modules A/D/F/G with their
// sub-sections and working papers, the 8 F051 evidence items, the branched
// chain of 8 statements in module F and the three report statements in D/G.
// Wrap in ScopedNow for reproducible timestamps.
ewp::Project build_demo_project(const std::filesystem::path& root,
                                const std::filesystem::path& sources_dir);

// Expected flatten order of module F, rendered refs.
const std::vector<std::string>& module_f_order();

// Random project built through the public operations plus synthetic evidence
// metadata; exercises persistence round-trips.
ewp::Project random_project(std::mt19937& rng);

// Random typed DAG spread over three working papers of module 'M'; all
// statements Cleared. Links are made through link_statements, so the result
// is always a valid DAG under the default registry.
ewp::Project random_dag_project(std::mt19937& rng, int max_statements);

} // namespace fixtures
