#pragma once

#include <stdexcept>
#include <string>

namespace ewp {

// Every failure the library can raise, named after the condition it reports.
enum class Errc {
    malformed_ref,
    zero_layer1,
    path_occupied,
    io_failure,
    parse_failure,
    ref_collision,
    locked,
    duplicate_evidence_ref,
    source_missing,
    unanchored_project,
    vault_incomplete,
    unknown_type,
    unknown_wp,
    index_exhausted,
    incompatible_types,
    cycle_detected,
    duplicate_link,
    self_link,
    unknown_ref,
    unknown_module,
    index_out_of_range,
    empty_heading,
    integrity_errors_present,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace ewp
