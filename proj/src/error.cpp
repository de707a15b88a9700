#include "ewp/error.hpp"

namespace ewp {

const char* errc_name(Errc c) {
    switch (c) {
    case Errc::malformed_ref: return "malformed-ref";
    case Errc::zero_layer1: return "zero-layer1";
    case Errc::path_occupied: return "path-occupied";
    case Errc::io_failure: return "io-failure";
    case Errc::parse_failure: return "parse-failure";
    case Errc::ref_collision: return "ref-collision";
    case Errc::locked: return "locked";
    case Errc::duplicate_evidence_ref: return "duplicate-evidence-ref";
    case Errc::source_missing: return "source-missing";
    case Errc::unanchored_project: return "unanchored-project";
    case Errc::vault_incomplete: return "vault-incomplete";
    case Errc::unknown_type: return "unknown-type";
    case Errc::unknown_wp: return "unknown-wp";
    case Errc::index_exhausted: return "index-exhausted";
    case Errc::incompatible_types: return "incompatible-types";
    case Errc::cycle_detected: return "cycle-detected";
    case Errc::duplicate_link: return "duplicate-link";
    case Errc::self_link: return "self-link";
    case Errc::unknown_ref: return "unknown-ref";
    case Errc::unknown_module: return "unknown-module";
    case Errc::index_out_of_range: return "index-out-of-range";
    case Errc::empty_heading: return "empty-heading";
    case Errc::integrity_errors_present: return "integrity-errors-present";
    }
    return "unknown-error";
}

} // namespace ewp
