#pragma once

#include <string>
#include <string_view>

namespace ewp {

// Current instant as "YYYY-MM-DDTHH:MM:SSZ". The EWP_NOW environment
// variable, when set to a string of that shape, overrides the system clock
// so that generated files are reproducible.
std::string now_utc();

// Same instant as "YYYY-MM-DDTHH:MM:SS" in local time (verbatim minus the
// trailing 'Z' when EWP_NOW is active).
std::string now_local();

// "2011-11-19T17:34:00" -> "19 November 2011 05:34 PM".
std::string human_datetime(const std::string& iso_local);

bool is_iso_utc(std::string_view text);
bool is_iso_local(std::string_view text);

} // namespace ewp
