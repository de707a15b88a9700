#include "ewp/clock.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <string_view>

#include "ewp/error.hpp"

namespace ewp {
namespace {

bool all_digits(std::string_view s) {
    for (char c : s)
        if (c < '0' || c > '9')
            return false;
    return true;
}

bool iso_shape(std::string_view t) {
    // YYYY-MM-DDTHH:MM:SS
    return t.size() == 19 && all_digits(t.substr(0, 4)) && t[4] == '-' &&
           all_digits(t.substr(5, 2)) && t[7] == '-' && all_digits(t.substr(8, 2)) &&
           t[10] == 'T' && all_digits(t.substr(11, 2)) && t[13] == ':' &&
           all_digits(t.substr(14, 2)) && t[16] == ':' && all_digits(t.substr(17, 2));
}

const char* fake_now() {
    const char* value = std::getenv("EWP_NOW");
    if (!value)
        return nullptr;
    if (!is_iso_utc(value))
        fail(Errc::io_failure,
             std::string("EWP_NOW must look like 2012-07-17T09:00:00Z, got '") + value + "'");
    return value;
}

std::string format_tm(const std::tm& tm, bool utc_suffix) {
    char buf[72];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02d%s",
                  tm.tm_year + 1900, tm.tm_mon + 1, tm.tm_mday, tm.tm_hour,
                  tm.tm_min, tm.tm_sec, utc_suffix ? "Z" : "");
    return buf;
}

const char* kMonths[] = {"January", "February", "March",     "April",   "May",      "June",
                         "July",    "August",   "September", "October", "November", "December"};

} // namespace

bool is_iso_utc(std::string_view text) {
    return text.size() == 20 && text.back() == 'Z' && iso_shape(text.substr(0, 19));
}

bool is_iso_local(std::string_view text) { return iso_shape(text); }

std::string now_utc() {
    if (const char* fake = fake_now())
        return fake;
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    return format_tm(tm, true);
}

std::string now_local() {
    if (const char* fake = fake_now())
        return std::string(fake).substr(0, 19);
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    localtime_r(&t, &tm);
    return format_tm(tm, false);
}

std::string human_datetime(const std::string& iso_local) {
    if (!is_iso_local(iso_local))
        fail(Errc::parse_failure, "bad local timestamp '" + iso_local + "'");
    int year = std::atoi(iso_local.substr(0, 4).c_str());
    int month = std::atoi(iso_local.substr(5, 2).c_str());
    int day = std::atoi(iso_local.substr(8, 2).c_str());
    int hour = std::atoi(iso_local.substr(11, 2).c_str());
    int minute = std::atoi(iso_local.substr(14, 2).c_str());
    if (month < 1 || month > 12)
        fail(Errc::parse_failure, "bad month in '" + iso_local + "'");
    const char* half = hour < 12 ? "AM" : "PM";
    int display_hour = hour % 12;
    if (display_hour == 0)
        display_hour = 12;
    char buf[48];
    std::snprintf(buf, sizeof buf, "%d %s %d %02d:%02d %s", day, kMonths[month - 1],
                  year, display_hour, minute, half);
    return buf;
}

} // namespace ewp
