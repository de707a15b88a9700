#include "ewp/refs.hpp"

#include <cctype>
#include <charconv>

#include "ewp/error.hpp"

namespace ewp {
namespace {

constexpr std::string_view kStmtSeparator = "!CtrlStat";

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

[[noreturn]] void bad_ref(std::string_view text, const char* expected) {
    fail(Errc::malformed_ref,
         "'" + std::string(text) + "' is not a valid " + expected);
}

// Positive decimal with no leading zero, at most 9 digits.
bool parse_layer(std::string_view text, int& out) {
    if (text.empty() || text.size() > 9 || text[0] == '0')
        return false;
    int value = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end)
        return false;
    out = value;
    return true;
}

} // namespace

std::string render(ModuleRef ref) { return std::string(1, ref.letter); }

std::string render(const WpRef& ref) {
    std::string out(1, ref.letter);
    out += static_cast<char>('0' + ref.number / 100);
    out += static_cast<char>('0' + ref.number / 10 % 10);
    out += static_cast<char>('0' + ref.number % 10);
    return out;
}

std::string render(const StmtRef& ref) {
    std::string out = render(ref.wp);
    out += kStmtSeparator;
    out += static_cast<char>('0' + ref.index / 10);
    out += static_cast<char>('0' + ref.index % 10);
    return out;
}

std::string render(const EvidenceRef& ref) {
    std::string out = render(ref.wp);
    out += '/';
    out += std::to_string(ref.layer1);
    if (ref.layer2 != 0) {
        out += '/';
        out += std::to_string(ref.layer2);
    }
    return out;
}

ModuleRef parse_module_ref(std::string_view text) {
    if (text.size() != 1 || !is_upper(text[0]))
        bad_ref(text, "module ref (single uppercase letter)");
    return ModuleRef{text[0]};
}

WpRef parse_wp_ref(std::string_view text) {
    if (text.size() != 4 || !is_upper(text[0]) || !is_digit(text[1]) ||
        !is_digit(text[2]) || !is_digit(text[3]))
        bad_ref(text, "working-paper ref (letter plus 3 digits)");
    int number = (text[1] - '0') * 100 + (text[2] - '0') * 10 + (text[3] - '0');
    return WpRef{text[0], number};
}

StmtRef parse_stmt_ref(std::string_view text) {
    // <WpRef>!CtrlStat<NN>, case-sensitive
    if (text.size() != 4 + kStmtSeparator.size() + 2 ||
        text.substr(4, kStmtSeparator.size()) != kStmtSeparator)
        bad_ref(text, "statement ref (<WpRef>!CtrlStat<NN>)");
    std::string_view digits = text.substr(4 + kStmtSeparator.size());
    if (!is_digit(digits[0]) || !is_digit(digits[1]))
        bad_ref(text, "statement ref (<WpRef>!CtrlStat<NN>)");
    StmtRef ref;
    try {
        ref.wp = parse_wp_ref(text.substr(0, 4));
    } catch (const Error&) {
        bad_ref(text, "statement ref (<WpRef>!CtrlStat<NN>)");
    }
    ref.index = (digits[0] - '0') * 10 + (digits[1] - '0');
    return ref;
}

EvidenceRef parse_evidence_ref(std::string_view text) {
    auto first_slash = text.find('/');
    if (first_slash == std::string_view::npos)
        bad_ref(text, "evidence ref (<WpRef>/<layer1>[/<layer2>])");
    EvidenceRef ref;
    try {
        ref.wp = parse_wp_ref(text.substr(0, first_slash));
    } catch (const Error&) {
        bad_ref(text, "evidence ref (<WpRef>/<layer1>[/<layer2>])");
    }
    auto second_slash = text.find('/', first_slash + 1);
    std::size_t layer1_end = second_slash == std::string_view::npos ? text.size() : second_slash;
    std::string_view layer1 = text.substr(first_slash + 1, layer1_end - first_slash - 1);
    if (layer1 == "0")
        fail(Errc::zero_layer1, "'" + std::string(text) + "': layer1 must be >= 1");
    if (!parse_layer(layer1, ref.layer1))
        bad_ref(text, "evidence ref (<WpRef>/<layer1>[/<layer2>])");
    if (second_slash != std::string_view::npos) {
        if (!parse_layer(text.substr(second_slash + 1), ref.layer2))
            bad_ref(text, "evidence ref (<WpRef>/<layer1>[/<layer2>])");
    }
    return ref;
}

} // namespace ewp
