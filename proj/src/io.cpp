#include "ewp/io.hpp"

#include <fstream>
#include <sstream>

#include "ewp/error.hpp"

namespace ewp {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        fail(Errc::io_failure, "cannot open " + path.string() + " for reading");
    std::ostringstream out;
    out << in.rdbuf();
    if (in.bad())
        fail(Errc::io_failure, "read error on " + path.string());
    return std::move(out).str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        fail(Errc::io_failure, "cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out)
        fail(Errc::io_failure, "write error on " + path.string());
}

} // namespace ewp
