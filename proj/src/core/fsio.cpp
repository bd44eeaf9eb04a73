#include "shade/core/fsio.hpp"

#include <fstream>
#include <sstream>

#include "shade/core/errors.hpp"

namespace shade {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failed for " + path.string());
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + path.string());
}

bool is_valid_utf8(const std::string& bytes) {
    const auto* p = reinterpret_cast<const unsigned char*>(bytes.data());
    std::size_t n = bytes.size();
    std::size_t i = 0;
    while (i < n) {
        unsigned char c = p[i];
        std::size_t need;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xe0) == 0xc0) {
            need = 1;
            if (c < 0xc2) return false; // overlong
        } else if ((c & 0xf0) == 0xe0) {
            need = 2;
        } else if ((c & 0xf8) == 0xf0) {
            need = 3;
            if (c > 0xf4) return false; // beyond U+10FFFF
        } else {
            return false;
        }
        for (std::size_t k = 1; k <= need; ++k) {
            if (i + k >= n || (p[i + k] & 0xc0) != 0x80) return false;
        }
        // Reject surrogate range encoded as UTF-8.
        if (need == 2 && c == 0xed && p[i + 1] >= 0xa0) return false;
        if (need == 2 && c == 0xe0 && p[i + 1] < 0xa0) return false; // overlong
        if (need == 3 && c == 0xf0 && p[i + 1] < 0x90) return false; // overlong
        if (need == 3 && c == 0xf4 && p[i + 1] >= 0x90) return false;
        i += need + 1;
    }
    return true;
}

} // namespace shade
