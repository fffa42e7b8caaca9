#include "fiscomp/archive.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <unordered_set>

#include "fiscomp/errors.hpp"

namespace fiscomp {

namespace {

std::array<std::uint32_t, 256> crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xEDB88320u ^ (c >> 1) : c >> 1;
        table[i] = c;
    }
    return table;
}

void put16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put32(std::string& out, std::uint32_t v) {
    put16(out, static_cast<std::uint16_t>(v & 0xffff));
    put16(out, static_cast<std::uint16_t>((v >> 16) & 0xffff));
}

// DOS date for 1980-01-01, time 00:00:00.
constexpr std::uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;
constexpr std::uint16_t kDosTime = 0;

} // namespace

std::uint32_t crc32(const std::string& data) {
    static const auto table = crc_table();
    std::uint32_t c = 0xFFFFFFFFu;
    for (unsigned char byte : data) c = table[(c ^ byte) & 0xff] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

void write_zip(const std::filesystem::path& path, std::vector<ArchiveEntry> entries) {
    std::unordered_set<std::string> seen;
    for (const auto& e : entries) {
        if (e.name.empty())
            throw InvalidParameterError("archive: entry with empty name");
        if (!seen.insert(e.name).second)
            throw InvalidParameterError("archive: duplicate entry name " + e.name);
    }
    std::sort(entries.begin(), entries.end(),
              [](const ArchiveEntry& a, const ArchiveEntry& b) { return a.name < b.name; });

    std::string out;
    struct Central {
        std::string name;
        std::uint32_t crc;
        std::uint32_t size;
        std::uint32_t offset;
    };
    std::vector<Central> central;
    central.reserve(entries.size());

    for (const auto& e : entries) {
        const auto offset = static_cast<std::uint32_t>(out.size());
        const auto crc = crc32(e.data);
        const auto size = static_cast<std::uint32_t>(e.data.size());
        put32(out, 0x04034b50u);  // local file header
        put16(out, 20);           // version needed
        put16(out, 0);            // flags
        put16(out, 0);            // method: stored
        put16(out, kDosTime);
        put16(out, kDosDate);
        put32(out, crc);
        put32(out, size);  // compressed
        put32(out, size);  // uncompressed
        put16(out, static_cast<std::uint16_t>(e.name.size()));
        put16(out, 0);  // extra length
        out += e.name;
        out += e.data;
        central.push_back({e.name, crc, size, offset});
    }

    const auto cd_offset = static_cast<std::uint32_t>(out.size());
    for (const auto& c : central) {
        put32(out, 0x02014b50u);  // central directory header
        put16(out, 20);           // version made by
        put16(out, 20);           // version needed
        put16(out, 0);
        put16(out, 0);
        put16(out, kDosTime);
        put16(out, kDosDate);
        put32(out, c.crc);
        put32(out, c.size);
        put32(out, c.size);
        put16(out, static_cast<std::uint16_t>(c.name.size()));
        put16(out, 0);  // extra
        put16(out, 0);  // comment
        put16(out, 0);  // disk number
        put16(out, 0);  // internal attributes
        put32(out, 0);  // external attributes
        put32(out, c.offset);
        out += c.name;
    }
    const auto cd_size = static_cast<std::uint32_t>(out.size()) - cd_offset;

    put32(out, 0x06054b50u);  // end of central directory
    put16(out, 0);
    put16(out, 0);
    put16(out, static_cast<std::uint16_t>(central.size()));
    put16(out, static_cast<std::uint16_t>(central.size()));
    put32(out, cd_size);
    put32(out, cd_offset);
    put16(out, 0);  // comment length

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("archive: cannot open " + path.string() + " for writing");
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) throw IoError("archive: failed writing " + path.string());
}

} // namespace fiscomp
