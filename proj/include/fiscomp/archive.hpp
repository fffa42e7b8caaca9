#pragma once
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace fiscomp {

struct ArchiveEntry {
    std::string name;  // forward-slash relative path inside the archive
    std::string data;
};

// Writes a ZIP archive with stored (uncompressed) entries, fixed 1980-01-01
// timestamps and entries sorted by name, so identical inputs produce
// byte-identical archives. Throws IoError on write failure and
// InvalidParameterError on duplicate or empty entry names.
void write_zip(const std::filesystem::path& path, std::vector<ArchiveEntry> entries);

// CRC-32 (IEEE, reflected) of a byte string; the checksum ZIP requires.
std::uint32_t crc32(const std::string& data);

} // namespace fiscomp
