#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fiscomp/archive.hpp"
#include "fiscomp/bundle.hpp"
#include "fiscomp/config.hpp"

using namespace fiscomp;

namespace {

std::string slurp(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::uint32_t read32(const std::string& data, std::size_t off) {
    return static_cast<std::uint8_t>(data[off]) |
           (static_cast<std::uint8_t>(data[off + 1]) << 8) |
           (static_cast<std::uint8_t>(data[off + 2]) << 16) |
           (static_cast<std::uint32_t>(static_cast<std::uint8_t>(data[off + 3])) << 24);
}

std::uint16_t read16(const std::string& data, std::size_t off) {
    return static_cast<std::uint16_t>(static_cast<std::uint8_t>(data[off]) |
                                      (static_cast<std::uint8_t>(data[off + 1]) << 8));
}

} // namespace

TEST_CASE("crc32 check value") {
    // The standard CRC-32 check string.
    CHECK(crc32("123456789") == 0xCBF43926u);
    CHECK(crc32("") == 0x00000000u);
}

TEST_CASE("zip writer produces a well-formed deterministic archive") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fiscomp_zip_test";
    fs::create_directories(dir);

    std::vector<ArchiveEntry> entries = {
        {"b.txt", "second"},
        {"a.txt", "first"},
    };
    const fs::path p1 = dir / "one.zip";
    const fs::path p2 = dir / "two.zip";
    write_zip(p1, entries);
    write_zip(p2, entries);

    const std::string z1 = slurp(p1);
    const std::string z2 = slurp(p2);
    CHECK(z1 == z2);

    // Local header magic, then the end-of-central-directory record.
    REQUIRE(z1.size() > 22);
    CHECK(read32(z1, 0) == 0x04034b50u);
    const std::size_t eocd = z1.size() - 22;
    CHECK(read32(z1, eocd) == 0x06054b50u);
    CHECK(read16(z1, eocd + 10) == 2);  // two entries
    // Entries are sorted, so a.txt comes first.
    CHECK(z1.find("a.txt") < z1.find("b.txt"));

    CHECK_THROWS_AS(write_zip(dir / "dup.zip",
                              std::vector<ArchiveEntry>{{"x", "1"}, {"x", "2"}}),
                    InvalidParameterError);
    CHECK_THROWS_AS(write_zip(dir / "empty.zip", std::vector<ArchiveEntry>{{"", "1"}}),
                    InvalidParameterError);
    CHECK_THROWS_AS(write_zip(dir / "no/such/dir/x.zip", entries), IoError);
    fs::remove_all(dir);
}

TEST_CASE("replication bundle layout and determinism") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "fiscomp_bundle_test";
    fs::remove_all(dir);

    RunConfig cfg;
    cfg.mc.n_draws = 120;
    cfg.mc.stress_draws = 50;
    cfg.out_dir = (dir / "one").string();
    const BatteryOutcome first = run_full_battery(cfg);
    REQUIRE(first.report.entries.size() == 42);
    CHECK(first.report.all_passed());
    CHECK(first.report.entries.back().id == "OUT-01");

    // Required layout.
    for (const char* name :
         {"config.ini", "validation_report.txt", "baseline_table.csv", "mc_summary.csv",
          "path_current_spending.csv", "path_public_investment.csv", "path_poor_transfer.csv",
          "path_rich_transfer.csv", "path_mixed_policy.csv", "sweep_phi.csv", "sweep_mu_I.csv",
          "sweep_d0.csv", "sweep_m.csv", "mc_draws.csv", "MANIFEST.txt"}) {
        CAPTURE(name);
        CHECK(std::find(first.bundle.files.begin(), first.bundle.files.end(), name) !=
              first.bundle.files.end());
    }
    CHECK(first.bundle.files.size() >= 6);

    const std::string bytes_first = slurp(first.bundle.archive_path);
    const BatteryOutcome second = run_full_battery(cfg);  // same out_dir, same seed
    CHECK(bytes_first == slurp(second.bundle.archive_path));
    fs::remove_all(dir);
}
