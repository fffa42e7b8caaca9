#pragma once
#include <cstdint>
#include <random>

namespace fiscomp {

// splitmix64 step; used only to derive well-separated per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seed for stream `index` under `master`. Streams are independent of
// execution order, so draws can be distributed over threads without changing
// any result.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64(s);
    s = master ^ (0x6a09e667f3bcc909ULL + index * 0x9e3779b97f4a7c15ULL);
    return a ^ splitmix64(s);
}

// One reproducible random stream: mt19937_64 plus an explicit 53-bit uniform
// conversion, both fully specified, so sequences are bit-identical across
// platforms and standard libraries.
class DrawRng {
public:
    explicit DrawRng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0,1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + unit() * (hi - lo); }

    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace fiscomp
