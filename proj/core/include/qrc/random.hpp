#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace qrc {

// Portable random stream. std::mt19937_64 output is fixed by the standard;
// the standard distributions are not, so the conversion to doubles is done
// here with the usual 53-bit mantissa construction.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform on [lo, hi].
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer on [0, n). Uses rejection to avoid modulo bias.
    std::uint64_t below(std::uint64_t n);

  private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Stream derivation: seed = mix(mix(master ^ fnv1a(role)) + index).
// The same (master, index, role) triple always yields the same seed on any
// platform, so realization r draws identical couplings and task series at
// every sweep point.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index, std::string_view role) noexcept;

} // namespace qrc
