#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace lastmile {

/// Seeded pseudo-random source used for every stochastic draw in the simulator.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The standard distributions are not portable across library
/// implementations, so bounded integers and unit reals are derived here:
///  - uniform_below(n): rejection sampling on the raw 64-bit output, discarding
///    values below (2^64 - n) mod n, then reducing mod n.
///  - uniform_unit(): top 53 bits of one raw output, scaled to [0, 1).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_below(std::uint64_t n);

    double uniform_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream seed from a base seed and a list of tags.
/// Each tag is folded in as h = mix64(h ^ mix64(tag + 0x9e3779b97f4a7c15)).
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

// Stream tags used by the scenario runner and the engine.
namespace stream {
inline constexpr std::uint64_t kReplication = 0x5245504c;  // "REPL"
inline constexpr std::uint64_t kDemand = 0x44454d44;       // "DEMD"
inline constexpr std::uint64_t kPlacement = 0x504c4143;    // "PLAC"
}  // namespace stream

}  // namespace lastmile
