#pragma once

// Counter-based random numbers (Philox4x32-10). Every draw is a pure function of
// (seed, stream, index), so simulations give identical results however the work
// is scheduled across threads.

#include <array>
#include <cstdint>
#include <string_view>

namespace qlr {

class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Block generate(Block counter, Key key) noexcept;
};

/// 64-bit FNV-1a over the bytes of `text`, chained from `basis`.
std::uint64_t fnv1a(std::string_view text, std::uint64_t basis = 0xcbf29ce484222325ULL) noexcept;

/// Stream identifier for a named purpose within a context, e.g. ("C", "b").
std::uint64_t stream_id(std::string_view context, std::string_view purpose) noexcept;

class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)}, seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    Philox4x32::Block block(std::uint64_t stream, std::uint64_t index) const noexcept;

    /// Two uniforms in [0, 1) with 53-bit resolution for (stream, index).
    std::array<double, 2> uniforms(std::uint64_t stream, std::uint64_t index) const noexcept;

private:
    Philox4x32::Key key_;
    std::uint64_t seed_;
};

/// Sequential view over one stream of a CounterRng.
class RngStream {
public:
    RngStream(const CounterRng& rng, std::uint64_t stream) noexcept : rng_(rng), stream_(stream) {}

    double uniform() noexcept;
    /// Standard normal via Box-Muller; platform independent unlike std::normal_distribution.
    double normal() noexcept;

private:
    CounterRng rng_;
    std::uint64_t stream_;
    std::uint64_t index_ = 0;
    std::array<double, 2> buffer_{};
    int buffered_ = 0;
};

}  // namespace qlr
