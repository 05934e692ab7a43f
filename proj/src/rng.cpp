#include "qlr/rng.hpp"

#include <cmath>
#include <numbers>

namespace qlr {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept {
    const std::uint64_t x = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>(x >> 11) * 0x1.0p-53;
}

}  // namespace

Philox4x32::Block Philox4x32::generate(Block ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

std::uint64_t fnv1a(std::string_view text, std::uint64_t basis) noexcept {
    std::uint64_t h = basis;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t stream_id(std::string_view context, std::string_view purpose) noexcept {
    std::uint64_t h = fnv1a(context);
    h = fnv1a(std::string_view("\x1f", 1), h);
    return fnv1a(purpose, h);
}

Philox4x32::Block CounterRng::block(std::uint64_t stream, std::uint64_t index) const noexcept {
    const Philox4x32::Block ctr{static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                                static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Philox4x32::generate(ctr, key_);
}

std::array<double, 2> CounterRng::uniforms(std::uint64_t stream, std::uint64_t index) const noexcept {
    const auto b = block(stream, index);
    return {to_unit(b[0], b[1]), to_unit(b[2], b[3])};
}

double RngStream::uniform() noexcept {
    if (buffered_ == 0) {
        buffer_ = rng_.uniforms(stream_, index_++);
        buffered_ = 2;
    }
    return buffer_[2 - buffered_--];
}

double RngStream::normal() noexcept {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace qlr
