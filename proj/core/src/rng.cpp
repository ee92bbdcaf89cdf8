#include "noncollide/rng.hpp"

#include <cmath>
#include <numbers>

namespace noncollide {

namespace {

constexpr std::uint32_t kM0 = 0xD2511F53u;
constexpr std::uint32_t kM1 = 0xCD9E8D57u;
constexpr std::uint32_t kW0 = 0x9E3779B9u;
constexpr std::uint32_t kW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    std::uint64_t p = std::uint64_t(a) * b;
    hi = std::uint32_t(p >> 32);
    lo = std::uint32_t(p);
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> RngStream::philox(std::array<std::uint32_t, 4> c,
                                               std::array<std::uint32_t, 2> k) {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kM0, c[0], hi0, lo0);
        mulhilo(kM1, c[2], hi1, lo1);
        c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
        k[0] += kW0;
        k[1] += kW1;
    }
    return c;
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {}

void RngStream::refill() {
    std::array<std::uint32_t, 4> ctr{std::uint32_t(block_), std::uint32_t(block_ >> 32),
                                     std::uint32_t(stream_id_), std::uint32_t(stream_id_ >> 32)};
    buf_ = philox(ctr, {std::uint32_t(seed_), std::uint32_t(seed_ >> 32)});
    ++block_;
    used_ = 0;
}

std::uint32_t RngStream::next_u32() {
    if (used_ == 4) refill();
    return buf_[used_++];
}

std::uint64_t RngStream::next_u64() {
    std::uint64_t hi = next_u32();
    return (hi << 32) | next_u32();
}

double RngStream::uniform() {
    // (k + 0.5) / 2^53 never hits 0 or 1
    std::uint64_t k = next_u64() >> 11;
    return (double(k) + 0.5) * 0x1.0p-53;
}

double RngStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

double RngStream::gamma(double shape) {
    if (shape < 1.0) {
        // boost to shape+1 and correct with U^(1/shape)
        double g = gamma(shape + 1.0);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    // Marsaglia-Tsang
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double z, v;
        do {
            z = gaussian();
            v = 1.0 + c * z;
        } while (v <= 0.0);
        v = v * v * v;
        double u = uniform();
        if (u < 1.0 - 0.0331 * z * z * z * z) return d * v;
        if (std::log(u) < 0.5 * z * z + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double RngStream::chi_squared(double k) { return 2.0 * gamma(0.5 * k); }

double RngStream::chi(double k) { return std::sqrt(chi_squared(k)); }

void RngStream::discard_blocks(std::uint64_t n) {
    block_ += n;
    used_ = 4;
    has_spare_ = false;
}

RngStream RngStream::split(std::uint64_t index) const {
    return RngStream(seed_, splitmix64(stream_id_ ^ splitmix64(index + 1)));
}

double gaussian(RngStream& stream) { return stream.gaussian(); }

}  // namespace noncollide
