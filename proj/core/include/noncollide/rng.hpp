#pragma once

#include <array>
#include <cstdint>

namespace noncollide {

// Philox4x32-10 counter-based generator.  The key is the seed, the upper
// half of the counter is the stream id, and the lower half is the block
// position, so any (seed, stream_id) pair is an independent sequence and
// jumping ahead is O(1).
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t position() const noexcept { return block_; }

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // uniform on the open interval (0, 1), 53 random bits
    double uniform();
    double gaussian();
    // Gamma(shape, 1), shape > 0
    double gamma(double shape);
    // chi with k > 0 degrees of freedom (non-integer allowed)
    double chi(double k);
    double chi_squared(double k);

    // Skip n 128-bit blocks; drops any buffered output.
    void discard_blocks(std::uint64_t n);

    // Child stream keyed off this one.  Used to hand independent streams to
    // fixed-size work blocks so that results do not depend on thread count.
    RngStream split(std::uint64_t index) const;

    static std::array<std::uint32_t, 4> philox(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key);

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buf_{};
    int used_ = 4;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

double gaussian(RngStream& stream);

}  // namespace noncollide
