#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace pdlab
{
//! Seed used whenever a run does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 0x5EEDDE1A0A11ULL;

/*!
 * Counter-based random stream (Philox 4x32, 10 rounds).
 *
 * Block i of stream s under seed k is a pure function of (k, s, i), so
 * streams with distinct ids never overlap and any stream can be
 * reconstructed from its identifiers. Satisfies UniformRandomBitGenerator.
 */
class RngStream
{
  public:
    using result_type = std::uint64_t;

    explicit RngStream(std::uint64_t seed = kDefaultSeed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_(stream_id)
    {
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        if (avail_ == 0)
        {
            refill();
            avail_ = 2;
        }
        return buf_[2 - avail_--];
    }

    //! Uniform on (0, 1), never exactly 0 or 1.
    double uniform()
    {
        return (double((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }
    std::uint64_t blocks_used() const { return counter_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
    std::array<std::uint64_t, 2> buf_{};
    int avail_ = 0;

    static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                        std::uint32_t& lo)
    {
        std::uint64_t p = std::uint64_t(a) * b;
        hi = std::uint32_t(p >> 32);
        lo = std::uint32_t(p);
    }

    void refill()
    {
        std::array<std::uint32_t, 4> c = {
            std::uint32_t(counter_), std::uint32_t(counter_ >> 32),
            std::uint32_t(stream_), std::uint32_t(stream_ >> 32)};
        std::uint32_t k0 = std::uint32_t(seed_);
        std::uint32_t k1 = std::uint32_t(seed_ >> 32);
        for (int round = 0; round < 10; ++round)
        {
            std::uint32_t hi0, lo0, hi1, lo1;
            mulhilo(0xD2511F53u, c[0], hi0, lo0);
            mulhilo(0xCD9E8D57u, c[2], hi1, lo1);
            c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
            k0 += 0x9E3779B9u;
            k1 += 0xBB67AE85u;
        }
        ++counter_;
        buf_[0] = (std::uint64_t(c[1]) << 32) | c[0];
        buf_[1] = (std::uint64_t(c[3]) << 32) | c[2];
    }
};
}  // namespace pdlab
