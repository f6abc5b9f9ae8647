// Counter-based random number streams (Philox4x32-10).
//
// Every consumer of randomness opens its own stream keyed by
// (seed, purpose, temperature, particle) and draws from it sequentially.
// Streams never share state, so results do not depend on how work is
// scheduled across threads; reruns with the same seed are bitwise identical.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace bpnm {

// Stable purpose tags; part of the determinism contract, do not renumber.
enum class StreamPurpose : std::uint32_t {
    PriorInit = 1,
    Move = 2,
    Resample = 3,
    Swap = 4,
    Ancestral = 5,
    RiskDraw = 6,
    Generic = 7,
};

class RngStream {
  public:
    RngStream(std::uint64_t seed, StreamPurpose purpose,
              std::uint64_t temperature = 0, std::uint64_t particle = 0)
        : key_{static_cast<std::uint32_t>(seed),
               static_cast<std::uint32_t>(seed >> 32)},
          base_{0,
                static_cast<std::uint32_t>(purpose) ^
                    static_cast<std::uint32_t>(temperature << 8),
                static_cast<std::uint32_t>(particle),
                static_cast<std::uint32_t>((particle >> 32) ^
                                           (temperature >> 24))} {}

    std::uint64_t next_u64() {
        if (buffered_ < 2) refill();
        buffered_ -= 2;
        std::uint64_t hi = buffer_[buffered_ + 1];
        return (hi << 32) | buffer_[buffered_];
    }

    // Uniform on the open interval (0,1); never returns an endpoint.
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Standard normal via Box-Muller; the second value of each pair is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // Standard Cauchy (location 0, scale 1).
    double cauchy() {
        return std::tan(3.14159265358979323846264338328 * (uniform() - 0.5));
    }

    // Integer in {0, ..., n-1}; n must be positive.
    std::uint64_t below(std::uint64_t n) {
        // 64-bit multiply-shift; bias is < 2^-53 for the n used here.
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)) %
               n;
    }

  private:
    void refill() {
        std::array<std::uint32_t, 4> ctr = {
            static_cast<std::uint32_t>(block_),
            static_cast<std::uint32_t>(base_[1] ^ (block_ >> 32)), base_[2],
            base_[3]};
        std::array<std::uint32_t, 2> key = key_;
        for (int round = 0; round < 10; ++round) {
            std::uint64_t p0 = 0xD2511F53ull * ctr[0];
            std::uint64_t p1 = 0xCD9E8D57ull * ctr[2];
            std::array<std::uint32_t, 4> next = {
                static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
                static_cast<std::uint32_t>(p1),
                static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
                static_cast<std::uint32_t>(p0)};
            ctr = next;
            key[0] += 0x9E3779B9u;
            key[1] += 0xBB67AE85u;
        }
        buffer_ = ctr;
        buffered_ = 4;
        ++block_;
    }

    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> base_;
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_ = {0, 0, 0, 0};
    int buffered_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace bpnm
