#include "xsdep/rng.hpp"

#include <cmath>
#include <numbers>

namespace xsdep {

namespace {

// Philox4x32 round constants (Salmon et al., SC'11).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& ctr, std::uint32_t k0,
                         std::uint32_t k1) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::uint32_t key0,
                                           std::uint32_t key1) {
    for (int round = 0; round < 10; ++round) {
        philox_round(counter, key0, key1);
        key0 += kPhiloxW0;
        key1 += kPhiloxW1;
    }
    return counter;
}

RngStream::RngStream(std::uint64_t master_seed, std::uint32_t replication,
                     StreamPurpose purpose)
    : master_seed_(master_seed), replication_(replication), purpose_(purpose) {
    const std::uint64_t key = splitmix64(master_seed);
    key0_ = static_cast<std::uint32_t>(key);
    key1_ = static_cast<std::uint32_t>(key >> 32);
    replication_32_ = replication;
    purpose_32_ = static_cast<std::uint32_t>(purpose);
}

std::array<std::uint32_t, 4> RngStream::block(std::uint64_t index) const {
    std::array<std::uint32_t, 4> ctr = {
        static_cast<std::uint32_t>(index),
        static_cast<std::uint32_t>(index >> 32),
        replication_32_,
        purpose_32_,
    };
    return philox4x32_10(ctr, key0_, key1_);
}

std::uint64_t RngStream::next_u64() {
    if (buffered_ == 0) {
        const auto out = block(block_index_++);
        buffer_[0] = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
        buffer_[1] = (static_cast<std::uint64_t>(out[2]) << 32) | out[3];
        buffered_ = 2;
    }
    return buffer_[--buffered_];
}

double RngStream::uniform() {
    // 53 random bits, offset by half an ulp so the result is in (0, 1).
    const std::uint64_t bits = next_u64() >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform();
}

double RngStream::normal() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * std::numbers::pi * u2);
}

double RngStream::normal(double mu, double sigma) {
    return mu + sigma * normal();
}

double RngStream::chi_square(int k) {
    double sum = 0.0;
    for (int i = 0; i < k; ++i) {
        const double z = normal();
        sum += z * z;
    }
    return sum;
}

double RngStream::t6_normalized() {
    // t_6 = Z / sqrt(chi^2_6 / 6); Var(t_6) = 6/4.
    const double z = normal();
    const double denom = std::sqrt(chi_square(6) / 6.0);
    return z / denom / std::sqrt(6.0 / 4.0);
}

double RngStream::chi5_normalized() {
    return (chi_square(5) - 5.0) / std::sqrt(10.0);
}

double sample_one(const DistSpec& dist, RngStream& stream) {
    switch (dist.kind) {
        case DistSpec::Kind::std_normal:
            return stream.normal();
        case DistSpec::Kind::t6_norm:
            return stream.t6_normalized();
        case DistSpec::Kind::chi5_norm:
            return stream.chi5_normalized();
        case DistSpec::Kind::chi2:
            return stream.chi_square(dist.k);
        case DistSpec::Kind::chi6_over6:
            return stream.chi_square(6) / 6.0;
        case DistSpec::Kind::n_mu_sigma:
            return stream.normal(dist.mu, std::sqrt(dist.sigma2));
    }
    return 0.0;
}

std::vector<double> sample(const DistSpec& dist, RngStream& stream, int count) {
    std::vector<double> out(static_cast<std::size_t>(count));
    for (auto& v : out) v = sample_one(dist, stream);
    return out;
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt) {
    return splitmix64(master_seed ^ splitmix64(salt));
}

}  // namespace xsdep
