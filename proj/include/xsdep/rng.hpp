#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace xsdep {

// Stream purposes. Each (replication, purpose) pair addresses a disjoint
// counter block of the same Philox generator, so streams never overlap.
enum class StreamPurpose : std::uint32_t {
    coefficients = 1,
    regressor_scale = 2,    // zeta_li^2 draws
    regressor_noise = 3,    // AR(1) innovations
    error_scale = 4,        // sigma_i^2 draws
    errors = 5,             // w_it / eta_it draws
    covariance_subset = 6,  // subset A selection
    covariance_rho = 7,     // off-diagonal correlation draws
    generic = 100,          // free-standing uses (oracle MC, fixtures)
};

/// One keyed block of the Philox4x32-10 bijection (Salmon et al., SC'11).
/// Exposed so tests can pin the generator to known-answer vectors.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::uint32_t key0,
                                           std::uint32_t key1);

/// Counter-based random stream (Philox4x32-10).
///
/// Identified by (master_seed, replication, purpose). The master seed keys
/// the generator; (replication, purpose) select a 2^64-wide counter block.
/// Identical identifiers replay the identical sequence regardless of what
/// other streams were used in between, which makes replication-level
/// parallelism bit-reproducible.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint32_t replication,
              StreamPurpose purpose);

    std::uint64_t next_u64();

    /// Uniform on the open interval (0, 1).
    double uniform();

    /// Uniform on (lo, hi).
    double uniform(double lo, double hi);

    /// Standard normal via Box-Muller (two uniforms per draw).
    double normal();

    double normal(double mu, double sigma);

    /// Chi-square with k degrees of freedom (sum of k squared normals).
    double chi_square(int k);

    /// t_6 / sqrt(6/4): Student t with 6 df scaled to unit variance.
    double t6_normalized();

    /// (chi^2_5 - 5) / sqrt(10): centered and scaled to unit variance.
    double chi5_normalized();

    /// Draw `count` values of the selected distribution into a vector.
    template <typename F>
    std::vector<double> draw(int count, F&& one) {
        std::vector<double> out(static_cast<std::size_t>(count));
        for (auto& v : out) v = one(*this);
        return out;
    }

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint32_t replication() const { return replication_; }
    StreamPurpose purpose() const { return purpose_; }

private:
    std::array<std::uint32_t, 4> block(std::uint64_t index) const;

    std::uint32_t key0_;
    std::uint32_t key1_;
    std::uint32_t replication_32_;
    std::uint32_t purpose_32_;
    std::uint64_t master_seed_;
    std::uint32_t replication_;
    StreamPurpose purpose_;

    std::uint64_t block_index_ = 0;
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

// Distribution tags used by the simulation configs and the generic
// sampling entry point.
struct DistSpec {
    enum class Kind {
        std_normal,
        t6_norm,
        chi5_norm,
        chi2,          // chi^2_k, k in `k`
        chi6_over6,    // chi^2_6 / 6
        n_mu_sigma,    // N(mu, sigma2)
    };
    Kind kind = Kind::std_normal;
    int k = 0;
    double mu = 0.0;
    double sigma2 = 1.0;

    static DistSpec std_normal() { return {Kind::std_normal, 0, 0.0, 1.0}; }
    static DistSpec t6_norm() { return {Kind::t6_norm, 0, 0.0, 1.0}; }
    static DistSpec chi5_norm() { return {Kind::chi5_norm, 0, 0.0, 1.0}; }
    static DistSpec chi2(int k) { return {Kind::chi2, k, 0.0, 1.0}; }
    static DistSpec chi6_over6() { return {Kind::chi6_over6, 0, 0.0, 1.0}; }
    static DistSpec n_mu_sigma(double mu, double sigma2) {
        return {Kind::n_mu_sigma, 0, mu, sigma2};
    }
};

/// Draw `count` i.i.d. values of the tagged law from `stream`.
std::vector<double> sample(const DistSpec& dist, RngStream& stream, int count);

double sample_one(const DistSpec& dist, RngStream& stream);

/// Deterministically mixes a salt into a master seed (for independent
/// sub-experiments, e.g. one power-curve point per n).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt);

}  // namespace xsdep
