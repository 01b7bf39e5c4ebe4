#pragma once

#include <cstdint>
#include <vector>

#include "bandcov/estimators.hpp"
#include "bandcov/matrix.hpp"

namespace bandcov {

/// Deterministic random stream addressed by (master seed, stream, substream).
///
/// Core generator is xoshiro256++ (period 2^256 - 1) with its four state
/// words derived from the address through splitmix64, so the integer
/// stream for a given address is byte-identical on every platform.
/// Uniform doubles take the top 53 bits of the integer output; normal
/// variates use the Marsaglia polar transform (sqrt/log only, no trig).
/// Streams with different addresses are statistically independent.
class Rng {
public:
    explicit Rng(std::uint64_t master_seed, std::uint64_t stream = 0, std::uint64_t substream = 0);

    std::uint64_t next_u64();

    /// Uniform on [0, 1).
    double next_uniform();

    /// Uniform on {0, ..., bound-1} without modulo bias (mask-and-reject).
    std::uint64_t next_below(std::uint64_t bound);

    /// Standard normal. The polar transform yields pairs; the spare is
    /// cached, so draw counts need not be even.
    double next_normal();

private:
    std::uint64_t state_[4];
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// count i.i.d. N(0,1) draws.
std::vector<double> standard_normals(Rng& rng, std::size_t count);

/// n rows X_k = L z_k with z_k i.i.d. standard normal, L lower-triangular
/// from cholesky(Sigma).
DataSample mvn_sample(const DenseMatrix& chol_lower, int n, Rng& rng);

}  // namespace bandcov
