#include "bandcov/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace bandcov {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t substream) {
    std::uint64_t st = master_seed;
    (void)splitmix64(st);
    st ^= 0xA0761D6478BD642FULL * (stream + 1);
    (void)splitmix64(st);
    st ^= 0xE7037ED1A0B428DBULL * (substream + 1);
    for (auto& word : state_) word = splitmix64(st);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::next_uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t Rng::next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1;
    mask |= mask >> 2;
    mask |= mask >> 4;
    mask |= mask >> 8;
    mask |= mask >> 16;
    mask |= mask >> 32;
    std::uint64_t draw;
    do {
        draw = next_u64() & mask;
    } while (draw >= bound);
    return draw;
}

double Rng::next_normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double x;
    double y;
    double s;
    do {
        x = 2.0 * next_uniform() - 1.0;
        y = 2.0 * next_uniform() - 1.0;
        s = x * x + y * y;
    } while (s >= 1.0 || s == 0.0);
    const double r = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = y * r;
    has_spare_ = true;
    return x * r;
}

std::vector<double> standard_normals(Rng& rng, std::size_t count) {
    std::vector<double> out(count);
    for (auto& z : out) z = rng.next_normal();
    return out;
}

DataSample mvn_sample(const DenseMatrix& chol_lower, int n, Rng& rng) {
    if (chol_lower.rows() != chol_lower.cols()) {
        throw std::invalid_argument("mvn_sample: factor must be square");
    }
    if (n < 2) throw std::invalid_argument("mvn_sample: need at least 2 rows");
    const int p = chol_lower.rows();
    DenseMatrix rows(n, p);
    std::vector<double> z(p);
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < p; ++i) z[i] = rng.next_normal();
        for (int i = 0; i < p; ++i) {
            double s = 0.0;
            for (int j = 0; j <= i; ++j) s += chol_lower(i, j) * z[j];
            rows(k, i) = s;
        }
    }
    return DataSample(std::move(rows));
}

}  // namespace bandcov
