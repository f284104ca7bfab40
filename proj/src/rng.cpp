#include "permprof/rng.hpp"

#include <cmath>

#include "permprof/errors.hpp"

namespace permprof {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t v, int s) { return (v << s) | (v >> (64 - s)); }

}  // namespace

RandomStream::RandomStream(RngHandle handle) {
    // Key = hash(master) ^ hash(index ^ const): structured (seed, index)
    // grids cannot collide except by 64-bit accident.
    std::uint64_t a = handle.master_seed;
    std::uint64_t b = handle.stream_index ^ 0x6a09e667f3bcc908ULL;
    std::uint64_t key = splitmix64(a) ^ rotl(splitmix64(b), 32);
    for (auto& s : state_) s = splitmix64(key);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
}

std::uint64_t RandomStream::next_u64() {
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

double RandomStream::uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomStream::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw DomainError("uniform_below needs bound >= 1");
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
        const std::uint64_t threshold = -bound % bound;
        while (lo < threshold) {
            m = static_cast<unsigned __int128>(next_u64()) * bound;
            lo = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

bool RandomStream::bernoulli(double p) { return uniform_double() < p; }

long RandomStream::poisson(double lambda) {
    if (lambda < 0.0 || !std::isfinite(lambda)) throw DomainError("poisson rate must be >= 0");
    double t = 0.0;
    long k = -1;
    do {
        t += -std::log1p(-uniform_double());
        ++k;
    } while (t < lambda);
    return k;
}

void RandomStream::shuffle_prefix(std::vector<long>& values, std::size_t prefix) {
    const std::size_t n = values.size();
    if (prefix > n) throw DomainError("shuffle prefix longer than vector");
    for (std::size_t i = 0; i + 1 < n && i < prefix; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(uniform_below(n - i));
        std::swap(values[i], values[j]);
    }
}

}  // namespace permprof
