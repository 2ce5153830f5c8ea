#include "ramlab/common.hpp"

#include <cstdlib>

namespace ramlab {

std::uint64_t enumeration_guard_limit() {
    static const std::uint64_t limit = [] {
        if (const char* env = std::getenv("RAMLAB_GUARD_LIMIT")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0) return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{20'000'000};
    }();
    return limit;
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("uniform_below: bound must be positive");
    // Rejection sampling on the top of the 64-bit range keeps the draw
    // unbiased and bit-identical across platforms.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t trial_index) {
    return splitmix64(master ^ splitmix64(trial_index + 1));
}

std::string fmt12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", x);
    return buf;
}

std::string rational_string(const Rational& q) {
    Rational canon = q;  // cpp_rational keeps denominators positive and reduced
    std::string s = numerator(canon).str();
    s += '/';
    s += denominator(canon).str();
    return s;
}

}  // namespace ramlab
