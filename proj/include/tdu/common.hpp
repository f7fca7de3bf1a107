#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace tdu {

// Absolute tolerance for all value comparisons (indifference threshold).
inline constexpr double kEps = 1e-9;

// A reported axiom violation must show a strict gap above this, so numeric
// noise near the indifference threshold can never manufacture one.
inline constexpr double kViolationGap = 10 * kEps;

// Deterministic RNG. mt19937_64's output sequence is fully specified by the
// standard; the derived draws below avoid std distributions, whose sequences
// are implementation-defined, so identical seeds give identical runs.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in {lo, ..., hi}. Modulo bias is irrelevant at these ranges.
    int uniform_int(int lo, int hi) {
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    // Uniform in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    template <typename T>
    const T& pick(const std::vector<T>& xs) {
        return xs[static_cast<std::size_t>(uniform_int(0, static_cast<int>(xs.size()) - 1))];
    }

    Rng fork() { return Rng(next_u64() ^ 0x9e3779b97f4a7c15ull); }

  private:
    std::mt19937_64 eng_;
};

inline int popcount32(std::uint32_t m) {
    int c = 0;
    while (m) {
        m &= m - 1;
        ++c;
    }
    return c;
}

} // namespace tdu
