#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace lampmet {

// Seeded RNG with platform-independent bounded draws. mt19937_64 output is
// pinned by the standard; std::uniform_int_distribution and std::shuffle are
// not, so bounded draws and shuffles are done by hand to keep every seeded
// result bit-identical across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    // Uniform draw in [0, n) via masked rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0};
        std::uint64_t limit = n - 1;
        int shift = 0;
        while ((limit >> shift) > 0 && shift < 64) ++shift;
        if (shift < 64) mask = (std::uint64_t{1} << shift) - 1;
        for (;;) {
            std::uint64_t v = gen_() & mask;
            if (v < n) return v;
        }
    }

    // Fisher-Yates shuffle with draws from below().
    template <typename T>
    void shuffle(std::vector<T>& values) {
        for (std::size_t i = values.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(values[i - 1], values[j]);
        }
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace lampmet
