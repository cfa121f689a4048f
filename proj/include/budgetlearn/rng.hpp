#pragma once

#include <cstdint>
#include <vector>

namespace budgetlearn {

// Counter-based deterministic random stream. A stream is identified by a
// 64-bit key derived from the root seed and a structured fork path
// (experiment, repeat, fold, step, ...). Forking is a pure function of the
// key and label — it does not consume draws — so the sequence produced by a
// stream depends only on (seed, path), never on scheduling or on how many
// values sibling streams drew. All bounded/real draws are implemented here
// rather than with <random> distributions, which keeps sequences identical
// across standard libraries.
class RngStream {
public:
    static RngStream root(std::uint64_t seed);

    // Child stream for a path component. Same (stream, label) always yields
    // the same child.
    [[nodiscard]] RngStream fork(std::uint64_t label) const;

    std::uint64_t next_u64();

    // Uniform in [0, bound), unbiased via rejection. bound must be > 0.
    std::uint64_t uniform_below(std::uint64_t bound);

    // Uniform in [0, 1) with 53 random bits.
    double uniform01();

    // Standard normal via Box-Muller; the paired value is cached.
    double normal();

    // Fisher-Yates.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        if (v.size() < 2) return;
        for (std::size_t i = v.size() - 1; i > 0; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_below(i + 1));
            std::swap(v[i], v[j]);
        }
    }

private:
    explicit RngStream(std::uint64_t key) : key_(key) {}

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

// Fork labels for the experiment protocol, so call sites agree on the path
// layout instead of hand-picking integers.
namespace stream_label {
inline constexpr std::uint64_t folds = 1;
inline constexpr std::uint64_t warm_start = 2;
inline constexpr std::uint64_t run_loop = 3;
inline constexpr std::uint64_t repeat_base = 100;
inline constexpr std::uint64_t fold_base = 200;
inline constexpr std::uint64_t kmeans = 4;
inline constexpr std::uint64_t datagen_template = 5;
inline constexpr std::uint64_t datagen_noise = 6;
} // namespace stream_label

} // namespace budgetlearn
