#pragma once

#include <cstdint>
#include <vector>

#include "motzkin/path_enum.hpp"
#include "motzkin/step_model.hpp"

namespace motzkin {

// splitmix64: the standard 64-bit finalizer-based generator, used only to
// expand seeds.
struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }
};

// xoshiro256**: Blackman/Vigna's all-purpose 64-bit generator. Deterministic
// across platforms (pure integer ops), 256-bit state seeded via splitmix64.
struct Xoshiro256ss {
    std::uint64_t s[4];

    explicit Xoshiro256ss(std::uint64_t seed) {
        SplitMix64 sm{seed};
        for (auto& word : s) word = sm.next();
    }

    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }
};

// Replication i draws from Xoshiro256ss(rep_seed(master, i)): every rep has
// its own generator derived only from (master seed, rep index), so results
// are identical no matter how reps are partitioned across threads.
std::uint64_t rep_seed(std::uint64_t master, std::uint64_t rep_index);

// Step sampler with exact thresholds: step -1 iff r < floor(2^64 p-/P(1)),
// step 0 iff r < floor(2^64 (p- + p0)/P(1)), else +1, for a raw 64-bit r.
// The thresholds are computed from the rational weights with integer
// arithmetic, so the sampled law matches the analytic one to within 2^-64
// per step.
struct StepSampler {
    std::uint64_t threshold_minus;
    std::uint64_t threshold_zero;

    explicit StepSampler(const StepWeights& w);

    int draw(std::uint64_t r) const {
        if (r < threshold_minus) return -1;
        if (r < threshold_zero) return 0;
        return 1;
    }
};

struct SampleConfig {
    StepWeights weights;
    Statistic stat = Statistic::returns_to_zero;
    PathFamily family = PathFamily::walk;  // walk or bridge
    int n = 100;
    std::int64_t reps = 10000;
    std::uint64_t seed = 1;
    int threads = 0;  // 0: MOTZKIN_LAB_THREADS env var, else hardware count
};

struct EmpiricalPmf {
    std::vector<double> pmf;          // relative frequency of statistic = k
    std::vector<std::int64_t> counts;
    std::int64_t reps = 0;            // accepted samples
    std::int64_t proposals = 0;       // walks drawn (> reps for bridges)
};

// Draws config.reps samples of the statistic (bridges by rejection on the
// final altitude) and histograms them. Deterministic in (seed, n, reps).
EmpiricalPmf sample_pmf(const SampleConfig& config);

// One sampled walk with its statistics (always from the walk family).
struct SampledWalk {
    std::vector<int> steps;
    WalkStats stats;
};
SampledWalk sample_walk(const StepWeights& w, int n, std::uint64_t seed);

// Pearson chi-square goodness of fit of observed counts against expected
// probabilities; bins with expected count < min_expected are pooled from the
// tail. Returns the p-value (upper tail of the chi-square distribution).
double chi_square_pvalue(const std::vector<std::int64_t>& observed,
                         const std::vector<double>& expected_probs, double min_expected = 5.0);

// Regularized upper incomplete gamma Q(a, x); the chi-square tail is
// Q(df/2, x/2). Exposed for tests.
double regularized_gamma_q(double a, double x);

}  // namespace motzkin
