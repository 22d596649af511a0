#include "motzkin/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace motzkin {

std::uint64_t rep_seed(std::uint64_t master, std::uint64_t rep_index) {
    // Decorrelate rep indices with a distinct odd stride before the splitmix
    // finalizer; two different (master, index) pairs collide only by 2^-64
    // accident.
    SplitMix64 sm{master ^ (0xD1B54A32D192ED03ull * (rep_index + 1))};
    return sm.next();
}

namespace {

// floor(2^64 * q) for a rational q in [0, 1].
std::uint64_t scaled_threshold(const Rational& q) {
    mpz_class scaled = (q.get_num() << 64) / q.get_den();
    if (scaled < 0 || mpz_sizeinbase(scaled.get_mpz_t(), 2) > 64) {
        throw std::domain_error("threshold out of range");
    }
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, scaled.get_mpz_t());
    return out;
}

}  // namespace

StepSampler::StepSampler(const StepWeights& w) {
    const Rational total = jump_at_one(w);
    threshold_minus = scaled_threshold(w.p_minus / total);
    threshold_zero = scaled_threshold((w.p_minus + w.p_zero) / total);
}

SampledWalk sample_walk(const StepWeights& w, int n, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("walk length must be >= 0");
    StepSampler sampler(w);
    Xoshiro256ss rng(seed);
    SampledWalk out;
    out.steps.reserve(n);
    for (int i = 0; i < n; ++i) {
        const int s = sampler.draw(rng.next());
        out.steps.push_back(s);
        out.stats.apply(s);
    }
    return out;
}

namespace {

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MOTZKIN_LAB_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

struct ShardResult {
    std::vector<std::int64_t> counts;
    std::int64_t proposals = 0;
};

// Samples reps [first, last) into a histogram. Each rep owns one generator;
// bridge conditioning rejects within the same stream until the walk ends at
// altitude 0.
ShardResult run_shard(const SampleConfig& config, const StepSampler& sampler, std::int64_t first,
                      std::int64_t last) {
    ShardResult shard;
    shard.counts.assign(static_cast<std::size_t>(config.n) + 1, 0);
    for (std::int64_t rep = first; rep < last; ++rep) {
        Xoshiro256ss rng(rep_seed(config.seed, static_cast<std::uint64_t>(rep)));
        while (true) {
            ++shard.proposals;
            WalkStats stats;
            for (int i = 0; i < config.n; ++i) stats.apply(sampler.draw(rng.next()));
            if (config.family == PathFamily::bridge && stats.altitude != 0) continue;
            const std::int64_t value = stats.statistic(config.stat);
            ++shard.counts[static_cast<std::size_t>(value)];
            break;
        }
    }
    return shard;
}

}  // namespace

EmpiricalPmf sample_pmf(const SampleConfig& config) {
    if (config.n < 0) throw std::invalid_argument("sample length must be >= 0");
    if (config.reps < 1) throw std::invalid_argument("reps must be >= 1");
    if (config.family != PathFamily::walk && config.family != PathFamily::bridge) {
        throw std::invalid_argument("sampling supports the walk and bridge families");
    }
    if (config.stat == Statistic::final_altitude) {
        throw std::invalid_argument(
            "final altitude can be negative and has no histogram model; sample returns, "
            "signs, or height");
    }

    const StepSampler sampler(config.weights);
    const int threads =
        static_cast<int>(std::min<std::int64_t>(resolve_threads(config.threads), config.reps));

    std::vector<ShardResult> shards(threads);
    if (threads == 1) {
        shards[0] = run_shard(config, sampler, 0, config.reps);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        const std::int64_t chunk = (config.reps + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const std::int64_t first = t * chunk;
            const std::int64_t last = std::min<std::int64_t>(first + chunk, config.reps);
            pool.emplace_back([&, t, first, last] {
                shards[static_cast<std::size_t>(t)] = run_shard(config, sampler, first, last);
            });
        }
        for (auto& th : pool) th.join();
    }

    EmpiricalPmf out;
    out.counts.assign(static_cast<std::size_t>(config.n) + 1, 0);
    for (const auto& shard : shards) {
        out.proposals += shard.proposals;
        for (std::size_t k = 0; k < shard.counts.size(); ++k) out.counts[k] += shard.counts[k];
    }
    out.reps = config.reps;
    std::size_t top = out.counts.size();
    while (top > 1 && out.counts[top - 1] == 0) --top;
    out.counts.resize(top);
    out.pmf.resize(top);
    for (std::size_t k = 0; k < top; ++k) {
        out.pmf[k] = static_cast<double>(out.counts[k]) / static_cast<double>(config.reps);
    }
    return out;
}

// --- chi-square ----------------------------------------------------------------

namespace {

double gamma_q_series_p(double a, double x) {
    // lower regularized P(a,x) by series; valid for x < a + 1
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::abs(term) < std::abs(sum) * 1e-15) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_continued_fraction(double a, double x) {
    // upper regularized Q(a,x) by Lentz's continued fraction; valid for x >= a + 1
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (!(a > 0) || x < 0) throw std::invalid_argument("gamma Q needs a > 0, x >= 0");
    if (x == 0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_q_series_p(a, x);
    return gamma_q_continued_fraction(a, x);
}

double chi_square_pvalue(const std::vector<std::int64_t>& observed,
                         const std::vector<double>& expected_probs, double min_expected) {
    if (observed.size() > expected_probs.size()) {
        throw std::invalid_argument("every observed bin needs an expected probability");
    }
    std::int64_t total = 0;
    for (std::int64_t c : observed) total += c;
    if (total <= 0) throw std::invalid_argument("chi-square needs at least one observation");

    // Pool from the tail so every compared bin has enough expected mass; the
    // final pooled bin absorbs the laws' remaining tail probability.
    std::vector<double> exp_counts;
    std::vector<double> obs_counts;
    double tail_expected = static_cast<double>(total);
    double tail_observed = static_cast<double>(total);
    for (std::size_t k = 0; k < observed.size(); ++k) {
        const double e = expected_probs[k] * static_cast<double>(total);
        const double o = static_cast<double>(observed[k]);
        exp_counts.push_back(e);
        obs_counts.push_back(o);
        tail_expected -= e;
        tail_observed -= o;
    }
    // merge trailing bins until the tail bin is heavy enough
    while (exp_counts.size() > 1 && tail_expected + exp_counts.back() < min_expected) {
        tail_expected += exp_counts.back();
        tail_observed += obs_counts.back();
        exp_counts.pop_back();
        obs_counts.pop_back();
    }
    exp_counts.push_back(std::max(tail_expected, 1e-12));
    obs_counts.push_back(tail_observed);
    // merge any light interior bins into their right neighbor
    std::vector<double> e2, o2;
    double ce = 0, co = 0;
    for (std::size_t k = 0; k < exp_counts.size(); ++k) {
        ce += exp_counts[k];
        co += obs_counts[k];
        if (ce >= min_expected || k + 1 == exp_counts.size()) {
            e2.push_back(ce);
            o2.push_back(co);
            ce = co = 0;
        }
    }
    if (e2.size() >= 2 && e2.back() < min_expected) {
        e2[e2.size() - 2] += e2.back();
        o2[o2.size() - 2] += o2.back();
        e2.pop_back();
        o2.pop_back();
    }
    if (e2.size() < 2) return 1.0;  // everything pooled into one bin: no test

    double stat = 0.0;
    for (std::size_t k = 0; k < e2.size(); ++k) {
        const double d = o2[k] - e2[k];
        stat += d * d / e2[k];
    }
    const double df = static_cast<double>(e2.size() - 1);
    return regularized_gamma_q(df / 2.0, stat / 2.0);
}

}  // namespace motzkin
