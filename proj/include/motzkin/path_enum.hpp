#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "motzkin/rational.hpp"
#include "motzkin/step_model.hpp"

namespace motzkin {

enum class PathFamily { walk, bridge, meander, excursion };
enum class Statistic { returns_to_zero, sign_changes, height, final_altitude };

std::string name(PathFamily f);
std::string name(Statistic s);
PathFamily parse_family(std::string_view text);
Statistic parse_statistic(std::string_view text);

// Running statistics of a walk, updated one step at a time. Conventions:
//  - a return is any vertex at altitude 0 after the start (level steps on the
//    axis count);
//  - a sign change happens when the first nonzero altitude after a visit to
//    the axis has the opposite sign of the previous nonzero altitude;
//  - height is the maximum altitude reached, at least 0 (the start counts).
struct WalkStats {
    std::int64_t altitude = 0;
    std::int64_t returns = 0;
    std::int64_t sign_changes = 0;
    std::int64_t height = 0;
    int last_sign = 0;

    void apply(int step) {
        altitude += step;
        if (altitude == 0) {
            ++returns;
        } else {
            const int sign = altitude > 0 ? 1 : -1;
            if (last_sign != 0 && sign != last_sign) ++sign_changes;
            last_sign = sign;
        }
        if (altitude > height) height = altitude;
    }

    std::int64_t statistic(Statistic s) const;
};

// Exact total weight of the family at length n (walks: all paths; bridges:
// end at 0; meanders: stay >= 0; excursions: both).
Rational count_family(const StepWeights& w, PathFamily family, int n);

// Same, for every length 0..max_n in one DP sweep.
std::vector<Rational> count_family_sweep(const StepWeights& w, PathFamily family, int max_n);

// Exact distribution of a statistic over a family at length n.
struct StatisticPmf {
    Statistic stat{};
    PathFamily family{};
    int n = 0;
    std::vector<std::pair<std::int64_t, Rational>> weights;  // (k, weight), k ascending
    Rational total;                                          // family weight at length n

    Rational weight_at(std::int64_t k) const;
    Rational mean() const;
    Rational variance() const;
};

// The four supported pairs match the generating-function models:
// returns/walk, sign_changes/walk, sign_changes/bridge, height/walk.
bool pmf_supported(Statistic s, PathFamily f);

StatisticPmf pmf_exact(const StepWeights& w, Statistic s, PathFamily f, int n);

// All lengths 0..max_n from a single DP table walk-through.
std::vector<StatisticPmf> pmf_exact_sweep(const StepWeights& w, Statistic s, PathFamily f,
                                          int max_n);

// Brute-force listing of all 3^n step sequences with exact weights and all
// statistics; the independent cross-check for the DP and the sampler.
// Guarded to n <= 12.
struct ListedPath {
    std::vector<int> steps;  // entries in {-1, 0, +1}
    Rational weight;
    WalkStats stats;
};

std::vector<ListedPath> exhaustive_listing(const StepWeights& w, int n);

}  // namespace motzkin
