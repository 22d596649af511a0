#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "motzkin/gf_models.hpp"
#include "motzkin/limit_laws.hpp"
#include "motzkin/path_enum.hpp"
#include "motzkin/step_model.hpp"

namespace motzkin {

struct KsOptions {
    // Evaluate the continuous law at half-integer-shifted atoms (k+1/2)/sqrt(n)
    // rather than k/sqrt(n). Halves the discretization bias; switchable for
    // comparisons against the raw grid.
    bool midpoint = true;
    double tail = 1e-12;  // pmf enumeration cutoff
};

// sup_k |F_n(k) - F(x_k)| between the exact finite-n CDF and the predicted
// law's CDF, with x_k the law-side evaluation point for atom k under the
// law's scaling.
double kolmogorov_distance(const std::vector<double>& pmf, const LimitLaw& law, std::int64_t n,
                           const KsOptions& opts = {});

// Total variation distance against Geometric(p); the analytic mass of the law
// beyond the last enumerated atom and any unenumerated pmf mass enter as a
// tail term, so the result is exact up to the enumeration cutoff.
double tv_distance_geometric(const std::vector<double>& pmf, double p);

// max_k |P[X_n = k] - local law density|; the local law predicts this decays
// like 1/n at zero drift.
double local_law_residual(const std::vector<double>& pmf, double sigma, std::int64_t n);

// Least-squares slope of log(distance) against log(n); around -1/2 for the
// half-normal and Rayleigh regimes.
double rate_estimate(const std::vector<std::pair<std::int64_t, double>>& points);

struct ConvergenceRow {
    std::int64_t n;
    double kolmogorov;
    std::optional<double> tv;              // geometric limits only
    double mean_ratio;                     // exact mean / law prediction
    double variance_ratio;
    std::optional<double> local_residual;  // half-normal limits only
};

struct ConvergenceReport {
    std::string model;    // "returns/walk", ...
    std::string weights;  // "1,1,2"
    LimitLaw law;
    std::vector<ConvergenceRow> rows;
};

ConvergenceReport convergence_report(const StepWeights& w, Statistic s, PathFamily f,
                                     const std::vector<std::int64_t>& ns,
                                     const KsOptions& opts = {});

// Law-side mean/variance of the unscaled statistic at length n (what the
// ratios in the report divide by).
double law_predicted_mean(const LimitLaw& law, std::int64_t n);
double law_predicted_variance(const LimitLaw& law, std::int64_t n);

// Compact JSON object describing a law, e.g.
// {"law":"half_normal","sigma":0.8165,"scaling":"divide_by_sqrt_n"}.
std::string law_json_string(const LimitLaw& law);

void write_csv(std::ostream& os, const ConvergenceReport& report);
void write_json(std::ostream& os, const ConvergenceReport& report);

}  // namespace motzkin
