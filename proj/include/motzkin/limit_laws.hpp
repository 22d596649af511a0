#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "motzkin/path_enum.hpp"
#include "motzkin/quadratic.hpp"
#include "motzkin/step_model.hpp"

namespace motzkin {

// The four limit distributions that occur. Conventions:
//   Geometric(p):  P[X = k] = (1-p)^k p on k = 0,1,...   mean (1-p)/p
//   HalfNormal(s): density sqrt(2/(pi s^2)) exp(-x^2/(2 s^2)) on x >= 0,
//                  mean s sqrt(2/pi), variance s^2 (1 - 2/pi)
//   Rayleigh(s):   density (x/s^2) exp(-x^2/(2 s^2)) on x >= 0,
//                  mean s sqrt(pi/2), variance s^2 (2 - pi/2)
//   Normal(mu, s): the usual Gaussian
struct Geometric {
    double p;
};
struct HalfNormal {
    double sigma;
};
struct Rayleigh {
    double sigma;
};
struct Normal {
    double mu;
    double sigma;
};

// How the finite-n statistic is mapped onto the law's axis:
//   none:             X_n itself (discrete limit)
//   divide_by_sqrt_n: X_n / sqrt(n)
//   standardize:      (X_n - mu_rate n) / (sigma_rate sqrt(n)), limit N(0,1)
enum class LawScaling { none, divide_by_sqrt_n, standardize };

struct LimitLaw {
    std::variant<Geometric, HalfNormal, Rayleigh, Normal> dist;
    LawScaling scaling = LawScaling::none;
    double mu_rate = 0.0;     // used by standardize only
    double sigma_rate = 0.0;  // used by standardize only
};

std::string law_name(const LimitLaw& law);
double law_density(const LimitLaw& law, double x);  // pmf at round(x) for Geometric
double law_cdf(const LimitLaw& law, double x);
double law_mean(const LimitLaw& law);
double law_variance(const LimitLaw& law);

// The drift trichotomy for each supported statistic/family pair:
//   returns/walk : drift != 0 -> Geometric(|drift|/P(1));   drift = 0 -> HalfNormal(sqrt(P(1)/P''(1)))/sqrt(n)
//   signs/walk   : drift != 0 -> Geometric with ratio min(p+/p-, p-/p+), i.e. p = 1 - ratio;
//                  drift = 0 -> HalfNormal((1/2) sqrt(P''(1)/P(1)))/sqrt(n)
//   signs/bridge : Rayleigh((tau/2) sqrt(P''(tau)/P(tau)))/sqrt(n), any drift
//   height/walk  : drift < 0 -> Geometric with ratio p+/p-;
//                  drift = 0 -> HalfNormal(sqrt(P''(1)/P(1)))/sqrt(n);
//                  drift > 0 -> standardized Normal, mu_rate = drift/P(1),
//                               sigma_rate^2 = 1 - p0/P(1) - (drift/P(1))^2
LimitLaw predict_law(const StepWeights& w, Statistic s, PathFamily f);

// --- square-root singularity scheme -------------------------------------------
//
// For a bivariate counting function c(z, u) written as
//
//   1/c(z, u) = g(z, u) + h(z, u) sqrt(1 - z/rho),
//
// the statistic marked by u obeys a half-normal limit law with
// sigma = sqrt(2) h_u(rho,1) / (rho g_z(rho,1)) provided the six algebraic
// conditions checked below hold at (z, u) = (rho, 1).

// A scheme datum that is either known exactly (rational or quadratic
// irrational) or only as a double. Zero tests are exact in the first case and
// tolerance-based in the second.
class SchemeValue {
public:
    SchemeValue() : v_(0.0) {}
    SchemeValue(double x) : v_(x) {}
    SchemeValue(QuadReal q) : v_(std::move(q)) {}
    SchemeValue(const Rational& q) : v_(QuadReal(q)) {}

    bool is_exact() const { return std::holds_alternative<QuadReal>(v_); }
    double value() const;
    bool is_zero(double tol) const;
    std::string str() const;

private:
    std::variant<QuadReal, double> v_;
};

// g, h and the needed partials evaluated at (rho, 1).
struct SchemeInstance {
    std::string label;
    SchemeValue rho;
    SchemeValue g;     // g(rho, 1)
    SchemeValue g_z;   // dg/dz (rho, 1)
    SchemeValue g_u;   // dg/du (rho, 1)
    SchemeValue g_uu;  // d2g/du2 (rho, 1)
    SchemeValue h;     // h(rho, 1)
    SchemeValue h_u;   // dh/du (rho, 1)
};

struct SchemeCondition {
    std::string name;
    bool require_zero;  // otherwise: require nonzero
    double value;
    bool passed;
};

struct SchemeReport {
    std::vector<SchemeCondition> conditions;
    bool all_passed = false;
    std::optional<double> sigma;  // set when all conditions pass
    std::string note;
};

// Checks the algebraic conditions; tol applies only to non-exact values.
// The analytic hypotheses (the square root being the only singularity on the
// closed disk, analyticity in u near 1) are assumed, not verified; the report
// note says so.
SchemeReport check_scheme(const SchemeInstance& inst, double tol = 1e-9);

// Built-in instances for the three statistics at zero drift (throws
// otherwise): rho = 1/P(1), g = 1 - z P(1)-like factor normalized so that
// g_z(rho,1) = -P(1), and h_u matching the proven sigma for each statistic.
SchemeInstance builtin_scheme(const StepWeights& w, Statistic s);

// Leading-order moment predictions under the half-normal law:
// E[X_n] ~ sigma sqrt(2n/pi), V[X_n] ~ sigma^2 (1 - 2/pi) n.
struct HalfNormalMoments {
    double mean;
    double variance;
};
HalfNormalMoments half_normal_moments(double sigma, std::int64_t n);

// Local limit density: P[X_n = k] ~ (1/sigma) sqrt(2/(pi n)) exp(-k^2/(2 sigma^2 n)).
double local_law_density(double sigma, std::int64_t n, std::int64_t k);

}  // namespace motzkin
