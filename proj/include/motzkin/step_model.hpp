#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "motzkin/quadratic.hpp"
#include "motzkin/rational.hpp"
#include "motzkin/series.hpp"

namespace motzkin {

// Weighted Motzkin step set: jumps -1, 0, +1 carrying positive rational
// weights. The jump polynomial is P(u) = p_minus/u + p_zero + p_plus*u.
struct StepWeights {
    Rational p_minus;
    Rational p_zero;
    Rational p_plus;
};

// Validates positivity; error messages name the offending field.
StepWeights make_step_weights(Rational p_minus, Rational p_zero, Rational p_plus);

// Parses "1,1,2" or "1/2,3,5/4" (three comma-separated rationals, no floats).
StepWeights parse_step_weights(std::string_view text);

std::string to_string(const StepWeights& w);

inline Rational jump_at_one(const StepWeights& w) { return w.p_minus + w.p_zero + w.p_plus; }
inline Rational drift(const StepWeights& w) { return w.p_plus - w.p_minus; }
inline Rational jump_second_derivative_at_one(const StepWeights& w) { return 2 * w.p_minus; }

// The constants every law formula is built from. tau minimizes P on (0, inf);
// rho = 1/P(tau) is the excursion/bridge singularity; rho_one = 1/P(1) is the
// walk singularity. Everything algebraic lives in Q(sqrt(p_minus*p_plus)) and
// is kept exact alongside the convenience doubles.
struct StructuralConstants {
    QuadReal tau;         // sqrt(p_minus/p_plus)
    QuadReal p_tau;       // P(tau) = p_zero + 2*sqrt(p_minus*p_plus)
    QuadReal p_tau_dd;    // P''(tau) = 2*p_plus/tau
    QuadReal rho;         // 1/P(tau)
    QuadReal c_squared;   // C^2 = 2*P(tau)/P''(tau)
    Rational rho_one;     // 1/P(1)
    Rational drift;       // P'(1) = p_plus - p_minus
    Rational p_one;       // P(1)
    Rational p_one_dd;    // P''(1) = 2*p_minus

    double tau_d = 0, rho_d = 0, rho_one_d = 0, big_c = 0;
};

StructuralConstants structural_constants(const StepWeights& w);

// Real branches of the characteristic equation u = z*u*P(u), i.e. roots of
// p_plus*z*u^2 + (p_zero*z - 1)*u + p_minus*z = 0. u_small -> 0 as z -> 0+;
// u_small*u_large = p_minus/p_plus. Defined for real z in (0, rho); the
// branches meet at z = rho and leave the real line beyond it.
struct KernelRoots {
    double u_small;
    double u_large;
};

KernelRoots kernel_roots(const StepWeights& w, double z);

// Truncated series of the small root u1(z) (order >= 1):
//   u1(z) = (1 - p_zero z - sqrt((1 - p_zero z)^2 - 4 p_minus p_plus z^2)) / (2 p_plus z)
// The constant coefficient is exactly 0 and [z^1] u1 = p_minus.
template <typename Scalar>
Series<Scalar> u1_series(const Scalar& p_minus, const Scalar& p_zero, const Scalar& p_plus,
                         int order) {
    if (order < 1) throw std::invalid_argument("u1 series needs order >= 1");
    // The z-division costs one order, so build the discriminant at order+1.
    const int m = order + 1;
    Series<Scalar> disc(m);
    disc[0] = Scalar(1);
    disc[1] = Scalar(-2) * p_zero;
    if (m >= 2) disc[2] = p_zero * p_zero - Scalar(4) * p_minus * p_plus;
    Series<Scalar> root = sqrt(disc);
    Series<Scalar> numer(m);
    numer[0] = Scalar(1);
    numer[1] = -p_zero;
    numer = numer - root;  // [0] and [1] cancel exactly in both scalar types
    const Scalar scale = Scalar(1) / (Scalar(2) * p_plus);
    return shifted_down(numer) * scale;
}

Series<Rational> u1_series(const StepWeights& w, int order);

}  // namespace motzkin
