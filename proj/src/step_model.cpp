#include "motzkin/step_model.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace motzkin {

StepWeights make_step_weights(Rational p_minus, Rational p_zero, Rational p_plus) {
    if (!(p_minus > 0)) throw std::invalid_argument("p_minus must be positive");
    if (!(p_zero > 0)) throw std::invalid_argument("p_zero must be positive");
    if (!(p_plus > 0)) throw std::invalid_argument("p_plus must be positive");
    return StepWeights{std::move(p_minus), std::move(p_zero), std::move(p_plus)};
}

StepWeights parse_step_weights(std::string_view text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (ch != ' ') {
            cur += ch;
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3) {
        throw std::invalid_argument("weights must be three comma-separated rationals, e.g. 1,1,2");
    }
    return make_step_weights(parse_rational(parts[0]), parse_rational(parts[1]),
                             parse_rational(parts[2]));
}

std::string to_string(const StepWeights& w) {
    return to_string(w.p_minus) + "," + to_string(w.p_zero) + "," + to_string(w.p_plus);
}

StructuralConstants structural_constants(const StepWeights& w) {
    StructuralConstants c;
    const Rational r = w.p_minus * w.p_plus;  // shared radicand
    c.tau = QuadReal(Rational(0), Rational(1) / w.p_plus, r);
    c.p_tau = QuadReal(w.p_zero, Rational(2), r);
    c.p_tau_dd = QuadReal(Rational(0), 2 * w.p_plus / w.p_minus, r);
    c.rho = c.p_tau.reciprocal();
    c.c_squared = (QuadReal(Rational(2)) * c.p_tau) / c.p_tau_dd;
    c.p_one = jump_at_one(w);
    c.rho_one = Rational(1) / c.p_one;
    c.drift = drift(w);
    c.p_one_dd = jump_second_derivative_at_one(w);
    c.tau_d = c.tau.value();
    c.rho_d = c.rho.value();
    c.rho_one_d = to_double(c.rho_one);
    c.big_c = std::sqrt(c.c_squared.value());
    return c;
}

KernelRoots kernel_roots(const StepWeights& w, double z) {
    const double rho = structural_constants(w).rho_d;
    if (!(z > 0.0) || !(z < rho)) {
        throw std::domain_error("kernel roots are real only for z in (0, rho)");
    }
    const double p0 = to_double(w.p_zero);
    const double pm = to_double(w.p_minus);
    const double pp = to_double(w.p_plus);
    const double b = 1.0 - p0 * z;
    const double disc = b * b - 4.0 * pm * pp * z * z;
    const double s = std::sqrt(disc);
    // u_small via the numerically stable form: (b - s)(b + s) = 4 pm pp z^2.
    const double u_large = (b + s) / (2.0 * pp * z);
    const double u_small = (2.0 * pm * z) / (b + s);
    return KernelRoots{u_small, u_large};
}

Series<Rational> u1_series(const StepWeights& w, int order) {
    return u1_series<Rational>(w.p_minus, w.p_zero, w.p_plus, order);
}

}  // namespace motzkin
