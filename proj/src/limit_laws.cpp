#include "motzkin/limit_laws.hpp"

#include <cmath>
#include <stdexcept>

namespace motzkin {

namespace {

constexpr double kPi = 3.14159265358979323846;

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

std::string law_name(const LimitLaw& law) {
    if (std::holds_alternative<Geometric>(law.dist)) return "geometric";
    if (std::holds_alternative<HalfNormal>(law.dist)) return "half_normal";
    if (std::holds_alternative<Rayleigh>(law.dist)) return "rayleigh";
    return "normal";
}

double law_density(const LimitLaw& law, double x) {
    if (const auto* g = std::get_if<Geometric>(&law.dist)) {
        const double k = std::nearbyint(x);
        if (k < 0 || std::abs(x - k) > 1e-9) return 0.0;
        return std::pow(1.0 - g->p, k) * g->p;
    }
    if (const auto* h = std::get_if<HalfNormal>(&law.dist)) {
        if (x < 0) return 0.0;
        const double s2 = h->sigma * h->sigma;
        return std::sqrt(2.0 / (kPi * s2)) * std::exp(-x * x / (2.0 * s2));
    }
    if (const auto* r = std::get_if<Rayleigh>(&law.dist)) {
        if (x < 0) return 0.0;
        const double s2 = r->sigma * r->sigma;
        return (x / s2) * std::exp(-x * x / (2.0 * s2));
    }
    const auto& n = std::get<Normal>(law.dist);
    const double z = (x - n.mu) / n.sigma;
    return std::exp(-0.5 * z * z) / (n.sigma * std::sqrt(2.0 * kPi));
}

double law_cdf(const LimitLaw& law, double x) {
    if (const auto* g = std::get_if<Geometric>(&law.dist)) {
        if (x < 0) return 0.0;
        const double k = std::floor(x);
        return 1.0 - std::pow(1.0 - g->p, k + 1.0);
    }
    if (const auto* h = std::get_if<HalfNormal>(&law.dist)) {
        if (x <= 0) return 0.0;
        return std::erf(x / (h->sigma * std::sqrt(2.0)));
    }
    if (const auto* r = std::get_if<Rayleigh>(&law.dist)) {
        if (x <= 0) return 0.0;
        return 1.0 - std::exp(-x * x / (2.0 * r->sigma * r->sigma));
    }
    const auto& n = std::get<Normal>(law.dist);
    return normal_cdf((x - n.mu) / n.sigma);
}

double law_mean(const LimitLaw& law) {
    if (const auto* g = std::get_if<Geometric>(&law.dist)) return (1.0 - g->p) / g->p;
    if (const auto* h = std::get_if<HalfNormal>(&law.dist)) return h->sigma * std::sqrt(2.0 / kPi);
    if (const auto* r = std::get_if<Rayleigh>(&law.dist)) return r->sigma * std::sqrt(kPi / 2.0);
    return std::get<Normal>(law.dist).mu;
}

double law_variance(const LimitLaw& law) {
    if (const auto* g = std::get_if<Geometric>(&law.dist)) {
        return (1.0 - g->p) / (g->p * g->p);
    }
    if (const auto* h = std::get_if<HalfNormal>(&law.dist)) {
        return h->sigma * h->sigma * (1.0 - 2.0 / kPi);
    }
    if (const auto* r = std::get_if<Rayleigh>(&law.dist)) {
        return r->sigma * r->sigma * (2.0 - kPi / 2.0);
    }
    const auto& n = std::get<Normal>(law.dist);
    return n.sigma * n.sigma;
}

LimitLaw predict_law(const StepWeights& w, Statistic s, PathFamily f) {
    const StructuralConstants c = structural_constants(w);
    const bool zero_drift = (c.drift == 0);

    if (s == Statistic::returns_to_zero && f == PathFamily::walk) {
        if (zero_drift) {
            const double sigma = std::sqrt(to_double(c.p_one / c.p_one_dd));
            return LimitLaw{HalfNormal{sigma}, LawScaling::divide_by_sqrt_n};
        }
        const Rational p = abs(c.drift) / c.p_one;
        return LimitLaw{Geometric{to_double(p)}, LawScaling::none};
    }

    if (s == Statistic::sign_changes && f == PathFamily::walk) {
        if (zero_drift) {
            const double sigma = 0.5 * std::sqrt(to_double(c.p_one_dd / c.p_one));
            return LimitLaw{HalfNormal{sigma}, LawScaling::divide_by_sqrt_n};
        }
        // ratio of the geometric = lighter side over heavier side
        const Rational ratio = c.drift < 0 ? w.p_plus / w.p_minus : w.p_minus / w.p_plus;
        return LimitLaw{Geometric{to_double(1 - ratio)}, LawScaling::none};
    }

    if (s == Statistic::sign_changes && f == PathFamily::bridge) {
        const double sigma =
            0.5 * c.tau_d * std::sqrt(c.p_tau_dd.value() / c.p_tau.value());
        return LimitLaw{Rayleigh{sigma}, LawScaling::divide_by_sqrt_n};
    }

    if (s == Statistic::height && f == PathFamily::walk) {
        if (zero_drift) {
            const double sigma = std::sqrt(to_double(c.p_one_dd / c.p_one));
            return LimitLaw{HalfNormal{sigma}, LawScaling::divide_by_sqrt_n};
        }
        if (c.drift < 0) {
            const Rational ratio = w.p_plus / w.p_minus;
            return LimitLaw{Geometric{to_double(1 - ratio)}, LawScaling::none};
        }
        const Rational mu = c.drift / c.p_one;
        const Rational var = 1 - w.p_zero / c.p_one - mu * mu;
        LimitLaw law{Normal{0.0, 1.0}, LawScaling::standardize};
        law.mu_rate = to_double(mu);
        law.sigma_rate = std::sqrt(to_double(var));
        return law;
    }

    throw std::invalid_argument("no limit law catalogued for " + name(s) + "/" + name(f));
}

double SchemeValue::value() const {
    if (const auto* q = std::get_if<QuadReal>(&v_)) return q->value();
    return std::get<double>(v_);
}

bool SchemeValue::is_zero(double tol) const {
    if (const auto* q = std::get_if<QuadReal>(&v_)) return q->is_zero();
    return std::abs(std::get<double>(v_)) <= tol;
}

std::string SchemeValue::str() const {
    if (const auto* q = std::get_if<QuadReal>(&v_)) return q->str();
    return std::to_string(std::get<double>(v_));
}

SchemeReport check_scheme(const SchemeInstance& inst, double tol) {
    if (!(inst.rho.value() > 0)) {
        throw std::invalid_argument("scheme radius rho must be positive");
    }
    SchemeReport report;
    auto push = [&](const std::string& name, const SchemeValue& v, bool require_zero) {
        const bool zero = v.is_zero(tol);
        report.conditions.push_back(
            SchemeCondition{name, require_zero, v.value(), require_zero ? zero : !zero});
    };
    push("g(rho,1) = 0", inst.g, true);
    push("h(rho,1) = 0", inst.h, true);
    push("g_u(rho,1) = 0", inst.g_u, true);
    push("g_uu(rho,1) = 0", inst.g_uu, true);
    push("g_z(rho,1) != 0", inst.g_z, false);
    push("h_u(rho,1) != 0", inst.h_u, false);

    report.all_passed = true;
    for (const auto& cond : report.conditions) report.all_passed &= cond.passed;

    if (report.all_passed) {
        report.sigma =
            std::sqrt(2.0) * inst.h_u.value() / (inst.rho.value() * inst.g_z.value());
    }
    report.note =
        "Algebraic conditions only: the square-root factorization itself, the absence of "
        "other singularities on |z| <= rho, and analyticity in u near 1 are assumed, not "
        "verified.";
    if (report.sigma && !(*report.sigma > 0)) {
        report.note += " Computed sigma is not positive; check the orientation of g and h.";
    }
    return report;
}

SchemeInstance builtin_scheme(const StepWeights& w, Statistic s) {
    if (drift(w) != 0) {
        throw std::invalid_argument(
            "built-in scheme instances cover the zero-drift case only (p_minus == p_plus)");
    }
    const Rational p_one = jump_at_one(w);
    const Rational p_one_dd = jump_second_derivative_at_one(w);

    SchemeInstance inst;
    inst.rho = SchemeValue(Rational(1) / p_one);
    inst.g = SchemeValue(Rational(0));
    inst.g_u = SchemeValue(Rational(0));
    inst.g_uu = SchemeValue(Rational(0));
    inst.h = SchemeValue(Rational(0));
    inst.g_z = SchemeValue(-p_one);

    Rational radicand;
    switch (s) {
        case Statistic::returns_to_zero:
            inst.label = "returns/walk";
            radicand = p_one / (2 * p_one_dd);
            break;
        case Statistic::sign_changes:
            inst.label = "signs/walk";
            radicand = p_one_dd / (8 * p_one);
            break;
        case Statistic::height:
            inst.label = "height/walk";
            radicand = p_one_dd / (2 * p_one);
            break;
        default:
            throw std::invalid_argument("no built-in scheme instance for " + name(s));
    }
    inst.h_u = SchemeValue(QuadReal(Rational(0), Rational(-1), radicand));
    return inst;
}

HalfNormalMoments half_normal_moments(double sigma, std::int64_t n) {
    const double nn = static_cast<double>(n);
    return HalfNormalMoments{sigma * std::sqrt(2.0 * nn / kPi),
                             sigma * sigma * (1.0 - 2.0 / kPi) * nn};
}

double local_law_density(double sigma, std::int64_t n, std::int64_t k) {
    const double nn = static_cast<double>(n);
    const double kk = static_cast<double>(k);
    return (1.0 / sigma) * std::sqrt(2.0 / (kPi * nn)) *
           std::exp(-kk * kk / (2.0 * sigma * sigma * nn));
}

}  // namespace motzkin
