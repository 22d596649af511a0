#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "motzkin/rational.hpp"

namespace motzkin {

// Exact square root of a nonnegative rational, when one exists.
inline std::optional<Rational> exact_sqrt(const Rational& q) {
    if (q < 0) return std::nullopt;
    if (q == 0) return Rational(0);
    const mpz_class& num = q.get_num();
    const mpz_class& den = q.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) {
        return std::nullopt;
    }
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational r(rn, rd);
    r.canonicalize();
    return r;
}

// Element of the real quadratic extension Q(sqrt(r)): value a + b*sqrt(r)
// with rational a, b and a fixed nonnegative rational radicand r.
//
// Normalization: if r is a perfect square (or b == 0) the value collapses to
// pure rational form (b = 0, r = 0). After that, b != 0 implies sqrt(r) is
// irrational, so a + b*sqrt(r) = 0 only when a = b = 0 and reciprocals never
// divide by zero. Mixed-radicand arithmetic is a logic error and throws.
class QuadReal {
public:
    QuadReal() : a_(0), b_(0), r_(0) {}
    QuadReal(Rational a) : a_(std::move(a)), b_(0), r_(0) {}

    QuadReal(Rational a, Rational b, Rational r) : a_(std::move(a)), b_(std::move(b)), r_(std::move(r)) {
        if (r_ < 0) throw std::domain_error("negative radicand in quadratic extension");
        normalize();
    }

    const Rational& rational_part() const { return a_; }
    const Rational& root_coefficient() const { return b_; }
    const Rational& radicand() const { return r_; }

    bool is_rational() const { return b_ == 0; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    // Exact value as a rational; throws when the value is irrational.
    Rational as_rational() const {
        if (!is_rational()) {
            throw std::domain_error("quadratic extension value is irrational");
        }
        return a_;
    }

    double value() const {
        double v = to_double(a_);
        if (b_ != 0) v += to_double(b_) * std::sqrt(to_double(r_));
        return v;
    }

    friend QuadReal operator+(const QuadReal& x, const QuadReal& y) {
        Rational r = merged_radicand(x, y);
        return QuadReal(x.a_ + y.a_, x.b_ + y.b_, r);
    }
    friend QuadReal operator-(const QuadReal& x, const QuadReal& y) {
        Rational r = merged_radicand(x, y);
        return QuadReal(x.a_ - y.a_, x.b_ - y.b_, r);
    }
    friend QuadReal operator*(const QuadReal& x, const QuadReal& y) {
        Rational r = merged_radicand(x, y);
        return QuadReal(x.a_ * y.a_ + x.b_ * y.b_ * r, x.a_ * y.b_ + x.b_ * y.a_, r);
    }
    friend QuadReal operator-(const QuadReal& x) { return QuadReal(-x.a_, -x.b_, x.r_); }

    // 1/(a + b sqrt(r)) = (a - b sqrt(r)) / (a^2 - b^2 r).
    QuadReal reciprocal() const {
        if (is_zero()) throw std::domain_error("reciprocal of zero");
        if (is_rational()) return QuadReal(Rational(1) / a_);
        Rational d = a_ * a_ - b_ * b_ * r_;
        // d == 0 would force sqrt(r) = |a/b| rational, excluded by normalization.
        return QuadReal(a_ / d, -b_ / d, r_);
    }

    friend QuadReal operator/(const QuadReal& x, const QuadReal& y) { return x * y.reciprocal(); }

    friend bool operator==(const QuadReal& x, const QuadReal& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_ == 0 || x.r_ == y.r_);
    }

    std::string str() const {
        if (is_rational()) return to_string(a_);
        std::string out;
        if (a_ != 0) out += to_string(a_) + " + ";
        out += to_string(b_) + "*sqrt(" + to_string(r_) + ")";
        return out;
    }

private:
    void normalize() {
        if (b_ == 0) {
            r_ = 0;
            return;
        }
        if (auto s = exact_sqrt(r_)) {
            a_ += b_ * *s;
            b_ = 0;
            r_ = 0;
        }
    }

    static Rational merged_radicand(const QuadReal& x, const QuadReal& y) {
        if (x.b_ == 0) return y.r_;
        if (y.b_ == 0) return x.r_;
        if (x.r_ != y.r_) {
            throw std::domain_error("mixing different radicands in quadratic extension");
        }
        return x.r_;
    }

    Rational a_, b_, r_;
};

// sqrt of a nonnegative rational as a QuadReal (exact when possible).
inline QuadReal quad_sqrt(const Rational& q) {
    if (q < 0) throw std::domain_error("square root of negative rational");
    return QuadReal(Rational(0), Rational(1), q);
}

}  // namespace motzkin
