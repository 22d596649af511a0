#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

namespace motzkin {

namespace detail {

// Plain accumulation for exact scalars; Neumaier-compensated for doubles so
// long convolutions at order several thousand keep ~1 ulp instead of O(n) ulp.
template <typename Scalar>
struct Accumulator {
    Scalar sum{0};
    void add(const Scalar& x) { sum += x; }
    Scalar result() const { return sum; }
};

template <>
struct Accumulator<double> {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double result() const { return sum + comp; }
};

}  // namespace detail

// Truncated power series c[0] + c[1] z + ... + c[N] z^N.
//
// The truncation order N is explicit state. Binary operations truncate to the
// smaller operand order; nothing ever extends a series implicitly (padding is
// a deliberate call to extended()). This keeps "known up to order N" honest
// through every derived quantity.
template <typename Scalar>
class Series {
public:
    Series() : coeffs_(1, Scalar(0)) {}

    explicit Series(int order) : coeffs_(check_order(order) + 1, Scalar(0)) {}

    explicit Series(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) {
            throw std::invalid_argument("series needs at least the constant coefficient");
        }
    }

    Series(std::initializer_list<Scalar> coeffs) : coeffs_(coeffs) {
        if (coeffs_.empty()) {
            throw std::invalid_argument("series needs at least the constant coefficient");
        }
    }

    static Series constant(const Scalar& c, int order) {
        Series s(order);
        s.coeffs_[0] = c;
        return s;
    }

    static Series one(int order) { return constant(Scalar(1), order); }

    // 1/(1 - r z) truncated at `order`.
    static Series geometric(const Scalar& r, int order) {
        Series s(order);
        s.coeffs_[0] = Scalar(1);
        for (int i = 1; i <= order; ++i) s.coeffs_[i] = s.coeffs_[i - 1] * r;
        return s;
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }

    const Scalar& operator[](int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
    Scalar& operator[](int i) { return coeffs_[static_cast<std::size_t>(i)]; }

    const std::vector<Scalar>& coefficients() const { return coeffs_; }

    // Index of the first nonzero coefficient, or order()+1 if all zero.
    // Lets multiplication skip the zero prefix (E1, arch powers, v^h all have
    // long zero heads that would otherwise dominate the convolution cost).
    int lead() const {
        for (int i = 0; i <= order(); ++i) {
            if (!(coeffs_[static_cast<std::size_t>(i)] == Scalar(0))) return i;
        }
        return order() + 1;
    }

    bool is_zero() const { return lead() > order(); }

private:
    static int check_order(int order) {
        if (order < 0) throw std::invalid_argument("series order must be >= 0");
        return order;
    }

    std::vector<Scalar> coeffs_;
};

// --- order manipulation -----------------------------------------------------

template <typename Scalar>
Series<Scalar> truncated(const Series<Scalar>& a, int order) {
    if (order < 0) throw std::invalid_argument("series order must be >= 0");
    if (order >= a.order()) return a;
    std::vector<Scalar> c(a.coefficients().begin(), a.coefficients().begin() + order + 1);
    return Series<Scalar>(std::move(c));
}

// Zero-pads up to `order`. Only correct when the caller knows the missing
// coefficients really are zero (polynomials, Newton iteration scratch).
template <typename Scalar>
Series<Scalar> extended(const Series<Scalar>& a, int order) {
    if (order <= a.order()) return truncated(a, order);
    std::vector<Scalar> c = a.coefficients();
    c.resize(static_cast<std::size_t>(order) + 1, Scalar(0));
    return Series<Scalar>(std::move(c));
}

// --- ring operations ---------------------------------------------------------

template <typename Scalar>
Series<Scalar> operator+(const Series<Scalar>& a, const Series<Scalar>& b) {
    const int n = std::min(a.order(), b.order());
    Series<Scalar> c(n);
    for (int i = 0; i <= n; ++i) c[i] = a[i] + b[i];
    return c;
}

template <typename Scalar>
Series<Scalar> operator-(const Series<Scalar>& a, const Series<Scalar>& b) {
    const int n = std::min(a.order(), b.order());
    Series<Scalar> c(n);
    for (int i = 0; i <= n; ++i) c[i] = a[i] - b[i];
    return c;
}

template <typename Scalar>
Series<Scalar> operator-(const Series<Scalar>& a) {
    Series<Scalar> c(a.order());
    for (int i = 0; i <= a.order(); ++i) c[i] = -a[i];
    return c;
}

template <typename Scalar>
Series<Scalar> operator*(const Series<Scalar>& a, const Series<Scalar>& b) {
    const int n = std::min(a.order(), b.order());
    Series<Scalar> c(n);
    const int la = a.lead();
    const int lb = b.lead();
    if (la + lb > n) return c;
    for (int i = la + lb; i <= n; ++i) {
        detail::Accumulator<Scalar> acc;
        // a-index j must satisfy j >= la, i-j >= lb, j <= a.order, i-j <= b.order
        const int lo = std::max({la, i - b.order(), 0});
        const int hi = std::min(a.order(), i - lb);
        for (int j = lo; j <= hi; ++j) acc.add(a[j] * b[i - j]);
        c[i] = acc.result();
    }
    return c;
}

template <typename Scalar>
Series<Scalar> operator*(const Series<Scalar>& a, const Scalar& s) {
    Series<Scalar> c(a.order());
    for (int i = 0; i <= a.order(); ++i) c[i] = a[i] * s;
    return c;
}

template <typename Scalar>
Series<Scalar> operator*(const Scalar& s, const Series<Scalar>& a) {
    return a * s;
}

// a / b with b having an invertible (nonzero) constant term.
template <typename Scalar>
Series<Scalar> operator/(const Series<Scalar>& a, const Series<Scalar>& b) {
    if (b[0] == Scalar(0)) {
        throw std::domain_error("series division needs a nonzero constant term in the divisor");
    }
    const int n = std::min(a.order(), b.order());
    Series<Scalar> c(n);
    for (int i = 0; i <= n; ++i) {
        detail::Accumulator<Scalar> acc;
        acc.add(a[i]);
        const int hi = std::min(i, b.order());
        for (int j = 1; j <= hi; ++j) acc.add(-(b[j] * c[i - j]));
        c[i] = acc.result() / b[0];
    }
    return c;
}

template <typename Scalar>
bool operator==(const Series<Scalar>& a, const Series<Scalar>& b) {
    if (a.order() != b.order()) return false;
    for (int i = 0; i <= a.order(); ++i) {
        if (!(a[i] == b[i])) return false;
    }
    return true;
}

// --- calculus / structure ----------------------------------------------------

// Termwise derivative. Order drops by one (a constant series stays order 0).
template <typename Scalar>
Series<Scalar> derivative(const Series<Scalar>& a) {
    if (a.order() == 0) return Series<Scalar>(0);
    Series<Scalar> c(a.order() - 1);
    for (int i = 0; i < a.order(); ++i) c[i] = Scalar(i + 1) * a[i + 1];
    return c;
}

// Multiply by z: order grows by one, nothing is lost.
template <typename Scalar>
Series<Scalar> shifted_up(const Series<Scalar>& a) {
    std::vector<Scalar> c(static_cast<std::size_t>(a.order()) + 2, Scalar(0));
    for (int i = 0; i <= a.order(); ++i) c[static_cast<std::size_t>(i) + 1] = a[i];
    return Series<Scalar>(std::move(c));
}

// Divide by z; requires a zero constant term. Order drops by one.
template <typename Scalar>
Series<Scalar> shifted_down(const Series<Scalar>& a) {
    if (!(a[0] == Scalar(0))) {
        throw std::domain_error("dividing a series by z needs a zero constant term");
    }
    if (a.order() == 0) return Series<Scalar>(0);
    std::vector<Scalar> c(a.coefficients().begin() + 1, a.coefficients().end());
    return Series<Scalar>(std::move(c));
}

// Square root by quadratic Newton iteration y <- (y + a/y)/2, doubling the
// correct order each pass. Requires constant term exactly 1 so no scalar
// square root is ever needed; in exact arithmetic the result squares back to
// the input through the full order.
template <typename Scalar>
Series<Scalar> sqrt(const Series<Scalar>& a) {
    if (!(a[0] == Scalar(1))) {
        throw std::domain_error("series square root requires constant term 1");
    }
    const int n = a.order();
    Series<Scalar> y = Series<Scalar>::one(0);
    const Scalar half = Scalar(1) / Scalar(2);
    while (y.order() < n) {
        const int t = std::min(2 * y.order() + 1, n);
        Series<Scalar> yt = extended(y, t);
        y = (yt + truncated(a, t) / yt) * half;
    }
    return y;
}

// Horner evaluation of the truncated polynomial at a point.
template <typename Scalar>
Scalar evaluate(const Series<Scalar>& a, const Scalar& z) {
    Scalar acc = a[a.order()];
    for (int i = a.order() - 1; i >= 0; --i) acc = acc * z + a[i];
    return acc;
}

// Compensated prefix sums of the coefficients: out[n] = sum_{j<=n} a[j].
// Under probability-normalized weights this is coefficient extraction against
// the full-walk series, which is what the large-n CDF path leans on.
inline std::vector<double> prefix_sums(const Series<double>& a) {
    std::vector<double> out(static_cast<std::size_t>(a.order()) + 1);
    detail::Accumulator<double> acc;
    for (int i = 0; i <= a.order(); ++i) {
        acc.add(a[i]);
        out[static_cast<std::size_t>(i)] = acc.result();
    }
    return out;
}

}  // namespace motzkin
