#pragma once

#include <algorithm>
#include <stdexcept>

#include "motzkin/series.hpp"

namespace motzkin {

// Degree-2 Taylor jet in the mark variable u around u = 1:
//
//   F(z, u) = j0(z) + j1(z) (u-1) + j2(z) (u-1)^2 + O((u-1)^3)
//
// Enough to read off the first two factorial moments of the marked statistic:
// j0 is the unmarked counting series, [z^n] j1 / [z^n] j0 is the mean, and
// 2 [z^n] j2 / [z^n] j0 is the second factorial moment E[X(X-1)].
template <typename Scalar>
struct UJet {
    Series<Scalar> j0, j1, j2;

    UJet(Series<Scalar> a, Series<Scalar> b, Series<Scalar> c)
        : j0(std::move(a)), j1(std::move(b)), j2(std::move(c)) {
        const int n = std::min({j0.order(), j1.order(), j2.order()});
        j0 = truncated(j0, n);
        j1 = truncated(j1, n);
        j2 = truncated(j2, n);
    }

    // Embeds a plain series (no u dependence).
    static UJet from_series(const Series<Scalar>& s) {
        return UJet(s, Series<Scalar>(s.order()), Series<Scalar>(s.order()));
    }

    // The mark u itself: u = 1 + (u-1).
    static UJet mark(int order) {
        return UJet(Series<Scalar>::one(order), Series<Scalar>::one(order),
                    Series<Scalar>(order));
    }

    int order() const { return j0.order(); }
};

template <typename Scalar>
UJet<Scalar> operator+(const UJet<Scalar>& a, const UJet<Scalar>& b) {
    return UJet<Scalar>(a.j0 + b.j0, a.j1 + b.j1, a.j2 + b.j2);
}

template <typename Scalar>
UJet<Scalar> operator-(const UJet<Scalar>& a, const UJet<Scalar>& b) {
    return UJet<Scalar>(a.j0 - b.j0, a.j1 - b.j1, a.j2 - b.j2);
}

template <typename Scalar>
UJet<Scalar> operator*(const UJet<Scalar>& a, const UJet<Scalar>& b) {
    return UJet<Scalar>(a.j0 * b.j0,
                        a.j0 * b.j1 + a.j1 * b.j0,
                        a.j0 * b.j2 + a.j1 * b.j1 + a.j2 * b.j0);
}

template <typename Scalar>
UJet<Scalar> operator*(const UJet<Scalar>& a, const Series<Scalar>& s) {
    return UJet<Scalar>(a.j0 * s, a.j1 * s, a.j2 * s);
}

template <typename Scalar>
UJet<Scalar> operator*(const Series<Scalar>& s, const UJet<Scalar>& a) {
    return a * s;
}

// 1/F as a jet: with F = a0 + a1 w + a2 w^2 (w = u-1),
//   1/F = 1/a0 - (a1/a0^2) w + ((a1^2 - a0 a2)/a0^3) w^2 + O(w^3).
template <typename Scalar>
UJet<Scalar> reciprocal(const UJet<Scalar>& a) {
    if (a.j0[0] == Scalar(0)) {
        throw std::domain_error("jet reciprocal needs an invertible base series");
    }
    Series<Scalar> r0 = Series<Scalar>::one(a.order()) / a.j0;
    Series<Scalar> r0sq = r0 * r0;
    Series<Scalar> r1 = -(a.j1 * r0sq);
    Series<Scalar> r2 = (a.j1 * a.j1 - a.j0 * a.j2) * (r0sq * r0);
    return UJet<Scalar>(std::move(r0), std::move(r1), std::move(r2));
}

template <typename Scalar>
UJet<Scalar> operator/(const UJet<Scalar>& a, const UJet<Scalar>& b) {
    return a * reciprocal(b);
}

}  // namespace motzkin
