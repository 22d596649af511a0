#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "motzkin/path_enum.hpp"
#include "motzkin/rational.hpp"
#include "motzkin/series.hpp"
#include "motzkin/step_model.hpp"
#include "motzkin/ujet.hpp"

namespace motzkin {

// The kernel-method building blocks, all truncated at one shared order:
//   W  full walks               1 / (1 - z P(1))
//   B  bridges                  z u1'(z) / u1(z)
//   E  excursions               u1(z) / (p_minus z)
//   M  meanders                 (1 - u1(z)) W
//   A  arches                   1 - 1/B     (bridges touching 0 only at the ends)
//   C  chains                   1/(1 - p_zero z)   (runs of level steps on the axis)
//   E1 E/C - 1                  (excursion blocks with axis-level steps stripped)
//   T  W/B                      (walk tail after the last visit to the axis)
template <typename Scalar>
struct BaseSeries {
    Scalar p_minus{}, p_zero{}, p_plus{};
    Series<Scalar> u1, W, B, E, M, A, C, E1, T;

    int order() const { return W.order(); }
};

template <typename Scalar>
BaseSeries<Scalar> base_series(const Scalar& pm, const Scalar& p0, const Scalar& pp, int order) {
    if (order < 1) throw std::invalid_argument("base series need order >= 1");
    BaseSeries<Scalar> b;
    b.p_minus = pm;
    b.p_zero = p0;
    b.p_plus = pp;
    const Scalar p1 = pm + p0 + pp;

    Series<Scalar> u1_long = u1_series<Scalar>(pm, p0, pp, order + 1);
    Series<Scalar> e = shifted_down(u1_long);  // u1/z, constant term p_minus
    b.u1 = truncated(u1_long, order);
    b.W = Series<Scalar>::geometric(p1, order);
    const Scalar inv_pm = Scalar(1) / pm;
    b.E = e * inv_pm;
    b.B = (e + shifted_up(derivative(e))) / e;  // z u1'/u1 = 1 + z e'/e
    b.M = (Series<Scalar>::one(order) - b.u1) * b.W;
    b.A = Series<Scalar>::one(order) - Series<Scalar>::one(order) / b.B;
    b.C = Series<Scalar>::geometric(p0, order);
    // E/C = E * (1 - p_zero z), cheaper than a division
    Series<Scalar> one_minus_p0z(order);
    one_minus_p0z[0] = Scalar(1);
    if (order >= 1) one_minus_p0z[1] = -p0;
    b.E1 = b.E * one_minus_p0z - Series<Scalar>::one(order);
    b.T = b.W / b.B;
    return b;
}

BaseSeries<Rational> base_series(const StepWeights& w, int order);

// Float-path base with weights normalized by P(1), so each q is a step
// probability and every coefficient is a bounded probability mass. Raw
// length-n weights are the normalized ones times P(1)^n, which would overflow
// doubles near n ~ 650 for unit weights; the normalized model never does.
BaseSeries<double> base_series_normalized(const StepWeights& w, int order);

// The four statistic/family pairs whose bivariate generating functions the
// toolkit models.
enum class ModelId { returns_walk, signs_walk, signs_bridge, height_walk };

ModelId model_for(Statistic s, PathFamily f);
std::string name(ModelId m);
Statistic statistic_of(ModelId m);
PathFamily family_of(ModelId m);

// Walks the coefficient series [u^k] of the model's bivariate GF in k order,
// one series multiplication per advance:
//   returns_walk : [u^k] = T A^k
//   signs_bridge : [u^k] = 2C E1^{k+1} + [k=0] C
//   signs_walk   : [u^0] = T(C + 2C E1) - (T-1)(E-C)
//                  [u^k] = T 2C E1^{k+1} + (T-1)(E-C)(1-E1) E1^{k-1},  k >= 1
//   height_walk  : [u^h] = W (1-v) v^h,  v = (p_plus/p_minus) u1
template <typename Scalar>
class PmfCursor {
public:
    PmfCursor(const BaseSeries<Scalar>& base, ModelId model) : model_(model) {
        const int n = base.order();
        const Series<Scalar> one = Series<Scalar>::one(n);
        switch (model) {
            case ModelId::returns_walk:
                step_ = base.A;
                current_ = base.T;
                break;
            case ModelId::signs_bridge: {
                step_ = base.E1;
                Series<Scalar> twoC = base.C * Scalar(2);
                aux_ = twoC * base.E1 * base.E1;  // becomes [u^1] on first advance
                current_ = base.C + twoC * base.E1;
                break;
            }
            case ModelId::signs_walk: {
                step_ = base.E1;
                Series<Scalar> twoC = base.C * Scalar(2);
                Series<Scalar> t1 = base.T - one;
                Series<Scalar> emc = base.E - base.C;
                current_ = base.T * (base.C + twoC * base.E1) - t1 * emc;
                aux_ = base.T * twoC * base.E1 * base.E1;       // T 2C E1^{k+1} at k=1
                aux2_ = t1 * emc * (one - base.E1);             // (T-1)(E-C)(1-E1) E1^{k-1} at k=1
                break;
            }
            case ModelId::height_walk: {
                const Scalar ratio = base.p_plus / base.p_minus;
                Series<Scalar> v = base.u1 * ratio;
                step_ = v;
                current_ = base.W * (one - v);
                break;
            }
        }
    }

    std::int64_t k() const { return k_; }

    // Weight series of paths with statistic value exactly k (coefficient of
    // u^k; not normalized by the family total).
    const Series<Scalar>& coefficient() const { return current_; }

    void advance() {
        ++k_;
        switch (model_) {
            case ModelId::returns_walk:
            case ModelId::height_walk:
                current_ = current_ * step_;
                break;
            case ModelId::signs_bridge:
                current_ = aux_;
                aux_ = aux_ * step_;
                break;
            case ModelId::signs_walk:
                current_ = aux_ + aux2_;
                aux_ = aux_ * step_;
                aux2_ = aux2_ * step_;
                break;
        }
    }

private:
    ModelId model_;
    std::int64_t k_ = 0;
    Series<Scalar> current_, step_, aux_, aux2_;
};

// Coefficient of u^k via the cursor (k+1 multiplications).
template <typename Scalar>
Series<Scalar> pmf_coefficient_series(const BaseSeries<Scalar>& base, ModelId model,
                                      std::int64_t k) {
    PmfCursor<Scalar> c(base, model);
    for (std::int64_t i = 0; i < k; ++i) c.advance();
    return c.coefficient();
}

// Family weight series the pmf normalizes against (walk models: W, bridge: B).
template <typename Scalar>
const Series<Scalar>& family_total_series(const BaseSeries<Scalar>& base, ModelId model) {
    return model == ModelId::signs_bridge ? base.B : base.W;
}

// Degree-2 jet of the bivariate GF around u = 1; moments fall out of it.
template <typename Scalar>
UJet<Scalar> model_jet(const BaseSeries<Scalar>& base, ModelId model) {
    const int n = base.order();
    const Series<Scalar> one = Series<Scalar>::one(n);
    switch (model) {
        case ModelId::returns_walk: {
            Series<Scalar> ab = base.A * base.B;
            return UJet<Scalar>(base.W, base.W * ab, base.W * ab * ab);
        }
        case ModelId::signs_bridge: {
            Series<Scalar> g = base.E1 / (one - base.E1);
            Series<Scalar> twoCg = base.C * Scalar(2) * g;
            return UJet<Scalar>(base.C + twoCg, twoCg * g, twoCg * g * g);
        }
        case ModelId::signs_walk: {
            Series<Scalar> g = base.E1 / (one - base.E1);
            Series<Scalar> twoCg = base.C * Scalar(2) * g;
            UJet<Scalar> bridge(base.C + twoCg, twoCg * g, twoCg * g * g);
            Series<Scalar> binv = one / (one - base.E1);
            Series<Scalar> emc = base.E - base.C;
            UJet<Scalar> bplus(emc * binv, emc * binv * binv * base.E1,
                               emc * binv * binv * binv * base.E1 * base.E1);
            UJet<Scalar> mark_minus_one(Series<Scalar>(n), one, Series<Scalar>(n));
            return bridge * base.T + bplus * (base.T - one) * mark_minus_one;
        }
        case ModelId::height_walk: {
            const Scalar ratio = base.p_plus / base.p_minus;
            Series<Scalar> v = base.u1 * ratio;
            Series<Scalar> g = v / (one - v);
            return UJet<Scalar>(base.W, base.W * g, base.W * g * g);
        }
    }
    throw std::logic_error("bad model");
}

// Exact mean of the statistic at each length 0..order (walk families divide
// by W, bridges by B). Entries where the family weight vanishes are skipped.
std::vector<Rational> exact_mean_sweep(const StepWeights& w, ModelId model, int order);

// --- large-n float path -------------------------------------------------------

// Probability mass functions at several lengths from one normalized base.
// pmf[i][k] = P[statistic = k | family, length ns[i]]; extraction stops once
// the cumulative mass reaches 1 - tail (or k exceeds the length).
struct PmfTable {
    std::vector<std::int64_t> ns;
    std::vector<std::vector<double>> pmf;
};

PmfTable model_pmf_table(const StepWeights& w, ModelId model, std::vector<std::int64_t> ns,
                         double tail = 1e-12);

// Height gets a dedicated path: P[height > h at length n] is the prefix sum
// of the coefficients of v^{h+1} under normalized weights, so each threshold
// costs one multiplication; the pmf is the difference of successive survivals.
PmfTable height_pmf_table(const StepWeights& w, std::vector<std::int64_t> ns, double tail = 1e-12);

// Mean/variance of the statistic at the given lengths (float path, exact
// formulas from the jet).
struct MomentRow {
    std::int64_t n;
    double mean;
    double variance;
};

std::vector<MomentRow> model_moments(const StepWeights& w, ModelId model,
                                     const std::vector<std::int64_t>& ns);

}  // namespace motzkin
