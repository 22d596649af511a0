#include "motzkin/gf_models.hpp"

#include <algorithm>
#include <stdexcept>

namespace motzkin {

BaseSeries<Rational> base_series(const StepWeights& w, int order) {
    return base_series<Rational>(w.p_minus, w.p_zero, w.p_plus, order);
}

BaseSeries<double> base_series_normalized(const StepWeights& w, int order) {
    const Rational p1 = jump_at_one(w);
    return base_series<double>(to_double(w.p_minus / p1), to_double(w.p_zero / p1),
                               to_double(w.p_plus / p1), order);
}

ModelId model_for(Statistic s, PathFamily f) {
    if (s == Statistic::returns_to_zero && f == PathFamily::walk) return ModelId::returns_walk;
    if (s == Statistic::sign_changes && f == PathFamily::walk) return ModelId::signs_walk;
    if (s == Statistic::sign_changes && f == PathFamily::bridge) return ModelId::signs_bridge;
    if (s == Statistic::height && f == PathFamily::walk) return ModelId::height_walk;
    throw std::invalid_argument("no generating-function model for " + name(s) + "/" + name(f));
}

std::string name(ModelId m) {
    return name(statistic_of(m)) + "/" + name(family_of(m));
}

Statistic statistic_of(ModelId m) {
    switch (m) {
        case ModelId::returns_walk: return Statistic::returns_to_zero;
        case ModelId::signs_walk:
        case ModelId::signs_bridge: return Statistic::sign_changes;
        case ModelId::height_walk: return Statistic::height;
    }
    throw std::logic_error("bad model");
}

PathFamily family_of(ModelId m) {
    return m == ModelId::signs_bridge ? PathFamily::bridge : PathFamily::walk;
}

std::vector<Rational> exact_mean_sweep(const StepWeights& w, ModelId model, int order) {
    BaseSeries<Rational> base = base_series(w, order);
    UJet<Rational> jet = model_jet(base, model);
    std::vector<Rational> out;
    out.reserve(order + 1);
    for (int n = 0; n <= order; ++n) out.push_back(jet.j1[n] / jet.j0[n]);
    return out;
}

namespace {

std::int64_t max_length(const std::vector<std::int64_t>& ns) {
    if (ns.empty()) throw std::invalid_argument("need at least one length");
    std::int64_t m = 0;
    for (std::int64_t n : ns) {
        if (n < 1) throw std::invalid_argument("lengths must be >= 1");
        m = std::max(m, n);
    }
    return m;
}

}  // namespace

PmfTable model_pmf_table(const StepWeights& w, ModelId model, std::vector<std::int64_t> ns,
                         double tail) {
    if (model == ModelId::height_walk) return height_pmf_table(w, std::move(ns), tail);
    const std::int64_t maxn = max_length(ns);
    BaseSeries<double> base = base_series_normalized(w, static_cast<int>(maxn));
    const Series<double>& total_series = family_total_series(base, model);

    PmfTable table;
    table.ns = std::move(ns);
    table.pmf.resize(table.ns.size());
    std::vector<double> cum(table.ns.size(), 0.0);
    std::vector<bool> done(table.ns.size(), false);

    PmfCursor<double> cursor(base, model);
    for (std::int64_t k = 0;; cursor.advance(), ++k) {
        bool any = false;
        const Series<double>& coeff = cursor.coefficient();
        for (std::size_t i = 0; i < table.ns.size(); ++i) {
            if (done[i]) continue;
            const std::int64_t n = table.ns[i];
            const double total = total_series[static_cast<int>(n)];
            double p = std::max(coeff[static_cast<int>(n)] / total, 0.0);
            table.pmf[i].push_back(p);
            cum[i] += p;
            if (cum[i] >= 1.0 - tail || k >= n) {
                done[i] = true;
            } else {
                any = true;
            }
        }
        if (!any) break;
    }
    return table;
}

PmfTable height_pmf_table(const StepWeights& w, std::vector<std::int64_t> ns, double tail) {
    const std::int64_t maxn = max_length(ns);
    const Rational p1 = jump_at_one(w);
    Series<double> u1 = u1_series<double>(to_double(w.p_minus / p1), to_double(w.p_zero / p1),
                                          to_double(w.p_plus / p1), static_cast<int>(maxn));
    Series<double> v = u1 * to_double(w.p_plus / w.p_minus);

    PmfTable table;
    table.ns = std::move(ns);
    table.pmf.resize(table.ns.size());
    std::vector<double> survival(table.ns.size(), 1.0);
    std::vector<bool> done(table.ns.size(), false);

    Series<double> power = v;  // v^{h+1} at threshold h
    for (std::int64_t h = 0;; ++h) {
        const std::vector<double> prefix = prefix_sums(power);
        bool any = false;
        for (std::size_t i = 0; i < table.ns.size(); ++i) {
            if (done[i]) continue;
            const std::int64_t n = table.ns[i];
            // P[height > h] at length n; clamp against float drift
            double s = std::clamp(prefix[static_cast<std::size_t>(n)], 0.0, survival[i]);
            table.pmf[i].push_back(survival[i] - s);
            survival[i] = s;
            if (s < tail || h >= n) {
                done[i] = true;
            } else {
                any = true;
            }
        }
        if (!any) break;
        power = power * v;
    }
    return table;
}

std::vector<MomentRow> model_moments(const StepWeights& w, ModelId model,
                                     const std::vector<std::int64_t>& ns) {
    const std::int64_t maxn = max_length(ns);
    BaseSeries<double> base = base_series_normalized(w, static_cast<int>(maxn));
    UJet<double> jet = model_jet(base, model);
    std::vector<MomentRow> rows;
    rows.reserve(ns.size());
    for (std::int64_t n : ns) {
        const double tot = jet.j0[static_cast<int>(n)];
        const double mean = jet.j1[static_cast<int>(n)] / tot;
        const double second_factorial = 2.0 * jet.j2[static_cast<int>(n)] / tot;
        rows.push_back({n, mean, second_factorial + mean - mean * mean});
    }
    return rows;
}

}  // namespace motzkin
