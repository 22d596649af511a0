#include "motzkin/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace motzkin {

namespace {

// Law-side evaluation point for atom k under the law's scaling.
double scaled_point(const LimitLaw& law, std::int64_t n, std::int64_t k, bool midpoint) {
    const double kk = static_cast<double>(k);
    const double nn = static_cast<double>(n);
    switch (law.scaling) {
        case LawScaling::none:
            return kk;  // discrete-against-discrete: compare at the atom itself
        case LawScaling::divide_by_sqrt_n:
            return (kk + (midpoint ? 0.5 : 0.0)) / std::sqrt(nn);
        case LawScaling::standardize:
            return (kk + (midpoint ? 0.5 : 0.0) - law.mu_rate * nn) /
                   (law.sigma_rate * std::sqrt(nn));
    }
    throw std::logic_error("bad scaling");
}

nlohmann::json law_json(const LimitLaw& law) {
    nlohmann::json j;
    j["law"] = law_name(law);
    if (const auto* g = std::get_if<Geometric>(&law.dist)) {
        j["p"] = g->p;
    } else if (const auto* h = std::get_if<HalfNormal>(&law.dist)) {
        j["sigma"] = h->sigma;
    } else if (const auto* r = std::get_if<Rayleigh>(&law.dist)) {
        j["sigma"] = r->sigma;
    } else {
        j["mu"] = law.mu_rate;
        j["sigma_sq"] = law.sigma_rate * law.sigma_rate;
    }
    switch (law.scaling) {
        case LawScaling::none: j["scaling"] = "none"; break;
        case LawScaling::divide_by_sqrt_n: j["scaling"] = "divide_by_sqrt_n"; break;
        case LawScaling::standardize: j["scaling"] = "standardize"; break;
    }
    return j;
}

}  // namespace

std::string law_json_string(const LimitLaw& law) { return law_json(law).dump(); }

double kolmogorov_distance(const std::vector<double>& pmf, const LimitLaw& law, std::int64_t n,
                           const KsOptions& opts) {
    if (pmf.empty()) throw std::invalid_argument("kolmogorov distance needs a nonempty pmf");
    detail::Accumulator<double> cdf;
    double d = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        cdf.add(pmf[k]);
        const double x = scaled_point(law, n, static_cast<std::int64_t>(k), opts.midpoint);
        d = std::max(d, std::abs(cdf.result() - law_cdf(law, x)));
    }
    // past the last enumerated atom both CDFs sit near 1; the gap is bounded
    // by the unenumerated mass
    d = std::max(d, std::abs(1.0 - cdf.result()));
    return d;
}

double tv_distance_geometric(const std::vector<double>& pmf, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("geometric parameter must lie in (0,1)");
    }
    detail::Accumulator<double> half_l1;
    double q = p;  // (1-p)^k p
    double mass = 0.0;
    for (double pk : pmf) {
        half_l1.add(std::abs(pk - q));
        mass += pk;
        q *= (1.0 - p);
    }
    // law tail beyond the last atom: (1-p)^{K+1} = q/p; empirical tail: 1-mass
    const double tail = q / p + std::max(0.0, 1.0 - mass);
    return 0.5 * (half_l1.result() + tail);
}

double local_law_residual(const std::vector<double>& pmf, double sigma, std::int64_t n) {
    double r = 0.0;
    for (std::size_t k = 0; k < pmf.size(); ++k) {
        const double predicted = local_law_density(sigma, n, static_cast<std::int64_t>(k));
        r = std::max(r, std::abs(pmf[k] - predicted));
    }
    return r;
}

double rate_estimate(const std::vector<std::pair<std::int64_t, double>>& points) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& [n, d] : points) {
        if (!(d > 0.0)) continue;
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(d);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 3) throw std::invalid_argument("rate estimate needs at least three positive distances");
    const double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-12 * m * sxx) {
        throw std::invalid_argument("rate estimate is degenerate: all lengths coincide");
    }
    return (m * sxy - sx * sy) / denom;
}

double law_predicted_mean(const LimitLaw& law, std::int64_t n) {
    const double nn = static_cast<double>(n);
    switch (law.scaling) {
        case LawScaling::none: return law_mean(law);
        case LawScaling::divide_by_sqrt_n: return law_mean(law) * std::sqrt(nn);
        case LawScaling::standardize: return law.mu_rate * nn;
    }
    throw std::logic_error("bad scaling");
}

double law_predicted_variance(const LimitLaw& law, std::int64_t n) {
    const double nn = static_cast<double>(n);
    switch (law.scaling) {
        case LawScaling::none: return law_variance(law);
        case LawScaling::divide_by_sqrt_n: return law_variance(law) * nn;
        case LawScaling::standardize: return law.sigma_rate * law.sigma_rate * nn;
    }
    throw std::logic_error("bad scaling");
}

ConvergenceReport convergence_report(const StepWeights& w, Statistic s, PathFamily f,
                                     const std::vector<std::int64_t>& ns, const KsOptions& opts) {
    const ModelId model = model_for(s, f);
    ConvergenceReport report;
    report.model = name(model);
    report.weights = to_string(w);
    report.law = predict_law(w, s, f);

    const PmfTable table = model_pmf_table(w, model, ns, opts.tail);
    const std::vector<MomentRow> moments = model_moments(w, model, ns);

    const auto* geom = std::get_if<Geometric>(&report.law.dist);
    const auto* half = std::get_if<HalfNormal>(&report.law.dist);

    for (std::size_t i = 0; i < ns.size(); ++i) {
        ConvergenceRow row;
        row.n = ns[i];
        row.kolmogorov = kolmogorov_distance(table.pmf[i], report.law, ns[i], opts);
        if (geom) row.tv = tv_distance_geometric(table.pmf[i], geom->p);
        if (half) row.local_residual = local_law_residual(table.pmf[i], half->sigma, ns[i]);
        row.mean_ratio = moments[i].mean / law_predicted_mean(report.law, ns[i]);
        row.variance_ratio = moments[i].variance / law_predicted_variance(report.law, ns[i]);
        report.rows.push_back(row);
    }
    return report;
}

void write_csv(std::ostream& os, const ConvergenceReport& report) {
    os << "# motzkin-lab v1\n";
    os << "# convergence law=" << law_json(report.law).dump() << "\n";
    os << "model,weights,n,K,TV,mean_ratio,var_ratio,local_residual\n";
    std::ostringstream buf;
    buf.precision(12);
    for (const auto& row : report.rows) {
        buf.str("");
        buf << report.model << ",\"" << report.weights << "\"," << row.n << ','
            << row.kolmogorov << ',';
        if (row.tv) buf << *row.tv;
        buf << ',' << row.mean_ratio << ',' << row.variance_ratio << ',';
        if (row.local_residual) buf << *row.local_residual;
        os << buf.str() << "\n";
    }
}

void write_json(std::ostream& os, const ConvergenceReport& report) {
    nlohmann::json j;
    j["tool"] = "motzkin-lab";
    j["format_version"] = 1;
    j["report"] = "convergence";
    j["model"] = report.model;
    j["weights"] = report.weights;
    j["law"] = law_json(report.law);
    j["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r;
        r["model"] = report.model;
        r["weights"] = report.weights;
        r["n"] = row.n;
        r["K"] = row.kolmogorov;
        r["TV"] = row.tv ? nlohmann::json(*row.tv) : nlohmann::json(nullptr);
        r["mean_ratio"] = row.mean_ratio;
        r["var_ratio"] = row.variance_ratio;
        r["local_residual"] =
            row.local_residual ? nlohmann::json(*row.local_residual) : nlohmann::json(nullptr);
        j["rows"].push_back(r);
    }
    os << j.dump(2) << "\n";
}

}  // namespace motzkin
