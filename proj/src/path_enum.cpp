#include "motzkin/path_enum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace motzkin {

std::string name(PathFamily f) {
    switch (f) {
        case PathFamily::walk: return "walk";
        case PathFamily::bridge: return "bridge";
        case PathFamily::meander: return "meander";
        case PathFamily::excursion: return "excursion";
    }
    throw std::logic_error("bad family");
}

std::string name(Statistic s) {
    switch (s) {
        case Statistic::returns_to_zero: return "returns";
        case Statistic::sign_changes: return "signs";
        case Statistic::height: return "height";
        case Statistic::final_altitude: return "final_altitude";
    }
    throw std::logic_error("bad statistic");
}

PathFamily parse_family(std::string_view text) {
    if (text == "walk") return PathFamily::walk;
    if (text == "bridge") return PathFamily::bridge;
    if (text == "meander") return PathFamily::meander;
    if (text == "excursion") return PathFamily::excursion;
    throw std::invalid_argument("unknown family '" + std::string(text) +
                                "' (expected walk|bridge|meander|excursion)");
}

Statistic parse_statistic(std::string_view text) {
    if (text == "returns") return Statistic::returns_to_zero;
    if (text == "signs") return Statistic::sign_changes;
    if (text == "height") return Statistic::height;
    if (text == "final_altitude") return Statistic::final_altitude;
    throw std::invalid_argument("unknown statistic '" + std::string(text) +
                                "' (expected returns|signs|height|final_altitude)");
}

std::int64_t WalkStats::statistic(Statistic s) const {
    switch (s) {
        case Statistic::returns_to_zero: return returns;
        case Statistic::sign_changes: return sign_changes;
        case Statistic::height: return height;
        case Statistic::final_altitude: return altitude;
    }
    throw std::logic_error("bad statistic");
}

namespace {

void check_length(int n, int limit = 1 << 20) {
    if (n < 0 || n > limit) throw std::invalid_argument("path length out of range");
}

// Altitude-indexed DP row; `floor_at_zero` keeps the path nonnegative
// (meanders/excursions), otherwise altitudes span [-t, t].
std::vector<Rational> family_dp_sweep(const StepWeights& w, bool floor_at_zero, bool end_at_zero,
                                      int max_n) {
    const int off = floor_at_zero ? 0 : max_n;
    const int width = floor_at_zero ? max_n + 1 : 2 * max_n + 1;
    std::vector<Rational> cur(width), next(width);
    cur[off] = 1;
    std::vector<Rational> out;
    out.reserve(max_n + 1);

    auto record = [&](const std::vector<Rational>& row) {
        if (end_at_zero) {
            out.push_back(row[off]);
        } else {
            Rational total = 0;
            for (const Rational& x : row) total += x;
            out.push_back(total);
        }
    };

    record(cur);
    for (int t = 1; t <= max_n; ++t) {
        std::fill(next.begin(), next.end(), Rational(0));
        const int lo = floor_at_zero ? 0 : off - (t - 1);
        const int hi = floor_at_zero ? t - 1 : off + (t - 1);
        for (int a = lo; a <= hi; ++a) {
            const Rational& v = cur[a];
            if (v == 0) continue;
            if (!floor_at_zero || a > 0) next[a - 1] += w.p_minus * v;
            next[a] += w.p_zero * v;
            next[a + 1] += w.p_plus * v;
        }
        std::swap(cur, next);
        record(cur);
    }
    return out;
}

}  // namespace

std::vector<Rational> count_family_sweep(const StepWeights& w, PathFamily family, int max_n) {
    check_length(max_n);
    switch (family) {
        case PathFamily::walk: return family_dp_sweep(w, false, false, max_n);
        case PathFamily::bridge: return family_dp_sweep(w, false, true, max_n);
        case PathFamily::meander: return family_dp_sweep(w, true, false, max_n);
        case PathFamily::excursion: return family_dp_sweep(w, true, true, max_n);
    }
    throw std::logic_error("bad family");
}

Rational count_family(const StepWeights& w, PathFamily family, int n) {
    return count_family_sweep(w, family, n).back();
}

Rational StatisticPmf::weight_at(std::int64_t k) const {
    for (const auto& [key, wt] : weights) {
        if (key == k) return wt;
    }
    return Rational(0);
}

Rational StatisticPmf::mean() const {
    if (total == 0) throw std::domain_error("empty family, mean undefined");
    Rational acc = 0;
    for (const auto& [k, wt] : weights) acc += Rational(static_cast<long>(k)) * wt;
    return acc / total;
}

Rational StatisticPmf::variance() const {
    if (total == 0) throw std::domain_error("empty family, variance undefined");
    Rational m = mean();
    Rational acc = 0;
    for (const auto& [k, wt] : weights) {
        Rational d = Rational(static_cast<long>(k)) - m;
        acc += d * d * wt;
    }
    return acc / total;
}

bool pmf_supported(Statistic s, PathFamily f) {
    if (s == Statistic::returns_to_zero && f == PathFamily::walk) return true;
    if (s == Statistic::sign_changes && (f == PathFamily::walk || f == PathFamily::bridge))
        return true;
    if (s == Statistic::height && f == PathFamily::walk) return true;
    return false;
}

namespace {

constexpr int kPmfLengthLimit = 4096;  // DP tables are O(n^2) rationals

StatisticPmf collect_pmf(Statistic s, PathFamily f, int n,
                         std::vector<std::pair<std::int64_t, Rational>> weights) {
    StatisticPmf pmf;
    pmf.stat = s;
    pmf.family = f;
    pmf.n = n;
    pmf.total = 0;
    for (auto& [k, wt] : weights) {
        if (wt == 0) continue;
        pmf.total += wt;
        pmf.weights.emplace_back(k, std::move(wt));
    }
    return pmf;
}

// returns-to-zero over walks: state (altitude, returns so far).
std::vector<StatisticPmf> returns_sweep(const StepWeights& w, int max_n) {
    const int off = max_n;
    const int width = 2 * max_n + 1;
    const int kmax = max_n;
    auto idx = [&](int a, int k) { return static_cast<std::size_t>(a) * (kmax + 1) + k; };
    std::vector<Rational> cur(static_cast<std::size_t>(width) * (kmax + 1)),
        next(cur.size());
    cur[idx(off, 0)] = 1;
    std::vector<StatisticPmf> out;
    out.reserve(max_n + 1);

    auto record = [&](int t) {
        std::vector<std::pair<std::int64_t, Rational>> weights;
        for (int k = 0; k <= t; ++k) {
            Rational acc = 0;
            for (int a = off - t; a <= off + t; ++a) acc += cur[idx(a, k)];
            weights.emplace_back(k, std::move(acc));
        }
        out.push_back(collect_pmf(Statistic::returns_to_zero, PathFamily::walk, t, std::move(weights)));
    };

    record(0);
    for (int t = 1; t <= max_n; ++t) {
        std::fill(next.begin(), next.end(), Rational(0));
        for (int a = off - (t - 1); a <= off + (t - 1); ++a) {
            for (int k = 0; k <= t - 1; ++k) {
                const Rational& v = cur[idx(a, k)];
                if (v == 0) continue;
                // step s lands at a+s; landing on the axis bumps the count
                for (int s = -1; s <= 1; ++s) {
                    const int a2 = a + s;
                    const int k2 = (a2 == off) ? k + 1 : k;
                    const Rational& ws =
                        s < 0 ? w.p_minus : (s == 0 ? w.p_zero : w.p_plus);
                    next[idx(a2, k2)] += ws * v;
                }
            }
        }
        std::swap(cur, next);
        record(t);
    }
    return out;
}

// sign changes over walks or bridges: state (altitude, last nonzero sign, count).
std::vector<StatisticPmf> signs_sweep(const StepWeights& w, PathFamily family, int max_n) {
    const int off = max_n;
    const int width = 2 * max_n + 1;
    const int kmax = max_n / 2 + 1;
    auto idx = [&](int a, int sg, int k) {
        return (static_cast<std::size_t>(a) * 3 + sg) * (kmax + 1) + k;
    };
    std::vector<Rational> cur(static_cast<std::size_t>(width) * 3 * (kmax + 1)),
        next(cur.size());
    cur[idx(off, 0, 0)] = 1;
    std::vector<StatisticPmf> out;
    out.reserve(max_n + 1);

    auto record = [&](int t) {
        std::vector<std::pair<std::int64_t, Rational>> weights;
        for (int k = 0; k <= kmax; ++k) {
            Rational acc = 0;
            if (family == PathFamily::bridge) {
                for (int sg = 0; sg < 3; ++sg) acc += cur[idx(off, sg, k)];
            } else {
                for (int a = off - t; a <= off + t; ++a)
                    for (int sg = 0; sg < 3; ++sg) acc += cur[idx(a, sg, k)];
            }
            weights.emplace_back(k, std::move(acc));
        }
        out.push_back(collect_pmf(Statistic::sign_changes, family, t, std::move(weights)));
    };

    record(0);
    for (int t = 1; t <= max_n; ++t) {
        std::fill(next.begin(), next.end(), Rational(0));
        for (int a = off - (t - 1); a <= off + (t - 1); ++a) {
            for (int sg = 0; sg < 3; ++sg) {
                for (int k = 0; k <= kmax; ++k) {
                    const Rational& v = cur[idx(a, sg, k)];
                    if (v == 0) continue;
                    for (int s = -1; s <= 1; ++s) {
                        const int a2 = a + s;
                        const Rational& ws =
                            s < 0 ? w.p_minus : (s == 0 ? w.p_zero : w.p_plus);
                        int sg2 = sg;
                        int k2 = k;
                        if (a2 != off) {
                            const int sign = a2 > off ? 1 : 2;
                            if (sg != 0 && sign != sg) ++k2;
                            sg2 = sign;
                        }
                        if (k2 > kmax) continue;  // unreachable: crossings <= t/2
                        next[idx(a2, sg2, k2)] += ws * v;
                    }
                }
            }
        }
        std::swap(cur, next);
        record(t);
    }
    return out;
}

// height over walks: state (altitude, running maximum clamped below at 0).
std::vector<StatisticPmf> height_sweep(const StepWeights& w, int max_n) {
    const int off = max_n;
    const int width = 2 * max_n + 1;
    const int mmax = max_n;
    auto idx = [&](int a, int m) { return static_cast<std::size_t>(m) * width + a; };
    std::vector<Rational> cur(static_cast<std::size_t>(width) * (mmax + 1)), next(cur.size());
    cur[idx(off, 0)] = 1;
    std::vector<StatisticPmf> out;
    out.reserve(max_n + 1);

    auto record = [&](int t) {
        std::vector<std::pair<std::int64_t, Rational>> weights;
        for (int m = 0; m <= t; ++m) {
            Rational acc = 0;
            for (int a = off - t; a <= off + m; ++a) acc += cur[idx(a, m)];
            weights.emplace_back(m, std::move(acc));
        }
        out.push_back(collect_pmf(Statistic::height, PathFamily::walk, t, std::move(weights)));
    };

    record(0);
    for (int t = 1; t <= max_n; ++t) {
        std::fill(next.begin(), next.end(), Rational(0));
        for (int m = 0; m <= t - 1; ++m) {
            for (int a = off - (t - 1); a <= off + m; ++a) {
                const Rational& v = cur[idx(a, m)];
                if (v == 0) continue;
                for (int s = -1; s <= 1; ++s) {
                    const int a2 = a + s;
                    const int m2 = std::max(m, a2 - off);
                    const Rational& ws = s < 0 ? w.p_minus : (s == 0 ? w.p_zero : w.p_plus);
                    next[idx(a2, m2)] += ws * v;
                }
            }
        }
        std::swap(cur, next);
        record(t);
    }
    return out;
}

}  // namespace

std::vector<StatisticPmf> pmf_exact_sweep(const StepWeights& w, Statistic s, PathFamily f,
                                          int max_n) {
    check_length(max_n, kPmfLengthLimit);
    if (!pmf_supported(s, f)) {
        throw std::invalid_argument("exact pmf supports returns/walk, signs/walk, signs/bridge, "
                                    "height/walk; got " +
                                    name(s) + "/" + name(f));
    }
    if (s == Statistic::returns_to_zero) return returns_sweep(w, max_n);
    if (s == Statistic::sign_changes) return signs_sweep(w, f, max_n);
    return height_sweep(w, max_n);
}

StatisticPmf pmf_exact(const StepWeights& w, Statistic s, PathFamily f, int n) {
    return pmf_exact_sweep(w, s, f, n).back();
}

std::vector<ListedPath> exhaustive_listing(const StepWeights& w, int n) {
    if (n < 0 || n > 12) {
        throw std::invalid_argument("exhaustive listing is limited to lengths 0..12");
    }
    std::vector<ListedPath> out;
    out.reserve(static_cast<std::size_t>(std::pow(3.0, n)));
    std::vector<int> steps(n, -1);
    while (true) {
        ListedPath p;
        p.steps = steps;
        p.weight = 1;
        for (int s : steps) {
            p.weight *= s < 0 ? w.p_minus : (s == 0 ? w.p_zero : w.p_plus);
            p.stats.apply(s);
        }
        out.push_back(std::move(p));
        // odometer over {-1, 0, +1}^n
        int i = n - 1;
        while (i >= 0 && steps[i] == 1) {
            steps[i] = -1;
            --i;
        }
        if (i < 0) break;
        ++steps[i];
    }
    return out;
}

}  // namespace motzkin
