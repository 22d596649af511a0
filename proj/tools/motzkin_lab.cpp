// motzkin-lab: exact enumeration, limit-law prediction, convergence
// measurement, and Monte-Carlo spot checks for weighted Motzkin path
// statistics. Data goes to stdout (or --out); diagnostics go to stderr.
// Exit codes: 0 success, 2 usage/validation error, 1 internal error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "motzkin/convergence.hpp"
#include "motzkin/gf_models.hpp"
#include "motzkin/limit_laws.hpp"
#include "motzkin/path_enum.hpp"
#include "motzkin/sampler.hpp"
#include "motzkin/step_model.hpp"

namespace {

using nlohmann::json;
using namespace motzkin;

constexpr const char* kCsvHeader = "# motzkin-lab v1\n";

struct CommonOptions {
    std::string weights;
    std::string format = "csv";
    std::string out_path;
    std::string config_path;
};

struct RunConfig {
    int threads = 0;
    bool ks_midpoint = true;
    double tail = 1e-12;
    double scheme_tol = 1e-9;
};

RunConfig load_run_config(const std::string& path) {
    RunConfig cfg;
    if (path.empty()) return cfg;
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        " is not key=value: '" + line + "'");
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "threads") {
            cfg.threads = std::stoi(value);
        } else if (key == "ks_midpoint") {
            cfg.ks_midpoint = (value == "1" || value == "true" || value == "yes");
        } else if (key == "tail") {
            cfg.tail = std::stod(value);
        } else if (key == "scheme_tol") {
            cfg.scheme_tol = std::stod(value);
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    return cfg;
}

// Writes to --out if given, else stdout.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

json base_json(const std::string& command, const std::string& weights) {
    json j;
    j["tool"] = "motzkin-lab";
    j["format_version"] = 1;
    j["command"] = command;
    j["weights"] = weights;
    return j;
}

void check_format(const std::string& format) {
    if (format != "csv" && format != "json") {
        throw std::invalid_argument("format must be csv or json");
    }
}

std::vector<std::int64_t> parse_lengths(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        out.push_back(std::stoll(item));
    }
    if (out.empty()) throw std::invalid_argument("--lengths needs at least one length");
    return out;
}

// --- enumerate ------------------------------------------------------------------

int cmd_enumerate(const CommonOptions& common, int n, const std::string& stat_name,
                  const std::string& family_name) {
    const StepWeights w = parse_step_weights(common.weights);
    const PathFamily family = parse_family(family_name);
    Output output(common.out_path);
    std::ostream& os = output.stream();

    if (stat_name.empty()) {
        const std::vector<Rational> counts = count_family_sweep(w, family, n);
        if (common.format == "csv") {
            os << kCsvHeader;
            os << "# enumerate family=" << name(family) << " weights=\"" << to_string(w)
               << "\"\n";
            os << "n,count\n";
            for (std::size_t t = 0; t < counts.size(); ++t) {
                os << t << ',' << to_string(counts[t]) << '\n';
            }
        } else {
            json j = base_json("enumerate", to_string(w));
            j["family"] = name(family);
            j["rows"] = json::array();
            for (std::size_t t = 0; t < counts.size(); ++t) {
                j["rows"].push_back({{"n", t}, {"count", to_string(counts[t])}});
            }
            os << j.dump(2) << '\n';
        }
        return 0;
    }

    const Statistic stat = parse_statistic(stat_name);
    const StatisticPmf pmf = pmf_exact(w, stat, family, n);
    if (common.format == "csv") {
        os << kCsvHeader;
        os << "# enumerate stat=" << name(stat) << " family=" << name(family) << " n=" << n
           << " weights=\"" << to_string(w) << "\" total=" << to_string(pmf.total) << "\n";
        os << "k,weight,probability\n";
        for (const auto& [k, wt] : pmf.weights) {
            os << k << ',' << to_string(wt) << ',' << to_double(wt / pmf.total) << '\n';
        }
    } else {
        json j = base_json("enumerate", to_string(w));
        j["stat"] = name(stat);
        j["family"] = name(family);
        j["n"] = n;
        j["total"] = to_string(pmf.total);
        j["rows"] = json::array();
        for (const auto& [k, wt] : pmf.weights) {
            j["rows"].push_back(
                {{"k", k}, {"weight", to_string(wt)}, {"probability", to_double(wt / pmf.total)}});
        }
        os << j.dump(2) << '\n';
    }
    return 0;
}

// --- predict --------------------------------------------------------------------

int cmd_predict(const CommonOptions& common, const std::string& stat_name,
                const std::string& family_name) {
    const StepWeights w = parse_step_weights(common.weights);
    const Statistic stat = parse_statistic(stat_name);
    const PathFamily family = parse_family(family_name);
    const LimitLaw law = predict_law(w, stat, family);
    Output output(common.out_path);
    std::ostream& os = output.stream();

    const json law_j = json::parse(law_json_string(law));
    if (common.format == "json") {
        json j = base_json("predict", to_string(w));
        j["stat"] = name(stat);
        j["family"] = name(family);
        j.update(law_j);
        os << j.dump(2) << '\n';
    } else {
        os << kCsvHeader;
        os << "# predict stat=" << name(stat) << " family=" << name(family) << " weights=\""
           << to_string(w) << "\"\n";
        os << "key,value\n";
        for (const auto& [key, value] : law_j.items()) {
            os << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump())
               << '\n';
        }
    }
    return 0;
}

// --- converge -------------------------------------------------------------------

int cmd_converge(const CommonOptions& common, const std::string& stat_name,
                 const std::string& family_name, const std::string& lengths, bool raw_grid) {
    const RunConfig cfg = load_run_config(common.config_path);
    const StepWeights w = parse_step_weights(common.weights);
    const Statistic stat = parse_statistic(stat_name);
    const PathFamily family = parse_family(family_name);
    KsOptions opts;
    opts.midpoint = raw_grid ? false : cfg.ks_midpoint;
    opts.tail = cfg.tail;
    const ConvergenceReport report =
        convergence_report(w, stat, family, parse_lengths(lengths), opts);
    Output output(common.out_path);
    if (common.format == "json") {
        write_json(output.stream(), report);
    } else {
        write_csv(output.stream(), report);
    }
    return 0;
}

// --- sample ---------------------------------------------------------------------

int cmd_sample(const CommonOptions& common, int n, std::int64_t reps, std::uint64_t seed,
               const std::string& stat_name, const std::string& family_name, int threads_flag) {
    const RunConfig cfg = load_run_config(common.config_path);
    SampleConfig sc;
    sc.weights = parse_step_weights(common.weights);
    sc.stat = parse_statistic(stat_name);
    sc.family = parse_family(family_name);
    sc.n = n;
    sc.reps = reps;
    sc.seed = seed;
    sc.threads = threads_flag > 0 ? threads_flag : cfg.threads;

    const EmpiricalPmf empirical = sample_pmf(sc);

    // Exact distribution for the goodness-of-fit comparison.
    const ModelId model = model_for(sc.stat, sc.family);
    const PmfTable exact = model_pmf_table(sc.weights, model, {n}, cfg.tail);
    const double pvalue = chi_square_pvalue(empirical.counts, exact.pmf[0]);

    Output output(common.out_path);
    std::ostream& os = output.stream();
    if (common.format == "json") {
        json j = base_json("sample", to_string(sc.weights));
        j["stat"] = name(sc.stat);
        j["family"] = name(sc.family);
        j["n"] = n;
        j["reps"] = empirical.reps;
        j["proposals"] = empirical.proposals;
        j["seed"] = seed;
        j["chi_square_pvalue"] = pvalue;
        j["counts"] = empirical.counts;
        os << j.dump(2) << '\n';
    } else {
        os << kCsvHeader;
        os << "# sample stat=" << name(sc.stat) << " family=" << name(sc.family) << " n=" << n
           << " reps=" << empirical.reps << " proposals=" << empirical.proposals
           << " seed=" << seed << " chi_square_pvalue=" << pvalue << "\n";
        os << "k,count,frequency,exact_probability\n";
        for (std::size_t k = 0; k < empirical.counts.size(); ++k) {
            const double exact_p = k < exact.pmf[0].size() ? exact.pmf[0][k] : 0.0;
            os << k << ',' << empirical.counts[k] << ',' << empirical.pmf[k] << ',' << exact_p
               << '\n';
        }
    }
    return 0;
}

// --- scheme-check ---------------------------------------------------------------

SchemeValue scheme_value_from_json(const json& j) {
    if (j.is_string()) return SchemeValue(parse_rational(j.get<std::string>()));
    if (j.is_number()) return SchemeValue(j.get<double>());
    if (j.is_object()) {
        // exact quadratic irrational a + b*sqrt(r)
        const Rational a = parse_rational(j.value("a", "0"));
        const Rational b = parse_rational(j.value("b", "0"));
        const Rational r = parse_rational(j.value("r", "0"));
        return SchemeValue(QuadReal(a, b, r));
    }
    throw std::invalid_argument(
        "scheme values must be numbers, rational strings, or {a,b,r} objects");
}

int cmd_scheme_check(const CommonOptions& common, const std::string& builtin,
                     const std::string& instance_path) {
    const RunConfig cfg = load_run_config(common.config_path);
    SchemeInstance inst;
    if (!instance_path.empty()) {
        std::ifstream in(instance_path);
        if (!in) throw std::invalid_argument("cannot open instance file '" + instance_path + "'");
        // A broken instance file is a usage error (exit 2), not an internal one.
        try {
            const json j = json::parse(in);
            inst.label = j.value("label", instance_path);
            inst.rho = scheme_value_from_json(j.at("rho"));
            inst.g = scheme_value_from_json(j.at("g"));
            inst.g_z = scheme_value_from_json(j.at("g_z"));
            inst.g_u = scheme_value_from_json(j.at("g_u"));
            inst.g_uu = scheme_value_from_json(j.at("g_uu"));
            inst.h = scheme_value_from_json(j.at("h"));
            inst.h_u = scheme_value_from_json(j.at("h_u"));
        } catch (const json::exception& e) {
            throw std::invalid_argument("bad instance file '" + instance_path +
                                        "': " + e.what());
        }
    } else if (!builtin.empty()) {
        const StepWeights w = parse_step_weights(common.weights);
        inst = builtin_scheme(w, parse_statistic(builtin));
    } else {
        throw std::invalid_argument("scheme-check needs --builtin STAT or --instance FILE");
    }

    const SchemeReport report = check_scheme(inst, cfg.scheme_tol);
    Output output(common.out_path);
    std::ostream& os = output.stream();
    if (common.format == "json") {
        json j;
        j["tool"] = "motzkin-lab";
        j["format_version"] = 1;
        j["command"] = "scheme-check";
        j["label"] = inst.label;
        j["conditions"] = json::array();
        for (const auto& c : report.conditions) {
            j["conditions"].push_back(
                {{"name", c.name}, {"value", c.value}, {"passed", c.passed}});
        }
        j["all_passed"] = report.all_passed;
        if (report.sigma) j["sigma"] = *report.sigma;
        j["note"] = report.note;
        os << j.dump(2) << '\n';
    } else {
        os << kCsvHeader;
        os << "# scheme-check label=\"" << inst.label << "\" all_passed="
           << (report.all_passed ? "true" : "false");
        if (report.sigma) os << " sigma=" << *report.sigma;
        os << "\n# note: " << report.note << "\n";
        os << "condition,value,passed\n";
        for (const auto& c : report.conditions) {
            os << '"' << c.name << "\"," << c.value << ',' << (c.passed ? "true" : "false")
               << '\n';
        }
    }
    // A failed condition is a finding, not a failure of the check itself.
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted Motzkin path statistics: exact enumeration, limit laws, convergence"};
    app.require_subcommand(1);

    CommonOptions common;

    auto add_common = [&common](CLI::App* sub, bool weights_required = true) {
        auto* w = sub->add_option("-w,--weights", common.weights,
                                  "step weights p_minus,p_zero,p_plus (rationals, e.g. 1,1/2,2)");
        if (weights_required) w->required();
        sub->add_option("--format", common.format, "output format: csv or json");
        sub->add_option("--out", common.out_path, "write output to a file instead of stdout");
        sub->add_option("--config", common.config_path, "key=value config file");
    };

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "exact counts or statistic distributions");
    int enum_n = 0;
    std::string enum_stat, enum_family = "walk";
    add_common(enumerate);
    enumerate->add_option("-n,--length", enum_n, "path length")->required();
    enumerate->add_option("--stat", enum_stat, "statistic: returns|signs|height");
    enumerate->add_option("--family", enum_family, "family: walk|bridge|meander|excursion");

    // predict
    auto* predict = app.add_subcommand("predict", "limit law for a statistic/family pair");
    std::string predict_stat, predict_family = "walk";
    add_common(predict);
    predict->add_option("--stat", predict_stat, "statistic")->required();
    predict->add_option("--family", predict_family, "family");

    // converge
    auto* converge = app.add_subcommand("converge", "distance-to-limit report across lengths");
    std::string conv_stat, conv_family = "walk", conv_lengths;
    bool conv_raw = false;
    add_common(converge);
    converge->add_option("--stat", conv_stat, "statistic")->required();
    converge->add_option("--family", conv_family, "family");
    converge->add_option("--lengths", conv_lengths, "comma-separated lengths, e.g. 100,400,1600")
        ->required();
    converge->add_flag("--raw-grid", conv_raw,
                       "evaluate the law at k/sqrt(n) instead of (k+1/2)/sqrt(n)");

    // sample
    auto* sample = app.add_subcommand("sample", "Monte-Carlo samples against the exact law");
    int sample_n = 0, sample_threads = 0;
    std::int64_t sample_reps = 10000;
    std::uint64_t sample_seed = 1;
    std::string sample_stat, sample_family = "walk";
    add_common(sample);
    sample->add_option("-n,--length", sample_n, "path length")->required();
    sample->add_option("--reps", sample_reps, "number of samples");
    sample->add_option("--seed", sample_seed, "master RNG seed");
    sample->add_option("--stat", sample_stat, "statistic")->required();
    sample->add_option("--family", sample_family, "family: walk|bridge");
    sample->add_option("--threads", sample_threads,
                       "worker threads (default: MOTZKIN_LAB_THREADS or hardware)");

    // scheme-check
    auto* scheme = app.add_subcommand("scheme-check", "verify a square-root scheme instance");
    std::string scheme_builtin, scheme_instance;
    add_common(scheme, /*weights_required=*/false);
    scheme->add_option("--builtin", scheme_builtin,
                       "built-in zero-drift instance: returns|signs|height (needs -w)");
    scheme->add_option("--instance", scheme_instance, "JSON file with a scheme instance");

    CLI11_PARSE(app, argc, argv);

    try {
        check_format(common.format);
        if (enumerate->parsed()) return cmd_enumerate(common, enum_n, enum_stat, enum_family);
        if (predict->parsed()) return cmd_predict(common, predict_stat, predict_family);
        if (converge->parsed())
            return cmd_converge(common, conv_stat, conv_family, conv_lengths, conv_raw);
        if (sample->parsed())
            return cmd_sample(common, sample_n, sample_reps, sample_seed, sample_stat,
                              sample_family, sample_threads);
        if (scheme->parsed()) return cmd_scheme_check(common, scheme_builtin, scheme_instance);
        std::cerr << "no subcommand\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
}
