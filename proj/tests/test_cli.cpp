#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

using nlohmann::json;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

std::string cli_path() {
    const char* env = std::getenv("MOTZKIN_CLI");
    REQUIRE_MESSAGE(env != nullptr, "MOTZKIN_CLI must point at the motzkin-lab binary");
    return env;
}

// Runs the CLI with the given arguments; stderr is merged unless dropped.
CliResult run_cli(const std::string& args, bool merge_stderr = true) {
    const std::string cmd =
        cli_path() + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
    CliResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t got = 0;
    while ((got = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        result.output.append(buffer, got);
    }
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) out.push_back(line);
    return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    REQUIRE(out.good());
    out << content;
}

}  // namespace

TEST_CASE("enumerate prints the exact returns distribution") {
    const CliResult r = run_cli("enumerate -w 1,1,1 -n 2 --stat returns --family walk", false);
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "# motzkin-lab v1");
    CHECK(starts_with(lines[1], "# enumerate stat=returns family=walk n=2"));
    CHECK(lines[2] == "k,weight,probability");
    CHECK(starts_with(lines[3], "0,4,"));
    CHECK(starts_with(lines[4], "1,4,"));
    CHECK(starts_with(lines[5], "2,1,"));
}

TEST_CASE("enumerate counts unit-weight excursions") {
    const CliResult r = run_cli("enumerate -w 1,1,1 -n 6 --family excursion", false);
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 10);
    CHECK(lines[2] == "n,count");
    const char* expected[] = {"0,1", "1,1", "2,2", "3,4", "4,9", "5,21", "6,51"};
    for (int i = 0; i < 7; ++i) CHECK(lines[3 + i] == expected[i]);
}

TEST_CASE("enumerate emits well-formed JSON") {
    const CliResult r =
        run_cli("enumerate -w 1,2,3 -n 5 --stat height --family walk --format json", false);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["tool"] == "motzkin-lab");
    CHECK(j["format_version"] == 1);
    CHECK(j["command"] == "enumerate");
    CHECK(j["weights"] == "1,2,3");
    CHECK(j["stat"] == "height");
    CHECK(j["family"] == "walk");
    CHECK(j["n"] == 5);
    CHECK(j["total"] == "7776");  // (1+2+3)^5
    double mass = 0.0;
    for (const auto& row : j["rows"]) mass += row["probability"].get<double>();
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bad inputs exit with code 2 and a diagnostic") {
    const CliResult zero_weight = run_cli("enumerate -w 0,1,1 -n 3");
    CHECK(zero_weight.exit_code == 2);
    CHECK(zero_weight.output.find("p_minus") != std::string::npos);

    const CliResult two_weights = run_cli("enumerate -w 1,1 -n 3");
    CHECK(two_weights.exit_code == 2);

    const CliResult float_weight = run_cli("enumerate -w 1.5,1,1 -n 3");
    CHECK(float_weight.exit_code == 2);

    const CliResult bad_stat = run_cli("predict -w 1,1,1 --stat bogus");
    CHECK(bad_stat.exit_code == 2);

    const CliResult bad_format = run_cli("enumerate -w 1,1,1 -n 3 --format xml");
    CHECK(bad_format.exit_code == 2);
    CHECK(bad_format.output.find("format must be csv or json") != std::string::npos);

    const CliResult missing_weights = run_cli("enumerate -n 3");
    CHECK(missing_weights.exit_code != 0);
}

TEST_CASE("predict reports the frozen limit laws") {
    {
        const CliResult r = run_cli("predict -w 1,1,1 --stat height --format json", false);
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.output);
        CHECK(j["law"] == "half_normal");
        CHECK(j["scaling"] == "divide_by_sqrt_n");
        CHECK(j["sigma"].get<double>() == doctest::Approx(0.8164965809).epsilon(1e-9));
    }
    {
        const CliResult r = run_cli("predict -w 1,1,2 --stat returns --format json", false);
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.output);
        CHECK(j["law"] == "geometric");
        CHECK(j["scaling"] == "none");
        CHECK(j["p"].get<double>() == doctest::Approx(0.25).epsilon(1e-12));
    }
    {
        const CliResult r =
            run_cli("predict -w 1,1,1 --stat signs --family bridge --format json", false);
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.output);
        CHECK(j["law"] == "rayleigh");
        CHECK(j["sigma"].get<double>() == doctest::Approx(0.4082482905).epsilon(1e-9));
    }
    {
        const CliResult r = run_cli("predict -w 2,1,1 --stat signs --family walk --format json",
                                    false);
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.output);
        CHECK(j["law"] == "geometric");
        CHECK(j["p"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
    }
    {
        const CliResult r = run_cli("predict -w 1,1,1 --stat returns", false);
        CHECK(r.exit_code == 0);
        const auto lines = lines_of(r.output);
        REQUIRE(lines.size() >= 3);
        CHECK(lines[0] == "# motzkin-lab v1");
        CHECK(r.output.find("law,half_normal") != std::string::npos);
        CHECK(r.output.find("scaling,divide_by_sqrt_n") != std::string::npos);
        CHECK(r.output.find("sigma,1.2247") != std::string::npos);
    }
}

TEST_CASE("converge emits the documented CSV schema") {
    const CliResult r = run_cli("converge -w 1,1,2 --stat returns --lengths 50,100", false);
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0] == "# motzkin-lab v1");
    CHECK(starts_with(lines[1], "# convergence law="));
    CHECK(lines[2] == "model,weights,n,K,TV,mean_ratio,var_ratio,local_residual");
    const std::string prefix = "returns/walk,\"1,1,2\",";
    REQUIRE(starts_with(lines[3], prefix + "50,"));
    REQUIRE(starts_with(lines[4], prefix + "100,"));

    // K and TV shrink with n for a geometric limit; the residual column stays empty.
    auto fields_after = [&prefix](const std::string& line) {
        std::vector<std::string> out;
        std::stringstream ss(line.substr(prefix.size()));
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(item);
        return out;
    };
    const auto row50 = fields_after(lines[3]);
    const auto row100 = fields_after(lines[4]);
    REQUIRE(row50.size() >= 5);
    CHECK(std::stod(row100[1]) < std::stod(row50[1]));  // K
    CHECK(std::stod(row100[2]) < std::stod(row50[2]));  // TV
    CHECK(row50.size() == 5);  // trailing local_residual empty: no sixth field
}

TEST_CASE("converge JSON mirrors the CSV data") {
    const CliResult r =
        run_cli("converge -w 1,1,1 --stat height --lengths 100,400 --format json", false);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["tool"] == "motzkin-lab");
    CHECK(j["format_version"] == 1);
    CHECK(j["report"] == "convergence");
    CHECK(j["model"] == "height/walk");
    CHECK(j["weights"] == "1,1,1");
    CHECK(j["law"]["law"] == "half_normal");
    REQUIRE(j["rows"].size() == 2);
    CHECK(j["rows"][0]["n"] == 100);
    CHECK(j["rows"][1]["n"] == 400);
    CHECK(j["rows"][0]["K"].is_number());
    CHECK(j["rows"][0]["TV"].is_null());               // no discrete limit here
    CHECK(j["rows"][0]["local_residual"].is_number()); // but a density to match
    CHECK(j["rows"][1]["K"].get<double>() < j["rows"][0]["K"].get<double>());
}

TEST_CASE("the raw evaluation grid is a flag") {
    const CliResult mid =
        run_cli("converge -w 1,1,1 --stat height --lengths 400 --format json", false);
    const CliResult raw =
        run_cli("converge -w 1,1,1 --stat height --lengths 400 --format json --raw-grid", false);
    CHECK(mid.exit_code == 0);
    CHECK(raw.exit_code == 0);
    const double k_mid = json::parse(mid.output)["rows"][0]["K"].get<double>();
    const double k_raw = json::parse(raw.output)["rows"][0]["K"].get<double>();
    CHECK(k_mid > 0.0);
    CHECK(k_raw > k_mid);  // the continuity correction is what makes the grid sharp
}

TEST_CASE("sample runs are reproducible and seeded") {
    const std::string args =
        "sample -w 1,1,1 -n 30 --reps 2000 --seed 5 --stat returns --threads 2 --format json";
    const CliResult first = run_cli(args, false);
    const CliResult second = run_cli(args, false);
    CHECK(first.exit_code == 0);
    CHECK(first.output == second.output);

    const json j = json::parse(first.output);
    CHECK(j["command"] == "sample");
    CHECK(j["reps"] == 2000);
    CHECK(j["proposals"] == 2000);
    CHECK(j["seed"] == 5);
    std::int64_t total = 0;
    for (const auto& c : j["counts"]) total += c.get<std::int64_t>();
    CHECK(total == 2000);
    CHECK(j["chi_square_pvalue"].get<double>() > 1e-4);

    const CliResult other = run_cli(
        "sample -w 1,1,1 -n 30 --reps 2000 --seed 6 --stat returns --threads 2 --format json",
        false);
    CHECK(json::parse(other.output)["counts"] != j["counts"]);

    const CliResult bridge = run_cli(
        "sample -w 1,1,1 -n 16 --reps 1000 --seed 5 --stat signs --family bridge --format json",
        false);
    CHECK(bridge.exit_code == 0);
    const json b = json::parse(bridge.output);
    CHECK(b["proposals"].get<std::int64_t>() > b["reps"].get<std::int64_t>());
}

TEST_CASE("sample CSV carries the exact comparison column") {
    const CliResult r =
        run_cli("sample -w 1,1,2 -n 20 --reps 1500 --seed 9 --stat height --threads 2", false);
    CHECK(r.exit_code == 0);
    const auto lines = lines_of(r.output);
    REQUIRE(lines.size() >= 5);
    CHECK(lines[0] == "# motzkin-lab v1");
    CHECK(lines[1].find("chi_square_pvalue=") != std::string::npos);
    CHECK(lines[1].find("reps=1500") != std::string::npos);
    CHECK(lines[2] == "k,count,frequency,exact_probability");
    CHECK(starts_with(lines[3], "0,"));
}

TEST_CASE("scheme-check validates the built-in instance") {
    const CliResult r = run_cli("scheme-check --builtin returns -w 1,1,1 --format json", false);
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.output);
    CHECK(j["command"] == "scheme-check");
    CHECK(j["all_passed"] == true);
    CHECK(j["sigma"].get<double>() == doctest::Approx(1.2247448714).epsilon(1e-9));
    REQUIRE(j["conditions"].size() == 6);
    const char* names[] = {"g(rho,1) = 0",  "h(rho,1) = 0",   "g_u(rho,1) = 0",
                           "g_uu(rho,1) = 0", "g_z(rho,1) != 0", "h_u(rho,1) != 0"};
    for (int i = 0; i < 6; ++i) {
        CHECK(j["conditions"][i]["name"] == names[i]);
        CHECK(j["conditions"][i]["passed"] == true);
    }
    CHECK(j["note"].get<std::string>().find("assumed") != std::string::npos);

    const CliResult csv = run_cli("scheme-check --builtin returns -w 1,1,1", false);
    const auto lines = lines_of(csv.output);
    REQUIRE(lines.size() >= 4);
    CHECK(lines[0] == "# motzkin-lab v1");
    CHECK(lines[1].find("all_passed=true") != std::string::npos);
    CHECK(lines[1].find("sigma=1.2247") != std::string::npos);
    CHECK(lines[3] == "condition,value,passed");
    CHECK(starts_with(lines[4], "\"g(rho,1) = 0\","));
}

TEST_CASE("scheme-check reads instance files") {
    // the built-in returns instance at unit weights, spelled out by hand
    const std::string good = R"({
        "label": "file-instance",
        "rho": "1/3", "g": "0", "g_z": "-3", "g_u": "0", "g_uu": "0",
        "h": "0", "h_u": {"a": "0", "b": "-1", "r": "3/4"}
    })";
    write_file("/tmp/motzkin_scheme_good.json", good);
    const CliResult ok =
        run_cli("scheme-check --instance /tmp/motzkin_scheme_good.json --format json", false);
    CHECK(ok.exit_code == 0);
    const json jok = json::parse(ok.output);
    CHECK(jok["label"] == "file-instance");
    CHECK(jok["all_passed"] == true);
    CHECK(jok["sigma"].get<double>() == doctest::Approx(1.2247448714).epsilon(1e-9));

    // a nonzero u-derivative of the analytic part breaks one named condition
    const std::string skewed = R"({
        "rho": "1/3", "g": "0", "g_z": "-3", "g_u": "1/4", "g_uu": "0",
        "h": "0", "h_u": {"a": "0", "b": "-1", "r": "3/4"}
    })";
    write_file("/tmp/motzkin_scheme_gu.json", skewed);
    const CliResult bad =
        run_cli("scheme-check --instance /tmp/motzkin_scheme_gu.json --format json", false);
    CHECK(bad.exit_code == 0);  // the check ran; the instance just fails
    const json jbad = json::parse(bad.output);
    CHECK(jbad["all_passed"] == false);
    CHECK(!jbad.contains("sigma"));
    for (const auto& c : jbad["conditions"]) {
        const bool should_fail = c["name"] == "g_u(rho,1) = 0";
        CHECK(c["passed"] == !should_fail);
    }

    std::remove("/tmp/motzkin_scheme_good.json");
    std::remove("/tmp/motzkin_scheme_gu.json");
}

TEST_CASE("scheme-check rejects broken instance input") {
    write_file("/tmp/motzkin_scheme_broken.json", "{ this is not json");
    const CliResult malformed = run_cli("scheme-check --instance /tmp/motzkin_scheme_broken.json");
    CHECK(malformed.exit_code == 2);
    CHECK(malformed.output.find("bad instance file") != std::string::npos);

    write_file("/tmp/motzkin_scheme_partial.json", R"({"g": "0"})");
    const CliResult partial = run_cli("scheme-check --instance /tmp/motzkin_scheme_partial.json");
    CHECK(partial.exit_code == 2);

    const CliResult missing = run_cli("scheme-check --instance /tmp/motzkin_no_such_file.json");
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("cannot open instance file") != std::string::npos);

    const CliResult neither = run_cli("scheme-check");
    CHECK(neither.exit_code == 2);
    CHECK(neither.output.find("--builtin STAT or --instance FILE") != std::string::npos);

    std::remove("/tmp/motzkin_scheme_broken.json");
    std::remove("/tmp/motzkin_scheme_partial.json");
}

TEST_CASE("output lands in --out files") {
    const char* path = "/tmp/motzkin_out_test.csv";
    const CliResult r =
        run_cli(std::string("enumerate -w 1,1,1 -n 4 --family bridge --out ") + path, false);
    CHECK(r.exit_code == 0);
    CHECK(r.output.empty());  // data went to the file, not stdout

    std::ifstream in(path);
    REQUIRE(in.good());
    std::string first;
    std::getline(in, first);
    CHECK(first == "# motzkin-lab v1");
    std::string rest((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(rest.find("4,19") != std::string::npos);  // central trinomial number at n=4
    in.close();
    std::remove(path);
}

TEST_CASE("config files tune the scheme tolerance") {
    // float noise of 1e-11 in g(rho,1): inside the default 1e-9 gate,
    // outside a 1e-13 one
    const std::string noisy = R"({
        "rho": "1/3", "g": 1e-11, "g_z": "-3", "g_u": "0", "g_uu": "0",
        "h": "0", "h_u": {"a": "0", "b": "-1", "r": "3/4"}
    })";
    write_file("/tmp/motzkin_scheme_noisy.json", noisy);

    const CliResult lax =
        run_cli("scheme-check --instance /tmp/motzkin_scheme_noisy.json --format json", false);
    CHECK(json::parse(lax.output)["all_passed"] == true);

    write_file("/tmp/motzkin_tight.cfg", "scheme_tol=1e-13\n");
    const CliResult tight = run_cli(
        "scheme-check --instance /tmp/motzkin_scheme_noisy.json --config /tmp/motzkin_tight.cfg "
        "--format json",
        false);
    CHECK(json::parse(tight.output)["all_passed"] == false);

    write_file("/tmp/motzkin_bad.cfg", "no_such_key=3\n");
    const CliResult bad = run_cli(
        "scheme-check --instance /tmp/motzkin_scheme_noisy.json --config /tmp/motzkin_bad.cfg");
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("unknown config key") != std::string::npos);

    std::remove("/tmp/motzkin_scheme_noisy.json");
    std::remove("/tmp/motzkin_tight.cfg");
    std::remove("/tmp/motzkin_bad.cfg");
}

TEST_CASE("every CSV command starts with the version banner") {
    const char* commands[] = {
        "enumerate -w 1,1,1 -n 3",
        "enumerate -w 1,1,1 -n 3 --stat signs",
        "predict -w 1,1,1 --stat returns",
        "converge -w 1,1,1 --stat returns --lengths 50",
        "sample -w 1,1,1 -n 10 --reps 200 --seed 1 --stat returns --threads 1",
        "scheme-check --builtin height -w 1,1,1",
    };
    for (const char* cmd : commands) {
        const CliResult r = run_cli(cmd, false);
        CHECK(r.exit_code == 0);
        const auto lines = lines_of(r.output);
        REQUIRE(!lines.empty());
        CHECK(lines[0] == "# motzkin-lab v1");
    }
}
