#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "robinmc/config.hpp"

using namespace robinmc;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json minimal_config() {
    return ordered_json::parse(R"({
      "problem": {
        "id": "neumann_conservation",
        "domain": {"type": "interval", "a": 0.0, "b": 1.0},
        "measure": [{"type": "neumann"}, {"type": "neumann"}],
        "f": "one",
        "kind": "semigroup",
        "t": 0.05,
        "points": [[0.5]]
      },
      "sim": {"h": 1e-3, "n_paths": 64, "seed": 1}
    })");
}

std::filesystem::path temp_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("robinmc_test_" + tag);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("parse: minimal config and explicit defaults") {
    const RunConfig cfg = parse_run_config(minimal_config());
    CHECK(cfg.problem.id == "neumann_conservation");
    CHECK(cfg.problem.kind == "semigroup");
    CHECK(cfg.n_paths == 64);
    CHECK(cfg.sim.T == doctest::Approx(0.05));  // defaults to problem.t

    const ordered_json res = cfg.resolved();
    CHECK(res.contains("oracle"));
    CHECK(res.contains("output"));
    CHECK(res["oracle"]["m_nodes"].get<int>() == 401);
    CHECK(res["sim"]["scheme"] == "projection");
    CHECK(res["sim"]["bridge_correction"] == false);
}

TEST_CASE("parse: unknown keys are rejected with the field path") {
    ordered_json j = minimal_config();
    j["problem"]["extra"] = 1;
    CHECK_THROWS_WITH_AS(parse_run_config(j), "unknown key 'problem.extra'", ConfigError);

    ordered_json k = minimal_config();
    k["sim"]["dt"] = 0.1;
    CHECK_THROWS_WITH_AS(parse_run_config(k), "unknown key 'sim.dt'", ConfigError);
}

TEST_CASE("parse: missing fields name the offender") {
    ordered_json j = minimal_config();
    j["problem"].erase("domain");
    try {
        parse_run_config(j);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("problem.domain") != std::string::npos);
    }

    ordered_json k = minimal_config();
    k["problem"].erase("t");
    CHECK_THROWS_AS(parse_run_config(k), ConfigError);
}

TEST_CASE("parse: schema validation catches bad values") {
    auto expect_throw = [](ordered_json j) { CHECK_THROWS_AS(parse_run_config(j), ConfigError); };
    {
        ordered_json j = minimal_config();
        j["problem"]["domain"] = {{"type", "triangle"}};
        expect_throw(j);
    }
    {
        ordered_json j = minimal_config();
        j["problem"]["measure"] = ordered_json::array({ordered_json{{"type", "neumann"}}});
        expect_throw(j);  // wrong component count
    }
    {
        ordered_json j = minimal_config();
        j["problem"]["points"] = ordered_json::array({ordered_json::array({0.5, 0.5})});
        expect_throw(j);  // dimension mismatch on an interval
    }
    {
        ordered_json j = minimal_config();
        j["problem"]["points"] = ordered_json::array({ordered_json::array({2.5})});
        expect_throw(j);  // outside the closed domain
    }
    {
        ordered_json j = minimal_config();
        j["sim"]["scheme"] = "euler";
        expect_throw(j);
    }
    {
        ordered_json j = minimal_config();
        j["sim"]["n_paths"] = 1;
        expect_throw(j);
    }
    {
        ordered_json j = minimal_config();
        j["problem"]["f"] = "unknown_function";
        expect_throw(j);
    }
    {
        ordered_json j = minimal_config();
        j["problem"]["kind"] = "resolvent";  // alpha missing
        expect_throw(j);
    }
}

TEST_CASE("parse: piecewise beta and dirichlet components") {
    ordered_json j = ordered_json::parse(R"({
      "problem": {
        "domain": {"type": "rectangle", "x0": 0, "x1": 1, "y0": 0, "y1": 1},
        "measure": [
          {"type": "robin", "beta": [[0.0, 1.0], [0.5, 2.0]]},
          {"type": "dirichlet"},
          {"type": "neumann"},
          {"type": "robin", "beta": 3.0}
        ],
        "kind": "semigroup",
        "t": 0.1,
        "points": [[0.5, 0.5]]
      },
      "sim": {"h": 1e-3, "n_paths": 16}
    })");
    const RunConfig cfg = parse_run_config(j);
    const RobinMeasure mu = cfg.problem.measure();
    CHECK(mu.beta_at(0, 0.25).value == 1.0);
    CHECK(mu.beta_at(0, 0.75).value == 2.0);
    CHECK(mu.beta_at(1, 0.0).dirichlet);
    CHECK(mu.beta_at(3, 0.0).value == 3.0);
}

TEST_CASE("cmd_solve: conservation run emits exact CSV and JSON artifacts") {
    const auto dir = temp_dir("solve");
    RunConfig cfg = parse_run_config(minimal_config());
    CHECK(cmd_solve(cfg, dir.string()) == 0);

    const std::string csv = slurp(dir / "results.csv");
    CHECK(csv.find("problem_id,estimator_kind,t_or_alpha,x,y,mean,std_error,n_paths,h,scheme") !=
          std::string::npos);
    CHECK(csv.find("neumann_conservation,weight,0.05") != std::string::npos);
    CHECK(csv.find(",1,0,64,") != std::string::npos);  // mean 1, stderr 0, n 64

    const ordered_json rep = ordered_json::parse(slurp(dir / "report.json"));
    CHECK(rep["convention"] == "half-laplacian");
    CHECK(rep.contains("version"));
    CHECK(rep["results"][0]["mean"].get<double>() == 1.0);
    CHECK(rep["results"][0]["std_error"].get<double>() == 0.0);
    CHECK(rep["results"][0]["within_tolerance"].get<bool>());
    CHECK(rep["config"]["sim"]["seed"].get<std::uint64_t>() == 1);

    // byte-identical rerun
    const auto dir2 = temp_dir("solve2");
    CHECK(cmd_solve(cfg, dir2.string()) == 0);
    CHECK(slurp(dir / "results.csv") == slurp(dir2 / "results.csv"));
    CHECK(slurp(dir / "report.json") == slurp(dir2 / "report.json"));
}

TEST_CASE("cmd_solve: trace dump") {
    const auto dir = temp_dir("trace");
    ordered_json j = minimal_config();
    j["output"] = {{"trace_csv", "trace.csv"}, {"verbosity", 0}};
    RunConfig cfg = parse_run_config(j);
    CHECK(cmd_solve(cfg, dir.string()) == 0);
    const std::string csv = slurp(dir / "trace.csv");
    CHECK(csv.find("path,t,x,y,ell_0,ell_1,A,alive") != std::string::npos);
}

TEST_CASE("cmd_study: paths and mu-ladder tables") {
    const auto dir = temp_dir("study");
    ordered_json j = minimal_config();
    j["output"] = {{"verbosity", 0}};
    j["study"] = {{"n_values", {64, 256}}};
    RunConfig cfg = parse_run_config(j);
    CHECK(cmd_study("paths", cfg, dir.string()) == 0);
    const std::string csv = slurp(dir / "study_paths.csv");
    CHECK(csv.find("study,parameter,mean,std_error,oracle,gap") != std::string::npos);
    CHECK(csv.find("paths,64,1,0,") != std::string::npos);

    // mu-ladder on a resolvent problem: coupled gap column is monotone
    ordered_json r = ordered_json::parse(R"({
      "problem": {
        "domain": {"type": "interval", "a": 0.0, "b": 1.0},
        "measure": [{"type": "robin", "beta": 1.0}, {"type": "robin", "beta": 1.0}],
        "kind": "resolvent",
        "alpha": 1.0,
        "points": [[0.5]]
      },
      "sim": {"h": 1e-3, "n_paths": 2000, "seed": 3},
      "study": {"k_values": [1, 2, 4]},
      "output": {"verbosity": 0}
    })");
    CHECK(cmd_study("mu-ladder", parse_run_config(r), dir.string()) == 0);
    const std::string mcsv = slurp(dir / "study_mu-ladder.csv");
    std::vector<double> gaps;
    std::istringstream lines(mcsv);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("study,", 0) == 0) continue;
        const auto last_comma = line.rfind(',');
        gaps.push_back(std::stod(line.substr(last_comma + 1)));
    }
    REQUIRE(gaps.size() == 3);
    CHECK(gaps[1] <= gaps[0]);  // beta/2 sits closer to Neumann than beta
    CHECK(gaps[2] <= gaps[1]);

    CHECK_THROWS_AS(cmd_study("nosuch", cfg, dir.string()), ConfigError);
}

namespace {

// numeric rows of a study CSV, one vector per row
std::vector<std::vector<double>> study_rows(const std::string& csv) {
    std::vector<std::vector<double>> rows;
    std::istringstream lines(csv);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#' || line.rfind("study,", 0) == 0) continue;
        std::vector<double> row;
        std::istringstream cells(line.substr(line.find(',') + 1));
        std::string cell;
        while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json robin_study_config(std::size_t n_paths) {
    ordered_json j = ordered_json::parse(R"({
      "problem": {
        "id": "robin_study",
        "domain": {"type": "interval", "a": 0.0, "b": 1.0},
        "measure": [{"type": "robin", "beta": 1.0}, {"type": "robin", "beta": 1.0}],
        "kind": "semigroup",
        "t": 0.25,
        "points": [[0.5]]
      },
      "sim": {"h": 2e-4, "n_paths": 0, "seed": 5},
      "oracle": {"m_nodes": 401, "dt": 2.5e-4, "allowance": false},
      "output": {"verbosity": 0}
    })");
    j["sim"]["n_paths"] = n_paths;
    return j;
}

}  // namespace

TEST_CASE("cmd_study: step-size gaps to the oracle shrink down the h ladder") {
    const auto dir = temp_dir("study_h");
    ordered_json j = robin_study_config(50000);
    j["study"] = {{"h_values", {1.6e-3, 4e-4, 1e-4}}};
    CHECK(cmd_study("step-size", parse_run_config(j), dir.string()) == 0);
    const auto rows = study_rows(slurp(dir / "study_step-size.csv"));
    REQUIRE(rows.size() == 3);
    // columns: parameter, mean, stderr, oracle, gap
    CHECK(rows[1][4] < rows[0][4]);
    CHECK(rows[2][4] < rows[1][4]);
}

TEST_CASE("cmd_study: stderr scales like 1/sqrt(n) within 20%") {
    const auto dir = temp_dir("study_n");
    ordered_json j = robin_study_config(1000);
    j["study"] = {{"n_values", {1000, 10000, 100000}}};
    CHECK(cmd_study("paths", parse_run_config(j), dir.string()) == 0);
    const auto rows = study_rows(slurp(dir / "study_paths.csv"));
    REQUIRE(rows.size() == 3);
    for (int i : {0, 1}) {
        const double ratio = rows[i][2] / rows[i + 1][2];
        CHECK(std::abs(ratio - std::sqrt(10.0)) <= 0.2 * std::sqrt(10.0));
    }
}

TEST_CASE("version string is embedded") {
    CHECK(version_string().rfind("robinmc ", 0) == 0);
    CHECK(version_string().size() > std::string("robinmc ").size());
}
