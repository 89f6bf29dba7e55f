#include "robinmc/config.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "robinmc/oracle.hpp"
#include "robinmc/sampler.hpp"
#include "robinmc/testfuncs.hpp"
#include "robinmc/version.hpp"

namespace robinmc {

using ordered_json = nlohmann::ordered_json;

const std::string& version_string() {
    static const std::string v = std::string("robinmc ") + ROBINMC_VERSION;
    return v;
}

namespace {

void expect_object(const ordered_json& j, const std::string& ctx) {
    if (!j.is_object()) throw ConfigError(ctx + " must be an object");
}

void reject_unknown(const ordered_json& j, const std::string& ctx,
                    std::initializer_list<const char*> keys) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            if (it.key() == k) known = true;
        if (!known) throw ConfigError("unknown key '" + ctx + "." + it.key() + "'");
    }
}

const ordered_json& require(const ordered_json& j, const std::string& ctx, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ConfigError("missing required field '" + ctx + "." + key + "'");
    return *it;
}

double get_number(const ordered_json& j, const std::string& ctx, const char* key,
                  bool required = true, double fallback = 0.0) {
    auto it = j.find(key);
    if (it == j.end()) {
        if (required) throw ConfigError("missing required field '" + ctx + "." + key + "'");
        return fallback;
    }
    if (!it->is_number()) throw ConfigError("field '" + ctx + "." + key + "' must be a number");
    return it->get<double>();
}

std::string get_string(const ordered_json& j, const std::string& ctx, const char* key,
                       bool required = true, std::string fallback = "") {
    auto it = j.find(key);
    if (it == j.end()) {
        if (required) throw ConfigError("missing required field '" + ctx + "." + key + "'");
        return fallback;
    }
    if (!it->is_string()) throw ConfigError("field '" + ctx + "." + key + "' must be a string");
    return it->get<std::string>();
}

Domain parse_domain(const ordered_json& j) {
    expect_object(j, "problem.domain");
    const std::string type = get_string(j, "problem.domain", "type");
    Domain dom;
    if (type == "interval") {
        reject_unknown(j, "problem.domain", {"type", "a", "b"});
        dom = Interval{get_number(j, "problem.domain", "a"), get_number(j, "problem.domain", "b")};
    } else if (type == "rectangle") {
        reject_unknown(j, "problem.domain", {"type", "x0", "x1", "y0", "y1"});
        dom = Rectangle{get_number(j, "problem.domain", "x0"), get_number(j, "problem.domain", "x1"),
                        get_number(j, "problem.domain", "y0"), get_number(j, "problem.domain", "y1")};
    } else if (type == "disk") {
        reject_unknown(j, "problem.domain", {"type", "cx", "cy", "radius"});
        dom = Disk{{get_number(j, "problem.domain", "cx", false, 0.0),
                    get_number(j, "problem.domain", "cy", false, 0.0)},
                   get_number(j, "problem.domain", "radius")};
    } else {
        throw ConfigError("problem.domain.type must be interval | rectangle | disk");
    }
    try {
        validate(dom);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("problem.domain: ") + e.what());
    }
    return dom;
}

ComponentBc parse_component_bc(const ordered_json& j, const std::string& ctx) {
    expect_object(j, ctx);
    const std::string type = get_string(j, ctx, "type");
    if (type == "neumann") {
        reject_unknown(j, ctx, {"type"});
        return ComponentBc::neumann();
    }
    if (type == "dirichlet") {
        reject_unknown(j, ctx, {"type"});
        return ComponentBc::dirichlet();
    }
    if (type != "robin") throw ConfigError(ctx + ".type must be neumann | robin | dirichlet");
    reject_unknown(j, ctx, {"type", "beta"});
    const ordered_json& beta = require(j, ctx, "beta");
    if (beta.is_number()) return ComponentBc::robin(beta.get<double>());
    if (beta.is_array()) {
        BetaProfile profile;
        for (const auto& cell : beta) {
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw ConfigError(ctx + ".beta cells must be [s_i, value_i] pairs");
            profile.breaks.push_back(cell[0].get<double>());
            profile.values.push_back(cell[1].get<double>());
        }
        return ComponentBc::robin(std::move(profile));
    }
    throw ConfigError(ctx + ".beta must be a number or [[s,v],...] pairs");
}

std::vector<Point> parse_points(const ordered_json& j, int dim) {
    if (!j.is_array() || j.empty()) throw ConfigError("problem.points must be a non-empty array");
    std::vector<Point> pts;
    for (const auto& e : j) {
        if (!e.is_array() || static_cast<int>(e.size()) != dim)
            throw ConfigError("problem.points entries must be arrays of length " +
                              std::to_string(dim));
        Point p;
        p.x = e[0].get<double>();
        if (dim == 2) p.y = e[1].get<double>();
        pts.push_back(p);
    }
    return pts;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

ordered_json measure_json(const std::vector<ComponentBc>& bcs) {
    ordered_json arr = ordered_json::array();
    for (const auto& bc : bcs) {
        ordered_json e;
        switch (bc.kind) {
            case BcKind::neumann: e["type"] = "neumann"; break;
            case BcKind::dirichlet: e["type"] = "dirichlet"; break;
            case BcKind::robin:
                e["type"] = "robin";
                if (bc.beta.is_constant()) {
                    e["beta"] = bc.beta.values[0];
                } else {
                    ordered_json cells = ordered_json::array();
                    for (std::size_t i = 0; i < bc.beta.breaks.size(); ++i)
                        cells.push_back({bc.beta.breaks[i], bc.beta.values[i]});
                    e["beta"] = cells;
                }
                break;
        }
        arr.push_back(e);
    }
    return arr;
}

ordered_json domain_json(const Domain& dom) {
    struct V {
        ordered_json operator()(const Interval& d) const {
            return {{"type", "interval"}, {"a", d.a}, {"b", d.b}};
        }
        ordered_json operator()(const Rectangle& d) const {
            return {{"type", "rectangle"}, {"x0", d.x0}, {"x1", d.x1}, {"y0", d.y0}, {"y1", d.y1}};
        }
        ordered_json operator()(const Disk& d) const {
            return {{"type", "disk"}, {"cx", d.center.x}, {"cy", d.center.y}, {"radius", d.radius}};
        }
    };
    return std::visit(V{}, dom);
}

}  // namespace

RunConfig parse_run_config(const ordered_json& j) {
    expect_object(j, "config");
    reject_unknown(j, "config", {"problem", "sim", "oracle", "output", "study"});
    RunConfig cfg;

    const ordered_json& prob = require(j, "config", "problem");
    expect_object(prob, "problem");
    reject_unknown(prob, "problem",
                   {"id", "domain", "measure", "f", "kind", "t", "alpha", "points"});
    cfg.problem.id = get_string(prob, "problem", "id", false, "problem");
    cfg.problem.domain = parse_domain(require(prob, "problem", "domain"));
    const int nc = n_components(cfg.problem.domain);

    const ordered_json& meas = require(prob, "problem", "measure");
    if (!meas.is_array() || static_cast<int>(meas.size()) != nc)
        throw ConfigError("problem.measure must be an array with one entry per component (" +
                          std::to_string(nc) + ")");
    for (int c = 0; c < nc; ++c)
        cfg.problem.bcs.push_back(
            parse_component_bc(meas[c], "problem.measure[" + std::to_string(c) + "]"));
    try {
        cfg.problem.measure();  // full validation against the domain
    } catch (const std::exception& e) {
        throw ConfigError(std::string("problem.measure: ") + e.what());
    }

    cfg.problem.f_name = get_string(prob, "problem", "f", false, "one");
    try {
        make_test_function(cfg.problem.f_name, cfg.problem.domain);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("problem.f: ") + e.what());
    }
    cfg.problem.kind = get_string(prob, "problem", "kind", false, "semigroup");
    if (cfg.problem.kind == "semigroup") {
        cfg.problem.t = get_number(prob, "problem", "t");
        if (!(cfg.problem.t >= 0.0)) throw ConfigError("problem.t must be >= 0");
    } else if (cfg.problem.kind == "resolvent") {
        cfg.problem.alpha = get_number(prob, "problem", "alpha");
        if (!(cfg.problem.alpha > 0.0)) throw ConfigError("problem.alpha must be > 0");
    } else {
        throw ConfigError("problem.kind must be semigroup | resolvent");
    }
    cfg.problem.points =
        parse_points(require(prob, "problem", "points"), dimension(cfg.problem.domain));
    for (const Point& p : cfg.problem.points)
        if (signed_distance(cfg.problem.domain, p) < -1e-12 * diameter(cfg.problem.domain))
            throw ConfigError("problem.points: point outside the closed domain");

    const ordered_json& sim = require(j, "config", "sim");
    expect_object(sim, "sim");
    reject_unknown(sim, "sim", {"h", "scheme", "eps", "bridge_correction", "T", "seed", "n_paths"});
    cfg.sim.h = get_number(sim, "sim", "h");
    const std::string scheme = get_string(sim, "sim", "scheme", false, "projection");
    if (scheme == "projection")
        cfg.sim.scheme = Scheme::projection;
    else if (scheme == "occupation")
        cfg.sim.scheme = Scheme::occupation;
    else
        throw ConfigError("sim.scheme must be projection | occupation");
    cfg.sim.eps = get_number(sim, "sim", "eps", false, 1e-2);
    if (auto it = sim.find("bridge_correction"); it != sim.end()) {
        if (!it->is_boolean()) throw ConfigError("sim.bridge_correction must be a boolean");
        cfg.sim.bridge_correction = it->get<bool>();
    }
    cfg.sim.T = get_number(sim, "sim", "T", false,
                           cfg.problem.kind == "semigroup" ? cfg.problem.t : 1.0);
    if (auto it = sim.find("seed"); it != sim.end()) {
        if (!it->is_number_unsigned())
            throw ConfigError("sim.seed must be an unsigned integer");
        cfg.sim.seed = it->get<std::uint64_t>();
    }
    const double n_paths = get_number(sim, "sim", "n_paths");
    if (!(n_paths >= 2)) throw ConfigError("sim.n_paths must be >= 2");
    cfg.n_paths = static_cast<std::size_t>(n_paths);
    try {
        validate(cfg.sim);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("sim: ") + e.what());
    }
    if (cfg.problem.kind == "semigroup" && cfg.problem.t > cfg.sim.T)
        throw ConfigError("sim.T must cover problem.t");

    if (auto it = j.find("oracle"); it != j.end()) {
        expect_object(*it, "oracle");
        reject_unknown(*it, "oracle", {"enabled", "m_nodes", "dt", "allowance"});
        if (auto e = it->find("enabled"); e != it->end()) cfg.oracle.enabled = e->get<bool>();
        cfg.oracle.m_nodes =
            static_cast<int>(get_number(*it, "oracle", "m_nodes", false, cfg.oracle.m_nodes));
        cfg.oracle.dt = get_number(*it, "oracle", "dt", false, cfg.oracle.dt);
        if (auto e = it->find("allowance"); e != it->end()) cfg.oracle.allowance = e->get<bool>();
        if (cfg.oracle.m_nodes < 3) throw ConfigError("oracle.m_nodes must be >= 3");
        if (!(cfg.oracle.dt > 0.0)) throw ConfigError("oracle.dt must be > 0");
    }

    if (auto it = j.find("output"); it != j.end()) {
        expect_object(*it, "output");
        reject_unknown(*it, "output", {"csv", "json", "trace_csv", "verbosity"});
        cfg.output.csv = get_string(*it, "output", "csv", false, cfg.output.csv);
        cfg.output.json_report = get_string(*it, "output", "json", false, cfg.output.json_report);
        cfg.output.trace_csv = get_string(*it, "output", "trace_csv", false, "");
        cfg.output.verbosity =
            static_cast<int>(get_number(*it, "output", "verbosity", false, 1.0));
    }

    if (auto it = j.find("study"); it != j.end()) {
        expect_object(*it, "study");
        reject_unknown(*it, "study", {"h_values", "n_values", "k_values"});
        if (auto e = it->find("h_values"); e != it->end())
            cfg.study.h_values = e->get<std::vector<double>>();
        if (auto e = it->find("n_values"); e != it->end())
            cfg.study.n_values = e->get<std::vector<std::size_t>>();
        if (auto e = it->find("k_values"); e != it->end())
            cfg.study.k_values = e->get<std::vector<int>>();
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_run_config(j);
}

ordered_json RunConfig::resolved() const {
    ordered_json j;
    j["problem"] = {{"id", problem.id},
                    {"domain", domain_json(problem.domain)},
                    {"measure", measure_json(problem.bcs)},
                    {"f", problem.f_name},
                    {"kind", problem.kind}};
    if (problem.kind == "semigroup") j["problem"]["t"] = problem.t;
    if (problem.kind == "resolvent") j["problem"]["alpha"] = problem.alpha;
    ordered_json pts = ordered_json::array();
    for (const Point& p : problem.points) {
        if (dimension(problem.domain) == 1)
            pts.push_back(ordered_json::array({p.x}));
        else
            pts.push_back(ordered_json::array({p.x, p.y}));
    }
    j["problem"]["points"] = pts;
    j["sim"] = {{"h", sim.h},
                {"scheme", sim.scheme == Scheme::projection ? "projection" : "occupation"},
                {"eps", sim.eps},
                {"bridge_correction", sim.bridge_correction},
                {"T", sim.T},
                {"seed", sim.seed},
                {"n_paths", n_paths}};
    j["oracle"] = {{"enabled", oracle.enabled},
                   {"m_nodes", oracle.m_nodes},
                   {"dt", oracle.dt},
                   {"allowance", oracle.allowance}};
    j["output"] = {{"csv", output.csv},
                   {"json", output.json_report},
                   {"trace_csv", output.trace_csv},
                   {"verbosity", output.verbosity}};
    j["study"] = {{"h_values", study.h_values},
                  {"n_values", study.n_values},
                  {"k_values", study.k_values}};
    return j;
}

namespace {

struct SolveRow {
    Point x;
    Estimate est;
    bool has_oracle = false;
    double oracle = 0.0;
    double allowance = 0.0;
};

Estimate run_estimator(const RunConfig& cfg, Point x, std::size_t n, const SimConfig& sim) {
    const RobinMeasure mu = cfg.problem.measure();
    const TestFunction f = make_test_function(cfg.problem.f_name, cfg.problem.domain);
    if (cfg.problem.kind == "semigroup")
        return semigroup_weight(cfg.problem.domain, mu, f, cfg.problem.t, x, n, sim);
    return resolvent(cfg.problem.domain, mu, f, cfg.problem.alpha, x, n, sim);
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << text;
}

std::string scheme_name(const SimConfig& sim) {
    return sim.scheme == Scheme::projection ? "projection" : "occupation";
}

}  // namespace

int cmd_solve(const RunConfig& cfg, const std::string& out_dir) {
    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);
    const RobinMeasure mu = cfg.problem.measure();
    const TestFunction f = make_test_function(cfg.problem.f_name, cfg.problem.domain);

    std::vector<SolveRow> rows;
    for (Point x : cfg.problem.points) {
        SolveRow row;
        row.x = x;
        row.est = run_estimator(cfg, x, cfg.n_paths, cfg.sim);
        if (cfg.oracle.enabled) {
            try {
                row.oracle =
                    cfg.problem.kind == "semigroup"
                        ? semigroup_oracle_value(cfg.problem.domain, mu, f.eval, cfg.problem.t, x,
                                                 cfg.oracle.m_nodes, cfg.oracle.dt)
                        : resolvent_oracle_value(cfg.problem.domain, mu, f.eval, cfg.problem.alpha,
                                                 x, cfg.oracle.m_nodes);
                row.has_oracle = true;
            } catch (const std::invalid_argument&) {
                row.has_oracle = false;  // no oracle for this variant; recorded as null
            }
            if (row.has_oracle && cfg.oracle.allowance) {
                SimConfig fine = cfg.sim;
                fine.h /= 4.0;
                const Estimate ef =
                    run_estimator(cfg, x, std::max<std::size_t>(cfg.n_paths / 2, 2), fine);
                // weak order 1/2: triple the (h, h/4) difference and cover
                // the calibration noise
                row.allowance = 3.0 * (std::abs(row.est.mean - ef.mean) +
                                       2.0 * std::hypot(row.est.std_error, ef.std_error));
            }
        }
        rows.push_back(std::move(row));
    }

    // CSV table; '#' preamble carries provenance without breaking ingestion
    std::string csv = "# " + version_string() + "\n# config: " + cfg.resolved().dump() + "\n";
    csv += "problem_id,estimator_kind,t_or_alpha,x,y,mean,std_error,n_paths,h,scheme\n";
    const double t_or_alpha =
        cfg.problem.kind == "semigroup" ? cfg.problem.t : cfg.problem.alpha;
    for (const auto& row : rows) {
        csv += cfg.problem.id + "," + to_string(row.est.kind) + "," + fmt(t_or_alpha) + "," +
               fmt(row.x.x) + "," + fmt(row.x.y) + "," + fmt(row.est.mean) + "," +
               fmt(row.est.std_error) + "," + std::to_string(row.est.n_paths) + "," +
               fmt(cfg.sim.h) + "," + scheme_name(cfg.sim) + "\n";
    }
    write_text_file(out / cfg.output.csv, csv);

    // JSON report mirror
    ordered_json rep;
    rep["version"] = version_string();
    rep["convention"] = "half-laplacian";
    rep["config"] = cfg.resolved();
    rep["results"] = ordered_json::array();
    for (const auto& row : rows) {
        ordered_json r;
        r["x"] = ordered_json::array({row.x.x, row.x.y});
        r["estimator_kind"] = to_string(row.est.kind);
        r["mean"] = row.est.mean;
        r["std_error"] = row.est.std_error;
        r["n_paths"] = row.est.n_paths;
        if (row.has_oracle) {
            r["oracle"] = row.oracle;
            r["abs_diff"] = std::abs(row.est.mean - row.oracle);
            r["allowance"] = row.allowance;
            r["within_tolerance"] =
                std::abs(row.est.mean - row.oracle) <=
                3.0 * row.est.std_error + row.allowance + 1e-10 * (1.0 + std::abs(row.oracle));
        } else {
            r["oracle"] = nullptr;
        }
        rep["results"].push_back(r);
    }
    write_text_file(out / cfg.output.json_report, rep.dump(2) + "\n");

    // optional trace dump for debugging
    if (!cfg.output.trace_csv.empty()) {
        const int nc = n_components(cfg.problem.domain);
        std::string tcsv = "path,t,x,y";
        for (int c = 0; c < nc; ++c) tcsv += ",ell_" + std::to_string(c);
        tcsv += ",A,alive\n";
        std::vector<double> obs;
        for (int k = 1; k <= 64; ++k) obs.push_back(cfg.sim.T * k / 64.0);
        for (std::uint64_t i = 0; i < 4; ++i) {
            const Trace tr =
                simulate(cfg.problem.domain, mu, cfg.problem.points[0], cfg.sim, i, obs);
            for (const auto& rec : tr.records) {
                tcsv += std::to_string(i) + "," + fmt(rec.t) + "," + fmt(rec.x.x) + "," +
                        fmt(rec.x.y);
                for (int c = 0; c < nc; ++c) tcsv += "," + fmt(rec.ell[c]);
                tcsv += "," + fmt(rec.A) + "," + (rec.alive ? std::string("1") : std::string("0")) +
                        "\n";
            }
        }
        write_text_file(out / cfg.output.trace_csv, tcsv);
    }

    if (cfg.output.verbosity > 0) {
        for (const auto& row : rows) {
            std::printf("%s %s at (%.6g, %.6g): mean=%.8g stderr=%.3g", cfg.problem.id.c_str(),
                        to_string(row.est.kind).c_str(), row.x.x, row.x.y, row.est.mean,
                        row.est.std_error);
            if (row.has_oracle)
                std::printf(" oracle=%.8g |diff|=%.3g allowance=%.3g", row.oracle,
                            std::abs(row.est.mean - row.oracle), row.allowance);
            std::printf("\n");
        }
    }
    return 0;
}

int cmd_study(const std::string& kind, const RunConfig& cfg, const std::string& out_dir) {
    const std::filesystem::path out(out_dir);
    std::filesystem::create_directories(out);
    const RobinMeasure mu = cfg.problem.measure();
    const TestFunction f = make_test_function(cfg.problem.f_name, cfg.problem.domain);
    const Point x = cfg.problem.points.front();

    std::string csv = "# " + version_string() + "\n# config: " + cfg.resolved().dump() + "\n";
    csv += "study,parameter,mean,std_error,oracle,gap\n";
    auto add_row = [&](const std::string& param, double mean, double se, double oracle,
                       double gap) {
        csv += kind + "," + param + "," + fmt(mean) + "," + fmt(se) + "," + fmt(oracle) + "," +
               fmt(gap) + "\n";
    };

    auto oracle_value = [&]() {
        return cfg.problem.kind == "semigroup"
                   ? semigroup_oracle_value(cfg.problem.domain, mu, f.eval, cfg.problem.t, x,
                                            cfg.oracle.m_nodes, cfg.oracle.dt)
                   : resolvent_oracle_value(cfg.problem.domain, mu, f.eval, cfg.problem.alpha, x,
                                            cfg.oracle.m_nodes);
    };

    if (kind == "step-size") {
        const double oracle = oracle_value();
        for (double h : cfg.study.h_values) {
            SimConfig sim = cfg.sim;
            sim.h = h;
            const Estimate est = run_estimator(cfg, x, cfg.n_paths, sim);
            add_row(fmt(h), est.mean, est.std_error, oracle, std::abs(est.mean - oracle));
        }
    } else if (kind == "paths") {
        const double oracle = oracle_value();
        for (std::size_t n : cfg.study.n_values) {
            const Estimate est = run_estimator(cfg, x, n, cfg.sim);
            add_row(std::to_string(n), est.mean, est.std_error, oracle,
                    std::abs(est.mean - oracle));
        }
    } else if (kind == "mu-ladder") {
        if (cfg.problem.kind != "resolvent")
            throw ConfigError("study mu-ladder needs problem.kind = resolvent");
        // beta/k family plus the Neumann limit, coupled on shared noise
        std::vector<RobinMeasure> rungs{RobinMeasure::neumann(cfg.problem.domain)};
        for (int k : cfg.study.k_values) rungs.push_back(scale(mu, 1.0 / k));
        const auto samples = coupled_resolvent_samples(cfg.problem.domain, rungs, f,
                                                       cfg.problem.alpha, x, cfg.n_paths, cfg.sim);
        const Estimate neumann = summarize(samples[0], cfg.sim, EstimatorKind::weight);
        for (std::size_t i = 0; i < cfg.study.k_values.size(); ++i) {
            const int k = cfg.study.k_values[i];
            const Estimate est = summarize(samples[i + 1], cfg.sim, EstimatorKind::weight);
            double oracle = 0.0;
            try {
                oracle = resolvent_oracle_value(cfg.problem.domain, scale(mu, 1.0 / k), f.eval,
                                                cfg.problem.alpha, x, cfg.oracle.m_nodes);
            } catch (const std::invalid_argument&) {
                oracle = std::numeric_limits<double>::quiet_NaN();
            }
            add_row(std::to_string(k), est.mean, est.std_error, oracle,
                    neumann.mean - est.mean);  // coupled gap to Neumann
        }
    } else {
        throw ConfigError("study kind must be step-size | paths | mu-ladder");
    }

    write_text_file(out / ("study_" + kind + ".csv"), csv);
    if (cfg.output.verbosity > 0) std::fputs(csv.c_str(), stdout);
    return 0;
}

}  // namespace robinmc
