// soupfall: command-line front end for the random-soup estimators.
//
// Usage: soupfall <command> [--config cfg.json] [--seed N] [--threads N]
//                 [--out DIR]
// Commands: sample carpet-prob fit-alpha remaining-dim phase-scan beta-star
//           small-c cle rw-area
//
// Seed priority: --seed flag, then the config file, then $SOUPFALL_SEED.
// Exit codes: 0 ok, 1 operation error, 2 config/usage error.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "soupfall/carpet.hpp"
#include "soupfall/cluster.hpp"
#include "soupfall/estimate.hpp"
#include "soupfall/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace soupfall;

namespace {

constexpr const char* kVersion = "0.1.0";

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    json raw;  // config echo for the manifest
    ShapeMeasure shape;
    Domain domain = UnitDisk{};
    uint64_t seed = 0;
    unsigned threads = 1;
    std::string out_dir = "out";

    double get_num(const char* key, std::optional<double> def = {}) const {
        if (raw.contains(key)) {
            if (!raw[key].is_number())
                throw config_error(std::string(key) + " must be a number");
            return raw[key].get<double>();
        }
        if (def) return *def;
        throw config_error(std::string("missing required field: ") + key);
    }
    uint64_t get_count(const char* key, std::optional<uint64_t> def = {}) const {
        double v = get_num(key, def ? std::optional<double>(
                                          static_cast<double>(*def))
                                    : std::nullopt);
        if (v < 0 || v != std::floor(v))
            throw config_error(std::string(key) + " must be a non-negative integer");
        return static_cast<uint64_t>(v);
    }
    std::vector<double> get_list(const char* key) const {
        if (!raw.contains(key) || !raw[key].is_array() || raw[key].empty())
            throw config_error(std::string(key) + " must be a non-empty array");
        std::vector<double> out;
        for (const json& v : raw[key]) {
            if (!v.is_number())
                throw config_error(std::string(key) + " entries must be numbers");
            out.push_back(v.get<double>());
        }
        return out;
    }
};

const std::set<std::string> kCommands = {
    "sample",     "carpet-prob", "fit-alpha", "remaining-dim", "phase-scan",
    "beta-star",  "small-c",     "cle",       "rw-area"};

std::set<std::string> allowed_keys(const std::string& cmd) {
    std::set<std::string> keys = {"command", "shape", "domain",
                                  "seed",    "threads", "out_dir"};
    auto add = [&](std::initializer_list<const char*> ks) {
        for (const char* k : ks) keys.insert(k);
    };
    if (cmd == "sample") add({"c", "eps_min", "rho_max"});
    if (cmd == "carpet-prob" || cmd == "fit-alpha")
        add({"c", "eps_list", "replicas", "pitch_rule", "coupled"});
    if (cmd == "remaining-dim")
        add({"c", "eps_min", "rho_max", "replicas"});
    if (cmd == "phase-scan") add({"c_grid", "eps_fixed", "replicas"});
    if (cmd == "beta-star")
        add({"c", "W", "eps_min", "pitch", "replicas"});
    if (cmd == "small-c") add({"c_list", "eps_list", "replicas"});
    if (cmd == "cle") add({"c", "beta"});
    if (cmd == "rw-area") add({"n", "replicas"});
    return keys;
}

ShapeMeasure parse_shape(const json& j) {
    ShapeMeasure s;
    if (j.is_string()) {
        std::string k = j.get<std::string>();
        if (k == "circle") s.kind = ShapeKind::Circle;
        else if (k == "stick") s.kind = ShapeKind::Stick;
        else if (k == "discrete_stick") s.kind = ShapeKind::DiscreteStick;
        else if (k == "rw_loop") s.kind = ShapeKind::RwLoop;
        else throw config_error("shape: unknown kind '" + k + "'");
        return s;
    }
    try {
        SoupSpec tmp = spec_from_json(
            json{{"c", 1.0}, {"shape", j}, {"domain", {{"kind", "unit_disk"}}},
                 {"eps_min", 0.01}, {"rho_max", 1.0}}
                .dump());
        return tmp.shape;
    } catch (const parse_error& e) {
        throw config_error(e.what());
    }
}

Domain parse_domain(const json& j) {
    json jj = j;
    if (j.is_string()) {
        std::string k = j.get<std::string>();
        if (k == "unit_disk" || k == "unit disk") return UnitDisk{};
        throw config_error("domain: unknown kind '" + k + "'");
    }
    try {
        SoupSpec tmp = spec_from_json(
            json{{"c", 1.0}, {"shape", {{"kind", "circle"}}}, {"domain", jj},
                 {"eps_min", 0.01}, {"rho_max", 1.0}}
                .dump());
        return tmp.domain;
    } catch (const parse_error& e) {
        throw config_error(e.what());
    }
}

RunConfig load_config(const std::string& command, const std::string& config_path,
                      std::optional<uint64_t> seed_flag,
                      std::optional<unsigned> threads_flag,
                      std::optional<std::string> out_flag) {
    RunConfig cfg;
    cfg.raw = json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw config_error("cannot open config file: " + config_path);
        try {
            in >> cfg.raw;
        } catch (const json::exception& e) {
            throw config_error(std::string("config parse: ") + e.what());
        }
        if (!cfg.raw.is_object()) throw config_error("config must be a JSON object");
    }
    cfg.command = command;
    if (cfg.command.empty()) {
        if (!cfg.raw.contains("command"))
            throw config_error("no command given (argument or config field)");
        cfg.command = cfg.raw["command"].get<std::string>();
    } else if (cfg.raw.contains("command") &&
               cfg.raw["command"].get<std::string>() != cfg.command) {
        throw config_error("config command disagrees with the command argument");
    }
    if (!kCommands.count(cfg.command))
        throw config_error("unknown command: " + cfg.command);

    std::set<std::string> allowed = allowed_keys(cfg.command);
    for (const auto& [k, v] : cfg.raw.items())
        if (!allowed.count(k))
            throw config_error("unknown config field for " + cfg.command + ": " + k);

    if (cfg.raw.contains("shape")) cfg.shape = parse_shape(cfg.raw["shape"]);
    if (cfg.raw.contains("domain")) cfg.domain = parse_domain(cfg.raw["domain"]);

    // seed priority: flag > config file > environment (env is the
    // lowest-priority fallback)
    if (seed_flag) {
        cfg.seed = *seed_flag;
    } else if (cfg.raw.contains("seed")) {
        cfg.seed = cfg.raw["seed"].get<uint64_t>();
    } else if (const char* env = std::getenv("SOUPFALL_SEED")) {
        char* end = nullptr;
        cfg.seed = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw config_error("SOUPFALL_SEED is not an integer");
    }
    if (threads_flag)
        cfg.threads = *threads_flag;
    else if (cfg.raw.contains("threads"))
        cfg.threads = cfg.raw["threads"].get<unsigned>();
    if (cfg.threads == 0) cfg.threads = 1;
    if (out_flag)
        cfg.out_dir = *out_flag;
    else if (cfg.raw.contains("out_dir"))
        cfg.out_dir = cfg.raw["out_dir"].get<std::string>();
    return cfg;
}

struct OutputSet {
    fs::path dir;
    std::vector<std::string> names;

    explicit OutputSet(const std::string& out_dir) : dir(out_dir) {
        fs::create_directories(dir);
    }
    fs::path path(const std::string& name) {
        names.push_back(name);
        return dir / name;
    }
};

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(12);
    ss << v;
    return ss.str();
}

void write_ptable_csv(const fs::path& p, const PTable& pt) {
    std::vector<std::string> rows;
    for (const PTableRow& r : pt.rows)
        rows.push_back(fmt(r.eps) + "," + std::to_string(r.trials) + "," +
                       std::to_string(r.successes) + "," + fmt(r.p_hat) + "," +
                       fmt(r.ci_lo) + "," + fmt(r.ci_hi));
    write_csv(p.string(), "eps,trials,successes,p_hat,ci_lo,ci_hi", rows);
}

json exponent_json(const ExponentReport& r) {
    return {{"alpha_hat", r.alpha_hat}, {"stderr", r.stderr_},
            {"r2", r.r2},               {"dim_hat", r.dim_hat},
            {"bracket_ok", r.bracket_ok}};
}

void write_json_file(const fs::path& p, const json& j) {
    std::ofstream out(p, std::ios::binary);
    out << j.dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write " + p.string());
}

PTable run_ptable(const RunConfig& cfg) {
    double c = cfg.get_num("c");
    std::vector<double> eps = cfg.get_list("eps_list");
    uint64_t replicas = cfg.get_count("replicas", 1000);
    double divisor = cfg.get_num("pitch_rule", 8.0);
    bool coupled = cfg.raw.value("coupled", false);
    return coupled ? estimate_p_coupled(c, cfg.shape, eps, replicas, divisor,
                                        cfg.seed, cfg.threads)
                   : estimate_p(c, cfg.shape, eps, replicas, divisor, cfg.seed,
                                cfg.threads);
}

int dispatch(const RunConfig& cfg, OutputSet& out) {
    if (cfg.command == "sample") {
        SoupSpec spec;
        spec.c = cfg.get_num("c");
        spec.shape = cfg.shape;
        spec.domain = cfg.domain;
        spec.eps_min = cfg.get_num("eps_min");
        spec.rho_max = cfg.get_num("rho_max", domain_diameter(cfg.domain));
        Soup soup = sample_soup(spec, cfg.seed);
        save_soup(soup, out.path("soup.jsonl").string());
        std::cout << "curves: " << soup.curves.size()
                  << " acceptance: " << soup.acceptance << "\n";
    } else if (cfg.command == "carpet-prob") {
        PTable pt = run_ptable(cfg);
        write_ptable_csv(out.path("ptable.csv"), pt);
        for (const PTableRow& r : pt.rows)
            std::cout << "eps " << r.eps << " p_hat " << r.p_hat << " ["
                      << r.ci_lo << ", " << r.ci_hi << "]\n";
    } else if (cfg.command == "fit-alpha") {
        PTable pt = run_ptable(cfg);
        write_ptable_csv(out.path("ptable.csv"), pt);
        ExponentReport rep = fit_alpha(pt);
        json j = exponent_json(rep);
        write_json_file(out.path("alpha.json"), j);
        std::cout << j.dump() << "\n";
    } else if (cfg.command == "remaining-dim") {
        double c = cfg.get_num("c");
        double eps_min = cfg.get_num("eps_min", 1.0 / 256);
        double rho_max = cfg.get_num("rho_max", 2.0);
        uint64_t replicas = cfg.get_count("replicas", 8);
        BBox wb = domain_bbox(cfg.domain);
        BBox sample_box = wb;
        sample_box.inflate(rho_max);
        SoupSpec spec;
        spec.c = c;
        spec.shape = cfg.shape;
        spec.domain = Rect{sample_box.x0, sample_box.y0, sample_box.x1,
                           sample_box.y1};
        spec.eps_min = eps_min;
        spec.rho_max = rho_max;
        double pitch = eps_min / 2;
        std::vector<int> factors = {1, 2, 4, 8, 16};
        std::vector<double> mean_counts(factors.size(), 0.0);
        Raster last;
        for (uint64_t repi = 0; repi < replicas; ++repi) {
            CounterRng rng(cfg.seed, 30, repi);
            Soup soup = sample_soup(spec, rng);
            Raster rem = remaining_raster(soup, eps_min, cfg.domain, pitch);
            for (size_t k = 0; k < factors.size(); ++k)
                mean_counts[k] += static_cast<double>(box_count(rem, factors[k]));
            if (repi + 1 == replicas) last = std::move(rem);
        }
        std::vector<BoxCount> counts;
        std::vector<std::string> rows;
        for (size_t k = 0; k < factors.size(); ++k) {
            double e = pitch * factors[k];
            double n = mean_counts[k] / static_cast<double>(replicas);
            counts.push_back({e, n});
            rows.push_back(fmt(e) + "," + fmt(n));
        }
        write_csv(out.path("box_counts.csv").string(), "eps,mean_count", rows);
        write_pgm(last, out.path("remaining.pgm").string());
        ExponentReport rep = box_dimension(counts);
        json j = exponent_json(rep);
        write_json_file(out.path("dimension.json"), j);
        std::cout << j.dump() << "\n";
    } else if (cfg.command == "phase-scan") {
        std::vector<double> grid = cfg.get_list("c_grid");
        double eps_fixed = cfg.get_num("eps_fixed", 0.1);
        uint64_t replicas = cfg.get_count("replicas", 500);
        PhaseScan scan =
            phase_scan(cfg.shape, grid, eps_fixed, replicas, cfg.seed, cfg.threads);
        std::vector<std::string> rows;
        for (const PhaseScanRow& r : scan.rows)
            rows.push_back(fmt(r.c) + "," + std::to_string(r.trials) + "," +
                           std::to_string(r.successes) + "," + fmt(r.p_hat) +
                           "," + fmt(r.ci_lo) + "," + fmt(r.ci_hi));
        write_csv(out.path("phase_scan.csv").string(),
                  "c,trials,successes,p_hat,ci_lo,ci_hi", rows);
        json j;
        if (scan.half_bracket)
            j["half_bracket"] = {scan.half_bracket->first, scan.half_bracket->second};
        else
            j["half_bracket"] = nullptr;
        write_json_file(out.path("phase_scan.json"), j);
        std::cout << j.dump() << "\n";
    } else if (cfg.command == "beta-star") {
        double c = cfg.get_num("c");
        double W = cfg.get_num("W", 8.0);
        double eps_min = cfg.get_num("eps_min", 0.05);
        double pitch = cfg.get_num("pitch", 0.01);
        uint64_t replicas = cfg.get_count("replicas", 200);
        BetaStarResult res = estimate_beta_star(c, cfg.shape, W, eps_min, pitch,
                                                replicas, cfg.seed, cfg.threads);
        json j{{"beta_star", res.estimate.mean},
               {"half_width", res.estimate.half_width},
               {"n", res.estimate.n},
               {"truncated_fraction", res.truncated_fraction}};
        write_json_file(out.path("beta_star.json"), j);
        std::cout << j.dump() << "\n";
    } else if (cfg.command == "small-c") {
        std::vector<double> c_list = cfg.get_list("c_list");
        std::vector<double> eps = cfg.get_list("eps_list");
        uint64_t replicas = cfg.get_count("replicas", 1000);
        std::vector<SmallCRow> rowsv = small_c_report(cfg.shape, c_list, eps,
                                                      replicas, cfg.seed,
                                                      cfg.threads);
        std::vector<std::string> rows;
        for (const SmallCRow& r : rowsv)
            rows.push_back(fmt(r.c) + "," + fmt(r.alpha_hat) + "," +
                           fmt(r.alpha_stderr) + "," + fmt(r.ratio) + "," +
                           fmt(r.beta) + "," +
                           (r.subset_inequality_ok ? "1" : "0"));
        write_csv(out.path("small_c.csv").string(),
                  "c,alpha_hat,alpha_stderr,ratio,beta,subset_inequality_ok",
                  rows);
        std::cout << "rows: " << rows.size() << "\n";
    } else if (cfg.command == "cle") {
        double c = cfg.get_num("c");
        std::optional<double> beta_in;
        if (cfg.raw.contains("beta")) beta_in = cfg.get_num("beta");
        CleValues v = cle_values(c, beta_in);
        json j{{"kappa", v.kappa}, {"d", v.d}, {"boundary_dim", v.boundary_dim}};
        if (beta_in) j["delta"] = v.delta;
        write_json_file(out.path("cle.json"), j);
        std::cout << j.dump() << "\n";
    } else if (cfg.command == "rw-area") {
        int n = static_cast<int>(cfg.get_count("n", 8));
        uint64_t replicas = cfg.get_count("replicas", 2000);
        RwAreaReport rep = rw_area_check(n, replicas, cfg.seed);
        json j{{"n", rep.n},
               {"replicas", rep.replicas},
               {"mean_area", rep.mean_area},
               {"expected", rep.expected},
               {"ratio", rep.ratio},
               {"ratio_half_width", rep.ratio_half_width}};
        write_json_file(out.path("rw_area.json"), j);
        std::cout << j.dump() << "\n";
    }
    return 0;
}

void write_manifest(const RunConfig& cfg, OutputSet& out, double wall_s) {
    json files = json::array();
    for (const std::string& name : out.names) {
        fs::path p = out.dir / name;
        files.push_back({{"name", name},
                         {"bytes", static_cast<uint64_t>(fs::file_size(p))},
                         {"hash", file_hash_hex(p.string())}});
    }
    json m{{"config", cfg.raw},
           {"command", cfg.command},
           {"seed", cfg.seed},
           {"threads", cfg.threads},
           {"version", kVersion},
           {"wall_time_s", wall_s},
           {"files", files}};
    fs::path tmp = out.dir / "manifest.json.tmp";
    write_json_file(tmp, m);
    fs::rename(tmp, out.dir / "manifest.json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random soup sampler and estimators"};
    app.require_subcommand(0, 1);

    std::string config_path;
    std::optional<uint64_t> seed_flag;
    std::optional<unsigned> threads_flag;
    std::optional<std::string> out_flag;
    std::string command;

    auto add_opts = [&](CLI::App* a) {
        a->add_option("--config", config_path, "JSON config file");
        a->add_option("--seed", seed_flag, "RNG seed (overrides config and env)");
        a->add_option("--threads", threads_flag, "worker threads");
        a->add_option("--out", out_flag, "output directory");
    };
    add_opts(&app);
    for (const std::string& name : kCommands) {
        CLI::App* sub = app.add_subcommand(name);
        add_opts(sub);
        sub->callback([&command, name]() { command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    RunConfig cfg;
    try {
        cfg = load_config(command, config_path, seed_flag, threads_flag, out_flag);
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        auto t0 = std::chrono::steady_clock::now();
        OutputSet out(cfg.out_dir);
        int rc = dispatch(cfg, out);
        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count();
        write_manifest(cfg, out, wall);
        return rc;
    } catch (const config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
