// subfbm: batch CLI for subdiffusive-FBM currency option pricing experiments.
//
// subfbm <command> [--preset NAME] [--config FILE] [--set key=value]...
//                  [--out FILE] [--seed N]
// commands: paths, price, greeks, minprice, sweep, compare, hedge
//
// Config precedence: preset defaults < config file < --set < flags.
// SUBFBM_SEED is honored as a default-seed fallback; --seed wins.
// Exit status: 0 success, 2 validation failure, 1 runtime failure.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subfbm/csv.hpp"
#include "subfbm/experiments.hpp"
#include "subfbm/greeks.hpp"
#include "subfbm/hedging_analysis.hpp"
#include "subfbm/mc_hedging.hpp"
#include "subfbm/pricing.hpp"
#include "subfbm/stochastic.hpp"

namespace {

using KvMap = std::map<std::string, std::string>;

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "S",      "K",      "t",       "T",       "kind",    "sigma",   "r_d",
        "r_f",    "alpha",  "H",       "k",       "dt",      "S0",      "t_end",
        "n_points", "dtau", "n_paths", "var",     "from",    "to",      "steps",
        "moneyness", "T_min", "T_max", "T_steps", "K_min",   "K_max",   "K_steps",
        "seed"};
    return keys;
}

KvMap preset_defaults(const std::string& name) {
    KvMap kv;
    if (name == "fig1") {
        kv = {{"S0", "1"},      {"sigma", "0.1"}, {"r_d", "0.03"}, {"r_f", "0.02"},
              {"alpha", "0.9"}, {"H", "0.8"},     {"k", "0"},      {"dt", "0.01"},
              {"t_end", "1"},   {"n_points", "500"}, {"dtau", "0"}};
    } else if (name == "fig4") {
        kv = {{"S", "1.4"},    {"K", "1.5"},     {"sigma", "0.1"}, {"r_d", "0.03"},
              {"r_f", "0.02"}, {"T", "1"},       {"t", "0.1"},     {"dt", "0.01"},
              {"k", "0.01"},   {"H", "0.8"},     {"alpha", "0.9"}, {"kind", "call"},
              {"n_paths", "100000"}, {"dtau", "0"},
              {"var", "k"},    {"from", "0"},    {"to", "0.05"},   {"steps", "50"}};
    } else if (name == "fig56-in" || name == "fig56-out") {
        kv = {{"S", "1.2"},    {"sigma", "0.5"}, {"r_d", "0.05"},  {"r_f", "0.01"},
              {"t", "0.1"},    {"dt", "0.01"},   {"k", "0.001"},   {"H", "0.8"},
              {"alpha", "0.9"}, {"kind", "call"},
              {"T_min", "0.2"}, {"T_max", "2"},  {"T_steps", "19"}};
        if (name == "fig56-in") {
            kv["moneyness"] = "in";
            kv["K_min"] = "0.8";
            kv["K_max"] = "1.19";
            kv["K_steps"] = "14";
        } else {
            kv["moneyness"] = "out";
            kv["K_min"] = "1.21";
            kv["K_max"] = "1.4";
            kv["K_steps"] = "20";
        }
    } else {
        throw std::invalid_argument("unknown preset '" + name +
                                    "' (expected fig1, fig4, fig56-in, fig56-out)");
    }
    return kv;
}

void set_checked(KvMap& kv, const std::string& key, const std::string& value) {
    if (!known_keys().count(key))
        throw std::invalid_argument("unknown config key '" + key + "'");
    kv[key] = value;
}

void load_config_file(KvMap& kv, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config file line " + std::to_string(lineno) +
                                        ": expected key=value");
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        set_checked(kv, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void apply_sets(KvMap& kv, const std::vector<std::string>& sets) {
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects key=value, got '" + s + "'");
        set_checked(kv, s.substr(0, eq), s.substr(eq + 1));
    }
}

double get_num(const KvMap& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw std::invalid_argument("missing config key '" + key + "'");
    const char* begin = it->second.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw std::invalid_argument("key '" + key + "': invalid number '" + it->second + "'");
    return v;
}

long long get_int(const KvMap& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw std::invalid_argument("missing config key '" + key + "'");
    const char* begin = it->second.c_str();
    char* end = nullptr;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0')
        throw std::invalid_argument("key '" + key + "': invalid integer '" + it->second + "'");
    return v;
}

std::string get_str(const KvMap& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end())
        throw std::invalid_argument("missing config key '" + key + "'");
    return it->second;
}

subfbm::ModelParams build_params(const KvMap& kv) {
    subfbm::ModelParams p{get_num(kv, "sigma"), get_num(kv, "r_d"), get_num(kv, "r_f"),
                          get_num(kv, "alpha"), get_num(kv, "H"),   get_num(kv, "k"),
                          get_num(kv, "dt")};
    p.validate();
    return p;
}

subfbm::OptionContract build_contract(const KvMap& kv) {
    const std::string kind = get_str(kv, "kind");
    if (kind != "call" && kind != "put")
        throw std::invalid_argument("key 'kind': expected call or put, got '" + kind + "'");
    subfbm::OptionContract c{get_num(kv, "S"), get_num(kv, "K"), get_num(kv, "t"),
                             get_num(kv, "T"),
                             kind == "call" ? subfbm::OptionKind::call : subfbm::OptionKind::put};
    c.validate();
    return c;
}

std::uint64_t resolve_seed(const KvMap& kv, std::optional<std::uint64_t> flag_seed) {
    if (flag_seed) return *flag_seed;
    if (kv.count("seed")) {
        const std::string& s = kv.at("seed");
        char* end = nullptr;
        const auto v = std::strtoull(s.c_str(), &end, 10);
        if (end == s.c_str() || *end != '\0')
            throw std::invalid_argument("key 'seed': invalid integer '" + s + "'");
        return v;
    }
    if (const char* env = std::getenv("SUBFBM_SEED")) {
        char* end = nullptr;
        const auto v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0')
            throw std::invalid_argument("SUBFBM_SEED: invalid integer '" + std::string(env) + "'");
        return v;
    }
    return 12345;
}

class Output {
public:
    explicit Output(const std::string& path) : path_(path) {
        if (path == "-") {
            stream_ = &std::cout;
            return;
        }
        file_.open(path, std::ios::out | std::ios::trunc);
        if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
        stream_ = &file_;
    }
    std::ostream& stream() { return *stream_; }

private:
    std::string path_;
    std::ofstream file_;
    std::ostream* stream_;
};

const std::vector<std::string> kEchoHeader = {"S",     "K", "t", "T",  "kind", "sigma",
                                              "r_d",   "r_f", "alpha", "H",    "k",
                                              "dt"};

std::vector<std::string> echo_cells(const subfbm::OptionContract& c,
                                    const subfbm::ModelParams& p) {
    using subfbm::format_g17;
    return {format_g17(c.spot),
            format_g17(c.strike),
            format_g17(c.t),
            format_g17(c.T),
            c.kind == subfbm::OptionKind::call ? "call" : "put",
            format_g17(p.sigma),
            format_g17(p.r_d),
            format_g17(p.r_f),
            format_g17(p.alpha),
            format_g17(p.H),
            format_g17(p.k),
            format_g17(p.dt)};
}

std::vector<std::string> with(std::vector<std::string> base,
                              const std::vector<std::string>& extra) {
    base.insert(base.end(), extra.begin(), extra.end());
    return base;
}

void cmd_price(const KvMap& kv, const std::string& out_path) {
    const auto params = build_params(kv);
    const auto contract = build_contract(kv);
    const auto quote = subfbm::price(contract, params);
    Output out(out_path);
    subfbm::CsvWriter csv(out.stream());
    csv.header(with(kEchoHeader, {"price", "sigma_hat", "d1", "d2"}));
    csv.row(with(echo_cells(contract, params),
                 {subfbm::format_g17(quote.price), subfbm::format_g17(quote.sigma_hat),
                  subfbm::format_g17(quote.d1), subfbm::format_g17(quote.d2)}));
}

void cmd_greeks(const KvMap& kv, const std::string& out_path) {
    const auto params = build_params(kv);
    const auto contract = build_contract(kv);
    const auto g = subfbm::greeks(contract, params);
    Output out(out_path);
    subfbm::CsvWriter csv(out.stream());
    csv.header(with(kEchoHeader, {"delta", "dual_delta", "rho_domestic", "rho_foreign", "theta",
                                  "gamma", "vega"}));
    csv.row(with(echo_cells(contract, params),
                 {subfbm::format_g17(g.delta), subfbm::format_g17(g.dual_delta),
                  subfbm::format_g17(g.rho_domestic), subfbm::format_g17(g.rho_foreign),
                  subfbm::format_g17(g.theta), subfbm::format_g17(g.gamma),
                  subfbm::format_g17(g.vega)}));
}

void cmd_minprice(const KvMap& kv, const std::string& out_path) {
    const auto params = build_params(kv);
    const auto contract = build_contract(kv);
    if (params.k / params.sigma >= std::sqrt(M_PI / 2.0))
        std::cerr << "warning: k/sigma >= sqrt(pi/2); the term-balance bound assumes "
                     "k/sigma below that threshold\n";
    const auto r = subfbm::minimal_price(contract, params);
    Output out(out_path);
    subfbm::CsvWriter csv(out.stream());
    csv.header(with(kEchoHeader, {"dt_star", "sigma_min", "c_min"}));
    csv.row(with(echo_cells(contract, params),
                 {subfbm::format_g17(r.dt_star), subfbm::format_g17(r.sigma_min),
                  subfbm::format_g17(r.c_min)}));
}

void cmd_sweep(const KvMap& kv, const std::string& out_path) {
    const auto params = build_params(kv);
    const auto contract = build_contract(kv);
    subfbm::SweepSpec spec{get_str(kv, "var"), get_num(kv, "from"), get_num(kv, "to"),
                           static_cast<int>(get_int(kv, "steps"))};
    const auto rows = subfbm::sweep_prices(contract, params, spec);
    Output out(out_path);
    subfbm::CsvWriter csv(out.stream());
    csv.header(with({"sweep_var", "value"},
                    with(kEchoHeader, {"price", "sigma_hat", "d1", "d2"})));
    for (const auto& row : rows) {
        subfbm::OptionContract c = contract;
        subfbm::ModelParams p = params;
        if (spec.variable == "H") p.H = row.value;
        else if (spec.variable == "alpha") p.alpha = row.value;
        else if (spec.variable == "k") p.k = row.value;
        else if (spec.variable == "dt") p.dt = row.value;
        else if (spec.variable == "K") c.strike = row.value;
        else c.T = row.value;
        csv.row(with({spec.variable, subfbm::format_g17(row.value)},
                     with(echo_cells(c, p),
                          {subfbm::format_g17(row.quote.price),
                           subfbm::format_g17(row.quote.sigma_hat),
                           subfbm::format_g17(row.quote.d1),
                           subfbm::format_g17(row.quote.d2)})));
    }
}

void cmd_compare(const KvMap& kv, const std::string& out_path) {
    const auto params = build_params(kv);
    const std::string moneyness = get_str(kv, "moneyness");
    if (moneyness != "in" && moneyness != "out")
        throw std::invalid_argument("key 'moneyness': expected in or out");
    subfbm::OptionContract base{get_num(kv, "S"), get_num(kv, "K_min"), get_num(kv, "t"),
                                get_num(kv, "T_max"), subfbm::OptionKind::call};
    base.validate();
    subfbm::CompareSpec spec{get_num(kv, "T_min"),
                             get_num(kv, "T_max"),
                             static_cast<int>(get_int(kv, "T_steps")),
                             get_num(kv, "K_min"),
                             get_num(kv, "K_max"),
                             static_cast<int>(get_int(kv, "K_steps"))};
    if (!(spec.T_min > base.t))
        throw std::invalid_argument("compare: T_min must exceed valuation time t");
    const auto result = subfbm::compare_models(base, params, spec);
    Output out(out_path);
    subfbm::CsvWriter csv(out.stream());
    csv.header({"T", "K", "gk_price", "fbm_price", "subfbm_price", "fbm_minus_gk",
                "subfbm_minus_gk"});
    for (const auto& row : result.rows)
        csv.row({subfbm::format_g17(row.T), subfbm::format_g17(row.K),
                 subfbm::format_g17(row.gk), subfbm::format_g17(row.fbm),
                 subfbm::format_g17(row.subfbm), subfbm::format_g17(row.fbm - row.gk),
                 subfbm::format_g17(row.subfbm - row.gk)});
    std::cerr << "fraction of grid points with |subfbm-gk| <= |fbm-gk|: "
              << subfbm::format_g17(result.closer_fraction)
              << (result.closer_fraction > 0.5 ? " (majority: yes)" : " (majority: no)") << "\n";
}

void cmd_hedge(const KvMap& kv, const std::string& out_path, std::uint64_t seed) {
    const auto params = build_params(kv);
    const auto contract = build_contract(kv);
    const long long n_paths = get_int(kv, "n_paths");
    if (n_paths < 10000)
        throw std::invalid_argument("key 'n_paths': minimum is 10000");
    subfbm::RngStream rng(seed);
    const auto report = subfbm::hedge_step_experiment(contract, params, n_paths, rng,
                                                      get_num(kv, "dtau"));
    Output out(out_path);
    subfbm::CsvWriter csv(out.stream());
    csv.header({"n_paths", "mean_discrepancy", "std_error", "mean_tc", "residual_bound",
                "seed"});
    csv.row({std::to_string(report.n_paths), subfbm::format_g17(report.mean_discrepancy),
             subfbm::format_g17(report.std_error),
             subfbm::format_g17(report.mean_transaction_cost),
             subfbm::format_g17(report.residual_bound), std::to_string(seed)});
}

void write_path_csv(const std::string& path, const subfbm::TimeSeriesPath& series) {
    Output out(path);
    subfbm::CsvWriter csv(out.stream());
    csv.header({"t", "value"});
    for (std::size_t i = 0; i < series.grid.times.size(); ++i)
        csv.row({subfbm::format_g17(series.grid.times[i]),
                 subfbm::format_g17(series.values[i])});
}

void cmd_paths(const KvMap& kv, const std::string& out_path, std::uint64_t seed) {
    const auto params = build_params(kv);
    const double s0 = get_num(kv, "S0");
    const long long n_points = get_int(kv, "n_points");
    if (n_points < 1 || n_points > 4000)
        throw std::invalid_argument("key 'n_points': must lie in [1, 4000]");
    if (out_path == "-")
        throw std::invalid_argument("paths: --out must name a file (two files are written)");
    const auto grid =
        subfbm::TimeGrid::uniform(get_num(kv, "t_end"), static_cast<std::size_t>(n_points));
    const auto result =
        subfbm::sample_rate_paths(params, s0, grid, subfbm::RngStream(seed), get_num(kv, "dtau"));

    const auto dot = out_path.rfind('.');
    const std::string stem = dot == std::string::npos ? out_path : out_path.substr(0, dot);
    const std::string ext = dot == std::string::npos ? ".csv" : out_path.substr(dot);
    write_path_csv(stem + "_fbm" + ext, result.fbm_model);
    write_path_csv(stem + "_subfbm" + ext, result.subfbm_model);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Currency option pricing under subdiffusive fractional Brownian motion "
                 "with proportional transaction costs"};
    app.require_subcommand(1);

    struct CommonOpts {
        std::string preset;
        std::string config;
        std::vector<std::string> sets;
        std::string out = "-";
        std::optional<std::uint64_t> seed;
    };
    std::map<std::string, CommonOpts> opts;

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"paths", "emit paired exchange-rate sample paths (plain FBM vs subdiffusive)"},
        {"price", "closed-form option price"},
        {"greeks", "closed-form call sensitivities"},
        {"minprice", "term-balance rebalancing interval, volatility and price"},
        {"sweep", "price sweep over one parameter"},
        {"compare", "G-K vs FBM vs subdiffusive price grid over (T, K)"},
        {"hedge", "Monte Carlo one-step delta-hedge discrepancy"}};
    const std::map<std::string, std::string> default_presets = {
        {"paths", "fig1"},    {"price", "fig4"},  {"greeks", "fig4"}, {"minprice", "fig4"},
        {"sweep", "fig4"},    {"compare", "fig56-out"}, {"hedge", "fig4"}};

    for (const auto& [name, desc] : commands) {
        auto* sub = app.add_subcommand(name, desc);
        auto& o = opts[name];
        o.preset = default_presets.at(name);
        if (name == "paths") o.out = "paths.csv";
        sub->add_option("--preset", o.preset, "parameter preset: fig1, fig4, fig56-in, fig56-out");
        sub->add_option("--config", o.config, "flat key=value config file");
        sub->add_option("--set", o.sets, "override one key, repeatable: --set key=value");
        sub->add_option("--out", o.out, "output CSV path ('-' for stdout)");
        sub->add_option("--seed", o.seed, "RNG seed (fallback: SUBFBM_SEED, then 12345)");
    }

    try {
        app.parse(argc, argv);
        const std::string name = app.get_subcommands().front()->get_name();
        const auto& o = opts.at(name);

        KvMap kv = preset_defaults(o.preset);
        if (!o.config.empty()) load_config_file(kv, o.config);
        apply_sets(kv, o.sets);
        const std::uint64_t seed = resolve_seed(kv, o.seed);

        if (name == "paths") cmd_paths(kv, o.out, seed);
        else if (name == "price") cmd_price(kv, o.out);
        else if (name == "greeks") cmd_greeks(kv, o.out);
        else if (name == "minprice") cmd_minprice(kv, o.out);
        else if (name == "sweep") cmd_sweep(kv, o.out);
        else if (name == "compare") cmd_compare(kv, o.out);
        else if (name == "hedge") cmd_hedge(kv, o.out, seed);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 1;
    }
}
