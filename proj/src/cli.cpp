#include "finphase/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "finphase/bank_interest.hpp"
#include "finphase/config.hpp"
#include "finphase/exchange.hpp"
#include "finphase/firm_economy.hpp"
#include "finphase/io.hpp"
#include "finphase/macro_rates.hpp"
#include "finphase/phase_analytics.hpp"
#include "finphase/sector_balances.hpp"

namespace finphase::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kOutEnv = "FINPHASE_OUT";

std::string utc_now()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

/// Collects what a run wrote so the manifest can list it.
struct RunContext {
    fs::path out_dir;
    bool write_manifest = false;
    std::string format = "csv";
    std::string subcommand;
    std::string started_at;
    json config = json::object();
    std::optional<std::uint64_t> seed;
    json residuals = json::object();
    std::vector<std::string> outputs;

    void write(const std::string& name, std::string_view contents)
    {
        io::write_file(out_dir / name, contents);
        outputs.push_back(name);
    }

    void finish()
    {
        if (!write_manifest)
            return;
        json m;
        m["tool"] = "finphase";
        m["version"] = FINPHASE_VERSION;
        m["subcommand"] = subcommand;
        m["config"] = config;
        m["seed"] = seed ? json(*seed) : json(nullptr);
        m["started_at"] = started_at;
        m["finished_at"] = utc_now();
        m["conservation_residuals"] = residuals;
        m["outputs"] = outputs;
        io::write_file(out_dir / "manifest.json", m.dump(2) + "\n");
    }
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// exchange -------------------------------------------------------------

struct ExchangeOpts {
    std::size_t n_agents = 10000;
    std::int64_t initial_money = 1000;
    std::uint64_t n_events = 10'000'000;
    std::string rule = "reshuffle";
    std::int64_t amount = 1;
    std::uint64_t seed = 0;
};

void run_exchange_cmd(const ExchangeOpts& o, RunContext& ctx, std::ostream& out)
{
    ExchangeConfig cfg;
    cfg.n_agents = o.n_agents;
    cfg.initial_money = Money(o.initial_money);
    cfg.n_events = o.n_events;
    cfg.rule.kind = parse_exchange_rule(o.rule);
    cfg.rule.amount = Money(o.amount);
    cfg.seed = o.seed;
    validate(cfg);

    ctx.config = {{"n_agents", cfg.n_agents},     {"initial_money", o.initial_money}, {"n_events", cfg.n_events},
                  {"rule", o.rule},               {"amount", o.amount},               {"seed", cfg.seed}};
    ctx.seed = cfg.seed;

    const WealthVector wealth = run_exchange(cfg);
    const ExponentialFit fit = fit_exponential(wealth);
    const Money expected = cfg.initial_money * static_cast<Money::rep>(cfg.n_agents);
    ctx.residuals["total_money_minus_initial"] = (wealth.total() - expected).units();

    std::ostringstream csv;
    csv << "agent_id,money\n";
    for (std::size_t i = 0; i < wealth.size(); ++i)
        csv << i << ',' << wealth.money[i] << '\n';
    ctx.write("wealth.csv", csv.str());

    json j;
    j["temperature"] = fit.temperature;
    j["ks_statistic"] = fit.ks_statistic;
    j["total_money"] = wealth.total().units();
    ctx.write("fit.json", dump(j));
    out << dump(j);
}

// firms ----------------------------------------------------------------

struct FirmOpts {
    std::string config_path;
    std::vector<std::string> sets;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> n_steps;
    std::optional<std::size_t> n_firms;
    std::optional<std::size_t> n_workers;
    std::size_t seeds = 1;
    bool phase_files = true;
    GridSpec grid;
};

json economy_json(const EconomyConfig& c)
{
    json j;
    j["n_firms"] = c.n_firms;
    j["n_workers"] = c.n_workers;
    j["base_money"] = c.base_money.units();
    j["wage"] = c.wage.units();
    j["markup"] = c.markup;
    j["interest_rate"] = c.interest_rate;
    j["deposit_rate"] = c.deposit_rate;
    j["investment_margin"] = c.investment_margin;
    j["depreciation"] = c.depreciation;
    j["capitalist_consumption_fraction"] = c.capitalist_consumption_fraction;
    j["n_steps"] = c.n_steps;
    j["seed"] = c.seed;
    j["initial_capital"] = c.initial_capital.units();
    j["initial_deposit"] = c.initial_deposit.units();
    j["steps_per_year"] = c.steps_per_year;
    return j;
}

json grid_json(const GridSpec& g)
{
    return {{"x_min", g.x_min}, {"x_max", g.x_max}, {"y_min", g.y_min},
            {"y_max", g.y_max}, {"nx", g.nx},       {"ny", g.ny}};
}

EconomyConfig resolve_economy(const FirmOpts& o)
{
    EconomyConfig cfg;
    if (!o.config_path.empty())
        apply(cfg, load_key_values(o.config_path));
    // command-line overrides win over the file
    KeyValues overrides;
    std::size_t n = 0;
    for (const auto& s : o.sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            throw Error(ErrorCode::InvalidConfig, "--set expects key=value, got '" + s + "'");
        overrides.entries[std::string(io::trim(s.substr(0, eq)))] = {std::string(io::trim(s.substr(eq + 1))), ++n};
    }
    if (o.seed)
        overrides.entries["seed"] = {std::to_string(*o.seed), 0};
    if (o.n_steps)
        overrides.entries["n_steps"] = {std::to_string(*o.n_steps), 0};
    if (o.n_firms)
        overrides.entries["n_firms"] = {std::to_string(*o.n_firms), 0};
    if (o.n_workers)
        overrides.entries["n_workers"] = {std::to_string(*o.n_workers), 0};
    apply(cfg, overrides);
    return cfg;
}


void run_firms_once(const EconomyConfig& cfg, const FirmOpts& o, RunContext& ctx, const std::string& prefix,
                    json& summary)
{
    const auto records = run(cfg);
    std::ostringstream series;
    series << "t,entropy,rentier_fraction,std_x,bankruptcies,class_A,class_B,class_C\n";
    Money worst;
    bool max_x_ok = true;
    for (const auto& r : records) {
        const auto hist = bin_phase(r.points, o.grid);
        const double h = hist.in_range() > 0 ? entropy(hist) : 0.0;
        const auto m = r.points.size() >= 2 ? tail_metrics(r.points) : TailMetrics{};
        series << r.t << ',' << io::format_double(h) << ',' << io::format_double(m.rentier_fraction) << ','
               << io::format_double(m.std_x) << ',' << r.bankruptcies << ',' << r.class_counts[0] << ','
               << r.class_counts[1] << ',' << r.class_counts[2] << '\n';
        if ((r.conservation_residual < Money{} ? -r.conservation_residual : r.conservation_residual) >
            (worst < Money{} ? -worst : worst))
            worst = r.conservation_residual;
        for (const auto& p : r.points)
            max_x_ok = max_x_ok && p.x <= 1.0;
        if (o.phase_files) {
            std::ostringstream phase;
            write_phase_csv(phase, r.points);
            ctx.write(prefix + "phase_t" + std::to_string(r.t) + ".csv", phase.str());
        }
    }
    ctx.write(prefix + "series.csv", series.str());

    json run_json;
    run_json["config"] = economy_json(cfg);
    run_json["seed"] = cfg.seed;
    run_json["grid"] = grid_json(o.grid);
    run_json["steps"] = records.size() - 1;
    run_json["final_conservation_residual"] = records.back().conservation_residual.units();
    run_json["max_abs_conservation_residual"] = (worst < Money{} ? -worst : worst).units();
    run_json["final_bank_equity"] = records.back().bank_equity.units();
    run_json["all_debt_ratios_at_most_one"] = max_x_ok;
    ctx.write(prefix + "run.json", dump(run_json));

    summary["seed"] = cfg.seed;
    summary["final_conservation_residual"] = records.back().conservation_residual.units();
    ctx.residuals["seed_" + std::to_string(cfg.seed)] = records.back().conservation_residual.units();
}

void run_firms_cmd(const FirmOpts& o, RunContext& ctx, std::ostream& out)
{
    o.grid.validate();
    EconomyConfig cfg = resolve_economy(o);
    ctx.config = economy_json(cfg);
    ctx.config["seeds"] = o.seeds;
    ctx.config["grid"] = grid_json(o.grid);
    ctx.seed = cfg.seed;
    if (o.seeds < 1)
        throw Error(ErrorCode::InvalidConfig, "--seeds must be at least 1");

    json all = json::array();
    const std::uint64_t first = cfg.seed;
    for (std::size_t k = 0; k < o.seeds; ++k) {
        cfg.seed = first + k;
        json s;
        const std::string prefix = o.seeds == 1 ? "" : "seed_" + std::to_string(cfg.seed) + "/";
        run_firms_once(cfg, o, ctx, prefix, s);
        all.push_back(s);
    }
    out << dump(o.seeds == 1 ? all[0] : all);
}

// analyze --------------------------------------------------------------

struct AnalyzeOpts {
    std::vector<std::string> files;
    GridSpec grid;
    std::string histogram_path;
};

void run_analyze_cmd(const AnalyzeOpts& o, RunContext& ctx, std::ostream& out)
{
    o.grid.validate();
    ctx.config = {{"files", o.files}, {"grid", grid_json(o.grid)}};
    json results = json::array();
    for (const auto& f : o.files) {
        std::ifstream in(f);
        if (!in)
            throw Error(ErrorCode::FileNotFound, f);
        const auto points = read_phase_csv(in);
        const auto hist = bin_phase(points, o.grid);
        json r;
        r["file"] = f;
        r["points"] = hist.total;
        r["out_of_range"] = hist.out_of_range;
        r["entropy"] = entropy(hist);
        const auto m = tail_metrics(points);
        r["rentier_fraction"] = m.rentier_fraction;
        r["mean_x"] = m.mean_x;
        r["std_x"] = m.std_x;
        r["skew_x"] = m.skew_x;
        results.push_back(r);
        if (!o.histogram_path.empty()) {
            std::ostringstream h;
            write_histogram_csv(h, hist);
            const fs::path p = o.files.size() == 1
                                   ? fs::path(o.histogram_path)
                                   : fs::path(o.histogram_path + "." + fs::path(f).stem().string() + ".csv");
            ctx.write(p.string(), h.str());
        }
    }
    ctx.write("analysis.json", dump(results));
    out << dump(results);
}

// macro ----------------------------------------------------------------

struct MacroOpts {
    std::optional<double> g_L, g_P, d, lambda;
    std::optional<double> rho, L, K;
    std::optional<double> R_target;
    std::optional<double> R0;
    double dt = 0.01;
    std::size_t steps = 10000;
    std::optional<double> growth, offset;
    std::string table_path;
    std::optional<double> reference_rate;
    std::string levels_path;
    bool percent = false;
};

std::vector<MacroYear> read_macro_table(const std::string& path)
{
    std::istringstream in(io::read_file(path));
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    std::vector<MacroYear> rows;
    while (std::getline(in, line)) {
        ++line_no;
        if (io::trim(line).empty() || line[0] == '#')
            continue;
        const auto f = io::split(line);
        if (!header) {
            if (f != std::vector<std::string>{"year", "g_L", "g_P", "d", "lambda"})
                throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) +
                                                       ": expected header year,g_L,g_P,d,lambda");
            header = true;
            continue;
        }
        if (f.size() != 5)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 5 fields");
        rows.push_back({io::parse_double(f[0], line_no), io::parse_double(f[1], line_no),
                        io::parse_double(f[2], line_no), io::parse_double(f[3], line_no),
                        io::parse_double(f[4], line_no)});
    }
    if (!header)
        throw Error(ErrorCode::ParseError, "missing header year,g_L,g_P,d,lambda");
    return rows;
}

RateSeries<double> read_levels(const std::string& path)
{
    std::istringstream in(io::read_file(path));
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    std::vector<double> t, v;
    while (std::getline(in, line)) {
        ++line_no;
        if (io::trim(line).empty() || line[0] == '#')
            continue;
        const auto f = io::split(line);
        if (f.size() != 2)
            throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 2 fields");
        if (!header) {
            header = true;
            continue;
        }
        t.push_back(io::parse_double(f[0], line_no));
        v.push_back(io::parse_double(f[1], line_no));
    }
    RateSeries<double> s{Eigen::Map<Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size())),
                         Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()))};
    return s;
}

void run_macro_cmd(const MacroOpts& o, RunContext& ctx, std::ostream& out)
{
    json j;
    // human-readable summary only; files keep full precision
    auto shown = [&](double v) {
        std::ostringstream os;
        os << std::setprecision(12) << (o.percent ? v * 100.0 : v) << (o.percent ? "%" : "");
        return os.str();
    };
    bool did = false;
    const bool have_eq = o.g_L && o.g_P && o.d && o.lambda;

    if (o.rho || o.L || o.K) {
        if (!(o.rho && o.L && o.K))
            throw Error(ErrorCode::InvalidConfig, "--rho, --L and --K go together");
        const double R = average_profit_rate(MacroParams<double>{*o.rho, *o.L, *o.K, 0, 0, 0, 1});
        j["average_profit_rate"] = R;
        out << "R = " << shown(R) << '\n';
        did = true;
    }
    if (have_eq) {
        const double R_star = equilibrium_rate(*o.g_L, *o.g_P, *o.d, *o.lambda);
        j["R_star"] = R_star;
        out << "R* = " << shown(R_star) << '\n';
        did = true;
    }
    if (o.R_target) {
        if (!(o.lambda && o.g_L && o.d))
            throw Error(ErrorCode::InvalidConfig, "--R-target needs --lambda, --gL and --d");
        const double g = required_productivity(*o.R_target, *o.lambda, *o.g_L, *o.d);
        j["g_P_required"] = g;
        out << "g_P* = " << shown(g) << '\n';
        did = true;
    }
    if (o.growth || o.offset) {
        if (!(o.growth && o.offset))
            throw Error(ErrorCode::InvalidConfig, "--growth and --offset go together");
        const double r = net_rate(*o.growth, *o.offset);
        j["net_rate"] = r;
        out << "net rate = " << shown(r) << '\n';
        did = true;
    }
    if (o.R0) {
        if (!have_eq)
            throw Error(ErrorCode::InvalidConfig, "--R0 needs --gL, --gP, --d and --lambda");
        const auto traj = profit_rate_trajectory(*o.R0, *o.g_L, *o.g_P, *o.d, *o.lambda, o.dt, o.steps);
        std::ostringstream csv;
        csv << "t,R\n";
        for (Eigen::Index k = 0; k < traj.size(); ++k)
            csv << io::format_double(traj.t[k]) << ',' << io::format_double(traj.value[k]) << '\n';
        ctx.write("trajectory.csv", csv.str());
        j["R_final"] = traj.value[traj.size() - 1];
        out << "R(" << io::format_double(traj.t[traj.size() - 1]) << ") = " << shown(traj.value[traj.size() - 1])
            << '\n';
        did = true;
    }
    if (!o.table_path.empty()) {
        const auto rows = equilibrium_decomposition(read_macro_table(o.table_path), o.reference_rate);
        std::ostringstream csv;
        if (ctx.format == "json") {
            json arr = json::array();
            for (const auto& r : rows)
                arr.push_back({{"year", r.year}, {"R_star", r.R_star}, {"g_P_required_vs_reference", r.g_P_required}});
            ctx.write("macro.json", dump(arr));
        } else {
            csv << "year,R_star,g_P_required_vs_reference\n";
            for (const auto& r : rows)
                csv << io::format_double(r.year) << ',' << io::format_double(r.R_star) << ','
                    << io::format_double(r.g_P_required) << '\n';
            ctx.write("macro.csv", csv.str());
        }
        j["table_rows"] = rows.size();
        out << "decomposed " << rows.size() << " rows\n";
        did = true;
    }
    if (!o.levels_path.empty()) {
        const auto levels = read_levels(o.levels_path);
        const double g = cagr(levels);
        const auto per = period_growth(levels);
        j["cagr"] = g;
        std::ostringstream csv;
        csv << "t_start,t_end,growth\n";
        for (Eigen::Index k = 0; k < per.size(); ++k)
            csv << io::format_double(levels.t[k]) << ',' << io::format_double(levels.t[k + 1]) << ','
                << io::format_double(per[k]) << '\n';
        ctx.write("growth.csv", csv.str());
        out << "cagr = " << shown(g) << '\n';
        did = true;
    }
    if (!did)
        throw CLI::ValidationError("macro", "nothing to compute; pass --gL/--gP/--d/--lambda, --csv or --levels");
    ctx.config = j;
    ctx.write("macro_result.json", dump(j));
}

// interest / reserves ----------------------------------------------------

struct InterestOpts {
    std::int64_t capital = 5'000'000;
    std::int64_t reserves = 3'000'000;
    std::int64_t loan = 1'000'000;
    std::int64_t sigma = 1'000'000;
    std::int64_t mean = 0;
};

void run_interest_cmd(const InterestOpts& o, RunContext& ctx, std::ostream& out)
{
    ReserveRiskModel m{Money(o.capital), Money(o.reserves), Money(o.sigma), Money(o.mean)};
    ctx.config = {{"capital", o.capital}, {"reserves", o.reserves}, {"loan", o.loan}, {"sigma", o.sigma}, {"mean", o.mean}};
    const auto q = min_interest_rate(m, Money(o.loan));
    json j;
    j["p_e"] = q.p_e;
    j["expected_cost"] = q.expected_cost;
    j["min_rate"] = q.min_rate;
    ctx.write("interest.json", dump(j));
    out << dump(j);
}

struct ReservesOpts {
    std::int64_t B0 = 0, G = 0, T = 0, S = 0;
    double dt = 1.0;
    std::size_t n = 10;
};

void run_reserves_cmd(const ReservesOpts& o, RunContext& ctx, std::ostream& out)
{
    ctx.config = {{"B0", o.B0}, {"G", o.G}, {"T", o.T}, {"S", o.S}, {"dt", o.dt}, {"n", o.n}};
    const auto path = reserve_path({Money(o.B0), Money(o.G), Money(o.T), Money(o.S)}, o.dt, o.n);
    std::ostringstream os;
    if (ctx.format == "json") {
        json arr = json::array();
        for (const auto& p : path)
            arr.push_back({{"t", p.t}, {"B", p.B}});
        os << dump(arr);
        ctx.write("reserves.json", os.str());
    } else {
        os << "t,B\n";
        for (const auto& p : path)
            os << io::format_double(p.t) << ',' << io::format_double(p.B) << '\n';
        ctx.write("reserves.csv", os.str());
    }
    out << os.str();
}

// sectors --------------------------------------------------------------

struct SectorOpts {
    std::string file;
    std::int64_t tolerance = 0;
    std::string sector;
    std::int64_t value = 0;
};

json report_json(const SectorTable& t, const BalanceReport& r)
{
    json j;
    j["period"] = t.period;
    j["scale"] = t.scale;
    j["residual"] = r.residual.units();
    j["is_balanced"] = r.is_balanced;
    j["largest_surplus"] = r.largest_surplus;
    j["largest_deficit"] = r.largest_deficit;
    return j;
}

void run_sectors_check(const SectorOpts& o, RunContext& ctx, std::ostream& out)
{
    ctx.config = {{"file", o.file}, {"tolerance", o.tolerance}};
    const auto table = load_sectors(o.file);
    const auto r = check_zero_sum(table, Money(o.tolerance));
    const json j = report_json(table, r);
    ctx.residuals["sector_residual"] = r.residual.units();
    ctx.write("sectors_check.json", dump(j));
    out << dump(j);
}

void run_sectors_whatif(const SectorOpts& o, RunContext& ctx, std::ostream& out)
{
    ctx.config = {{"file", o.file}, {"sector", o.sector}, {"value", o.value}};
    const auto table = load_sectors(o.file);
    const auto cf = counterfactual(table, o.sector, Money(o.value));
    json j = report_json(cf.table, check_zero_sum(cf.table, Money{}));
    j["sector"] = o.sector;
    j["old_value"] = table.find(o.sector)->units();
    j["new_value"] = o.value;
    j["required_offset"] = cf.required_offset.units();
    std::ostringstream csv;
    write_sectors(csv, cf.table);
    ctx.write("counterfactual.csv", csv.str());
    ctx.write("sectors_whatif.json", dump(j));
    out << dump(j);
}

void add_grid_options(CLI::App* cmd, GridSpec& g)
{
    cmd->add_option("--x-min", g.x_min, "phase grid lower debt ratio")->capture_default_str();
    cmd->add_option("--x-max", g.x_max, "phase grid upper debt ratio")->capture_default_str();
    cmd->add_option("--y-min", g.y_min, "phase grid lower debt change")->capture_default_str();
    cmd->add_option("--y-max", g.y_max, "phase grid upper debt change")->capture_default_str();
    cmd->add_option("--nx", g.nx, "bins along the debt ratio")->capture_default_str();
    cmd->add_option("--ny", g.ny, "bins along the debt change")->capture_default_str();
}

} // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Econophysics simulations: money conservation, financial entropy, profit rates, "
                 "interest formation and sectoral balances.",
                 "finphase"};
    app.set_version_flag("--version", FINPHASE_VERSION);
    app.require_subcommand(1);
    app.fallthrough();

    RunContext ctx;
    const char* env_out = std::getenv(kOutEnv);
    std::string out_dir = env_out && *env_out ? env_out : "finphase_out";
    app.add_option("-o,--out", out_dir, "output directory (default: $FINPHASE_OUT or ./finphase_out)");
    app.add_flag("--manifest", ctx.write_manifest, "write manifest.json describing the run");
    app.add_option("--format", ctx.format, "tabular output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    ExchangeOpts ex;
    auto* exchange = app.add_subcommand("exchange", "random pairwise money exchange");
    exchange->add_option("--n-agents", ex.n_agents)->capture_default_str();
    exchange->add_option("--initial-money", ex.initial_money)->capture_default_str();
    exchange->add_option("--n-events", ex.n_events)->capture_default_str();
    exchange->add_option("--rule", ex.rule, "reshuffle | fraction | fixed")
        ->check(CLI::IsMember({"reshuffle", "fraction", "fixed"}))
        ->capture_default_str();
    exchange->add_option("--amount", ex.amount, "amount for the fixed rule")->capture_default_str();
    exchange->add_option("--seed", ex.seed)->capture_default_str();

    FirmOpts fo;
    auto* firms = app.add_subcommand("firms", "agent-based firm economy on the debt phase plane");
    firms->add_option("--config", fo.config_path, "key = value config file")->check(CLI::ExistingFile);
    firms->add_option("--set", fo.sets, "override a config key (key=value), repeatable");
    firms->add_option("--seed", fo.seed);
    firms->add_option("--n-steps", fo.n_steps);
    firms->add_option("--n-firms", fo.n_firms);
    firms->add_option("--n-workers", fo.n_workers);
    firms->add_option("--seeds", fo.seeds, "run this many consecutive seeds into seed_<k>/ directories")
        ->capture_default_str();
    firms->add_flag("!--no-phase-files", fo.phase_files, "skip per-step phase_t<t>.csv files");
    add_grid_options(firms, fo.grid);

    AnalyzeOpts ao;
    auto* analyze = app.add_subcommand("analyze", "entropy and tail metrics of phase CSV files");
    analyze->add_option("files", ao.files, "phase CSV files (firm_id,x,y)")->required()->check(CLI::ExistingFile);
    analyze->add_option("--histogram", ao.histogram_path, "also dump the binned histogram CSV here");
    add_grid_options(analyze, ao.grid);

    MacroOpts mo;
    auto* macro = app.add_subcommand("macro", "profit-rate equilibrium and growth arithmetic");
    macro->add_option("--gL", mo.g_L, "growth of labour expended, per year");
    macro->add_option("--gP", mo.g_P, "productivity growth, per year");
    macro->add_option("--d", mo.d, "depreciation, per year");
    macro->add_option("--lambda", mo.lambda, "gross investment / profit");
    macro->add_option("--rho", mo.rho, "surplus fraction of labour time");
    macro->add_option("--L", mo.L, "labour flow, person-hours per year");
    macro->add_option("--K", mo.K, "labour time to reproduce the capital stock");
    macro->add_option("--R-target", mo.R_target, "profit rate to sustain");
    macro->add_option("--R0", mo.R0, "initial profit rate for the trajectory");
    macro->add_option("--dt", mo.dt, "trajectory step, years")->capture_default_str();
    macro->add_option("--steps", mo.steps, "trajectory steps")->capture_default_str();
    macro->add_option("--growth", mo.growth, "gross rate for net_rate");
    macro->add_option("--offset", mo.offset, "offsetting rate for net_rate");
    macro->add_option("--csv", mo.table_path, "CSV of year,g_L,g_P,d,lambda")->check(CLI::ExistingFile);
    macro->add_option("--reference-rate", mo.reference_rate, "rate to hold in the decomposition (default: first R*)");
    macro->add_option("--levels", mo.levels_path, "CSV of time,level for compound growth")->check(CLI::ExistingFile);
    macro->add_flag("--percent", mo.percent, "display rates as percentages");

    InterestOpts io_;
    auto* interest = app.add_subcommand("interest", "minimum interest rate from reserve risk");
    interest->add_option("--capital", io_.capital)->capture_default_str();
    interest->add_option("--reserves", io_.reserves)->capture_default_str();
    interest->add_option("--loan", io_.loan)->capture_default_str();
    interest->add_option("--sigma", io_.sigma)->capture_default_str();
    interest->add_option("--mean", io_.mean, "mean excursion")->capture_default_str();

    ReservesOpts ro;
    auto* reserves = app.add_subcommand("reserves", "linear reserve path B0 + (G - T - S) t");
    reserves->add_option("--B0", ro.B0)->capture_default_str();
    reserves->add_option("--G", ro.G)->capture_default_str();
    reserves->add_option("--T", ro.T)->capture_default_str();
    reserves->add_option("--S", ro.S)->capture_default_str();
    reserves->add_option("--dt", ro.dt)->capture_default_str();
    reserves->add_option("--n", ro.n)->capture_default_str();

    SectorOpts so;
    auto* sectors = app.add_subcommand("sectors", "sectoral balance checks");
    sectors->require_subcommand(1);
    auto* check = sectors->add_subcommand("check", "verify the balances sum to zero");
    check->add_option("--file", so.file)->required()->check(CLI::ExistingFile);
    check->add_option("--tolerance", so.tolerance)->capture_default_str();
    auto* whatif = sectors->add_subcommand("what-if", "set one sector and report the required offset");
    whatif->add_option("--file", so.file)->required()->check(CLI::ExistingFile);
    whatif->add_option("--sector", so.sector)->required();
    whatif->add_option("--value", so.value)->required();

    if (args.empty()) {
        err << app.help();
        return UsageError;
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return UsageError;
    }

    ctx.out_dir = out_dir;
    ctx.started_at = utc_now();
    try {
        if (*exchange) {
            ctx.subcommand = "exchange";
            run_exchange_cmd(ex, ctx, out);
        } else if (*firms) {
            ctx.subcommand = "firms";
            run_firms_cmd(fo, ctx, out);
        } else if (*analyze) {
            ctx.subcommand = "analyze";
            run_analyze_cmd(ao, ctx, out);
        } else if (*macro) {
            ctx.subcommand = "macro";
            run_macro_cmd(mo, ctx, out);
        } else if (*interest) {
            ctx.subcommand = "interest";
            run_interest_cmd(io_, ctx, out);
        } else if (*reserves) {
            ctx.subcommand = "reserves";
            run_reserves_cmd(ro, ctx, out);
        } else if (*check) {
            ctx.subcommand = "sectors check";
            run_sectors_check(so, ctx, out);
        } else if (*whatif) {
            ctx.subcommand = "sectors what-if";
            run_sectors_whatif(so, ctx, out);
        }
        ctx.finish();
    } catch (const CLI::ValidationError& e) {
        err << "finphase: " << e.what() << '\n';
        return UsageError;
    } catch (const Error& e) {
        err << "finphase: " << e.what() << '\n';
        return DomainError;
    } catch (const std::exception& e) {
        err << "finphase: " << e.what() << '\n';
        return DomainError;
    }
    return Ok;
}

} // namespace finphase::cli
