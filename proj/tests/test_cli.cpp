#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "finphase/cli.hpp"
#include "finphase/io.hpp"

namespace fs = std::filesystem;
using finphase::cli::dispatch;

namespace {

const std::string data_dir = FINPHASE_DATA_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = static_cast<int>(dispatch(args, out, err));
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / "finphase_test_cli" / name;
    fs::remove_all(p);
    return p;
}

// Every regular file under `dir` except run manifests, keyed by relative path.
std::map<std::string, std::string> tree(const fs::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
        if (e.is_regular_file() && e.path().filename() != "manifest.json")
            files[fs::relative(e.path(), dir).string()] = finphase::io::read_file(e.path());
    return files;
}

void check_reproducible(const std::string& name, const std::vector<std::string>& args)
{
    const fs::path a = scratch(name + "_a"), b = scratch(name + "_b");
    auto with_out = [&](const fs::path& dir) {
        std::vector<std::string> v{"-o", dir.string(), "--manifest"};
        v.insert(v.end(), args.begin(), args.end());
        return v;
    };
    const Result ra = call(with_out(a));
    const Result rb = call(with_out(b));
    INFO(name << ": " << ra.err);
    REQUIRE(ra.code == 0);
    REQUIRE(rb.code == 0);
    CHECK(ra.out == rb.out);
    const auto ta = tree(a);
    CHECK_FALSE(ta.empty());
    CHECK(ta == tree(b));
    CHECK(fs::exists(a / "manifest.json"));
}

} // namespace

TEST_CASE("usage errors")
{
    const Result none = call({});
    CHECK(none.code == 2);
    CHECK(none.err.find("exchange") != std::string::npos);
    CHECK(call({"teleport"}).code == 2);
    CHECK(call({"exchange", "--n-agents", "many"}).code == 2);
    CHECK(call({"sectors", "what-if", "--file", data_dir + "/eurozone_2012q1.csv"}).code == 2);
    CHECK(call({"--format", "xml", "interest"}).code == 2);
}

TEST_CASE("domain errors exit 1 with a message")
{
    const fs::path out = scratch("domain");
    const Result neg = call({"-o", out.string(), "macro", "--gL", "0.02", "--gP", "0.03", "--d", "0.1", "--lambda", "0"});
    CHECK(neg.code == 1);
    CHECK_FALSE(neg.err.empty());
    CHECK(call({"-o", out.string(), "interest", "--loan", "9000000"}).code == 1);
    CHECK(call({"-o", out.string(), "exchange", "--n-agents", "1"}).code == 1);
    CHECK(call({"-o", out.string(), "sectors", "what-if", "--file", data_dir + "/eurozone_2012q1.csv",
                "--sector", "Atlantis", "--value", "0"}).code == 1);
    CHECK(call({"-o", out.string(), "firms", "--set", "n_frims=3"}).code == 1);
}

TEST_CASE("version")
{
    const Result v = call({"--version"});
    CHECK(v.code == 0);
    CHECK(v.out.find(FINPHASE_VERSION) != std::string::npos);
}

TEST_CASE("macro prints the equilibrium rate")
{
    const fs::path out = scratch("macro");
    const Result r = call({"-o", out.string(), "macro", "--gL", "0.02", "--gP", "0.03", "--d", "0.10", "--lambda", "0.60"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("R* = 0.25\n") != std::string::npos);
    const auto j = nlohmann::json::parse(finphase::io::read_file(out / "macro_result.json"));
    CHECK(j.dump().find("0.25") != std::string::npos);
}

TEST_CASE("sectors and interest outputs")
{
    const fs::path out = scratch("sectors");
    const Result r = call({"-o", out.string(), "sectors", "what-if", "--file", data_dir + "/eurozone_2012q1.csv",
                           "--sector", "Govt", "--value", "0"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("-122") != std::string::npos);

    const fs::path iout = scratch("interest");
    REQUIRE(call({"-o", iout.string(), "--format", "json", "interest"}).code == 0);
    const auto j = nlohmann::json::parse(finphase::io::read_file(iout / "interest.json"));
    CHECK(j.at("p_e").get<double>() == doctest::Approx(0.0214002339).epsilon(1e-9));
    CHECK(j.at("min_rate").get<double>() == doctest::Approx(0.107001).epsilon(1e-5));
}

TEST_CASE("a config file with command-line overrides")
{
    const fs::path dir = scratch("firms_cfg");
    fs::create_directories(dir);
    const fs::path cfg = dir / "economy.cfg";
    std::ofstream(cfg) << "n_firms = 30\nn_workers = 300\nn_steps = 4\nseed = 1\n";
    const Result r = call({"-o", (dir / "out").string(), "firms", "--config", cfg.string(), "--seed", "7",
                           "--set", "wage=50"});
    INFO(r.err);
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(finphase::io::read_file(dir / "out" / "run.json"));
    CHECK(j.dump().find("\"seed\":7") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "phase_t4.csv"));
    CHECK(fs::exists(dir / "out" / "series.csv"));
}

TEST_CASE("every subcommand is byte-reproducible")
{
    const std::string euro = data_dir + "/eurozone_2012q1.csv";
    check_reproducible("exchange", {"exchange", "--n-agents", "300", "--n-events", "20000", "--seed", "4"});
    check_reproducible("firms", {"firms", "--n-firms", "40", "--n-workers", "400", "--n-steps", "6", "--seed", "7"});
    check_reproducible("firms_seeds", {"firms", "--n-firms", "20", "--n-workers", "100", "--n-steps", "3", "--seeds", "3"});
    check_reproducible("macro", {"macro", "--gL", "0.02", "--gP", "0.03", "--d", "0.10", "--lambda", "0.60",
                                 "--R0", "0.05", "--levels", data_dir + "/gold_stocks.csv"});
    check_reproducible("interest", {"interest"});
    check_reproducible("reserves", {"reserves", "--G", "10", "--n", "12"});
    check_reproducible("sectors_check", {"sectors", "check", "--file", euro});
    check_reproducible("sectors_whatif", {"sectors", "what-if", "--file", euro, "--sector", "Govt", "--value", "0"});

    const fs::path src = scratch("analyze_src");
    REQUIRE(call({"-o", src.string(), "firms", "--n-firms", "40", "--n-workers", "400", "--n-steps", "3"}).code == 0);
    check_reproducible("analyze", {"analyze", (src / "phase_t3.csv").string(), "--histogram",
                                   (scratch("analyze_hist") / "h.csv").string()});
}

TEST_CASE("the installed binary behaves like dispatch")
{
    const fs::path out = scratch("binary");
    const std::string cmd = std::string("\"") + FINPHASE_CLI_PATH + "\" -o \"" + out.string() +
                            "\" macro --gL 0.02 --gP 0.03 --d 0.10 --lambda 0.60 > \"" +
                            (fs::temp_directory_path() / "finphase_test_cli" / "binary.txt").string() + "\"";
    REQUIRE(std::system(cmd.c_str()) == 0);
    CHECK(finphase::io::read_file(fs::temp_directory_path() / "finphase_test_cli" / "binary.txt").find("R* = 0.25") !=
          std::string::npos);
    CHECK(std::system((std::string("\"") + FINPHASE_CLI_PATH + "\" > /dev/null 2>&1").c_str()) != 0);
}
