#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "schurfit/cli/commands.hpp"
#include "schurfit/cli/dataset_io.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace schurfit;
using nlohmann::json;

namespace {

namespace fs = std::filesystem;

struct Run {
    int code = -1;
    std::string out, err;
};

class Scratch {
public:
    Scratch() : dir_(fs::temp_directory_path() / ("schurfit_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(dir_);
    }
    ~Scratch() { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& text) const {
        std::ofstream(dir_ / name) << text;
        return dir_ / name;
    }
    fs::path path(const std::string& name) const { return dir_ / name; }

    Run run(const std::string& args) const {
        const fs::path out = dir_ / "stdout", err = dir_ / "stderr";
        const std::string cmd = std::string(SCHURFIT_BIN) + " " + args + " >" + out.string() + " 2>" + err.string();
        const int status = std::system(cmd.c_str());
        Run r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    static std::string slurp(const fs::path& p) {
        std::ifstream in(p);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

private:
    fs::path dir_;
};

std::string quartic_csv(int step) {
    std::string s = "x,y\n";
    for (long x = -500; x <= 500; x += step) s += std::to_string(x) + "," + std::to_string(x * x * x * x - 250000 * x * x) + "\n";
    return s;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

} // namespace

TEST_CASE("fit recovers the even quartic") {
    const Scratch s;
    const auto data = s.write("q.csv", quartic_csv(50));
    const Run exact = s.run("fit --degrees 4,2,0 --exact --no-timing " + data.string());
    REQUIRE(exact.code == 0);
    const json r = json::parse(exact.out);
    CHECK(r["coefficients"] == json::array({"1", "-250000", "0"}));
    CHECK(r["residual"] == 0.0);
    CHECK(r["mode"] == "exact");
    CHECK(r["m"] == 21);
    CHECK(r["seconds"].is_null());

    const Run flt = s.run("fit --degrees 4,2,0 " + data.string());
    REQUIRE(flt.code == 0);
    const json f = json::parse(flt.out);
    CHECK(std::stod(f["coefficients"][0].get<std::string>()) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(std::stod(f["coefficients"][1].get<std::string>()) == doctest::Approx(-250000.0).epsilon(1e-8));
    CHECK(f["seconds"].is_number());
}

TEST_CASE("exit codes") {
    const Scratch s;
    const auto same = s.write("same.csv", "x,y\n2,1\n2,3\n2,4\n");
    const Run dup = s.run("fit --degree 1 --exact " + same.string());
    CHECK(dup.code == 2);
    CHECK(dup.err.find("distinct") != std::string::npos);
    CHECK(s.run("fit --degree 1 " + same.string()).code == 2);

    const auto bad = s.write("bad.csv", "# comment\nx,y\n1,2\n2,oops\n3,4\n");
    const Run malformed = s.run("fit --degree 0 --exact " + bad.string());
    CHECK(malformed.code == 1);
    CHECK(malformed.err.find("line 4") != std::string::npos);
    const Run skipped = s.run("fit --degree 0 --exact --skip-malformed " + bad.string());
    CHECK(skipped.code == 0);
    CHECK(json::parse(skipped.out)["coefficients"][0] == "3");
    CHECK(skipped.err.find("line 4") != std::string::npos);

    CHECK(s.run("fit --exact " + bad.string()).code == 1);                     // no model
    CHECK(s.run("fit --degree 1 --degrees 1,0 " + same.string()).code == 1);   // both
    CHECK(s.run("fit --degrees 0,1 " + same.string()).code == 1);              // not decreasing
    CHECK(s.run("fit --degree 1 " + s.path("missing.csv").string()).code == 1);
    CHECK(s.run("fit --degree 1 --output xml " + same.string()).code == 1);
    CHECK(s.run("fit --degree 1 --weights " + same.string()).code == 1);       // no w column
    CHECK(s.run("frobnicate").code == 1);
    CHECK(s.run("--help").code == 0);
}

TEST_CASE("constant model and weights") {
    const Scratch s;
    const auto data = s.write("w.tsv", "x\ty\tw\n1\t2\t1\n2\t5\t2\n3\t11\t3\n");
    const Run plain = s.run("fit --degree 0 --exact " + data.string());
    REQUIRE(plain.code == 0);
    CHECK(json::parse(plain.out)["coefficients"][0] == "6");
    const Run weighted = s.run("fit --degree 0 --exact --weights " + data.string());
    REQUIRE(weighted.code == 0);
    CHECK(json::parse(weighted.out)["coefficients"][0] == "121/14");
}

TEST_CASE("tsv report") {
    const Scratch s;
    const auto data = s.write("l.csv", "x,y\n0,1\n1,3\n2,5\n");
    const Run r = s.run("fit --degree 1 --exact --no-timing --output tsv " + data.string());
    REQUIRE(r.code == 0);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() >= 3);
    CHECK(lines[0] == "degree\tcoefficient");
    CHECK(lines[1] == "1\t2");
    CHECK(lines[2] == "0\t1");
    CHECK(r.out.find("# mode\texact") != std::string::npos);
}

TEST_CASE("stream matches fit and resumes from a snapshot") {
    const Scratch s;
    std::string all = "x,y\n", head = "x,y\n", tail = "x,y\n";
    const int ys[] = {3, -1, 4, 1, -5, 9, 2, -6};
    for (int k = 0; k < 8; ++k) {
        const std::string row = std::to_string(k + 1) + "," + std::to_string(ys[k]) + "\n";
        all += row;
        (k < 4 ? head : tail) += row;
    }
    const auto full = s.write("all.csv", all);
    const Run fit = s.run("fit --degrees 3,1,0 --exact --no-timing " + full.string());
    const Run stream = s.run("stream --degrees 3,1,0 --exact --no-timing " + full.string());
    REQUIRE(fit.code == 0);
    REQUIRE(stream.code == 0);
    const auto lines = lines_of(stream.out);
    REQUIRE(lines.size() == 8 - 3 + 1 + 1);  // points 3..8, then the report
    CHECK(json::parse(lines.front())["m"] == 3);
    const json last = json::parse(lines.back());
    CHECK(last["coefficients"] == json::parse(fit.out)["coefficients"]);
    CHECK(json::parse(lines[lines.size() - 2])["coefficients"] == last["coefficients"]);

    const auto snap = s.path("state.json");
    const Run first = s.run("stream --degrees 3,1,0 --exact --no-timing --snapshot " + snap.string() + " " +
                            s.write("head.csv", head).string());
    REQUIRE(first.code == 0);
    REQUIRE(fs::exists(snap));
    const Run second = s.run("stream --degrees 3,1,0 --exact --no-timing --snapshot " + snap.string() + " " +
                             s.write("tail.csv", tail).string());
    REQUIRE(second.code == 0);
    CHECK(json::parse(lines_of(second.out).back())["coefficients"] == last["coefficients"]);
    CHECK(json::parse(lines_of(second.out).back())["m"] == 8);

    // resuming with another model is refused
    CHECK(s.run("stream --degrees 2,0 --exact --snapshot " + snap.string() + " " + full.string()).code == 1);
    CHECK(s.run("stream --degrees 3,1,0 --snapshot " + snap.string() + " " + full.string()).code == 1);

    // too few points: no solution, but the snapshot is still written
    const auto short_snap = s.path("short.json");
    const Run few = s.run("stream --degrees 3,1,0 --exact --snapshot " + short_snap.string() + " " +
                          s.write("two.csv", "x,y\n1,1\n2,2\n").string());
    CHECK(few.code == 2);
    CHECK(fs::exists(short_snap));
}

TEST_CASE("compare") {
    const Scratch s;
    const auto data = s.write("c.csv", "x,y\n0.5,1\n1,-2\n1.5,0.25\n2,3\n");
    const Run exact = s.run("compare --degrees 3,1,0 --exact " + data.string());
    REQUIRE(exact.code == 0);
    const json r = json::parse(exact.out);
    CHECK(r["max_relative_difference"] == 0.0);
    CHECK(r["within_tolerance"] == true);
    const Run flt = s.run("compare --degrees 3,1,0 " + data.string());
    CHECK(flt.code == 0);
    CHECK(json::parse(flt.out)["max_relative_difference"].get<double>() <= 1e-9);

    const auto rank = s.write("r.csv", "x,y\n1,1\n-1,2\n1,3\n");
    CHECK(s.run("compare --degrees 2,0 --exact " + rank.string()).code == 2);
}

TEST_CASE("reports are deterministic without timing") {
    const Scratch s;
    const auto data = s.write("d.csv", quartic_csv(100));
    const std::string args = "fit --degrees 4,2,0 --no-timing " + data.string();
    CHECK(s.run(args).out == s.run(args).out);
}

TEST_CASE("bench") {
    const Scratch s;
    const Run tsv = s.run("bench --sizes 20,30,40,50 --repetitions 1 --output tsv");
    REQUIRE(tsv.code == 0);
    const auto lines = lines_of(tsv.out);
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] == "m\tseconds\tevaluations");
    CHECK(lines[5].rfind("# slope\t", 0) == 0);
    const Run js = s.run("bench --sizes 20,30,40,50 --repetitions 1 --seed 7");
    REQUIRE(js.code == 0);
    const json r = json::parse(js.out);
    CHECK(r["series"].size() == 4);
    CHECK(r["seed"] == 7);
    CHECK(s.run("bench --sizes 20,30 --repetitions 1").code == 1);
}

TEST_CASE("library: samples and slope") {
    const auto a = cli::quartic_samples(101, 0.0, 1), b = cli::quartic_samples(101, 0.01, 1),
               c = cli::quartic_samples(101, 0.01, 1);
    REQUIRE(a.x.size() == 101);
    CHECK(a.x.front() == -500.0);
    CHECK(a.x.back() == 500.0);
    CHECK(a.x[50] == 0.0);
    CHECK(a.y[0] == 500.0 * 500 * 500 * 500 - 2.5e5 * 500 * 500);
    CHECK(b.y == c.y);
    double worst = 0;
    for (std::size_t k = 0; k < a.y.size(); ++k) worst = std::max(worst, std::abs(b.y[k] - a.y[k]));
    CHECK(worst <= 0.01 * 1.5625e10);
    CHECK(worst > 0);

    std::vector<cli::BenchRow> rows;
    for (std::size_t m : {10, 20, 40, 80}) rows.push_back({m, 1e-9 * static_cast<double>(m * m * m), {}});
    CHECK(cli::loglog_slope(rows) == doctest::Approx(3.0));

    cli::JobConfig config;
    CHECK_THROWS_AS(config.exponents(), std::invalid_argument);
    config.degree = 2;
    CHECK(config.exponents() == Exponents({2, 1, 0}));
    config.degrees = {2, 0};
    CHECK_THROWS_AS(config.exponents(), std::invalid_argument);
}

TEST_CASE("library: table reading and round trip") {
    std::istringstream in("# header follows\nx y w\n1 2 3\n\n4 5 6\n");
    const auto table = cli::read_table(in);
    CHECK(table.header == std::vector<std::string>{"x", "y", "w"});
    CHECK(table.rows.size() == 2);
    CHECK(table.lines == std::vector<std::size_t>{3, 5});

    const regress::DataSet<numeric::GaussRational> data(
        {numeric::GaussRational(mpq_class(1, 3)), numeric::GaussRational(mpq_class(2), mpq_class(-1))},
        {numeric::GaussRational(mpq_class(5)), numeric::GaussRational(mpq_class(-7, 2))});
    std::stringstream io;
    cli::write_dataset(io, data);
    const auto back = cli::to_dataset(cli::to_points<numeric::GaussRational>(cli::read_table(io), false, false));
    CHECK(std::equal(back.x().begin(), back.x().end(), data.x().begin(), data.x().end()));
    CHECK(std::equal(back.y().begin(), back.y().end(), data.y().begin(), data.y().end()));

    std::istringstream empty("# nothing\n");
    CHECK_THROWS_AS(cli::read_table(empty), cli::MalformedInput);
}
