#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "noncollide/densities1d.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + NONCOLLIDE_CLI_PATH + std::string(" ") + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::vector<std::vector<double>> rows(const std::string& text, std::string* header = nullptr) {
    std::vector<std::vector<double>> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-')) {
            if (header) *header = line;
            continue;
        }
        std::vector<double> r;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) r.push_back(std::stod(cell));
        out.push_back(r);
    }
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

fs::path scratch(const std::string& name) {
    fs::path d = fs::temp_directory_path() / "noncollide_cli_test";
    fs::create_directories(d);
    return d / name;
}

}  // namespace

TEST_CASE("sample gue") {
    Run a = run("sample --kind gue --n 2 --t 1 --count 10 --seed 7");
    REQUIRE(a.code == 0);
    CHECK(a.out.rfind("# kind=gue,N=2,t=1,seed=7", 0) == 0);
    auto r = rows(a.out);
    REQUIRE(r.size() == 10);
    for (const auto& row : r) {
        REQUIRE(row.size() == 2);
        CHECK(row[0] < row[1]);
    }
    Run b = run("sample --kind gue --n 2 --t 1 --count 10 --seed 7");
    CHECK(a.out == b.out);
    const fs::path f1 = scratch("s1.csv"), f2 = scratch("s2.csv");
    REQUIRE(run("sample --kind gue --n 3 --t 1 --count 50 --seed 7 --out " + f1.string()).code == 0);
    REQUIRE(run("sample --kind gue --n 3 --t 1 --count 50 --seed 7 --threads 3 --out " + f2.string()).code == 0);
    CHECK(slurp(f1) == slurp(f2));
}

TEST_CASE("sample classd gives symmetric quadruples") {
    Run a = run("sample --kind classd --n 2 --t 1 --count 20 --seed 1");
    REQUIRE(a.code == 0);
    for (const auto& row : rows(a.out)) {
        REQUIRE(row.size() == 4);
        CHECK(std::abs(row[0] + row[3]) < 1e-9 * std::abs(row[3]));
        CHECK(std::abs(row[1] + row[2]) < 1e-9 * std::abs(row[3]));
    }
}

TEST_CASE("sample sde and json") {
    Run a = run("sample --sde dyson --beta 2 --n 3 --t 0.5 --count 4 --seed 2");
    REQUIRE(a.code == 0);
    CHECK(rows(a.out).size() == 4);
    Run j = run("sample --kind goe --n 2 --t 1 --count 3 --format json");
    REQUIRE(j.code == 0);
    auto doc = nlohmann::json::parse(j.out);
    CHECK(doc.dump().find("goe") != std::string::npos);
}

TEST_CASE("seed from the environment") {
    Run a = run("sample --kind gue --n 2 --t 1 --count 3", "NONCOLLIDE_SEED=11");
    Run b = run("sample --kind gue --n 2 --t 1 --count 3 --seed 11");
    REQUIRE(a.code == 0);
    CHECK(rows(a.out) == rows(b.out));
    CHECK(run("sample --kind gue --n 2 --t 1 --count 3", "NONCOLLIDE_SEED=abc").code == 2);
}

TEST_CASE("bad flags and runtime failures") {
    CHECK(run("sample --kind gue --n 2 --t 1 --count 3 --bogus 1").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("table --what tw --step 0").code == 2);
    CHECK(run("sample --kind nosuch --n 2 --t 1 --count 3").code != 0);
    CHECK(run("sample --kind laguerre --n 2 --nu -3 --t 1 --count 3").code != 0);
}

TEST_CASE("table tw") {
    std::string header;
    Run a = run("table --what tw --alpha-min -5 --alpha-max 2 --step 0.1");
    REQUIRE(a.code == 0);
    auto r = rows(a.out, &header);
    CHECK(header == "alpha,F_fredholm,F_painleve,abs_diff");
    REQUIRE(r.size() == 71);
    double worst = 0.0;
    for (const auto& row : r) worst = std::max(worst, row[3]);
    CHECK(worst <= 1e-6);
}

TEST_CASE("table kernel and density") {
    Run s = run("table --what kernel --family sine --s 1 --t 1 --min -3 --max 3 --step 0.25");
    REQUIRE(s.code == 0);
    for (const auto& row : rows(s.out)) CHECK(std::abs(row.back() - 1 / std::numbers::pi) <= 1e-12);
    Run p = run("table --what density --fn pN --n 1 --t 0.8 --min -3 --max 3 --step 0.5");
    Run b = run("table --what density --fn bm --t 0.8 --min -3 --max 3 --step 0.5");
    REQUIRE(p.code == 0);
    REQUIRE(b.code == 0);
    auto pr = rows(p.out), br = rows(b.out);
    REQUIRE(pr.size() == br.size());
    for (std::size_t i = 0; i < pr.size(); ++i) {
        CHECK(pr[i].back() == doctest::Approx(br[i].back()).epsilon(1e-14));
        CHECK(br[i].back() == doctest::Approx(noncollide::dens::bm_density(0.8, br[i][0], 0.0)).epsilon(1e-15));
    }
}

TEST_CASE("table plot script") {
    const fs::path out = scratch("tw.csv");
    fs::remove(fs::path(out.string() + ".py"));
    REQUIRE(run("table --what sine-gap --a-min 0.5 --a-max 1.5 --step 0.5 --plot --out " + out.string()).code == 0);
    const std::string py = slurp(fs::path(out.string() + ".py"));
    CHECK(py.find("matplotlib") != std::string::npos);
    CHECK(py.find(out.filename().string()) != std::string::npos);
    CHECK(run("table --what sine-gap --a-min 0.5 --a-max 1.5 --step 0.5 --plot").code == 2);
}

TEST_CASE("verify hc") {
    const fs::path out = scratch("hc.json");
    Run a = run("verify --suite hc --seed 1 --out " + out.string());
    CHECK(a.code == 0);
    auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["suite"] == "hc");
    CHECK(doc["passed"] == true);
    CHECK(doc["reports"].size() == 1);
    CHECK(doc["config"]["threads"].is_string());
    CHECK(run("verify --suite nosuch").code == 2);
}
