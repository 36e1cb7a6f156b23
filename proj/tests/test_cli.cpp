#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "brownflow/cli.hpp"

using namespace brownflow;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch() {
    const fs::path d = fs::temp_directory_path() / "brownflow_cli_test";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("argument errors exit with 1") {
    CHECK(run({}).code == 1);
    CHECK(run({"bogus"}).code == 1);
    CHECK(run({"domain", "--t", "1", "--wat"}).code == 1);
    CHECK(run({"domain", "--s", "0.4", "--t", "1"}).code == 1);
    CHECK(run({"domain", "--t", "-1"}).code == 1);
    CHECK(run({"simulate", "--N", "4", "--t", "1"}).code == 1);  // no seed
    CHECK(run({"simulate", "--kind", "nope", "--seed", "1"}).code == 1);
    CHECK(run({"nu", "--t", "1", "--format", "xml"}).code == 1);
    CHECK(run({"domain", "--t", "1", "--out", "/nonexistent_dir/x.csv"}).code == 1);
    CHECK(run({"brown", "--seed", "1", "--N", "4", "--grid", "0,1,0,1"}).code == 1);
    CHECK(run({"transform", "--poly", "u^^2"}).code == 1);
}

TEST_CASE("help") {
    const auto r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("simulate") != std::string::npos);
}

TEST_CASE("domain writes a polyline and a sidecar") {
    const fs::path p = scratch() / "dom.csv";
    const auto r = run({"domain", "--s", "5", "--t", "2", "--resolution", "128", "--out", p.string()});
    REQUIRE(r.code == 0);
    const std::string csv = slurp(p);
    CHECK(csv.rfind("loop_id,vertex_index,re,im\n", 0) == 0);
    CHECK(csv.find("\n1,0,") != std::string::npos);
    const auto meta = nlohmann::json::parse(slurp(p.string() + ".json"));
    CHECK(meta["flags"]["s"] == 5.0);
    CHECK(r.out.find("2 loop(s)") != std::string::npos);
}

TEST_CASE("simulate output is byte-identical for a fixed seed") {
    const fs::path a = scratch() / "a.csv", b = scratch() / "b.csv";
    const std::vector<std::string> base = {"simulate", "--kind", "gl", "--N", "12", "--t", "1",
                                           "--steps", "50", "--trials", "3", "--seed", "99"};
    auto args = base;
    args.insert(args.end(), {"--out", a.string(), "--threads", "1"});
    REQUIRE(run(args).code == 0);
    args = base;
    args.insert(args.end(), {"--out", b.string(), "--threads", "3"});
    REQUIRE(run(args).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(slurp(a).rfind("trial,re,im\n", 0) == 0);

    const auto j = run({"simulate", "--kind", "unitary", "--N", "5", "--t", "1", "--steps", "50", "--seed", "3",
                        "--format", "json"});
    REQUIRE(j.code == 0);
    CHECK(nlohmann::json::parse(j.out)["eigenvalues"].size() == 5);
}

TEST_CASE("nu, brown and transform") {
    const auto nu = run({"nu", "--t", "2", "--resolution", "257", "--format", "json"});
    REQUIRE(nu.code == 0);
    const auto j = nlohmann::json::parse(nu.out);
    CHECK(std::abs(j["mass"].get<double>() - 1.0) < 1e-6);
    CHECK(std::abs(j["theta_max"].get<double>() - 2.5708) < 1e-4);

    const auto br = run({"brown", "--kind", "ginibre", "--N", "6", "--seed", "4", "--field", "fk_logdet", "--grid",
                         "-1,1,-1,1,5,5"});
    REQUIRE(br.code == 0);
    CHECK(br.out.rfind("re,im,value,mask\n", 0) == 0);
    CHECK(std::count(br.out.begin(), br.out.end(), '\n') == 26);

    const auto tr = run({"transform", "--t", "1", "--poly", "u^2", "--z", "1,0", "--resolution", "1025"});
    REQUIRE(tr.code == 0);
    const auto tj = nlohmann::json::parse(tr.out);
    CHECK(tj["evaluations"][0]["abs_difference"].get<double>() < 1e-6);

    // numeric failure: z outside the domain
    CHECK(run({"transform", "--t", "1", "--z", "0,0", "--resolution", "257"}).code == 2);
}

TEST_CASE("verify subset") {
    const fs::path p = scratch() / "report.json";
    const auto r = run({"verify", "--suite", "quick", "--only", "2", "--json", p.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("[PASS]") != std::string::npos);
    const auto j = nlohmann::json::parse(slurp(p));
    CHECK(j["passed"] == true);
}
