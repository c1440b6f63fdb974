#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "chudsym/cli.hpp"

using nlohmann::json;

namespace {

struct Result {
    int code;
    std::string out;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    int code = chudsym::cli::run(args, out);
    return {code, out.str()};
}

}  // namespace

TEST_CASE("bound, constructive with empirical policy") {
    Result r = run({"--sieve-limit", "1000000", "bound", "--p", "5", "--n", "100", "--field", "p2", "--method",
                    "constructive", "--policy", "empirical"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["value_int"] == 300);
    CHECK(j["witnesses"]["l_k"] == 97);
    CHECK(j["witnesses"]["l_k1"] == 101);
}

TEST_CASE("bound, closed form") {
    Result r = run({"bound", "--p", "5", "--n", "100", "--field", "p2", "--method", "closed"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["value_int"] == 316);
    CHECK(j["valid_unconditional"] == false);
}

TEST_CASE("gaps") {
    Result r = run({"gaps", "--limit", "1000000", "--alpha", "2/3"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["violations"] == json::array({7}));
    CHECK(j["runtime_ms"].is_null());
}

TEST_CASE("mult with degree-two places") {
    Result r = run({"mult", "--q", "2", "--n", "3", "--allow-deg2", "--verify", "exhaustive"});
    REQUIRE(r.code == 0);
    json j = json::parse(r.out);
    CHECK(j["rank"] == 6);
    CHECK(j["verification"]["failures"] == 0);
    CHECK(j["verification"]["pairs_checked"] == 64);
}

TEST_CASE("mult writes a tensor") {
    const std::string path = "cli_test_tensor.json";
    Result r = run({"mult", "--q", "2", "--n", "2", "--emit-tensor", path});
    REQUIRE(r.code == 0);
    std::ifstream f(path);
    json t = json::parse(f);
    CHECK(t["rank"] == 3);
    CHECK(t["modulus"] == json::array({1, 1, 1}));
    std::remove(path.c_str());
}

TEST_CASE("genus") {
    json a = json::parse(run({"genus", "--N", "143"}).out);
    CHECK(a["genus"] == 13);
    json b = json::parse(run({"genus", "--family", "23l", "--l", "101", "--p", "11"}).out);
    CHECK(b["genus"] == 203);
    CHECK(run({"genus", "--family", "23l", "--l", "101", "--p", "5"}).code == 1);
}

TEST_CASE("table csv") {
    Result r = run({"--sieve-limit", "100000", "table", "--p-set", "5,7", "--n-range", "100:110:10", "--format",
                    "csv"});
    REQUIRE(r.code == 0);
    std::istringstream in(r.out);
    std::string header;
    std::getline(in, header);
    CHECK(header == "p,n,field,method,value_real,value_int,valid,policy,l_k,l_k1,genus,caveats");
    int rows = 0;
    for (std::string line; std::getline(in, line);) ++rows;
    CHECK(rows == 2 * 2 * 2 * 4);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 1);
    CHECK(run({"bound", "--p", "5"}).code == 1);
    CHECK(run({"bound", "--p", "5", "--n", "100", "--bogus"}).code == 1);
    CHECK(run({"bound", "--p", "4", "--n", "100", "--method", "closed"}).code == 1);
    CHECK(run({"mult", "--q", "2", "--n", "13", "--verify", "exhaustive"}).code == 1);

    Result infeasible = run({"mult", "--q", "2", "--n", "4"});
    CHECK(infeasible.code == 2);
    json j = json::parse(infeasible.out);
    CHECK(j["error"]["reason"] == "infeasible");
    CHECK(j["error"]["check"] == "n1");

    Result small = run({"--sieve-limit", "100000", "bound", "--p", "5", "--n", "3", "--method", "constructive"});
    CHECK(small.code == 2);
    CHECK(json::parse(small.out)["error"]["check"] == "pair_threshold");
}

TEST_CASE("every error carries a reason") {
    for (auto args : std::vector<std::vector<std::string>>{
             {}, {"nope"}, {"gaps", "--limit", "2"}, {"gaps", "--limit", "100", "--alpha", "3/2"},
             {"mult", "--q", "6", "--n", "2"}, {"compare", "--p", "9", "--n", "10"}}) {
        Result r = run(args);
        CHECK(r.code != 0);
        json j = json::parse(r.out);
        CHECK(j["error"]["reason"].is_string());
    }
}

TEST_CASE("identical arguments give identical output") {
    for (auto args : std::vector<std::vector<std::string>>{
             {"mult", "--q", "13", "--n", "7", "--verify", "random:300", "--seed", "5"},
             {"--sieve-limit", "1000000", "compare", "--p", "11", "--n", "810"},
             {"--format", "text", "genus", "--N", "2323"}}) {
        CHECK(run(args).out == run(args).out);
    }
}
