#include "ccch/config.hpp"
#include "ccch/report.hpp"

#include <doctest.h>

using namespace ccch;

TEST_CASE("accepts the CCCH peakon run and fills defaults") {
    const RunConfig cfg = parse_config(
        R"({"command":"peakon","c":1.0,"p":1,"q":1,"a":2,"b":2,"t_final":1.0})");
    CHECK(cfg.command == "peakon");
    CHECK(cfg.echo.at("dt").get<double>() == 1e-3);
    CHECK(cfg.echo.at("domain").get<std::string>() == "line");
    CHECK(cfg.echo.at("c").get<double>() == 1.0);
}

TEST_CASE("simulate defaults land in the echo") {
    const RunConfig cfg = parse_config(R"({"command":"simulate"})");
    CHECK(cfg.echo.at("n").get<long long>() == 1024);
    CHECK(cfg.echo.at("dt").get<double>() == 1e-3);
    CHECK(cfg.echo.at("cfl").get<double>() == 0.5);
    CHECK(cfg.echo.at("u0").at("type").get<std::string>() == "zero");
    CHECK(cfg.echo.at("formulation").get<std::string>() == "velocity");
}

TEST_CASE("constraint violations carry the key") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"command":"simulate","p":0})"),
                         doctest::Contains("p must be >= 1"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"command":"simulate","n":100})"),
                         doctest::Contains("n must be a power of two"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"command":"exp-nonuniform","delta":1.5})"),
                         doctest::Contains("delta"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"command":"exp-hoelder","r":5.0})"),
                         doctest::Contains("r must satisfy"), ConfigError);
}

TEST_CASE("unknown and duplicate keys are rejected by name") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"command":"simulate","frobnicate":1})"),
                         doctest::Contains("frobnicate"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"command":"simulate","dt":1e-3,"dt":2e-3})"),
                         doctest::Contains("duplicate key 'dt'"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"command":"simulate","u0":{"type":"gaussian","zz":1}})"),
                         doctest::Contains("zz"), ConfigError);
}

TEST_CASE("type mismatches carry the key path") {
    CHECK_THROWS_WITH_AS(parse_config(R"({"command":"simulate","dt":"fast"})"),
                         doctest::Contains("dt"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"command":"simulate","n":3.5})"),
                         doctest::Contains("n"), ConfigError);
}

TEST_CASE("malformed json and unknown commands") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_WITH_AS(parse_config(R"({"command":"launch"})"),
                         doctest::Contains("unknown command"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"([1,2,3])"), ConfigError);
}

TEST_CASE("echo round-trips through serialization") {
    const std::string text =
        R"({"command":"exp-hoelder","s":3.0,"r":2.0,"eps_list":[0.01,0.005,0.0025]})";
    const RunConfig cfg = parse_config(text);
    const RunConfig again = parse_config(cfg.echo.dump());
    CHECK(again.echo == cfg.echo);
}

TEST_CASE("g17 formatting round-trips doubles") {
    for (double v : {0.1, 1.0 / 3.0, 6.02e23, -1.2345678901234567e-300, 0.0}) {
        const std::string s = format_g17(v);
        CHECK(std::stod(s) == v);
    }
}
