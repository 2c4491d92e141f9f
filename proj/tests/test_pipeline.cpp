#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "certify/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace certify;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

RunConfig small_config(const std::string& dir) {
    RunConfig c;
    c.K_max = 1000;
    c.N1 = 400;
    c.N2 = 100;
    c.out_dir = fs::temp_directory_path() / dir;
    fs::remove_all(c.out_dir);
    return c;
}

}  // namespace

TEST_CASE("stage names") {
    for (const char* s : {"profile", "weights", "pq", "longtime", "shorttime", "oracle", "all"})
        CHECK(name(parse_stage(s)) == s);
    CHECK_THROWS_AS(parse_stage("bogus"), std::invalid_argument);
}

TEST_CASE("exact number parsing") {
    CHECK(parse_rational("1/100") == rat(1, 100));
    CHECK(parse_rational("6/4") == rat(3, 2));
    CHECK(parse_rational("1e-20") == Rational(1, Integer("100000000000000000000")));
    CHECK(parse_rational("0.01") == rat(1, 100));
    CHECK(parse_rational("-2.5e1") == Rational(-25));
    CHECK(parse_rational("1000000") == Rational(1000000));
    CHECK_THROWS(parse_rational(""));
    CHECK_THROWS(parse_rational("abc"));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("config validation") {
    RunConfig c;
    CHECK_NOTHROW(c.validate());
    c.N4 = 20;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = RunConfig{};
    c.N2 = c.N1 + 1;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("missing dependency gives exit code 2") {
    const RunConfig c = small_config("certify_test_missing");
    std::ostringstream log;
    CHECK(run(Stage::shorttime, c, log) == 2);
    CHECK(log.str().find("missing artifact") != std::string::npos);
    CHECK(run(Stage::pq, c, log) == 2);
    const json s = json::parse(slurp(c.out_dir / "summary.json"));
    CHECK(s.at("verdict") == "INCOMPLETE");
    fs::remove_all(c.out_dir);
}

TEST_CASE("a failing certificate gives exit code 1") {
    RunConfig c = small_config("certify_test_failure");
    c.K_max = 400;  // the tail bound |E^1| <= 1/2 needs a longer series
    std::ostringstream log;
    CHECK(run(Stage::profile, c, log) == 1);
    const json s = json::parse(slurp(c.out_dir / "summary.json"));
    CHECK(s.at("stages").at("profile").at("passed") == false);
    fs::remove_all(c.out_dir);
}

TEST_CASE("profile and weights stages are deterministic") {
    const RunConfig c = small_config("certify_test_determinism");
    std::ostringstream log;
    CHECK(run(Stage::profile, c, log) == 0);
    const std::string first = slurp(artifact_path(c, Stage::profile));
    CHECK(run(Stage::profile, c, log) == 0);
    CHECK(slurp(artifact_path(c, Stage::profile)) == first);

    CHECK(run(Stage::weights, c, log) == 0);
    CHECK(run(Stage::pq, c, log) == 0);
    const json s = json::parse(slurp(c.out_dir / "summary.json"));
    CHECK(s.at("stages").at("profile").at("passed") == true);
    CHECK(s.at("stages").at("pq").at("passed") == true);
    CHECK(s.at("verdict") == "INCOMPLETE");
    // the literal statements are reported next to the lemmas they are replaced by
    CHECK(s.at("literal_statements").size() == 2);
    for (const json& l : s.at("literal_statements")) CHECK(l.at("passed") == false);
    fs::remove_all(c.out_dir);
}
