#include "qcoin/cli.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace {

struct CliResult {
    int exit_code;
    std::string out;
    std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = qcoin::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("seq subcommand", "[cli]") {
    auto result = run_cli({"seq", "--kind", "nbonacci", "--N", "3", "--n", "7"});
    CHECK(result.exit_code == 0);
    CHECK(result.out == "13\n");

    result = run_cli({"seq", "--kind", "fibonacci", "--n", "-1"});
    CHECK(result.out == "1\n");

    result = run_cli({"seq", "--kind", "gen", "--N", "2", "--mult", "2", "--max-n", "5"});
    CHECK(result.out == "0\n1\n2\n6\n16\n44\n");

    result = run_cli({"seq", "--kind", "fib-product", "--m", "3", "--n", "4"});
    CHECK(result.out == "6\n");

    result = run_cli({"seq", "--kind", "fib-convolution", "--n", "5"});
    CHECK(result.out == "10\n");

    result = run_cli({"seq", "--kind", "lucas", "--n", "4", "--format", "json"});
    CHECK(result.out == "{\"value\":\"7\"}\n");
}

TEST_CASE("count and enumerate subcommands", "[cli]") {
    auto result = run_cli({"count", "--d", "2", "--N", "2", "--n", "5"});
    CHECK(result.exit_code == 0);
    CHECK(result.out == "3\n");

    result = run_cli({"count", "--d", "3", "--N", "2", "--n", "4"});
    CHECK(result.out == "6\n");

    result = run_cli({"enumerate", "--d", "2", "--N", "2", "--n", "4"});
    CHECK(result.out == "0011\n1011\n");

    result = run_cli({"enumerate", "--d", "2", "--N", "2", "--n", "4", "--position", "anywhere",
                      "--format", "json"});
    CHECK(result.out == "[\"0011\",\"0110\",\"1011\",\"1100\",\"1101\"]\n");

    result = run_cli({"count", "--d", "2", "--N", "2", "--n", "9", "--position", "at", "--k", "3"});
    CHECK(result.out == (qcoin::fibonacci(3) * qcoin::fibonacci(6)).str() + "\n");
}

TEST_CASE("decimal subcommand", "[cli]") {
    auto result = run_cli({"decimal", "--n", "6", "--N", "2", "--format", "csv"});
    CHECK(result.out == "3\n11\n19\n35\n43\n");

    result = run_cli({"decimal", "--n", "6", "--N", "3", "--format", "json"});
    CHECK(result.out == "[7,23,39,55]\n");
}

TEST_CASE("prob subcommands", "[cli]") {
    auto result = run_cli({"prob", "end", "--d", "2", "--N", "2", "--n", "6", "--format", "json"});
    CHECK(result.exit_code == 0);
    CHECK(result.out == "{\"num\":\"5\",\"den\":\"64\"}\n");

    result = run_cli({"prob", "end", "--d", "3", "--N", "2", "--n", "3"});
    CHECK(result.out == "2/27\n");

    result = run_cli({"prob", "end", "--d", "2", "--N", "2", "--n", "6", "--float"});
    CHECK(result.out == "0.078125\n");

    result = run_cli({"prob", "position", "--N", "2", "--n", "5", "--k", "2"});
    CHECK(result.out == "1/16\n");

    result = run_cli({"prob", "anywhere", "--N", "2", "--n", "4"});
    CHECK(result.out == "5/16\n");

    result = run_cli({"prob", "generic", "--probs", "1/3,2/3", "--N", "2", "--n", "4"});
    CHECK(result.out == "4/27\n");

    result = run_cli({"prob", "bloch", "--theta", "1.5707963267948966", "--N", "2", "--n", "3"});
    CHECK(std::stod(result.out) == Catch::Approx(0.125).margin(1e-12));

    result = run_cli({"prob", "superposition", "--alpha", "1", "--beta", "0", "--format", "json"});
    CHECK(result.out == "{\"p0\":0.5,\"p1\":0.5}\n");
}

TEST_CASE("genfun and completeness subcommands", "[cli]") {
    auto result = run_cli({"genfun", "--kind", "duplicated-prob", "--x", "1"});
    CHECK(result.out == "1\n");

    result = run_cli({"genfun", "--kind", "tribonacci-prob", "--x", "1/2", "--format", "json"});
    CHECK(result.out == "{\"num\":\"8\",\"den\":\"43\"}\n");

    result = run_cli({"genfun", "--kind", "tribonacci-numbers", "--x", "1/2", "--terms", "200"});
    CHECK(result.out.find("closedForm 2\n") != std::string::npos);

    result = run_cli({"completeness", "--d", "2", "--N", "2", "--max-n", "4", "--format", "json"});
    CHECK(result.out.find("{\"partialSum\":{\"num\":\"1\",\"den\":\"2\"},\"termsUsed\":3") == 0);

    // evaluation at the pole is a computation error
    result = run_cli({"genfun", "--kind", "duplicated-prob", "--x", "2"});
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("error:") == 0);
}

TEST_CASE("entropy and golden subcommands", "[cli]") {
    auto result = run_cli({"entropy", "coin", "--probs", "1/2,1/2"});
    CHECK(result.out == "1\n");

    result = run_cli({"entropy", "series", "--d", "2", "--N", "2", "--max-n", "4"});
    CHECK(result.out.find("partialSum 1.25\n") == 0);

    result = run_cli({"golden", "--kind", "count", "--n", "40", "--format", "json"});
    CHECK(result.exit_code == 0);
    const auto parsed = nlohmann::json::parse(result.out);
    CHECK(std::abs(parsed.at("value").get<double>() - qcoin::golden_ratio()) < 1e-14);
}

TEST_CASE("project subcommand", "[cli]") {
    auto result = run_cli({"project", "--d", "2", "--N", "2", "--n", "5", "--format", "json"});
    CHECK(result.exit_code == 0);
    const auto parsed = nlohmann::json::parse(result.out);
    CHECK(parsed.at("dimension") == 3);
    CHECK(parsed.at("indices") == nlohmann::json::parse("[3,11,19]"));
    CHECK(parsed.at("uniformBornProbability").at("num") == "3");
    CHECK(parsed.at("uniformBornProbability").at("den") == "32");
}

TEST_CASE("simulate subcommand", "[cli]") {
    auto result = run_cli({"simulate", "--d", "2", "--N", "2", "--n", "6", "--shots", "5000",
                           "--seed", "42", "--format", "json"});
    CHECK(result.exit_code == 0);
    const auto first = nlohmann::json::parse(result.out);
    CHECK(first.at("shots") == 5000);

    // bit-identical rerun
    auto again = run_cli({"simulate", "--d", "2", "--N", "2", "--n", "6", "--shots", "5000",
                          "--seed", "42", "--format", "json"});
    CHECK(again.out == result.out);

    // the seed is not optional
    auto missing = run_cli({"simulate", "--d", "2", "--N", "2", "--n", "6", "--shots", "5000"});
    CHECK(missing.exit_code == 2);
}

TEST_CASE("oracle verify subcommand", "[cli]") {
    auto result = run_cli({"oracle", "verify", "--d", "2", "--N", "2", "--max-n", "12"});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("all closed forms match") != std::string::npos);

    result = run_cli({"oracle", "verify", "--d", "3", "--N", "3", "--max-n", "8", "--format",
                      "json"});
    CHECK(result.exit_code == 0);
    const auto parsed = nlohmann::json::parse(result.out);
    CHECK(parsed.at("allMatch") == true);
}

TEST_CASE("json output round-trips byte-identically", "[cli]") {
    const std::vector<std::vector<std::string>> invocations{
        {"prob", "end", "--d", "2", "--N", "2", "--n", "6", "--format", "json"},
        {"decimal", "--n", "6", "--N", "2", "--format", "json"},
        {"project", "--d", "2", "--N", "3", "--n", "5", "--format", "json"},
        {"entropy", "series", "--d", "2", "--N", "2", "--max-n", "40", "--format", "json"},
        {"golden", "--kind", "prob", "--n", "40", "--format", "json"},
    };
    for (const auto& args : invocations) {
        const auto result = run_cli(args);
        REQUIRE(result.exit_code == 0);
        const auto parsed = nlohmann::ordered_json::parse(result.out);
        CHECK(parsed.dump() + "\n" == result.out);
    }
}

TEST_CASE("usage errors exit with 2", "[cli]") {
    CHECK(run_cli({"prob", "end", "--n", "6", "--bogus"}).exit_code == 2);
    CHECK(run_cli({"prob", "end"}).exit_code == 2);
    CHECK(run_cli({"nonsense"}).exit_code == 2);
    CHECK(run_cli({}).exit_code == 2);
    CHECK(run_cli({"seq", "--kind", "unknown", "--n", "1"}).exit_code == 2);
}

TEST_CASE("computation errors exit with 1", "[cli]") {
    auto result = run_cli({"count", "--d", "2", "--N", "2", "--n", "30"});
    CHECK(result.exit_code == 1);
    CHECK(result.err.find("budget") != std::string::npos);

    CHECK(run_cli({"seq", "--kind", "fibonacci", "--n", "20000"}).exit_code == 1);
    CHECK(run_cli({"prob", "generic", "--probs", "1/2,1/3", "--N", "2", "--n", "4"}).exit_code ==
          1);
    CHECK(run_cli({"decimal", "--n", "4", "--d", "3"}).exit_code == 1);
}

TEST_CASE("help exits cleanly", "[cli]") {
    const auto result = run_cli({"--help"});
    CHECK(result.exit_code == 0);
    CHECK(result.out.find("seq") != std::string::npos);
}
