#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "qlr/cli.hpp"
#include "qlr/io.hpp"
#include "support.hpp"

using namespace qlr;
using io::json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("analyze on the half fixture") {
    const auto r = run({"analyze", "--input", test::data_path("lambda_half.json")});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    const auto& c = j["contexts"][0];
    CHECK(c["context"] == "C");
    CHECK(c["classification"] == "trigonometric");
    CHECK(c["lambda"] == json::array({0.5, -0.5}));
}

TEST_CASE("validate exit codes") {
    CHECK(run({"validate", "--input", test::data_path("lambda_half.json")}).code == cli::kOk);
    const auto bad = run({"validate", "--input", test::data_path("row_sum.json")});
    CHECK(bad.code == cli::kValidationFailure);
    const auto first = json::parse(bad.err.substr(0, bad.err.find('\n')));
    CHECK(first["precondition"] == "normalization");
    CHECK(run({"validate", "--input", test::data_path("nope.json")}).code == cli::kSchemaError);
    CHECK(run({"validate"}).code == cli::kSchemaError);
    CHECK(run({"frobnicate"}).code == cli::kSchemaError);
    CHECK(run({"validate", "--input", test::data_path("lambda_half.json"), "--format", "csv"}).code ==
          cli::kSchemaError);
}

TEST_CASE("represent refusals") {
    const auto r = run({"represent", "--input", test::data_path("mixed.json")});
    CHECK(r.code == cli::kRepresentationRefused);
    CHECK(r.err.find("\"precondition\":\"mixed-classification\"") != std::string::npos);
    CHECK(r.err.find("\"precondition\":\"double-stochasticity\"") != std::string::npos);
    const auto h = run({"represent", "--input", test::data_path("hyperbolic.json")});
    CHECK(h.code == 0);
    CHECK(json::parse(h.out)["contexts"][0].contains("hyperbolic_amplitude"));
}

TEST_CASE("roundtrip") {
    const auto r = run({"roundtrip", "--seed", "5", "--trials", "100"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["passed"] == 100);
    CHECK(j["trigonometric"] == 100);
    CHECK(j["max_residual"].get<double>() <= 1e-12);
    const auto csv = run({"roundtrip", "--seed", "5", "--trials", "3", "--format", "csv"});
    CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 4);
}

TEST_CASE("simulate writes collectives and reports") {
    const auto dir = std::filesystem::temp_directory_path() / "qlr_cli_test";
    std::filesystem::remove_all(dir);
    const auto r = run({"simulate", "--model", test::data_path("disturbance_model.json"), "--context", "C", "--n",
                        "2000", "--seed", "4", "--collectives", dir.string(), "--with-a-given-b"});
    REQUIRE(r.code == 0);
    const auto j = json::parse(r.out);
    CHECK(j["exact_profile"]["classification"] == "trigonometric");
    std::size_t files = 0;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        std::ifstream f(e.path());
        CHECK(read_collective(f).size() == 2000);
        ++files;
    }
    CHECK(files == 6);
    std::filesystem::remove_all(dir);

    CHECK(run({"simulate", "--model", test::data_path("disturbance_model.json"), "--context", "C", "--seed", "4"})
              .code == cli::kSchemaError);
    CHECK(run({"simulate", "--model", test::data_path("disturbance_model.json"), "--context", "X", "--n", "10",
               "--seed", "4"})
              .code == cli::kValidationFailure);
}

TEST_CASE("sumcheck and --out") {
    const auto path = (std::filesystem::temp_directory_path() / "qlr_sumcheck.json").string();
    const auto r = run({"sumcheck", "--model", test::data_path("disturbance_model.json"), "--context", "C", "--n",
                        "20000", "--seed", "8", "--out", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream f(path);
    const auto j = json::parse(f);
    CHECK(j["eigenvalue_mismatch"].get<double>() > 0.1);
    std::filesystem::remove(path);
}
