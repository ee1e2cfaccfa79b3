#include "doctest.h"

#include "corpus.hpp"

#include "girl/cli.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace girl;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome girl_cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string model(const std::string &name) { return support::path_in_repo("models/" + name); }

struct TempDir {
    fs::path path;
    TempDir()
    {
        std::random_device rd;
        path = fs::temp_directory_path() / ("girl-cli-" + std::to_string(rd()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string &name) const { return (path / name).string(); }
};

void write(const std::string &path, const std::string &text) { std::ofstream(path, std::ios::binary) << text; }

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("solve prints sat and a witness summary")
    {
        auto r = girl_cli({"solve", model("gradcourse.girl"), "--scope", "3"});
        CHECK(r.code == cli::kOk);
        CHECK(r.out.rfind("sat\n", 0) == 0);
        CHECK(r.out.find("relations:") != std::string::npos);
    }

    TEST_CASE("transpile writes the Alloy file, byte-identical across runs")
    {
        TempDir tmp;
        auto r = girl_cli({"transpile", model("filesystem_fixed.girl"), "-o", tmp / "fs.als"});
        CHECK(r.code == cli::kOk);
        std::string first = support::read_text(tmp / "fs.als");
        CHECK(first.find("no d: Dir | d in d.^contents") != std::string::npos);
        CHECK(girl_cli({"transpile", model("filesystem_fixed.girl"), "-o", tmp / "fs.als"}).code == cli::kOk);
        CHECK(support::read_text(tmp / "fs.als") == first);
        auto stdout_run = girl_cli({"transpile", model("filesystem_fixed.girl")});
        CHECK(stdout_run.out == first);
    }

    TEST_CASE("undeclared entity is exit 2 with one V2")
    {
        TempDir tmp;
        write(tmp / "broken.girl", "entity A;\ninv c { #Ghost >= 1 }\n");
        auto r = girl_cli({"validate", tmp / "broken.girl"});
        CHECK(r.code == cli::kInvalid);
        CHECK(r.out == "invalid\n");
        CHECK(r.err.find("[V2]") != std::string::npos);
        CHECK(r.err.find("[V", r.err.find("[V2]") + 1) == std::string::npos);
    }

    TEST_CASE("exit code per outcome class")
    {
        TempDir tmp;
        write(tmp / "syntax.girl", "entity ;\n");
        write(tmp / "lexical.girl", "entity A$;\n");
        CHECK(girl_cli({"validate", model("gradcourse.girl")}).code == cli::kOk);
        CHECK(girl_cli({"solve", model("contradiction.girl")}).code == cli::kUnsat);
        CHECK(girl_cli({"enumerate", model("contradiction.girl")}).code == cli::kUnsat);
        CHECK(girl_cli({"solve", support::path_in_repo("tests/fixtures/validate/v5.girl")}).code == cli::kInvalid);
        CHECK(girl_cli({"solve", tmp / "syntax.girl"}).code == cli::kParseError);
        CHECK(girl_cli({"validate", tmp / "lexical.girl"}).code == cli::kParseError);
        CHECK(girl_cli({"solve", model("gradcourse.girl"), "--max-candidates", "1"}).code == cli::kInconclusive);
        CHECK(girl_cli({"solve", tmp / "missing.girl"}).code == cli::kUsage);
        CHECK(girl_cli({"frobnicate", model("gradcourse.girl")}).code == cli::kUsage);
        CHECK(girl_cli({}).code == cli::kUsage);
        CHECK(girl_cli({"solve", model("gradcourse.girl"), "--scope", "0"}).code == cli::kUsage);
        CHECK(girl_cli({"check", model("gradcourse.girl")}).code == cli::kUsage);
        CHECK(girl_cli({"transpile", model("gradcourse.girl"), "--format", "dot"}).code == cli::kUsage);
    }

    TEST_CASE("budget from the environment, overridden by the flag")
    {
        ::setenv("GIRL_MAX_CANDIDATES", "1", 1);
        CHECK(girl_cli({"solve", model("gradcourse.girl")}).code == cli::kInconclusive);
        CHECK(girl_cli({"solve", model("gradcourse.girl"), "--max-candidates", "10000000"}).code == cli::kOk);
        ::setenv("GIRL_MAX_CANDIDATES", "lots", 1);
        CHECK(girl_cli({"solve", model("gradcourse.girl")}).code == cli::kUsage);
        ::unsetenv("GIRL_MAX_CANDIDATES");
        CHECK(girl_cli({"solve", model("gradcourse.girl")}).code == cli::kOk);
    }

    TEST_CASE("solve and enumerate write DOT files")
    {
        TempDir tmp;
        auto r = girl_cli({"solve", model("filesystem_base.girl"), "--dot", tmp / "out"});
        CHECK(r.code == cli::kOk);
        std::string witness = support::read_text(tmp / "out/filesystem_base-witness.dot");
        CHECK(witness.rfind("digraph instance {", 0) == 0);
        auto e = girl_cli({"enumerate", model("filesystem_base.girl"), "--max-instances", "3", "--dot", tmp / "out"});
        CHECK(e.code == cli::kOk);
        CHECK(e.out.rfind("3 instances\n", 0) == 0);
        for (const char *name : {"filesystem_base-instance-001.dot", "filesystem_base-instance-002.dot", "filesystem_base-instance-003.dot"})
            CHECK(fs::exists(tmp.path / "out" / name));
        CHECK_FALSE(fs::exists(tmp.path / "out" / "filesystem_base-instance-004.dot"));
        CHECK(support::read_text(tmp / "out/filesystem_base-instance-001.dot") == witness);
        girl_cli({"solve", model("filesystem_base.girl"), "--dot", tmp / "out"});
        CHECK(support::read_text(tmp / "out/filesystem_base-witness.dot") == witness);
    }

    TEST_CASE("check workflow: weakened witness against the full model")
    {
        TempDir tmp;
        auto saved = girl_cli({"solve", model("gradcourse_no_rcs4.girl"), "--save-instance", tmp / "w.json"});
        CHECK(saved.code == cli::kOk);
        auto own = girl_cli({"check", model("gradcourse_no_rcs4.girl"), "--instance", tmp / "w.json"});
        CHECK(own.code == cli::kOk);
        CHECK(own.out.find("FAILS") == std::string::npos);
        auto full = girl_cli({"check", model("gradcourse.girl"), "--instance", tmp / "w.json", "--format", "json"});
        auto report = nlohmann::json::parse(full.out);
        CHECK(report["command"] == "check");
        CHECK(report["exitCode"] == full.code);
        bool rcs4_seen = false;
        for (const auto &c : report["constraints"])
            if (c["label"] == "RCS4") {
                rcs4_seen = true;
                CHECK(c["kind"] == "invariant");
            }
        CHECK(rcs4_seen);
    }

    TEST_CASE("check rejects bad instance files")
    {
        TempDir tmp;
        write(tmp / "bad.json", "{ nope");
        write(tmp / "ghost.json", R"({"version": "girl-instance/1", "atoms": {"Ghost": []}, "kinds": {}, "relations": {}})");
        CHECK(girl_cli({"check", model("gradcourse.girl"), "--instance", tmp / "bad.json"}).code == cli::kParseError);
        CHECK(girl_cli({"check", model("gradcourse.girl"), "--instance", tmp / "ghost.json"}).code == cli::kUsage);
        CHECK(girl_cli({"check", model("gradcourse.girl"), "--instance", tmp / "absent.json"}).code == cli::kUsage);
    }

    TEST_CASE("JSON report")
    {
        auto r = girl_cli({"solve", model("banking.girl"), "--scope", "2", "--format", "json"});
        CHECK(r.code == cli::kOk);
        auto report = nlohmann::json::parse(r.out);
        CHECK(report["version"] == "girl-report/1");
        CHECK(report["command"] == "solve");
        CHECK(report["verdict"] == "sat");
        CHECK(report["status"] == "sat");
        CHECK(report["exitCode"] == 0);
        CHECK(report["scope"] == 2);
        CHECK(report["witness"]["version"] == "girl-instance/1");
        CHECK(report["timingMs"].is_number());
        CHECK(r.err.empty());
        auto bad = nlohmann::json::parse(girl_cli({"validate", support::path_in_repo("tests/fixtures/validate/v1.girl"), "--format", "json"}).out);
        CHECK(bad["status"] == "invalid");
        REQUIRE(bad["diagnostics"].size() == 1);
        CHECK(bad["diagnostics"][0]["rule"] == "V1");
    }

    TEST_CASE("models load from girl-ast/1 JSON")
    {
        auto r = girl_cli({"solve", support::path_in_repo("tests/fixtures/validate/v8.json")});
        CHECK(r.code == cli::kInvalid);
        TempDir tmp;
        write(tmp / "bank.json", R"({"version": "girl-ast/1", "name": "bank", "entities": [{"kind": "plain", "name": "Account"}],
            "relationships": [], "invariants": []})");
        CHECK(girl_cli({"solve", tmp / "bank.json"}).code == cli::kOk);
    }
}
