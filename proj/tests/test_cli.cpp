#include "cli.hpp"

#include <orbitsolve/io.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using orbitsolve::io::json;
namespace fs = std::filesystem;

namespace
{
    struct Run
    {
        int code;
        std::string text;
        auto report() const -> json { return json::parse(text); }
    };

    auto run(std::vector<std::string> args) -> Run
    {
        args.insert(args.begin(), "orbitsolve");
        std::vector<const char *> argv;
        for (auto & a : args)
            argv.push_back(a.c_str());
        std::ostringstream out;
        int code = orbitsolve::cli::run(int(argv.size()), argv.data(), out);
        return {code, out.str()};
    }

    auto write_file(const std::string & name, const std::string & text) -> std::string
    {
        auto path = fs::temp_directory_path() / ("orbitsolve-cli-" + name);
        std::ofstream(path) << text;
        return path.string();
    }

    const std::string fork_json = R"({"vars":["x1","x2","x3"],"constraints":[["<",["x1","x2"]],["<",["x1","x3"]]]})";
    const std::string cycle = R"({"vars":["x1","x2","x3"],"constraints":[["<",["x1","x2"]],["<",["x2","x3"]],["<",["x3","x1"]]]})";
}

TEST_CASE("orbits lists the weak orders")
{
    auto r = run({"orbits", "q-order", "--n", "3"});
    CHECK(r.code == 0);
    auto j = r.report();
    CHECK(j["command"] == "orbits");
    CHECK(j["payload"]["count"] == 13);
    CHECK(j["payload"]["orbits"].size() == 13);
    CHECK(j["payload"]["orbits"][1]["label"] == "3:O1");
    CHECK(j["wallTimeMs"].is_null());
    CHECK(run({"orbits", "q-order", "--n", "3", "--timing"}).report()["wallTimeMs"].is_number());
}

TEST_CASE("minimality exit codes")
{
    auto cyc = write_file("cycle3.json", cycle);
    auto r = run({"minimality", "--a", "2", "--b", "3", "q-order", cyc});
    CHECK(r.code == 1);
    CHECK(r.report()["status"] == "refuted");

    auto fork_file = write_file("fork.json", fork_json);
    auto ok = run({"minimality", "q-order", fork_file, "--domains"});
    CHECK(ok.code == 0);
    auto payload = ok.report()["payload"];
    CHECK(payload["status"] == "fixpoint");
    for (auto & d : payload["domains"])
        if (d["vars"] == json::array({"x2", "x3"}))
            CHECK(d["orbits"].size() == 3);
    CHECK(run({"minimality", "--a", "3", "--b", "2", "q-order", fork_file}).code == 2);
}

TEST_CASE("solve and oracle")
{
    auto fork_file = write_file("fork.json", fork_json);
    auto cyc = write_file("cycle3.json", cycle);
    auto s = run({"solve", "q-order", fork_file});
    CHECK(s.code == 0);
    CHECK(s.report()["payload"].contains("witnessOrbit"));
    CHECK(run({"solve", "q-order", cyc}).code == 1);

    auto o = run({"oracle", "q-order", fork_file});
    CHECK(o.code == 0);
    CHECK(o.report()["payload"]["count"] == 3);
    CHECK(run({"oracle", "q-order", fork_file, "--weak-order"}).report()["payload"]["count"] == 3);
    CHECK(run({"oracle", "q-order", cyc}).code == 1);

    // explicit finite template: K4 is not 3-colourable
    auto k4 = write_file("k4.json", R"({"vars":["a","b","c","d"],"constraints":[["neq",["a","b"]],["neq",["a","c"]],["neq",["a","d"]],
        ["neq",["b","c"]],["neq",["b","d"]],["neq",["c","d"]]]})");
    CHECK(run({"solve", "three-coloring", k4}).code == 1);
    auto tri = write_file("tri.json", R"({"vars":["a","b","c"],"constraints":[["neq",["a","b"]],["neq",["b","c"]]]})");
    auto t = run({"solve", "three-coloring", tri});
    CHECK(t.code == 0);
    CHECK(t.report()["payload"]["assignment"].size() == 3);
}

TEST_CASE("reduce exposes the window instance")
{
    auto fork_file = write_file("fork.json", fork_json);
    auto j = run({"reduce", "q-order", fork_file}).report()["payload"];
    CHECK(j["windowSize"] == 3);
    CHECK(j["domains"][0].size() == 3);
    CHECK(run({"reduce", "q-order", fork_file, "--window", "2"}).code == 2);
}

TEST_CASE("action checks")
{
    auto f = run({"check-canonical", "f", "--modulo", "E"});
    CHECK(f.code == 1);
    CHECK(f.report()["payload"]["canonical"] == false);
    CHECK(run({"check-canonical", "f", "--modulo", "E,<"}).code == 0);
    CHECK(run({"check-canonical", "f", "--modulo", "F"}).code == 2);
    auto table = run({"check-canonical", "m-majority", "--modulo", "E,<", "--table"}).report()["payload"]["table"];
    CHECK(table["tables"]["2"].size() == 27);

    CHECK(run({"check-identity", "pseudo-cyclic:g:E"}).code == 0);
    CHECK(run({"check-identity", "cyclic:pi1"}).code == 1);
    CHECK(run({"check-identity", "siggers:eq-injection6"}).code == 0);
    CHECK(run({"check-identity", "pseudo-siggers:q-lex:"}).code == 2); // q-lex is binary
    CHECK(run({"check-identity", "cyclic:g:E"}).code == 2);
    CHECK(run({"check-identity", "majority:g"}).code == 2);
}

TEST_CASE("catalog and errors")
{
    auto list = run({"catalog", "list"}).report()["payload"]["entries"];
    CHECK(list.size() > 10);
    auto exp = run({"catalog", "export", "q-order"}).report()["payload"]["export"];
    CHECK(exp["bounds"].size() == 3);
    CHECK(run({"catalog", "export", "diophantine-note"}).code == 2);
    CHECK(run({"orbits", "no-such-thing", "--n", "2"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"orbits", "--n", "2"}).code == 2);
    CHECK(run({"--help"}).code == 0);

    setenv("ORBITSOLVE_MAX_N", "3", 1);
    CHECK(run({"orbits", "q-order", "--n", "4"}).code == 3);
    setenv("ORBITSOLVE_MAX_N", "zero", 1);
    CHECK(run({"orbits", "q-order", "--n", "2"}).code == 2);
    unsetenv("ORBITSOLVE_MAX_N");
}

TEST_CASE("reports are reproducible and hash their inputs")
{
    auto fork_file = write_file("fork.json", fork_json);
    auto a = run({"oracle", "q-order", fork_file});
    auto b = run({"oracle", "q-order", fork_file});
    CHECK(a.text == b.text);
    auto inputs = a.report()["inputs"];
    CHECK(inputs[0]["name"] == "q-order");
    // SHA-256 of the file contents, independently known for the empty string
    auto empty = write_file("empty.json", "");
    auto e = run({"oracle", "q-order", empty}).report();
    CHECK(e["inputs"][1]["sha256"] == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");

    auto out = (fs::temp_directory_path() / "orbitsolve-cli-out.json").string();
    CHECK(run({"oracle", "q-order", fork_file, "--out", out}).text.empty());
    std::ifstream in(out);
    std::stringstream s;
    s << in.rdbuf();
    CHECK(s.str() == a.text);

    auto human = run({"suite", "fork-instance", "--human"});
    CHECK(human.code == 0);
    CHECK(human.text.find("descriptions match verbatim") != std::string::npos);
}
