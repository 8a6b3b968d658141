#include <orbitsolve/catalog.hpp>
#include <orbitsolve/io.hpp>

#include <doctest.h>

#include <fstream>
#include <set>

using namespace orbitsolve;
using io::json;
namespace fs = std::filesystem;

namespace
{
    struct TempDir
    {
        fs::path path;
        TempDir() : path(fs::temp_directory_path() / ("orbitsolve-io-" + std::to_string(::getpid())))
        {
            fs::create_directories(path);
        }
        ~TempDir() { fs::remove_all(path); }
        auto write(const std::string & name, const std::string & text) const -> fs::path
        {
            std::ofstream(path / name) << text;
            return path / name;
        }
    };
}

TEST_CASE("template files round-trip")
{
    for (auto id : {"q-order", "equality", "unary-2", "random-graph", "hypergraph-ordered"}) {
        auto tmpl = catalog::base_template(id);
        auto back = io::template_from_json(io::template_to_json(*tmpl));
        CHECK(back->signature() == tmpl->signature());
        CHECK(back->bounds() == tmpl->bounds());
        CHECK(back->name() == tmpl->name());
    }
}

TEST_CASE("a hand-written order template gives the order's orbit counts")
{
    auto j = json::parse(R"({
        "relations": [{"name": "<", "arity": 2}],
        "bounds": [
            [{"pol": "-", "rel": "=", "args": [1, 2]}, {"pol": "-", "rel": "<", "args": [1, 2]}, {"pol": "-", "rel": "<", "args": [2, 1]}],
            [{"pol": "+", "rel": "<", "args": [1, 1]}],
            [{"pol": "+", "rel": "<", "args": [1, 2]}, {"pol": "+", "rel": "<", "args": [2, 3]}, {"pol": "-", "rel": "<", "args": [1, 3]}]
        ]})");
    auto tmpl = io::template_from_json(j);
    CHECK(tmpl->bounds().size() == 3);
    // ordered set partitions of 1, 2, 3 and 4 elements
    for (auto [n, expected] : {std::pair{1, 1}, {2, 3}, {3, 13}, {4, 75}})
        CHECK(enumerate_orbits(*tmpl, n).size() == size_t(expected));
}

TEST_CASE("template errors")
{
    CHECK_THROWS_WITH_AS(io::template_from_json(json::parse(R"({"bounds": []})")), doctest::Contains("relations"), InputError);
    CHECK_THROWS_WITH_AS(io::template_from_json(json::parse(R"({"relations": [], "bounds": [[{"pol": "+", "rel": "S", "args": [1]}]]})")),
        doctest::Contains("unknown relation 'S'"), InputError);
    CHECK_THROWS_AS(io::template_from_json(json::parse(R"({"relations": [], "bounds": [[{"pol": "?", "rel": "=", "args": [1, 2]}]]})")), InputError);
    CHECK_THROWS_AS(io::template_from_json(json::parse(R"({"relations": [], "bounds": [[{"pol": "+", "rel": "=", "args": [0, 1]}]]})")), InputError);
    CHECK_THROWS_AS(io::template_from_json(json::parse(R"({"relations": [{"name": "<", "arity": "two"}]})")), InputError);
}

TEST_CASE("reduct files by formula and by orbit labels")
{
    TempDir dir;
    auto tmpl_path = dir.write("order.json", io::template_to_json(*catalog::base_template("q-order")).dump());
    auto reduct_path = dir.write("between.json", R"J({"base": "order.json", "relations": [
        {"name": "B", "arity": 3, "formula": "(1<2 & 2<3) | (3<2 & 2<1)"},
        {"name": "L", "arity": 2, "orbits": ["2:O1"]}]})J");
    auto r = io::load_reduct(reduct_path.string(), 7);
    auto cat = catalog::reduct("betweenness");
    CHECK(r->relation(*r->find("B")).orbits() == cat->relation(*cat->find("B")).orbits());
    CHECK(r->relation(*r->find("L")).orbits() == std::vector<int>{1});
    CHECK(r->name() == "between");

    // exporting with labels reloads to the same relations
    auto exported = io::reduct_to_json(*r, "q-order");
    auto again = io::reduct_from_json(exported, dir.path, 7);
    for (auto * rel : r->declared())
        CHECK(again->relation(*again->find(rel->name())).orbits() == rel->orbits());

    // a template file loads as the reduct of its own relations
    auto plain = io::load_reduct(tmpl_path.string(), 7);
    CHECK(plain->find("<"));

    CHECK_THROWS_WITH_AS(io::reduct_from_json(json::parse(R"({"base": "q-order", "relations": [{"name": "E", "arity": 2, "formula": "1<2 & 2<1"}]})"), dir.path, 7),
        doctest::Contains("empty"), InputError);
    auto empty = io::reduct_from_json(json::parse(R"({"base": "q-order", "relations": [{"name": "E", "arity": 2, "formula": "1<2 & 2<1", "empty": true}]})"), dir.path, 7);
    CHECK(empty->relation(*empty->find("E")).orbits().empty());
    CHECK_THROWS_AS(io::reduct_from_json(json::parse(R"({"base": "q-order", "relations": [{"name": "L", "arity": 2, "orbits": ["3:O1"]}]})"), dir.path, 7),
        InputError);
    CHECK_THROWS_AS(io::reduct_from_json(json::parse(R"({"base": "q-order", "relations": [{"name": "L", "arity": 2}]})"), dir.path, 7), InputError);
    CHECK_THROWS_AS(io::load_reduct("missing.json", 7), InputError);
    CHECK_THROWS_AS(io::load_reduct("no-such-entry", 7), InputError);
}

TEST_CASE("instances")
{
    auto j = json::parse(R"({"vars": ["x1", "x2", "x3"], "constraints": [["<", ["x1", "x2"]], ["<", ["x1", "x3"]]]})");
    auto inst = io::instance_from_json(j);
    CHECK(inst == make_instance(3, {{"<", {0, 1}}, {"<", {0, 2}}}));
    CHECK(io::instance_to_json(inst) == j);
    CHECK_THROWS_AS(io::instance_from_json(json::parse(R"({"vars": ["x"], "constraints": [["<", "x"]]})")), InputError);
    CHECK_THROWS_AS(io::instance_from_json(json::parse(R"({"constraints": []})")), InputError);

    TempDir dir;
    CHECK_THROWS_WITH_AS(io::load_instance(dir.write("bad.json", "{\"vars\": [")), doctest::Contains("not valid JSON"), InputError);
}

TEST_CASE("finite templates")
{
    for (auto id : {"one-in-three", "two-sat", "three-coloring", "gf2-linear"}) {
        auto t = catalog::finite(id);
        auto back = io::finite_template_from_json(io::finite_template_to_json(t));
        CHECK(back.domain() == t.domain());
        REQUIRE(back.relations().size() == t.relations().size());
        for (size_t i = 0; i < t.relations().size(); ++i)
            CHECK(back.relations()[i].tuples == t.relations()[i].tuples);
    }
    auto t = io::finite_template_from_json(json::parse(R"({"domain": [0, 1], "relations": [{"name": "R", "arity": 3, "tuples": [[1,0,0],[0,1,0],[0,0,1]]}]})"));
    auto inst = io::instance_from_json(json::parse(R"({"vars": ["x","y","z","w"], "constraints": [["R", ["x","y","z"]], ["R", ["x","y","w"]]]})"));
    auto csp = io::finite_instance(t, inst);
    CHECK(count_solutions(csp) == 3);
    CHECK_THROWS_AS(io::finite_template_from_json(json::parse(R"({"domain": [0], "relations": [{"name": "R", "arity": 1, "tuples": [[2]]}]})")), InputError);
    CHECK(io::load_finite_template("three-coloring"));
    CHECK_FALSE(io::load_finite_template("q-order"));
}

TEST_CASE("reports")
{
    auto q = catalog::reduct("q-order");
    auto inst = make_instance(3, {{"<", {0, 1}}, {"<", {0, 2}}});
    auto verdict = type_space_decide(*q, inst);
    auto j = io::verdict_to_json(q->space(), verdict, inst.variables);
    CHECK(j["status"] == "SAT");
    CHECK(j["count"] == 3);
    std::set<std::string> descriptions;
    for (auto & s : j["solutions"])
        descriptions.insert(s["description"].get<std::string>());
    CHECK(descriptions == std::set<std::string>{"s(x1)<s(x2)<s(x3)", "s(x1)<s(x3)<s(x2)", "s(x1)<s(x2)=s(x3)"});

    auto fi = reduce_instance(*q, make_instance(4, {{"<", {0, 1}}}));
    auto fj = io::finite_instance_to_json(fi);
    for (auto key : {"windowSize", "windows", "domains", "overlaps", "memberships"})
        CHECK(fj.contains(key));
    CHECK(fj["windowSize"] == 3);
    CHECK(fj["windows"][0] == json::array({"x1", "x2", "x3"}));

    auto m = ab_minimality(*q, inst, 2, 3);
    auto mj = io::minimality_to_json(q->space(), m, inst.variables, true);
    CHECK(mj["status"] == "fixpoint");
    CHECK(mj.contains("domains"));

    auto h = builtin_action("m-majority");
    auto aj = io::action_to_json(*h);
    CHECK(aj["tables"]["3"].size() == 19u * 19u * 19u);
    int completed = 0;
    for (auto & [key, cell] : aj["tables"]["3"].items())
        completed += cell["provenance"] == "completed";
    CHECK(completed > 0);

    auto list = io::catalog_list_json();
    CHECK(list.size() == catalog::list().size());
    for (auto & e : catalog::list()) {
        if (e.kind == catalog::Kind::Note) {
            CHECK_THROWS_AS(io::catalog_export(e.id), InputError);
            continue;
        }
        auto exported = io::catalog_export(e.id);
        if (e.kind == catalog::Kind::Reduct) {
            auto r = io::reduct_from_json(exported, ".", 7);
            auto original = catalog::reduct(e.id);
            for (auto * rel : original->declared())
                CHECK(r->relation(*r->find(rel->name())).orbits() == rel->orbits());
        }
    }
}
