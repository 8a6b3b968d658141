#include <orbitsolve/catalog.hpp>
#include <orbitsolve/reduct.hpp>
#include <orbitsolve/templates.hpp>

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

using namespace orbitsolve;
using std::string;
using std::vector;

namespace
{
    auto space_of(std::shared_ptr<const Template> t) -> std::shared_ptr<const OrbitSpace>
    {
        return std::make_shared<const OrbitSpace>(std::move(t));
    }

    // All set partitions of n elements as canonical block labellings.
    auto partitions(int n) -> vector<vector<int>>
    {
        std::set<vector<int>> seen;
        vector<int> v(n, 0);
        while (true) {
            std::map<int, int> relabel;
            vector<int> canon;
            for (auto x : v)
                canon.push_back(relabel.try_emplace(x, int(relabel.size())).first->second);
            seen.insert(canon);
            int i = n - 1;
            while (i >= 0 && v[i] == n - 1)
                v[i--] = 0;
            if (i < 0)
                break;
            ++v[i];
        }
        return {seen.begin(), seen.end()};
    }

    // The formula pinning down one orbit completely.
    auto describing_formula(const Orbit & o, const Signature & sig) -> string
    {
        vector<string> parts;
        for (int i = 0; i < o.size(); ++i)
            for (int j = i + 1; j < o.size(); ++j)
                parts.push_back((o.equal(i, j) ? "" : "~") + std::to_string(i + 1) + "=" + std::to_string(j + 1));
        for (size_t r = 0; r < sig.size(); ++r) {
            int arity = sig[r].arity, total = 1;
            for (int k = 0; k < arity; ++k)
                total *= o.size();
            for (int code = 0; code < total; ++code) {
                Tuple t(arity);
                string args;
                for (int k = arity - 1, c = code; k >= 0; --k, c /= o.size())
                    t[k] = std::uint8_t(c % o.size());
                for (int k = 0; k < arity; ++k)
                    args += (k ? "," : "") + std::to_string(t[k] + 1);
                parts.push_back((o.holds(r, t) ? "" : "~") + sig[r].name + "(" + args + ")");
            }
        }
        string f;
        for (auto & p : parts)
            f += (f.empty() ? "" : " & ") + p;
        return f.empty() ? "1=1" : f;
    }
}

TEST_CASE("formula parsing")
{
    auto sig = templates::q_order()->signature();
    auto f = parse_formula("(1<2 & 2<3) | (3<2 & 2<1)", sig);
    CHECK(f.kind == Formula::Kind::Or);
    CHECK(f.max_variable() == 2);
    CHECK(parse_formula("<(1,2)", sig).atom == Atom::rel(0, {0, 1}));
    CHECK(parse_formula("~1=2", sig).kind == Formula::Kind::Not);

    auto p = parse_formula("1=2 | 3=4 & ~2<1", sig);
    REQUIRE(p.kind == Formula::Kind::Or);
    CHECK(p.children[1].kind == Formula::Kind::And);

    CHECK_THROWS_AS(parse_formula("1 E 2", sig), InputError);
    CHECK_THROWS_AS(parse_formula("(1<2", sig), InputError);
    CHECK_THROWS_AS(parse_formula("0=1", sig), InputError);
    CHECK_THROWS_AS(parse_formula("<(1,2,3)", sig), InputError);
    CHECK_THROWS_WITH_AS(parse_formula("1<2 &", sig), doctest::Contains("column"), InputError);
}

TEST_CASE("infix syntax needs a binary relation")
{
    auto sig = templates::hypergraph()->signature();
    CHECK_THROWS_AS(parse_formula("1 E 2", sig), InputError);
    CHECK(parse_formula("E(1,2,3)", sig).atom == Atom::rel(0, {0, 1, 2}));
}

TEST_CASE("betweenness is the union of two orbits")
{
    auto sp = space_of(templates::q_order());
    auto b = compile_reduct_relation(*sp, "B", 3, "(1<2 & 2<3) | (3<2 & 2<1)");
    REQUIRE(b.orbits().size() == 2);
    for (auto o : b.orbits())
        CHECK(sp->orbit(3, o).injective());
}

TEST_CASE("a tautology selects every orbit")
{
    auto sp = space_of(templates::q_order());
    CHECK(compile_reduct_relation(*sp, "T", 2, "1=1").orbits().size() == 3);
}

TEST_CASE("eq-or-eq over the partitions of four positions")
{
    auto sp = space_of(templates::equality());
    auto r = compile_reduct_relation(*sp, "R", 4, "1=2 | 3=4");
    int expected = 0;
    for (auto & p : partitions(4))
        expected += (p[0] == p[1] || p[2] == p[3]);
    CHECK(partitions(4).size() == 15);
    CHECK(int(r.orbits().size()) == expected);
}

TEST_CASE("Z over q-order")
{
    auto sp = space_of(templates::q_order());
    auto z = compile_reduct_relation(*sp, "Z", 4, "~(1=2) | 3=4");
    for (int o = 0; o < sp->count(4); ++o) {
        auto & orb = sp->orbit(4, o);
        CHECK(z.contains(o) == (! orb.equal(0, 1) || orb.equal(2, 3)));
    }
}

TEST_CASE("compiled relations follow the boolean structure of formulas")
{
    auto sp = space_of(templates::q_order());
    auto & sig = sp->signature();
    std::mt19937 rng(7);
    vector<string> atoms{"1<2", "2<1", "1=2", "2<3", "3<1", "1=3", "2=3", "3<2"};
    for (int round = 0; round < 50; ++round) {
        auto a = atoms[rng() % atoms.size()], b = atoms[rng() % atoms.size()];
        auto oa = compile_reduct_relation(*sp, "A", 3, a, true).orbits();
        auto ob = compile_reduct_relation(*sp, "B", 3, b, true).orbits();
        auto ou = compile_reduct_relation(*sp, "U", 3, parse_formula("(" + a + ") | (" + b + ")", sig), true).orbits();
        auto oi = compile_reduct_relation(*sp, "I", 3, "(" + a + ") & (" + b + ")", true).orbits();
        vector<int> u, i;
        std::set_union(oa.begin(), oa.end(), ob.begin(), ob.end(), std::back_inserter(u));
        std::set_intersection(oa.begin(), oa.end(), ob.begin(), ob.end(), std::back_inserter(i));
        CHECK(ou == u);
        CHECK(oi == i);
    }
}

TEST_CASE("the describing formula of a pair orbit selects exactly that orbit")
{
    for (auto id : {"q-order", "equality", "unary-2", "unary-3", "random-graph", "hypergraph", "hypergraph-ordered"}) {
        auto sp = catalog::space(id);
        for (int o = 0; o < sp->count(2); ++o) {
            auto f = describing_formula(sp->orbit(2, o), sp->signature());
            auto r = compile_reduct_relation(*sp, "P", 2, f);
            CHECK(r.orbits() == vector<int>{o});
        }
    }
}

TEST_CASE("empty relations need the flag")
{
    auto sp = space_of(templates::q_order());
    CHECK_THROWS_AS(compile_reduct_relation(*sp, "F", 2, "1<2 & 2<1"), InputError);
    CHECK(compile_reduct_relation(*sp, "F", 2, "1<2 & 2<1", true).orbits().empty());
    CHECK_THROWS_AS(compile_reduct_relation(*sp, "F", 2, "1<3"), InputError);
    CHECK_THROWS_AS(ReductRelation(*sp, "X", 2, {3}), InputError);
}

TEST_CASE("reduct names")
{
    auto sp = space_of(templates::q_order());
    vector<ReductRelation> clash{compile_reduct_relation(*sp, "<", 2, "1<2")};
    CHECK_THROWS_AS(Reduct("r", sp, clash), InputError);
    vector<ReductRelation> twice{compile_reduct_relation(*sp, "L", 2, "1<2"), compile_reduct_relation(*sp, "L", 2, "2<1")};
    CHECK_THROWS_AS(Reduct("r", sp, twice), InputError);

    auto plain = Reduct::of_template(sp);
    CHECK(plain.declared_count() == 0);
    CHECK(plain.find("<"));
    CHECK(plain.find("="));
    CHECK(plain.find("!="));
    CHECK(plain.relation(*plain.find("!=")).orbits().size() == 2);
}

TEST_CASE("instance validation")
{
    auto reduct = catalog::reduct("betweenness");
    auto ok = make_instance(3, {{"B", {0, 1, 2}}});
    CHECK(validate_instance(*reduct, ok).ok());

    auto bad_arity = make_instance(3, {{"B", {0, 1, 2}}, {"B", {0, 1}}});
    auto report = validate_instance(*reduct, bad_arity);
    REQUIRE(report.errors.size() == 1);
    CHECK(report.errors[0].find("constraint 1") != string::npos);

    Instance undeclared{{"x", "y"}, {{"B", {"x", "y", "z"}}}};
    report = validate_instance(*reduct, undeclared);
    REQUIRE_FALSE(report.ok());
    CHECK(report.summary().find("'z'") != string::npos);

    Instance unknown{{"x", "y"}, {{"Q", {"x", "y"}}, {"<", {"x", "x"}}}};
    report = validate_instance(*reduct, unknown);
    CHECK(report.errors.size() == 1);

    Instance dup{{"x", "x"}, {}};
    CHECK_FALSE(validate_instance(*reduct, dup).ok());
    CHECK_THROWS_AS(resolve(*reduct, dup), InputError);
}

TEST_CASE("compiled constraints collapse repeated variables")
{
    auto reduct = catalog::reduct("q-order");
    auto inst = resolve(*reduct, make_instance(2, {{"<", {1, 1}}, {"<", {1, 0}}}));
    auto self_loop = compile_constraint(*reduct, inst.constraints[0]);
    CHECK(self_loop.vars == vector<int>{1});
    CHECK(std::count(self_loop.ok.begin(), self_loop.ok.end(), 1) == 0);

    auto back = compile_constraint(*reduct, inst.constraints[1]);
    CHECK(back.vars == vector<int>{0, 1});
    auto & sp = reduct->space();
    for (int o = 0; o < sp.count(2); ++o)
        CHECK(bool(back.ok[o]) == sp.orbit(2, o).holds(0, Tuple{1, 0}));

    CHECK(mask_within(vector<int>{1, 3}, vector<int>{0, 1, 3}) == 0b110u);
    CHECK_FALSE(mask_within(vector<int>{2}, vector<int>{0, 1, 3}));
}
