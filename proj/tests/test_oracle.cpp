#include <orbitsolve/catalog.hpp>
#include <orbitsolve/oracle.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace orbitsolve;
using std::string;
using std::vector;

TEST_CASE("x1<x2, x1<x3 has three solutions")
{
    auto reduct = catalog::reduct("q-order");
    auto inst = make_instance(3, {{"<", {0, 1}}, {"<", {0, 2}}});
    auto verdict = type_space_decide(*reduct, inst);
    CHECK(verdict.sat);
    REQUIRE(verdict.count() == 3);

    std::set<string> described;
    for (auto o : verdict.solution_orbits)
        described.insert(describe_chain(reduct->space().orbit(3, o), inst.variables));
    CHECK(described == std::set<string>{"s(x1)<s(x2)<s(x3)", "s(x1)<s(x3)<s(x2)", "s(x1)<s(x2)=s(x3)"});
}

TEST_CASE("a directed 3-cycle has no solution")
{
    auto reduct = catalog::reduct("q-order");
    auto inst = make_instance(3, {{"<", {0, 1}}, {"<", {1, 2}}, {"<", {2, 0}}});
    CHECK_FALSE(type_space_decide(*reduct, inst).sat);
    CHECK_FALSE(weak_order_decide(*reduct, inst).sat);
}

TEST_CASE("without constraints every orbit is a solution")
{
    for (auto id : {"q-order", "equality", "unary-2", "random-graph"}) {
        auto reduct = catalog::reduct(id);
        for (int n = 1; n <= 4; ++n) {
            auto verdict = type_space_decide(*reduct, make_instance(n, {}));
            CHECK(int(verdict.count()) == reduct->space().count(n));
        }
    }
}

TEST_CASE("betweenness B(x1,x2,x3) alone")
{
    auto reduct = catalog::reduct("betweenness");
    auto inst = make_instance(3, {{"B", {0, 1, 2}}});
    auto a = weak_order_decide(*reduct, inst);
    CHECK(a.count() == 2);
    for (auto o : a.solution_orbits)
        CHECK(reduct->space().orbit(3, o).injective());
    CHECK(type_space_decide(*reduct, inst).solution_orbits == a.solution_orbits);
}

TEST_CASE("an equality-forcing constraint")
{
    auto sp = catalog::space("q-order");
    Reduct reduct{"eq", sp, {compile_reduct_relation(*sp, "Eq", 2, "1=2")}};
    auto verdict = weak_order_decide(reduct, make_instance(3, {{"Eq", {0, 1}}}));
    CHECK(verdict.sat);
    for (auto o : verdict.solution_orbits)
        CHECK(sp->orbit(3, o).equal(0, 1));
    CHECK(verdict.count() == 3);
}

TEST_CASE("the two oracles agree on random order instances")
{
    auto reduct = catalog::reduct("betweenness");
    std::mt19937 rng(11);
    vector<string> rels{"B", "<", "=", "!="};
    for (int round = 0; round < 60; ++round) {
        int n = 2 + int(rng() % 4);
        vector<std::pair<string, vector<int>>> cons;
        int m = int(rng() % 5);
        for (int c = 0; c < m; ++c) {
            auto r = rels[rng() % rels.size()];
            int arity = r == "B" ? 3 : 2;
            vector<int> scope;
            for (int k = 0; k < arity; ++k)
                scope.push_back(int(rng() % n));
            cons.emplace_back(r, scope);
        }
        auto inst = make_instance(n, cons);
        auto a = type_space_decide(*reduct, inst);
        auto b = weak_order_decide(*reduct, inst);
        CHECK(a.sat == b.sat);
        CHECK(a.solution_orbits == b.solution_orbits);
    }
}

TEST_CASE("oracle limits")
{
    auto reduct = catalog::reduct("q-order");
    CHECK_THROWS_AS(type_space_decide(*reduct, make_instance(8, {})), CapacityError);
    CHECK_THROWS_AS(weak_order_decide(*reduct, make_instance(8, {})), CapacityError);
    CHECK_THROWS_AS(weak_order_decide(*catalog::reduct("neq"), make_instance(2, {})), InputError);
}

TEST_CASE("rank vectors give q-order orbits")
{
    auto sp = catalog::space("q-order");
    auto o = orbit_of_ranks({2, 0, 2});
    CHECK(o.equal(0, 2));
    CHECK(o.holds(0, Tuple{1, 0}));
    CHECK(sp->find(o));
    CHECK(describe_chain(o, {"a", "b", "c"}) == "s(b)<s(a)=s(c)");
}
