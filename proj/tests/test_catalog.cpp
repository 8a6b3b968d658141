#include <orbitsolve/catalog.hpp>

#include <doctest.h>

#include <map>

using namespace orbitsolve;

TEST_CASE("orbit count fixtures")
{
    // counts for n = 1..4, worked out by hand:
    // q-order: ordered set partitions; equality: Bell numbers;
    // unary-2: set partitions with each block coloured in one of 2 parts;
    // random-graph: set partitions with a labelled graph on the blocks;
    // hypergraph-ordered: weak orders, plus 2 choices on each injective triple
    const std::map<std::string, std::vector<int>> fixtures{
        {"q-order", {1, 3, 13, 75}},
        {"equality", {1, 2, 5, 15}},
        {"unary-2", {2, 6, 22, 94}},
        {"random-graph", {1, 3, 15, 127}},
        {"hypergraph-ordered", {1, 3, 19}},
    };
    for (auto & [id, counts] : fixtures)
        for (int n = 1; n <= int(counts.size()); ++n)
            CHECK_MESSAGE(catalog::space(id)->count(n) == counts[n - 1], id, " n=", n);

    int injective = 0;
    for (auto & o : catalog::space("hypergraph-ordered")->orbits(3))
        injective += o.injective();
    CHECK(injective == 12);
}

TEST_CASE("entries")
{
    CHECK(catalog::base_template("q-order")->bounds().size() == 3);
    CHECK(catalog::get("unary-5").kind == catalog::Kind::Template);
    CHECK(catalog::space("unary-5")->count(1) == 5);
    CHECK_THROWS_AS(catalog::get("unary-0"), InputError);
    CHECK_THROWS_AS(catalog::get("nothing"), InputError);
    CHECK_THROWS_AS(catalog::base_template("diophantine-note"), InputError);
    CHECK_THROWS_AS(catalog::reduct("one-in-three"), InputError);
    for (auto & e : catalog::list()) {
        switch (e.kind) {
        case catalog::Kind::Template: CHECK(catalog::reduct(e.id)->relation_count() > 0); break;
        case catalog::Kind::Reduct: CHECK(catalog::reduct(e.id)->declared_count() > 0); break;
        case catalog::Kind::Finite: CHECK_FALSE(catalog::finite(e.id).relations().empty()); break;
        case catalog::Kind::Note: CHECK_THROWS_AS(catalog::finite(e.id), InputError); break;
        }
    }
    auto b = catalog::reduct("betweenness");
    CHECK(b->relation(*b->find("B")).orbits().size() == 2);
}
