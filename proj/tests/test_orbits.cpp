#include <orbitsolve/orbit_space.hpp>
#include <orbitsolve/templates.hpp>

#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

using namespace orbitsolve;
using std::set;
using std::string;
using std::uint8_t;
using std::vector;

namespace
{
    // Number of distinct dense-rank vectors of length n: weak orders on n labelled elements.
    auto weak_order_count(int n) -> int
    {
        set<vector<int>> seen;
        vector<int> v(n, 0);
        while (true) {
            auto sorted = v;
            std::sort(sorted.begin(), sorted.end());
            sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
            vector<int> dense;
            for (auto x : v)
                dense.push_back(int(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin()));
            seen.insert(dense);
            int i = n - 1;
            while (i >= 0 && v[i] == n - 1)
                v[i--] = 0;
            if (i < 0)
                break;
            ++v[i];
        }
        return int(seen.size());
    }

    // Number of set partitions of n labelled elements, by canonical relabelling.
    auto partition_count(int n) -> int
    {
        set<vector<int>> seen;
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
        return int(seen.size());
    }

    // Every candidate type on n positions: any equality pattern, any fact subsets.
    // Returns those that are eq-congruent and avoid all bounds, as serialized keys.
    auto brute_force_orbits(const Template & t, int n) -> set<string>
    {
        auto & sig = t.signature();
        vector<vector<Tuple>> all_tuples(sig.size());
        for (std::size_t r = 0; r < sig.size(); ++r) {
            int arity = sig[r].arity;
            int total = 1;
            for (int k = 0; k < arity; ++k)
                total *= n;
            for (int c = 0; c < total; ++c) {
                Tuple tup(arity);
                for (int k = arity - 1, x = c; k >= 0; --k, x /= n)
                    tup[k] = uint8_t(x % n);
                all_tuples[r].push_back(tup);
            }
        }
        std::size_t bits = 0;
        for (auto & a : all_tuples)
            bits += a.size();
        REQUIRE(bits < 20);

        set<string> result;
        vector<int> v(n, 0);
        while (true) {
            vector<uint8_t> blocks(v.begin(), v.end());
            for (unsigned long subset = 0; subset < (1ul << bits); ++subset) {
                vector<vector<Tuple>> facts(sig.size());
                std::size_t bit = 0;
                for (std::size_t r = 0; r < sig.size(); ++r)
                    for (auto & tup : all_tuples[r])
                        if (subset & (1ul << bit++))
                            facts[r].push_back(tup);
                Orbit o{blocks, facts};
                if (! is_eq_congruent(o))
                    continue;
                bool ok = true;
                for (auto & b : t.bounds())
                    if (realizes_bound(o, b)) {
                        ok = false;
                        break;
                    }
                if (ok)
                    result.insert(serialize(o, sig));
            }
            int i = n - 1;
            while (i >= 0 && v[i] == n - 1)
                v[i--] = 0;
            if (i < 0)
                break;
            ++v[i];
        }
        return result;
    }

    auto keys(const vector<Orbit> & orbits, const Signature & sig) -> set<string>
    {
        set<string> result;
        for (auto & o : orbits)
            result.insert(serialize(o, sig));
        return result;
    }

    auto lt_orbit(vector<uint8_t> blocks, vector<Tuple> lt) -> Orbit
    {
        return Orbit{std::move(blocks), {std::move(lt)}};
    }
}

TEST_CASE("orbit counts of (Q;<) are weak-order counts")
{
    auto q = templates::q_order();
    CHECK(weak_order_count(3) == 13);
    for (int n = 1; n <= 5; ++n)
        CHECK(int(enumerate_orbits(*q, n).size()) == weak_order_count(n));
}

TEST_CASE("(Q;<) pairs are x=y, x<y, y<x")
{
    auto q = templates::q_order();
    auto pairs = enumerate_orbits(*q, 2);
    REQUIRE(pairs.size() == 3);
    CHECK(pairs[0] == lt_orbit({0, 0}, {}));
    CHECK(pairs[1] == lt_orbit({0, 1}, {{0, 1}}));
    CHECK(pairs[2] == lt_orbit({0, 1}, {{1, 0}}));
}

TEST_CASE("equality template counts are set-partition counts")
{
    auto eq = templates::equality();
    CHECK(enumerate_orbits(*eq, 1).size() == 1);
    for (int n = 1; n <= 6; ++n)
        CHECK(int(enumerate_orbits(*eq, n).size()) == partition_count(n));
    CHECK(enumerate_orbits(*eq, 2).size() == 2);
    CHECK(enumerate_orbits(*eq, 3).size() == 5);
}

TEST_CASE("small template counts")
{
    CHECK(enumerate_orbits(*templates::random_graph(), 2).size() == 3);
    CHECK(enumerate_orbits(*templates::unary(2), 1).size() == 2);
    CHECK(enumerate_orbits(*templates::unary(2), 2).size() == 6);

    auto triples = enumerate_orbits(*templates::hypergraph_ordered(), 3);
    CHECK(std::count_if(triples.begin(), triples.end(), [](auto & o) { return o.injective(); }) == 12);
    CHECK(triples.size() == 19);

    auto h = enumerate_orbits(*templates::hypergraph(), 3);
    CHECK(std::count_if(h.begin(), h.end(), [](auto & o) { return o.injective(); }) == 2);
}

TEST_CASE("enumeration matches brute force over candidate types")
{
    for (auto t : {templates::q_order(), templates::equality(), templates::unary(2), templates::unary(3), templates::random_graph()})
        for (int n = 1; n <= 3; ++n) {
            if (t->name() == "unary-3" && n == 3)
                continue;
            INFO(t->name(), " n=", n);
            CHECK(keys(enumerate_orbits(*t, n), t->signature()) == brute_force_orbits(*t, n));
        }

    auto ho = templates::hypergraph_ordered();
    CHECK(keys(enumerate_orbits(*ho, 2), ho->signature()) == brute_force_orbits(*ho, 2));
}

TEST_CASE("enumerated orbits avoid every bound and are eq-congruent")
{
    for (auto t : {templates::q_order(), templates::equality(), templates::unary(2), templates::random_graph(), templates::hypergraph_ordered()})
        for (int n = 1; n <= 4; ++n)
            for (auto & o : enumerate_orbits(*t, n)) {
                CHECK(is_eq_congruent(o));
                for (auto & b : t->bounds())
                    CHECK_FALSE(realizes_bound(o, b));
            }
}

TEST_CASE("orbit counts are monotone in n")
{
    for (auto t : {templates::q_order(), templates::equality(), templates::unary(2), templates::unary(3), templates::random_graph(), templates::hypergraph_ordered()}) {
        std::size_t prev = 0;
        for (int n = 1; n <= 4; ++n) {
            auto c = enumerate_orbits(*t, n).size();
            CHECK(c >= prev);
            prev = c;
        }
    }
}

TEST_CASE("canonical order is sorted and stable")
{
    auto q = templates::q_order();
    auto a = enumerate_orbits(*q, 4);
    auto b = enumerate_orbits(*q, 4);
    CHECK(a == b);
    for (std::size_t i = 1; i < a.size(); ++i)
        CHECK(serialize(a[i - 1], q->signature()) < serialize(a[i], q->signature()));
}

TEST_CASE("capacity guard")
{
    auto eq = templates::equality();
    CHECK_THROWS_AS(enumerate_orbits(*eq, 8), CapacityError);
    CHECK_NOTHROW(enumerate_orbits(*eq, 8, 8));
    CHECK_THROWS_AS(enumerate_orbits(*eq, 0), InputError);

    OrbitSpace space{eq, 3};
    CHECK_THROWS_AS(space.orbits(4), CapacityError);
}

TEST_CASE("realizes_bound")
{
    auto q = templates::q_order();
    auto & transitivity = q->bounds()[2];
    auto & reflexive = q->bounds()[1];

    auto chain = lt_orbit({0, 1, 2}, {{0, 1}, {0, 2}, {1, 2}});
    CHECK_FALSE(realizes_bound(chain, transitivity));

    auto cycle = lt_orbit({0, 1, 2}, {{0, 1}, {1, 2}, {2, 0}});
    CHECK(realizes_bound(cycle, transitivity));

    CHECK_FALSE(realizes_bound(chain, reflexive));
    CHECK(realizes_bound(lt_orbit({0, 1}, {{1, 1}}), reflexive));
    CHECK_FALSE(realizes_bound(lt_orbit({0, 1}, {{0, 1}}), reflexive));
}

TEST_CASE("restrict_orbit")
{
    auto q = templates::q_order();
    auto chain = lt_orbit({0, 1, 2}, {{0, 1}, {0, 2}, {1, 2}});
    vector<int> p13{0, 2};
    CHECK(restrict_orbit(chain, p13) == lt_orbit({0, 1}, {{0, 1}}));

    auto eq_then_lt = lt_orbit({0, 0, 1}, {{0, 2}, {1, 2}});
    vector<int> p12{0, 1};
    CHECK(restrict_orbit(eq_then_lt, p12) == lt_orbit({0, 0}, {}));

    vector<int> all{0, 1, 2};
    CHECK(restrict_orbit(chain, all) == chain);

    vector<int> bad{0, 3};
    CHECK_THROWS_AS(restrict_orbit(chain, bad), InputError);

    vector<int> repeated{1, 1, 0};
    CHECK(restrict_orbit(chain, repeated) == lt_orbit({0, 0, 1}, {{2, 0}, {2, 1}}));
}

TEST_CASE("every restriction of a valid orbit is a valid orbit")
{
    for (auto t : {templates::q_order(), templates::unary(2), templates::random_graph(), templates::hypergraph_ordered()}) {
        OrbitSpace space{t};
        for (int n = 2; n <= 4; ++n)
            for (auto & o : space.orbits(n))
                for (unsigned mask = 1; mask < (1u << n); ++mask) {
                    vector<int> positions;
                    for (int p = 0; p < n; ++p)
                        if (mask & (1u << p))
                            positions.push_back(p);
                    CHECK(space.find(restrict_orbit(o, positions)).has_value());
                }
    }
}

TEST_CASE("restrict_mask agrees with restrict_orbit")
{
    OrbitSpace space{templates::q_order()};
    for (int i = 0; i < space.count(3); ++i) {
        vector<int> p{0, 2};
        CHECK(space.restrict_mask(3, i, 0b101) == space.index_of(restrict_orbit(space.orbit(3, i), p)));
    }
}

TEST_CASE("project_orbit")
{
    auto ho = templates::hypergraph_ordered();
    auto h = templates::hypergraph();
    OrbitSpace hos{ho}, hs{h};

    Orbit in_e_sorted{{0, 1, 2},
        {{{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}, {{0, 1}, {0, 2}, {1, 2}}}};
    REQUIRE(hos.find(in_e_sorted));
    auto projected = project_orbit(in_e_sorted, ho->signature(), h->signature());
    REQUIRE(hs.find(projected));
    CHECK(projected.holds(0, Tuple{0, 1, 2}));

    CHECK(project_orbit(in_e_sorted, ho->signature(), ho->signature()) == in_e_sorted);

    auto q = templates::q_order();
    auto projected_pair = project_orbit(lt_orbit({0, 1}, {{0, 1}}), q->signature(), Signature{});
    CHECK(projected_pair == Orbit{{0, 1}, {}});

    CHECK_THROWS_AS(project_orbit(in_e_sorted, ho->signature(), Signature{{{"F", 2}}}), InputError);
}

TEST_CASE("serialization round-trips")
{
    for (auto t : {templates::q_order(), templates::unary(3), templates::hypergraph_ordered(), templates::equality()}) {
        OrbitSpace space{t};
        for (int n = 1; n <= 3; ++n)
            for (auto & o : space.orbits(n))
                CHECK(deserialize_orbit(serialize(o, t->signature()), t->signature()) == o);
    }
    CHECK_THROWS_AS(deserialize_orbit("01;E:12", templates::q_order()->signature()), InputError);
}

TEST_CASE("labels")
{
    OrbitSpace space{templates::q_order()};
    CHECK(space.label(2, 1) == "2:O1");
    CHECK(space.parse_label("3:O12") == std::pair{3, 12});
    CHECK_THROWS_AS(space.parse_label("3:O13"), InputError);
    CHECK_THROWS_AS(space.parse_label("x"), InputError);
}
