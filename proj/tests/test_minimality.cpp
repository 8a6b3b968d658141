#include <orbitsolve/catalog.hpp>
#include <orbitsolve/minimality.hpp>
#include <orbitsolve/oracle.hpp>

#include <doctest.h>

#include <random>

using namespace orbitsolve;
using std::string;
using std::vector;

namespace
{
    auto random_instance(std::mt19937 & rng, const Reduct & reduct, int max_vars, int max_constraints) -> ResolvedInstance
    {
        ResolvedInstance inst;
        inst.var_count = 1 + int(rng() % max_vars);
        int m = int(rng() % (max_constraints + 1));
        for (int c = 0; c < m; ++c) {
            auto r = rng() % reduct.relation_count();
            vector<int> scope;
            for (int k = 0; k < reduct.relation(r).arity(); ++k)
                scope.push_back(int(rng() % inst.var_count));
            inst.constraints.push_back({r, scope});
        }
        return inst;
    }

    auto restriction_closed(const Reduct & reduct, const MinimalityResult & r) -> bool
    {
        auto & sp = reduct.space();
        for (auto & [vars, dom] : r.domains) {
            int m = int(vars.size());
            for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
                vector<int> sub;
                for (int p = 0; p < m; ++p)
                    if (mask & (1u << p))
                        sub.push_back(vars[p]);
                auto & sub_dom = r.domains.at(sub);
                for (auto o : dom)
                    if (! std::binary_search(sub_dom.begin(), sub_dom.end(), sp.restrict_mask(m, o, mask)))
                        return false;
            }
        }
        return true;
    }
}

TEST_CASE("a directed 3-cycle is refuted by (2,3)")
{
    auto q = catalog::reduct("q-order");
    auto r = ab_minimality(*q, make_instance(3, {{"<", {0, 1}}, {"<", {1, 2}}, {"<", {2, 0}}}), 2, 3);
    CHECK(r.refuted());
}

TEST_CASE("x1<x2, x1<x3 leaves every orbit on (x2,x3)")
{
    auto q = catalog::reduct("q-order");
    auto r = ab_minimality(*q, make_instance(3, {{"<", {0, 1}}, {"<", {0, 2}}}), 2, 3);
    CHECK_FALSE(r.refuted());
    CHECK(r.domains.at({1, 2}).size() == 3);
    CHECK(r.domains.at({0, 1}).size() == 1);
    CHECK(restriction_closed(*q, r));
}

TEST_CASE("no constraints means full domains")
{
    for (auto id : {"q-order", "betweenness", "Z", "unary-2", "random-graph"}) {
        auto reduct = catalog::reduct(id);
        auto r = ab_minimality(*reduct, make_instance(5, {}), 2, 3);
        CHECK_FALSE(r.refuted());
        for (auto & [vars, dom] : r.domains)
            CHECK(int(dom.size()) == reduct->space().count(int(vars.size())));
        CHECK(r.pruned_counts == vector<long>{0, 0, 0});
    }
}

TEST_CASE("parameter checks")
{
    auto q = catalog::reduct("q-order");
    auto inst = make_instance(3, {});
    CHECK_THROWS_AS(ab_minimality(*q, inst, 3, 2), InputError);
    CHECK_THROWS_AS(ab_minimality(*q, inst, 0, 2), InputError);
    CHECK_THROWS_AS(ab_minimality(*q, inst, 1, 1), InputError);
    CHECK_THROWS_AS(ab_minimality(*q, make_instance(9, {}), 2, 8), CapacityError);
    CHECK_FALSE(ab_minimality(*q, make_instance(2, {}), 2, 3).refuted());
}

TEST_CASE("wide constraints are flagged")
{
    auto z = catalog::reduct("Z");
    auto r = ab_minimality(*z, make_instance(4, {{"Z", {0, 1, 2, 3}}}), 2, 3);
    CHECK(r.incomplete_enforcement);
    CHECK_FALSE(ab_minimality(*z, make_instance(4, {{"Z", {0, 1, 2, 3}}}), 2, 4).incomplete_enforcement);
}

TEST_CASE("soundness, monotonicity and schedule independence")
{
    std::mt19937 rng(9);
    for (auto id : {"q-order", "betweenness", "neq", "Z", "eq-or-eq", "unary-2"}) {
        auto reduct = catalog::reduct(id);
        for (int round = 0; round < 20; ++round) {
            auto inst = random_instance(rng, *reduct, 6, 5);
            auto oracle = type_space_decide(*reduct, inst);
            auto r23 = ab_minimality(*reduct, inst, 2, 3);
            auto r23rev = ab_minimality(*reduct, inst, 2, 3, {true});
            auto r34 = ab_minimality(*reduct, inst, 3, 4);
            CHECK(r23.refuted() == r23rev.refuted());
            CHECK(r23.domains == r23rev.domains);
            if (r23.refuted())
                CHECK(r34.refuted());
            if (r34.refuted())
                CHECK_FALSE(oracle.sat);
            if (! r23.refuted())
                CHECK(restriction_closed(*reduct, r23));
            // every oracle solution survives in the fixpoint domains
            if (oracle.sat && ! r23.refuted()) {
                auto & sp = reduct->space();
                int n = inst.var_count;
                for (auto o : oracle.solution_orbits)
                    for (auto & [vars, dom] : r23.domains) {
                        auto mask = *mask_within(vars, [&] {
                            vector<int> all(n);
                            for (int i = 0; i < n; ++i)
                                all[i] = i;
                            return all;
                        }());
                        CHECK(std::binary_search(dom.begin(), dom.end(), sp.restrict_mask(n, o, mask)));
                    }
            }
        }
    }
}

TEST_CASE("(4,6) on I and (2,3) on the pair reduction decide alike on unary instances")
{
    auto sp = catalog::space("unary-2", 8);
    vector<ReductRelation> rels{compile_reduct_relation(*sp, "S", 2, "A1(1) | 1=2"),
        compile_reduct_relation(*sp, "T", 3, "(1=2 & A2(3)) | (A1(1) & A1(2))")};
    Reduct reduct{"mixed", sp, rels};
    std::mt19937 rng(2);
    for (int round = 0; round < 30; ++round) {
        auto inst = random_instance(rng, reduct, 6, 6);
        auto a = reduced_minimality(reduct, inst);
        auto b = reduce_then_minimality(reduct, inst);
        auto oracle = type_space_decide(reduct, inst);
        if (a.refuted() || b.refuted)
            CHECK_FALSE(oracle.sat);
        CHECK(solve_finite(pair_reduction(reduct, inst)).status == (oracle.sat ? SolveStatus::Sat : SolveStatus::Unsat));
    }
}

TEST_CASE("the pair reduction rejects templates needing wider windows")
{
    auto z = catalog::reduct("Z");
    auto inst = resolve(*z, make_instance(4, {{"Z", {0, 1, 2, 3}}}));
    CHECK_THROWS_AS(pair_reduction(*z, inst), InputError);
}
