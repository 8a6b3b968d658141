#include <orbitsolve/oracle.hpp>

#include <algorithm>
#include <map>
#include <set>

using std::size_t;
using std::string;
using std::uint8_t;
using std::vector;

namespace orbitsolve
{
    auto type_space_decide(const Reduct & reduct, const Instance & instance) -> OracleVerdict
    {
        return type_space_decide(reduct, resolve(reduct, instance));
    }

    auto type_space_decide(const Reduct & reduct, const ResolvedInstance & instance) -> OracleVerdict
    {
        int n = instance.var_count;
        if (n < 1)
            throw InputError("the oracle needs at least one variable");
        auto & space = reduct.space();
        if (n > space.capacity())
            throw CapacityError("type-space oracle for " + std::to_string(n) + " variables exceeds the capacity limit " + std::to_string(space.capacity()));

        // constraints grouped by the last variable they mention
        struct Due
        {
            CompiledConstraint compiled;
            unsigned mask;
        };
        vector<vector<Due>> due(n);
        for (auto & c : instance.constraints) {
            auto compiled = compile_constraint(reduct, c);
            unsigned mask = 0;
            for (auto v : compiled.vars)
                mask |= 1u << v;
            int last = compiled.vars.back();
            due[last].push_back(Due{std::move(compiled), mask});
        }

        OracleVerdict verdict;
        verdict.var_count = n;

        auto search = [&](auto & self, int length, int orbit) -> void {
            if (length == n) {
                verdict.solution_orbits.push_back(orbit);
                return;
            }
            for (int child : space.children(length, orbit)) {
                bool ok = true;
                for (auto & d : due[length])
                    if (! d.compiled.ok[space.restrict_mask(length + 1, child, d.mask)]) {
                        ok = false;
                        break;
                    }
                if (ok)
                    self(self, length + 1, child);
            }
        };
        search(search, 0, 0);

        std::sort(verdict.solution_orbits.begin(), verdict.solution_orbits.end());
        verdict.sat = ! verdict.solution_orbits.empty();
        return verdict;
    }

    auto orbit_of_ranks(const vector<int> & ranks) -> Orbit
    {
        vector<uint8_t> blocks;
        for (auto r : ranks)
            blocks.push_back(uint8_t(r));
        vector<Tuple> lt;
        int n = int(ranks.size());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (ranks[i] < ranks[j])
                    lt.push_back(Tuple{uint8_t(i), uint8_t(j)});
        return Orbit{std::move(blocks), {std::move(lt)}};
    }

    auto weak_order_decide(const Reduct & reduct, const Instance & instance) -> OracleVerdict
    {
        return weak_order_decide(reduct, resolve(reduct, instance));
    }

    auto weak_order_decide(const Reduct & reduct, const ResolvedInstance & instance) -> OracleVerdict
    {
        auto & sig = reduct.space().signature();
        if (sig.size() != 1 || sig[0].name != "<" || sig[0].arity != 2)
            throw InputError("the weak-order oracle only applies to reducts of (Q;<)");
        int n = instance.var_count;
        if (n < 1)
            throw InputError("the oracle needs at least one variable");
        if (n > reduct.space().capacity())
            throw CapacityError("weak-order oracle for " + std::to_string(n) + " variables exceeds the capacity limit " + std::to_string(reduct.space().capacity()));

        OracleVerdict verdict;
        verdict.var_count = n;

        vector<int> ranks(n, 0);
        while (true) {
            // keep only surjections onto 0..k-1: each weak order exactly once
            vector<char> used(n, 0);
            for (auto r : ranks)
                used[r] = 1;
            auto k = std::find(used.begin(), used.end(), 0) - used.begin();
            bool dense = std::all_of(used.begin() + k, used.end(), [](char u) { return ! u; });

            if (dense) {
                bool ok = true;
                for (auto & c : instance.constraints) {
                    vector<int> scope_ranks;
                    for (auto v : c.scope)
                        scope_ranks.push_back(ranks[v]);
                    auto & rel = reduct.relation(c.relation);
                    auto idx = reduct.space().find(orbit_of_ranks(scope_ranks));
                    if (! idx || ! rel.contains(*idx)) {
                        ok = false;
                        break;
                    }
                }
                if (ok)
                    verdict.solution_orbits.push_back(reduct.space().index_of(orbit_of_ranks(ranks)));
            }

            int i = n - 1;
            while (i >= 0 && ranks[i] == n - 1)
                ranks[i--] = 0;
            if (i < 0)
                break;
            ++ranks[i];
        }

        std::sort(verdict.solution_orbits.begin(), verdict.solution_orbits.end());
        verdict.sat = ! verdict.solution_orbits.empty();
        return verdict;
    }

    auto describe_chain(const Orbit & orbit, const vector<string> & names) -> string
    {
        int n = orbit.size();
        // rank of a position = number of blocks strictly below it
        std::map<int, vector<int>> by_rank;
        for (int i = 0; i < n; ++i) {
            std::set<int> below;
            for (int j = 0; j < n; ++j)
                if (orbit.holds(0, Tuple{uint8_t(j), uint8_t(i)}))
                    below.insert(orbit.blocks()[j]);
            by_rank[int(below.size())].push_back(i);
        }
        string result;
        bool first_rank = true;
        for (auto & [rank, positions] : by_rank) {
            if (! first_rank)
                result += "<";
            first_rank = false;
            for (size_t k = 0; k < positions.size(); ++k)
                result += (k ? "=" : "") + ("s(" + names[positions[k]] + ")");
        }
        return result;
    }
}
