#include <orbitsolve/minimality.hpp>
#include <orbitsolve/reduction.hpp>

#include <algorithm>
#include <bit>
#include <map>
#include <set>

using std::size_t;
using std::string;
using std::vector;

namespace orbitsolve
{
    auto to_string(MinimalityStatus s) -> string
    {
        return s == MinimalityStatus::Refuted ? "refuted" : "fixpoint";
    }

    namespace
    {
        auto subsets_by_size(int n, int max_size) -> vector<vector<int>>
        {
            vector<vector<int>> result;
            for (int size = 1; size <= max_size; ++size) {
                vector<int> current;
                auto rec = [&](auto & self, int start) -> void {
                    if (int(current.size()) == size) {
                        result.push_back(current);
                        return;
                    }
                    for (int v = start; v < n; ++v) {
                        current.push_back(v);
                        self(self, v + 1);
                        current.pop_back();
                    }
                };
                rec(rec, 0);
            }
            return result;
        }

        struct SubsetSlot
        {
            int id;
            unsigned mask;
        };

        struct ConstraintSlot
        {
            const CompiledConstraint * constraint;
            unsigned mask;
        };

        struct Window
        {
            vector<int> vars;
            vector<vector<SubsetSlot>> subsets_at;        // by position of the last member
            vector<vector<ConstraintSlot>> constraints_at; // likewise
        };
    }

    auto ab_minimality(const Reduct & reduct, const Instance & instance, int a, int b, const MinimalityOptions & options) -> MinimalityResult
    {
        return ab_minimality(reduct, resolve(reduct, instance), a, b, options);
    }

    auto ab_minimality(const Reduct & reduct, const ResolvedInstance & instance, int a, int b, const MinimalityOptions & options)
        -> MinimalityResult
    {
        auto & space = reduct.space();
        if (a < 1 || b < a)
            throw InputError("(a,b)-minimality needs 1 <= a <= b");
        if (b < reduct.base().max_arity())
            throw InputError("b = " + std::to_string(b) + " is below the maximal arity " + std::to_string(reduct.base().max_arity())
                + " of template '" + reduct.base().name() + "'");
        int n = instance.var_count;
        if (n < 1)
            throw InputError("(a,b)-minimality needs at least one variable");

        MinimalityResult result;
        result.a = a;
        result.b = b;
        int eff_b = std::min(b, n);
        int eff_a = std::min(a, eff_b);
        if (eff_b > space.capacity())
            throw CapacityError("(a,b)-minimality with b=" + std::to_string(eff_b) + " exceeds the capacity limit " + std::to_string(space.capacity()));
        result.pruned_counts.assign(eff_a + 1, 0);

        vector<CompiledConstraint> compiled;
        for (auto & c : instance.constraints) {
            compiled.push_back(compile_constraint(reduct, c));
            if (int(compiled.back().vars.size()) > eff_b)
                result.incomplete_enforcement = true;
        }

        auto subsets = subsets_by_size(n, eff_a);
        std::map<vector<int>, int> subset_id;
        for (size_t s = 0; s < subsets.size(); ++s)
            subset_id[subsets[s]] = int(s);

        vector<vector<char>> allowed(subsets.size());
        vector<int> alive(subsets.size(), 0);
        for (size_t s = 0; s < subsets.size(); ++s) {
            int m = int(subsets[s].size());
            vector<ConstraintSlot> inside;
            for (auto & c : compiled)
                if (auto mask = mask_within(c.vars, subsets[s]))
                    inside.push_back(ConstraintSlot{&c, *mask});
            allowed[s].assign(space.count(m), 0);
            for (int o = 0; o < space.count(m); ++o) {
                bool ok = true;
                for (auto & slot : inside)
                    if (! slot.constraint->ok[space.restrict_mask(m, o, slot.mask)]) {
                        ok = false;
                        break;
                    }
                allowed[s][o] = ok;
                alive[s] += ok;
            }
            result.pruned_counts[m] += space.count(m) - alive[s];
        }

        auto finish = [&](MinimalityStatus status) {
            result.status = status;
            for (size_t s = 0; s < subsets.size(); ++s) {
                auto & d = result.domains[subsets[s]];
                for (size_t o = 0; o < allowed[s].size(); ++o)
                    if (allowed[s][o])
                        d.push_back(int(o));
            }
            return result;
        };

        if (std::find(alive.begin(), alive.end(), 0) != alive.end())
            return finish(MinimalityStatus::Refuted);

        // b-subsets with their slots
        auto tsets = subsets_by_size(n, eff_b);
        tsets.erase(std::remove_if(tsets.begin(), tsets.end(), [&](auto & t) { return int(t.size()) != eff_b; }), tsets.end());
        if (options.reverse_schedule)
            std::reverse(tsets.begin(), tsets.end());

        vector<Window> windows(tsets.size());
        vector<vector<int>> windows_of(subsets.size());
        for (size_t t = 0; t < tsets.size(); ++t) {
            auto & win = windows[t];
            win.vars = tsets[t];
            win.subsets_at.resize(eff_b);
            win.constraints_at.resize(eff_b);
            for (unsigned mask = 1; mask < (1u << eff_b); ++mask) {
                if (std::popcount(mask) > eff_a)
                    continue;
                vector<int> members;
                for (int p = 0; p < eff_b; ++p)
                    if (mask & (1u << p))
                        members.push_back(win.vars[p]);
                int last = 31 - std::countl_zero(mask);
                int id = subset_id.at(members);
                win.subsets_at[last].push_back(SubsetSlot{id, mask});
                windows_of[id].push_back(int(t));
            }
            for (auto & c : compiled)
                if (auto mask = mask_within(c.vars, win.vars))
                    win.constraints_at[31 - std::countl_zero(*mask)].push_back(ConstraintSlot{&c, *mask});
        }

        vector<vector<char>> seen(subsets.size());
        for (size_t s = 0; s < subsets.size(); ++s)
            seen[s].assign(allowed[s].size(), 0);

        vector<char> dirty(windows.size(), 1);
        bool any_dirty = ! windows.empty();
        while (any_dirty) {
            any_dirty = false;
            ++result.rounds;
            for (size_t t = 0; t < windows.size(); ++t) {
                if (! dirty[t])
                    continue;
                dirty[t] = 0;
                auto & win = windows[t];

                // restrictions computed at each depth, reused when marking support
                vector<vector<int>> restricted(eff_b);
                auto dfs = [&](auto & self, int depth, int parent) -> bool {
                    bool any = false;
                    for (int node : space.children(depth, parent)) {
                        auto & slots = win.subsets_at[depth];
                        auto & values = restricted[depth];
                        values.resize(slots.size());
                        bool ok = true;
                        for (size_t k = 0; ok && k < slots.size(); ++k) {
                            values[k] = space.restrict_mask(depth + 1, node, slots[k].mask);
                            ok = allowed[slots[k].id][values[k]];
                        }
                        for (size_t k = 0; ok && k < win.constraints_at[depth].size(); ++k) {
                            auto & slot = win.constraints_at[depth][k];
                            ok = slot.constraint->ok[space.restrict_mask(depth + 1, node, slot.mask)];
                        }
                        if (! ok)
                            continue;
                        if (depth + 1 == eff_b || self(self, depth + 1, node)) {
                            any = true;
                            for (size_t k = 0; k < slots.size(); ++k)
                                seen[slots[k].id][values[k]] = 1;
                        }
                    }
                    return any;
                };
                dfs(dfs, 0, 0);

                for (auto & slots : win.subsets_at)
                    for (auto & slot : slots) {
                        auto & al = allowed[slot.id];
                        auto & se = seen[slot.id];
                        bool changed = false;
                        for (size_t o = 0; o < al.size(); ++o) {
                            if (al[o] && ! se[o]) {
                                al[o] = 0;
                                --alive[slot.id];
                                ++result.pruned_counts[subsets[slot.id].size()];
                                changed = true;
                            }
                            se[o] = 0;
                        }
                        if (changed)
                            for (auto other : windows_of[slot.id])
                                if (other != int(t) && ! dirty[other]) {
                                    dirty[other] = 1;
                                    any_dirty = true;
                                }
                        if (alive[slot.id] == 0)
                            return finish(MinimalityStatus::Refuted);
                    }
            }
            // windows marked behind the cursor are picked up in the next round
            any_dirty = std::find(dirty.begin(), dirty.end(), 1) != dirty.end();
        }
        return finish(MinimalityStatus::Fixpoint);
    }

    auto reduced_minimality(const Reduct & reduct, const ResolvedInstance & instance, int granularity) -> MinimalityResult
    {
        if (granularity < 1)
            throw InputError("granularity must be at least 1");
        return ab_minimality(reduct, instance, 2 * granularity, 3 * granularity);
    }

    auto pair_reduction(const Reduct & reduct, const ResolvedInstance & instance) -> FiniteCsp
    {
        auto & space = reduct.space();
        int n = instance.var_count;
        if (n < 1)
            throw InputError("the reduction needs at least one variable");
        if (int need = minimum_window_size(reduct, instance); need > 3)
            throw InputError("the pair reduction needs windows of size 3, this instance needs " + std::to_string(need));

        vector<CompiledConstraint> compiled;
        for (auto & c : instance.constraints)
            compiled.push_back(compile_constraint(reduct, c));

        auto filtered = [&](const vector<int> & vars) {
            int m = int(vars.size());
            vector<ConstraintSlot> inside;
            for (auto & c : compiled)
                if (auto mask = mask_within(c.vars, vars))
                    inside.push_back(ConstraintSlot{&c, *mask});
            vector<int> result;
            for (int o = 0; o < space.count(m); ++o) {
                bool ok = true;
                for (auto & slot : inside)
                    ok = ok && slot.constraint->ok[space.restrict_mask(m, o, slot.mask)];
                if (ok)
                    result.push_back(o);
            }
            return result;
        };

        FiniteCsp csp;
        if (n == 1) {
            csp.domain_sizes.push_back(int(filtered({0}).size()));
            return csp;
        }

        std::map<std::pair<int, int>, int> pair_var;
        vector<vector<int>> pair_domain;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                pair_var[{i, j}] = int(pair_domain.size());
                pair_domain.push_back(filtered({i, j}));
                csp.domain_sizes.push_back(int(pair_domain.back().size()));
            }

        auto position = [&](int var, int orbit) {
            auto & d = pair_domain[var];
            auto it = std::lower_bound(d.begin(), d.end(), orbit);
            return it != d.end() && *it == orbit ? int(it - d.begin()) : -1;
        };

        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    TableConstraint table;
                    int ij = pair_var[{i, j}], ik = pair_var[{i, k}], jk = pair_var[{j, k}];
                    table.scope = {ij, ik, jk};
                    std::set<vector<int>> tuples;
                    for (int o : filtered({i, j, k})) {
                        vector<int> t{position(ij, space.restrict_mask(3, o, 0b011)), position(ik, space.restrict_mask(3, o, 0b101)),
                            position(jk, space.restrict_mask(3, o, 0b110))};
                        if (std::find(t.begin(), t.end(), -1) == t.end())
                            tuples.insert(t);
                    }
                    table.tuples.assign(tuples.begin(), tuples.end());
                    csp.tables.push_back(std::move(table));
                }
        return csp;
    }

    auto reduce_then_minimality(const Reduct & reduct, const ResolvedInstance & instance) -> FiniteMinimalityResult
    {
        return finite_ab_minimality(pair_reduction(reduct, instance), 2, 3);
    }
}
