#include <orbitsolve/errors.hpp>
#include <orbitsolve/finite_csp.hpp>

#include <algorithm>
#include <bit>
#include <limits>
#include <deque>
#include <set>
#include <unordered_set>

using std::size_t;
using std::span;
using std::string;
using std::uint64_t;
using std::vector;

namespace orbitsolve
{
    auto to_string(SolveStatus s) -> string
    {
        switch (s) {
        case SolveStatus::Sat: return "SAT";
        case SolveStatus::Unsat: return "UNSAT";
        case SolveStatus::Limit: return "LIMIT";
        }
        return "?";
    }

    namespace
    {
        auto tuple_matches_scope(const vector<int> & scope, const vector<int> & tuple) -> bool
        {
            for (size_t k = 0; k < scope.size(); ++k)
                for (size_t l = k + 1; l < scope.size(); ++l)
                    if (scope[k] == scope[l] && tuple[k] != tuple[l])
                        return false;
            return true;
        }

        // Search state: live values per variable with an undo trail.
        class Propagator
        {
        public:
            explicit Propagator(const FiniteCsp & csp) :
                _csp(csp),
                _alive(csp.var_count()),
                _size(csp.var_count()),
                _watch(csp.var_count())
            {
                for (int v = 0; v < csp.var_count(); ++v) {
                    _alive[v].assign(csp.domain_sizes[v], 1);
                    _size[v] = csp.domain_sizes[v];
                }
                for (size_t c = 0; c < csp.tables.size(); ++c) {
                    std::set<int> vars(csp.tables[c].scope.begin(), csp.tables[c].scope.end());
                    for (auto v : vars)
                        _watch[v].push_back(int(c));
                }
                for (size_t c = 0; c < csp.projections.size(); ++c) {
                    int id = int(csp.tables.size() + c);
                    _watch[csp.projections[c].first].push_back(id);
                    if (csp.projections[c].second != csp.projections[c].first)
                        _watch[csp.projections[c].second].push_back(id);
                }
            }

            auto alive(int v, int value) const -> bool { return _alive[v][value]; }
            auto size(int v) const -> int { return _size[v]; }
            auto mark() const -> size_t { return _trail.size(); }

            auto undo(size_t mark) -> void
            {
                while (_trail.size() > mark) {
                    auto [v, value] = _trail.back();
                    _trail.pop_back();
                    _alive[v][value] = 1;
                    ++_size[v];
                }
            }

            auto remove(int v, int value) -> void
            {
                if (_alive[v][value]) {
                    _alive[v][value] = 0;
                    --_size[v];
                    _trail.emplace_back(v, value);
                }
            }

            // Reduce v to `value`, then propagate. False on a wipe-out.
            auto assign(int v, int value) -> bool
            {
                for (int x = 0; x < _csp.domain_sizes[v]; ++x)
                    if (x != value)
                        remove(v, x);
                return propagate_from({v});
            }

            auto propagate_all() -> bool
            {
                vector<int> all(_csp.var_count());
                for (int v = 0; v < _csp.var_count(); ++v)
                    all[v] = v;
                for (int v = 0; v < _csp.var_count(); ++v)
                    if (_size[v] == 0)
                        return false;
                return propagate_from(all, true);
            }

        private:
            const FiniteCsp & _csp;
            vector<vector<char>> _alive;
            vector<int> _size;
            vector<vector<int>> _watch;
            vector<std::pair<int, int>> _trail;

            auto propagate_from(const vector<int> & changed, bool everything = false) -> bool
            {
                std::deque<int> queue;
                vector<char> queued(_csp.tables.size() + _csp.projections.size(), 0);
                auto enqueue_var = [&](int v) {
                    for (auto c : _watch[v])
                        if (! queued[c]) {
                            queued[c] = 1;
                            queue.push_back(c);
                        }
                };
                if (everything) {
                    for (size_t c = 0; c < queued.size(); ++c) {
                        queued[c] = 1;
                        queue.push_back(int(c));
                    }
                }
                else
                    for (auto v : changed)
                        enqueue_var(v);

                vector<int> touched;
                while (! queue.empty()) {
                    int c = queue.front();
                    queue.pop_front();
                    queued[c] = 0;
                    touched.clear();
                    bool ok = c < int(_csp.tables.size()) ? revise_table(_csp.tables[c], touched)
                                                          : revise_projection(_csp.projections[c - _csp.tables.size()], touched);
                    if (! ok)
                        return false;
                    for (auto v : touched)
                        enqueue_var(v);
                }
                return true;
            }

            auto revise_table(const TableConstraint & t, vector<int> & touched) -> bool
            {
                size_t arity = t.scope.size();
                vector<vector<char>> supported(arity);
                for (size_t k = 0; k < arity; ++k)
                    supported[k].assign(_csp.domain_sizes[t.scope[k]], 0);
                for (auto & tuple : t.tuples) {
                    bool ok = tuple_matches_scope(t.scope, tuple);
                    for (size_t k = 0; ok && k < arity; ++k)
                        ok = _alive[t.scope[k]][tuple[k]];
                    if (ok)
                        for (size_t k = 0; k < arity; ++k)
                            supported[k][tuple[k]] = 1;
                }
                for (size_t k = 0; k < arity; ++k) {
                    int v = t.scope[k];
                    bool changed = false;
                    for (int x = 0; x < _csp.domain_sizes[v]; ++x)
                        if (_alive[v][x] && ! supported[k][x]) {
                            remove(v, x);
                            changed = true;
                        }
                    if (_size[v] == 0)
                        return false;
                    if (changed)
                        touched.push_back(v);
                }
                return true;
            }

            auto revise_projection(const ProjectionConstraint & p, vector<int> & touched) -> bool
            {
                auto filter = [&](int from, const vector<int> & from_class, int to, const vector<int> & to_class) {
                    std::unordered_set<int> classes;
                    for (int x = 0; x < _csp.domain_sizes[from]; ++x)
                        if (_alive[from][x])
                            classes.insert(from_class[x]);
                    bool changed = false;
                    for (int x = 0; x < _csp.domain_sizes[to]; ++x)
                        if (_alive[to][x] && ! classes.count(to_class[x])) {
                            remove(to, x);
                            changed = true;
                        }
                    if (changed)
                        touched.push_back(to);
                    return _size[to] > 0;
                };
                return filter(p.first, p.first_class, p.second, p.second_class)
                    && filter(p.second, p.second_class, p.first, p.first_class);
            }
        };

        struct LimitReached
        {
        };

        // Depth-first search; calls on_solution for each solution until it returns false.
        template <typename OnSolution>
        auto search(const FiniteCsp & csp, Propagator & prop, const SolveOptions & options, uint64_t & nodes, OnSolution && on_solution)
            -> bool
        {
            int best = -1;
            for (int v = 0; v < csp.var_count(); ++v)
                if (prop.size(v) > 1 && (best < 0 || prop.size(v) < prop.size(best)))
                    best = v;

            if (best < 0) {
                vector<int> assignment(csp.var_count());
                for (int v = 0; v < csp.var_count(); ++v)
                    for (int x = 0; x < csp.domain_sizes[v]; ++x)
                        if (prop.alive(v, x))
                            assignment[v] = x;
                return on_solution(assignment);
            }

            int d = csp.domain_sizes[best];
            for (int i = 0; i < d; ++i) {
                int x = options.reverse_values ? d - 1 - i : i;
                if (! prop.alive(best, x))
                    continue;
                if (++nodes > options.node_budget)
                    throw LimitReached{};
                auto m = prop.mark();
                if (prop.assign(best, x) && ! search(csp, prop, options, nodes, on_solution))
                    return false;
                prop.undo(m);
            }
            return true;
        }
    }

    auto solve_finite(const FiniteCsp & csp, const SolveOptions & options) -> SolveResult
    {
        SolveResult result;
        Propagator prop{csp};
        if (! prop.propagate_all()) {
            result.status = SolveStatus::Unsat;
            return result;
        }
        try {
            search(csp, prop, options, result.nodes, [&](const vector<int> & assignment) {
                result.status = SolveStatus::Sat;
                result.assignment = assignment;
                return false;
            });
        }
        catch (const LimitReached &) {
            result.status = SolveStatus::Limit;
            result.assignment.clear();
        }
        return result;
    }

    auto count_solutions(const FiniteCsp & csp, uint64_t limit) -> uint64_t
    {
        Propagator prop{csp};
        if (! prop.propagate_all())
            return 0;
        uint64_t count = 0, nodes = 0;
        SolveOptions options;
        options.node_budget = std::numeric_limits<uint64_t>::max();
        search(csp, prop, options, nodes, [&](const vector<int> &) {
            if (++count > limit)
                throw CapacityError("solution count exceeds " + std::to_string(limit));
            return true;
        });
        return count;
    }

    auto verify_assignment(const FiniteCsp & csp, span<const int> assignment) -> bool
    {
        if (int(assignment.size()) != csp.var_count())
            return false;
        for (int v = 0; v < csp.var_count(); ++v)
            if (assignment[v] < 0 || assignment[v] >= csp.domain_sizes[v])
                return false;
        for (auto & t : csp.tables) {
            vector<int> values;
            for (auto v : t.scope)
                values.push_back(assignment[v]);
            if (std::find(t.tuples.begin(), t.tuples.end(), values) == t.tuples.end())
                return false;
        }
        for (auto & p : csp.projections)
            if (p.first_class[assignment[p.first]] != p.second_class[assignment[p.second]])
                return false;
        return true;
    }

    namespace
    {
        auto encode(span<const int> values, span<const int> radix) -> int
        {
            int code = 0;
            for (size_t i = 0; i < values.size(); ++i)
                code = code * radix[i] + values[i];
            return code;
        }

        auto subsets_up_to(int n, int k) -> vector<vector<int>>
        {
            vector<vector<int>> result;
            vector<int> current;
            auto rec = [&](auto & self, int start) -> void {
                if (! current.empty())
                    result.push_back(current);
                if (int(current.size()) == k)
                    return;
                for (int v = start; v < n; ++v) {
                    current.push_back(v);
                    self(self, v + 1);
                    current.pop_back();
                }
            };
            rec(rec, 0);
            std::sort(result.begin(), result.end(), [](auto & x, auto & y) {
                return x.size() != y.size() ? x.size() < y.size() : x < y;
            });
            return result;
        }

        auto subsets_exactly(int n, int k) -> vector<vector<int>>
        {
            vector<vector<int>> result;
            for (auto & s : subsets_up_to(n, k))
                if (int(s.size()) == k)
                    result.push_back(s);
            return result;
        }
    }

    auto finite_ab_minimality(const FiniteCsp & csp, int a, int b) -> FiniteMinimalityResult
    {
        if (a < 1 || b < a)
            throw InputError("(a,b)-minimality needs 1 <= a <= b");

        int n = csp.var_count();
        FiniteMinimalityResult result;
        if (n == 0)
            return result;
        int eff_a = std::min(a, n), eff_b = std::min(b, n);

        // every constraint as a predicate over its distinct variables
        struct Check
        {
            vector<int> vars;                 // sorted distinct variables
            vector<int> positions;            // scope entry -> index in vars
            std::unordered_set<long long> ok; // encoded over vars (tables)
            const ProjectionConstraint * projection = nullptr;
        };
        vector<Check> checks;
        for (auto & t : csp.tables) {
            Check c;
            c.vars = t.scope;
            std::sort(c.vars.begin(), c.vars.end());
            c.vars.erase(std::unique(c.vars.begin(), c.vars.end()), c.vars.end());
            for (auto v : t.scope)
                c.positions.push_back(int(std::lower_bound(c.vars.begin(), c.vars.end(), v) - c.vars.begin()));
            vector<int> radix;
            for (auto v : c.vars)
                radix.push_back(csp.domain_sizes[v]);
            for (auto & tuple : t.tuples) {
                if (! tuple_matches_scope(t.scope, tuple))
                    continue;
                vector<int> values(c.vars.size());
                for (size_t k = 0; k < t.scope.size(); ++k)
                    values[c.positions[k]] = tuple[k];
                c.ok.insert(encode(values, radix));
            }
            if (int(c.vars.size()) > eff_b)
                result.incomplete_enforcement = true;
            checks.push_back(std::move(c));
        }
        for (auto & p : csp.projections) {
            Check c;
            c.vars = {std::min(p.first, p.second), std::max(p.first, p.second)};
            c.vars.erase(std::unique(c.vars.begin(), c.vars.end()), c.vars.end());
            c.projection = &p;
            checks.push_back(std::move(c));
        }

        // values: assignment to the sorted variable list `vars`
        auto check_holds = [&](const Check & c, const vector<int> & vars, const vector<int> & values) {
            auto value_of = [&](int v) { return values[std::lower_bound(vars.begin(), vars.end(), v) - vars.begin()]; };
            if (c.projection)
                return c.projection->first_class[value_of(c.projection->first)] == c.projection->second_class[value_of(c.projection->second)];
            vector<int> local, radix;
            for (auto v : c.vars) {
                local.push_back(value_of(v));
                radix.push_back(csp.domain_sizes[v]);
            }
            return c.ok.count(encode(local, radix)) != 0;
        };
        auto inside = [](const vector<int> & small, const vector<int> & big) {
            return std::includes(big.begin(), big.end(), small.begin(), small.end());
        };

        auto small_sets = subsets_up_to(n, eff_a);
        std::map<vector<int>, int> small_id;
        vector<vector<char>> allowed(small_sets.size());
        vector<vector<int>> radix_of(small_sets.size());
        for (size_t s = 0; s < small_sets.size(); ++s) {
            small_id[small_sets[s]] = int(s);
            int total = 1;
            for (auto v : small_sets[s]) {
                radix_of[s].push_back(csp.domain_sizes[v]);
                total *= csp.domain_sizes[v];
            }
            allowed[s].assign(total, 0);
            vector<const Check *> relevant;
            for (auto & c : checks)
                if (inside(c.vars, small_sets[s]))
                    relevant.push_back(&c);
            vector<int> values(small_sets[s].size());
            for (int code = 0; code < total; ++code) {
                for (int k = int(values.size()) - 1, x = code; k >= 0; --k) {
                    values[k] = x % radix_of[s][k];
                    x /= radix_of[s][k];
                }
                bool ok = true;
                for (auto * c : relevant)
                    if (! check_holds(*c, small_sets[s], values)) {
                        ok = false;
                        break;
                    }
                allowed[s][code] = ok;
            }
        }

        auto refuted = [&]() {
            for (auto & al : allowed)
                if (std::find(al.begin(), al.end(), 1) == al.end())
                    return true;
            return false;
        };

        auto windows = subsets_exactly(n, eff_b);
        struct WindowData
        {
            vector<vector<int>> subset_masks_at;   // depth -> masks of small subsets ending there
            vector<vector<int>> subset_ids_at;
            vector<vector<const Check *>> checks_at; // depth -> constraints completed there
        };
        vector<WindowData> data(windows.size());
        for (size_t w = 0; w < windows.size(); ++w) {
            auto & T = windows[w];
            auto & d = data[w];
            d.subset_masks_at.resize(T.size());
            d.subset_ids_at.resize(T.size());
            d.checks_at.resize(T.size());
            for (unsigned mask = 1; mask < (1u << T.size()); ++mask) {
                if (std::popcount(mask) > eff_a)
                    continue;
                vector<int> S;
                int last = 0;
                for (size_t p = 0; p < T.size(); ++p)
                    if (mask & (1u << p)) {
                        S.push_back(T[p]);
                        last = int(p);
                    }
                d.subset_masks_at[last].push_back(int(mask));
                d.subset_ids_at[last].push_back(small_id.at(S));
            }
            for (auto & c : checks)
                if (inside(c.vars, T)) {
                    int last = int(std::lower_bound(T.begin(), T.end(), c.vars.back()) - T.begin());
                    d.checks_at[last].push_back(&c);
                }
        }

        bool changed = ! refuted();
        while (changed) {
            changed = false;
            ++result.rounds;
            for (size_t w = 0; w < windows.size(); ++w) {
                auto & T = windows[w];
                auto & d = data[w];
                vector<vector<char>> seen(small_sets.size());
                for (auto & ids : d.subset_ids_at)
                    for (auto id : ids)
                        seen[id].assign(allowed[id].size(), 0);

                vector<int> values(T.size());
                auto dfs = [&](auto & self, int depth) -> void {
                    if (depth == int(T.size())) {
                        for (size_t at = 0; at < T.size(); ++at)
                            for (size_t k = 0; k < d.subset_masks_at[at].size(); ++k) {
                                int mask = d.subset_masks_at[at][k], id = d.subset_ids_at[at][k];
                                vector<int> local;
                                for (size_t p = 0; p < T.size(); ++p)
                                    if (mask & (1 << p))
                                        local.push_back(values[p]);
                                seen[id][encode(local, radix_of[id])] = 1;
                            }
                        return;
                    }
                    for (int x = 0; x < csp.domain_sizes[T[depth]]; ++x) {
                        values[depth] = x;
                        bool ok = true;
                        for (size_t k = 0; ok && k < d.subset_masks_at[depth].size(); ++k) {
                            int mask = d.subset_masks_at[depth][k], id = d.subset_ids_at[depth][k];
                            vector<int> local;
                            for (int p = 0; p <= depth; ++p)
                                if (mask & (1 << p))
                                    local.push_back(values[p]);
                            ok = allowed[id][encode(local, radix_of[id])];
                        }
                        if (ok) {
                            vector<int> prefix_vars(T.begin(), T.begin() + depth + 1);
                            vector<int> prefix_values(values.begin(), values.begin() + depth + 1);
                            for (auto * c : d.checks_at[depth])
                                if (! check_holds(*c, prefix_vars, prefix_values)) {
                                    ok = false;
                                    break;
                                }
                        }
                        if (ok)
                            self(self, depth + 1);
                    }
                };
                dfs(dfs, 0);

                for (auto & ids : d.subset_ids_at)
                    for (auto id : ids)
                        for (size_t code = 0; code < allowed[id].size(); ++code)
                            if (allowed[id][code] && ! seen[id][code]) {
                                allowed[id][code] = 0;
                                changed = true;
                            }
                if (refuted()) {
                    changed = false;
                    break;
                }
            }
        }

        result.refuted = refuted();
        for (size_t s = 0; s < small_sets.size(); ++s) {
            auto & tuples = result.relations[small_sets[s]];
            vector<int> values(small_sets[s].size());
            for (size_t code = 0; code < allowed[s].size(); ++code) {
                if (! allowed[s][code])
                    continue;
                for (int k = int(values.size()) - 1, x = int(code); k >= 0; --k) {
                    values[k] = x % radix_of[s][k];
                    x /= radix_of[s][k];
                }
                tuples.push_back(values);
            }
        }
        return result;
    }

    ExplicitFiniteTemplate::ExplicitFiniteTemplate(string name, vector<string> domain, vector<Relation> relations) :
        _name(std::move(name)),
        _domain(std::move(domain)),
        _relations(std::move(relations))
    {
        if (_domain.empty())
            throw InputError("finite template '" + _name + "' has an empty domain");
        std::set<string> names;
        for (auto & r : _relations) {
            if (! names.insert(r.name).second)
                throw InputError("duplicate relation '" + r.name + "' in finite template '" + _name + "'");
            if (r.arity < 1)
                throw InputError("relation '" + r.name + "' must have arity >= 1");
            for (auto & t : r.tuples) {
                if (int(t.size()) != r.arity)
                    throw InputError("relation '" + r.name + "' has a tuple of the wrong arity");
                for (auto x : t)
                    if (x < 0 || x >= int(_domain.size()))
                        throw InputError("relation '" + r.name + "' has a tuple outside the domain");
            }
            std::sort(r.tuples.begin(), r.tuples.end());
            r.tuples.erase(std::unique(r.tuples.begin(), r.tuples.end()), r.tuples.end());
        }
    }

    auto ExplicitFiniteTemplate::find(const string & name) const -> const Relation *
    {
        for (auto & r : _relations)
            if (r.name == name)
                return &r;
        return nullptr;
    }

    auto explicit_instance(const ExplicitFiniteTemplate & tmpl, int var_count, const vector<ExplicitConstraint> & constraints) -> FiniteCsp
    {
        FiniteCsp csp;
        csp.domain_sizes.assign(var_count, int(tmpl.domain().size()));
        for (size_t c = 0; c < constraints.size(); ++c) {
            auto * r = tmpl.find(constraints[c].relation);
            if (! r)
                throw InputError("constraint " + std::to_string(c) + ": unknown relation '" + constraints[c].relation + "'");
            if (int(constraints[c].scope.size()) != r->arity)
                throw InputError("constraint " + std::to_string(c) + ": arity mismatch for '" + r->name + "'");
            for (auto v : constraints[c].scope)
                if (v < 0 || v >= var_count)
                    throw InputError("constraint " + std::to_string(c) + ": variable out of range");
            csp.tables.push_back(TableConstraint{constraints[c].scope, r->tuples});
        }
        return csp;
    }
}
