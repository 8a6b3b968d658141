#include <orbitsolve/reduction.hpp>

#include <algorithm>
#include <map>
#include <numeric>

using std::optional;
using std::size_t;
using std::string;
using std::vector;

namespace orbitsolve
{
    namespace
    {
        auto combinations(int n, int k) -> vector<vector<int>>
        {
            vector<vector<int>> result;
            vector<int> current;
            auto rec = [&](auto & self, int start) -> void {
                if (int(current.size()) == k) {
                    result.push_back(current);
                    return;
                }
                for (int v = start; v <= n - (k - int(current.size())); ++v) {
                    current.push_back(v);
                    self(self, v + 1);
                    current.pop_back();
                }
            };
            rec(rec, 0);
            return result;
        }

        auto distinct_count(const vector<int> & scope) -> int
        {
            auto s = scope;
            std::sort(s.begin(), s.end());
            return int(std::unique(s.begin(), s.end()) - s.begin());
        }

        auto default_names(int n) -> vector<string>
        {
            vector<string> names;
            for (int i = 1; i <= n; ++i)
                names.push_back("x" + std::to_string(i));
            return names;
        }

        auto mask_of(const vector<int> & sub, const vector<int> & window) -> unsigned
        {
            return *mask_within(sub, window);
        }
    }

    auto minimum_window_size(const Reduct & reduct, const ResolvedInstance & instance) -> int
    {
        auto & base = reduct.base();
        int w = std::max({3, base.max_arity() + 1, base.max_bound_size()});
        for (auto & c : instance.constraints)
            w = std::max(w, distinct_count(c.scope));
        return w;
    }

    auto reduce_instance(const Reduct & reduct, const Instance & instance, optional<int> window_size) -> FiniteInstance
    {
        auto result = reduce_instance(reduct, resolve(reduct, instance), window_size);
        result.variable_names = instance.variables;
        return result;
    }

    auto reduce_instance(const Reduct & reduct, const ResolvedInstance & instance, optional<int> window_size) -> FiniteInstance
    {
        int n = instance.var_count;
        if (n < 1)
            throw InputError("the reduction needs at least one variable");

        int minimum = minimum_window_size(reduct, instance);
        int w = window_size.value_or(minimum);
        for (size_t c = 0; c < instance.constraints.size(); ++c) {
            int d = distinct_count(instance.constraints[c].scope);
            if (d > w)
                throw InputError("constraint " + std::to_string(c) + " (" + reduct.relation(instance.constraints[c].relation).name() + ") spans "
                    + std::to_string(d) + " variables, more than the window size " + std::to_string(w));
        }
        if (w < minimum)
            throw InputError("window size " + std::to_string(w) + " is below the minimum " + std::to_string(minimum) + " for template '"
                + reduct.base().name() + "'");

        w = std::min(w, n);
        auto & space = reduct.space();
        if (w > space.capacity())
            throw CapacityError("window size " + std::to_string(w) + " exceeds the capacity limit " + std::to_string(space.capacity()));

        FiniteInstance result;
        result.space = reduct.space_ptr();
        result.var_count = n;
        result.window_size = w;
        result.variable_names = default_names(n);
        result.windows = combinations(n, w);

        vector<CompiledConstraint> compiled;
        for (auto & c : instance.constraints)
            compiled.push_back(compile_constraint(reduct, c));

        for (size_t i = 0; i < result.windows.size(); ++i) {
            auto & window = result.windows[i];
            vector<std::pair<const CompiledConstraint *, unsigned>> inside;
            for (size_t c = 0; c < compiled.size(); ++c)
                if (auto mask = mask_within(compiled[c].vars, window)) {
                    inside.emplace_back(&compiled[c], *mask);
                    result.memberships.push_back(WindowMembership{int(c), int(i)});
                }

            vector<int> domain;
            for (int o = 0; o < space.count(w); ++o) {
                bool ok = true;
                for (auto & [cc, mask] : inside)
                    if (! cc->ok[space.restrict_mask(w, o, mask)]) {
                        ok = false;
                        break;
                    }
                if (ok)
                    domain.push_back(o);
            }
            result.domains.push_back(std::move(domain));
        }
        std::sort(result.memberships.begin(), result.memberships.end(),
            [](auto & x, auto & y) { return std::pair{x.constraint, x.window} < std::pair{y.constraint, y.window}; });

        for (size_t i = 0; i < result.windows.size(); ++i)
            for (size_t j = i + 1; j < result.windows.size(); ++j) {
                vector<int> shared;
                std::set_intersection(result.windows[i].begin(), result.windows[i].end(), result.windows[j].begin(), result.windows[j].end(),
                    std::back_inserter(shared));
                if (! shared.empty())
                    result.overlaps.push_back(WindowOverlap{int(i), int(j), std::move(shared)});
            }
        return result;
    }

    auto to_finite_csp(const FiniteInstance & finite) -> FiniteCsp
    {
        auto & space = *finite.space;
        int w = finite.window_size;
        FiniteCsp csp;
        for (auto & d : finite.domains)
            csp.domain_sizes.push_back(int(d.size()));
        for (auto & overlap : finite.overlaps) {
            ProjectionConstraint p;
            p.first = overlap.first;
            p.second = overlap.second;
            auto m1 = mask_of(overlap.shared, finite.windows[overlap.first]);
            auto m2 = mask_of(overlap.shared, finite.windows[overlap.second]);
            for (auto o : finite.domains[overlap.first])
                p.first_class.push_back(space.restrict_mask(w, o, m1));
            for (auto o : finite.domains[overlap.second])
                p.second_class.push_back(space.restrict_mask(w, o, m2));
            csp.projections.push_back(std::move(p));
        }
        return csp;
    }

    auto assignment_orbits(const FiniteInstance & finite, const vector<int> & csp_assignment) -> vector<int>
    {
        vector<int> result;
        for (size_t i = 0; i < csp_assignment.size(); ++i)
            result.push_back(finite.domains[i][csp_assignment[i]]);
        return result;
    }

    auto glue_solution(const FiniteInstance & finite, const vector<int> & assignment) -> std::variant<Orbit, GlueConflict>
    {
        auto & space = *finite.space;
        int w = finite.window_size;
        int n = finite.var_count;
        if (assignment.size() != finite.windows.size())
            throw InputError("assignment must give one orbit per window");

        for (auto & overlap : finite.overlaps) {
            auto a = space.restrict_mask(w, assignment[overlap.first], mask_of(overlap.shared, finite.windows[overlap.first]));
            auto b = space.restrict_mask(w, assignment[overlap.second], mask_of(overlap.shared, finite.windows[overlap.second]));
            if (a != b)
                return GlueConflict{overlap.first, overlap.second};
        }

        std::map<vector<int>, int> window_index;
        for (size_t i = 0; i < finite.windows.size(); ++i)
            window_index[finite.windows[i]] = int(i);

        // the lexicographically first window containing a set of at most w variables
        auto window_for = [&](vector<int> vars) {
            std::sort(vars.begin(), vars.end());
            vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
            for (int v = 0; int(vars.size()) < w; ++v)
                if (! std::binary_search(vars.begin(), vars.end(), v)) {
                    vars.insert(std::lower_bound(vars.begin(), vars.end(), v), v);
                }
            return window_index.at(vars);
        };

        vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto root = [&](int x) {
            while (parent[x] != x)
                x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                int win = window_for({i, j});
                auto & vars = finite.windows[win];
                auto & orbit = space.orbit(w, assignment[win]);
                int pi = int(std::lower_bound(vars.begin(), vars.end(), i) - vars.begin());
                int pj = int(std::lower_bound(vars.begin(), vars.end(), j) - vars.begin());
                if (orbit.equal(pi, pj))
                    parent[root(j)] = root(i);
            }
        vector<std::uint8_t> blocks(n);
        for (int i = 0; i < n; ++i)
            blocks[i] = std::uint8_t(root(i));

        auto & sig = space.signature();
        vector<vector<Tuple>> facts(sig.size());
        for (size_t r = 0; r < sig.size(); ++r) {
            int arity = sig[r].arity;
            long total = 1;
            for (int k = 0; k < arity; ++k)
                total *= n;
            vector<int> t(arity);
            for (long code = 0; code < total; ++code) {
                for (long k = arity - 1, c = code; k >= 0; --k, c /= n)
                    t[k] = int(c % n);
                int win = window_for(t);
                auto & vars = finite.windows[win];
                Tuple local;
                for (auto v : t)
                    local.push_back(std::uint8_t(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin()));
                if (space.orbit(w, assignment[win]).holds(r, local)) {
                    Tuple global(t.begin(), t.end());
                    facts[r].push_back(std::move(global));
                }
            }
        }
        return Orbit{std::move(blocks), std::move(facts)};
    }
}
