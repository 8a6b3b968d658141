#include <orbitsolve/catalog.hpp>
#include <orbitsolve/orbit_action.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

using std::optional;
using std::shared_ptr;
using std::size_t;
using std::span;
using std::string;
using std::vector;

namespace orbitsolve
{
    auto to_string(Provenance p) -> string
    {
        switch (p) {
        case Provenance::Given: return "given";
        case Provenance::Forced: return "forced";
        case Provenance::Completed: return "completed";
        }
        return "?";
    }

    OrbitAction::OrbitAction(string name, shared_ptr<const OrbitSpace> space, int arity, int depth, const CellFunction & cell) :
        _name(std::move(name)),
        _space(std::move(space)),
        _arity(arity),
        _depth(depth)
    {
        if (_arity < 1)
            throw InputError("action '" + _name + "' must have arity >= 1");
        if (_depth < 1)
            throw InputError("action '" + _name + "' must have depth >= 1");
        if (_depth > _space->capacity())
            throw CapacityError("action depth " + std::to_string(_depth) + " exceeds the capacity limit " + std::to_string(_space->capacity()));
        _tables.resize(_depth + 1);
        _provenance.resize(_depth + 1);
        for (int n = 1; n <= _depth; ++n) {
            size_t cells = cell_count(n);
            _tables[n].resize(cells);
            _provenance[n].resize(cells);
            for (size_t i = 0; i < cells; ++i) {
                auto args = cell_args(n, i);
                auto [out, prov] = cell(n, args);
                _tables[n][i] = out;
                _provenance[n][i] = prov;
            }
        }
    }

    auto OrbitAction::cell_count(int n) const -> size_t
    {
        size_t cells = 1;
        for (int k = 0; k < _arity; ++k)
            cells *= size_t(_space->count(n));
        return cells;
    }

    auto OrbitAction::cell_args(int n, size_t index) const -> vector<int>
    {
        vector<int> args(_arity);
        size_t c = size_t(_space->count(n));
        for (int k = _arity - 1; k >= 0; --k, index /= c)
            args[k] = int(index % c);
        return args;
    }

    auto OrbitAction::cell_index(int n, span<const int> args) const -> size_t
    {
        if (int(args.size()) != _arity)
            throw InputError("action '" + _name + "' takes " + std::to_string(_arity) + " arguments");
        if (n < 1 || n > _depth)
            throw InputError("action '" + _name + "' is only defined up to length " + std::to_string(_depth));
        size_t c = size_t(_space->count(n)), index = 0;
        for (auto a : args)
            index = index * c + size_t(a);
        return index;
    }

    auto OrbitAction::apply(int n, span<const int> args) const -> int
    {
        return _tables[n][cell_index(n, args)];
    }

    auto OrbitAction::provenance(int n, span<const int> args) const -> Provenance
    {
        return _provenance[n][cell_index(n, args)];
    }

    auto ActionTerm::apply(shared_ptr<const OrbitAction> action, vector<ActionTerm> args) -> ActionTerm
    {
        return ActionTerm{-1, std::move(action), std::move(args)};
    }

    namespace
    {
        auto validate_term(const ActionTerm & term, int arity, const OrbitAction & outer) -> void
        {
            if (! term.action) {
                if (term.variable < 0 || term.variable >= arity)
                    throw InputError("term variable " + std::to_string(term.variable + 1) + " is outside the arity " + std::to_string(arity));
                return;
            }
            if (int(term.args.size()) != term.action->arity())
                throw InputError("action '" + term.action->name() + "' applied to " + std::to_string(term.args.size()) + " arguments, expects "
                    + std::to_string(term.action->arity()));
            if (&term.action->space() != &outer.space() || term.action->depth() != outer.depth())
                throw InputError("action '" + term.action->name() + "' does not share the space and depth of '" + outer.name() + "'");
            for (auto & a : term.args)
                validate_term(a, arity, outer);
        }

        auto evaluate_term(const ActionTerm & term, int n, span<const int> args, Provenance & prov) -> int
        {
            if (! term.action)
                return args[term.variable];
            vector<int> inner;
            for (auto & a : term.args)
                inner.push_back(evaluate_term(a, n, args, prov));
            prov = std::max(prov, term.action->provenance(n, inner));
            return term.action->apply(n, inner);
        }
    }

    auto compose_action(string name, int arity, shared_ptr<const OrbitAction> outer, const vector<ActionTerm> & inners) -> OrbitAction
    {
        auto whole = ActionTerm::apply(outer, inners);
        validate_term(whole, arity, *outer);
        return OrbitAction{std::move(name), outer->space_ptr(), arity, outer->depth(), [&](int n, span<const int> args) {
                               Provenance prov = Provenance::Given;
                               int out = evaluate_term(whole, n, args, prov);
                               return std::pair{out, prov};
                           }};
    }

    namespace
    {
        auto label_args(const OrbitSpace & space, int n, span<const int> args) -> string
        {
            string s = "(";
            for (size_t i = 0; i < args.size(); ++i)
                s += (i ? ", " : "") + space.label(n, args[i]);
            return s + ")";
        }
    }

    auto check_action_welldefined(const OrbitAction & action) -> vector<ActionViolation>
    {
        vector<ActionViolation> violations;
        auto & space = action.space();
        auto & bounds = space.base().bounds();
        for (int n = 1; n <= action.depth(); ++n) {
            int count = space.count(n);
            for (size_t cell = 0; cell < action.cell_count(n); ++cell) {
                auto args = action.cell_args(n, cell);
                int out = action.cell_output(n, cell);
                if (out < 0 || out >= count) {
                    violations.push_back({"totality", n, args, "no output orbit for " + label_args(space, n, args)});
                    continue;
                }
                auto & orbit = space.orbit(n, out);
                for (auto & b : bounds)
                    if (realizes_bound(orbit, b))
                        violations.push_back({"validity", n, args, "output realizes a bound"});

                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) {
                        bool all = std::all_of(args.begin(), args.end(), [&](int a) { return space.orbit(n, a).equal(i, j); });
                        if (all && ! orbit.equal(i, j))
                            violations.push_back({"function-respect", n, args,
                                "positions " + std::to_string(i + 1) + "," + std::to_string(j + 1) + " are equal in every argument but not in the output"});
                    }

                for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
                    int m = std::popcount(mask);
                    vector<int> restricted;
                    for (auto a : args)
                        restricted.push_back(space.restrict_mask(n, a, mask));
                    int expected = action.apply(m, restricted);
                    int actual = space.restrict_mask(n, out, mask);
                    if (expected != actual) {
                        string positions;
                        for (int p = 0; p < n; ++p)
                            if (mask & (1u << p))
                                positions += (positions.empty() ? "" : ",") + std::to_string(p + 1);
                        violations.push_back({"restriction", n, args,
                            "restricting the output to positions " + positions + " gives " + space.label(m, actual) + " but acting on the restricted arguments gives "
                                + space.label(m, expected)});
                    }
                }
            }
        }
        return violations;
    }

    namespace
    {
        // Dense ids of the projections of all n-orbits onto a sub-signature.
        auto projection_ids(const OrbitSpace & space, int n, const optional<Signature> & sub) -> vector<int>
        {
            vector<int> ids(space.count(n));
            if (! sub) {
                for (int o = 0; o < space.count(n); ++o)
                    ids[o] = o;
                return ids;
            }
            std::map<string, int> seen;
            for (int o = 0; o < space.count(n); ++o) {
                auto key = serialize(project_orbit(space.orbit(n, o), space.signature(), *sub), *sub);
                ids[o] = seen.try_emplace(key, int(seen.size())).first->second;
            }
            return ids;
        }
    }

    auto check_canonical_wrt(const OrbitAction & action, const Signature & sub, bool skip_completed) -> optional<CanonicityWitness>
    {
        auto & space = action.space();
        for (int n = 1; n <= action.depth(); ++n) {
            auto ids = projection_ids(space, n, sub);
            std::map<vector<int>, size_t> first;
            for (size_t cell = 0; cell < action.cell_count(n); ++cell) {
                if (skip_completed && action.cell_provenance(n, cell) == Provenance::Completed)
                    continue;
                auto args = action.cell_args(n, cell);
                vector<int> key;
                for (auto a : args)
                    key.push_back(ids[a]);
                auto [it, inserted] = first.try_emplace(key, cell);
                if (inserted)
                    continue;
                int out1 = action.cell_output(n, it->second), out2 = action.cell_output(n, cell);
                if (ids[out1] != ids[out2])
                    return CanonicityWitness{n, action.cell_args(n, it->second), args, out1, out2};
            }
        }
        return std::nullopt;
    }

    auto parse_identity_kind(const string & text) -> std::pair<IdentityKind, bool>
    {
        bool pseudo = text.rfind("pseudo-", 0) == 0;
        auto core = pseudo ? text.substr(7) : text;
        if (core == "cyclic")
            return {IdentityKind::Cyclic, pseudo};
        if (core == "siggers")
            return {IdentityKind::Siggers, pseudo};
        if (core == "wnu")
            return {IdentityKind::Wnu, pseudo};
        throw InputError("unknown identity '" + text + "' (expected cyclic, siggers or wnu, optionally prefixed by pseudo-)");
    }

    auto check_identity(const OrbitAction & action, const Identity & identity, bool skip_completed) -> optional<IdentityCounterexample>
    {
        int l = action.arity();
        int vars = 0;
        // each entry: left and right argument patterns over the identity's variables
        vector<std::pair<vector<int>, vector<int>>> sides;
        switch (identity.kind) {
        case IdentityKind::Cyclic: {
            vars = l;
            vector<int> left(l), right(l);
            for (int i = 0; i < l; ++i) {
                left[i] = i;
                right[i] = (i + 1) % l;
            }
            sides.emplace_back(left, right);
            break;
        }
        case IdentityKind::Siggers:
            if (l != 6)
                throw InputError("the Siggers identity needs a 6-ary action, '" + action.name() + "' has arity " + std::to_string(l));
            vars = 3;
            sides.emplace_back(vector<int>{0, 1, 0, 2, 1, 2}, vector<int>{1, 0, 2, 0, 2, 1});
            break;
        case IdentityKind::Wnu: {
            if (l < 2)
                throw InputError("a weak near-unanimity identity needs arity >= 2");
            vars = 2;
            auto placed = [&](int at) {
                vector<int> p(l, 0);
                p[at] = 1;
                return p;
            };
            for (int at = 1; at < l; ++at)
                sides.emplace_back(placed(0), placed(at));
            break;
        }
        }

        auto & space = action.space();
        for (int n = 1; n <= action.depth(); ++n) {
            auto ids = projection_ids(space, n, identity.modulo);
            int count = space.count(n);
            long total = 1;
            for (int v = 0; v < vars; ++v)
                total *= count;
            vector<int> inputs(vars);
            for (long code = 0; code < total; ++code) {
                for (long v = vars - 1, c = code; v >= 0; --v, c /= count)
                    inputs[v] = int(c % count);
                for (auto & [lp, rp] : sides) {
                    vector<int> left, right;
                    for (auto v : lp)
                        left.push_back(inputs[v]);
                    for (auto v : rp)
                        right.push_back(inputs[v]);
                    if (skip_completed
                        && (action.provenance(n, left) == Provenance::Completed || action.provenance(n, right) == Provenance::Completed))
                        continue;
                    int lo = action.apply(n, left), ro = action.apply(n, right);
                    if (ids[lo] != ids[ro])
                        return IdentityCounterexample{n, inputs, left, right, lo, ro};
                }
            }
        }
        return std::nullopt;
    }

    auto preserves_relation(const OrbitAction & action, int n, const vector<int> & orbits) -> bool
    {
        if (orbits.empty())
            return true;
        vector<char> member(action.space().count(n), 0);
        for (auto o : orbits)
            member[o] = 1;
        int l = action.arity();
        vector<size_t> digit(l, 0);
        vector<int> args(l);
        while (true) {
            for (int k = 0; k < l; ++k)
                args[k] = orbits[digit[k]];
            if (! member[action.apply(n, args)])
                return false;
            int k = l - 1;
            while (k >= 0 && digit[k] + 1 == orbits.size())
                digit[k--] = 0;
            if (k < 0)
                return true;
            ++digit[k];
        }
    }

    namespace actions
    {
        namespace
        {
            auto order_relation(const Signature & sig) -> optional<size_t>
            {
                auto lt = sig.index_of("<");
                if (lt && sig[*lt].arity != 2)
                    return std::nullopt;
                return lt;
            }

            // Dense ranks of the lexicographically ordered key vectors.
            auto dense(const vector<vector<int>> & keys) -> vector<int>
            {
                auto sorted = keys;
                std::sort(sorted.begin(), sorted.end());
                sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
                vector<int> result;
                for (auto & k : keys)
                    result.push_back(int(std::lower_bound(sorted.begin(), sorted.end(), k) - sorted.begin()));
                return result;
            }

            auto edge_index(const OrbitSpace & space) -> size_t
            {
                auto e = space.signature().index_of("E");
                if (! e || space.signature()[*e].arity != 3 || ! order_relation(space.signature()) || space.signature().size() != 2)
                    throw InputError("this action is defined on the ordered 3-hypergraph only");
                return *e;
            }

            // Per position, the key vector made of each argument's rank.
            auto lex_keys(const OrbitSpace & space, int n, span<const int> args) -> vector<vector<int>>
            {
                vector<vector<int>> keys(n);
                for (auto a : args) {
                    auto r = ranks(space.orbit(n, a));
                    for (int i = 0; i < n; ++i)
                        keys[i].push_back(r[i]);
                }
                return keys;
            }
        }

        auto ranks(const Orbit & orbit) -> vector<int>
        {
            // Equality classes are ordered by "<" if the orbit has that relation at index
            // given by the caller's signature; here any binary relation with facts is used.
            int n = orbit.size();
            vector<int> result(n, 0);
            for (size_t r = 0; r < orbit.relation_count(); ++r) {
                auto & facts = orbit.facts(r);
                if (facts.empty() || facts.front().size() != 2)
                    continue;
                for (int i = 0; i < n; ++i) {
                    vector<int> below;
                    for (int j = 0; j < n; ++j)
                        if (orbit.holds(r, Tuple{std::uint8_t(j), std::uint8_t(i)}))
                            below.push_back(orbit.blocks()[j]);
                    std::sort(below.begin(), below.end());
                    result[i] = int(std::unique(below.begin(), below.end()) - below.begin());
                }
                return result;
            }
            for (int i = 0; i < n; ++i)
                result[i] = orbit.blocks()[i];
            return result;
        }

        auto has_edge(const Orbit & orbit) -> bool
        {
            for (size_t r = 0; r < orbit.relation_count(); ++r)
                if (! orbit.facts(r).empty() && orbit.facts(r).front().size() == 3)
                    return true;
            return false;
        }

        auto hypergraph_orbit(const OrbitSpace & space, const vector<int> & rank, bool edge) -> int
        {
            auto e = edge_index(space);
            auto lt = *order_relation(space.signature());
            int n = int(rank.size());
            vector<std::uint8_t> blocks;
            for (auto r : rank)
                blocks.push_back(std::uint8_t(r));
            vector<vector<Tuple>> facts(space.signature().size());
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (rank[i] < rank[j])
                        facts[lt].push_back(Tuple{std::uint8_t(i), std::uint8_t(j)});
            bool injective = std::all_of(rank.begin(), rank.end(), [&](int r) { return std::count(rank.begin(), rank.end(), r) == 1; });
            if (edge && n == 3 && injective) {
                vector<std::uint8_t> p{0, 1, 2};
                do
                    facts[e].push_back(Tuple{p[0], p[1], p[2]});
                while (std::next_permutation(p.begin(), p.end()));
            }
            return space.index_of(Orbit{std::move(blocks), std::move(facts)});
        }

        auto projection(shared_ptr<const OrbitSpace> space, int arity, int index, int depth) -> OrbitAction
        {
            if (index < 0 || index >= arity)
                throw InputError("projection index out of range");
            return OrbitAction{"pi" + std::to_string(index + 1), std::move(space), arity, depth,
                [index](int, span<const int> args) { return std::pair{args[index], Provenance::Given}; }};
        }

        auto lexicographic(shared_ptr<const OrbitSpace> space, int arity, int depth) -> OrbitAction
        {
            auto & sig = space->signature();
            auto lt = order_relation(sig);
            if (sig.size() > 1 || (sig.size() == 1 && ! lt))
                throw InputError("the lexicographic action needs a template with only a binary order '<' or no relations");
            auto * sp = space.get();
            return OrbitAction{"lex" + std::to_string(arity), std::move(space), arity, depth, [sp, lt](int n, span<const int> args) {
                                   auto keys = lex_keys(*sp, n, args);
                                   auto rank = dense(keys);
                                   vector<std::uint8_t> blocks(rank.begin(), rank.end());
                                   vector<vector<Tuple>> facts(sp->signature().size());
                                   if (lt)
                                       for (int i = 0; i < n; ++i)
                                           for (int j = 0; j < n; ++j)
                                               if (rank[i] < rank[j])
                                                   facts[*lt].push_back(Tuple{std::uint8_t(i), std::uint8_t(j)});
                                   return std::pair{sp->index_of(Orbit{std::move(blocks), std::move(facts)}), Provenance::Given};
                               }};
        }

        auto hypergraph_f(shared_ptr<const OrbitSpace> space) -> OrbitAction
        {
            edge_index(*space);
            auto * sp = space.get();
            return OrbitAction{"f", std::move(space), 2, 3, [sp](int n, span<const int> args) {
                                   if (n == 1)
                                       return std::pair{0, Provenance::Forced};
                                   auto & o1 = sp->orbit(n, args[0]);
                                   auto & o2 = sp->orbit(n, args[1]);
                                   // pairs: O1 if both injective, the other if one is constant;
                                   // on longer tuples this is the lexicographic order
                                   auto rank = dense(lex_keys(*sp, n, args));
                                   bool edge = false;
                                   if (n == 3 && std::set<int>(rank.begin(), rank.end()).size() == 3) {
                                       if (o1.injective() && o2.injective())
                                           edge = has_edge(o1);
                                       else if (o1.injective() || o2.injective())
                                           edge = has_edge(o1.injective() ? o1 : o2);
                                       else {
                                           // the repeated element lies below the third one?
                                           auto below = [](const Orbit & o) {
                                               auto r = ranks(o);
                                               int twice = r[0] == r[1] || r[0] == r[2] ? r[0] : r[1];
                                               int third = r[0] == twice ? (r[1] == twice ? r[2] : r[1]) : r[0];
                                               return twice < third;
                                           };
                                           edge = below(o1) == below(o2);
                                       }
                                   }
                                   return std::pair{hypergraph_orbit(*sp, rank, edge), Provenance::Given};
                               }};
        }

        auto hypergraph_m(shared_ptr<const OrbitSpace> space, Vote vote) -> OrbitAction
        {
            edge_index(*space);
            auto * sp = space.get();
            string name = vote == Vote::Majority ? "m-majority" : "m-minority";
            return OrbitAction{name, std::move(space), 3, 3, [sp, vote](int n, span<const int> args) {
                                   if (n == 1)
                                       return std::pair{0, Provenance::Forced};
                                   bool all_injective = true, all_constant = true;
                                   int votes = 0;
                                   for (auto a : args) {
                                       auto & o = sp->orbit(n, a);
                                       all_injective = all_injective && o.injective();
                                       all_constant = all_constant && o.constant();
                                       votes += o.injective() && has_edge(o);
                                   }
                                   auto rank = dense(lex_keys(*sp, n, args));
                                   bool edge = vote == Vote::Majority ? votes >= 2 : votes % 2 == 1;
                                   auto prov = all_injective ? Provenance::Given : all_constant ? Provenance::Forced : Provenance::Completed;
                                   return std::pair{hypergraph_orbit(*sp, rank, edge), prov};
                               }};
        }

        auto hypergraph_h(shared_ptr<const OrbitAction> f) -> OrbitAction
        {
            using T = ActionTerm;
            return compose_action("h", 3, f, {T::var(0), T::apply(f, {T::var(1), T::var(2)})});
        }

        auto hypergraph_g(shared_ptr<const OrbitAction> m, shared_ptr<const OrbitAction> h) -> OrbitAction
        {
            using T = ActionTerm;
            string name = m->name() == "m-minority" ? "g-minority" : "g";
            return compose_action(name, 3, m,
                {T::apply(h, {T::var(0), T::var(1), T::var(2)}), T::apply(h, {T::var(1), T::var(2), T::var(0)}),
                    T::apply(h, {T::var(2), T::var(0), T::var(1)})});
        }
    }

    auto builtin_action_names() -> vector<string>
    {
        return {"f", "m-majority", "m-minority", "h", "g", "g-minority", "pi1", "q-lex", "eq-injection6"};
    }

    auto builtin_action(const string & name) -> shared_ptr<const OrbitAction>
    {
        static std::recursive_mutex lock;
        static std::map<string, shared_ptr<const OrbitAction>> cache;
        std::lock_guard guard{lock};
        if (auto it = cache.find(name); it != cache.end())
            return it->second;

        shared_ptr<const OrbitAction> result;
        auto ho = [] { return catalog::space("hypergraph-ordered"); };
        if (name == "f")
            result = std::make_shared<const OrbitAction>(actions::hypergraph_f(ho()));
        else if (name == "m-majority")
            result = std::make_shared<const OrbitAction>(actions::hypergraph_m(ho(), actions::Vote::Majority));
        else if (name == "m-minority")
            result = std::make_shared<const OrbitAction>(actions::hypergraph_m(ho(), actions::Vote::Minority));
        else if (name == "h")
            result = std::make_shared<const OrbitAction>(actions::hypergraph_h(builtin_action("f")));
        else if (name == "g")
            result = std::make_shared<const OrbitAction>(actions::hypergraph_g(builtin_action("m-majority"), builtin_action("h")));
        else if (name == "g-minority")
            result = std::make_shared<const OrbitAction>(actions::hypergraph_g(builtin_action("m-minority"), builtin_action("h")));
        else if (name == "pi1")
            result = std::make_shared<const OrbitAction>(actions::projection(ho(), 3, 0));
        else if (name == "q-lex")
            result = std::make_shared<const OrbitAction>(actions::lexicographic(catalog::space("q-order"), 2, 4));
        else if (name == "eq-injection6")
            result = std::make_shared<const OrbitAction>(actions::lexicographic(catalog::space("equality"), 6, 3));
        else
            throw InputError("unknown action '" + name + "'");
        cache[name] = result;
        return result;
    }
}
