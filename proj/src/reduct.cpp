#include <orbitsolve/reduct.hpp>

#include <algorithm>
#include <map>
#include <set>

using std::optional;
using std::shared_ptr;
using std::size_t;
using std::span;
using std::string;
using std::vector;

namespace orbitsolve
{
    ReductRelation::ReductRelation(const OrbitSpace & space, string name, int arity, vector<int> orbits, bool allow_empty) :
        _name(std::move(name)),
        _arity(arity),
        _orbits(std::move(orbits)),
        _allow_empty(allow_empty)
    {
        if (_name.empty())
            throw InputError("reduct relation with empty name");
        if (_arity < 1)
            throw InputError("reduct relation '" + _name + "' must have arity >= 1");
        int count = space.count(_arity);
        std::sort(_orbits.begin(), _orbits.end());
        _orbits.erase(std::unique(_orbits.begin(), _orbits.end()), _orbits.end());
        _member.assign(count, 0);
        for (auto o : _orbits) {
            if (o < 0 || o >= count)
                throw InputError("reduct relation '" + _name + "' names orbit " + std::to_string(o) + " which does not exist for length " + std::to_string(_arity));
            _member[o] = 1;
        }
        if (_orbits.empty() && ! _allow_empty)
            throw InputError("reduct relation '" + _name + "' is empty; set the empty-relation flag if this is intended");
    }

    auto compile_reduct_relation(const OrbitSpace & space, const string & name, int arity, const Formula & formula, bool allow_empty)
        -> ReductRelation
    {
        if (formula.max_variable() >= arity)
            throw InputError("formula for '" + name + "' uses variable " + std::to_string(formula.max_variable() + 1) + " but the arity is " + std::to_string(arity));
        vector<int> selected;
        auto & orbits = space.orbits(arity);
        for (size_t i = 0; i < orbits.size(); ++i)
            if (evaluate(formula, orbits[i]))
                selected.push_back(int(i));
        return ReductRelation{space, name, arity, std::move(selected), allow_empty};
    }

    auto compile_reduct_relation(const OrbitSpace & space, const string & name, int arity, const string & formula, bool allow_empty)
        -> ReductRelation
    {
        return compile_reduct_relation(space, name, arity, parse_formula(formula, space.signature()), allow_empty);
    }

    Reduct::Reduct(string name, shared_ptr<const OrbitSpace> space, vector<ReductRelation> relations) :
        _name(std::move(name)),
        _space(std::move(space)),
        _relations(std::move(relations)),
        _declared(_relations.size())
    {
        auto & sig = _space->signature();
        std::set<string> names;
        for (auto & r : _relations) {
            if (sig.index_of(r.name()) || r.name() == "=" || r.name() == "!=")
                throw InputError("reduct relation '" + r.name() + "' clashes with a base relation name");
            if (! names.insert(r.name()).second)
                throw InputError("duplicate reduct relation '" + r.name() + "'");
        }

        for (auto & sym : sig.relations()) {
            if (sym.arity > _space->capacity())
                continue;
            vector<int> args(sym.arity);
            for (int i = 0; i < sym.arity; ++i)
                args[i] = i;
            auto f = Formula::make_atom(Atom::rel(int(*sig.index_of(sym.name)), args));
            _relations.push_back(compile_reduct_relation(*_space, sym.name, sym.arity, f, true));
        }
        if (_space->capacity() >= 2) {
            auto eq = Formula::make_atom(Atom::equality(0, 1));
            _relations.push_back(compile_reduct_relation(*_space, "=", 2, eq, true));
            _relations.push_back(compile_reduct_relation(*_space, "!=", 2, Formula::negation(eq), true));
        }
    }

    auto Reduct::of_template(shared_ptr<const OrbitSpace> space) -> Reduct
    {
        auto name = space->base().name();
        return Reduct{name, std::move(space), {}};
    }

    auto Reduct::declared() const -> vector<const ReductRelation *>
    {
        vector<const ReductRelation *> result;
        for (size_t i = 0; i < _declared; ++i)
            result.push_back(&_relations[i]);
        return result;
    }

    auto Reduct::find(const string & name) const -> optional<size_t>
    {
        for (size_t i = 0; i < _relations.size(); ++i)
            if (_relations[i].name() == name)
                return i;
        return std::nullopt;
    }

    auto ValidationReport::summary() const -> string
    {
        string s;
        for (auto & e : errors)
            s += (s.empty() ? "" : "; ") + e;
        return s;
    }

    auto validate_instance(const Reduct & reduct, const Instance & instance) -> ValidationReport
    {
        ValidationReport report;
        std::set<string> vars;
        for (auto & v : instance.variables) {
            if (v.empty())
                report.errors.push_back("empty variable name");
            else if (! vars.insert(v).second)
                report.errors.push_back("duplicate variable '" + v + "'");
        }

        for (size_t c = 0; c < instance.constraints.size(); ++c) {
            auto & con = instance.constraints[c];
            auto where = "constraint " + std::to_string(c);
            auto r = reduct.find(con.relation);
            if (! r)
                report.errors.push_back(where + ": unknown relation '" + con.relation + "'");
            else if (int(con.scope.size()) != reduct.relation(*r).arity())
                report.errors.push_back(where + ": relation '" + con.relation + "' has arity " + std::to_string(reduct.relation(*r).arity())
                    + " but the scope has " + std::to_string(con.scope.size()) + " variables");
            if (con.scope.empty())
                report.errors.push_back(where + ": empty scope");
            for (auto & v : con.scope)
                if (! vars.count(v))
                    report.errors.push_back(where + ": undeclared variable '" + v + "'");
        }
        return report;
    }

    auto resolve(const Reduct & reduct, const Instance & instance) -> ResolvedInstance
    {
        auto report = validate_instance(reduct, instance);
        if (! report.ok())
            throw InputError("invalid instance: " + report.summary());

        std::map<string, int> index;
        for (size_t i = 0; i < instance.variables.size(); ++i)
            index[instance.variables[i]] = int(i);

        ResolvedInstance result;
        result.var_count = int(instance.variables.size());
        for (auto & con : instance.constraints) {
            ResolvedConstraint rc{*reduct.find(con.relation), {}};
            for (auto & v : con.scope)
                rc.scope.push_back(index[v]);
            result.constraints.push_back(std::move(rc));
        }
        return result;
    }

    auto satisfies(const Reduct & reduct, const ResolvedConstraint & constraint, int n, int orbit, span<const int> vars) -> bool
    {
        vector<int> positions;
        for (auto v : constraint.scope) {
            auto it = std::find(vars.begin(), vars.end(), v);
            if (it == vars.end())
                throw InputError("constraint scope is not covered by the given variables");
            positions.push_back(int(it - vars.begin()));
        }
        auto & rel = reduct.relation(constraint.relation);
        return rel.contains(reduct.space().restrict_to(n, orbit, positions));
    }

    auto compile_constraint(const Reduct & reduct, const ResolvedConstraint & constraint) -> CompiledConstraint
    {
        CompiledConstraint result;
        result.vars = constraint.scope;
        std::sort(result.vars.begin(), result.vars.end());
        result.vars.erase(std::unique(result.vars.begin(), result.vars.end()), result.vars.end());

        vector<int> positions;
        for (auto v : constraint.scope)
            positions.push_back(int(std::lower_bound(result.vars.begin(), result.vars.end(), v) - result.vars.begin()));

        auto & space = reduct.space();
        auto & rel = reduct.relation(constraint.relation);
        int m = int(result.vars.size());
        result.ok.resize(space.count(m));
        for (int o = 0; o < space.count(m); ++o)
            result.ok[o] = rel.contains(space.restrict_to(m, o, positions));
        return result;
    }

    auto mask_within(span<const int> sub, span<const int> vars) -> optional<unsigned>
    {
        unsigned mask = 0;
        for (auto v : sub) {
            auto it = std::lower_bound(vars.begin(), vars.end(), v);
            if (it == vars.end() || *it != v)
                return std::nullopt;
            mask |= 1u << (it - vars.begin());
        }
        return mask;
    }

    auto make_instance(int var_count, const vector<std::pair<string, vector<int>>> & constraints) -> Instance
    {
        Instance result;
        for (int i = 1; i <= var_count; ++i)
            result.variables.push_back("x" + std::to_string(i));
        for (auto & [rel, scope] : constraints) {
            Constraint c{rel, {}};
            for (auto v : scope)
                c.scope.push_back("x" + std::to_string(v + 1));
            result.constraints.push_back(std::move(c));
        }
        return result;
    }
}
