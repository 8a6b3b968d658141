#include <orbitsolve/errors.hpp>
#include <orbitsolve/structure.hpp>

#include <algorithm>
#include <set>

using std::optional;
using std::set;
using std::size_t;
using std::string;
using std::to_string;
using std::vector;

namespace orbitsolve
{
    Signature::Signature(vector<RelationSymbol> relations) :
        _relations(std::move(relations))
    {
        set<string> seen;
        for (auto & r : _relations) {
            if (r.name.empty())
                throw InputError("relation with empty name");
            if (r.name == "=")
                throw InputError("'=' is reserved for equality");
            if (r.arity < 1)
                throw InputError("relation '" + r.name + "' has arity " + to_string(r.arity) + ", must be >= 1");
            if (! seen.insert(r.name).second)
                throw InputError("duplicate relation name '" + r.name + "'");
        }
    }

    auto Signature::index_of(const string & name) const -> optional<size_t>
    {
        for (size_t i = 0; i < _relations.size(); ++i)
            if (_relations[i].name == name)
                return i;
        return std::nullopt;
    }

    auto Signature::max_arity() const -> int
    {
        int result = 0;
        for (auto & r : _relations)
            result = std::max(result, r.arity);
        return result;
    }

    auto Signature::restricted_to(const vector<string> & names) const -> Signature
    {
        for (auto & n : names)
            if (! index_of(n))
                throw InputError("unknown relation symbol '" + n + "'");

        vector<RelationSymbol> kept;
        for (auto & r : _relations)
            if (std::find(names.begin(), names.end(), r.name) != names.end())
                kept.push_back(r);
        return Signature{std::move(kept)};
    }

    Template::Template(string name, Signature signature, vector<Bound> bounds) :
        _name(std::move(name)),
        _signature(std::move(signature)),
        _bounds(std::move(bounds))
    {
        for (size_t b = 0; b < _bounds.size(); ++b) {
            auto & bound = _bounds[b];
            auto where = "bound " + to_string(b + 1) + " of template '" + _name + "'";
            if (bound.var_count < 1)
                throw InputError(where + " has no variables");
            if (bound.literals.empty())
                throw InputError(where + " has no literals");
            for (auto & lit : bound.literals) {
                if (lit.atom.is_equality()) {
                    if (lit.atom.args.size() != 2)
                        throw InputError(where + ": equality takes two arguments");
                }
                else {
                    if (lit.atom.relation >= int(_signature.size()))
                        throw InputError(where + ": relation index out of range");
                    if (int(lit.atom.args.size()) != _signature[lit.atom.relation].arity)
                        throw InputError(where + ": arity mismatch for '" + _signature[lit.atom.relation].name + "'");
                }
                for (auto a : lit.atom.args)
                    if (a < 0 || a >= bound.var_count)
                        throw InputError(where + ": position " + to_string(a + 1) + " exceeds variable count");
            }
            _max_bound_size = std::max(_max_bound_size, bound.var_count);
        }
        _max_arity = _signature.max_arity();
    }
}
