#ifndef ORBITSOLVE_STRUCTURE_HPP
#define ORBITSOLVE_STRUCTURE_HPP

#include <optional>
#include <string>
#include <vector>

namespace orbitsolve
{
    struct RelationSymbol
    {
        std::string name;
        int arity = 0;

        auto operator==(const RelationSymbol &) const -> bool = default;
    };

    /// Relation symbols and their arities. Equality is implicit and never listed.
    class Signature
    {
    public:
        Signature() = default;
        explicit Signature(std::vector<RelationSymbol> relations);

        auto relations() const -> const std::vector<RelationSymbol> & { return _relations; }
        auto size() const -> std::size_t { return _relations.size(); }
        auto operator[](std::size_t i) const -> const RelationSymbol & { return _relations[i]; }
        auto index_of(const std::string & name) const -> std::optional<std::size_t>;
        auto max_arity() const -> int;

        /// The sub-signature made of the named relations, in this signature's order.
        auto restricted_to(const std::vector<std::string> & names) const -> Signature;

        auto operator==(const Signature &) const -> bool = default;

    private:
        std::vector<RelationSymbol> _relations;
    };

    /// An atomic formula over variables 0..k-1: either equality or a relation symbol
    /// applied to a variable tuple. `relation` is an index into the owning signature,
    /// or -1 for equality (in which case `args` has exactly two entries).
    struct Atom
    {
        int relation = -1;
        std::vector<int> args;

        auto is_equality() const -> bool { return relation < 0; }
        static auto equality(int a, int b) -> Atom { return Atom{-1, {a, b}}; }
        static auto rel(int relation, std::vector<int> args) -> Atom { return Atom{relation, std::move(args)}; }

        auto operator==(const Atom &) const -> bool = default;
    };

    struct Literal
    {
        bool positive = true;
        Atom atom;

        auto operator==(const Literal &) const -> bool = default;
    };

    /// A forbidden condition: a conjunction of literals over `var_count` variables.
    struct Bound
    {
        int var_count = 0;
        std::vector<Literal> literals;

        auto operator==(const Bound &) const -> bool = default;
    };

    /// A finitely bounded homogeneous structure, given by its signature and bounds.
    /// Construction validates the bounds against the signature and throws InputError.
    class Template
    {
    public:
        Template(std::string name, Signature signature, std::vector<Bound> bounds);

        auto name() const -> const std::string & { return _name; }
        auto signature() const -> const Signature & { return _signature; }
        auto bounds() const -> const std::vector<Bound> & { return _bounds; }
        auto max_bound_size() const -> int { return _max_bound_size; }
        auto max_arity() const -> int { return _max_arity; }

    private:
        std::string _name;
        Signature _signature;
        std::vector<Bound> _bounds;
        int _max_bound_size = 0;
        int _max_arity = 0;
    };
}

#endif
