#ifndef ORBITSOLVE_FORMULA_HPP
#define ORBITSOLVE_FORMULA_HPP

#include <orbitsolve/orbit.hpp>
#include <orbitsolve/structure.hpp>

#include <string>
#include <vector>

namespace orbitsolve
{
    /// Quantifier-free formula over a signature plus equality. Variables are 0-based
    /// positions; the text syntax uses 1-based numbers.
    struct Formula
    {
        enum class Kind
        {
            Atom,
            Not,
            And,
            Or
        };

        Kind kind = Kind::Atom;
        Atom atom;
        std::vector<Formula> children;

        static auto make_atom(Atom a) -> Formula { return Formula{Kind::Atom, std::move(a), {}}; }
        static auto negation(Formula f) -> Formula;
        static auto conjunction(std::vector<Formula> fs) -> Formula;
        static auto disjunction(std::vector<Formula> fs) -> Formula;

        /// Largest variable index used, or -1.
        auto max_variable() const -> int;
    };

    /// Grammar: `~` > `&` > `|`, parentheses; atoms `i=j`, `i R j` (binary R written
    /// infix), `R(i,...,j)`. Throws InputError with the offending column on bad input.
    auto parse_formula(const std::string & text, const Signature & signature) -> Formula;

    auto evaluate(const Formula & formula, const Orbit & orbit) -> bool;

    auto to_string(const Formula & formula, const Signature & signature) -> std::string;
}

#endif
