#ifndef ORBITSOLVE_ORBIT_ACTION_HPP
#define ORBITSOLVE_ORBIT_ACTION_HPP

#include <orbitsolve/orbit_space.hpp>

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orbitsolve
{
    /// Where the value of a table cell comes from.
    enum class Provenance : std::uint8_t
    {
        Given,     // fixed directly by the defining rule
        Forced,    // the only value compatible with the action invariants
        Completed, // a choice made to complete the table
    };

    auto to_string(Provenance p) -> std::string;

    /// The action of an ℓ-ary canonical function on the orbits of length 1..depth of a
    /// template: for each length n a table from ℓ-tuples of n-orbits to an n-orbit.
    class OrbitAction
    {
    public:
        using CellFunction = std::function<std::pair<int, Provenance>(int n, std::span<const int> args)>;

        /// Fills every cell by calling `cell`. An output of -1 marks a missing value.
        OrbitAction(std::string name, std::shared_ptr<const OrbitSpace> space, int arity, int depth, const CellFunction & cell);

        auto name() const -> const std::string & { return _name; }
        auto space() const -> const OrbitSpace & { return *_space; }
        auto space_ptr() const -> const std::shared_ptr<const OrbitSpace> & { return _space; }
        auto arity() const -> int { return _arity; }
        auto depth() const -> int { return _depth; }

        auto apply(int n, std::span<const int> args) const -> int;
        auto provenance(int n, std::span<const int> args) const -> Provenance;

        /// Number of cells at length n, and the argument tuple of cell `index`.
        auto cell_count(int n) const -> std::size_t;
        auto cell_args(int n, std::size_t index) const -> std::vector<int>;
        auto cell_output(int n, std::size_t index) const -> int { return _tables[n][index]; }
        auto cell_provenance(int n, std::size_t index) const -> Provenance { return _provenance[n][index]; }

    private:
        auto cell_index(int n, std::span<const int> args) const -> std::size_t;

        std::string _name;
        std::shared_ptr<const OrbitSpace> _space;
        int _arity;
        int _depth;
        std::vector<std::vector<int>> _tables;
        std::vector<std::vector<Provenance>> _provenance;
    };

    /// A term over actions: either argument `variable` or an action applied to subterms.
    struct ActionTerm
    {
        int variable = -1;
        std::shared_ptr<const OrbitAction> action;
        std::vector<ActionTerm> args;

        static auto var(int i) -> ActionTerm { return ActionTerm{i, nullptr, {}}; }
        static auto apply(std::shared_ptr<const OrbitAction> action, std::vector<ActionTerm> args) -> ActionTerm;
    };

    /// outer(inners[0], ..., inners[k-1]) as an action of the given arity. A cell's
    /// provenance is the weakest among the cells it consults. Throws InputError on arity
    /// mismatches, variables outside the arity, or actions over different spaces or depths.
    auto compose_action(std::string name, int arity, std::shared_ptr<const OrbitAction> outer, const std::vector<ActionTerm> & inners)
        -> OrbitAction;

    struct ActionViolation
    {
        std::string kind; // totality | restriction | function-respect | validity
        int n = 0;
        std::vector<int> args;
        std::string detail;
    };

    /// All invariant violations, exhaustively up to the action's depth.
    auto check_action_welldefined(const OrbitAction & action) -> std::vector<ActionViolation>;

    struct CanonicityWitness
    {
        int n = 0;
        std::vector<int> first_args;
        std::vector<int> second_args;
        int first_output = 0;
        int second_output = 0;
    };

    /// Canonical with respect to a sub-signature iff argument tuples with equal
    /// projections have outputs with equal projections. With `skip_completed`, cells whose
    /// value depends on a completion choice are ignored.
    auto check_canonical_wrt(const OrbitAction & action, const Signature & sub, bool skip_completed = false)
        -> std::optional<CanonicityWitness>;

    enum class IdentityKind
    {
        Cyclic,
        Siggers,
        Wnu
    };

    struct Identity
    {
        IdentityKind kind = IdentityKind::Cyclic;
        /// Outputs are compared after projecting onto this signature; nullopt compares
        /// orbits of the base itself.
        std::optional<Signature> modulo;
    };

    /// Parses "cyclic", "siggers", "wnu" with an optional "pseudo-" prefix.
    auto parse_identity_kind(const std::string & text) -> std::pair<IdentityKind, bool>;

    struct IdentityCounterexample
    {
        int n = 0;
        std::vector<int> inputs;   // orbits assigned to the identity's variables
        std::vector<int> left_args;
        std::vector<int> right_args;
        int left_output = 0;
        int right_output = 0;
    };

    /// Checks the identity for every assignment of valid n-orbits to its variables,
    /// n = 1..depth. Cyclic and wnu take the action's arity (wnu needs arity >= 2),
    /// Siggers needs arity 6. With `skip_completed`, instances touching completed cells
    /// are ignored. Returns the first counterexample in canonical order.
    auto check_identity(const OrbitAction & action, const Identity & identity, bool skip_completed = false)
        -> std::optional<IdentityCounterexample>;

    /// Does the action map every ℓ-tuple of orbits in `orbits` (all of length n) into it?
    auto preserves_relation(const OrbitAction & action, int n, const std::vector<int> & orbits) -> bool;

    namespace actions
    {
        /// Projection onto argument `index`.
        auto projection(std::shared_ptr<const OrbitSpace> space, int arity, int index, int depth = 3) -> OrbitAction;

        /// Injective action on a template whose relations are all binary strict orders or
        /// absent: equality is equality in every argument and order is lexicographic.
        /// Suitable for q-order and the equality template.
        auto lexicographic(std::shared_ptr<const OrbitSpace> space, int arity, int depth = 3) -> OrbitAction;

        /// The binary injection f on (H,<) (depth 3).
        auto hypergraph_f(std::shared_ptr<const OrbitSpace> space) -> OrbitAction;

        enum class Vote
        {
            Majority,
            Minority
        };

        /// The ternary m on (H,<) (depth 3), voting on E/N of injective triples.
        auto hypergraph_m(std::shared_ptr<const OrbitSpace> space, Vote vote) -> OrbitAction;

        /// h(x,y,z) = f(x, f(y,z)).
        auto hypergraph_h(std::shared_ptr<const OrbitAction> f) -> OrbitAction;

        /// g(x,y,z) = m(h(x,y,z), h(y,z,x), h(z,x,y)).
        auto hypergraph_g(std::shared_ptr<const OrbitAction> m, std::shared_ptr<const OrbitAction> h) -> OrbitAction;

        /// E/N classification helpers for orbits of (H,<).
        auto has_edge(const Orbit & orbit) -> bool;
        auto ranks(const Orbit & orbit) -> std::vector<int>;
        auto hypergraph_orbit(const OrbitSpace & space, const std::vector<int> & ranks, bool edge) -> int;
    }

    /// Built-in actions by name: f, m-majority, m-minority, h, g, g-minority, pi1 (all on
    /// hypergraph-ordered), q-lex (binary, q-order, depth 4) and eq-injection6 (6-ary,
    /// equality template). Throws InputError for unknown names.
    auto builtin_action(const std::string & name) -> std::shared_ptr<const OrbitAction>;
    auto builtin_action_names() -> std::vector<std::string>;
}

#endif
