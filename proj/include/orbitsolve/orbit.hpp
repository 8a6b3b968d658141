#ifndef ORBITSOLVE_ORBIT_HPP
#define ORBITSOLVE_ORBIT_HPP

#include <orbitsolve/structure.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace orbitsolve
{
    using Tuple = std::vector<std::uint8_t>;

    /// A complete quantifier-free type of an n-tuple: an equality pattern on the
    /// positions plus, for each relation, the position tuples on which it holds.
    /// Facts are stored for every position tuple (not just block representatives),
    /// sorted lexicographically; anything absent is false.
    class Orbit
    {
    public:
        Orbit() = default;

        /// `blocks[i]` names the equality class of position i; any labelling is accepted
        /// and normalised to restricted-growth form.
        Orbit(std::vector<std::uint8_t> blocks, std::vector<std::vector<Tuple>> facts);

        auto size() const -> int { return int(_blocks.size()); }
        auto blocks() const -> const std::vector<std::uint8_t> & { return _blocks; }
        auto block_count() const -> int;
        auto relation_count() const -> std::size_t { return _facts.size(); }
        auto facts(std::size_t relation) const -> const std::vector<Tuple> & { return _facts[relation]; }
        auto all_facts() const -> const std::vector<std::vector<Tuple>> & { return _facts; }

        auto equal(int i, int j) const -> bool { return _blocks[i] == _blocks[j]; }
        auto holds(std::size_t relation, const Tuple & positions) const -> bool;
        auto injective() const -> bool { return block_count() == size(); }
        auto constant() const -> bool { return block_count() == 1; }

        /// Positions i, j with i < j that are equal; pairs in lexicographic order.
        auto equal_pairs() const -> std::vector<std::pair<int, int>>;

        auto operator==(const Orbit &) const -> bool = default;

    private:
        std::vector<std::uint8_t> _blocks;
        std::vector<std::vector<Tuple>> _facts;
    };

    /// Text form used for canonical ordering and as a stable key: the restricted-growth
    /// string of the equality pattern, then `;name:` and the 1-based fact tuples for each
    /// relation in signature order. Digits are base-36.
    auto serialize(const Orbit & orbit, const Signature & signature) -> std::string;
    auto deserialize_orbit(const std::string & text, const Signature & signature) -> Orbit;

    /// Does some map from the bound's variables to positions make every literal true?
    auto realizes_bound(const Orbit & orbit, const Bound & bound) -> bool;

    /// Eq-congruence: facts are closed under replacing positions by equal positions.
    auto is_eq_congruent(const Orbit & orbit) -> bool;

    /// Induced type on the listed positions, in the given order. Repeated positions are
    /// allowed and produce equal positions in the result. Throws InputError on range errors.
    auto restrict_orbit(const Orbit & orbit, std::span<const int> positions) -> Orbit;

    /// Keeps only the facts of the relations in `to`, which must be a sub-signature of `from`.
    auto project_orbit(const Orbit & orbit, const Signature & from, const Signature & to) -> Orbit;

    /// Evaluate one atom of a formula or bound under a position map.
    auto atom_holds(const Orbit & orbit, const Atom & atom, std::span<const int> map) -> bool;
}

#endif
