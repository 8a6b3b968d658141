#ifndef ORBITSOLVE_ORBIT_SPACE_HPP
#define ORBITSOLVE_ORBIT_SPACE_HPP

#include <orbitsolve/errors.hpp>
#include <orbitsolve/orbit.hpp>
#include <orbitsolve/structure.hpp>

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace orbitsolve
{
    /// All bound-avoiding complete types on n positions, in canonical order
    /// (lexicographic on serialize()). Throws CapacityError if n > capacity.
    auto enumerate_orbits(const Template & tmpl, int n, int capacity = default_capacity) -> std::vector<Orbit>;

    /// Enumerated orbits of one template, indexed by length, with lookup and cached
    /// restriction tables. Levels are computed on first use; safe to share between threads.
    class OrbitSpace
    {
    public:
        explicit OrbitSpace(std::shared_ptr<const Template> tmpl, int capacity = default_capacity);
        ~OrbitSpace();

        OrbitSpace(const OrbitSpace &) = delete;
        auto operator=(const OrbitSpace &) -> OrbitSpace & = delete;

        auto base() const -> const Template & { return *_template; }
        auto base_ptr() const -> const std::shared_ptr<const Template> & { return _template; }
        auto signature() const -> const Signature & { return _template->signature(); }
        auto capacity() const -> int { return _capacity; }

        auto orbits(int n) const -> const std::vector<Orbit> &;
        auto count(int n) const -> int { return int(orbits(n).size()); }
        auto orbit(int n, int index) const -> const Orbit & { return orbits(n)[index]; }

        auto find(const Orbit & orbit) const -> std::optional<int>;
        /// Throws InputError if the type is not a valid orbit of this template.
        auto index_of(const Orbit & orbit) const -> int;

        /// Labels look like "2:O1": tuple length, then the zero-based canonical index.
        auto label(int n, int index) const -> std::string;
        auto parse_label(const std::string & label) const -> std::pair<int, int>;

        /// Index of the (n-1)-orbit obtained by deleting `position`.
        auto drop(int n, int index, int position) const -> int;

        /// Index of the restriction of orbit `index` (length n) to the positions whose bits
        /// are set in `mask`, taken in increasing order. Tables are built per length on demand.
        auto restrict_mask(int n, int index, unsigned mask) const -> int;

        /// Index of the restriction to an arbitrary position list (repeats allowed).
        auto restrict_to(int n, int index, std::span<const int> positions) const -> int;

        /// The (n+1)-orbits whose restriction to the first n positions is orbit `index`.
        /// n = 0 (with index 0) yields every 1-orbit.
        auto children(int n, int index) const -> std::span<const int>;

    private:
        struct Level;

        auto level(int n) const -> Level &;

        std::shared_ptr<const Template> _template;
        int _capacity;
        std::vector<std::unique_ptr<Level>> _levels;
    };
}

#endif
