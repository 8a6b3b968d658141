#ifndef ORBITSOLVE_REDUCT_HPP
#define ORBITSOLVE_REDUCT_HPP

#include <orbitsolve/formula.hpp>
#include <orbitsolve/orbit_space.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace orbitsolve
{
    /// A relation of a first-order reduct: a union of orbits of the base template.
    class ReductRelation
    {
    public:
        /// `orbits` are indices into space.orbits(arity). An empty set is rejected
        /// unless `allow_empty` is set.
        ReductRelation(const OrbitSpace & space, std::string name, int arity, std::vector<int> orbits, bool allow_empty = false);

        auto name() const -> const std::string & { return _name; }
        auto arity() const -> int { return _arity; }
        auto orbits() const -> const std::vector<int> & { return _orbits; }
        auto allow_empty() const -> bool { return _allow_empty; }
        auto contains(int orbit) const -> bool { return _member[orbit] != 0; }

    private:
        std::string _name;
        int _arity;
        std::vector<int> _orbits;
        std::vector<char> _member;
        bool _allow_empty;
    };

    /// The orbits of length `arity` satisfying `formula`.
    auto compile_reduct_relation(const OrbitSpace & space, const std::string & name, int arity, const Formula & formula,
        bool allow_empty = false) -> ReductRelation;

    auto compile_reduct_relation(const OrbitSpace & space, const std::string & name, int arity, const std::string & formula,
        bool allow_empty = false) -> ReductRelation;

    /// A first-order reduct. Besides its declared relations, every base relation and the
    /// relations "=" and "!=" can be used in constraints under their own names.
    class Reduct
    {
    public:
        Reduct(std::string name, std::shared_ptr<const OrbitSpace> space, std::vector<ReductRelation> relations);

        /// The reduct whose only relations are the base relations themselves.
        static auto of_template(std::shared_ptr<const OrbitSpace> space) -> Reduct;

        auto name() const -> const std::string & { return _name; }
        auto space() const -> const OrbitSpace & { return *_space; }
        auto space_ptr() const -> const std::shared_ptr<const OrbitSpace> & { return _space; }
        auto base() const -> const Template & { return _space->base(); }

        /// Declared relations only.
        auto declared() const -> std::vector<const ReductRelation *>;
        auto declared_count() const -> std::size_t { return _declared; }

        auto relation_count() const -> std::size_t { return _relations.size(); }
        auto relation(std::size_t id) const -> const ReductRelation & { return _relations[id]; }
        auto find(const std::string & name) const -> std::optional<std::size_t>;

    private:
        std::string _name;
        std::shared_ptr<const OrbitSpace> _space;
        std::vector<ReductRelation> _relations;
        std::size_t _declared = 0;
    };

    struct Constraint
    {
        std::string relation;
        std::vector<std::string> scope;

        auto operator==(const Constraint &) const -> bool = default;
    };

    struct Instance
    {
        std::vector<std::string> variables;
        std::vector<Constraint> constraints;

        auto operator==(const Instance &) const -> bool = default;
    };

    struct ValidationReport
    {
        std::vector<std::string> errors;

        auto ok() const -> bool { return errors.empty(); }
        auto summary() const -> std::string;
    };

    /// Checks names, arities and variable references; never throws.
    auto validate_instance(const Reduct & reduct, const Instance & instance) -> ValidationReport;

    struct ResolvedConstraint
    {
        std::size_t relation;
        std::vector<int> scope;
    };

    /// An instance with names resolved to indices.
    struct ResolvedInstance
    {
        int var_count = 0;
        std::vector<ResolvedConstraint> constraints;
    };

    /// Throws InputError carrying the validation report if the instance is invalid.
    auto resolve(const Reduct & reduct, const Instance & instance) -> ResolvedInstance;

    /// Does the n-orbit `orbit` (over the instance's variables listed in `vars`, which
    /// must cover the constraint's scope) satisfy the constraint?
    auto satisfies(const Reduct & reduct, const ResolvedConstraint & constraint, int n, int orbit, std::span<const int> vars) -> bool;

    /// A constraint read on its distinct variables: `vars` sorted ascending, and `ok[o]`
    /// tells whether orbit o of length vars.size() (over those variables in that order)
    /// satisfies it. Repeated scope variables are collapsed through the equality pattern.
    struct CompiledConstraint
    {
        std::vector<int> vars;
        std::vector<char> ok;
    };

    auto compile_constraint(const Reduct & reduct, const ResolvedConstraint & constraint) -> CompiledConstraint;

    /// Bit mask selecting `sub` inside the sorted variable list `vars`, or nullopt if some
    /// variable of `sub` is missing.
    auto mask_within(std::span<const int> sub, std::span<const int> vars) -> std::optional<unsigned>;

    /// Builds instances programmatically; variables are named x1..xn.
    auto make_instance(int var_count, const std::vector<std::pair<std::string, std::vector<int>>> & constraints) -> Instance;
}

#endif
