#ifndef ORBITSOLVE_FINITE_CSP_HPP
#define ORBITSOLVE_FINITE_CSP_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace orbitsolve
{
    /// Extensional constraint. The scope may repeat a variable; a tuple then only
    /// matches assignments giving equal values at the repeated positions.
    struct TableConstraint
    {
        std::vector<int> scope;
        std::vector<std::vector<int>> tuples;
    };

    /// Binary constraint "class(first) == class(second)", with classes given per value.
    /// Encodes window-overlap agreement without materialising a pair table.
    struct ProjectionConstraint
    {
        int first = 0;
        int second = 0;
        std::vector<int> first_class;
        std::vector<int> second_class;
    };

    /// A finite-domain CSP. Variable i takes values 0..domain_sizes[i]-1.
    struct FiniteCsp
    {
        std::vector<int> domain_sizes;
        std::vector<TableConstraint> tables;
        std::vector<ProjectionConstraint> projections;

        auto var_count() const -> int { return int(domain_sizes.size()); }
    };

    enum class SolveStatus
    {
        Sat,
        Unsat,
        Limit
    };

    auto to_string(SolveStatus s) -> std::string;

    struct SolveOptions
    {
        std::uint64_t node_budget = 20'000'000;
        bool reverse_values = false;
    };

    struct SolveResult
    {
        SolveStatus status = SolveStatus::Unsat;
        std::vector<int> assignment;
        std::uint64_t nodes = 0;
    };

    /// Backtracking with arc-consistency propagation; smallest domain first, values
    /// ascending (or descending with reverse_values). Exceeding the node budget yields
    /// SolveStatus::Limit, never a wrong answer.
    auto solve_finite(const FiniteCsp & csp, const SolveOptions & options = {}) -> SolveResult;

    /// Number of solutions; throws CapacityError once `limit` is exceeded.
    auto count_solutions(const FiniteCsp & csp, std::uint64_t limit = 1'000'000) -> std::uint64_t;

    /// Independent check of a total assignment against every constraint.
    auto verify_assignment(const FiniteCsp & csp, std::span<const int> assignment) -> bool;

    struct FiniteMinimalityResult
    {
        bool refuted = false;
        int rounds = 0;
        bool incomplete_enforcement = false;
        /// Allowed value tuples per subset of at most `a` variables.
        std::map<std::vector<int>, std::vector<std::vector<int>>> relations;
    };

    /// (a,b)-minimality on a finite CSP: maintains relations on all subsets of at most
    /// `a` variables, propagated through every b-subset until a fixpoint.
    auto finite_ab_minimality(const FiniteCsp & csp, int a, int b) -> FiniteMinimalityResult;

    /// A finite template given by its elements and extensional relations.
    class ExplicitFiniteTemplate
    {
    public:
        struct Relation
        {
            std::string name;
            int arity = 0;
            std::vector<std::vector<int>> tuples;
        };

        ExplicitFiniteTemplate(std::string name, std::vector<std::string> domain, std::vector<Relation> relations);

        auto name() const -> const std::string & { return _name; }
        auto domain() const -> const std::vector<std::string> & { return _domain; }
        auto relations() const -> const std::vector<Relation> & { return _relations; }
        auto find(const std::string & name) const -> const Relation *;

    private:
        std::string _name;
        std::vector<std::string> _domain;
        std::vector<Relation> _relations;
    };

    struct ExplicitConstraint
    {
        std::string relation;
        std::vector<int> scope;
    };

    /// The CSP instance over an explicit template; throws InputError on unknown
    /// relations, arity mismatches or out-of-range variables.
    auto explicit_instance(const ExplicitFiniteTemplate & tmpl, int var_count, const std::vector<ExplicitConstraint> & constraints) -> FiniteCsp;
}

#endif
