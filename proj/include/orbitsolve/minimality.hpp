#ifndef ORBITSOLVE_MINIMALITY_HPP
#define ORBITSOLVE_MINIMALITY_HPP

#include <orbitsolve/finite_csp.hpp>
#include <orbitsolve/reduct.hpp>

#include <map>
#include <vector>

namespace orbitsolve
{
    enum class MinimalityStatus
    {
        Fixpoint,
        Refuted
    };

    auto to_string(MinimalityStatus s) -> std::string;

    struct MinimalityOptions
    {
        /// Visit the b-subsets in reverse canonical order (the fixpoint must not change).
        bool reverse_schedule = false;
    };

    struct MinimalityResult
    {
        MinimalityStatus status = MinimalityStatus::Fixpoint;
        int a = 0;
        int b = 0;
        int rounds = 0;
        /// Some constraint spans more than b variables and was never checked.
        bool incomplete_enforcement = false;
        /// pruned_counts[s] = orbits removed from subsets of size s (index 0 unused),
        /// counting both the initial constraint filter and propagation.
        std::vector<long> pruned_counts;
        /// Allowed orbit indices per subset of at most a variables (sorted variable ids).
        std::map<std::vector<int>, std::vector<int>> domains;

        auto refuted() const -> bool { return status == MinimalityStatus::Refuted; }
    };

    /// (a,b)-minimality directly on an instance over a reduct. Requires 1 <= a <= b and
    /// b >= the base's maximal arity; with fewer than b variables every variable forms the
    /// single b-subset. Throws CapacityError if b-orbits exceed the orbit-space capacity.
    auto ab_minimality(const Reduct & reduct, const ResolvedInstance & instance, int a, int b, const MinimalityOptions & options = {})
        -> MinimalityResult;
    auto ab_minimality(const Reduct & reduct, const Instance & instance, int a, int b, const MinimalityOptions & options = {})
        -> MinimalityResult;

    /// (2g,3g)-minimality: the counterpart on I of (2,3)-minimality on the reduced instance
    /// whose variables are g-subsets. The default g = 2 gives (4,6).
    auto reduced_minimality(const Reduct & reduct, const ResolvedInstance & instance, int granularity = 2) -> MinimalityResult;

    /// The reduced instance over pairs of variables: one CSP variable per pair i<j (in
    /// lexicographic order) ranging over the pair orbits allowed by the constraints inside
    /// it, and one table per triple i<j<k on its three pairs, listing the restrictions of
    /// the triple orbits that satisfy the constraints inside the triple. Exact whenever
    /// the minimum window size is 3; throws InputError on constraints over more than 3
    /// variables or on templates needing larger windows.
    auto pair_reduction(const Reduct & reduct, const ResolvedInstance & instance) -> FiniteCsp;

    /// (2,3)-minimality on pair_reduction(...).
    auto reduce_then_minimality(const Reduct & reduct, const ResolvedInstance & instance) -> FiniteMinimalityResult;
}

#endif
