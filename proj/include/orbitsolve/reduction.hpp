#ifndef ORBITSOLVE_REDUCTION_HPP
#define ORBITSOLVE_REDUCTION_HPP

#include <orbitsolve/finite_csp.hpp>
#include <orbitsolve/reduct.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace orbitsolve
{
    struct WindowOverlap
    {
        int first = 0;
        int second = 0;
        std::vector<int> shared; // variable ids, ascending
    };

    struct WindowMembership
    {
        int constraint = 0;
        int window = 0;
    };

    /// The finite-domain image of an instance. Windows are sorted variable sets of size
    /// `window_size`; each takes a value from its domain of orbit indices (length
    /// window_size). Membership constraints are unary on windows and have already been
    /// applied to the domains; they are listed for inspection.
    struct FiniteInstance
    {
        std::shared_ptr<const OrbitSpace> space;
        int var_count = 0;
        int window_size = 0;
        std::vector<std::string> variable_names;
        std::vector<std::vector<int>> windows;
        std::vector<std::vector<int>> domains;
        std::vector<WindowOverlap> overlaps;
        std::vector<WindowMembership> memberships;
    };

    /// Smallest window size for which the reduction is exact: large enough for every bound,
    /// for equality transitivity (3), for congruence of k-ary facts (k+1), and for the
    /// distinct variables of every constraint.
    auto minimum_window_size(const Reduct & reduct, const ResolvedInstance & instance) -> int;

    /// Throws InputError if an explicit window size is below the minimum or a constraint
    /// does not fit, and CapacityError if the window size exceeds the orbit-space capacity.
    auto reduce_instance(const Reduct & reduct, const ResolvedInstance & instance, std::optional<int> window_size = std::nullopt)
        -> FiniteInstance;
    auto reduce_instance(const Reduct & reduct, const Instance & instance, std::optional<int> window_size = std::nullopt)
        -> FiniteInstance;

    /// Window i becomes CSP variable i; value j stands for orbit domains[i][j].
    auto to_finite_csp(const FiniteInstance & finite) -> FiniteCsp;

    struct GlueConflict
    {
        int first = 0;
        int second = 0;
    };

    /// `assignment[i]` is an orbit index for window i (not a domain position). Returns the
    /// full type on all variables, or the first overlapping window pair that disagrees.
    auto glue_solution(const FiniteInstance & finite, const std::vector<int> & assignment) -> std::variant<Orbit, GlueConflict>;

    /// Converts a CSP solution (domain positions) into window orbit indices.
    auto assignment_orbits(const FiniteInstance & finite, const std::vector<int> & csp_assignment) -> std::vector<int>;
}

#endif
