#ifndef ORBITSOLVE_ORACLE_HPP
#define ORBITSOLVE_ORACLE_HPP

#include <orbitsolve/reduct.hpp>

#include <string>
#include <vector>

namespace orbitsolve
{
    /// Ground truth: every solution of an instance up to orbit equivalence.
    struct OracleVerdict
    {
        bool sat = false;
        int var_count = 0;
        std::vector<int> solution_orbits; // indices into space.orbits(var_count), ascending

        auto count() const -> std::size_t { return solution_orbits.size(); }
    };

    /// Enumerates every bound-avoiding complete type on all variables and keeps those
    /// satisfying every constraint. Exponential; throws CapacityError past the space capacity.
    auto type_space_decide(const Reduct & reduct, const Instance & instance) -> OracleVerdict;
    auto type_space_decide(const Reduct & reduct, const ResolvedInstance & instance) -> OracleVerdict;

    /// Independent second oracle for reducts of (Q;<): tries every weak order of the
    /// variables, building each constraint's orbit directly from ranks.
    auto weak_order_decide(const Reduct & reduct, const Instance & instance) -> OracleVerdict;
    auto weak_order_decide(const Reduct & reduct, const ResolvedInstance & instance) -> OracleVerdict;

    /// The q-order type of a rank vector (equal ranks are equal, smaller ranks are smaller).
    auto orbit_of_ranks(const std::vector<int> & ranks) -> Orbit;

    /// Renders a (Q;<) type on named variables as a chain, e.g. "s(x1)<s(x2)=s(x3)".
    auto describe_chain(const Orbit & orbit, const std::vector<std::string> & names) -> std::string;
}

#endif
