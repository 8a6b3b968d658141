#ifndef ORBITSOLVE_TOOLS_CLI_HPP
#define ORBITSOLVE_TOOLS_CLI_HPP

#include <ostream>

namespace orbitsolve::cli
{
    enum ExitCode : int
    {
        Success = 0,
        Negative = 1, // UNSAT, refuted, or a claim that does not hold
        BadInput = 2,
        Capacity = 3,
    };

    /// Runs one command line and writes the report to `out` (or to the --out file).
    auto run(int argc, const char * const * argv, std::ostream & out) -> int;
}

#endif
