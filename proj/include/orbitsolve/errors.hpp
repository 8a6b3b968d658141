#ifndef ORBITSOLVE_ERRORS_HPP
#define ORBITSOLVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orbitsolve
{
    /// Malformed input: unknown symbols, arity mismatches, bad files.
    class InputError : public std::runtime_error
    {
    public:
        explicit InputError(const std::string & what) : std::runtime_error(what) {}
    };

    /// An enumeration or search would exceed a configured size limit.
    class CapacityError : public std::runtime_error
    {
    public:
        explicit CapacityError(const std::string & what) : std::runtime_error(what) {}
    };

    inline constexpr int default_capacity = 7;
}

#endif
