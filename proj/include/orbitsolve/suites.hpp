#ifndef ORBITSOLVE_SUITES_HPP
#define ORBITSOLVE_SUITES_HPP

#include <orbitsolve/io.hpp>

#include <string>
#include <vector>

namespace orbitsolve::suites
{
    struct Check
    {
        std::string name;
        bool passed = false;
        std::string detail;
        /// Informational checks are reported but never fail the suite.
        bool required = true;
    };

    /// Minimality decisions gathered over a suite: refuted by (2,3), refuted by (4,6),
    /// and unsatisfiable according to ground truth. A violation is an instance where
    /// refuted(2,3) does not imply refuted(4,6) or refuted(4,6) does not imply UNSAT.
    struct Tally
    {
        long instances = 0;
        long refuted23 = 0;
        long refuted46 = 0;
        long unsat = 0;
        long violations = 0;

        auto record(bool r23, bool r46, bool is_unsat) -> bool;
        auto merge(const Tally & other) -> void;
    };

    struct Report
    {
        std::string suite;
        int criterion = 0;
        std::vector<Check> checks = {};
        std::optional<Tally> tally = {};
        io::json data = io::json::object();

        auto passed() const -> bool;
    };

    /// Suite names in criterion order: orbit-counts, fork-instance, acyclicity,
    /// betweenness, equality, hypergraph-actions, unary, monotonicity, determinism.
    auto names() -> std::vector<std::string>;

    /// Runs one suite. "monotonicity" reruns the four instance suites and checks the
    /// inclusions of their tallies; "determinism" runs every other suite twice and
    /// compares the serialized reports byte for byte.
    auto run(const std::string & name) -> Report;

    /// Criterion 8 from already computed instance-suite reports.
    auto monotonicity(const std::vector<Report> & reports) -> Report;
    /// Criterion 9: reruns the suites behind `first` and compares serialized reports.
    auto determinism(const std::vector<Report> & first) -> Report;

    auto to_json(const Report & report) -> io::json;

    /// The canonical ternary action on unary-m orbits used to generate the unary suite:
    /// positions are equal iff equal in all three arguments, and each position takes the
    /// majority part of its three arguments (the first argument's part on a three-way tie).
    auto unary_majority(std::shared_ptr<const OrbitSpace> space, int depth) -> OrbitAction;

    /// Does the directed graph (edges over vertices 0..n-1) contain a directed cycle?
    auto has_directed_cycle(int n, const std::vector<std::pair<int, int>> & edges) -> bool;
}

#endif
