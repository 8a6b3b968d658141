#include <orbitsolve/catalog.hpp>
#include <orbitsolve/io.hpp>
#include <orbitsolve/suites.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace orbitsolve;
using io::json;

// Structured results cross the boundary as JSON text; the Python package decodes them.
namespace
{
    auto orbits(const std::string & ref, int n, int capacity) -> std::string
    {
        if (n < 1)
            throw InputError("n must be at least 1");
        auto space = std::make_shared<const OrbitSpace>(io::load_template(ref), capacity);
        json out = json::array();
        for (int o = 0; o < space->count(n); ++o)
            out.push_back(io::orbit_to_json(*space, n, o));
        return out.dump();
    }

    auto oracle(const std::string & reduct_ref, const std::string & instance, bool weak_order, int capacity) -> std::string
    {
        auto reduct = io::load_reduct(reduct_ref, capacity);
        auto inst = io::instance_from_json(json::parse(instance));
        auto verdict = weak_order ? weak_order_decide(*reduct, inst) : type_space_decide(*reduct, inst);
        auto j = io::verdict_to_json(reduct->space(), verdict, inst.variables);
        j["sat"] = verdict.sat;
        return j.dump();
    }

    auto minimality(const std::string & reduct_ref, const std::string & instance, int a, int b, bool domains, bool reverse, int capacity)
        -> std::string
    {
        auto reduct = io::load_reduct(reduct_ref, capacity);
        auto inst = io::instance_from_json(json::parse(instance));
        auto result = ab_minimality(*reduct, inst, a, b, {reverse});
        return io::minimality_to_json(reduct->space(), result, inst.variables, domains).dump();
    }

    auto reduce(const std::string & reduct_ref, const std::string & instance, std::optional<int> window, int capacity) -> std::string
    {
        auto reduct = io::load_reduct(reduct_ref, capacity);
        auto fi = reduce_instance(*reduct, io::instance_from_json(json::parse(instance)), window);
        return io::finite_instance_to_json(fi).dump();
    }

    auto solve(const std::string & ref, const std::string & instance, std::uint64_t budget, int capacity) -> std::string
    {
        auto inst = io::instance_from_json(json::parse(instance));
        if (auto finite = io::load_finite_template(ref)) {
            auto result = solve_finite(io::finite_instance(*finite, inst), {budget, false});
            json j{{"status", to_string(result.status)}, {"nodes", result.nodes}};
            if (result.status == SolveStatus::Sat) {
                j["assignment"] = json::object();
                for (size_t v = 0; v < inst.variables.size(); ++v)
                    j["assignment"][inst.variables[v]] = finite->domain()[result.assignment[v]];
            }
            return j.dump();
        }
        auto reduct = io::load_reduct(ref, capacity);
        auto fi = reduce_instance(*reduct, inst);
        auto result = solve_finite(to_finite_csp(fi), {budget, false});
        json j{{"status", to_string(result.status)}, {"nodes", result.nodes}, {"windowSize", fi.window_size}};
        if (result.status == SolveStatus::Sat) {
            auto glued = glue_solution(fi, assignment_orbits(fi, result.assignment));
            auto & orbit = std::get<Orbit>(glued);
            j["witnessOrbit"] = io::orbit_to_json(reduct->space(), int(inst.variables.size()), reduct->space().index_of(orbit));
        }
        return j.dump();
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Native core of orbitsolve";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_RuntimeError);

    m.attr("default_capacity") = default_capacity;

    m.def(
        "orbit_count", [](const std::string & ref, int n, int capacity) { return OrbitSpace(io::load_template(ref), capacity).count(n); },
        py::arg("template"), py::arg("n"), py::arg("capacity") = default_capacity);
    m.def("orbits", &orbits, py::arg("template"), py::arg("n"), py::arg("capacity") = default_capacity);
    m.def("oracle", &oracle, py::arg("reduct"), py::arg("instance"), py::arg("weak_order") = false, py::arg("capacity") = default_capacity);
    m.def("minimality", &minimality, py::arg("reduct"), py::arg("instance"), py::arg("a") = 2, py::arg("b") = 3, py::arg("domains") = false,
        py::arg("reverse") = false, py::arg("capacity") = default_capacity);
    m.def("reduce", &reduce, py::arg("reduct"), py::arg("instance"), py::arg("window") = std::nullopt, py::arg("capacity") = default_capacity);
    m.def("solve", &solve, py::arg("template"), py::arg("instance"), py::arg("node_budget") = SolveOptions{}.node_budget,
        py::arg("capacity") = default_capacity);

    m.def("suite_names", &suites::names);
    m.def(
        "run_suite", [](const std::string & name) { return suites::to_json(suites::run(name)).dump(); },
        py::arg("name"), py::call_guard<py::gil_scoped_release>());

    m.def("catalog_list", [] { return io::catalog_list_json().dump(); });
    m.def("catalog_export", [](const std::string & id) { return io::catalog_export(id).dump(); }, py::arg("id"));
}
