#ifndef ORBITSOLVE_IO_HPP
#define ORBITSOLVE_IO_HPP

#include <orbitsolve/finite_csp.hpp>
#include <orbitsolve/minimality.hpp>
#include <orbitsolve/oracle.hpp>
#include <orbitsolve/orbit_action.hpp>
#include <orbitsolve/reduct.hpp>
#include <orbitsolve/reduction.hpp>

#include <json.hpp>

#include <filesystem>
#include <memory>
#include <string>

namespace orbitsolve::io
{
    using json = nlohmann::ordered_json;

    /// Reads and parses a JSON file. Throws InputError on missing files or bad syntax.
    auto read_json(const std::filesystem::path & path) -> json;
    auto read_text(const std::filesystem::path & path) -> std::string;

    /// Template format: {"name"?, "relations": [{"name","arity"}], "bounds": [[literal, ...], ...]}
    /// with literals {"pol": "+"|"-", "rel": name or "=", "args": [1-based positions]}.
    auto template_from_json(const json & j, const std::string & fallback_name = "template") -> std::shared_ptr<const Template>;
    auto template_to_json(const Template & tmpl) -> json;

    /// A catalog template id or a path to a template JSON file.
    auto load_template(const std::string & ref) -> std::shared_ptr<const Template>;

    /// Reduct format: {"name"?, "base": template ref or inline template, "relations":
    /// [{"name","arity", "formula" | "orbits": [labels], "empty"?: bool}]}.
    /// Relative base paths resolve against `dir`.
    auto reduct_from_json(const json & j, const std::filesystem::path & dir, int capacity, const std::string & fallback_name = "reduct")
        -> std::shared_ptr<const Reduct>;
    /// Relations are written as orbit label lists.
    auto reduct_to_json(const Reduct & reduct, const std::string & base_ref) -> json;

    /// A catalog reduct or template id, or a path to a reduct or template JSON file. A
    /// template yields the reduct carrying its own relations.
    auto load_reduct(const std::string & ref, int capacity) -> std::shared_ptr<const Reduct>;

    /// Instance format: {"vars": [names], "constraints": [[relation, [names]], ...]}.
    auto instance_from_json(const json & j) -> Instance;
    auto instance_to_json(const Instance & instance) -> json;
    auto load_instance(const std::filesystem::path & path) -> Instance;

    /// Explicit finite template: {"name"?, "domain": [values], "relations": [{"name","arity","tuples"}]}
    /// with tuples written as domain values.
    auto finite_template_from_json(const json & j, const std::string & fallback_name = "finite") -> ExplicitFiniteTemplate;
    auto finite_template_to_json(const ExplicitFiniteTemplate & tmpl) -> json;
    auto is_finite_template(const json & j) -> bool;
    /// A catalog finite fixture id or a path to a finite template file.
    auto load_finite_template(const std::string & ref) -> std::optional<ExplicitFiniteTemplate>;
    auto finite_instance(const ExplicitFiniteTemplate & tmpl, const Instance & instance) -> FiniteCsp;

    /// An orbit as label, equality blocks and 1-based facts per relation.
    auto orbit_to_json(const OrbitSpace & space, int n, int index) -> json;

    auto finite_instance_to_json(const FiniteInstance & fi) -> json;
    auto verdict_to_json(const OrbitSpace & space, const OracleVerdict & verdict, const std::vector<std::string> & names) -> json;
    auto minimality_to_json(const OrbitSpace & space, const MinimalityResult & result, const std::vector<std::string> & names,
        bool with_domains) -> json;
    auto action_to_json(const OrbitAction & action) -> json;
    auto canonicity_to_json(const OrbitAction & action, const std::optional<CanonicityWitness> & witness) -> json;
    auto identity_to_json(const OrbitAction & action, const std::optional<IdentityCounterexample> & cex) -> json;

    /// Catalog entries in their file formats (templates, reducts with formulas, finite templates).
    auto catalog_list_json() -> json;
    auto catalog_export(const std::string & id) -> json;
}

#endif
