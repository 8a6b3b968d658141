#ifndef ORBITSOLVE_CATALOG_HPP
#define ORBITSOLVE_CATALOG_HPP

#include <orbitsolve/finite_csp.hpp>
#include <orbitsolve/reduct.hpp>

#include <memory>
#include <string>
#include <vector>

namespace orbitsolve::catalog
{
    enum class Kind
    {
        Template,
        Reduct,
        Finite,
        Note
    };

    auto to_string(Kind kind) -> std::string;

    struct Entry
    {
        std::string id;
        Kind kind;
        std::string summary;
    };

    /// Every built-in entry in a fixed order. "unary-m" is listed for m = 2 and 3 but
    /// `get` accepts any m >= 1.
    auto list() -> std::vector<Entry>;

    /// Throws InputError on unknown ids.
    auto get(const std::string & id) -> Entry;

    auto base_template(const std::string & id) -> std::shared_ptr<const Template>;

    /// Orbit spaces are shared per (template, capacity) for the life of the process.
    auto space(const std::string & template_id, int capacity = default_capacity) -> std::shared_ptr<const OrbitSpace>;

    /// A reduct entry, or for a template id the reduct carrying just the base relations.
    auto reduct(const std::string & id, int capacity = default_capacity) -> std::shared_ptr<const Reduct>;

    auto finite(const std::string & id) -> ExplicitFiniteTemplate;

    /// The formula source of each declared relation of a reduct entry.
    struct RelationSource
    {
        std::string name;
        int arity;
        std::string formula;
    };

    struct ReductSource
    {
        std::string base;
        std::vector<RelationSource> relations;
    };

    auto reduct_source(const std::string & id) -> ReductSource;
}

#endif
