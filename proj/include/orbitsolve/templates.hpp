#ifndef ORBITSOLVE_TEMPLATES_HPP
#define ORBITSOLVE_TEMPLATES_HPP

#include <orbitsolve/structure.hpp>

#include <memory>

namespace orbitsolve::templates
{
    /// (Q;<): strict linear order, bounded by incomparability, reflexivity and intransitivity.
    auto q_order() -> std::shared_ptr<const Template>;

    /// Pure equality: no relations, no bounds.
    auto equality() -> std::shared_ptr<const Template>;

    /// Partition of an infinite set into m infinite parts A1..Am.
    auto unary(int parts) -> std::shared_ptr<const Template>;

    /// The random graph: symmetric irreflexive E.
    auto random_graph() -> std::shared_ptr<const Template>;

    /// The random 3-hypergraph H: totally symmetric ternary E on injective tuples.
    auto hypergraph() -> std::shared_ptr<const Template>;

    /// (H,<): the random 3-hypergraph with a random linear order.
    auto hypergraph_ordered() -> std::shared_ptr<const Template>;
}

#endif
