#include <orbitsolve/templates.hpp>

using std::make_shared;
using std::shared_ptr;
using std::string;
using std::to_string;
using std::vector;

namespace orbitsolve::templates
{
    namespace
    {
        auto pos(int relation, vector<int> args) -> Literal { return Literal{true, Atom::rel(relation, std::move(args))}; }
        auto neg(int relation, vector<int> args) -> Literal { return Literal{false, Atom::rel(relation, std::move(args))}; }
        auto neq(int a, int b) -> Literal { return Literal{false, Atom::equality(a, b)}; }

        auto order_bounds(int lt) -> vector<Bound>
        {
            return {
                Bound{2, {neq(0, 1), neg(lt, {0, 1}), neg(lt, {1, 0})}},
                Bound{1, {pos(lt, {0, 0})}},
                Bound{3, {pos(lt, {0, 1}), pos(lt, {1, 2}), neg(lt, {0, 2})}},
            };
        }

        auto hypergraph_bounds(int e) -> vector<Bound>
        {
            return {
                Bound{2, {pos(e, {0, 0, 1})}},
                Bound{2, {pos(e, {0, 1, 0})}},
                Bound{2, {pos(e, {1, 0, 0})}},
                Bound{3, {pos(e, {0, 1, 2}), neg(e, {1, 0, 2})}},
                Bound{3, {pos(e, {0, 1, 2}), neg(e, {2, 1, 0})}},
                Bound{3, {pos(e, {0, 1, 2}), neg(e, {0, 2, 1})}},
            };
        }
    }

    auto q_order() -> shared_ptr<const Template>
    {
        return make_shared<const Template>("q-order", Signature{{{"<", 2}}}, order_bounds(0));
    }

    auto equality() -> shared_ptr<const Template>
    {
        return make_shared<const Template>("equality", Signature{}, vector<Bound>{});
    }

    auto unary(int parts) -> shared_ptr<const Template>
    {
        vector<RelationSymbol> rels;
        for (int i = 1; i <= parts; ++i)
            rels.push_back({"A" + to_string(i), 1});

        vector<Bound> bounds;
        for (int i = 0; i < parts; ++i)
            for (int j = i + 1; j < parts; ++j)
                bounds.push_back(Bound{1, {pos(i, {0}), pos(j, {0})}});
        Bound none{1, {}};
        for (int i = 0; i < parts; ++i)
            none.literals.push_back(neg(i, {0}));
        bounds.push_back(std::move(none));

        return make_shared<const Template>("unary-" + to_string(parts), Signature{std::move(rels)}, std::move(bounds));
    }

    auto random_graph() -> shared_ptr<const Template>
    {
        return make_shared<const Template>("random-graph", Signature{{{"E", 2}}},
            vector<Bound>{
                Bound{1, {pos(0, {0, 0})}},
                Bound{2, {pos(0, {0, 1}), neg(0, {1, 0})}},
            });
    }

    auto hypergraph() -> shared_ptr<const Template>
    {
        return make_shared<const Template>("hypergraph", Signature{{{"E", 3}}}, hypergraph_bounds(0));
    }

    auto hypergraph_ordered() -> shared_ptr<const Template>
    {
        auto bounds = hypergraph_bounds(0);
        for (auto & b : order_bounds(1))
            bounds.push_back(std::move(b));
        return make_shared<const Template>("hypergraph-ordered", Signature{{{"E", 3}, {"<", 2}}}, std::move(bounds));
    }
}
