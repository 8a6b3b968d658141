#include <orbitsolve/catalog.hpp>
#include <orbitsolve/templates.hpp>

#include <cctype>
#include <map>
#include <mutex>

using std::shared_ptr;
using std::string;
using std::vector;

namespace orbitsolve::catalog
{
    auto to_string(Kind kind) -> string
    {
        switch (kind) {
        case Kind::Template: return "template";
        case Kind::Reduct: return "reduct";
        case Kind::Finite: return "finite";
        case Kind::Note: return "note";
        }
        return "?";
    }

    namespace
    {
        auto unary_parts(const string & id) -> int
        {
            if (id.rfind("unary-", 0) != 0 || id.size() == 6)
                return 0;
            for (size_t i = 6; i < id.size(); ++i)
                if (! std::isdigit(static_cast<unsigned char>(id[i])))
                    return 0;
            if (id.size() > 8)
                return 0;
            return std::stoi(id.substr(6));
        }

        const vector<Entry> & entries()
        {
            static const vector<Entry> all{
                {"q-order", Kind::Template, "the rationals with their strict order"},
                {"equality", Kind::Template, "a countable set with equality only"},
                {"unary-2", Kind::Template, "a countable set split into two infinite parts A1, A2"},
                {"unary-3", Kind::Template, "a countable set split into three infinite parts A1, A2, A3"},
                {"random-graph", Kind::Template, "the countable random graph"},
                {"hypergraph", Kind::Template, "the random 3-uniform hypergraph"},
                {"hypergraph-ordered", Kind::Template, "the random 3-uniform hypergraph with a random linear order"},
                {"betweenness", Kind::Reduct, "q-order with B(x,y,z): y strictly between x and z"},
                {"neq", Kind::Reduct, "equality with the disequality N"},
                {"Z", Kind::Reduct, "equality with N and Z(x1,x2,x3,x4) = x1!=x2 or x3=x4"},
                {"eq-or-eq", Kind::Reduct, "equality with N and R(x1,x2,x3,x4) = x1=x2 or x3=x4 (NP-complete)"},
                {"q-order-Z", Kind::Reduct, "q-order with Z(x1,x2,x3,x4) = x1!=x2 or x3=x4"},
                {"one-in-three", Kind::Finite, "Boolean 1-in-3-SAT"},
                {"two-sat", Kind::Finite, "all 16 binary Boolean relations"},
                {"three-coloring", Kind::Finite, "three colours with disequality"},
                {"gf2-linear", Kind::Finite, "linear equations x+y=z over the two-element field"},
                {"diophantine-note", Kind::Note,
                    "the integers with 1, addition and multiplication; its CSP is undecidable, so it has no loadable template"},
            };
            return all;
        }

        const std::map<string, ReductSource> & reduct_sources()
        {
            static const std::map<string, ReductSource> all{
                {"betweenness", {"q-order", {{"B", 3, "(1<2 & 2<3) | (3<2 & 2<1)"}}}},
                {"neq", {"equality", {{"N", 2, "~(1=2)"}}}},
                {"Z", {"equality", {{"N", 2, "~(1=2)"}, {"Z", 4, "~(1=2) | 3=4"}}}},
                {"eq-or-eq", {"equality", {{"N", 2, "~(1=2)"}, {"R", 4, "1=2 | 3=4"}}}},
                {"q-order-Z", {"q-order", {{"Z", 4, "~(1=2) | 3=4"}}}},
            };
            return all;
        }
    }

    auto list() -> vector<Entry>
    {
        return entries();
    }

    auto get(const string & id) -> Entry
    {
        for (auto & e : entries())
            if (e.id == id)
                return e;
        if (int m = unary_parts(id); m >= 1)
            return Entry{id, Kind::Template, "a countable set split into " + std::to_string(m) + " infinite parts"};
        throw InputError("unknown catalog entry '" + id + "'");
    }

    auto base_template(const string & id) -> shared_ptr<const Template>
    {
        if (id == "q-order")
            return templates::q_order();
        if (id == "equality")
            return templates::equality();
        if (id == "random-graph")
            return templates::random_graph();
        if (id == "hypergraph")
            return templates::hypergraph();
        if (id == "hypergraph-ordered")
            return templates::hypergraph_ordered();
        if (int m = unary_parts(id); m >= 1)
            return templates::unary(m);
        if (get(id).kind == Kind::Note)
            throw InputError("catalog entry '" + id + "' is documentation only and cannot be loaded");
        throw InputError("catalog entry '" + id + "' is not a template");
    }

    auto space(const string & template_id, int capacity) -> shared_ptr<const OrbitSpace>
    {
        static std::mutex lock;
        static std::map<std::pair<string, int>, shared_ptr<const OrbitSpace>> cache;
        std::lock_guard guard{lock};
        auto & slot = cache[{template_id, capacity}];
        if (! slot)
            slot = std::make_shared<const OrbitSpace>(base_template(template_id), capacity);
        return slot;
    }

    auto reduct_source(const string & id) -> ReductSource
    {
        auto it = reduct_sources().find(id);
        if (it == reduct_sources().end())
            throw InputError("catalog entry '" + id + "' is not a reduct");
        return it->second;
    }

    auto reduct(const string & id, int capacity) -> shared_ptr<const Reduct>
    {
        auto kind = get(id).kind;
        if (kind == Kind::Template)
            return std::make_shared<const Reduct>(Reduct::of_template(space(id, capacity)));
        auto source = reduct_source(id);
        auto sp = space(source.base, capacity);
        vector<ReductRelation> relations;
        for (auto & r : source.relations)
            relations.push_back(compile_reduct_relation(*sp, r.name, r.arity, r.formula));
        return std::make_shared<const Reduct>(id, sp, std::move(relations));
    }

    auto finite(const string & id) -> ExplicitFiniteTemplate
    {
        using Relation = ExplicitFiniteTemplate::Relation;
        if (id == "one-in-three")
            return ExplicitFiniteTemplate{id, {"0", "1"}, {Relation{"R", 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}}};
        if (id == "two-sat") {
            vector<Relation> relations;
            for (int bits = 0; bits < 16; ++bits) {
                // bit 3 = (0,0), bit 2 = (0,1), bit 1 = (1,0), bit 0 = (1,1)
                Relation r{"R", 2, {}};
                for (int t = 0; t < 4; ++t) {
                    bool in = bits & (8 >> t);
                    r.name += in ? '1' : '0';
                    if (in)
                        r.tuples.push_back({t >> 1, t & 1});
                }
                relations.push_back(std::move(r));
            }
            return ExplicitFiniteTemplate{id, {"0", "1"}, std::move(relations)};
        }
        if (id == "three-coloring") {
            Relation neq{"neq", 2, {}};
            for (int x = 0; x < 3; ++x)
                for (int y = 0; y < 3; ++y)
                    if (x != y)
                        neq.tuples.push_back({x, y});
            return ExplicitFiniteTemplate{id, {"red", "green", "blue"}, {neq}};
        }
        if (id == "gf2-linear") {
            Relation sum{"sum", 3, {}};
            for (int x = 0; x < 2; ++x)
                for (int y = 0; y < 2; ++y)
                    sum.tuples.push_back({x, y, x ^ y});
            return ExplicitFiniteTemplate{id, {"0", "1"}, {Relation{"zero", 1, {{0}}}, Relation{"one", 1, {{1}}}, sum}};
        }
        if (get(id).kind == Kind::Note)
            throw InputError("catalog entry '" + id + "' is documentation only and cannot be loaded");
        throw InputError("catalog entry '" + id + "' is not a finite template");
    }
}
