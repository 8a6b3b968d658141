#include <orbitsolve/catalog.hpp>
#include <orbitsolve/io.hpp>

#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using std::optional;
using std::shared_ptr;
using std::string;
using std::vector;

namespace orbitsolve::io
{
    namespace
    {
        auto require(const json & j, const char * key, const string & where) -> const json &
        {
            if (! j.is_object() || ! j.contains(key))
                throw InputError(where + ": missing field \"" + key + "\"");
            return j.at(key);
        }

        template <typename T>
        auto get_as(const json & j, const string & where) -> T
        {
            try {
                return j.get<T>();
            }
            catch (const json::exception &) {
                throw InputError(where + ": unexpected value " + j.dump());
            }
        }

        auto looks_like_path(const string & ref) -> bool
        {
            return ref.find('/') != string::npos || ref.ends_with(".json") || fs::exists(ref);
        }

        auto is_catalog_id(const string & ref) -> bool
        {
            try {
                catalog::get(ref);
                return true;
            }
            catch (const InputError &) {
                return false;
            }
        }

        auto require_file(const string & ref) -> void
        {
            if (! fs::exists(ref))
                throw InputError("'" + ref + "' is neither a catalog entry nor an existing file");
        }

        auto is_template_json(const json & j) -> bool
        {
            return j.is_object() && j.contains("relations") && ! j.contains("base") && ! j.contains("domain");
        }
    }

    auto read_text(const fs::path & path) -> string
    {
        std::ifstream in(path, std::ios::binary);
        if (! in)
            throw InputError("cannot read file '" + path.string() + "'");
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    auto read_json(const fs::path & path) -> json
    {
        auto text = read_text(path);
        try {
            return json::parse(text);
        }
        catch (const json::parse_error & e) {
            throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
        }
    }

    auto template_from_json(const json & j, const string & fallback_name) -> shared_ptr<const Template>
    {
        string where = "template";
        auto name = j.is_object() && j.contains("name") ? get_as<string>(j["name"], where) : fallback_name;
        vector<RelationSymbol> symbols;
        for (auto & r : require(j, "relations", where)) {
            auto rname = get_as<string>(require(r, "name", where), where);
            auto arity = get_as<int>(require(r, "arity", where), where);
            symbols.push_back({rname, arity});
        }
        Signature sig{symbols};
        vector<Bound> bounds;
        if (j.contains("bounds"))
            for (auto & b : j["bounds"]) {
                if (! b.is_array())
                    throw InputError(where + ": a bound must be a list of literals");
                Bound bound;
                for (auto & lit : b) {
                    auto pol = get_as<string>(require(lit, "pol", where), where);
                    if (pol != "+" && pol != "-")
                        throw InputError(where + ": literal polarity must be \"+\" or \"-\", got \"" + pol + "\"");
                    auto rel = get_as<string>(require(lit, "rel", where), where);
                    auto args = get_as<vector<int>>(require(lit, "args", where), where);
                    for (auto & a : args) {
                        if (a < 1)
                            throw InputError(where + ": literal positions are 1-based");
                        bound.var_count = std::max(bound.var_count, a);
                        --a;
                    }
                    Atom atom;
                    if (rel == "=") {
                        if (args.size() != 2)
                            throw InputError(where + ": an equality literal takes 2 positions");
                        atom = Atom::equality(args[0], args[1]);
                    }
                    else {
                        auto idx = sig.index_of(rel);
                        if (! idx)
                            throw InputError(where + ": bound uses unknown relation '" + rel + "'");
                        atom = Atom::rel(int(*idx), args);
                    }
                    bound.literals.push_back({pol == "+", atom});
                }
                bounds.push_back(std::move(bound));
            }
        return std::make_shared<const Template>(name, sig, bounds);
    }

    auto template_to_json(const Template & tmpl) -> json
    {
        json j;
        j["name"] = tmpl.name();
        j["relations"] = json::array();
        for (auto & r : tmpl.signature().relations())
            j["relations"].push_back({{"name", r.name}, {"arity", r.arity}});
        j["bounds"] = json::array();
        for (auto & b : tmpl.bounds()) {
            json lits = json::array();
            for (auto & l : b.literals) {
                vector<int> args;
                for (auto a : l.atom.args)
                    args.push_back(a + 1);
                lits.push_back({{"pol", l.positive ? "+" : "-"},
                    {"rel", l.atom.is_equality() ? string("=") : tmpl.signature()[l.atom.relation].name}, {"args", args}});
            }
            j["bounds"].push_back(lits);
        }
        return j;
    }

    auto load_template(const string & ref) -> shared_ptr<const Template>
    {
        if (! looks_like_path(ref) && is_catalog_id(ref))
            return catalog::base_template(ref);
        require_file(ref);
        return template_from_json(read_json(ref), fs::path(ref).stem().string());
    }

    namespace
    {
        auto base_space(const json & base, const fs::path & dir, int capacity) -> shared_ptr<const OrbitSpace>
        {
            if (base.is_object())
                return std::make_shared<const OrbitSpace>(template_from_json(base), capacity);
            auto ref = get_as<string>(base, "reduct base");
            if (! looks_like_path(ref) && is_catalog_id(ref))
                return catalog::space(ref, capacity);
            auto path = fs::path(ref).is_absolute() ? fs::path(ref) : dir / ref;
            return std::make_shared<const OrbitSpace>(template_from_json(read_json(path), path.stem().string()), capacity);
        }
    }

    auto reduct_from_json(const json & j, const fs::path & dir, int capacity, const string & fallback_name) -> shared_ptr<const Reduct>
    {
        string where = "reduct";
        auto sp = base_space(require(j, "base", where), dir, capacity);
        auto name = j.contains("name") ? get_as<string>(j["name"], where) : fallback_name;
        vector<ReductRelation> relations;
        for (auto & r : require(j, "relations", where)) {
            auto rname = get_as<string>(require(r, "name", where), where);
            auto arity = get_as<int>(require(r, "arity", where), where);
            bool empty = r.contains("empty") && get_as<bool>(r["empty"], where);
            if (r.contains("formula") == r.contains("orbits"))
                throw InputError(where + ": relation '" + rname + "' needs exactly one of \"formula\" and \"orbits\"");
            if (r.contains("formula")) {
                relations.push_back(compile_reduct_relation(*sp, rname, arity, get_as<string>(r["formula"], where), empty));
                continue;
            }
            vector<int> orbits;
            for (auto & label : get_as<vector<string>>(r["orbits"], where)) {
                auto [n, idx] = sp->parse_label(label);
                if (n != arity)
                    throw InputError(where + ": relation '" + rname + "' of arity " + std::to_string(arity) + " lists orbit " + label);
                orbits.push_back(idx);
            }
            relations.emplace_back(*sp, rname, arity, orbits, empty);
        }
        return std::make_shared<const Reduct>(name, sp, std::move(relations));
    }

    auto reduct_to_json(const Reduct & reduct, const string & base_ref) -> json
    {
        json j;
        j["name"] = reduct.name();
        j["base"] = base_ref;
        j["relations"] = json::array();
        for (auto * r : reduct.declared()) {
            json labels = json::array();
            for (auto o : r->orbits())
                labels.push_back(reduct.space().label(r->arity(), o));
            json rel{{"name", r->name()}, {"arity", r->arity()}, {"orbits", labels}};
            if (r->orbits().empty())
                rel["empty"] = true;
            j["relations"].push_back(rel);
        }
        return j;
    }

    auto load_reduct(const string & ref, int capacity) -> shared_ptr<const Reduct>
    {
        if (! looks_like_path(ref) && is_catalog_id(ref))
            return catalog::reduct(ref, capacity);
        require_file(ref);
        auto j = read_json(ref);
        auto stem = fs::path(ref).stem().string();
        if (is_template_json(j))
            return std::make_shared<const Reduct>(Reduct::of_template(std::make_shared<const OrbitSpace>(template_from_json(j, stem), capacity)));
        return reduct_from_json(j, fs::path(ref).parent_path(), capacity, stem);
    }

    auto instance_from_json(const json & j) -> Instance
    {
        string where = "instance";
        Instance inst;
        inst.variables = get_as<vector<string>>(require(j, "vars", where), where);
        for (auto & c : require(j, "constraints", where)) {
            if (! c.is_array() || c.size() != 2)
                throw InputError(where + ": a constraint is [relation, [variables]], got " + c.dump());
            inst.constraints.push_back({get_as<string>(c[0], where), get_as<vector<string>>(c[1], where)});
        }
        return inst;
    }

    auto instance_to_json(const Instance & instance) -> json
    {
        json cons = json::array();
        for (auto & c : instance.constraints)
            cons.push_back(json::array({c.relation, c.scope}));
        return {{"vars", instance.variables}, {"constraints", cons}};
    }

    auto load_instance(const fs::path & path) -> Instance
    {
        return instance_from_json(read_json(path));
    }

    auto is_finite_template(const json & j) -> bool
    {
        return j.is_object() && j.contains("domain");
    }

    auto finite_template_from_json(const json & j, const string & fallback_name) -> ExplicitFiniteTemplate
    {
        string where = "finite template";
        auto name = j.contains("name") ? get_as<string>(j["name"], where) : fallback_name;
        vector<string> domain;
        for (auto & v : require(j, "domain", where))
            domain.push_back(v.is_string() ? v.get<string>() : v.dump());
        auto value_index = [&](const json & v) {
            auto text = v.is_string() ? v.get<string>() : v.dump();
            auto it = std::find(domain.begin(), domain.end(), text);
            if (it == domain.end())
                throw InputError(where + ": value " + v.dump() + " is not in the domain");
            return int(it - domain.begin());
        };
        vector<ExplicitFiniteTemplate::Relation> relations;
        for (auto & r : require(j, "relations", where)) {
            ExplicitFiniteTemplate::Relation rel;
            rel.name = get_as<string>(require(r, "name", where), where);
            rel.arity = get_as<int>(require(r, "arity", where), where);
            for (auto & t : require(r, "tuples", where)) {
                if (! t.is_array())
                    throw InputError(where + ": a tuple must be a list");
                vector<int> tuple;
                for (auto & v : t)
                    tuple.push_back(value_index(v));
                rel.tuples.push_back(tuple);
            }
            relations.push_back(std::move(rel));
        }
        return ExplicitFiniteTemplate{name, domain, relations};
    }

    auto finite_template_to_json(const ExplicitFiniteTemplate & tmpl) -> json
    {
        json j;
        j["name"] = tmpl.name();
        j["domain"] = tmpl.domain();
        j["relations"] = json::array();
        for (auto & r : tmpl.relations()) {
            json tuples = json::array();
            for (auto & t : r.tuples) {
                json row = json::array();
                for (auto v : t)
                    row.push_back(tmpl.domain()[v]);
                tuples.push_back(row);
            }
            j["relations"].push_back({{"name", r.name}, {"arity", r.arity}, {"tuples", tuples}});
        }
        return j;
    }

    auto load_finite_template(const string & ref) -> optional<ExplicitFiniteTemplate>
    {
        if (! looks_like_path(ref)) {
            if (is_catalog_id(ref) && catalog::get(ref).kind == catalog::Kind::Finite)
                return catalog::finite(ref);
            return std::nullopt;
        }
        auto j = read_json(ref);
        if (! is_finite_template(j))
            return std::nullopt;
        return finite_template_from_json(j, fs::path(ref).stem().string());
    }

    auto finite_instance(const ExplicitFiniteTemplate & tmpl, const Instance & instance) -> FiniteCsp
    {
        vector<ExplicitConstraint> cons;
        for (auto & c : instance.constraints) {
            ExplicitConstraint e{c.relation, {}};
            for (auto & v : c.scope) {
                auto it = std::find(instance.variables.begin(), instance.variables.end(), v);
                if (it == instance.variables.end())
                    throw InputError("constraint " + c.relation + " uses undeclared variable '" + v + "'");
                e.scope.push_back(int(it - instance.variables.begin()));
            }
            cons.push_back(std::move(e));
        }
        return explicit_instance(tmpl, int(instance.variables.size()), cons);
    }

    auto orbit_to_json(const OrbitSpace & space, int n, int index) -> json
    {
        auto & o = space.orbit(n, index);
        json facts = json::object();
        for (size_t r = 0; r < o.relation_count(); ++r) {
            json list = json::array();
            for (auto & t : o.facts(r)) {
                json row = json::array();
                for (auto p : t)
                    row.push_back(int(p) + 1);
                list.push_back(row);
            }
            facts[space.signature()[r].name] = list;
        }
        vector<int> blocks(o.blocks().begin(), o.blocks().end());
        return {{"label", space.label(n, index)}, {"eq", blocks}, {"facts", facts}};
    }

    auto finite_instance_to_json(const FiniteInstance & fi) -> json
    {
        auto names = [&](const vector<int> & vars) {
            vector<string> out;
            for (auto v : vars)
                out.push_back(fi.variable_names[v]);
            return out;
        };
        json windows = json::array(), domains = json::array(), overlaps = json::array(), memberships = json::array();
        for (auto & w : fi.windows)
            windows.push_back(names(w));
        for (auto & d : fi.domains) {
            json labels = json::array();
            for (auto o : d)
                labels.push_back(fi.space->label(fi.window_size, o));
            domains.push_back(labels);
        }
        for (auto & o : fi.overlaps)
            overlaps.push_back({{"first", o.first}, {"second", o.second}, {"shared", names(o.shared)}});
        for (auto & m : fi.memberships)
            memberships.push_back({{"constraint", m.constraint}, {"window", m.window}});
        return {{"variables", fi.variable_names}, {"windowSize", fi.window_size}, {"windows", windows}, {"domains", domains},
            {"overlaps", overlaps}, {"memberships", memberships}};
    }

    auto verdict_to_json(const OrbitSpace & space, const OracleVerdict & verdict, const vector<string> & names) -> json
    {
        json sols = json::array();
        bool chain = space.signature() == catalog::base_template("q-order")->signature() && space.base().bounds() == catalog::base_template("q-order")->bounds();
        for (auto o : verdict.solution_orbits) {
            auto entry = orbit_to_json(space, verdict.var_count, o);
            if (chain)
                entry["description"] = describe_chain(space.orbit(verdict.var_count, o), names);
            sols.push_back(entry);
        }
        return {{"status", verdict.sat ? "SAT" : "UNSAT"}, {"count", verdict.count()}, {"solutions", sols}};
    }

    auto minimality_to_json(const OrbitSpace & space, const MinimalityResult & result, const vector<string> & names, bool with_domains) -> json
    {
        json j;
        j["status"] = to_string(result.status);
        j["a"] = result.a;
        j["b"] = result.b;
        j["rounds"] = result.rounds;
        j["prunedCounts"] = result.pruned_counts;
        j["incompleteEnforcement"] = result.incomplete_enforcement;
        if (with_domains && ! result.refuted()) {
            json domains = json::array();
            for (auto & [vars, dom] : result.domains) {
                vector<string> vs;
                for (auto v : vars)
                    vs.push_back(names[v]);
                json labels = json::array();
                for (auto o : dom)
                    labels.push_back(space.label(int(vars.size()), o));
                domains.push_back({{"vars", vs}, {"orbits", labels}});
            }
            j["domains"] = domains;
        }
        return j;
    }

    namespace
    {
        auto labels_of(const OrbitSpace & space, int n, const vector<int> & args) -> json
        {
            json out = json::array();
            for (auto a : args)
                out.push_back(space.label(n, a));
            return out;
        }
    }

    auto action_to_json(const OrbitAction & action) -> json
    {
        auto & sp = action.space();
        json tables = json::object();
        for (int n = 1; n <= action.depth(); ++n) {
            json cells = json::object();
            for (size_t c = 0; c < action.cell_count(n); ++c) {
                auto args = action.cell_args(n, c);
                string key;
                for (size_t i = 0; i < args.size(); ++i)
                    key += (i ? "," : "") + sp.label(n, args[i]);
                int out = action.cell_output(n, c);
                cells[key] = {{"output", out < 0 ? json(nullptr) : json(sp.label(n, out))}, {"provenance", to_string(action.cell_provenance(n, c))}};
            }
            tables[std::to_string(n)] = cells;
        }
        return {{"name", action.name()}, {"base", sp.base().name()}, {"arity", action.arity()}, {"depth", action.depth()}, {"tables", tables}};
    }

    auto canonicity_to_json(const OrbitAction & action, const optional<CanonicityWitness> & witness) -> json
    {
        if (! witness)
            return {{"canonical", true}};
        auto & sp = action.space();
        int n = witness->n;
        return {{"canonical", false},
            {"witness",
                {{"n", n}, {"firstArgs", labels_of(sp, n, witness->first_args)}, {"secondArgs", labels_of(sp, n, witness->second_args)},
                    {"firstOutput", sp.label(n, witness->first_output)}, {"secondOutput", sp.label(n, witness->second_output)}}}};
    }

    auto identity_to_json(const OrbitAction & action, const optional<IdentityCounterexample> & cex) -> json
    {
        if (! cex)
            return {{"holds", true}};
        auto & sp = action.space();
        int n = cex->n;
        return {{"holds", false},
            {"counterexample",
                {{"n", n}, {"inputs", labels_of(sp, n, cex->inputs)}, {"leftArgs", labels_of(sp, n, cex->left_args)},
                    {"rightArgs", labels_of(sp, n, cex->right_args)}, {"leftOutput", sp.label(n, cex->left_output)},
                    {"rightOutput", sp.label(n, cex->right_output)}}}};
    }

    auto catalog_list_json() -> json
    {
        json out = json::array();
        for (auto & e : catalog::list())
            out.push_back({{"id", e.id}, {"kind", catalog::to_string(e.kind)}, {"summary", e.summary}});
        return out;
    }

    auto catalog_export(const string & id) -> json
    {
        auto entry = catalog::get(id);
        switch (entry.kind) {
        case catalog::Kind::Template: return template_to_json(*catalog::base_template(id));
        case catalog::Kind::Finite: return finite_template_to_json(catalog::finite(id));
        case catalog::Kind::Reduct: {
            auto source = catalog::reduct_source(id);
            json rels = json::array();
            for (auto & r : source.relations)
                rels.push_back({{"name", r.name}, {"arity", r.arity}, {"formula", r.formula}});
            return {{"name", id}, {"base", source.base}, {"relations", rels}};
        }
        case catalog::Kind::Note: throw InputError("catalog entry '" + id + "' is documentation only: " + entry.summary);
        }
        return {};
    }
}
