#include "cli.hpp"

#include <orbitsolve/catalog.hpp>
#include <orbitsolve/io.hpp>
#include <orbitsolve/suites.hpp>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fs = std::filesystem;
using orbitsolve::io::json;
using std::optional;
using std::string;
using std::vector;

namespace orbitsolve::cli
{
    namespace
    {
        struct Outcome
        {
            string status;
            json payload = json::object();
            int exit = Success;
        };

        auto capacity() -> int
        {
            const char * env = std::getenv("ORBITSOLVE_MAX_N");
            if (! env || ! *env)
                return default_capacity;
            char * end = nullptr;
            long value = std::strtol(env, &end, 10);
            if (*end || value < 1 || value > 12)
                throw InputError("ORBITSOLVE_MAX_N must be an integer between 1 and 12, got '" + string(env) + "'");
            return int(value);
        }

        auto sha256_hex(const string & data) -> string
        {
            unsigned char digest[EVP_MAX_MD_SIZE];
            unsigned int length = 0;
            EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
            std::ostringstream s;
            for (unsigned i = 0; i < length; ++i)
                s << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
            return s.str();
        }

        // Files are recorded by content hash; anything else is a catalog or built-in name.
        auto input_entry(const string & ref) -> json
        {
            if (fs::is_regular_file(ref))
                return {{"path", ref}, {"sha256", sha256_hex(io::read_text(ref))}};
            return {{"name", ref}};
        }

        auto is_order_signature(const Signature & sig) -> bool
        {
            return sig == Signature{{{"<", 2}}};
        }

        auto orbit_json(const OrbitSpace & space, int n, int index, const vector<string> & names) -> json
        {
            auto j = io::orbit_to_json(space, n, index);
            if (is_order_signature(space.signature()))
                j["description"] = describe_chain(space.orbit(n, index), names);
            return j;
        }

        auto default_names(int n) -> vector<string>
        {
            vector<string> names;
            for (int i = 1; i <= n; ++i)
                names.push_back("x" + std::to_string(i));
            return names;
        }

        // ------------------------------------------------------------------ commands

        auto cmd_orbits(const string & ref, int n) -> Outcome
        {
            auto tmpl = io::load_template(ref);
            auto space = std::make_shared<const OrbitSpace>(tmpl, capacity());
            if (n < 1)
                throw InputError("--n must be at least 1");
            json orbits = json::array();
            auto names = default_names(n);
            for (int o = 0; o < space->count(n); ++o)
                orbits.push_back(orbit_json(*space, n, o, names));
            return {"ok", {{"template", tmpl->name()}, {"n", n}, {"count", space->count(n)}, {"orbits", orbits}}};
        }

        auto cmd_reduce(const string & reduct_ref, const string & instance_path, optional<int> window) -> Outcome
        {
            auto reduct = io::load_reduct(reduct_ref, capacity());
            auto inst = io::load_instance(instance_path);
            auto fi = reduce_instance(*reduct, inst, window);
            return {"ok", io::finite_instance_to_json(fi)};
        }

        auto cmd_minimality(const string & reduct_ref, const string & instance_path, int a, int b, bool domains, bool reverse) -> Outcome
        {
            auto reduct = io::load_reduct(reduct_ref, capacity());
            auto inst = io::load_instance(instance_path);
            auto result = ab_minimality(*reduct, inst, a, b, {reverse});
            auto payload = io::minimality_to_json(reduct->space(), result, inst.variables, domains);
            return {to_string(result.status), payload, result.refuted() ? Negative : Success};
        }

        auto cmd_solve(const string & ref, const string & instance_path, std::uint64_t budget) -> Outcome
        {
            auto inst = io::load_instance(instance_path);
            if (auto finite = io::load_finite_template(ref)) {
                auto csp = io::finite_instance(*finite, inst);
                auto result = solve_finite(csp, {budget, false});
                json payload{{"status", to_string(result.status)}, {"nodes", result.nodes}};
                if (result.status == SolveStatus::Sat) {
                    json values = json::object();
                    for (size_t v = 0; v < inst.variables.size(); ++v)
                        values[inst.variables[v]] = finite->domain()[result.assignment[v]];
                    payload["assignment"] = values;
                }
                int code = result.status == SolveStatus::Sat ? Success : result.status == SolveStatus::Unsat ? Negative : BadInput;
                return {to_string(result.status), payload, code};
            }
            auto reduct = io::load_reduct(ref, capacity());
            auto fi = reduce_instance(*reduct, inst);
            auto result = solve_finite(to_finite_csp(fi), {budget, false});
            json payload{{"status", to_string(result.status)}, {"nodes", result.nodes}, {"windowSize", fi.window_size}};
            if (result.status == SolveStatus::Sat) {
                auto glued = glue_solution(fi, assignment_orbits(fi, result.assignment));
                if (! std::holds_alternative<Orbit>(glued))
                    throw std::logic_error("solver witness does not glue");
                int n = int(inst.variables.size());
                int index = reduct->space().index_of(std::get<Orbit>(glued));
                payload["witnessOrbit"] = orbit_json(reduct->space(), n, index, inst.variables);
            }
            int code = result.status == SolveStatus::Sat ? Success : result.status == SolveStatus::Unsat ? Negative : BadInput;
            return {to_string(result.status), payload, code};
        }

        auto cmd_oracle(const string & reduct_ref, const string & instance_path, bool weak_order) -> Outcome
        {
            auto reduct = io::load_reduct(reduct_ref, capacity());
            auto inst = io::load_instance(instance_path);
            if (weak_order && ! is_order_signature(reduct->space().signature()))
                throw InputError("--weak-order needs a reduct of q-order");
            auto verdict = weak_order ? weak_order_decide(*reduct, inst) : type_space_decide(*reduct, inst);
            auto payload = io::verdict_to_json(reduct->space(), verdict, inst.variables);
            payload["oracle"] = weak_order ? "weak-order" : "type-space";
            return {verdict.sat ? "SAT" : "UNSAT", payload, verdict.sat ? Success : Negative};
        }

        auto parse_modulo(const OrbitAction & action, const string & text) -> Signature
        {
            vector<string> names;
            std::stringstream s(text);
            for (string item; std::getline(s, item, ',');)
                if (! item.empty()) {
                    if (! action.space().signature().index_of(item))
                        throw InputError("relation '" + item + "' is not in the signature of " + action.space().base().name());
                    names.push_back(item);
                }
            return action.space().signature().restricted_to(names);
        }

        auto cmd_check_canonical(const string & name, const string & modulo, bool skip_completed, bool table) -> Outcome
        {
            auto action = builtin_action(name);
            auto sub = parse_modulo(*action, modulo);
            auto witness = check_canonical_wrt(*action, sub, skip_completed);
            auto payload = io::canonicity_to_json(*action, witness);
            payload["action"] = name;
            payload["modulo"] = json::array();
            for (auto & r : sub.relations())
                payload["modulo"].push_back(r.name);
            payload["skipCompleted"] = skip_completed;
            if (table)
                payload["table"] = io::action_to_json(*action);
            return {witness ? "not-canonical" : "canonical", payload, witness ? Negative : Success};
        }

        auto cmd_check_identity(const string & spec, bool skip_completed) -> Outcome
        {
            vector<string> parts;
            std::stringstream s(spec);
            for (string item; std::getline(s, item, ':');)
                parts.push_back(item);
            if (! spec.empty() && spec.back() == ':')
                parts.push_back("");
            if (parts.size() < 2 || parts.size() > 3)
                throw InputError("identity spec must look like identity:action[:modulo], got '" + spec + "'");
            auto [kind, pseudo] = parse_identity_kind(parts[0]);
            auto action = builtin_action(parts[1]);
            Identity identity{kind, std::nullopt};
            if (pseudo)
                identity.modulo = parse_modulo(*action, parts.size() == 3 ? parts[2] : "");
            else if (parts.size() == 3)
                throw InputError("only pseudo- identities take a modulo signature");
            auto cex = check_identity(*action, identity, skip_completed);
            auto payload = io::identity_to_json(*action, cex);
            payload["identity"] = parts[0];
            payload["action"] = parts[1];
            if (identity.modulo) {
                payload["modulo"] = json::array();
                for (auto & r : identity.modulo->relations())
                    payload["modulo"].push_back(r.name);
            }
            payload["skipCompleted"] = skip_completed;
            return {cex ? "fails" : "holds", payload, cex ? Negative : Success};
        }

        auto cmd_suite(const string & name) -> Outcome
        {
            auto report = suites::run(name);
            return {report.passed() ? "passed" : "failed", suites::to_json(report), report.passed() ? Success : Negative};
        }

        // ------------------------------------------------------------------ human output

        auto human(const json & report) -> string
        {
            std::ostringstream s;
            auto & p = report["payload"];
            s << report["command"].get<string>() << ": " << report["status"].get<string>() << "\n";
            string cmd = report["command"];
            if (p.contains("error")) {
                s << "  " << p["error"].get<string>() << "\n";
            }
            else if (cmd == "orbits") {
                s << "  " << p["count"] << " orbits of length " << p["n"] << " over " << p["template"].get<string>() << "\n";
                for (auto & o : p["orbits"]) {
                    s << "  " << std::left << std::setw(8) << o["label"].get<string>() << " eq=" << o["eq"].dump();
                    for (auto & [rel, facts] : o["facts"].items())
                        if (! facts.empty())
                            s << " " << rel << "=" << facts.dump();
                    if (o.contains("description"))
                        s << "  " << o["description"].get<string>();
                    s << "\n";
                }
            }
            else if (cmd == "oracle") {
                s << "  " << p["count"] << " solution types\n";
                for (auto & o : p["solutions"])
                    s << "  " << o["label"].get<string>() << (o.contains("description") ? "  " + o["description"].get<string>() : "") << "\n";
            }
            else if (cmd == "minimality") {
                s << "  (" << p["a"] << "," << p["b"] << ") rounds=" << p["rounds"] << " pruned=" << p["prunedCounts"].dump()
                  << (p["incompleteEnforcement"].get<bool>() ? " incomplete enforcement" : "") << "\n";
                if (p.contains("domains"))
                    for (auto & d : p["domains"])
                        s << "  " << d["vars"].dump() << " -> " << d["orbits"].size() << " orbits\n";
            }
            else if (cmd == "suite") {
                for (auto & c : p["checks"])
                    s << "  " << (c["passed"].get<bool>() ? "ok    " : (c.contains("informational") ? "note  " : "FAIL  ")) << c["name"].get<string>()
                      << (c.contains("detail") ? "  (" + c["detail"].get<string>() + ")" : "") << "\n";
            }
            else if (cmd == "catalog" && p.contains("entries")) {
                for (auto & e : p["entries"])
                    s << "  " << std::left << std::setw(20) << e["id"].get<string>() << std::setw(10) << e["kind"].get<string>() << e["summary"].get<string>()
                      << "\n";
            }
            else {
                s << p.dump(2) << "\n";
            }
            return s.str();
        }
    }

    auto run(int argc, const char * const * argv, std::ostream & out) -> int
    {
        CLI::App app{"Constraint satisfaction over homogeneous structures: orbits, reductions, local consistency, oracles and orbit actions.",
            "orbitsolve"};
        app.fallthrough();
        app.require_subcommand(1);
        string out_path;
        bool human_output = false, timing = false;
        app.add_option("--out", out_path, "Write the report to this file instead of stdout");
        app.add_flag("--human", human_output, "Print a readable summary instead of JSON");
        app.add_flag("--timing", timing, "Record the wall time in the report");

        int n = 0, a = 2, b = 3;
        optional<int> window;
        std::uint64_t budget = SolveOptions{}.node_budget;
        string first, second, modulo, catalog_action, catalog_id;
        bool domains = false, reverse = false, skip_completed = false, table = false, weak_order = false;

        auto * orbits = app.add_subcommand("orbits", "List the orbits of n-tuples of a template");
        orbits->add_option("template", first, "Catalog id or template file")->required();
        orbits->add_option("--n", n, "Tuple length")->required();

        auto * reduce = app.add_subcommand("reduce", "Reduce an instance to its finite window instance");
        reduce->add_option("reduct", first, "Catalog id, reduct file or template file")->required();
        reduce->add_option("instance", second, "Instance file")->required();
        reduce->add_option("--window", window, "Window size (default: the smallest exact one)");

        auto * minimality = app.add_subcommand("minimality", "Run (a,b)-minimality");
        minimality->add_option("reduct", first)->required();
        minimality->add_option("instance", second)->required();
        minimality->add_option("--a", a, "Size of the maintained subsets")->capture_default_str();
        minimality->add_option("--b", b, "Size of the propagation subsets")->capture_default_str();
        minimality->add_flag("--domains", domains, "Include the fixpoint domains");
        minimality->add_flag("--reverse", reverse, "Visit subsets in reverse order");

        auto * solve = app.add_subcommand("solve", "Decide an instance by reduction and search, or over a finite template");
        solve->add_option("template", first, "Reduct, template, or finite template (catalog id or file)")->required();
        solve->add_option("instance", second)->required();
        solve->add_option("--node-budget", budget, "Search node limit")->capture_default_str();

        auto * oracle = app.add_subcommand("oracle", "Ground-truth decision by enumerating all solution types");
        oracle->add_option("reduct", first)->required();
        oracle->add_option("instance", second)->required();
        oracle->add_flag("--weak-order", weak_order, "Use the weak-order oracle (q-order reducts only)");

        auto * canonical = app.add_subcommand("check-canonical", "Check canonicity of a built-in action with respect to a sub-signature");
        canonical->add_option("action", first, "Built-in action name")->required();
        canonical->add_option("--modulo", modulo, "Comma-separated relation names (empty for pure equality)")->required();
        canonical->add_flag("--skip-completed", skip_completed, "Ignore cells filled by completion");
        canonical->add_flag("--table", table, "Include the full action table");

        auto * identity = app.add_subcommand("check-identity", "Check an identity: identity:action[:modulo]");
        identity->add_option("spec", first, "e.g. pseudo-cyclic:g:E or siggers:eq-injection6")->required();
        identity->add_flag("--skip-completed", skip_completed, "Ignore instances touching completed cells");

        auto * cat = app.add_subcommand("catalog", "Built-in templates, reducts and finite fixtures");
        cat->require_subcommand(1);
        auto * cat_list = cat->add_subcommand("list", "List catalog entries");
        auto * cat_export = cat->add_subcommand("export", "Export an entry in its file format");
        cat_export->add_option("id", catalog_id)->required();

        auto * suite = app.add_subcommand("suite", "Run an acceptance suite");
        suite->add_option("name", first, "One of: " + [] {
            string s;
            for (auto & n : suites::names())
                s += (s.empty() ? "" : ", ") + n;
            return s;
        }())->required();

        json report{{"command", ""}, {"inputs", json::array()}, {"status", ""}, {"payload", json::object()}, {"wallTimeMs", nullptr}};
        int code = Success;
        auto start = std::chrono::steady_clock::now();
        try {
            try {
                app.parse(argc, argv);
            }
            catch (const CLI::CallForHelp &) {
                out << app.help();
                return Success;
            }
            catch (const CLI::CallForAllHelp &) {
                out << app.help("", CLI::AppFormatMode::All);
                return Success;
            }
            catch (const CLI::ParseError & e) {
                throw InputError(e.what());
            }
            auto * sub = app.get_subcommands().front();
            report["command"] = sub->get_name();
            auto record = [&](const string & ref) { report["inputs"].push_back(input_entry(ref)); };
            Outcome outcome;
            if (sub == orbits) {
                record(first);
                outcome = cmd_orbits(first, n);
            }
            else if (sub == reduce) {
                record(first), record(second);
                outcome = cmd_reduce(first, second, window);
            }
            else if (sub == minimality) {
                record(first), record(second);
                outcome = cmd_minimality(first, second, a, b, domains, reverse);
            }
            else if (sub == solve) {
                record(first), record(second);
                outcome = cmd_solve(first, second, budget);
            }
            else if (sub == oracle) {
                record(first), record(second);
                outcome = cmd_oracle(first, second, weak_order);
            }
            else if (sub == canonical) {
                record(first);
                outcome = cmd_check_canonical(first, modulo, skip_completed, table);
            }
            else if (sub == identity) {
                outcome = cmd_check_identity(first, skip_completed);
            }
            else if (sub == cat) {
                if (cat->got_subcommand(cat_list))
                    outcome = {"ok", {{"entries", io::catalog_list_json()}}};
                else {
                    record(catalog_id);
                    outcome = {"ok", {{"id", catalog_id}, {"export", io::catalog_export(catalog_id)}}};
                }
            }
            else if (sub == suite) {
                record(first);
                outcome = cmd_suite(first);
            }
            report["status"] = outcome.status;
            report["payload"] = outcome.payload;
            code = outcome.exit;
        }
        catch (const InputError & e) {
            report["status"] = "input-error";
            report["payload"] = {{"error", e.what()}};
            code = BadInput;
        }
        catch (const CapacityError & e) {
            report["status"] = "capacity-error";
            report["payload"] = {{"error", e.what()}};
            code = Capacity;
        }
        if (timing)
            report["wallTimeMs"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

        string text = human_output ? human(report) : report.dump(2) + "\n";
        if (out_path.empty())
            out << text;
        else {
            std::ofstream file(out_path, std::ios::binary);
            if (! file) {
                out << "cannot write '" << out_path << "'\n";
                return BadInput;
            }
            file << text;
        }
        return code;
    }
}
