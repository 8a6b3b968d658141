#include <orbitsolve/catalog.hpp>
#include <orbitsolve/suites.hpp>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

using std::string;
using std::vector;

namespace orbitsolve::suites
{
    using io::json;

    auto Tally::record(bool r23, bool r46, bool is_unsat) -> bool
    {
        ++instances;
        refuted23 += r23;
        refuted46 += r46;
        unsat += is_unsat;
        bool ok = (! r23 || r46) && (! r46 || is_unsat);
        violations += ! ok;
        return ok;
    }

    auto Tally::merge(const Tally & other) -> void
    {
        instances += other.instances;
        refuted23 += other.refuted23;
        refuted46 += other.refuted46;
        unsat += other.unsat;
        violations += other.violations;
    }

    auto Report::passed() const -> bool
    {
        return std::all_of(checks.begin(), checks.end(), [](const Check & c) { return c.passed || ! c.required; });
    }

    auto has_directed_cycle(int n, const vector<std::pair<int, int>> & edges) -> bool
    {
        vector<vector<int>> out(n);
        for (auto [u, v] : edges)
            out[u].push_back(v);
        vector<int> colour(n, 0);
        std::function<bool(int)> visit = [&](int u) {
            colour[u] = 1;
            for (auto v : out[u])
                if (colour[v] == 1 || (colour[v] == 0 && visit(v)))
                    return true;
            colour[u] = 2;
            return false;
        };
        for (int u = 0; u < n; ++u)
            if (colour[u] == 0 && visit(u))
                return true;
        return false;
    }

    auto unary_majority(std::shared_ptr<const OrbitSpace> space, int depth) -> OrbitAction
    {
        auto * sp = space.get();
        int parts = int(sp->signature().size());
        auto part = [](const Orbit & o, int position) {
            for (size_t r = 0; r < o.relation_count(); ++r)
                if (o.holds(r, Tuple{std::uint8_t(position)}))
                    return int(r);
            return -1;
        };
        return OrbitAction{"unary-majority", std::move(space), 3, depth, [sp, parts, part](int n, std::span<const int> args) {
                               vector<vector<int>> keys(n);
                               vector<std::uint8_t> blocks(n);
                               vector<vector<Tuple>> facts(parts);
                               for (int i = 0; i < n; ++i) {
                                   int p[3];
                                   for (int k = 0; k < 3; ++k) {
                                       auto & o = sp->orbit(n, args[k]);
                                       keys[i].push_back(o.blocks()[i]);
                                       p[k] = part(o, i);
                                   }
                                   int maj = p[1] == p[2] ? p[1] : p[0];
                                   facts[maj].push_back(Tuple{std::uint8_t(i)});
                               }
                               for (int i = 0; i < n; ++i) {
                                   int first = i;
                                   for (int j = 0; j < i; ++j)
                                       if (keys[j] == keys[i]) {
                                           first = j;
                                           break;
                                       }
                                   blocks[i] = first == i ? std::uint8_t(i) : blocks[first];
                               }
                               return std::pair{sp->index_of(Orbit{std::move(blocks), std::move(facts)}), Provenance::Given};
                           }};
    }

    namespace
    {
        auto check(Report & r, string name, bool passed, string detail = {}, bool required = true) -> void
        {
            r.checks.push_back({std::move(name), passed, std::move(detail), required});
        }

        auto random_below(std::mt19937 & rng, int bound) -> int
        {
            return int(rng() % unsigned(bound));
        }

        // ---------------------------------------------------------------- criterion 1

        auto fubini(int n) -> long
        {
            // ordered set partitions: a(n) = sum_k C(n,k) a(n-k)
            vector<long> a(n + 1, 0);
            a[0] = 1;
            for (int m = 1; m <= n; ++m) {
                long binom = 1;
                for (int k = 1; k <= m; ++k) {
                    binom = binom * (m - k + 1) / k;
                    a[m] += binom * a[m - k];
                }
            }
            return a[n];
        }

        auto bell(int n) -> long
        {
            vector<vector<long>> tri{{1}};
            for (int i = 1; i <= n; ++i) {
                vector<long> row{tri.back().back()};
                for (auto x : tri.back())
                    row.push_back(row.back() + x);
                tri.push_back(row);
            }
            return tri[n][0];
        }

        auto orbit_counts() -> Report
        {
            Report r{.suite = "orbit-counts", .criterion = 1};
            auto count = [](const string & id, int n) { return long(catalog::space(id)->count(n)); };
            auto exact = [&](string name, long got, long expected) {
                check(r, std::move(name), got == expected, "got " + std::to_string(got) + ", expected " + std::to_string(expected));
                r.data[r.checks.back().name] = got;
            };
            vector<long> expected_q{1, 3, 13};
            for (int n = 1; n <= 3; ++n) {
                exact("q-order n=" + std::to_string(n), count("q-order", n), expected_q[n - 1]);
                check(r, "q-order n=" + std::to_string(n) + " equals the ordered set partition count", count("q-order", n) == fubini(n));
            }
            exact("equality n=2", count("equality", 2), 2);
            exact("equality n=3", count("equality", 3), 5);
            for (int n = 2; n <= 3; ++n)
                check(r, "equality n=" + std::to_string(n) + " equals the Bell number", count("equality", n) == bell(n));
            auto ho = catalog::space("hypergraph-ordered");
            long injective = 0;
            for (auto & o : ho->orbits(3))
                injective += o.injective();
            exact("hypergraph-ordered injective triples", injective, 12);
            exact("unary-2 n=2", count("unary-2", 2), 6);
            return r;
        }

        // ---------------------------------------------------------------- criterion 2

        auto fork_instance() -> Report
        {
            Report r{.suite = "fork-instance", .criterion = 2};
            auto q = catalog::reduct("q-order");
            auto inst = make_instance(3, {{"<", {0, 1}}, {"<", {0, 2}}});
            auto verdict = type_space_decide(*q, inst);
            check(r, "three solution types", verdict.count() == 3, "count " + std::to_string(verdict.count()));
            std::set<string> got;
            for (auto o : verdict.solution_orbits)
                got.insert(describe_chain(q->space().orbit(3, o), inst.variables));
            std::set<string> expected{"s(x1)<s(x2)<s(x3)", "s(x1)<s(x3)<s(x2)", "s(x1)<s(x2)=s(x3)"};
            check(r, "descriptions match verbatim", got == expected);
            r.data["descriptions"] = vector<string>(got.begin(), got.end());
            return r;
        }

        // ---------------------------------------------------------------- instance helpers

        struct Decisions
        {
            bool r23 = false;
            bool r46 = false;
        };

        auto minimality_decisions(const Reduct & reduct, const ResolvedInstance & inst) -> Decisions
        {
            return {ab_minimality(reduct, inst, 2, 3).refuted(), reduced_minimality(reduct, inst).refuted()};
        }

        auto solver_sat(const Reduct & reduct, const ResolvedInstance & inst) -> bool
        {
            auto fi = reduce_instance(reduct, inst);
            auto csp = to_finite_csp(fi);
            auto result = solve_finite(csp);
            if (result.status == SolveStatus::Limit)
                throw CapacityError("solver node budget exhausted");
            if (result.status == SolveStatus::Sat) {
                // the witness must glue to a full solution type
                auto glued = glue_solution(fi, assignment_orbits(fi, result.assignment));
                if (! verify_assignment(csp, result.assignment) || ! std::holds_alternative<Orbit>(glued))
                    throw std::logic_error("invalid solver witness");
            }
            return result.status == SolveStatus::Sat;
        }

        auto describe(const Instance & inst) -> string
        {
            return io::instance_to_json(inst).dump();
        }

        // ---------------------------------------------------------------- criterion 3

        auto acyclicity() -> Report
        {
            Report r{.suite = "acyclicity", .criterion = 3};
            Tally tally;
            auto q = catalog::reduct("q-order");
            std::mt19937 rng(3003);
            long minimality_mismatch = 0, solver_mismatch = 0, cyclic = 0;
            json mismatches = json::array();
            for (int round = 0; round < 200; ++round) {
                int n = 2 + random_below(rng, 9);
                vector<std::pair<int, int>> edges;
                vector<std::pair<string, vector<int>>> cons;
                unsigned threshold = unsigned(1200 / n);
                for (int u = 0; u < n; ++u)
                    for (int v = 0; v < n; ++v)
                        if (u != v && rng() % 1000 < threshold) {
                            edges.emplace_back(u, v);
                            cons.push_back({"<", {u, v}});
                        }
                auto inst = make_instance(n, cons);
                auto resolved = resolve(*q, inst);
                bool cycle = has_directed_cycle(n, edges);
                cyclic += cycle;
                auto d = minimality_decisions(*q, resolved);
                bool sat = solver_sat(*q, resolved);
                // ground truth: the oracle where it fits, the cycle test beyond
                bool unsat = n <= q->space().capacity() ? ! type_space_decide(*q, resolved).sat : cycle;
                tally.record(d.r23, d.r46, unsat);
                if (d.r23 != cycle) {
                    ++minimality_mismatch;
                    mismatches.push_back({{"kind", "minimality"}, {"instance", describe(inst)}});
                }
                if (sat == cycle) {
                    ++solver_mismatch;
                    mismatches.push_back({{"kind", "solver"}, {"instance", describe(inst)}});
                }
            }
            check(r, "(2,3) refutes exactly the cyclic digraphs", minimality_mismatch == 0, std::to_string(minimality_mismatch) + " mismatches");
            check(r, "reduce+solve agrees with cycle detection", solver_mismatch == 0, std::to_string(solver_mismatch) + " mismatches");
            r.data["instances"] = 200;
            r.data["cyclic"] = cyclic;
            r.data["mismatches"] = mismatches;
            r.tally = tally;
            return r;
        }

        // ---------------------------------------------------------------- criterion 4

        auto betweenness() -> Report
        {
            Report r{.suite = "betweenness", .criterion = 4};
            Tally tally;
            auto b = catalog::reduct("betweenness");
            long instances = 0, mismatches = 0, sat_count = 0;
            json failures = json::array();
            auto run_one = [&](const Instance & inst) {
                auto resolved = resolve(*b, inst);
                auto wo = weak_order_decide(*b, resolved);
                auto ts = type_space_decide(*b, resolved);
                bool sat = solver_sat(*b, resolved);
                auto d = minimality_decisions(*b, resolved);
                tally.record(d.r23, d.r46, ! ts.sat);
                ++instances;
                sat_count += ts.sat;
                if (wo.solution_orbits != ts.solution_orbits || wo.sat != sat) {
                    ++mismatches;
                    failures.push_back(describe(inst));
                }
            };

            // exhaustive: every set of at most 4 constraints on distinct-variable triples
            for (int n = 1; n <= 4; ++n) {
                vector<vector<int>> triples;
                for (int x = 0; x < n; ++x)
                    for (int y = 0; y < n; ++y)
                        for (int z = 0; z < n; ++z)
                            if (x != y && y != z && x != z)
                                triples.push_back({x, y, z});
                int t = int(triples.size());
                vector<int> pick;
                std::function<void(int)> extend = [&](int from) {
                    vector<std::pair<string, vector<int>>> cons;
                    for (auto i : pick)
                        cons.push_back({"B", triples[i]});
                    run_one(make_instance(n, cons));
                    if (pick.size() == 4)
                        return;
                    for (int i = from; i < t; ++i) {
                        pick.push_back(i);
                        extend(i + 1);
                        pick.pop_back();
                    }
                };
                extend(0);
            }
            long exhaustive = instances;

            std::mt19937 rng(4004);
            for (int round = 0; round < 100; ++round) {
                int n = 3 + random_below(rng, 4);
                int m = 1 + random_below(rng, 2 * n);
                vector<std::pair<string, vector<int>>> cons;
                for (int c = 0; c < m; ++c)
                    cons.push_back({"B", {random_below(rng, n), random_below(rng, n), random_below(rng, n)}});
                run_one(make_instance(n, cons));
            }
            check(r, "solver, weak-order oracle and type-space oracle agree", mismatches == 0,
                std::to_string(mismatches) + " mismatches over " + std::to_string(instances) + " instances");
            r.data["exhaustiveInstances"] = exhaustive;
            r.data["randomInstances"] = instances - exhaustive;
            r.data["satisfiable"] = sat_count;
            r.data["failures"] = failures;
            r.tally = tally;
            return r;
        }

        // ---------------------------------------------------------------- criterion 5

        auto random_instance(std::mt19937 & rng, const Reduct & reduct, const vector<string> & relations, int n, int m) -> Instance
        {
            vector<std::pair<string, vector<int>>> cons;
            for (int c = 0; c < m; ++c) {
                auto & name = relations[random_below(rng, int(relations.size()))];
                auto & rel = reduct.relation(*reduct.find(name));
                vector<int> scope;
                for (int k = 0; k < rel.arity(); ++k)
                    scope.push_back(random_below(rng, n));
                cons.push_back({name, scope});
            }
            return make_instance(n, cons);
        }

        auto equality() -> Report
        {
            Report r{.suite = "equality", .criterion = 5};
            Tally tally;
            vector<std::shared_ptr<const Reduct>> reducts{catalog::reduct("Z"), catalog::reduct("eq-or-eq"), catalog::reduct("neq")};
            std::mt19937 rng(5005);
            long mismatches = 0, unsound = 0, sat_count = 0;
            json failures = json::array();
            for (int round = 0; round < 200; ++round) {
                auto & reduct = *reducts[round % 3];
                vector<string> rels;
                for (auto * rel : reduct.declared())
                    rels.push_back(rel->name());
                rels.push_back("=");
                int n = 1 + random_below(rng, 6);
                int m = random_below(rng, 2 * n + 1);
                auto inst = random_instance(rng, reduct, rels, n, m);
                auto resolved = resolve(reduct, inst);
                auto verdict = type_space_decide(reduct, resolved);
                bool sat = solver_sat(reduct, resolved);
                auto d = minimality_decisions(reduct, resolved);
                tally.record(d.r23, d.r46, ! verdict.sat);
                sat_count += verdict.sat;
                if (sat != verdict.sat) {
                    ++mismatches;
                    failures.push_back({{"reduct", reduct.name()}, {"instance", describe(inst)}});
                }
                if ((d.r23 || d.r46) && verdict.sat)
                    ++unsound;
            }
            check(r, "solver agrees with the oracle", mismatches == 0, std::to_string(mismatches) + " mismatches");
            check(r, "minimality never refutes a satisfiable instance", unsound == 0, std::to_string(unsound) + " false refutations");
            r.data["instances"] = 200;
            r.data["satisfiable"] = sat_count;
            r.data["failures"] = failures;
            r.tally = tally;
            return r;
        }

        // ---------------------------------------------------------------- criterion 6

        auto edge_flag(const OrbitSpace & sp, int n, int o) -> bool
        {
            return ! sp.orbit(n, o).facts(*sp.signature().index_of("E")).empty();
        }

        auto order_projection(const OrbitSpace & sp, int n, int o) -> string
        {
            auto order = sp.signature().restricted_to({"<"});
            return serialize(project_orbit(sp.orbit(n, o), sp.signature(), order), order);
        }

        auto vote_equations(const OrbitAction & m, bool majority) -> std::pair<long, long>
        {
            auto & sp = m.space();
            long cells = 0, wrong = 0;
            for (int a = 0; a < sp.count(3); ++a)
                for (int b = 0; b < sp.count(3); ++b)
                    for (int c = 0; c < sp.count(3); ++c) {
                        if (! sp.orbit(3, a).injective() || ! sp.orbit(3, b).injective() || ! sp.orbit(3, c).injective())
                            continue;
                        int votes = edge_flag(sp, 3, a) + edge_flag(sp, 3, b) + edge_flag(sp, 3, c);
                        bool expected = majority ? votes >= 2 : votes % 2 == 1;
                        vector<int> args{a, b, c};
                        int out = m.apply(3, args);
                        ++cells;
                        wrong += edge_flag(sp, 3, out) != expected || order_projection(sp, 3, out) != order_projection(sp, 3, a)
                            || m.provenance(3, args) != Provenance::Given;
                    }
            // injective pairs: first projection
            for (int a = 0; a < sp.count(2); ++a)
                for (int b = 0; b < sp.count(2); ++b)
                    for (int c = 0; c < sp.count(2); ++c) {
                        if (! sp.orbit(2, a).injective() || ! sp.orbit(2, b).injective() || ! sp.orbit(2, c).injective())
                            continue;
                        vector<int> args{a, b, c};
                        ++cells;
                        wrong += m.apply(2, args) != a;
                    }
            return {cells, wrong};
        }

        auto hypergraph_actions() -> Report
        {
            Report r{.suite = "hypergraph-actions", .criterion = 6};
            auto f = builtin_action("f");
            auto & sp = f->space();
            auto & sig = sp.signature();
            auto e_only = sig.restricted_to({"E"});
            auto violations_text = [](const vector<ActionViolation> & v) {
                return v.empty() ? string("no violations") : std::to_string(v.size()) + " violations, first: " + v.front().kind + " " + v.front().detail;
            };

            auto fv = check_action_welldefined(*f);
            check(r, "(a) f is well defined at depth 3", fv.empty(), violations_text(fv));

            long pair_wrong = 0;
            for (int a = 0; a < sp.count(2); ++a)
                for (int b = 0; b < sp.count(2); ++b) {
                    auto & oa = sp.orbit(2, a);
                    auto & ob = sp.orbit(2, b);
                    int expected = oa.injective() && ob.injective() ? a : oa.constant() && ob.constant() ? a : oa.constant() ? b : a;
                    vector<int> args{a, b};
                    pair_wrong += f->apply(2, args) != expected;
                }
            check(r, "(b) f follows the three pair rules on all 9 pair cells", pair_wrong == 0, std::to_string(pair_wrong) + " cells differ");

            auto fw = check_canonical_wrt(*f, e_only);
            check(r, "(c) f is not canonical with respect to {E}", fw.has_value());
            check(r, "(c) f is canonical with respect to (H,<)", ! check_canonical_wrt(*f, sig).has_value());
            r.data["fWitness"] = io::canonicity_to_json(*f, fw);

            auto maj = builtin_action("m-majority");
            auto [cells, wrong] = vote_equations(*maj, true);
            check(r, "(d) m satisfies the eight majority equations on every injective cell", wrong == 0,
                std::to_string(wrong) + " of " + std::to_string(cells) + " cells differ");

            auto g = builtin_action("g");
            auto gv = check_action_welldefined(*g);
            check(r, "(e) g is well defined at depth 3", gv.empty(), violations_text(gv));

            Identity pseudo{IdentityKind::Cyclic, e_only};
            auto gc = check_identity(*g, pseudo);
            check(r, "(f) g is pseudo-cyclic modulo {E}", ! gc.has_value());
            check(r, "(f) g is pseudo-cyclic modulo {E} on rule-fixed cells", ! check_identity(*g, pseudo, true).has_value());

            auto gw = check_canonical_wrt(*g, e_only);
            check(r, "(g) g is not canonical with respect to {E}", gw.has_value());
            check(r, "(g) the witness persists on rule-fixed cells", check_canonical_wrt(*g, e_only, true).has_value());
            check(r, "(g) g is canonical with respect to (H,<)", ! check_canonical_wrt(*g, sig).has_value());
            r.data["gWitness"] = io::canonicity_to_json(*g, gw);
            auto plain = check_identity(*g, Identity{IdentityKind::Cyclic, std::nullopt});
            r.data["gPlainCyclic"] = io::identity_to_json(*g, plain);

            auto mino = builtin_action("m-minority");
            auto [mcells, mwrong] = vote_equations(*mino, false);
            check(r, "(h) minority m satisfies the dual equations", mwrong == 0, std::to_string(mwrong) + " of " + std::to_string(mcells) + " cells differ",
                false);
            auto gmin = builtin_action("g-minority");
            auto gmc = check_identity(*gmin, pseudo);
            string detail = "holds";
            if (gmc) {
                vector<int> left = gmc->left_args, right = gmc->right_args;
                bool completed = gmin->provenance(gmc->n, left) == Provenance::Completed || gmin->provenance(gmc->n, right) == Provenance::Completed;
                detail = completed ? "fails only through completed cells" : "fails on rule-fixed cells";
            }
            check(r, "(h) minority g is pseudo-cyclic modulo {E}", ! gmc.has_value(), detail, false);
            check(r, "(h) minority g is pseudo-cyclic modulo {E} on rule-fixed cells", ! check_identity(*gmin, pseudo, true).has_value(), {}, false);
            return r;
        }

        // ---------------------------------------------------------------- criterion 7

        auto closed_relation(std::mt19937 & rng, const OrbitAction & action, int arity) -> vector<int>
        {
            auto & sp = action.space();
            int count = sp.count(arity);
            vector<char> member(count, 0);
            bool any = false;
            for (int o = 0; o < count; ++o)
                if (rng() % 3 == 0) {
                    member[o] = 1;
                    any = true;
                }
            if (! any)
                member[random_below(rng, count)] = 1;
            bool changed = true;
            while (changed) {
                changed = false;
                vector<int> current;
                for (int o = 0; o < count; ++o)
                    if (member[o])
                        current.push_back(o);
                for (auto a : current)
                    for (auto b : current)
                        for (auto c : current) {
                            vector<int> args{a, b, c};
                            int out = action.apply(arity, args);
                            if (! member[out]) {
                                member[out] = 1;
                                changed = true;
                            }
                        }
            }
            vector<int> result;
            for (int o = 0; o < count; ++o)
                if (member[o])
                    result.push_back(o);
            return result;
        }

        auto unary() -> Report
        {
            Report r{.suite = "unary", .criterion = 7};
            Tally tally;
            auto sp = catalog::space("unary-2", 8);
            auto action = unary_majority(sp, 3);
            std::mt19937 rng(7007);
            long instances = 0, sat_count = 0, mismatch23 = 0, mismatch46 = 0, reduced_mismatch = 0;
            json counterexamples = json::array();
            for (int family = 0; family < 20; ++family) {
                vector<ReductRelation> rels{ReductRelation(*sp, "S", 2, closed_relation(rng, action, 2)),
                    ReductRelation(*sp, "T", 3, closed_relation(rng, action, 3)), ReductRelation(*sp, "U", 3, closed_relation(rng, action, 3))};
                Reduct reduct{"unary-random-" + std::to_string(family), sp, rels};
                vector<string> names{"S", "T", "U", "A1", "A2", "=", "!="};
                for (int k = 0; k < 5; ++k) {
                    int n = 3 + random_below(rng, 6);
                    int m = n / 2 + random_below(rng, 2 * n);
                    auto inst = random_instance(rng, reduct, names, n, m);
                    auto resolved = resolve(reduct, inst);
                    bool unsat = ! type_space_decide(reduct, resolved).sat;
                    bool r23 = ab_minimality(reduct, resolved, 2, 3).refuted();
                    bool r46 = reduced_minimality(reduct, resolved).refuted();
                    bool via_pairs = reduce_then_minimality(reduct, resolved).refuted;
                    tally.record(r23, r46, unsat);
                    ++instances;
                    sat_count += ! unsat;
                    mismatch23 += r23 != unsat;
                    mismatch46 += r46 != unsat;
                    reduced_mismatch += r46 != via_pairs;
                    if (r23 != unsat || r46 != unsat || r46 != via_pairs)
                        counterexamples.push_back({{"reduct", io::reduct_to_json(reduct, "unary-2")}, {"instance", io::instance_to_json(inst)},
                            {"refuted23", r23}, {"refuted46", r46}, {"refutedViaPairs", via_pairs}, {"unsat", unsat}});
                }
            }
            check(r, "(2,3)-minimality decides every instance", mismatch23 == 0, std::to_string(mismatch23) + " counterexamples");
            check(r, "(4,6)-minimality decides every instance", mismatch46 == 0, std::to_string(mismatch46) + " counterexamples");
            check(r, "(4,6) on the instance equals (2,3) on the pair reduction", reduced_mismatch == 0, std::to_string(reduced_mismatch) + " differences");
            r.data["instances"] = instances;
            r.data["satisfiable"] = sat_count;
            r.data["counterexamples"] = counterexamples;
            r.tally = tally;
            return r;
        }

        using Runner = Report (*)();
        const vector<std::pair<string, Runner>> & base_suites()
        {
            static const vector<std::pair<string, Runner>> all{{"orbit-counts", orbit_counts}, {"fork-instance", fork_instance},
                {"acyclicity", acyclicity}, {"betweenness", betweenness}, {"equality", equality}, {"hypergraph-actions", hypergraph_actions}, {"unary", unary}};
            return all;
        }
    }

    auto names() -> vector<string>
    {
        vector<string> out;
        for (auto & [name, fn] : base_suites())
            out.push_back(name);
        out.push_back("monotonicity");
        out.push_back("determinism");
        return out;
    }

    auto monotonicity(const vector<Report> & reports) -> Report
    {
        Report r{.suite = "monotonicity", .criterion = 8};
        Tally total;
        for (auto & rep : reports) {
            if (! rep.tally)
                continue;
            auto & t = *rep.tally;
            total.merge(t);
            check(r, rep.suite + ": refuted(2,3) within refuted(4,6) within UNSAT", t.violations == 0,
                std::to_string(t.refuted23) + " <= " + std::to_string(t.refuted46) + " <= " + std::to_string(t.unsat) + " of "
                    + std::to_string(t.instances) + ", " + std::to_string(t.violations) + " violations");
        }
        check(r, "instance suites present", total.instances > 0);
        r.tally = total;
        return r;
    }

    auto determinism(const vector<Report> & first) -> Report
    {
        Report r{.suite = "determinism", .criterion = 9};
        for (auto & rep : first) {
            auto again = run(rep.suite);
            bool same = to_json(rep).dump() == to_json(again).dump();
            check(r, rep.suite + " report is byte-identical on rerun", same);
        }
        return r;
    }

    auto run(const string & name) -> Report
    {
        for (auto & [id, fn] : base_suites())
            if (id == name)
                return fn();
        if (name == "monotonicity")
            return monotonicity({acyclicity(), betweenness(), equality(), unary()});
        if (name == "determinism") {
            vector<Report> first;
            for (auto & [id, fn] : base_suites())
                first.push_back(fn());
            return determinism(first);
        }
        throw InputError("unknown suite '" + name + "'");
    }

    auto to_json(const Report & report) -> json
    {
        json checks = json::array();
        for (auto & c : report.checks) {
            json j{{"name", c.name}, {"passed", c.passed}};
            if (! c.detail.empty())
                j["detail"] = c.detail;
            if (! c.required)
                j["informational"] = true;
            checks.push_back(j);
        }
        json j{{"suite", report.suite}, {"criterion", report.criterion}, {"passed", report.passed()}, {"checks", checks}};
        if (report.tally)
            j["tally"] = {{"instances", report.tally->instances}, {"refuted23", report.tally->refuted23}, {"refuted46", report.tally->refuted46},
                {"unsat", report.tally->unsat}, {"violations", report.tally->violations}};
        j["data"] = report.data;
        return j;
    }
}
