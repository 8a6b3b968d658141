#include <orbitsolve/orbit_space.hpp>

#include <algorithm>
#include <numeric>

using std::optional;
using std::pair;
using std::shared_ptr;
using std::size_t;
using std::span;
using std::string;
using std::to_string;
using std::uint8_t;
using std::vector;

namespace orbitsolve
{
    namespace
    {
        using BlockFacts = vector<vector<Tuple>>;

        struct BlockAtom
        {
            int relation;
            Tuple tuple;
        };

        // A bound instantiated on concrete block indices: it is realized once every
        // listed atom has the stated truth value.
        struct BoundCheck
        {
            vector<pair<int, bool>> atoms;
        };

        auto ipow(int base, int exp) -> int
        {
            int r = 1;
            for (int i = 0; i < exp; ++i)
                r *= base;
            return r;
        }

        // All injective types on b elements: one fact set per relation, over element
        // tuples, avoiding every bound. Search assigns atoms in order of their largest
        // element, checking each bound instance as soon as all of its atoms are known.
        auto enumerate_block_types(const Template & tmpl, int b) -> vector<BlockFacts>
        {
            auto & sig = tmpl.signature();

            vector<BlockAtom> atoms;
            for (size_t r = 0; r < sig.size(); ++r) {
                int arity = sig[r].arity;
                int total = ipow(b, arity);
                for (int code = 0; code < total; ++code) {
                    Tuple t(arity);
                    for (int k = arity - 1, c = code; k >= 0; --k, c /= b)
                        t[k] = uint8_t(c % b);
                    atoms.push_back(BlockAtom{int(r), std::move(t)});
                }
            }
            std::stable_sort(atoms.begin(), atoms.end(), [](const BlockAtom & x, const BlockAtom & y) {
                auto mx = *std::max_element(x.tuple.begin(), x.tuple.end());
                auto my = *std::max_element(y.tuple.begin(), y.tuple.end());
                return mx < my;
            });

            vector<vector<int>> atom_index(sig.size());
            for (size_t r = 0; r < sig.size(); ++r)
                atom_index[r].assign(ipow(b, sig[r].arity), -1);
            auto code_of = [&](const Tuple & t) {
                int c = 0;
                for (auto p : t)
                    c = c * b + p;
                return c;
            };
            for (size_t i = 0; i < atoms.size(); ++i)
                atom_index[atoms[i].relation][code_of(atoms[i].tuple)] = int(i);

            vector<vector<BoundCheck>> checks_at(atoms.size());
            for (auto & bound : tmpl.bounds()) {
                vector<int> map(bound.var_count, 0);
                int total = ipow(b, bound.var_count);
                for (int code = 0; code < total; ++code) {
                    for (int k = bound.var_count - 1, c = code; k >= 0; --k, c /= b)
                        map[k] = c % b;

                    bool possible = true;
                    BoundCheck check;
                    int trigger = -1;
                    for (auto & lit : bound.literals) {
                        if (lit.atom.is_equality()) {
                            bool eq = map[lit.atom.args[0]] == map[lit.atom.args[1]];
                            if (eq != lit.positive) {
                                possible = false;
                                break;
                            }
                        }
                        else {
                            Tuple t;
                            for (auto a : lit.atom.args)
                                t.push_back(uint8_t(map[a]));
                            int idx = atom_index[lit.atom.relation][code_of(t)];
                            check.atoms.emplace_back(idx, lit.positive);
                            trigger = std::max(trigger, idx);
                        }
                    }
                    if (! possible)
                        continue;
                    if (trigger < 0)
                        return {}; // realized by equalities alone: no type on b elements exists
                    checks_at[trigger].push_back(std::move(check));
                }
            }

            vector<BlockFacts> result;
            vector<char> value(atoms.size(), 0);

            auto realized = [&](size_t i) {
                for (auto & check : checks_at[i]) {
                    bool all = true;
                    for (auto & [idx, want] : check.atoms)
                        if (bool(value[idx]) != want) {
                            all = false;
                            break;
                        }
                    if (all)
                        return true;
                }
                return false;
            };

            auto emit = [&]() {
                BlockFacts facts(sig.size());
                for (size_t i = 0; i < atoms.size(); ++i)
                    if (value[i])
                        facts[atoms[i].relation].push_back(atoms[i].tuple);
                for (auto & f : facts)
                    std::sort(f.begin(), f.end());
                result.push_back(std::move(facts));
            };

            auto search = [&](auto & self, size_t i) -> void {
                if (i == atoms.size()) {
                    emit();
                    return;
                }
                for (char v : {char(0), char(1)}) {
                    value[i] = v;
                    if (! realized(i))
                        self(self, i + 1);
                }
                value[i] = 0;
            };
            search(search, 0);
            return result;
        }

        // Restricted-growth strings of length n, lexicographically.
        auto restricted_growth_strings(int n) -> vector<vector<uint8_t>>
        {
            vector<vector<uint8_t>> result;
            vector<uint8_t> s(n, 0);
            auto rec = [&](auto & self, int i, int max_block) -> void {
                if (i == n) {
                    result.push_back(s);
                    return;
                }
                for (int v = 0; v <= max_block + 1; ++v) {
                    s[i] = uint8_t(v);
                    self(self, i + 1, std::max(max_block, v));
                }
            };
            if (n > 0) {
                s[0] = 0;
                rec(rec, 1, 0);
            }
            return result;
        }

        auto expand(const vector<uint8_t> & blocks, const BlockFacts & block_facts, const Signature & sig) -> Orbit
        {
            int n = int(blocks.size());
            vector<vector<Tuple>> facts(sig.size());
            for (size_t r = 0; r < sig.size(); ++r) {
                int arity = sig[r].arity;
                int total = ipow(n, arity);
                Tuple t(arity), bt(arity);
                for (int code = 0; code < total; ++code) {
                    for (int k = arity - 1, c = code; k >= 0; --k, c /= n) {
                        t[k] = uint8_t(c % n);
                        bt[k] = blocks[c % n];
                    }
                    if (std::binary_search(block_facts[r].begin(), block_facts[r].end(), bt))
                        facts[r].push_back(t);
                }
            }
            return Orbit{blocks, std::move(facts)};
        }
    }

    auto enumerate_orbits(const Template & tmpl, int n, int capacity) -> vector<Orbit>
    {
        if (n < 1)
            throw InputError("tuple length must be at least 1");
        if (n > capacity)
            throw CapacityError("orbit enumeration for n=" + to_string(n) + " exceeds the capacity limit " + to_string(capacity));

        auto & sig = tmpl.signature();
        vector<vector<BlockFacts>> by_blocks(n + 1);
        for (int b = 1; b <= n; ++b)
            by_blocks[b] = enumerate_block_types(tmpl, b);

        vector<pair<string, Orbit>> keyed;
        for (auto & rgs : restricted_growth_strings(n)) {
            int b = *std::max_element(rgs.begin(), rgs.end()) + 1;
            for (auto & bf : by_blocks[b]) {
                auto o = expand(rgs, bf, sig);
                auto key = serialize(o, sig);
                keyed.emplace_back(std::move(key), std::move(o));
            }
        }
        std::sort(keyed.begin(), keyed.end(), [](auto & x, auto & y) { return x.first < y.first; });

        vector<Orbit> result;
        result.reserve(keyed.size());
        for (auto & [k, o] : keyed)
            result.push_back(std::move(o));
        return result;
    }

    struct OrbitSpace::Level
    {
        std::once_flag built;
        vector<Orbit> orbits;
        std::unordered_map<string, int> index;

        std::once_flag drops_built;
        vector<int> drops; // orbits.size() * n

        std::once_flag masks_built;
        vector<int> masks; // orbits.size() * 2^n, left empty when too large

        // grouping of this level's orbits by their prefix orbit one level down
        std::once_flag family_built;
        vector<int> child_start;
        vector<int> child_list;
    };

    OrbitSpace::OrbitSpace(shared_ptr<const Template> tmpl, int capacity) :
        _template(std::move(tmpl)),
        _capacity(capacity)
    {
        for (int n = 0; n <= capacity; ++n)
            _levels.push_back(std::make_unique<Level>());
    }

    OrbitSpace::~OrbitSpace() = default;

    auto OrbitSpace::level(int n) const -> Level &
    {
        if (n < 1)
            throw InputError("tuple length must be at least 1");
        if (n > _capacity)
            throw CapacityError("orbit enumeration for n=" + to_string(n) + " exceeds the capacity limit " + to_string(_capacity));
        auto & lvl = *_levels[n];
        std::call_once(lvl.built, [&] {
            lvl.orbits = enumerate_orbits(*_template, n, _capacity);
            for (size_t i = 0; i < lvl.orbits.size(); ++i)
                lvl.index.emplace(serialize(lvl.orbits[i], signature()), int(i));
        });
        return lvl;
    }

    auto OrbitSpace::orbits(int n) const -> const vector<Orbit> &
    {
        return level(n).orbits;
    }

    auto OrbitSpace::find(const Orbit & orbit) const -> optional<int>
    {
        if (orbit.relation_count() != signature().size())
            return std::nullopt;
        auto & lvl = level(orbit.size());
        auto it = lvl.index.find(serialize(orbit, signature()));
        if (it == lvl.index.end())
            return std::nullopt;
        return it->second;
    }

    auto OrbitSpace::index_of(const Orbit & orbit) const -> int
    {
        auto i = find(orbit);
        if (! i)
            throw InputError("type '" + serialize(orbit, signature()) + "' is not an orbit of template '" + base().name() + "'");
        return *i;
    }

    auto OrbitSpace::label(int n, int index) const -> string
    {
        return to_string(n) + ":O" + to_string(index);
    }

    auto OrbitSpace::parse_label(const string & text) const -> pair<int, int>
    {
        auto colon = text.find(':');
        if (colon == string::npos || colon + 2 > text.size() || text[colon + 1] != 'O')
            throw InputError("malformed orbit label '" + text + "'");
        int n = 0, index = 0;
        try {
            size_t used = 0;
            n = std::stoi(text.substr(0, colon), &used);
            if (used != colon)
                throw InputError("malformed orbit label '" + text + "'");
            auto rest = text.substr(colon + 2);
            index = std::stoi(rest, &used);
            if (used != rest.size())
                throw InputError("malformed orbit label '" + text + "'");
        }
        catch (const std::logic_error &) {
            throw InputError("malformed orbit label '" + text + "'");
        }
        if (index < 0 || index >= count(n))
            throw InputError("orbit label '" + text + "' does not exist for template '" + base().name() + "'");
        return {n, index};
    }

    auto OrbitSpace::drop(int n, int index, int position) const -> int
    {
        auto & lvl = level(n);
        std::call_once(lvl.drops_built, [&] {
            if (n < 2)
                return;
            lvl.drops.assign(lvl.orbits.size() * n, -1);
            vector<int> positions(n - 1);
            for (int p = 0; p < n; ++p) {
                for (int q = 0, k = 0; q < n; ++q)
                    if (q != p)
                        positions[k++] = q;
                for (size_t o = 0; o < lvl.orbits.size(); ++o)
                    lvl.drops[o * n + p] = index_of(restrict_orbit(lvl.orbits[o], positions));
            }
        });
        if (n < 2)
            throw InputError("cannot drop a position from a 1-tuple");
        return lvl.drops[size_t(index) * n + position];
    }

    namespace
    {
        constexpr size_t mask_table_limit = size_t(1) << 22;
    }

    auto OrbitSpace::restrict_mask(int n, int index, unsigned mask) const -> int
    {
        auto & lvl = level(n);
        unsigned width = 1u << n;
        auto chain = [&](int o, unsigned m) {
            int len = n;
            for (int p = n - 1; p >= 0; --p)
                if (! (m & (1u << p)))
                    o = drop(len--, o, p);
            return o;
        };
        std::call_once(lvl.masks_built, [&] {
            if (lvl.orbits.size() * width > mask_table_limit)
                return;
            lvl.masks.assign(lvl.orbits.size() * width, -1);
            for (size_t o = 0; o < lvl.orbits.size(); ++o)
                for (unsigned m = 1; m < width; ++m)
                    lvl.masks[o * width + m] = chain(int(o), m);
        });
        if (mask == 0 || mask >= width)
            throw InputError("restriction mask out of range");
        if (! lvl.masks.empty())
            return lvl.masks[size_t(index) * width + mask];
        return chain(index, mask);
    }

    auto OrbitSpace::children(int n, int index) const -> span<const int>
    {
        auto & lvl = level(n + 1);
        std::call_once(lvl.family_built, [&] {
            int parents = n == 0 ? 1 : count(n);
            vector<vector<int>> groups(parents);
            for (size_t o = 0; o < lvl.orbits.size(); ++o)
                groups[n == 0 ? 0 : drop(n + 1, int(o), n)].push_back(int(o));
            lvl.child_start.push_back(0);
            for (auto & g : groups) {
                lvl.child_list.insert(lvl.child_list.end(), g.begin(), g.end());
                lvl.child_start.push_back(int(lvl.child_list.size()));
            }
        });
        return span<const int>{lvl.child_list.data() + lvl.child_start[index], lvl.child_list.data() + lvl.child_start[index + 1]};
    }

    auto OrbitSpace::restrict_to(int n, int index, span<const int> positions) const -> int
    {
        return index_of(restrict_orbit(orbit(n, index), positions));
    }
}
