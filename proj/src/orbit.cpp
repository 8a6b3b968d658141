#include <orbitsolve/errors.hpp>
#include <orbitsolve/orbit.hpp>

#include <algorithm>
#include <array>
#include <sstream>

using std::pair;
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
        constexpr auto digits = std::string_view{"0123456789abcdefghijklmnopqrstuvwxyz"};

        auto digit_value(char c) -> int
        {
            auto p = digits.find(c);
            if (p == std::string_view::npos)
                throw InputError(string("bad digit '") + c + "' in orbit text");
            return int(p);
        }

        auto normalise_blocks(vector<uint8_t> blocks) -> vector<uint8_t>
        {
            std::array<int, 256> relabel;
            relabel.fill(-1);
            int next = 0;
            for (auto & b : blocks) {
                if (relabel[b] < 0)
                    relabel[b] = next++;
                b = uint8_t(relabel[b]);
            }
            return blocks;
        }

        // Calls fn on every tuple in {0..n-1}^arity, lexicographically.
        template <typename Fn>
        auto for_each_tuple(int n, int arity, Fn && fn) -> void
        {
            if (n == 0)
                return;
            Tuple t(arity, 0);
            while (true) {
                fn(t);
                int i = arity - 1;
                while (i >= 0 && t[i] == n - 1)
                    t[i--] = 0;
                if (i < 0)
                    return;
                ++t[i];
            }
        }
    }

    Orbit::Orbit(vector<uint8_t> blocks, vector<vector<Tuple>> facts) :
        _blocks(normalise_blocks(std::move(blocks))),
        _facts(std::move(facts))
    {
        for (auto & f : _facts) {
            std::sort(f.begin(), f.end());
            f.erase(std::unique(f.begin(), f.end()), f.end());
            for (auto & t : f)
                for (auto p : t)
                    if (p >= _blocks.size())
                        throw InputError("fact position " + to_string(p + 1) + " out of range");
        }
    }

    auto Orbit::block_count() const -> int
    {
        int result = 0;
        for (auto b : _blocks)
            result = std::max(result, int(b) + 1);
        return result;
    }

    auto Orbit::holds(size_t relation, const Tuple & positions) const -> bool
    {
        auto & f = _facts[relation];
        return std::binary_search(f.begin(), f.end(), positions);
    }

    auto Orbit::equal_pairs() const -> vector<pair<int, int>>
    {
        vector<pair<int, int>> result;
        for (int i = 0; i < size(); ++i)
            for (int j = i + 1; j < size(); ++j)
                if (equal(i, j))
                    result.emplace_back(i, j);
        return result;
    }

    auto serialize(const Orbit & orbit, const Signature & signature) -> string
    {
        string result;
        for (auto b : orbit.blocks())
            result += digits[b];
        for (size_t r = 0; r < signature.size(); ++r) {
            result += ';';
            result += signature[r].name;
            result += ':';
            bool first = true;
            for (auto & t : orbit.facts(r)) {
                if (! first)
                    result += ',';
                first = false;
                for (auto p : t)
                    result += digits[p + 1];
            }
        }
        return result;
    }

    auto deserialize_orbit(const string & text, const Signature & signature) -> Orbit
    {
        auto semi = text.find(';');
        auto head = text.substr(0, semi);
        vector<uint8_t> blocks;
        for (char c : head)
            blocks.push_back(uint8_t(digit_value(c)));

        vector<vector<Tuple>> facts(signature.size());
        size_t pos = semi;
        for (size_t r = 0; r < signature.size(); ++r) {
            if (pos == string::npos || pos >= text.size() || text[pos] != ';')
                throw InputError("orbit text '" + text + "' is missing relation '" + signature[r].name + "'");
            auto colon = text.find(':', pos + 1);
            if (colon == string::npos || text.substr(pos + 1, colon - pos - 1) != signature[r].name)
                throw InputError("orbit text '" + text + "' expected relation '" + signature[r].name + "'");
            auto end = text.find(';', colon + 1);
            auto body = text.substr(colon + 1, end == string::npos ? string::npos : end - colon - 1);
            std::stringstream ss(body);
            string item;
            while (std::getline(ss, item, ',')) {
                if (int(item.size()) != signature[r].arity)
                    throw InputError("orbit text '" + text + "' has a tuple of the wrong arity");
                Tuple t;
                for (char c : item) {
                    int v = digit_value(c) - 1;
                    if (v < 0 || v >= int(blocks.size()))
                        throw InputError("orbit text '" + text + "' has an out-of-range position");
                    t.push_back(uint8_t(v));
                }
                facts[r].push_back(std::move(t));
            }
            pos = end;
        }
        if (pos != string::npos)
            throw InputError("orbit text '" + text + "' has trailing relations");
        return Orbit{std::move(blocks), std::move(facts)};
    }

    auto atom_holds(const Orbit & orbit, const Atom & atom, span<const int> map) -> bool
    {
        if (atom.is_equality())
            return orbit.equal(map[atom.args[0]], map[atom.args[1]]);
        Tuple t;
        t.reserve(atom.args.size());
        for (auto a : atom.args)
            t.push_back(uint8_t(map[a]));
        return orbit.holds(atom.relation, t);
    }

    auto realizes_bound(const Orbit & orbit, const Bound & bound) -> bool
    {
        int n = orbit.size();
        if (n == 0)
            return false;
        vector<int> map(bound.var_count, 0);
        while (true) {
            bool all = true;
            for (auto & lit : bound.literals)
                if (atom_holds(orbit, lit.atom, map) != lit.positive) {
                    all = false;
                    break;
                }
            if (all)
                return true;

            int i = bound.var_count - 1;
            while (i >= 0 && map[i] == n - 1)
                map[i--] = 0;
            if (i < 0)
                return false;
            ++map[i];
        }
    }

    auto is_eq_congruent(const Orbit & orbit) -> bool
    {
        for (size_t r = 0; r < orbit.relation_count(); ++r)
            for (auto & t : orbit.facts(r))
                for (size_t k = 0; k < t.size(); ++k)
                    for (int q = 0; q < orbit.size(); ++q)
                        if (q != t[k] && orbit.equal(q, t[k])) {
                            auto u = t;
                            u[k] = uint8_t(q);
                            if (! orbit.holds(r, u))
                                return false;
                        }
        return true;
    }

    auto restrict_orbit(const Orbit & orbit, span<const int> positions) -> Orbit
    {
        vector<uint8_t> blocks;
        blocks.reserve(positions.size());
        for (auto p : positions) {
            if (p < 0 || p >= orbit.size())
                throw InputError("position " + to_string(p + 1) + " out of range for an orbit of length " + to_string(orbit.size()));
            blocks.push_back(orbit.blocks()[p]);
        }

        int m = int(positions.size());
        vector<vector<Tuple>> facts(orbit.relation_count());
        for (size_t r = 0; r < orbit.relation_count(); ++r) {
            if (orbit.facts(r).empty())
                continue;
            int arity = int(orbit.facts(r).front().size());
            Tuple mapped(arity);
            for_each_tuple(m, arity, [&](const Tuple & t) {
                for (int k = 0; k < arity; ++k)
                    mapped[k] = uint8_t(positions[t[k]]);
                if (orbit.holds(r, mapped))
                    facts[r].push_back(t);
            });
        }
        return Orbit{std::move(blocks), std::move(facts)};
    }

    auto project_orbit(const Orbit & orbit, const Signature & from, const Signature & to) -> Orbit
    {
        vector<vector<Tuple>> facts;
        for (auto & r : to.relations()) {
            auto i = from.index_of(r.name);
            if (! i || from[*i].arity != r.arity)
                throw InputError("unknown relation symbol '" + r.name + "' in projection");
            facts.push_back(orbit.facts(*i));
        }
        return Orbit{orbit.blocks(), std::move(facts)};
    }
}
