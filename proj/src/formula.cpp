#include <orbitsolve/errors.hpp>
#include <orbitsolve/formula.hpp>

#include <cctype>
#include <numeric>

using std::size_t;
using std::string;
using std::vector;

namespace orbitsolve
{
    auto Formula::negation(Formula f) -> Formula
    {
        return Formula{Kind::Not, {}, {std::move(f)}};
    }

    auto Formula::conjunction(vector<Formula> fs) -> Formula
    {
        if (fs.size() == 1)
            return std::move(fs.front());
        return Formula{Kind::And, {}, std::move(fs)};
    }

    auto Formula::disjunction(vector<Formula> fs) -> Formula
    {
        if (fs.size() == 1)
            return std::move(fs.front());
        return Formula{Kind::Or, {}, std::move(fs)};
    }

    auto Formula::max_variable() const -> int
    {
        int result = -1;
        if (kind == Kind::Atom)
            for (auto a : atom.args)
                result = std::max(result, a);
        for (auto & c : children)
            result = std::max(result, c.max_variable());
        return result;
    }

    namespace
    {
        enum class TokenKind
        {
            Number,
            Name,
            Punct,
            End
        };

        struct Token
        {
            TokenKind kind;
            string text;
            size_t column;
        };

        auto is_punct(char c) -> bool
        {
            return c == '(' || c == ')' || c == ',' || c == '&' || c == '|' || c == '~' || c == '=';
        }

        auto tokenize(const string & text) -> vector<Token>
        {
            vector<Token> result;
            size_t i = 0;
            while (i < text.size()) {
                char c = text[i];
                if (std::isspace(static_cast<unsigned char>(c))) {
                    ++i;
                }
                else if (std::isdigit(static_cast<unsigned char>(c))) {
                    size_t j = i;
                    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
                        ++j;
                    result.push_back({TokenKind::Number, text.substr(i, j - i), i});
                    i = j;
                }
                else if (is_punct(c)) {
                    result.push_back({TokenKind::Punct, string(1, c), i});
                    ++i;
                }
                else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                    size_t j = i;
                    while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                        ++j;
                    result.push_back({TokenKind::Name, text.substr(i, j - i), i});
                    i = j;
                }
                else {
                    // operator-like relation names such as '<'
                    size_t j = i;
                    while (j < text.size() && ! std::isspace(static_cast<unsigned char>(text[j])) && ! is_punct(text[j])
                        && ! std::isalnum(static_cast<unsigned char>(text[j])) && text[j] != '_')
                        ++j;
                    result.push_back({TokenKind::Name, text.substr(i, j - i), i});
                    i = j;
                }
            }
            result.push_back({TokenKind::End, "", text.size()});
            return result;
        }

        class Parser
        {
        public:
            Parser(const string & text, const Signature & sig) :
                _text(text), _sig(sig), _tokens(tokenize(text)) {}

            auto parse() -> Formula
            {
                auto f = disjunction();
                if (peek().kind != TokenKind::End)
                    fail("unexpected '" + peek().text + "'");
                return f;
            }

        private:
            const string & _text;
            const Signature & _sig;
            vector<Token> _tokens;
            size_t _pos = 0;

            auto peek() const -> const Token & { return _tokens[_pos]; }
            auto next() -> const Token & { return _tokens[_pos++]; }

            [[noreturn]] auto fail(const string & why) const -> void
            {
                throw InputError("formula '" + _text + "' at column " + std::to_string(peek().column + 1) + ": " + why);
            }

            auto accept(const string & punct) -> bool
            {
                if (peek().kind == TokenKind::Punct && peek().text == punct) {
                    ++_pos;
                    return true;
                }
                return false;
            }

            auto expect(const string & punct) -> void
            {
                if (! accept(punct))
                    fail("expected '" + punct + "'");
            }

            auto variable() -> int
            {
                if (peek().kind != TokenKind::Number)
                    fail("expected a variable number");
                int v = std::stoi(next().text);
                if (v < 1)
                    fail("variables are numbered from 1");
                return v - 1;
            }

            auto relation(const string & name) -> int
            {
                auto r = _sig.index_of(name);
                if (! r)
                    fail("unknown relation symbol '" + name + "'");
                return int(*r);
            }

            auto disjunction() -> Formula
            {
                vector<Formula> parts{conjunction()};
                while (accept("|"))
                    parts.push_back(conjunction());
                return Formula::disjunction(std::move(parts));
            }

            auto conjunction() -> Formula
            {
                vector<Formula> parts{unary()};
                while (accept("&"))
                    parts.push_back(unary());
                return Formula::conjunction(std::move(parts));
            }

            auto unary() -> Formula
            {
                if (accept("~"))
                    return Formula::negation(unary());
                if (accept("(")) {
                    auto f = disjunction();
                    expect(")");
                    return f;
                }
                return atom();
            }

            auto atom() -> Formula
            {
                if (peek().kind == TokenKind::Number) {
                    int a = variable();
                    if (accept("="))
                        return Formula::make_atom(Atom::equality(a, variable()));
                    if (peek().kind != TokenKind::Name)
                        fail("expected '=' or a binary relation symbol");
                    auto name = next().text;
                    int r = relation(name);
                    if (_sig[r].arity != 2)
                        fail("relation '" + name + "' is not binary and cannot be written infix");
                    int b = variable();
                    return Formula::make_atom(Atom::rel(r, {a, b}));
                }
                if (peek().kind == TokenKind::Name) {
                    auto name = next().text;
                    int r = relation(name);
                    expect("(");
                    vector<int> args{variable()};
                    while (accept(","))
                        args.push_back(variable());
                    expect(")");
                    if (int(args.size()) != _sig[r].arity)
                        fail("relation '" + name + "' has arity " + std::to_string(_sig[r].arity));
                    return Formula::make_atom(Atom::rel(r, std::move(args)));
                }
                fail(peek().kind == TokenKind::End ? "unexpected end of formula" : "unexpected '" + peek().text + "'");
            }
        };
    }

    auto parse_formula(const string & text, const Signature & signature) -> Formula
    {
        return Parser{text, signature}.parse();
    }

    auto evaluate(const Formula & formula, const Orbit & orbit) -> bool
    {
        switch (formula.kind) {
        case Formula::Kind::Atom: {
            vector<int> identity(orbit.size());
            std::iota(identity.begin(), identity.end(), 0);
            return atom_holds(orbit, formula.atom, identity);
        }
        case Formula::Kind::Not:
            return ! evaluate(formula.children.front(), orbit);
        case Formula::Kind::And:
            for (auto & c : formula.children)
                if (! evaluate(c, orbit))
                    return false;
            return true;
        case Formula::Kind::Or:
            for (auto & c : formula.children)
                if (evaluate(c, orbit))
                    return true;
            return false;
        }
        return false;
    }

    auto to_string(const Formula & formula, const Signature & signature) -> string
    {
        auto var = [](int v) { return std::to_string(v + 1); };
        switch (formula.kind) {
        case Formula::Kind::Atom: {
            auto & a = formula.atom;
            if (a.is_equality())
                return var(a.args[0]) + "=" + var(a.args[1]);
            auto & name = signature[a.relation].name;
            string s = name + "(";
            for (size_t i = 0; i < a.args.size(); ++i)
                s += (i ? "," : "") + var(a.args[i]);
            return s + ")";
        }
        case Formula::Kind::Not:
            return "~" + to_string(formula.children.front(), signature);
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            string s = "(";
            for (size_t i = 0; i < formula.children.size(); ++i) {
                if (i)
                    s += formula.kind == Formula::Kind::And ? " & " : " | ";
                s += to_string(formula.children[i], signature);
            }
            return s + ")";
        }
        }
        return "";
    }
}
