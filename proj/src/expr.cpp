#include "chiral/expr.hpp"

#include <cctype>

namespace chiral {

namespace {

struct Parser {
    std::string s;
    std::size_t i = 0;

    explicit Parser(std::string in) {
        // normalize unicode angle brackets to ascii and strip whitespace
        std::string t;
        for (std::size_t k = 0; k < in.size();) {
            if (in.compare(k, 3, "\xe2\x9f\xa8") == 0) { t += '<'; k += 3; }
            else if (in.compare(k, 3, "\xe2\x9f\xa9") == 0) { t += '>'; k += 3; }
            else if (std::isspace((unsigned char)in[k])) ++k;
            else { t += in[k]; ++k; }
        }
        s = std::move(t);
    }

    [[noreturn]] void fail(const std::string& msg) {
        throw chiral_error("parse", "lattice expression: " + msg + " at position " +
                                        std::to_string(i) + " in '" + s + "'");
    }

    bool eof() const { return i >= s.size(); }
    char peek() const { return i < s.size() ? s[i] : '\0'; }
    bool accept(char c) {
        if (peek() == c) { ++i; return true; }
        return false;
    }

    Int integer() {
        std::size_t start = i;
        if (accept('-')) {}
        if (!std::isdigit((unsigned char)peek())) fail("expected integer");
        while (std::isdigit((unsigned char)peek())) ++i;
        return Int(s.substr(start, i - start));
    }

    Lattice atom() {
        bool neg = false;
        if (accept('-')) neg = true;
        Lattice L;
        if (peek() == '<') {
            ++i;
            Int k = integer();
            if (!accept('>')) fail("expected '>'");
            L = make_diag(k);
        } else {
            char c = peek();
            if (c == 'U') {
                ++i;
                L = make_U();
            } else if (c == 'A' || c == 'D' || c == 'E') {
                ++i;
                if (!std::isdigit((unsigned char)peek())) fail("expected block subscript");
                Int n = integer();
                if (n > 64) fail("block rank out of range");
                int nn = int(n);
                L = (c == 'A') ? make_A(nn) : (c == 'D') ? make_D(nn) : make_E(nn);
            } else {
                fail("expected block name");
            }
        }
        if (accept('(')) {
            Int sc = integer();
            if (!accept(')')) fail("expected ')'");
            L = scaled(L, sc);
        }
        if (neg) L = negated(L);
        return L;
    }

    Lattice term() {
        Int mult = 1;
        if (std::isdigit((unsigned char)peek())) {
            std::size_t save = i;
            Int m = integer();
            if (accept('*') || peek() == 'U' || peek() == 'A' || peek() == 'D' ||
                peek() == 'E' || peek() == '<' || peek() == '-') {
                mult = m;
            } else {
                i = save;
                fail("expected '*' or block after multiplier");
            }
        }
        if (mult < 1) fail("multiplier must be positive");
        Lattice a = atom();
        Lattice acc = a;
        for (Int k = 1; k < mult; ++k) acc = direct_sum(acc, a);
        return acc;
    }

    Lattice expr() {
        Lattice acc = term();
        while (accept('+')) acc = direct_sum(acc, term());
        if (!eof()) fail("trailing input");
        return acc;
    }
};

}  // namespace

Lattice parse_lattice(const std::string& expr) {
    Parser p(expr);
    return p.expr();
}

std::string print_expr(const Lattice& L) {
    // group equal consecutive block names into multipliers
    std::vector<std::string> names;
    for (const auto& b : L.blocks) {
        std::string n;
        if (b.negated) n += "-";
        switch (b.kind) {
            case BlockKind::U: n += "U"; break;
            case BlockKind::A: n += "A" + std::to_string(b.n); break;
            case BlockKind::D: n += "D" + std::to_string(b.n); break;
            case BlockKind::E: n += "E" + std::to_string(b.n); break;
            case BlockKind::Diag: {
                Int e = b.entry;
                n += "<" + e.str() + ">";
                break;
            }
        }
        if (b.scale != 1) n += "(" + b.scale.str() + ")";
        names.push_back(n);
    }
    std::string out;
    for (std::size_t i = 0; i < names.size();) {
        std::size_t j = i;
        while (j < names.size() && names[j] == names[i]) ++j;
        if (!out.empty()) out += "+";
        if (j - i > 1) out += std::to_string(j - i) + "*";
        out += names[i];
        i = j;
    }
    return out;
}

std::string canonical_expr(const std::string& expr) { return print_expr(parse_lattice(expr)); }

}  // namespace chiral
