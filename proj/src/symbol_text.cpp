#include "ymsym/symbol_text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>

#include "ymsym/json_writer.hpp"

namespace ymsym {

namespace {

struct Token {
    enum Kind { number, imaginary, variable, plus, minus, star, caret, end } kind;
    double value = 0.0;       // number
    bool first_block = false; // variable: zb/a block vs z/e block
    bool complex_chart = false;
    int index = 0;            // variable index, 1-based
    std::size_t pos = 0;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : m_text(text) {}

    Token next() {
        while (m_pos < m_text.size() && std::isspace(static_cast<unsigned char>(m_text[m_pos])))
            ++m_pos;
        Token t;
        t.pos = m_pos;
        if (m_pos >= m_text.size()) {
            t.kind = Token::end;
            return t;
        }
        const char c = m_text[m_pos];
        if (c == '+') { ++m_pos; t.kind = Token::plus; return t; }
        if (c == '-') { ++m_pos; t.kind = Token::minus; return t; }
        if (c == '*') { ++m_pos; t.kind = Token::star; return t; }
        if (c == '^') { ++m_pos; t.kind = Token::caret; return t; }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t len = 0;
            t.value = std::stod(m_text.substr(m_pos), &len);
            m_pos += len;
            if (m_pos < m_text.size() && m_text[m_pos] == 'i') {
                ++m_pos;
                t.kind = Token::imaginary;
            } else {
                t.kind = Token::number;
            }
            return t;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t p = m_pos;
            while (p < m_text.size() && std::isalpha(static_cast<unsigned char>(m_text[p]))) ++p;
            const std::string name = m_text.substr(m_pos, p - m_pos);
            std::size_t q = p;
            while (q < m_text.size() && std::isdigit(static_cast<unsigned char>(m_text[q]))) ++q;
            if (name == "i" && q == p) {
                m_pos = p;
                t.kind = Token::imaginary;
                t.value = 1.0;
                return t;
            }
            if (q == p)
                throw ConfigError("variable '" + name + "' needs an index at position " +
                                  std::to_string(m_pos));
            t.index = std::stoi(m_text.substr(p, q - p));
            m_pos = q;
            t.kind = Token::variable;
            if (name == "zb") { t.first_block = true; t.complex_chart = true; }
            else if (name == "z") { t.first_block = false; t.complex_chart = true; }
            else if (name == "a") { t.first_block = true; t.complex_chart = false; }
            else if (name == "e") { t.first_block = false; t.complex_chart = false; }
            else throw ConfigError("unknown variable '" + name + "' at position " +
                                   std::to_string(t.pos));
            if (t.index < 1)
                throw ConfigError("variable indices are 1-based");
            return t;
        }
        throw ConfigError(std::string("unexpected character '") + c + "' at position " +
                          std::to_string(m_pos));
    }

private:
    const std::string& m_text;
    std::size_t m_pos = 0;
};

struct RawFactor {
    bool is_var;
    Complex coeff;
    bool first_block;
    bool complex_chart;
    int index;
    int power;
};

struct RawTerm {
    double sign;
    std::vector<RawFactor> factors;
};

}  // namespace

ParsedSymbol parse_symbol(const std::string& text, int num_vars) {
    Lexer lex(text);
    Token tok = lex.next();
    std::vector<RawTerm> raw;

    bool expect_term = true;
    double sign = 1.0;
    while (tok.kind != Token::end) {
        if (expect_term) {
            // leading signs
            while (tok.kind == Token::plus || tok.kind == Token::minus) {
                if (tok.kind == Token::minus) sign = -sign;
                tok = lex.next();
            }
            RawTerm term{sign, {}};
            // factor list separated by '*'
            while (true) {
                RawFactor f{};
                if (tok.kind == Token::number) {
                    f.is_var = false;
                    f.coeff = tok.value;
                } else if (tok.kind == Token::imaginary) {
                    f.is_var = false;
                    f.coeff = Complex(0.0, tok.value);
                } else if (tok.kind == Token::variable) {
                    f.is_var = true;
                    f.first_block = tok.first_block;
                    f.complex_chart = tok.complex_chart;
                    f.index = tok.index;
                    f.power = 1;
                } else {
                    throw ConfigError("expected a coefficient or variable at position " +
                                      std::to_string(tok.pos));
                }
                tok = lex.next();
                if (f.is_var && tok.kind == Token::caret) {
                    tok = lex.next();
                    if (tok.kind != Token::number || tok.value != std::floor(tok.value) ||
                        tok.value < 0)
                        throw ConfigError("exponent must be a non-negative integer");
                    f.power = static_cast<int>(tok.value);
                    tok = lex.next();
                }
                term.factors.push_back(f);
                if (tok.kind == Token::star) {
                    tok = lex.next();
                    continue;
                }
                break;
            }
            raw.push_back(std::move(term));
            expect_term = false;
            sign = 1.0;
        } else {
            if (tok.kind == Token::plus) sign = 1.0;
            else if (tok.kind == Token::minus) sign = -1.0;
            else throw ConfigError("expected '+' or '-' between terms at position " +
                                   std::to_string(tok.pos));
            tok = lex.next();
            expect_term = true;
        }
    }
    if (expect_term && !raw.empty())
        throw ConfigError("expression ends with a dangling sign");
    if (raw.empty()) throw ConfigError("empty expression");

    // chart consistency and variable count
    bool any_complex = false, any_real = false;
    int max_index = 0;
    for (const auto& t : raw)
        for (const auto& f : t.factors)
            if (f.is_var) {
                (f.complex_chart ? any_complex : any_real) = true;
                max_index = std::max(max_index, f.index);
            }
    if (any_complex && any_real)
        throw ConfigError("cannot mix zb/z with a/e variables in one expression");
    const Chart chart = any_real ? Chart::real_pair : Chart::complex_pair;
    int m = num_vars > 0 ? num_vars : std::max(max_index, 1);
    if (max_index > m)
        throw ConfigError("variable index " + std::to_string(max_index) +
                          " exceeds the declared variable count");

    PolySymbol sym(m);
    for (const auto& t : raw) {
        Complex coeff(t.sign);
        std::vector<int> alpha(m, 0), beta(m, 0);
        for (const auto& f : t.factors) {
            if (f.is_var)
                (f.first_block ? alpha : beta)[f.index - 1] += f.power;
            else
                coeff *= f.coeff;
        }
        sym.add_term(alpha, beta, coeff);
    }
    return {std::move(sym), chart};
}

namespace {

std::string format_coeff(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_monomial(std::string& out, const PolySymbol::Key& key, int m,
                     Chart chart, bool leading_factor) {
    const char* first = chart == Chart::complex_pair ? "zb" : "a";
    const char* second = chart == Chart::complex_pair ? "z" : "e";
    bool any = leading_factor;
    for (int block = 0; block < 2; ++block)
        for (int k = 0; k < m; ++k) {
            const int e = key[block * m + k];
            if (e == 0) continue;
            if (any) out += "*";
            out += (block == 0 ? first : second);
            out += std::to_string(k + 1);
            if (e > 1) {
                out += "^";
                out += std::to_string(e);
            }
            any = true;
        }
}

}  // namespace

std::string to_text(const PolySymbol& sym, Chart chart) {
    if (sym.empty()) return "0";
    const int m = sym.num_vars();

    // print by descending total degree, map order within a degree
    std::vector<const PolySymbol::TermMap::value_type*> terms;
    terms.reserve(sym.term_count());
    for (const auto& t : sym.terms()) terms.push_back(&t);
    auto degree_of = [](const PolySymbol::Key& k) {
        int d = 0;
        for (int e : k) d += e;
        return d;
    };
    std::stable_sort(terms.begin(), terms.end(), [&](const auto* a, const auto* b) {
        const int da = degree_of(a->first), db = degree_of(b->first);
        if (da != db) return da > db;
        return a->first > b->first;
    });

    std::string out;
    bool first_piece = true;
    auto emit = [&](double value, const PolySymbol::Key& key, bool imaginary) {
        if (value == 0.0) return;
        const bool neg = value < 0.0;
        const double mag = std::abs(value);
        if (first_piece) {
            if (neg) out += "-";
            first_piece = false;
        } else {
            out += neg ? " - " : " + ";
        }
        const bool is_const =
            std::all_of(key.begin(), key.end(), [](int e) { return e == 0; });
        const bool unit = mag == 1.0;
        if (imaginary) {
            if (!unit) out += format_coeff(mag);
            out += "i";
            append_monomial(out, key, m, chart, true);
        } else if (is_const) {
            out += format_coeff(mag);
        } else if (unit) {
            append_monomial(out, key, m, chart, false);
        } else {
            out += format_coeff(mag);
            append_monomial(out, key, m, chart, true);
        }
    };
    for (const auto* t : terms) {
        emit(t->second.real(), t->first, false);
        emit(t->second.imag(), t->first, true);
    }
    return out;
}

std::string symbol_to_json(const PolySymbol& sym) {
    JsonWriter w;
    w.begin_object();
    w.key("num_vars").value(sym.num_vars());
    w.key("ordering").value(ordering_name(sym.ordering()));
    w.key("terms").begin_array();
    const int m = sym.num_vars();
    for (const auto& [key, c] : sym.terms()) {
        w.begin_object();
        w.key("zbar").begin_array();
        for (int k = 0; k < m; ++k) w.value(key[k]);
        w.end_array();
        w.key("z").begin_array();
        for (int k = 0; k < m; ++k) w.value(key[m + k]);
        w.end_array();
        w.key("re").value(c.real());
        w.key("im").value(c.imag());
        w.end_object();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

}  // namespace ymsym
