#include "ymsym/poly_symbol.hpp"

#include <cmath>

namespace ymsym {

std::string ordering_name(Ordering tag) {
    switch (tag) {
        case Ordering::normal: return "normal";
        case Ordering::weyl: return "weyl";
        case Ordering::antinormal: return "antinormal";
        case Ordering::classical: return "classical";
    }
    return "?";
}

Ordering ordering_from_name(const std::string& name) {
    if (name == "normal") return Ordering::normal;
    if (name == "weyl") return Ordering::weyl;
    if (name == "antinormal") return Ordering::antinormal;
    if (name == "classical") return Ordering::classical;
    throw ConfigError("unknown ordering tag '" + name + "'");
}

PolySymbol::PolySymbol(int num_vars, Ordering tag)
    : m_num_vars(num_vars), m_ordering(tag) {
    if (num_vars < 1) throw ConfigError("symbol needs at least one variable");
}

PolySymbol PolySymbol::constant(int num_vars, Complex c, Ordering tag) {
    PolySymbol p(num_vars, tag);
    p.add_term(Key(2 * num_vars, 0), c);
    return p;
}

PolySymbol PolySymbol::monomial(int num_vars, const std::vector<int>& alpha,
                                const std::vector<int>& beta, Complex coeff,
                                Ordering tag) {
    PolySymbol p(num_vars, tag);
    p.add_term(alpha, beta, coeff);
    return p;
}

PolySymbol PolySymbol::with_ordering(Ordering tag) const {
    PolySymbol p = *this;
    p.m_ordering = tag;
    return p;
}

void PolySymbol::add_term(const Key& key, Complex coeff) {
    if (key.size() != static_cast<std::size_t>(2 * m_num_vars))
        throw ConfigError("exponent key length mismatch");
    auto it = m_terms.find(key);
    if (it == m_terms.end()) {
        if (std::abs(coeff) >= kPruneThreshold) m_terms.emplace(key, coeff);
        return;
    }
    it->second += coeff;
    if (std::abs(it->second) < kPruneThreshold) m_terms.erase(it);
}

void PolySymbol::add_term(const std::vector<int>& alpha,
                          const std::vector<int>& beta, Complex coeff) {
    if (alpha.size() != static_cast<std::size_t>(m_num_vars) ||
        beta.size() != static_cast<std::size_t>(m_num_vars))
        throw ConfigError("exponent vector length mismatch");
    Key key(alpha);
    key.insert(key.end(), beta.begin(), beta.end());
    add_term(key, coeff);
}

Complex PolySymbol::coeff(const std::vector<int>& alpha,
                          const std::vector<int>& beta) const {
    Key key(alpha);
    key.insert(key.end(), beta.begin(), beta.end());
    auto it = m_terms.find(key);
    return it == m_terms.end() ? Complex(0.0) : it->second;
}

void PolySymbol::require_same_vars(const PolySymbol& rhs) const {
    if (m_num_vars != rhs.m_num_vars)
        throw ConfigError("symbols have different variable counts (" +
                          std::to_string(m_num_vars) + " vs " +
                          std::to_string(rhs.m_num_vars) + ")");
}

PolySymbol PolySymbol::operator+(const PolySymbol& rhs) const {
    require_same_vars(rhs);
    PolySymbol out = *this;
    for (const auto& [key, c] : rhs.m_terms) out.add_term(key, c);
    return out;
}

PolySymbol PolySymbol::operator-(const PolySymbol& rhs) const {
    require_same_vars(rhs);
    PolySymbol out = *this;
    for (const auto& [key, c] : rhs.m_terms) out.add_term(key, -c);
    return out;
}

PolySymbol PolySymbol::operator*(const PolySymbol& rhs) const {
    require_same_vars(rhs);
    if (m_ordering != rhs.m_ordering)
        throw ConfigError("cannot multiply symbols with different ordering tags (" +
                          ordering_name(m_ordering) + " vs " +
                          ordering_name(rhs.m_ordering) + ")");
    PolySymbol out(m_num_vars, m_ordering);
    const int n = 2 * m_num_vars;
    Key key(n, 0);
    for (const auto& [ka, ca] : m_terms)
        for (const auto& [kb, cb] : rhs.m_terms) {
            for (int i = 0; i < n; ++i) key[i] = ka[i] + kb[i];
            out.add_term(key, ca * cb);
        }
    return out;
}

PolySymbol PolySymbol::scaled(Complex s) const {
    PolySymbol out(m_num_vars, m_ordering);
    if (s == Complex(0.0)) return out;
    for (const auto& [key, c] : m_terms) out.add_term(key, c * s);
    return out;
}

int PolySymbol::total_degree() const {
    int deg = 0;
    for (const auto& [key, c] : m_terms) {
        int d = 0;
        for (int e : key) d += e;
        deg = std::max(deg, d);
    }
    return deg;
}

int PolySymbol::max_degree_alpha() const {
    int deg = 0;
    for (const auto& [key, c] : m_terms) {
        int d = 0;
        for (int i = 0; i < m_num_vars; ++i) d += key[i];
        deg = std::max(deg, d);
    }
    return deg;
}

int PolySymbol::max_degree_beta() const {
    int deg = 0;
    for (const auto& [key, c] : m_terms) {
        int d = 0;
        for (int i = m_num_vars; i < 2 * m_num_vars; ++i) d += key[i];
        deg = std::max(deg, d);
    }
    return deg;
}

double PolySymbol::hermitian_residual() const {
    double res = 0.0;
    const int m = m_num_vars;
    Key swapped(2 * m, 0);
    for (const auto& [key, c] : m_terms) {
        for (int i = 0; i < m; ++i) {
            swapped[i] = key[m + i];
            swapped[m + i] = key[i];
        }
        auto it = m_terms.find(swapped);
        const Complex partner = it == m_terms.end() ? Complex(0.0) : it->second;
        res = std::max(res, std::abs(c - std::conj(partner)));
    }
    return res;
}

bool PolySymbol::is_hermitian(double tol) const {
    return hermitian_residual() < tol * std::max(1.0, max_abs_coeff());
}

double PolySymbol::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& [key, c] : m_terms) m = std::max(m, std::abs(c));
    return m;
}

Complex PolySymbol::evaluate(const Eigen::VectorXcd& zbar,
                             const Eigen::VectorXcd& z) const {
    if (zbar.size() != m_num_vars || z.size() != m_num_vars)
        throw ConfigError("evaluation point length mismatch");
    // power tables per variable up to the largest exponent present
    int max_exp = 0;
    for (const auto& [key, c] : m_terms)
        for (int e : key) max_exp = std::max(max_exp, e);
    const int m = m_num_vars;
    std::vector<Complex> pow_zbar(static_cast<std::size_t>(m) * (max_exp + 1));
    std::vector<Complex> pow_z(pow_zbar.size());
    for (int k = 0; k < m; ++k) {
        pow_zbar[k * (max_exp + 1)] = 1.0;
        pow_z[k * (max_exp + 1)] = 1.0;
        for (int e = 1; e <= max_exp; ++e) {
            pow_zbar[k * (max_exp + 1) + e] = pow_zbar[k * (max_exp + 1) + e - 1] * zbar[k];
            pow_z[k * (max_exp + 1) + e] = pow_z[k * (max_exp + 1) + e - 1] * z[k];
        }
    }
    Complex sum = 0.0;
    for (const auto& [key, c] : m_terms) {
        Complex prod = c;
        for (int k = 0; k < m; ++k) {
            if (key[k] > 0) prod *= pow_zbar[k * (max_exp + 1) + key[k]];
            if (key[m + k] > 0) prod *= pow_z[k * (max_exp + 1) + key[m + k]];
        }
        sum += prod;
    }
    return sum;
}

Complex PolySymbol::evaluate_diagonal(const Eigen::VectorXcd& z) const {
    return evaluate(z.conjugate(), z);
}

PolySymbol PolySymbol::derivative(int block, int var) const {
    if (block != 0 && block != 1) throw ConfigError("derivative block must be 0 or 1");
    if (var < 0 || var >= m_num_vars) throw ConfigError("derivative variable out of range");
    const int pos = block * m_num_vars + var;
    PolySymbol out(m_num_vars, m_ordering);
    for (const auto& [key, c] : m_terms) {
        const int e = key[pos];
        if (e == 0) continue;
        Key k = key;
        k[pos] = e - 1;
        out.add_term(k, c * static_cast<double>(e));
    }
    return out;
}

PolySymbol gaussian_transform(const PolySymbol& sym, double s) {
    if (s == 0.0) return sym;
    const int m = sym.num_vars();
    PolySymbol result = sym;
    PolySymbol current = sym;
    for (int n = 1; !current.empty(); ++n) {
        // current <- D(current) * (s / n), with D = sum_k d/dzbar_k d/dz_k
        PolySymbol next(m, sym.ordering());
        const double factor = s / n;
        for (const auto& [key, c] : current.terms()) {
            for (int k = 0; k < m; ++k) {
                const int a = key[k];
                const int b = key[m + k];
                if (a == 0 || b == 0) continue;
                PolySymbol::Key down = key;
                down[k] = a - 1;
                down[m + k] = b - 1;
                next.add_term(down, c * static_cast<double>(a) *
                                        static_cast<double>(b) * factor);
            }
        }
        current = std::move(next);
        if (current.empty()) break;
        result = result + current;
    }
    return result;
}

PolySymbol convert_ordering(const PolySymbol& sym, Ordering from, Ordering to) {
    auto level = [](Ordering tag) -> double {
        switch (tag) {
            case Ordering::antinormal: return 0.0;
            case Ordering::weyl: return 0.5;
            case Ordering::normal: return 1.0;
            default:
                throw ConfigError("convert_ordering accepts only normal, weyl, "
                                  "antinormal tags");
        }
    };
    const double s = level(to) - level(from);
    PolySymbol out = gaussian_transform(sym, s);
    return out.with_ordering(to);
}

namespace {

double binomial(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

Complex ipow(Complex base, int e) {
    Complex r(1.0);
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

// Rewrites every variable pair (X, Y) -> (u, v) with X = x1 u + x2 v,
// Y = y1 u + y2 v, expanding monomials binomially per variable.
PolySymbol change_pair_basis(const PolySymbol& sym, Complex x1, Complex x2,
                             Complex y1, Complex y2) {
    const int m = sym.num_vars();
    PolySymbol out(m, sym.ordering());
    for (const auto& [key, c] : sym.terms()) {
        // partial expansions over the processed variables
        std::vector<std::pair<PolySymbol::Key, Complex>> partial{
            {PolySymbol::Key(2 * m, 0), c}};
        for (int k = 0; k < m; ++k) {
            const int p = key[k];
            const int q = key[m + k];
            if (p == 0 && q == 0) continue;
            std::vector<std::pair<PolySymbol::Key, Complex>> grown;
            grown.reserve(partial.size() * (p + 1) * (q + 1));
            for (int r = 0; r <= p; ++r) {
                const Complex xr = binomial(p, r) * ipow(x1, r) * ipow(x2, p - r);
                for (int t = 0; t <= q; ++t) {
                    const Complex yt = binomial(q, t) * ipow(y1, t) * ipow(y2, q - t);
                    const Complex w = xr * yt;
                    if (std::abs(w) < PolySymbol::kPruneThreshold) continue;
                    for (const auto& [pk, pc] : partial) {
                        PolySymbol::Key nk = pk;
                        nk[k] += r + t;
                        nk[m + k] += (p - r) + (q - t);
                        grown.emplace_back(std::move(nk), pc * w);
                    }
                }
            }
            partial = std::move(grown);
        }
        for (const auto& [pk, pc] : partial) out.add_term(pk, pc);
    }
    return out;
}

}  // namespace

PolySymbol to_complex_chart(const PolySymbol& real_chart_sym) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    // a = (zbar + z)/sqrt(2), e = i(zbar - z)/sqrt(2)
    return change_pair_basis(real_chart_sym, inv_sqrt2, inv_sqrt2, i * inv_sqrt2,
                             -i * inv_sqrt2);
}

PolySymbol to_real_chart(const PolySymbol& complex_chart_sym) {
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    // zbar = (a - ie)/sqrt(2), z = (a + ie)/sqrt(2)
    return change_pair_basis(complex_chart_sym, inv_sqrt2, -i * inv_sqrt2,
                             inv_sqrt2, i * inv_sqrt2);
}

}  // namespace ymsym
