#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ymsym/errors.hpp"

namespace ymsym {

using Complex = std::complex<double>;

/// Which quantization convention the coefficients are meant under.
enum class Ordering { normal, weyl, antinormal, classical };

std::string ordering_name(Ordering tag);
Ordering ordering_from_name(const std::string& name);

// Sparse polynomial in m conjugate variable pairs. A term is keyed by the
// exponent pair (alpha, beta): alpha indexes powers of the first block
// (zbar, or a in the real chart), beta powers of the second block (z, or e).
// Coefficients below the prune threshold are never stored. Instances are
// treated as immutable once built; all operations return new symbols.
class PolySymbol {
public:
    static constexpr double kPruneThreshold = 1e-14;

    using Key = std::vector<int>;  // [alpha_1..alpha_m, beta_1..beta_m]
    using TermMap = std::map<Key, Complex>;

    explicit PolySymbol(int num_vars, Ordering tag = Ordering::classical);

    static PolySymbol constant(int num_vars, Complex c,
                               Ordering tag = Ordering::classical);
    /// Monomial zbar^alpha z^beta (or a^alpha e^beta in the real chart).
    static PolySymbol monomial(int num_vars, const std::vector<int>& alpha,
                               const std::vector<int>& beta, Complex coeff,
                               Ordering tag = Ordering::classical);

    int num_vars() const { return m_num_vars; }
    Ordering ordering() const { return m_ordering; }
    const TermMap& terms() const { return m_terms; }
    bool empty() const { return m_terms.empty(); }
    std::size_t term_count() const { return m_terms.size(); }

    PolySymbol with_ordering(Ordering tag) const;

    /// Accumulates a term during construction (prunes tiny results).
    void add_term(const Key& key, Complex coeff);
    void add_term(const std::vector<int>& alpha, const std::vector<int>& beta,
                  Complex coeff);

    Complex coeff(const std::vector<int>& alpha, const std::vector<int>& beta) const;

    PolySymbol operator+(const PolySymbol& rhs) const;
    PolySymbol operator-(const PolySymbol& rhs) const;
    PolySymbol operator*(const PolySymbol& rhs) const;
    PolySymbol scaled(Complex s) const;

    int total_degree() const;
    /// Degrees present in the alpha block / beta block, over all terms.
    int max_degree_alpha() const;
    int max_degree_beta() const;

    /// max |coeff(a,b) - conj(coeff(b,a))| over stored terms.
    double hermitian_residual() const;
    bool is_hermitian(double tol = 1e-12) const;

    double max_abs_coeff() const;

    Complex evaluate(const Eigen::VectorXcd& zbar, const Eigen::VectorXcd& z) const;
    /// Evaluation on the real diagonal zbar = conj(z).
    Complex evaluate_diagonal(const Eigen::VectorXcd& z) const;

    /// d/d(first-block var k) or d/d(second-block var k).
    PolySymbol derivative(int block, int var) const;

private:
    void require_same_vars(const PolySymbol& rhs) const;

    int m_num_vars;
    Ordering m_ordering;
    TermMap m_terms;
};

/// exp(s * sum_k d/dzbar_k d/dz_k) applied to a polynomial symbol; the series
/// terminates exactly because every application lowers the degree by two.
PolySymbol gaussian_transform(const PolySymbol& sym, double s);

/// Moves a symbol between the normal, Weyl and anti-normal conventions.
/// Adjacent conversions are Gaussian transforms with s = +-1/2; the signs are
/// pinned by the number-operator triple (normal zbar z, Weyl zbar z - 1/2,
/// anti-normal zbar z - 1).
PolySymbol convert_ordering(const PolySymbol& sym, Ordering from, Ordering to);

/// Substitutes a = (zbar + z)/sqrt(2), e = i(zbar - z)/sqrt(2): the input is
/// read in the real (a, e) chart and returned in the complex chart.
PolySymbol to_complex_chart(const PolySymbol& real_chart_sym);

/// Inverse substitution zbar = (a - ie)/sqrt(2), z = (a + ie)/sqrt(2).
PolySymbol to_real_chart(const PolySymbol& complex_chart_sym);

}  // namespace ymsym
