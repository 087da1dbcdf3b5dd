#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "ymsym/poly_symbol.hpp"

namespace ymsym {

using SparseC = Eigen::SparseMatrix<Complex>;

/// Default refusal point for basis sizes, overridable per call and through
/// the CLI / YMSYM_MEMORY_BUDGET.
constexpr std::int64_t kDefaultStateBudget = 200000;

// Occupation basis of m oscillators truncated by total occupation
// sum_k n_k <= n_max (the compression by the number-operator spectral
// projector). States are graded by total occupation, lexicographic within a
// grade; dim = C(n_max + m, m). Immutable after construction.
class FockBasis {
public:
    static std::shared_ptr<const FockBasis> make(
        int m, int n_max, std::int64_t state_budget = kDefaultStateBudget);

    int m() const { return m_m; }
    int n_max() const { return m_n_max; }
    std::int64_t dim() const { return static_cast<std::int64_t>(m_states.size()); }

    const std::vector<int>& state(std::int64_t index) const { return m_states[index]; }
    const std::vector<std::vector<int>>& states() const { return m_states; }

    int total_occupation(std::int64_t index) const;

    /// Index of an occupation vector, -1 if outside the cutoff.
    std::int64_t index_of(const std::vector<int>& occ) const;

    static std::int64_t dimension(int m, int n_max);

private:
    FockBasis(int m, int n_max);

    int m_m;
    int m_n_max;
    std::vector<std::vector<int>> m_states;
};

/// Sparse operator over a truncated Fock basis.
struct FockOperator {
    std::shared_ptr<const FockBasis> basis;
    SparseC matrix;
    bool hermitian = false;

    std::int64_t dim() const { return basis->dim(); }
    /// max |M - M^dagger| entry; the hermitian flag requires < 1e-10.
    double hermiticity_defect() const;
};

FockOperator identity_operator(std::shared_ptr<const FockBasis> basis);

/// Annihilators a_k and creators a^dag_k: a_k|n> = sqrt(n_k)|n - e_k>,
/// a^dag_k|n> = sqrt(n_k + 1)|n + e_k>, zero when leaving the cutoff.
struct LadderPair {
    std::vector<FockOperator> annihilators;
    std::vector<FockOperator> creators;
};
LadderPair ladder_matrices(std::shared_ptr<const FockBasis> basis);

/// Wick-ordered quantization of a normal symbol: sum over terms of
/// coeff * prod (a^dag)^alpha * prod a^beta, with matrix elements computed
/// combinatorially per occupation pair rather than by chained products.
FockOperator quantize_normal(const PolySymbol& sym,
                             std::shared_ptr<const FockBasis> basis);

/// Quantization from any ordering tag: converts the symbol to the normal
/// convention first. A classical tag is read as anti-normal.
FockOperator quantize(const PolySymbol& sym, std::shared_ptr<const FockBasis> basis);

/// N = sum_k a^dag_k a_k, diagonal in the graded basis.
FockOperator number_operator(std::shared_ptr<const FockBasis> basis);

// Truncated coherent state with amplitude(n) = prod_k z_k^{n_k}/sqrt(n_k!).
// tail_fraction measures the weight of e^{zbar z} lost to the cutoff.
struct CoherentVector {
    std::shared_ptr<const FockBasis> basis;
    Eigen::VectorXcd z;
    Eigen::VectorXcd amplitudes;
    double tail_fraction = 0.0;
    bool tail_warning = false;  // tail_fraction > 1e-6
};

constexpr double kTailWarnFraction = 1e-6;
constexpr double kTailErrorFraction = 1e-2;

CoherentVector coherent_vector(std::shared_ptr<const FockBasis> basis,
                               const Eigen::VectorXcd& z);

/// <e^z| Q |e^z> e^{-zbar z} on truncated vectors; converges to the normal
/// symbol value as n_max grows. Throws NumericalError when the coherent tail
/// fraction exceeds 1e-2.
Complex normal_symbol_probe(const FockOperator& op, const Eigen::VectorXcd& z);

/// Coordinate text lines "row col re im", sorted by row then column.
void write_coordinate_text(const FockOperator& op, std::ostream& out);

/// Compact little-endian binary: header {u64 m, u64 n_max, u64 nnz} followed
/// by nnz records {u64 row, u64 col, f64 re, f64 im}.
void write_binary(const FockOperator& op, std::ostream& out);
FockOperator read_binary(std::istream& in, std::int64_t state_budget = kDefaultStateBudget);

}  // namespace ymsym
