#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ymsym/errors.hpp"

namespace ymsym {

/// Coordinates of an algebra element in the generator basis {T_k}.
struct AlgebraElement {
    Eigen::VectorXd coeffs;

    static AlgebraElement zero(int dim) { return {Eigen::VectorXd::Zero(dim)}; }
    static AlgebraElement generator(int dim, int k) {
        AlgebraElement e = zero(dim);
        e.coeffs[k] = 1.0;
        return e;
    }
};

struct LieInvariantReport {
    double antisymmetry = 0.0;    // max violation of total antisymmetry
    double jacobi = 0.0;          // max Jacobi identity residual
    double orthonormality = 0.0;  // max |-tr(ad_i ad_j) - delta_ij|

    bool pass(double tol_algebraic = 1e-12, double tol_killing = 1e-10) const {
        return antisymmetry < tol_algebraic && jacobi < tol_algebraic &&
               orthonormality < tol_killing;
    }
};

// Generator basis of a compact semisimple Lie algebra, orthonormal under the
// negative Killing form -tr(ad X ad Y). In such a basis the structure tensor
// c[i][j][k] of [T_i, T_j] = c_ij^k T_k is totally antisymmetric. The
// normalization is always recomputed numerically from the ad matrices, never
// hard-coded per algebra. Instances are immutable and safe to share across
// threads.
class LieAlgebraBasis {
public:
    /// Builds the Killing-orthonormalized basis for a supported algebra id:
    /// "su2", "su3", "so3", "sun:N" (2 <= N <= 6). Rejects non-semisimple
    /// requests such as "u1" whose Killing form is degenerate.
    static LieAlgebraBasis build(const std::string& algebra_id);

    /// Wraps a caller-supplied structure tensor (flat index (i*d+j)*d+k).
    /// With validate=true the full invariant set is enforced; diagnostics
    /// (abelian or rescaled tensors) pass validate=false.
    static LieAlgebraBasis from_structure(std::string id, int dim,
                                          std::vector<double> c, bool validate);

    /// Copy with all structure constants set to zero (abelian diagnostic).
    LieAlgebraBasis zeroed() const;

    /// Copy with all structure constants multiplied by s (scaling diagnostic).
    LieAlgebraBasis scaled(double s) const;

    const std::string& id() const { return m_id; }
    int dim() const { return m_dim; }

    double structure(int i, int j, int k) const {
        return m_c[(static_cast<std::size_t>(i) * m_dim + j) * m_dim + k];
    }

    /// Nonzero structure entries as (i, j, k, value) with |value| > 1e-14.
    struct Entry {
        int i, j, k;
        double value;
    };
    std::vector<Entry> nonzero_entries() const;

    AlgebraElement bracket(const AlgebraElement& x, const AlgebraElement& y) const;
    double killing_product(const AlgebraElement& x, const AlgebraElement& y) const;

    LieInvariantReport check_invariants() const;

    /// {"algebra": id, "dim": d, "c": [[i,j,k,value], ...]}
    std::string to_json() const;

private:
    LieAlgebraBasis(std::string id, int dim, std::vector<double> c)
        : m_id(std::move(id)), m_dim(dim), m_c(std::move(c)) {}

    void require_dim(const AlgebraElement& x) const;

    std::string m_id;
    int m_dim;
    std::vector<double> m_c;  // dense d^3 tensor, (i*d+j)*d+k
};

inline LieAlgebraBasis build_algebra(const std::string& algebra_id) {
    return LieAlgebraBasis::build(algebra_id);
}

}  // namespace ymsym
