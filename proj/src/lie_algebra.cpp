#include "ymsym/lie_algebra.hpp"

#include <cmath>
#include <complex>

#include "ymsym/json_writer.hpp"

namespace ymsym {

namespace {

using CMat = Eigen::MatrixXcd;

// Hermitian traceless basis of n x n matrices, Frobenius-normalized to
// tr(H_a H_b) = 2 delta_ab, enumerated in the generalized Gell-Mann order
// (for n = 2 this is the Pauli triple, for n = 3 the lambda matrices).
std::vector<CMat> hermitian_basis(int n) {
    std::vector<CMat> basis;
    const std::complex<double> I(0.0, 1.0);
    for (int q = 1; q < n; ++q) {
        for (int p = 0; p < q; ++p) {
            CMat s = CMat::Zero(n, n);
            s(p, q) = 1.0;
            s(q, p) = 1.0;
            basis.push_back(s);
            CMat a = CMat::Zero(n, n);
            a(p, q) = -I;
            a(q, p) = I;
            basis.push_back(a);
        }
        CMat d = CMat::Zero(n, n);
        const double norm = std::sqrt(2.0 / (q * (q + 1.0)));
        for (int k = 0; k < q; ++k) d(k, k) = norm;
        d(q, q) = -q * norm;
        basis.push_back(d);
    }
    return basis;
}

// Structure tensor of su(n) in the textbook basis X_a = -(i/2) H_a, where
// [X_a, X_b] = f_ab^c X_c with real f.
std::vector<double> sun_structure(int n, int& dim_out) {
    const auto H = hermitian_basis(n);
    const int d = static_cast<int>(H.size());
    dim_out = d;
    const std::complex<double> I(0.0, 1.0);
    std::vector<CMat> X(H.size());
    for (int a = 0; a < d; ++a) X[a] = -0.5 * I * H[a];

    std::vector<double> f(static_cast<std::size_t>(d) * d * d, 0.0);
    for (int a = 0; a < d; ++a) {
        for (int b = a + 1; b < d; ++b) {
            const CMat m = X[a] * X[b] - X[b] * X[a];
            for (int c = 0; c < d; ++c) {
                // [X_a, X_b] = sum_c f_abc (-i/2) H_c and tr(H_c H_c') = 2 delta
                const std::complex<double> coef = I * (H[c] * m).trace();
                const double v = coef.real();
                if (std::abs(coef.imag()) > 1e-12)
                    throw NumericalError("su(n) structure constants not real");
                f[(static_cast<std::size_t>(a) * d + b) * d + c] = v;
                f[(static_cast<std::size_t>(b) * d + a) * d + c] = -v;
            }
        }
    }
    return f;
}

std::vector<double> so3_structure() {
    // [L_i, L_j] = eps_ij^k L_k
    std::vector<double> f(27, 0.0);
    auto set = [&f](int i, int j, int k, double v) { f[(i * 3 + j) * 3 + k] = v; };
    set(0, 1, 2, 1.0);
    set(1, 2, 0, 1.0);
    set(2, 0, 1, 1.0);
    set(1, 0, 2, -1.0);
    set(2, 1, 0, -1.0);
    set(0, 2, 1, -1.0);
    return f;
}

Eigen::MatrixXd ad_matrix(const std::vector<double>& f, int d, int i) {
    // (ad T_i)[k][j] = f_ijk
    Eigen::MatrixXd ad = Eigen::MatrixXd::Zero(d, d);
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
            ad(k, j) = f[(static_cast<std::size_t>(i) * d + j) * d + k];
    return ad;
}

// Rescales a textbook basis so the negative Killing form becomes the
// identity, and returns the structure tensor in the new basis. Rejects
// tensors whose Killing form is not positive definite (non-semisimple or
// non-compact input).
std::vector<double> killing_orthonormalize(const std::vector<double>& f, int d,
                                           const std::string& id) {
    std::vector<Eigen::MatrixXd> ad(d);
    for (int i = 0; i < d; ++i) ad[i] = ad_matrix(f, d, i);

    Eigen::MatrixXd killing(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j)
            killing(i, j) = killing(j, i) = -(ad[i] * ad[j]).trace();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(killing);
    if (es.info() != Eigen::Success)
        throw NumericalError("Killing form eigendecomposition failed for " + id);
    const double min_eig = es.eigenvalues().minCoeff();
    const double max_eig = es.eigenvalues().maxCoeff();
    if (min_eig <= 1e-10 * std::max(1.0, max_eig))
        throw ConfigError("algebra '" + id +
                          "' rejected: Killing form is degenerate or indefinite "
                          "(not compact semisimple)");

    const Eigen::MatrixXd w =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
        es.eigenvectors().transpose();
    const Eigen::MatrixXd w_inv =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() *
        es.eigenvectors().transpose();

    // T_i = sum_a w_ia X_a  =>  c_ijk = w_ia w_jb f_ab^c (w^-1)_ck
    std::vector<double> c(static_cast<std::size_t>(d) * d * d, 0.0);
    std::vector<Eigen::MatrixXd> g(d);  // g_c = w F_c w^T with (F_c)_ab = f_abc
    for (int cc = 0; cc < d; ++cc) {
        Eigen::MatrixXd fc(d, d);
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                fc(a, b) = f[(static_cast<std::size_t>(a) * d + b) * d + cc];
        g[cc] = w * fc * w.transpose();
    }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                double v = 0.0;
                for (int cc = 0; cc < d; ++cc) v += g[cc](i, j) * w_inv(cc, k);
                c[(static_cast<std::size_t>(i) * d + j) * d + k] = v;
            }
    return c;
}

}  // namespace

LieAlgebraBasis LieAlgebraBasis::build(const std::string& algebra_id) {
    int d = 0;
    std::vector<double> f;
    if (algebra_id == "su2") {
        f = sun_structure(2, d);
    } else if (algebra_id == "su3") {
        f = sun_structure(3, d);
    } else if (algebra_id == "so3") {
        f = so3_structure();
        d = 3;
    } else if (algebra_id.rfind("sun:", 0) == 0) {
        int n = 0;
        try {
            n = std::stoi(algebra_id.substr(4));
        } catch (const std::exception&) {
            throw ConfigError("malformed algebra id '" + algebra_id + "'");
        }
        if (n < 2) throw ConfigError("sun:" + std::to_string(n) + " is not semisimple");
        if (n > 6)
            throw ConfigError("sun:" + std::to_string(n) +
                              " exceeds the supported generator count");
        f = sun_structure(n, d);
    } else if (algebra_id == "u1" || algebra_id == "so2") {
        throw ConfigError("algebra '" + algebra_id +
                          "' rejected: abelian, Killing form degenerate");
    } else {
        throw ConfigError("unsupported algebra id '" + algebra_id + "'");
    }

    LieAlgebraBasis basis(algebra_id, d, killing_orthonormalize(f, d, algebra_id));
    const auto report = basis.check_invariants();
    if (!report.pass())
        throw NumericalError("algebra '" + algebra_id +
                             "' failed Killing-orthonormal invariants");
    return basis;
}

LieAlgebraBasis LieAlgebraBasis::from_structure(std::string id, int dim,
                                                std::vector<double> c,
                                                bool validate) {
    if (dim < 1) throw ConfigError("algebra dimension must be positive");
    if (c.size() != static_cast<std::size_t>(dim) * dim * dim)
        throw ConfigError("structure tensor has wrong size");
    if (validate) {
        c = killing_orthonormalize(c, dim, id);
        LieAlgebraBasis basis(std::move(id), dim, std::move(c));
        if (!basis.check_invariants().pass())
            throw NumericalError("user structure tensor fails invariants");
        return basis;
    }
    return LieAlgebraBasis(std::move(id), dim, std::move(c));
}

LieAlgebraBasis LieAlgebraBasis::zeroed() const {
    return LieAlgebraBasis(m_id + ":abelian", m_dim,
                           std::vector<double>(m_c.size(), 0.0));
}

LieAlgebraBasis LieAlgebraBasis::scaled(double s) const {
    std::vector<double> c = m_c;
    for (double& v : c) v *= s;
    return LieAlgebraBasis(m_id + ":scaled", m_dim, std::move(c));
}

std::vector<LieAlgebraBasis::Entry> LieAlgebraBasis::nonzero_entries() const {
    std::vector<Entry> out;
    for (int i = 0; i < m_dim; ++i)
        for (int j = 0; j < m_dim; ++j)
            for (int k = 0; k < m_dim; ++k) {
                const double v = structure(i, j, k);
                if (std::abs(v) > 1e-14) out.push_back({i, j, k, v});
            }
    return out;
}

void LieAlgebraBasis::require_dim(const AlgebraElement& x) const {
    if (x.coeffs.size() != m_dim)
        throw ConfigError("algebra element has dimension " +
                          std::to_string(x.coeffs.size()) + ", basis expects " +
                          std::to_string(m_dim));
}

AlgebraElement LieAlgebraBasis::bracket(const AlgebraElement& x,
                                        const AlgebraElement& y) const {
    require_dim(x);
    require_dim(y);
    AlgebraElement out = AlgebraElement::zero(m_dim);
    for (int i = 0; i < m_dim; ++i) {
        if (x.coeffs[i] == 0.0) continue;
        for (int j = 0; j < m_dim; ++j) {
            const double xy = x.coeffs[i] * y.coeffs[j];
            if (xy == 0.0) continue;
            for (int k = 0; k < m_dim; ++k)
                out.coeffs[k] += xy * structure(i, j, k);
        }
    }
    return out;
}

double LieAlgebraBasis::killing_product(const AlgebraElement& x,
                                        const AlgebraElement& y) const {
    require_dim(x);
    require_dim(y);
    return x.coeffs.dot(y.coeffs);
}

LieInvariantReport LieAlgebraBasis::check_invariants() const {
    LieInvariantReport r;
    const int d = m_dim;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k) {
                const double c = structure(i, j, k);
                r.antisymmetry = std::max(r.antisymmetry,
                                          std::abs(c + structure(j, i, k)));
                r.antisymmetry = std::max(r.antisymmetry,
                                          std::abs(c + structure(i, k, j)));
            }
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    double s = 0.0;
                    for (int m = 0; m < d; ++m)
                        s += structure(i, j, m) * structure(m, k, l) +
                             structure(j, k, m) * structure(m, i, l) +
                             structure(k, i, m) * structure(m, j, l);
                    r.jacobi = std::max(r.jacobi, std::abs(s));
                }
    for (int i = 0; i < d; ++i)
        for (int l = 0; l < d; ++l) {
            double s = 0.0;
            for (int j = 0; j < d; ++j)
                for (int k = 0; k < d; ++k)
                    s += structure(i, j, k) * structure(l, j, k);
            r.orthonormality =
                std::max(r.orthonormality, std::abs(s - (i == l ? 1.0 : 0.0)));
        }
    return r;
}

std::string LieAlgebraBasis::to_json() const {
    JsonWriter w;
    w.begin_object();
    w.key("algebra").value(m_id);
    w.key("dim").value(m_dim);
    w.key("c").begin_array();
    for (const auto& e : nonzero_entries()) {
        w.begin_array();
        w.value(e.i).value(e.j).value(e.k).value(e.value);
        w.end_array();
    }
    w.end_array();
    w.end_object();
    return w.str();
}

}  // namespace ymsym
