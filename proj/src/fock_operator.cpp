#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <tuple>
#include <vector>

#include "ymsym/errors.hpp"
#include "ymsym/fock.hpp"

namespace ymsym {

namespace {

using Triplet = Eigen::Triplet<Complex>;

// Falling factorial n (n-1) ... (n-d+1), exact in double for desk sizes.
double falling(int n, int d) {
    double r = 1.0;
    for (int i = 0; i < d; ++i) r *= n - i;
    return r;
}

}  // namespace

double FockOperator::hermiticity_defect() const {
    const SparseC diff = SparseC(matrix - SparseC(matrix.adjoint()));
    double def = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseC::InnerIterator it(diff, k); it; ++it)
            def = std::max(def, std::abs(it.value()));
    return def;
}

FockOperator identity_operator(std::shared_ptr<const FockBasis> basis) {
    SparseC id(basis->dim(), basis->dim());
    id.setIdentity();
    return {std::move(basis), std::move(id), true};
}

LadderPair ladder_matrices(std::shared_ptr<const FockBasis> basis) {
    const int m = basis->m();
    const std::int64_t dim = basis->dim();
    LadderPair out;
    out.annihilators.reserve(m);
    out.creators.reserve(m);
    for (int k = 0; k < m; ++k) {
        std::vector<Triplet> low;
        std::vector<Triplet> raise;
        std::vector<int> occ;
        for (std::int64_t col = 0; col < dim; ++col) {
            occ = basis->state(col);
            if (occ[k] > 0) {
                const double amp = std::sqrt(static_cast<double>(occ[k]));
                occ[k] -= 1;
                const std::int64_t row = basis->index_of(occ);
                occ[k] += 1;
                low.emplace_back(row, col, amp);
            }
            occ[k] += 1;
            const std::int64_t up = basis->index_of(occ);
            occ[k] -= 1;
            if (up >= 0)
                raise.emplace_back(up, col, std::sqrt(static_cast<double>(occ[k] + 1)));
        }
        SparseC a(dim, dim), adag(dim, dim);
        a.setFromTriplets(low.begin(), low.end());
        adag.setFromTriplets(raise.begin(), raise.end());
        out.annihilators.push_back({basis, std::move(a), false});
        out.creators.push_back({basis, std::move(adag), false});
    }
    return out;
}

FockOperator quantize_normal(const PolySymbol& sym,
                             std::shared_ptr<const FockBasis> basis) {
    if (sym.ordering() != Ordering::normal)
        throw ConfigError("quantize_normal requires a normal-ordered symbol, got " +
                          ordering_name(sym.ordering()));
    const int m = basis->m();
    if (sym.num_vars() != m)
        throw ConfigError("symbol has " + std::to_string(sym.num_vars()) +
                          " variables, basis has " + std::to_string(m));

    const std::int64_t dim = basis->dim();
    std::vector<Triplet> triplets;
    std::vector<int> target(m);
    for (std::int64_t col = 0; col < dim; ++col) {
        const auto& occ = basis->state(col);
        for (const auto& [key, c] : sym.terms()) {
            // <n'| prod (adag_k)^{alpha_k} prod (a_k)^{beta_k} |n>:
            // nonzero only for n' = n - beta + alpha, with weight
            // prod_k sqrt( n_k!/(n_k-beta_k)! * n'_k!/(n_k-beta_k)! ).
            bool ok = true;
            double w2 = 1.0;
            for (int k = 0; k < m; ++k) {
                const int alpha = key[k];
                const int beta = key[m + k];
                const int nk = occ[k];
                if (beta > nk) {
                    ok = false;
                    break;
                }
                target[k] = nk - beta + alpha;
                w2 *= falling(nk, beta) * falling(target[k], alpha);
            }
            if (!ok) continue;
            const std::int64_t row = basis->index_of(target);
            if (row < 0) continue;  // creation leaves the cutoff
            triplets.emplace_back(row, col, c * std::sqrt(w2));
        }
    }
    SparseC mat(dim, dim);
    mat.setFromTriplets(triplets.begin(), triplets.end());
    mat.prune([](auto, auto, const Complex& v) { return std::abs(v) > 0.0; });
    FockOperator op{std::move(basis), std::move(mat), sym.is_hermitian(1e-12)};
    if (op.hermitian && op.hermiticity_defect() > 1e-10)
        throw NumericalError("hermitian symbol produced a non-hermitian matrix");
    return op;
}

FockOperator quantize(const PolySymbol& sym, std::shared_ptr<const FockBasis> basis) {
    const Ordering tag =
        sym.ordering() == Ordering::classical ? Ordering::antinormal : sym.ordering();
    if (tag == Ordering::normal) return quantize_normal(sym, std::move(basis));
    const PolySymbol normal =
        convert_ordering(sym.with_ordering(tag), tag, Ordering::normal);
    return quantize_normal(normal, std::move(basis));
}

FockOperator number_operator(std::shared_ptr<const FockBasis> basis) {
    const std::int64_t dim = basis->dim();
    std::vector<Triplet> triplets;
    triplets.reserve(dim);
    for (std::int64_t i = 0; i < dim; ++i)
        triplets.emplace_back(i, i, static_cast<double>(basis->total_occupation(i)));
    SparseC mat(dim, dim);
    mat.setFromTriplets(triplets.begin(), triplets.end());
    return {std::move(basis), std::move(mat), true};
}

CoherentVector coherent_vector(std::shared_ptr<const FockBasis> basis,
                               const Eigen::VectorXcd& z) {
    const int m = basis->m();
    if (z.size() != m) throw ConfigError("coherent state point length mismatch");
    const std::int64_t dim = basis->dim();
    Eigen::VectorXcd amp(dim);
    for (std::int64_t i = 0; i < dim; ++i) {
        const auto& occ = basis->state(i);
        Complex a(1.0);
        for (int k = 0; k < m; ++k)
            for (int q = 1; q <= occ[k]; ++q) a *= z[k] / std::sqrt(static_cast<double>(q));
        amp[i] = a;
    }
    const double norm2 = amp.squaredNorm();
    const double full = std::exp(z.squaredNorm());
    const double tail = std::max(0.0, (full - norm2) / full);
    return {std::move(basis), z, std::move(amp), tail, tail > kTailWarnFraction};
}

Complex normal_symbol_probe(const FockOperator& op, const Eigen::VectorXcd& z) {
    const CoherentVector v = coherent_vector(op.basis, z);
    if (v.tail_fraction > kTailErrorFraction)
        throw NumericalError("coherent tail fraction " +
                             std::to_string(v.tail_fraction) +
                             " exceeds 1e-2; raise n_max or shrink |z|");
    const Complex bra_ket = v.amplitudes.dot(op.matrix * v.amplitudes);
    return bra_ket * std::exp(-z.squaredNorm());
}

namespace {

std::vector<std::tuple<std::int64_t, std::int64_t, Complex>> sorted_entries(
    const FockOperator& op) {
    std::vector<std::tuple<std::int64_t, std::int64_t, Complex>> entries;
    entries.reserve(op.matrix.nonZeros());
    for (int k = 0; k < op.matrix.outerSize(); ++k)
        for (SparseC::InnerIterator it(op.matrix, k); it; ++it)
            entries.emplace_back(it.row(), it.col(), it.value());
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) < std::get<0>(b);
        return std::get<1>(a) < std::get<1>(b);
    });
    return entries;
}

template <typename T>
void put_le(std::ostream& out, T v) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &v, sizeof(T));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    T v;
    std::memcpy(&v, buf, sizeof(T));
    return v;
}

}  // namespace

void write_coordinate_text(const FockOperator& op, std::ostream& out) {
    char line[96];
    for (const auto& [row, col, v] : sorted_entries(op)) {
        std::snprintf(line, sizeof(line), "%lld %lld %.17g %.17g\n",
                      static_cast<long long>(row), static_cast<long long>(col),
                      v.real(), v.imag());
        out << line;
    }
}

void write_binary(const FockOperator& op, std::ostream& out) {
    const auto entries = sorted_entries(op);
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(op.basis->m()));
    put_le<std::uint64_t>(out, static_cast<std::uint64_t>(op.basis->n_max()));
    put_le<std::uint64_t>(out, entries.size());
    for (const auto& [row, col, v] : entries) {
        put_le<std::uint64_t>(out, static_cast<std::uint64_t>(row));
        put_le<std::uint64_t>(out, static_cast<std::uint64_t>(col));
        put_le<double>(out, v.real());
        put_le<double>(out, v.imag());
    }
}

FockOperator read_binary(std::istream& in, std::int64_t state_budget) {
    const auto m = static_cast<int>(get_le<std::uint64_t>(in));
    const auto n_max = static_cast<int>(get_le<std::uint64_t>(in));
    const auto nnz = get_le<std::uint64_t>(in);
    if (!in) throw ConfigError("truncated operator file header");
    auto basis = FockBasis::make(m, n_max, state_budget);
    std::vector<Triplet> triplets;
    triplets.reserve(nnz);
    for (std::uint64_t i = 0; i < nnz; ++i) {
        const auto row = static_cast<std::int64_t>(get_le<std::uint64_t>(in));
        const auto col = static_cast<std::int64_t>(get_le<std::uint64_t>(in));
        const double re = get_le<double>(in);
        const double im = get_le<double>(in);
        if (!in) throw ConfigError("truncated operator file body");
        if (row >= basis->dim() || col >= basis->dim())
            throw ConfigError("operator entry outside basis dimension");
        triplets.emplace_back(row, col, Complex(re, im));
    }
    SparseC mat(basis->dim(), basis->dim());
    mat.setFromTriplets(triplets.begin(), triplets.end());
    FockOperator op{std::move(basis), std::move(mat), false};
    op.hermitian = op.hermiticity_defect() < 1e-10;
    return op;
}

}  // namespace ymsym
