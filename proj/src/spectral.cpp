#include "ymsym/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <numeric>
#include <random>

#include "ymsym/json_writer.hpp"

namespace ymsym {

namespace {

double matrix_scale(const SparseC& mat) {
    // max column 1-norm, a cheap upper bound on the spectral radius
    double scale = 0.0;
    for (int k = 0; k < mat.outerSize(); ++k) {
        double col = 0.0;
        for (SparseC::InnerIterator it(mat, k); it; ++it) col += std::abs(it.value());
        scale = std::max(scale, col);
    }
    return std::max(scale, 1.0);
}

double pair_residual(const SparseC& mat, double lambda, const Eigen::VectorXcd& v) {
    return (mat * v - lambda * v).norm() / v.norm();
}

struct EigenPairs {
    Eigen::VectorXd values;
    Eigen::MatrixXcd vectors;
};

EigenPairs dense_lowest(const SparseC& mat, int k) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es{Eigen::MatrixXcd(mat)};
    if (es.info() != Eigen::Success)
        throw NumericalError("dense eigensolver failed to converge");
    EigenPairs out;
    out.values = es.eigenvalues().head(k);
    out.vectors = es.eigenvectors().leftCols(k);
    return out;
}

// Lanczos with full reorthogonalization. Converged Ritz pairs are locked and
// deflated; restarts with fresh seeded vectors recover degenerate copies.
EigenPairs lanczos_lowest(const SparseC& mat, int k, const SolverOptions& opt) {
    const std::int64_t dim = mat.rows();
    const double scale = matrix_scale(mat);
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    Eigen::MatrixXcd locked(dim, k);
    std::vector<double> locked_values;
    int num_locked = 0;

    auto orthogonalize_locked = [&](Eigen::VectorXcd& v) {
        for (int pass = 0; pass < 2; ++pass)
            if (num_locked > 0)
                v -= locked.leftCols(num_locked) *
                     (locked.leftCols(num_locked).adjoint() * v);
    };

    for (int restart = 0; restart < opt.max_restarts && num_locked < k; ++restart) {
        Eigen::VectorXcd v(dim);
        for (std::int64_t i = 0; i < dim; ++i) v[i] = Complex(gauss(rng), gauss(rng));
        orthogonalize_locked(v);
        if (v.norm() < 1e-12) break;  // locked space exhausts the matrix
        v.normalize();

        const int max_basis =
            static_cast<int>(std::min<std::int64_t>(opt.max_basis, dim - num_locked));
        Eigen::MatrixXcd basis(dim, max_basis);
        std::vector<double> alpha, beta;
        basis.col(0) = v;
        int built = 0;
        bool exhausted = false;

        for (int j = 0; j < max_basis; ++j) {
            built = j + 1;
            Eigen::VectorXcd w = mat * basis.col(j);
            const double aj = std::real(basis.col(j).dot(w));
            alpha.push_back(aj);
            w -= aj * basis.col(j);
            if (j > 0) w -= beta[j - 1] * basis.col(j - 1);
            // full reorthogonalization against the Krylov basis and the
            // locked space, two passes
            for (int pass = 0; pass < 2; ++pass) {
                w -= basis.leftCols(built) * (basis.leftCols(built).adjoint() * w);
                if (num_locked > 0)
                    w -= locked.leftCols(num_locked) *
                         (locked.leftCols(num_locked).adjoint() * w);
            }
            const double bj = w.norm();
            if (bj < 1e-13 * scale) {
                exhausted = true;  // invariant subspace: Ritz values are exact
                break;
            }
            if (j + 1 < max_basis) {
                beta.push_back(bj);
                basis.col(j + 1) = w / bj;
            } else {
                beta.push_back(bj);
            }
        }

        // Ritz pairs of the tridiagonal section
        Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(built, built);
        for (int i = 0; i < built; ++i) {
            tri(i, i) = alpha[i];
            if (i + 1 < built) tri(i, i + 1) = tri(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(tri);
        if (tes.info() != Eigen::Success)
            throw NumericalError("tridiagonal eigensolver failed");

        // Ritz residual of pair i is next_beta * |s_i[last]|; lock the
        // ascending prefix that already certifies.
        const double next_beta = exhausted ? 0.0 : beta[built - 1];
        const double lock_tol = std::min(0.5 * opt.residual_tol, opt.lanczos_tol * scale);
        int newly_locked = 0;
        for (int i = 0; i < built && num_locked < k; ++i) {
            const double bound = std::abs(next_beta * tes.eigenvectors()(built - 1, i));
            if (bound > lock_tol) break;  // lowest non-converged stops locking
            Eigen::VectorXcd y = basis.leftCols(built) * tes.eigenvectors().col(i);
            orthogonalize_locked(y);
            if (y.norm() < 1e-8) continue;  // already represented
            y.normalize();
            const double lambda = std::real(y.dot(mat * y));
            locked.col(num_locked) = y;
            locked_values.push_back(lambda);
            ++num_locked;
            ++newly_locked;
        }
        if (newly_locked == 0 && exhausted) break;
        if (newly_locked == 0 && restart + 1 >= opt.max_restarts)
            throw NumericalError("Lanczos failed to converge " + std::to_string(k) +
                                 " eigenpairs after " + std::to_string(opt.max_restarts) +
                                 " restarts (locked " + std::to_string(num_locked) + ")");
    }

    if (num_locked < k)
        throw NumericalError("Lanczos locked only " + std::to_string(num_locked) +
                             " of " + std::to_string(k) + " requested eigenpairs");

    // sort locked pairs ascending
    std::vector<int> order(num_locked);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return locked_values[a] < locked_values[b]; });
    EigenPairs out;
    out.values.resize(k);
    out.vectors.resize(dim, k);
    for (int i = 0; i < k; ++i) {
        out.values[i] = locked_values[order[i]];
        out.vectors.col(i) = locked.col(order[i]);
    }
    return out;
}

std::vector<Cluster> cluster_values(const std::vector<double>& sorted, double tol) {
    std::vector<Cluster> clusters;
    for (double v : sorted) {
        if (clusters.empty() || v - clusters.back().value > tol)
            clusters.push_back({v, 1});
        else
            clusters.back().mult += 1;
    }
    return clusters;
}

double auto_cluster_tol(const std::vector<double>& eigs, double requested) {
    if (requested >= 0.0) return requested;
    const double lambda0 = eigs.empty() ? 0.0 : std::abs(eigs.front());
    return 1e-8 * std::max(1.0, lambda0);
}

void fill_clusters(SpectrumReport& rep, double tol) {
    rep.cluster_tol_used = auto_cluster_tol(rep.eigenvalues, tol);
    rep.clusters = cluster_values(rep.eigenvalues, rep.cluster_tol_used);
    rep.ground_simple = !rep.clusters.empty() && rep.clusters.front().mult == 1;
    if (rep.clusters.size() >= 2) {
        rep.gap = rep.clusters[1].value - rep.clusters[0].value;
        rep.has_gap = true;
    } else {
        rep.gap = 0.0;
        rep.has_gap = false;
    }
}

}  // namespace

SpectrumReport lowest_eigenpairs(const FockOperator& op, int k,
                                 const SolverOptions& options) {
    if (!op.hermitian || op.hermiticity_defect() > 1e-10)
        throw NumericalError("lowest_eigenpairs requires a hermitian operator");
    const std::int64_t dim = op.dim();
    if (k < 1) throw ConfigError("need k >= 1 eigenpairs");
    k = static_cast<int>(std::min<std::int64_t>(k, dim));

    const EigenPairs pairs = dim <= options.dense_threshold
                                 ? dense_lowest(op.matrix, k)
                                 : lanczos_lowest(op.matrix, k, options);

    SpectrumReport rep;
    rep.dim = dim;
    rep.cutoff = op.basis->n_max();
    rep.eigenvalues.assign(pairs.values.data(), pairs.values.data() + k);
    rep.residuals.resize(k);
    for (int i = 0; i < k; ++i) {
        rep.residuals[i] = pair_residual(op.matrix, pairs.values[i], pairs.vectors.col(i));
        rep.residual_max = std::max(rep.residual_max, rep.residuals[i]);
    }
    if (rep.residual_max > options.residual_tol)
        throw NumericalError("eigenpair residual " + std::to_string(rep.residual_max) +
                             " exceeds " + std::to_string(options.residual_tol));
    fill_clusters(rep, options.cluster_tol);
    return rep;
}

GapResult mass_gap(const SpectrumReport& report, double cluster_tol) {
    const double tol = auto_cluster_tol(report.eigenvalues, cluster_tol);
    const auto clusters = cluster_values(report.eigenvalues, tol);
    if (clusters.size() < 2)
        throw NumericalError("fewer than two spectral clusters among " +
                             std::to_string(report.eigenvalues.size()) +
                             " eigenvalues; raise k");
    return {clusters[1].value - clusters[0].value, clusters.front().mult == 1};
}

CoherentBoundResult coherent_upper_bound(const FockOperator& op,
                                         const PolySymbol& normal_sym,
                                         const std::vector<Eigen::VectorXcd>& samples,
                                         double allowance,
                                         const SolverOptions& options) {
    if (samples.empty()) throw ConfigError("coherent bound needs sample points");
    double bound = std::numeric_limits<double>::infinity();
    for (const auto& z : samples)
        bound = std::min(bound, normal_sym.evaluate_diagonal(z).real());
    const auto rep = lowest_eigenpairs(op, 1, options);
    return {bound, rep.eigenvalues.front(),
            rep.eigenvalues.front() <= bound + allowance};
}

DominationResult number_comparison_bound(const FockOperator& op,
                                         const PolySymbol& weyl_sym, double c0,
                                         int k, int num_samples,
                                         double sample_radius, double tol,
                                         const SolverOptions& options) {
    const int m = op.basis->m();
    if (weyl_sym.num_vars() != m)
        throw ConfigError("weyl symbol variable count does not match the basis");

    DominationResult result;
    // pointwise certificate against sigma_w^N = zbar z - m/2 on random samples
    std::mt19937_64 rng(options.seed + 1);
    std::uniform_real_distribution<double> u(-sample_radius, sample_radius);
    result.pointwise_ok = true;
    result.pointwise_min_margin = std::numeric_limits<double>::infinity();
    const double number_const = -0.5 * m;
    for (int s = 0; s < num_samples; ++s) {
        Eigen::VectorXcd z(m);
        for (int i = 0; i < m; ++i) z[i] = Complex(u(rng), u(rng));
        const double lhs = weyl_sym.evaluate_diagonal(z).real();
        const double rhs = z.squaredNorm() + number_const + c0;
        const double margin = lhs - rhs;
        result.pointwise_min_margin = std::min(result.pointwise_min_margin, margin);
        if (margin < -1e-10 * std::max(1.0, std::abs(lhs))) {
            result.pointwise_ok = false;
            if (!result.witness) result.witness = z;
        }
    }
    if (!result.pointwise_ok) return result;

    // minimax consequence on the compressed matrices
    k = static_cast<int>(std::min<std::int64_t>(k, op.dim()));
    const auto rep = lowest_eigenpairs(op, k, options);
    std::vector<double> number_eigs(op.dim());
    for (std::int64_t i = 0; i < op.dim(); ++i)
        number_eigs[i] = op.basis->total_occupation(i);
    std::sort(number_eigs.begin(), number_eigs.end());

    result.checked = k;
    result.eigenvalue_ok = true;
    result.worst_slack = std::numeric_limits<double>::infinity();
    for (int i = 0; i < k; ++i) {
        const double slack = rep.eigenvalues[i] - (number_eigs[i] + c0);
        result.worst_slack = std::min(result.worst_slack, slack);
        if (slack < -tol) result.eigenvalue_ok = false;
    }
    return result;
}

SweepResult cutoff_sweep(const ModeModel& model, const std::vector<int>& cutoffs,
                         int k, const SolverOptions& options,
                         std::int64_t state_budget, int threads) {
    if (cutoffs.empty()) throw ConfigError("sweep needs at least one cutoff");
    for (std::size_t i = 1; i < cutoffs.size(); ++i)
        if (cutoffs[i] <= cutoffs[i - 1])
            throw ConfigError("cutoffs must be strictly increasing");

    const int m = model.spec.m();
    SweepResult sweep;
    std::vector<int> feasible;
    for (int c : cutoffs) {
        const std::int64_t dim = FockBasis::dimension(m, c);
        if (dim < 0 || dim > state_budget) {
            if (feasible.empty())
                throw BudgetError("first cutoff already exceeds the state budget");
            sweep.budget_truncated = true;
            break;
        }
        feasible.push_back(c);
    }

    auto solve_at = [&](int cutoff) {
        auto basis = FockBasis::make(m, cutoff, state_budget);
        const auto op = quantize(model.h_classical, std::move(basis));
        SweepEntry entry{cutoff, op.dim(), lowest_eigenpairs(op, k, options)};
        return entry;
    };

    if (threads > 1 && feasible.size() > 1) {
        std::vector<std::future<SweepEntry>> futures;
        futures.reserve(feasible.size());
        for (int c : feasible)
            futures.push_back(std::async(std::launch::async, solve_at, c));
        for (auto& f : futures) sweep.entries.push_back(f.get());
    } else {
        for (int c : feasible) sweep.entries.push_back(solve_at(c));
    }

    if (sweep.entries.size() >= 2) {
        const auto& prev = sweep.entries[sweep.entries.size() - 2].report;
        const auto& last = sweep.entries.back().report;
        const std::size_t shared =
            std::min(prev.eigenvalues.size(), last.eigenvalues.size());
        for (std::size_t i = 0; i < shared; ++i) {
            const double delta = last.eigenvalues[i] - prev.eigenvalues[i];
            const double rel = std::abs(delta) /
                               std::max(std::abs(prev.eigenvalues[i]), 1e-12);
            sweep.last_deltas_rel.push_back(rel);
            if (rel > 0.05) sweep.flagged.push_back(static_cast<int>(i));
        }
        if (prev.has_gap && last.has_gap)
            sweep.gap_delta_rel =
                std::abs(last.gap - prev.gap) / std::max(std::abs(prev.gap), 1e-12);
    }
    return sweep;
}

MultimodeReport multimode_spectrum(const std::vector<std::vector<double>>& per_mode,
                                   double ceiling, double cluster_tol) {
    if (per_mode.empty()) throw ConfigError("multimode spectrum needs modes");
    for (const auto& list : per_mode)
        if (list.empty()) throw ConfigError("a mode has no eigenvalues");

    const std::size_t n = per_mode.size();
    std::vector<double> min_suffix(n + 1, 0.0);
    for (std::size_t i = n; i-- > 0;)
        min_suffix[i] = min_suffix[i + 1] + per_mode[i].front();
    if (min_suffix[0] >= ceiling)
        throw NumericalError("energy ceiling admits no sum: the joint ground level " +
                             std::to_string(min_suffix[0]) + " is not below it");

    MultimodeReport out;
    // every mode contributes one eigenvalue; lists are ascending so the scan
    // can stop as soon as the suffix minimum pushes past the ceiling
    const std::function<void(std::size_t, double)> walk = [&](std::size_t mode,
                                                              double partial) {
        if (mode == n) {
            out.sums.push_back(partial);
            return;
        }
        for (double lambda : per_mode[mode]) {
            const double next = partial + lambda;
            if (next + min_suffix[mode + 1] >= ceiling) break;
            walk(mode + 1, next);
        }
    };
    walk(0, 0.0);

    for (std::size_t i = 0; i < n; ++i) {
        double others = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) others += per_mode[j].front();
        if (per_mode[i].back() + others < ceiling) out.complete = false;
    }

    std::sort(out.sums.begin(), out.sums.end());
    out.clusters = cluster_values(out.sums, cluster_tol);
    return out;
}

std::string spectrum_report_json(const SpectrumReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.key("cutoff").value(rep.cutoff);
    w.key("dim").value(static_cast<long long>(rep.dim));
    w.key("eigenvalues").begin_array();
    for (double v : rep.eigenvalues) w.value(v);
    w.end_array();
    w.key("clusters").begin_array();
    for (const auto& c : rep.clusters) {
        w.begin_object();
        w.key("value").value(c.value);
        w.key("mult").value(c.mult);
        w.end_object();
    }
    w.end_array();
    w.key("gap").value(rep.gap);
    w.key("ground_simple").value(rep.ground_simple);
    w.key("residual_max").value(rep.residual_max);
    w.end_object();
    return w.str();
}

std::string sweep_to_csv(const SweepResult& sweep) {
    std::string out =
        "cutoff,dim,lambda0,gap,ground_simple,residual_max,delta_lambda0_rel,"
        "delta_gap_rel\n";
    char line[256];
    for (std::size_t i = 0; i < sweep.entries.size(); ++i) {
        const auto& e = sweep.entries[i];
        const bool last = i + 1 == sweep.entries.size();
        const double dl0 = (last && !sweep.last_deltas_rel.empty())
                               ? sweep.last_deltas_rel.front()
                               : 0.0;
        const double dg = last ? sweep.gap_delta_rel : 0.0;
        std::snprintf(line, sizeof(line), "%d,%lld,%.17g,%.17g,%d,%.17g,%.17g,%.17g\n",
                      e.cutoff, static_cast<long long>(e.dim),
                      e.report.eigenvalues.empty() ? 0.0 : e.report.eigenvalues.front(),
                      e.report.gap, e.report.ground_simple ? 1 : 0,
                      e.report.residual_max, dl0, dg);
        out += line;
    }
    return out;
}

std::string sweep_to_json(const SweepResult& sweep) {
    std::string out = "{\"entries\":[";
    for (std::size_t i = 0; i < sweep.entries.size(); ++i) {
        if (i) out += ",";
        out += spectrum_report_json(sweep.entries[i].report);
    }
    out += "],\"last_deltas_rel\":[";
    for (std::size_t i = 0; i < sweep.last_deltas_rel.size(); ++i) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%s%.17g", i ? "," : "",
                      sweep.last_deltas_rel[i]);
        out += buf;
    }
    out += "],\"flagged\":[";
    for (std::size_t i = 0; i < sweep.flagged.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(sweep.flagged[i]);
    }
    char tail[128];
    std::snprintf(tail, sizeof(tail), "],\"gap_delta_rel\":%.17g,\"budget_truncated\":%s}",
                  sweep.gap_delta_rel, sweep.budget_truncated ? "true" : "false");
    out += tail;
    return out;
}

std::string multimode_to_json(const MultimodeReport& rep) {
    JsonWriter w;
    w.begin_object();
    w.key("sums").begin_array();
    for (double v : rep.sums) w.value(v);
    w.end_array();
    w.key("clusters").begin_array();
    for (const auto& c : rep.clusters) {
        w.begin_object();
        w.key("value").value(c.value);
        w.key("mult").value(c.mult);
        w.end_object();
    }
    w.end_array();
    w.key("complete").value(rep.complete);
    w.end_object();
    return w.str();
}

}  // namespace ymsym
