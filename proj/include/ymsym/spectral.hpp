#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ymsym/fock.hpp"
#include "ymsym/mode_model.hpp"

namespace ymsym {

struct SolverOptions {
    std::uint64_t seed = 42;            // Krylov start vectors
    double residual_tol = 1e-8;         // certification threshold per pair
    double lanczos_tol = 1e-10;         // convergence target inside the solver
    std::int64_t dense_threshold = 2000;  // dense solve below, Lanczos above
    int max_basis = 350;                // Lanczos vectors per restart
    int max_restarts = 60;
    double cluster_tol = -1.0;          // < 0: 1e-8 * max(1, |lambda0|)
};

struct Cluster {
    double value;  // smallest member of the cluster
    int mult;
};

struct SpectrumReport {
    std::vector<double> eigenvalues;  // ascending, the k lowest
    std::vector<double> residuals;    // ||Hv - lambda v|| / ||v|| per pair
    std::vector<Cluster> clusters;
    double gap = 0.0;
    bool has_gap = false;
    bool ground_simple = false;
    int cutoff = 0;
    std::int64_t dim = 0;
    double cluster_tol_used = 0.0;
    double residual_max = 0.0;
};

/// k smallest eigenvalues with certified residuals. Dense solve below
/// dense_threshold, restarted Lanczos with full reorthogonalization and
/// deflation above it; deterministic for a fixed seed.
SpectrumReport lowest_eigenpairs(const FockOperator& op, int k,
                                 const SolverOptions& options = {});

struct GapResult {
    double gap;
    bool ground_simple;
};

/// Reclusters the report at the given tolerance (< 0 for the default) and
/// returns (second cluster min - lowest value). Throws NumericalError when
/// fewer than two clusters are present among the computed pairs.
GapResult mass_gap(const SpectrumReport& report, double cluster_tol = -1.0);

struct CoherentBoundResult {
    double bound;     // min of the normal symbol over the samples
    double lambda0;
    bool satisfied;   // lambda0 <= bound + allowance
};

/// Variational upper bound from coherent-state expectations: the normal
/// symbol evaluated on the real diagonal dominates the ground energy.
CoherentBoundResult coherent_upper_bound(const FockOperator& op,
                                         const PolySymbol& normal_sym,
                                         const std::vector<Eigen::VectorXcd>& samples,
                                         double allowance = 1e-6,
                                         const SolverOptions& options = {});

struct DominationResult {
    bool pointwise_ok = false;
    double pointwise_min_margin = 0.0;
    std::optional<Eigen::VectorXcd> witness;  // sample violating the domination
    bool eigenvalue_ok = false;
    double worst_slack = 0.0;  // min over i of lambda_i(op) - lambda_i(N) - c0
    int checked = 0;
};

/// Checks sigma_w(op) >= sigma_w(N) + c0 pointwise on random diagonal samples
/// and, when that certificate passes, asserts the minimax consequence
/// lambda_i(op) >= lambda_i(N) + c0 - tol for the k lowest indices.
DominationResult number_comparison_bound(const FockOperator& op,
                                         const PolySymbol& weyl_sym, double c0,
                                         int k, int num_samples = 256,
                                         double sample_radius = 1.0,
                                         double tol = 1e-6,
                                         const SolverOptions& options = {});

struct SweepEntry {
    int cutoff;
    std::int64_t dim;
    SpectrumReport report;
};

struct SweepResult {
    std::vector<SweepEntry> entries;
    // relative change of each eigenvalue between the two largest cutoffs
    std::vector<double> last_deltas_rel;
    std::vector<int> flagged;  // indices whose last delta exceeds 5%
    double gap_delta_rel = 0.0;
    bool budget_truncated = false;
};

/// Quantizes the mode Hamiltonian at each cutoff and tracks per-eigenvalue
/// convergence. Exceeding the state budget mid-sweep returns the partial
/// result with budget_truncated set; exceeding it at the first cutoff throws.
SweepResult cutoff_sweep(const ModeModel& model, const std::vector<int>& cutoffs,
                         int k, const SolverOptions& options = {},
                         std::int64_t state_budget = kDefaultStateBudget,
                         int threads = 1);

struct MultimodeReport {
    std::vector<double> sums;  // ascending, strictly below the ceiling
    std::vector<Cluster> clusters;
    bool complete = true;  // false when a truncated per-mode list may hide sums
};

/// Direct-sum spectrum: every mode contributes one eigenvalue; the multiset
/// of finite sums below the ceiling is enumerated, never the tensor matrix.
MultimodeReport multimode_spectrum(const std::vector<std::vector<double>>& per_mode,
                                   double ceiling, double cluster_tol = 1e-9);

std::string spectrum_report_json(const SpectrumReport& report);
std::string sweep_to_csv(const SweepResult& sweep);
std::string sweep_to_json(const SweepResult& sweep);
std::string multimode_to_json(const MultimodeReport& report);

}  // namespace ymsym
