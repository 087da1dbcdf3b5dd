#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ymsym/lie_algebra.hpp"
#include "ymsym/poly_symbol.hpp"

namespace ymsym {

// One Fourier mode j in Z^3 with its transversal polarization frame and gauge
// algebra. The mode carries m = |polarizations| * dim_g real degrees of
// freedom per conjugate block; variable v = s * dim_g + c couples
// polarization s with generator c.
struct ModeSpec {
    std::array<int, 3> j{};
    double j_scale = 1.0;  // 1 or 2*pi, applied to j in the curl
    std::vector<Eigen::Vector3d> polarizations;
    LieAlgebraBasis algebra;

    int m() const {
        return static_cast<int>(polarizations.size()) * algebra.dim();
    }
    Eigen::Vector3d scaled_j() const {
        return j_scale * Eigen::Vector3d(j[0], j[1], j[2]);
    }
};

/// Deterministic frame: Gram-Schmidt against j seeded from the smallest-index
/// standard basis vector, three vectors when j = 0, two otherwise.
ModeSpec make_mode(const std::array<int, 3>& j, LieAlgebraBasis algebra,
                   bool two_pi = false);

// Classical per-mode Hamiltonian. h1 (magnetic) and h2 (electric) live in the
// real (a, e) chart; h_classical is their sum pushed to the complex chart and
// tagged anti-normal, ready for quantization.
struct ModeModel {
    ModeSpec spec;
    PolySymbol h1;
    PolySymbol h2;
    PolySymbol h_classical;
};

/// h1 = 1/2 sum_{i,c} (j x a - [a x a])_i^c squared, h2 = 1/2 e.e, with the
/// bracket cross product [a x b]_i = eps_ijk [a_j, b_k] over the gauge algebra.
ModeModel build_classical_symbol(const ModeSpec& spec);

/// Exact second-derivative sums over the a-block / e-block. Inputs are read
/// in the real chart.
PolySymbol laplacian_a(const PolySymbol& real_chart_sym);
PolySymbol laplacian_e(const PolySymbol& real_chart_sym);

/// Terms of the given total degree.
PolySymbol degree_part(const PolySymbol& sym, int degree);

// Structural decomposition of the Weyl/normal symbols of the quantized mode
// Hamiltonian against its classical (anti-normal) symbol. The continuum
// reference constants are displayed alongside the finite-mode values, never
// asserted against them.
struct Prop41Report {
    int m = 0;
    int num_polarizations = 0;

    // Laplacian structure of the magnetic pieces
    double curl_laplacian_constant = 0.0;   // lap_a of the quadratic curl term
    double curl_laplacian_residual = 0.0;   // its a-dependent remainder (expect 0)
    double cross_laplacian_max_abs = 0.0;   // lap_a of the cubic term (expect 0)

    // Mass quadratic form lap_a(quartic part of h1), in u coordinates
    Eigen::MatrixXd mass_form;
    double mass_min_eig = 0.0;
    double mass_max_eig = 0.0;
    // max difference against the independent structure-constant contraction
    double mass_contraction_max_diff = 0.0;

    // Constants actually produced by the exact transforms
    double weyl_shift_constant = 0.0;    // sigma_w - h_classical, constant term
    double normal_shift_constant = 0.0;  // sigma_v - h_classical, constant term
    double weyl_mass_coeff = 0.0;        // ||a||^2 coefficient of sigma_w - h_classical
    double c0_number_comparison = 0.0;   // constant of sigma_w - sigma_w^N

    // residual of (sigma_w - h_classical) after removing constant + a-quadratic
    double decomposition_residual = 0.0;

    // Continuum reference values for side-by-side display
    static constexpr double kReferenceWeylConstant = 9.0 / 16.0;
    static constexpr double kReferenceNormalConstant = 24.0 / 16.0;
    static constexpr double kReferenceFloorConstant = 17.0 / 16.0;
    static constexpr double kReferenceWeylMassCoeff = 0.5;
    static constexpr double kReferencePerModeMassCoeff = 1.0;
};

/// Computes sigma_w and sigma_v from h_classical by exact polynomial
/// transforms and decomposes the shifts. Throws NumericalError when the
/// difference contains terms beyond (constant + quadratic in a), which the
/// exact transform of a quartic cannot produce.
Prop41Report verify_prop41(const ModeModel& model);

std::string prop41_to_json(const Prop41Report& report);

}  // namespace ymsym
