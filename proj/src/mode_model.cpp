#include "ymsym/mode_model.hpp"

#include <cmath>

#include "ymsym/json_writer.hpp"

namespace ymsym {

namespace {

constexpr double kTwoPi = 6.2831853071795864769;

double levi_civita(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0.0;
    return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
}

}  // namespace

ModeSpec make_mode(const std::array<int, 3>& j, LieAlgebraBasis algebra,
                   bool two_pi) {
    ModeSpec spec{j, two_pi ? kTwoPi : 1.0, {}, std::move(algebra)};
    const Eigen::Vector3d jv(j[0], j[1], j[2]);
    if (jv.norm() == 0.0) {
        for (int i = 0; i < 3; ++i)
            spec.polarizations.push_back(Eigen::Vector3d::Unit(i));
        return spec;
    }
    const Eigen::Vector3d jhat = jv.normalized();
    for (int i = 0; i < 3 && spec.polarizations.size() < 2; ++i) {
        Eigen::Vector3d v = Eigen::Vector3d::Unit(i);
        v -= v.dot(jhat) * jhat;
        for (const auto& p : spec.polarizations) v -= v.dot(p) * p;
        if (v.norm() > 1e-12) spec.polarizations.push_back(v.normalized());
    }
    return spec;
}

ModeModel build_classical_symbol(const ModeSpec& spec) {
    const int d = spec.algebra.dim();
    const int n_pol = static_cast<int>(spec.polarizations.size());
    const int m = spec.m();
    const Eigen::Vector3d jt = spec.scaled_j();

    const std::vector<int> zeros(m, 0);
    auto a_var = [&](int s, int c) {
        std::vector<int> alpha(m, 0);
        alpha[s * d + c] = 1;
        return alpha;
    };

    PolySymbol h1(m);
    for (int i = 0; i < 3; ++i) {
        for (int c = 0; c < d; ++c) {
            // (j x a)_i^c - [a x a]_i^c as a polynomial in the a-block
            PolySymbol field(m);
            for (int s = 0; s < n_pol; ++s) {
                const double curl_coeff = jt.cross(spec.polarizations[s])[i];
                if (curl_coeff != 0.0) field.add_term(a_var(s, c), zeros, curl_coeff);
            }
            for (int s = 0; s < n_pol; ++s)
                for (int t = 0; t < n_pol; ++t) {
                    const double geom = spec.polarizations[s]
                                            .cross(spec.polarizations[t])[i];
                    if (geom == 0.0) continue;
                    for (int a = 0; a < d; ++a)
                        for (int b = 0; b < d; ++b) {
                            const double f = spec.algebra.structure(a, b, c);
                            if (f == 0.0) continue;
                            std::vector<int> alpha(m, 0);
                            alpha[s * d + a] += 1;
                            alpha[t * d + b] += 1;
                            field.add_term(alpha, zeros, -geom * f);
                        }
                }
            if (!field.empty()) h1 = h1 + (field * field).scaled(0.5);
        }
    }

    PolySymbol h2(m);
    for (int v = 0; v < m; ++v) {
        std::vector<int> beta(m, 0);
        beta[v] = 2;
        h2.add_term(zeros, beta, 0.5);
    }

    PolySymbol h_classical =
        to_complex_chart(h1 + h2).with_ordering(Ordering::antinormal);
    return {spec, std::move(h1), std::move(h2), std::move(h_classical)};
}

namespace {

PolySymbol laplacian_block(const PolySymbol& sym, int block) {
    const int m = sym.num_vars();
    PolySymbol out(m, sym.ordering());
    for (const auto& [key, c] : sym.terms())
        for (int k = 0; k < m; ++k) {
            const int e = key[block * m + k];
            if (e < 2) continue;
            PolySymbol::Key down = key;
            down[block * m + k] = e - 2;
            out.add_term(down, c * static_cast<double>(e) * static_cast<double>(e - 1));
        }
    return out;
}

}  // namespace

PolySymbol laplacian_a(const PolySymbol& real_chart_sym) {
    return laplacian_block(real_chart_sym, 0);
}

PolySymbol laplacian_e(const PolySymbol& real_chart_sym) {
    return laplacian_block(real_chart_sym, 1);
}

PolySymbol degree_part(const PolySymbol& sym, int degree) {
    PolySymbol out(sym.num_vars(), sym.ordering());
    for (const auto& [key, c] : sym.terms()) {
        int d = 0;
        for (int e : key) d += e;
        if (d == degree) out.add_term(key, c);
    }
    return out;
}

namespace {

double real_coeff(const Complex& c, const char* what) {
    if (std::abs(c.imag()) > 1e-10 * std::max(1.0, std::abs(c)))
        throw NumericalError(std::string("expected a real coefficient in ") + what);
    return c.real();
}

// Quadratic form matrix M with p(u) = sum_{v,w} M_vw u_v u_w for a symbol
// that is quadratic in the a-block.
Eigen::MatrixXd quadratic_form_matrix(const PolySymbol& sym, const char* what) {
    const int m = sym.num_vars();
    Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(m, m);
    for (const auto& [key, c] : sym.terms()) {
        int first = -1, second = -1;
        int total = 0;
        for (int k = 0; k < m; ++k) {
            for (int rep = 0; rep < key[k]; ++rep) {
                if (first < 0)
                    first = k;
                else
                    second = k;
                ++total;
            }
            if (key[m + k] != 0)
                throw NumericalError(std::string(what) + " depends on the e-block");
        }
        if (total != 2)
            throw NumericalError(std::string(what) + " is not purely quadratic");
        const double v = real_coeff(c, what);
        if (first == second) {
            mat(first, first) += v;
        } else {
            mat(first, second) += 0.5 * v;
            mat(second, first) += 0.5 * v;
        }
    }
    return mat;
}

// Independent evaluation of lap_a(quartic) by tensor contractions: the
// algebra contraction K_ab = sum_{m,c} c_mac c_mbc tensored with the spatial
// contraction of two cross products through the polarization projector.
Eigen::MatrixXd mass_form_by_contraction(const ModeSpec& spec) {
    const int d = spec.algebra.dim();
    const int n_pol = static_cast<int>(spec.polarizations.size());
    const int m = spec.m();

    Eigen::MatrixXd k_alg = Eigen::MatrixXd::Zero(d, d);
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
            double s = 0.0;
            for (int mm = 0; mm < d; ++mm)
                for (int c = 0; c < d; ++c)
                    s += spec.algebra.structure(mm, a, c) *
                         spec.algebra.structure(mm, b, c);
            k_alg(a, b) = s;
        }

    Eigen::Matrix3d proj = Eigen::Matrix3d::Zero();
    for (const auto& p : spec.polarizations) proj += p * p.transpose();

    Eigen::Matrix3d g = Eigen::Matrix3d::Zero();
    for (int k = 0; k < 3; ++k)
        for (int kp = 0; kp < 3; ++kp) {
            double s = 0.0;
            for (int i = 0; i < 3; ++i)
                for (int jj = 0; jj < 3; ++jj)
                    for (int jp = 0; jp < 3; ++jp)
                        s += levi_civita(i, jj, k) * levi_civita(i, jp, kp) *
                             proj(jj, jp);
            g(k, kp) = s;
        }

    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(m, m);
    for (int s = 0; s < n_pol; ++s)
        for (int t = 0; t < n_pol; ++t) {
            const double spatial =
                spec.polarizations[s].dot(g * spec.polarizations[t]);
            for (int a = 0; a < d; ++a)
                for (int b = 0; b < d; ++b)
                    mass(s * d + a, t * d + b) = 4.0 * k_alg(a, b) * spatial;
        }
    return mass;
}

}  // namespace

Prop41Report verify_prop41(const ModeModel& model) {
    Prop41Report rep;
    const int m = model.spec.m();
    rep.m = m;
    rep.num_polarizations = static_cast<int>(model.spec.polarizations.size());

    // Laplacian structure of the magnetic pieces, degree by degree
    const PolySymbol curl_quad = degree_part(model.h1, 2);
    const PolySymbol cross_cubic = degree_part(model.h1, 3);
    const PolySymbol quartic = degree_part(model.h1, 4);

    const PolySymbol lap_curl = laplacian_a(curl_quad);
    const std::vector<int> zeros(m, 0);
    rep.curl_laplacian_constant = real_coeff(lap_curl.coeff(zeros, zeros), "lap curl");
    rep.curl_laplacian_residual =
        (lap_curl - PolySymbol::constant(m, rep.curl_laplacian_constant))
            .max_abs_coeff();
    rep.cross_laplacian_max_abs = laplacian_a(cross_cubic).max_abs_coeff();

    const PolySymbol mass_poly = laplacian_a(quartic);
    rep.mass_form = mass_poly.empty() ? Eigen::MatrixXd::Zero(m, m)
                                      : quadratic_form_matrix(mass_poly, "mass form");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rep.mass_form,
                                                      Eigen::EigenvaluesOnly);
    rep.mass_min_eig = es.eigenvalues().minCoeff();
    rep.mass_max_eig = es.eigenvalues().maxCoeff();
    rep.mass_contraction_max_diff =
        (rep.mass_form - mass_form_by_contraction(model.spec))
            .cwiseAbs()
            .maxCoeff();

    // Exact ordering transforms of the classical symbol
    const PolySymbol sigma_w =
        convert_ordering(model.h_classical, Ordering::antinormal, Ordering::weyl);
    const PolySymbol sigma_v =
        convert_ordering(model.h_classical, Ordering::antinormal, Ordering::normal);

    const PolySymbol diff_w = to_real_chart(sigma_w - model.h_classical);
    const PolySymbol diff_v = to_real_chart(sigma_v - model.h_classical);

    rep.weyl_shift_constant = real_coeff(diff_w.coeff(zeros, zeros), "weyl shift");
    rep.normal_shift_constant = real_coeff(diff_v.coeff(zeros, zeros), "normal shift");

    const PolySymbol diff_w_quad = degree_part(diff_w, 2);
    const PolySymbol remainder =
        diff_w - PolySymbol::constant(m, rep.weyl_shift_constant) - diff_w_quad;
    rep.decomposition_residual = remainder.max_abs_coeff();
    if (rep.decomposition_residual > 1e-10 * std::max(1.0, diff_w.max_abs_coeff()))
        throw NumericalError(
            "sigma_w - h_classical has terms beyond constant + quadratic; the "
            "smoothing of a quartic cannot produce them");

    if (!diff_w_quad.empty()) {
        const Eigen::MatrixXd wq = quadratic_form_matrix(diff_w_quad, "weyl mass");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> wes(wq, Eigen::EigenvaluesOnly);
        rep.weyl_mass_coeff = wes.eigenvalues().minCoeff();
    }
    // sigma_w^N = zbar z - m/2 has constant -m/2
    rep.c0_number_comparison = rep.weyl_shift_constant + 0.5 * m;
    return rep;
}

std::string prop41_to_json(const Prop41Report& rep) {
    JsonWriter w;
    w.begin_object();
    w.key("m").value(rep.m);
    w.key("polarizations").value(rep.num_polarizations);
    w.key("curl_laplacian_constant").value(rep.curl_laplacian_constant);
    w.key("curl_laplacian_residual").value(rep.curl_laplacian_residual);
    w.key("cross_laplacian_max_abs").value(rep.cross_laplacian_max_abs);
    w.key("mass_min_eig").value(rep.mass_min_eig);
    w.key("mass_max_eig").value(rep.mass_max_eig);
    w.key("mass_contraction_max_diff").value(rep.mass_contraction_max_diff);
    w.key("weyl_shift_constant").value(rep.weyl_shift_constant);
    w.key("normal_shift_constant").value(rep.normal_shift_constant);
    w.key("weyl_mass_coeff").value(rep.weyl_mass_coeff);
    w.key("c0_number_comparison").value(rep.c0_number_comparison);
    w.key("decomposition_residual").value(rep.decomposition_residual);
    w.key("continuum_reference").begin_object();
    w.key("weyl_constant").value(Prop41Report::kReferenceWeylConstant);
    w.key("normal_constant").value(Prop41Report::kReferenceNormalConstant);
    w.key("floor_constant").value(Prop41Report::kReferenceFloorConstant);
    w.key("weyl_mass_coeff").value(Prop41Report::kReferenceWeylMassCoeff);
    w.key("per_mode_mass_coeff").value(Prop41Report::kReferencePerModeMassCoeff);
    w.end_object();
    w.end_object();
    return w.str();
}

}  // namespace ymsym
