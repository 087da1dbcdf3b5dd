#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

#include "ymsym/mode_model.hpp"
#include "ymsym/symbol_text.hpp"

using namespace ymsym;

namespace {

double coeff_distance(const PolySymbol& a, const PolySymbol& b) {
    double d = 0.0;
    for (const auto& [key, c] : a.terms()) {
        auto it = b.terms().find(key);
        d = std::max(d, std::abs(c - (it == b.terms().end() ? Complex(0) : it->second)));
    }
    for (const auto& [key, c] : b.terms()) {
        auto it = a.terms().find(key);
        d = std::max(d, std::abs(c - (it == a.terms().end() ? Complex(0) : it->second)));
    }
    return d;
}

}  // namespace

TEST_CASE("polarization frames") {
    const auto su2 = build_algebra("su2");

    SUBCASE("j = (0,0,1)") {
        const auto spec = make_mode({0, 0, 1}, su2);
        REQUIRE(spec.polarizations.size() == 2);
        CHECK(spec.m() == 6);
        CHECK((spec.polarizations[0] - Eigen::Vector3d::UnitX()).norm() < 1e-15);
        CHECK((spec.polarizations[1] - Eigen::Vector3d::UnitY()).norm() < 1e-15);
    }
    SUBCASE("j = 0 keeps all three directions") {
        const auto spec = make_mode({0, 0, 0}, su2);
        CHECK(spec.polarizations.size() == 3);
        CHECK(spec.m() == 9);
    }
    SUBCASE("j = (1,1,0) frame is deterministic") {
        const auto spec = make_mode({1, 1, 0}, su2);
        REQUIRE(spec.polarizations.size() == 2);
        const Eigen::Vector3d p1(1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0);
        CHECK((spec.polarizations[0] - p1).norm() < 1e-14);
        CHECK((spec.polarizations[1] - Eigen::Vector3d::UnitZ()).norm() < 1e-14);
    }
    SUBCASE("su3 mode size") {
        const auto spec = make_mode({1, 1, 0}, build_algebra("su3"));
        CHECK(spec.m() == 16);
    }
    SUBCASE("transversality and orthonormality") {
        for (const std::array<int, 3>& j :
             {std::array<int, 3>{0, 0, 1}, {1, 1, 0}, {2, -1, 3}, {0, 2, 0}}) {
            const auto spec = make_mode(j, su2);
            const Eigen::Vector3d jv(j[0], j[1], j[2]);
            for (std::size_t s = 0; s < spec.polarizations.size(); ++s) {
                CHECK(std::abs(jv.dot(spec.polarizations[s])) < 1e-12);
                for (std::size_t t = 0; t < spec.polarizations.size(); ++t)
                    CHECK(std::abs(spec.polarizations[s].dot(spec.polarizations[t]) -
                                   (s == t ? 1.0 : 0.0)) < 1e-12);
            }
        }
    }
}

TEST_CASE("classical symbol structure") {
    const auto su2 = build_algebra("su2");

    SUBCASE("j = 0 gives a pure quartic magnetic part") {
        const auto model = build_classical_symbol(make_mode({0, 0, 0}, su2));
        CHECK(degree_part(model.h1, 2).empty());
        CHECK(degree_part(model.h1, 3).empty());
        CHECK_FALSE(degree_part(model.h1, 4).empty());
        CHECK(model.h1.max_degree_beta() == 0);  // no e dependence
    }
    SUBCASE("abelian diagnostic gives a pure quadratic") {
        const auto model = build_classical_symbol(make_mode({0, 0, 1}, su2.zeroed()));
        CHECK(model.h1.total_degree() == 2);
        // 1/2 |j|^2 ||u||^2: diagonal with coefficient 1/2
        for (int v = 0; v < 6; ++v) {
            std::vector<int> alpha(6, 0);
            alpha[v] = 2;
            CHECK(std::abs(model.h1.coeff(alpha, std::vector<int>(6, 0)) -
                           Complex(0.5)) < 1e-14);
        }
    }
    SUBCASE("magnetic degrees are within {2,3,4} and electric is e.e/2") {
        const auto model = build_classical_symbol(make_mode({0, 0, 1}, su2));
        for (const auto& [key, c] : model.h1.terms()) {
            int deg = 0;
            for (int e : key) deg += e;
            CHECK(deg >= 2);
            CHECK(deg <= 4);
        }
        CHECK(model.h1.max_degree_beta() == 0);
        CHECK(model.h2.max_degree_alpha() == 0);
        CHECK(model.h2.total_degree() == 2);
        CHECK(model.h2.term_count() == 6);
    }
    SUBCASE("h_classical is the complex-chart sum, hermitian, zero at origin") {
        const auto model = build_classical_symbol(make_mode({0, 0, 1}, su2));
        CHECK(coeff_distance(model.h_classical,
                             to_complex_chart(model.h1 + model.h2)) == 0.0);
        CHECK(model.h_classical.ordering() == Ordering::antinormal);
        CHECK(model.h_classical.is_hermitian(1e-12));
        const Eigen::VectorXcd origin = Eigen::VectorXcd::Zero(6);
        CHECK(std::abs(model.h_classical.evaluate_diagonal(origin)) < 1e-14);
    }
    SUBCASE("nonnegative on the real diagonal") {
        const auto model = build_classical_symbol(make_mode({0, 0, 1}, su2));
        std::mt19937_64 rng(5150);
        std::uniform_real_distribution<double> u(-1.5, 1.5);
        for (int trial = 0; trial < 10000; ++trial) {
            Eigen::VectorXcd z(6);
            for (int k = 0; k < 6; ++k) z[k] = Complex(u(rng), u(rng));
            const Complex v = model.h_classical.evaluate_diagonal(z);
            CHECK(v.real() >= -1e-10);
            CHECK(std::abs(v.imag()) < 1e-10 * std::max(1.0, std::abs(v)));
        }
    }
}

TEST_CASE("su2 quartic matches a brute-force expansion") {
    // Dense re-expansion of 1/2 ||[a x a]||^2 straight from the definition,
    // with its own index bookkeeping.
    const auto su2 = build_algebra("su2");
    const auto spec = make_mode({0, 0, 1}, su2);
    const auto model = build_classical_symbol(spec);
    const int d = su2.dim();
    const int m = spec.m();

    std::map<std::vector<int>, double> dense;
    for (int i = 0; i < 3; ++i)
        for (int c = 0; c < d; ++c) {
            // B_i^c = sum_{s,t,a,b} (p_s x p_t)_i f_abc u_{s,a} u_{t,b}
            std::map<std::pair<int, int>, double> b_coeffs;
            for (int s = 0; s < 2; ++s)
                for (int t = 0; t < 2; ++t) {
                    const double geom =
                        spec.polarizations[s].cross(spec.polarizations[t])[i];
                    if (geom == 0.0) continue;
                    for (int a = 0; a < d; ++a)
                        for (int b = 0; b < d; ++b) {
                            const double f = su2.structure(a, b, c);
                            if (f != 0.0)
                                b_coeffs[{s * d + a, t * d + b}] += geom * f;
                        }
                }
            for (const auto& [vw1, c1] : b_coeffs)
                for (const auto& [vw2, c2] : b_coeffs) {
                    std::vector<int> key(m, 0);
                    key[vw1.first] += 1;
                    key[vw1.second] += 1;
                    key[vw2.first] += 1;
                    key[vw2.second] += 1;
                    dense[key] += 0.5 * c1 * c2;
                }
        }

    const auto quartic = degree_part(model.h1, 4);
    for (const auto& [alpha, v] : dense) {
        if (std::abs(v) < 1e-14) continue;
        CHECK(std::abs(quartic.coeff(alpha, std::vector<int>(m, 0)) - Complex(v)) <
              1e-12);
    }
    std::size_t dense_nonzero = 0;
    for (const auto& [alpha, v] : dense)
        if (std::abs(v) > 1e-14) ++dense_nonzero;
    CHECK(quartic.term_count() == dense_nonzero);
}

TEST_CASE("laplacians") {
    const auto su2 = build_algebra("su2");
    const auto model = build_classical_symbol(make_mode({0, 0, 1}, su2));
    const int m = 6;

    SUBCASE("lap_e of the electric part counts the variables") {
        const auto lap = laplacian_e(model.h2);
        CHECK(lap.term_count() == 1);
        CHECK(std::abs(lap.coeff(std::vector<int>(m, 0), std::vector<int>(m, 0)) -
                       Complex(m)) < 1e-14);
    }
    SUBCASE("lap_a of a constant vanishes") {
        CHECK(laplacian_a(PolySymbol::constant(m, 3.25)).empty());
    }
    SUBCASE("lap_a of the curl quadratic is m |j|^2") {
        const auto lap = laplacian_a(degree_part(model.h1, 2));
        CHECK(std::abs(lap.coeff(std::vector<int>(m, 0), std::vector<int>(m, 0)) -
                       Complex(6.0)) < 1e-13);
        CHECK(lap.term_count() == 1);
    }
}

TEST_CASE("prop41 structural report") {
    const auto su2 = build_algebra("su2");

    SUBCASE("su2, j=(0,0,1): frozen finite-mode values") {
        const auto rep = verify_prop41(build_classical_symbol(make_mode({0, 0, 1}, su2)));
        CHECK(rep.m == 6);
        CHECK(rep.curl_laplacian_constant == doctest::Approx(6.0).epsilon(1e-12));
        CHECK(rep.curl_laplacian_residual < 1e-13);
        CHECK(rep.cross_laplacian_max_abs < 1e-13);
        // lap_a(quartic) = 4 (n_pol - 1) ||u||^2
        CHECK(rep.mass_min_eig == doctest::Approx(4.0).epsilon(1e-11));
        CHECK(rep.mass_max_eig == doctest::Approx(4.0).epsilon(1e-11));
        CHECK(rep.mass_contraction_max_diff < 1e-10);
        // (m/4)(|j|^2 + n_pol) and (m/2)(|j|^2 + 2 n_pol - 1)
        CHECK(rep.weyl_shift_constant == doctest::Approx(4.5).epsilon(1e-12));
        CHECK(rep.normal_shift_constant == doctest::Approx(12.0).epsilon(1e-12));
        CHECK(rep.weyl_mass_coeff == doctest::Approx(1.0).epsilon(1e-11));
        CHECK(rep.c0_number_comparison == doctest::Approx(7.5).epsilon(1e-12));
        CHECK(rep.decomposition_residual < 1e-12);
    }
    SUBCASE("su2, j=0") {
        const auto rep = verify_prop41(build_classical_symbol(make_mode({0, 0, 0}, su2)));
        CHECK(rep.m == 9);
        CHECK(rep.curl_laplacian_constant == 0.0);
        CHECK(rep.mass_min_eig == doctest::Approx(8.0).epsilon(1e-11));
        CHECK(rep.weyl_shift_constant == doctest::Approx(6.75).epsilon(1e-12));
        CHECK(rep.normal_shift_constant == doctest::Approx(22.5).epsilon(1e-12));
        CHECK(rep.c0_number_comparison == doctest::Approx(11.25).epsilon(1e-12));
    }
    SUBCASE("su3, j=(1,1,0)") {
        const auto rep = verify_prop41(
            build_classical_symbol(make_mode({1, 1, 0}, build_algebra("su3"))));
        CHECK(rep.m == 16);
        CHECK(rep.curl_laplacian_constant == doctest::Approx(32.0).epsilon(1e-11));
        CHECK(rep.mass_min_eig == doctest::Approx(4.0).epsilon(1e-10));
        CHECK(rep.mass_contraction_max_diff < 1e-10);
        CHECK(rep.weyl_shift_constant == doctest::Approx(16.0).epsilon(1e-11));
    }
    SUBCASE("abelian diagnostic has no mass form") {
        const auto rep = verify_prop41(
            build_classical_symbol(make_mode({0, 0, 1}, su2.zeroed())));
        CHECK(rep.mass_min_eig == 0.0);
        CHECK(rep.mass_max_eig == 0.0);
        CHECK(rep.cross_laplacian_max_abs == 0.0);
    }
    SUBCASE("two-pi flag rescales the curl") {
        const auto rep = verify_prop41(
            build_classical_symbol(make_mode({0, 0, 1}, su2, true)));
        const double two_pi_sq = 4.0 * M_PI * M_PI;
        CHECK(rep.curl_laplacian_constant ==
              doctest::Approx(6.0 * two_pi_sq).epsilon(1e-12));
        // the mass form does not depend on the curl scale
        CHECK(rep.mass_min_eig == doctest::Approx(4.0).epsilon(1e-11));
    }
    SUBCASE("json report carries the reference constants") {
        const auto rep = verify_prop41(build_classical_symbol(make_mode({0, 0, 1}, su2)));
        const auto js = prop41_to_json(rep);
        CHECK(js.find("\"weyl_constant\":0.5625") != std::string::npos);
        CHECK(js.find("\"normal_constant\":1.5") != std::string::npos);
        CHECK(js.find("\"floor_constant\":1.0625") != std::string::npos);
        CHECK(js.find("\"c0_number_comparison\":7.4999999999999") != std::string::npos);
    }
}

TEST_CASE("gauge-algebra scaling moves each degree as expected") {
    const auto su2 = build_algebra("su2");
    const auto base = build_classical_symbol(make_mode({0, 0, 1}, su2));
    const auto doubled = build_classical_symbol(make_mode({0, 0, 1}, su2.scaled(2.0)));

    CHECK(coeff_distance(degree_part(doubled.h1, 4),
                         degree_part(base.h1, 4).scaled(4.0)) < 1e-12);
    CHECK(coeff_distance(degree_part(doubled.h1, 3),
                         degree_part(base.h1, 3).scaled(2.0)) < 1e-12);
    CHECK(coeff_distance(degree_part(doubled.h1, 2), degree_part(base.h1, 2)) <
          1e-12);
    CHECK(coeff_distance(doubled.h2, base.h2) == 0.0);

    // at a single transversal mode the cubic is structurally absent: the
    // bracket field points along j while the curl stays transversal
    CHECK(degree_part(base.h1, 3).empty());
}

TEST_CASE("mass form positivity across algebras and small modes") {
    // |j| <= 2 representatives up to coordinate symmetry
    const std::vector<std::array<int, 3>> modes = {
        {0, 0, 0}, {0, 0, 1}, {1, 1, 0}, {1, 1, 1}, {0, 0, 2}};
    for (const char* id : {"su2", "su3", "sun:4"}) {
        const auto algebra = build_algebra(id);
        for (const auto& j : modes) {
            CAPTURE(id);
            CAPTURE(j[0] + 10 * j[1] + 100 * j[2]);
            const auto rep = verify_prop41(build_classical_symbol(make_mode(j, algebra)));
            CHECK(rep.mass_min_eig > 0.0);
            CHECK(rep.mass_contraction_max_diff < 1e-10);
            // Killing orthonormality makes the form isotropic 4(n_pol - 1)
            const double expect = 4.0 * (rep.num_polarizations - 1);
            CHECK(rep.mass_min_eig == doctest::Approx(expect).epsilon(1e-9));
            CHECK(rep.mass_max_eig == doctest::Approx(expect).epsilon(1e-9));
        }
    }
    for (const char* id : {"so3", "sun:5", "sun:6"}) {
        CAPTURE(id);
        const auto rep = verify_prop41(
            build_classical_symbol(make_mode({0, 0, 1}, build_algebra(id))));
        CHECK(rep.mass_min_eig > 0.0);
        CHECK(rep.mass_contraction_max_diff < 1e-9);
    }
}
