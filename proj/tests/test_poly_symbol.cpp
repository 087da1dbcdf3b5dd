#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ymsym/poly_symbol.hpp"
#include "ymsym/symbol_text.hpp"

using namespace ymsym;

namespace {

// Random polynomial with the given total degree bound; hermitian symbols are
// built as q + conj-transpose(q).
PolySymbol random_symbol(int m, int max_degree, std::mt19937_64& rng,
                         bool hermitian, Ordering tag = Ordering::classical) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<int> exp_pick(0, max_degree);
    PolySymbol sym(m, tag);
    const int num_terms = 8 + static_cast<int>(rng() % 8);
    for (int t = 0; t < num_terms; ++t) {
        std::vector<int> alpha(m, 0), beta(m, 0);
        int budget = exp_pick(rng);
        for (int k = 0; k < m && budget > 0; ++k) {
            alpha[k] = static_cast<int>(rng() % (budget + 1));
            budget -= alpha[k];
        }
        for (int k = 0; k < m && budget > 0; ++k) {
            beta[k] = static_cast<int>(rng() % (budget + 1));
            budget -= beta[k];
        }
        const Complex c(u(rng), u(rng));
        sym.add_term(alpha, beta, c);
        if (hermitian) sym.add_term(beta, alpha, std::conj(c));
    }
    return sym;
}

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

PolySymbol from_text(const std::string& s, int m = 0) {
    return parse_symbol(s, m).symbol;
}

}  // namespace

TEST_CASE("ring operations") {
    SUBCASE("monomial product (zb z)*(zb z) = zb^2 z^2") {
        const auto p = from_text("zb1*z1");
        const auto sq = p * p;
        CHECK(coeff_distance(sq, from_text("zb1^2*z1^2")) < 1e-15);
    }
    SUBCASE("additive identity") {
        const auto p = from_text("2*zb1 - 3*z1");
        const auto zero = PolySymbol(1);
        CHECK(coeff_distance(p + zero, p) == 0.0);
    }
    SUBCASE("binomial square (zb+z)^2") {
        const auto p = from_text("zb1 + z1");
        CHECK(coeff_distance(p * p, from_text("zb1^2 + 2*zb1*z1 + z1^2")) < 1e-15);
    }
    SUBCASE("num_vars mismatch") {
        CHECK_THROWS_AS(from_text("z1", 1) + from_text("z2", 2), ConfigError);
    }
    SUBCASE("ordering tag mismatch on multiply") {
        const auto p = PolySymbol::constant(1, 1.0, Ordering::normal);
        const auto q = PolySymbol::constant(1, 1.0, Ordering::weyl);
        CHECK_THROWS_AS(p * q, ConfigError);
    }
    SUBCASE("prune threshold removes cancelled terms") {
        const auto p = from_text("zb1*z1");
        CHECK((p - p).empty());
    }
}

TEST_CASE("gaussian transform") {
    SUBCASE("zbz - 1/2 at s=1/2 gives zbz") {
        const auto in = from_text("zb1*z1 - 0.5");
        CHECK(coeff_distance(gaussian_transform(in, 0.5), from_text("zb1*z1")) < 1e-15);
    }
    SUBCASE("constants are fixed") {
        const auto c = PolySymbol::constant(2, Complex(3.0, -1.0));
        CHECK(coeff_distance(gaussian_transform(c, 0.7), c) == 0.0);
    }
    SUBCASE("zb^2 z^2 at s=1") {
        const auto out = gaussian_transform(from_text("zb1^2*z1^2"), 1.0);
        CHECK(coeff_distance(out, from_text("zb1^2*z1^2 + 4*zb1*z1 + 2")) < 1e-13);
    }
    SUBCASE("semigroup: T_s T_t = T_{s+t}") {
        std::mt19937_64 rng(101);
        for (int trial = 0; trial < 25; ++trial) {
            const auto p = random_symbol(3, 6, rng, false);
            const double s = 0.25 + 0.5 * (trial % 3);
            const double t = -0.75 + 0.25 * (trial % 5);
            const auto two_step = gaussian_transform(gaussian_transform(p, s), t);
            const auto one_step = gaussian_transform(p, s + t);
            CHECK(coeff_distance(two_step, one_step) < 1e-12);
        }
    }
    SUBCASE("top-degree homogeneous part is untouched") {
        std::mt19937_64 rng(7);
        const auto p = random_symbol(2, 5, rng, false);
        const auto q = gaussian_transform(p, 0.5);
        const int deg = p.total_degree();
        for (const auto& [key, c] : p.terms()) {
            int d = 0;
            for (int e : key) d += e;
            if (d == deg) CHECK(std::abs(q.terms().at(key) - c) < 1e-14);
        }
    }
}

TEST_CASE("ordering conversions pin the number-operator triple") {
    const auto n_normal = from_text("zb1*z1").with_ordering(Ordering::normal);

    const auto weyl = convert_ordering(n_normal, Ordering::normal, Ordering::weyl);
    CHECK(coeff_distance(weyl, from_text("zb1*z1 - 0.5")) < 1e-15);
    CHECK(weyl.ordering() == Ordering::weyl);

    const auto anti = convert_ordering(n_normal, Ordering::normal, Ordering::antinormal);
    CHECK(coeff_distance(anti, from_text("zb1*z1 - 1")) < 1e-15);

    const auto back = convert_ordering(from_text("zb1*z1 - 1"), Ordering::antinormal,
                                       Ordering::normal);
    CHECK(coeff_distance(back, from_text("zb1*z1")) < 1e-15);

    SUBCASE("classical tag is rejected") {
        CHECK_THROWS_AS(
            convert_ordering(n_normal, Ordering::classical, Ordering::normal),
            ConfigError);
    }
    SUBCASE("two half steps equal one full step") {
        std::mt19937_64 rng(33);
        const auto p = random_symbol(2, 6, rng, false, Ordering::antinormal);
        const auto direct = convert_ordering(p, Ordering::antinormal, Ordering::normal);
        const auto stepped = convert_ordering(
            convert_ordering(p, Ordering::antinormal, Ordering::weyl), Ordering::weyl,
            Ordering::normal);
        CHECK(coeff_distance(direct, stepped) < 1e-13);
    }
}

TEST_CASE("ordering round trips on random hermitian symbols") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 3);
        const auto p = random_symbol(m, 6, rng, true, Ordering::antinormal);
        const auto there = convert_ordering(p, Ordering::antinormal, Ordering::normal);
        const auto back = convert_ordering(there, Ordering::normal, Ordering::antinormal);
        CHECK(coeff_distance(back, p) < 1e-10);
        // hermiticity is preserved along the way
        CHECK(there.is_hermitian(1e-12));
    }
}

TEST_CASE("chart changes") {
    SUBCASE("a^2 + e^2 becomes 2 zb z") {
        const auto real = from_text("a1^2 + e1^2");
        CHECK(coeff_distance(to_complex_chart(real), from_text("2*zb1*z1")) < 1e-14);
    }
    SUBCASE("a becomes (zb + z)/sqrt(2)") {
        const auto out = to_complex_chart(from_text("a1"));
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(out.coeff({1}, {0}) - inv_sqrt2) < 1e-15);
        CHECK(std::abs(out.coeff({0}, {1}) - inv_sqrt2) < 1e-15);
    }
    SUBCASE("round trip on random degree-4 symbols") {
        std::mt19937_64 rng(55);
        for (int trial = 0; trial < 25; ++trial) {
            const int m = 1 + static_cast<int>(rng() % 3);
            const auto p = random_symbol(m, 4, rng, false);
            CHECK(coeff_distance(to_real_chart(to_complex_chart(p)), p) < 1e-12);
        }
    }
    SUBCASE("chart consistency under evaluation") {
        std::mt19937_64 rng(77);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const int m = 2;
            const auto f = random_symbol(m, 4, rng, false);  // read as f(a, e)
            const auto g = to_complex_chart(f);
            Eigen::VectorXd a(m), e(m);
            for (int k = 0; k < m; ++k) {
                a[k] = u(rng);
                e[k] = u(rng);
            }
            // z = (a + ie)/sqrt(2)
            Eigen::VectorXcd z(m);
            for (int k = 0; k < m; ++k)
                z[k] = Complex(a[k], e[k]) / std::sqrt(2.0);
            const Complex via_complex = g.evaluate(z.conjugate(), z);
            const Complex direct =
                f.evaluate(a.cast<Complex>(), e.cast<Complex>());
            CHECK(std::abs(via_complex - direct) < 1e-12);
        }
    }
}

TEST_CASE("evaluation") {
    const auto p = from_text("zb1*z1");
    Eigen::VectorXcd z1(1);
    z1 << Complex(1.0, 0.0);
    CHECK(std::abs(p.evaluate_diagonal(z1) - Complex(1.0)) < 1e-15);
    z1 << Complex(0.0, 0.0);
    CHECK(std::abs(p.evaluate_diagonal(z1)) < 1e-15);

    SUBCASE("hermitian symbols are real on the diagonal") {
        std::mt19937_64 rng(91);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            const auto h = random_symbol(2, 5, rng, true);
            Eigen::VectorXcd z(2);
            z << Complex(u(rng), u(rng)), Complex(u(rng), u(rng));
            const Complex v = h.evaluate_diagonal(z);
            CHECK(std::abs(v.imag()) < 1e-10 * std::max(1.0, std::abs(v)));
        }
    }
    SUBCASE("length mismatch") {
        Eigen::VectorXcd bad(2);
        bad << Complex(0), Complex(0);
        CHECK_THROWS_AS(p.evaluate_diagonal(bad), ConfigError);
    }
}

TEST_CASE("text grammar") {
    SUBCASE("spec-style strings") {
        CHECK(to_text(from_text("zb1*z1 - 1")) == "zb1*z1 - 1");
        CHECK(to_text(from_text("3")) == "3");
        CHECK(to_text(from_text("zb1^2*z1^2 + 4*zb1*z1 + 2")) ==
              "zb1^2*z1^2 + 4*zb1*z1 + 2");
    }
    SUBCASE("round trip random symbols through text") {
        std::mt19937_64 rng(13);
        for (int trial = 0; trial < 20; ++trial) {
            const auto p = random_symbol(3, 5, rng, false);
            const auto q = from_text(to_text(p), 3);
            CHECK(coeff_distance(p, q) < 1e-15);
        }
    }
    SUBCASE("real chart names") {
        const auto parsed = parse_symbol("a1^2 + e2^2");
        CHECK(parsed.chart == Chart::real_pair);
        CHECK(parsed.symbol.num_vars() == 2);
        CHECK(to_text(parsed.symbol, Chart::real_pair) == "a1^2 + e2^2");
    }
    SUBCASE("imaginary coefficients") {
        const auto p = from_text("2i*zb1 - i*z1");
        CHECK(std::abs(p.coeff({1}, {0}) - Complex(0, 2)) < 1e-15);
        CHECK(std::abs(p.coeff({0}, {1}) - Complex(0, -1)) < 1e-15);
        const auto q = from_text(to_text(p), 1);
        CHECK(coeff_distance(p, q) < 1e-15);
    }
    SUBCASE("rejects mixed charts") {
        CHECK_THROWS_AS(from_text("a1*z1"), ConfigError);
    }
    SUBCASE("rejects malformed input") {
        CHECK_THROWS_AS(from_text(""), ConfigError);
        CHECK_THROWS_AS(from_text("2 +"), ConfigError);
        CHECK_THROWS_AS(from_text("q1"), ConfigError);
        CHECK_THROWS_AS(from_text("z"), ConfigError);
        CHECK_THROWS_AS(from_text("z1^-2"), ConfigError);
        CHECK_THROWS_AS(from_text("z1 z2"), ConfigError);
    }
    SUBCASE("json export mentions every field") {
        const auto js = symbol_to_json(from_text("zb1*z1 - 1"));
        CHECK(js.find("\"num_vars\":1") != std::string::npos);
        CHECK(js.find("\"ordering\":\"classical\"") != std::string::npos);
        CHECK(js.find("\"zbar\":[1]") != std::string::npos);
        CHECK(js.find("\"re\":1") != std::string::npos);
    }
}

TEST_CASE("hermitian residual flags asymmetric coefficients") {
    auto p = PolySymbol(1);
    p.add_term({1}, {0}, Complex(1.0, 0.5));
    CHECK_FALSE(p.is_hermitian());
    p.add_term({0}, {1}, Complex(1.0, -0.5));
    CHECK(p.is_hermitian());
}
