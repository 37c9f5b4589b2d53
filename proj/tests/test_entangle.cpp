#include <doctest.h>

#include <cmath>

#include "svdkit/entangle.hpp"
#include "test_support.hpp"

using namespace svdkit;
using namespace svdkit::entangle;
using namespace testsupport;

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kLn3 = 1.0986122886681098;
// -(0.9 ln 0.9 + 0.1 ln 0.1), evaluated independently at high precision
constexpr double kEntropy90_10 = 0.3250829733914482;

Matrix<Complex> diag_state(double a, double b) {
    Matrix<Complex> c(2, 2);
    c(0, 0) = a;
    c(1, 1) = b;
    return c;
}

Matrix<Complex> random_state(Rng& rng, std::size_t m, std::size_t n) {
    return normalize_state(random_complex(rng, m, n)).c;
}

} // namespace

TEST_SUITE_BEGIN("entangle");

TEST_CASE("validate_state accepts normalized states") {
    CHECK_NOTHROW(validate_state(diag_state(1.0, 0.0)));
    CHECK_NOTHROW(validate_state(diag_state(1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0))));
}

TEST_CASE("validate_state rejects a trace-2 matrix") {
    try {
        validate_state(diag_state(1.0, 1.0));
        FAIL("expected NotNormalized");
    } catch (const NotNormalized& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("normalize_state rescales to unit trace") {
    Matrix<Complex> c(2, 2);
    c(0, 0) = Complex(3.0, 4.0);
    const auto state = normalize_state(c);
    CHECK(state_trace(state.c) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(normalize_state(Matrix<Complex>(2, 2)), DegenerateMatrix);
}

TEST_CASE("schmidt coefficients of diagonal states") {
    const auto s1 = schmidt(validate_state(diag_state(1.0, 0.0)));
    CHECK(s1.coefficients[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s1.coefficients[1] == doctest::Approx(0.0).epsilon(1e-14));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const auto s2 = schmidt(validate_state(diag_state(inv_sqrt2, inv_sqrt2)));
    CHECK(s2.coefficients[0] == doctest::Approx(inv_sqrt2).epsilon(1e-14));
    CHECK(s2.coefficients[1] == doctest::Approx(inv_sqrt2).epsilon(1e-14));

    const auto s3 = schmidt(validate_state(diag_state(std::sqrt(0.9), std::sqrt(0.1))));
    CHECK(s3.coefficients[0] == doctest::Approx(std::sqrt(0.9)).epsilon(1e-14));
    CHECK(s3.coefficients[1] == doctest::Approx(std::sqrt(0.1)).epsilon(1e-14));
}

TEST_CASE("schmidt coefficients square-sum to one") {
    Rng rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const auto spec = schmidt(StateMatrix{random_state(rng, 4, 4)});
        double sum = 0.0;
        for (double s : spec.coefficients) sum += s * s;
        CHECK(std::abs(sum - 1.0) <= 1e-10);
    }
}

TEST_CASE("entropy of product, Bell, and biased states") {
    CHECK(entropy(schmidt(validate_state(diag_state(1.0, 0.0)))) <= 1e-12);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const double bell = entropy(schmidt(validate_state(diag_state(inv_sqrt2, inv_sqrt2))));
    CHECK(std::abs(bell - kLn2) <= 1e-12);

    const double biased =
        entropy(schmidt(validate_state(diag_state(std::sqrt(0.9), std::sqrt(0.1)))));
    CHECK(std::abs(biased - kEntropy90_10) <= 1e-9);
}

TEST_CASE("is_entangled") {
    SchmidtSpectrum s;
    s.coefficients = {1.0, 0.0};
    CHECK_FALSE(is_entangled(s));
    s.coefficients = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
    CHECK(is_entangled(s));
    s.coefficients = {1.0, 1e-16};
    CHECK_FALSE(is_entangled(s));
    CHECK(is_entangled(s, 1e-17));
}

TEST_CASE("max_entropy") {
    CHECK(max_entropy(2, 2) == doctest::Approx(kLn2).epsilon(1e-15));
    CHECK(max_entropy(1, 5) == 0.0);
    CHECK(max_entropy(3, 7) == doctest::Approx(kLn3).epsilon(1e-15));
}

TEST_CASE("entropy is invariant under local unitaries") {
    Rng rng(9);
    for (int rep = 0; rep < 20; ++rep) {
        const auto c = random_state(rng, 4, 4);
        const auto w1 = random_unitary<Complex>(rng, 4);
        const auto w2 = random_unitary<Complex>(rng, 4);
        const auto rotated = matmul(matmul(w1, c), conj_transpose(w2));
        const double h0 = entropy(schmidt(StateMatrix{c}));
        const double h1 = entropy(schmidt(StateMatrix{rotated}));
        CHECK(std::abs(h0 - h1) <= 1e-10);
    }
}

TEST_CASE("entropy stays within [0, ln min(m,n)]") {
    Rng rng(15);
    const std::size_t shapes[][2] = {{2, 2}, {3, 5}, {4, 4}, {5, 2}};
    for (const auto& sh : shapes) {
        for (int rep = 0; rep < 25; ++rep) {
            const auto spec = schmidt(StateMatrix{random_state(rng, sh[0], sh[1])});
            const double h = entropy(spec);
            CHECK(h >= 0.0);
            CHECK(h <= max_entropy(sh[0], sh[1]) + 1e-12);
        }
    }
}

TEST_CASE("rank-1 states are exactly the unentangled ones") {
    Rng rng(21);
    for (int rep = 0; rep < 25; ++rep) {
        // C = x y^H normalized is always a product state
        const auto x = random_complex(rng, 3, 1);
        const auto y = random_complex(rng, 4, 1);
        const auto c = normalize_state(matmul(x, conj_transpose(y))).c;
        const auto spec = schmidt(StateMatrix{c});
        CHECK_FALSE(is_entangled(spec, 1e-10));
        CHECK(entropy(spec) <= 1e-10);
    }
    for (int rep = 0; rep < 25; ++rep) {
        const auto spec = schmidt(StateMatrix{random_state(rng, 3, 4)});
        const bool flag = is_entangled(spec, 1e-10);
        const bool low_entropy = entropy(spec) <= 1e-10;
        CHECK(flag == !low_entropy);
    }
}

TEST_SUITE_END();
