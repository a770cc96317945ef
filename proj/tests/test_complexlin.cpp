#include "conceptq/complexlin.hpp"
#include "conceptq/error.hpp"

#include "oracle.hpp"

#include <doctest.h>

#include <random>

using namespace conceptq;

namespace {

StateVector random_unit(std::mt19937_64& rng, std::size_t dim) {
    std::normal_distribution<double> g;
    std::vector<Complex> v(dim);
    double norm2 = 0;
    for (auto& c : v) {
        c = {g(rng), g(rng)};
        norm2 += std::norm(c);
    }
    for (auto& c : v) c /= std::sqrt(norm2);
    return StateVector(std::move(v));
}

} // namespace

TEST_CASE("degree trigonometry is exact at right angles") {
    CHECK(cos_deg(90.0) == 0.0);
    CHECK(cos_deg(-90.0) == 0.0);
    CHECK(cos_deg(180.0) == -1.0);
    CHECK(sin_deg(-90.0) == -1.0);
    CHECK(cos_deg(450.0) == 0.0);
    CHECK(cos_deg(60.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(unit_phase(90.0) == Complex(0.0, 1.0));
}

TEST_CASE("inner product basics") {
    const StateVector e1{1.0, 0.0};
    const StateVector e2{0.0, 1.0};
    CHECK(inner_product(e1, e2) == Complex(0.0, 0.0));

    const double r = 1.0 / std::sqrt(2.0);
    const StateVector u{Complex(0.5, 0.5), Complex(r, 0.0)};
    const auto self = inner_product(u, u);
    CHECK(std::abs(self.real() - 1.0) <= 1e-12);
    CHECK(std::abs(self.imag()) <= 1e-12);

    // conjugate-linear in the first slot
    const StateVector iu{Complex(0.0, 1.0), 0.0};
    CHECK(inner_product(iu, e1) == Complex(0.0, -1.0));
    CHECK(inner_product(e1, iu) == Complex(0.0, 1.0));

    CHECK_THROWS_AS(inner_product(e1, StateVector{1.0, 0.0, 0.0}), DimensionError);
}

TEST_CASE("state vectors reject non-finite amplitudes") {
    CHECK_THROWS_AS(StateVector({Complex(std::nan(""), 0.0)}), Error);
    CHECK_THROWS_AS(StateVector{1.0}.coordinate(2), IndexError);
}

TEST_CASE("projector layout") {
    CHECK_THROWS_AS(ProjectorLayout(3, 0), IndexError);
    CHECK_THROWS_AS(ProjectorLayout(3, 4), IndexError);
    const ProjectorLayout layout(3, 2);
    CHECK(layout.dimension() == 4);

    // canonical basis vector at coordinate j != m
    const StateVector e1{1.0, 0.0, 0.0, 0.0};
    CHECK(project_probability(layout, 1, e1) == 1.0);
    CHECK(project_probability(layout, 2, e1) == 0.0);
    CHECK(project_probability(layout, 3, e1) == 0.0);

    // the extra coordinate belongs to exemplar m
    const StateVector e4{0.0, 0.0, 0.0, 1.0};
    CHECK(project_probability(layout, 2, e4) == 1.0);

    CHECK_THROWS_AS(project_probability(layout, 0, e1), IndexError);
    CHECK_THROWS_AS(project_probability(layout, 4, e1), IndexError);
    CHECK_THROWS_AS(project_probability(layout, 1, StateVector{1.0, 0.0}), DimensionError);
}

TEST_CASE("rank-one projection reproduces a squared amplitude") {
    const ProjectorLayout layout(2, 2);
    const StateVector u{0.1895, std::sqrt(1.0 - 0.1895 * 0.1895), 0.0};
    CHECK(project_probability(layout, 1, u) == doctest::Approx(0.0359).epsilon(1e-4 / 0.0359));
}

TEST_CASE("superposition") {
    const StateVector e1{1.0, 0.0};
    const StateVector e2{0.0, 1.0};
    const auto s = superpose_normalized(e1, e2);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(s.coordinate(1).real() == doctest::Approx(r).epsilon(1e-15));
    CHECK(s.coordinate(2).real() == doctest::Approx(r).epsilon(1e-15));
    CHECK(s.is_normalized());

    try {
        superpose_normalized(e1, e1);
        FAIL("expected a precondition error");
    } catch (const PreconditionError& e) {
        CHECK(e.residual() == doctest::Approx(1.0));
    }
    CHECK_THROWS_AS(superpose_normalized(StateVector{2.0, 0.0}, e2), PreconditionError);
}

TEST_CASE("property: hermitian symmetry, completeness and superposition norm") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng() % 20;
        const std::size_t m = 1 + rng() % n;
        const ProjectorLayout layout(n, m);
        const auto u = random_unit(rng, n + 1);
        const auto v = random_unit(rng, n + 1);

        const auto uv = inner_product(u, v);
        const auto vu = inner_product(v, u);
        CHECK(uv.real() == vu.real());
        CHECK(uv.imag() == -vu.imag());

        double total = 0;
        for (std::size_t k = 1; k <= n; ++k) {
            const double p = project_probability(layout, k, u);
            CHECK(std::abs(p - oracle::dense_expectation(oracle::dense_projector(n, m, k), u)) <= 1e-15);
            total += p;
        }
        CHECK(std::abs(total - u.norm_squared()) <= 1e-9);

        // |(u+v)/sqrt2|^2 = 1 + Re<u|v>
        std::vector<Complex> s(n + 1);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = (u.amplitudes()[i] + v.amplitudes()[i]) / std::sqrt(2.0);
        CHECK(std::abs(StateVector(s).norm_squared() - (1.0 + uv.real())) <= 1e-12);
    }
}
