#include "frontlab/symbols.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace frontlab;
using frontlab::testing::TestRng;

TEST_CASE("square-root symbols") {
    CHECK(symbol_root(0.3, 0.0) == doctest::Approx(0.3).epsilon(1e-16));
    CHECK(symbol_root_rescaled(0.0, 123.0) == 1.0);
    CHECK(symbol_root_rescaled(0.25, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-16));
}

TEST_CASE("physical-family symbols") {
    SUBCASE("lambda = 0 pins a and f") {
        for (double u : {0.1, 0.5, 0.9}) {
            const auto s = symbols_pre_rescale(u, 1.7, 0.0);
            CHECK(s.a == 0.0);
            CHECK(s.f == doctest::Approx(-u * u * u / 2.0).epsilon(1e-14));
            CHECK(s.b == doctest::Approx(u * u).epsilon(1e-15));
            CHECK(s.nu == doctest::Approx(u).epsilon(1e-15));
        }
    }
    SUBCASE("quotient identities hold for random parameters") {
        TestRng rng(101);
        double worst = 0;
        for (int i = 0; i < 200; ++i) {
            const double u = rng.uniform(0.05, 0.95);
            const double gamma = rng.uniform(0.2, 3.0);
            const double lam = std::pow(10.0, rng.uniform(-8.0, 6.0));
            const auto s = symbols_pre_rescale(u, gamma, lam);
            worst = std::max(worst, std::abs(s.a * s.b - s.l) / (std::abs(s.l) + 1e-300));
            worst = std::max(worst, std::abs(s.m * s.b - s.f) / (std::abs(s.f) + 1e-300));
        }
        CHECK(worst < 1e-12);
    }
    SUBCASE("large-lambda asymptotics") {
        const double u = 0.37, gamma = 1.9;
        const double lam = 1e10;
        const auto s = symbols_pre_rescale(u, gamma, lam);
        CHECK(s.b / (2.0 * std::sqrt(lam) * u) == doctest::Approx(1.0).epsilon(1e-4));
        CHECK(s.f / (2.0 * std::pow(lam, 1.5)) == doctest::Approx(1.0).epsilon(1e-4));
        // a splits as -2 lambda^{3/2}/U + O(sqrt(lambda))
        const double remainder = s.a + 2.0 * std::pow(lam, 1.5) / u;
        const double predicted = 0.25 * std::sqrt(lam) * (2.0 * gamma - 1.0) * u;
        CHECK(remainder / predicted == doctest::Approx(1.0).epsilon(1e-2));
    }
    SUBCASE("sign of a_k flips exactly at the threshold") {
        const double u = 0.45, ell = 9.0;
        const double gc = gamma_critical(ell, u);
        const double lam1 = std::pow(two_pi_v<double> / ell, 2.0);
        CHECK(symbols_pre_rescale(u, gc * (1.0 - 1e-6), lam1).a < 0.0);
        CHECK(symbols_pre_rescale(u, gc * (1.0 + 1e-6), lam1).a > 0.0);
    }
}

TEST_CASE("rescaled-family symbols") {
    SUBCASE("eps -> 0 leading terms are exact") {
        for (double lam : {0.0, 1.0, 64.0, 1e4}) {
            const auto s = symbols_rescaled(0.0, lam);
            CHECK(s.b_eps == 1.0);
            CHECK(s.f_eps == -0.5);
            CHECK(s.h_eps == doctest::Approx(2.0 * lam).epsilon(1e-15));
            CHECK(s.m_eps == doctest::Approx(-3.5 * lam).epsilon(1e-15));
        }
    }
    SUBCASE("difference-quotient identities and growth bounds") {
        double worst_b = 0, worst_f = 0;
        for (double eps : {1e-6, 1e-3, 0.1, 1.0}) {
            for (double lam = 1e-6; lam <= 1e6; lam *= 3.1623) {
                const auto s = symbols_rescaled(eps, lam);
                worst_b = std::max(worst_b,
                                   std::abs(eps * s.h_eps + 1.0 - s.b_eps) / s.b_eps);
                worst_f = std::max(worst_f, std::abs(eps * s.m_eps - 0.5 - s.f_eps) /
                                                (std::abs(s.f_eps) + 1e-300));
                CHECK(std::abs(s.h_eps) <= 4.0 * lam);
                CHECK(std::abs(s.m_eps) <= 2.0 * std::pow(lam, 1.5) + 25.0 * lam);
            }
        }
        CHECK(worst_b < 1e-11);
        CHECK(worst_f < 1e-11);
    }
    SUBCASE("s_k matches the linear growth pattern") {
        const auto s = symbols_rescaled(0.1, 0.25);  // lambda(4*lambda-1) = 0 at lambda=1/4
        CHECK(s.s == 0.0);
        CHECK(symbols_rescaled(0.1, 1.0).s == doctest::Approx(-3.0).epsilon(1e-15));
    }
}

TEST_CASE("critical threshold") {
    CHECK(gamma_critical(4.0 * std::numbers::pi, 1.0) == doctest::Approx(2.0));
    SUBCASE("monotone decreasing in ell, limit 1") {
        double prev = gamma_critical(1.0, 0.5);
        for (double ell : {2.0, 8.0, 64.0, 1e4, 1e6}) {
            const double gc = gamma_critical(ell, 0.5);
            CHECK(gc < prev);
            prev = gc;
        }
        CHECK(prev > 1.0);
        CHECK(prev - 1.0 < 1e-9);
    }
    SUBCASE("bifurcation form: ell = ell0/(sqrt(eps) U)") {
        const double eps = 0.01, u = 0.6;
        for (double ell0 : {2.0, 10.0, 13.0, 50.0}) {
            const double gc = gamma_critical(ell0 / (std::sqrt(eps) * u), u);
            CHECK(gc == doctest::Approx(1.0 + 16.0 * std::numbers::pi * std::numbers::pi * eps /
                                        (ell0 * ell0))
                            .epsilon(1e-12));
            const bool inside = gc > 1.0 && gc < 1.0 + eps;
            CHECK(inside == (ell0 > 4.0 * std::numbers::pi));
        }
    }
    CHECK_THROWS_AS(gamma_critical(-1.0, 0.5), std::invalid_argument);
}

TEST_CASE("spectrum report") {
    ModelParams<double> p;
    p.u_flow = 0.5;
    p.ell = 7.0;
    const double gc = gamma_critical(p.ell, p.u_flow);

    SUBCASE("stable below the threshold") {
        p.gamma = 0.9 * gc;
        const auto r = spectrum_report(p, 32);
        CHECK(r.classification == Stability::Stable);
        CHECK(r.eigenvalues[0] == 0.0);
        for (std::size_t k = 1; k < r.eigenvalues.size(); ++k) CHECK(r.eigenvalues[k] < 0.0);
        CHECK((p.gamma < r.gamma_c));
    }
    SUBCASE("unstable above the threshold, first mode most unstable") {
        p.gamma = 1.1 * gc;
        const auto r = spectrum_report(p, 32);
        CHECK(r.classification == Stability::Unstable);
        CHECK(r.eigenvalues[1] > 0.0);
        CHECK(r.most_unstable_k == 1);
        CHECK(r.eigenvalues[0] == 0.0);
    }
    SUBCASE("critical when an eigenvalue sits on the boundary") {
        p.gamma = gc;  // a_1 = 0 up to rounding
        const auto r = spectrum_report(p, 8);
        CHECK(r.classification == Stability::Critical);
    }
    CHECK_THROWS_AS(spectrum_report(p, 0), std::invalid_argument);
}

TEST_CASE("projection onto the mean") {
    const GridConfig<double> grid{32};
    auto c = SpectralField<double>::mode(grid, 0, {3.5, 0.0});
    CHECK(projection_mean(c) == 3.5);
    auto s = SpectralField<double>::mode(grid, 1, {0.0, -0.5});
    CHECK(projection_mean(s) == 0.0);
}

TEST_CASE("symbol table") {
    const GridConfig<double> grid{64};
    SUBCASE("valid construction precomputes positive denominators") {
        const SymbolTable<double> table(grid, 0.001, 10.0, 1e-4);
        for (Eigen::Index k = 0; k < grid.spectrum_size(); ++k) {
            CHECK(table.denominator(k) > 0.0);
            CHECK(table.b(k) >= 1.0);
        }
        CHECK(table.b(0) == 1.0);
        CHECK(table.denominator(0) == 1.0);
    }
    SUBCASE("construction fails exactly on a nonpositive denominator") {
        // beta*dt large: k=4 gives b + (4*256 - 120*16)*dt = 1.0032.. - 8.96 < 0
        CHECK_THROWS_AS(SymbolTable<double>(grid, 0.001, 120.0, 1e-2), NumericError);
        CHECK_NOTHROW(SymbolTable<double>(grid, 0.001, 120.0, 1e-4));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(SymbolTable<double>(grid, -0.1, 10.0, 1e-4), std::invalid_argument);
        CHECK_THROWS_AS(SymbolTable<double>(grid, 0.1, -10.0, 1e-4), std::invalid_argument);
        CHECK_THROWS_AS(SymbolTable<double>(grid, 0.1, 10.0, 0.0), std::invalid_argument);
    }
}
