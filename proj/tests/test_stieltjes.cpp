#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "finpart/errors.hpp"
#include "finpart/stieltjes.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>

using namespace finpart;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

StieltjesProblem problem(const char* f, double nu, double omega, double a) {
    return StieltjesProblem{make_builtin(f), nu, omega, a};
}

} // namespace

TEST_CASE("direct evaluation") {
    SUBCASE("∫_0^inf x^{-1/2}/(1+x) = pi") {
        CHECK(stieltjes_direct(problem("one", 0.5, 1.0, kInf), 1e-11) ==
              doctest::Approx(M_PI).epsilon(1e-10));
    }
    SUBCASE("∫_0^1 dx/(1+x) = ln 2") {
        CHECK(stieltjes_direct(problem("one", 0.0, 1.0, 1.0), 1e-11) ==
              doctest::Approx(std::log(2.0)).epsilon(1e-11));
    }
    SUBCASE("∫_0^inf e^{-x}/(1+x) = e E1(1)") {
        CHECK(stieltjes_direct(problem("exp_neg", 0.0, 1.0, kInf), 1e-11) ==
              doctest::Approx(std::exp(1.0) * oracles::e1(1.0)).epsilon(1e-10));
    }
    SUBCASE("closed form at mu = 1/4: pi csc(pi/4) / omega^{1/4}") {
        const double v = stieltjes_direct(problem("one", 0.25, 2.0, kInf), 1e-11);
        const double expect = M_PI / std::sin(M_PI * 0.25) / std::pow(2.0, 0.25);
        CHECK(v == doctest::Approx(expect).epsilon(1e-10));
    }
    SUBCASE("divergent tail is refused") {
        CHECK_THROWS_AS(stieltjes_direct(problem("one", 0.0, 1.0, kInf), 1e-10),
                        TailDivergent);
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(stieltjes_direct(problem("one", 0.0, -1.0, 1.0), 1e-10),
                        Error);
        CHECK_THROWS_AS(stieltjes_direct(problem("one", 1.2, 1.0, 1.0), 1e-10),
                        DegenerateBranch);
    }
}

TEST_CASE("pole-case expansion: closed form ln((a+omega)/omega)") {
    const auto p = problem("one", 0.0, 0.5, 2.0);
    const auto e = expand_origin_pole(p, 30);

    // per-term check: S_n = ln a + sum_{j>=1} (-1)^{j+1} (w/a)^j / j
    double expect = std::log(2.0);
    CHECK(e.fpi_terms[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    for (int j = 1; j < 30; ++j) {
        expect += ((j % 2) ? 1.0 : -1.0) * std::pow(0.25, j) / j;
        CHECK(e.fpi_terms[j] ==
              doctest::Approx(-1.0 / (j * std::pow(2.0, j))).epsilon(1e-10));
    }
    CHECK(e.partial_sums.back() == doctest::Approx(expect).epsilon(1e-11));

    CHECK(e.correction_term == doctest::Approx(-std::log(0.5)));
    CHECK(e.total() == doctest::Approx(std::log(5.0)).epsilon(1e-10));
    CHECK(e.reference == doctest::Approx(std::log(5.0)).epsilon(1e-10));
    CHECK(std::abs(e.total() - e.reference) <= e.remainder_bounds.back() + 1e-9);
    CHECK(std::isnan(e.rho_used)); // entire case
}

TEST_CASE("pole-case expansion for entire and holomorphic f") {
    SUBCASE("exp_neg, omega = 0.5, a = 5") {
        const auto e = expand_origin_pole(problem("exp_neg", 0.0, 0.5, 5.0), 25);
        CHECK(std::abs(e.total() - e.reference) <= e.remainder_bounds.back() + 1e-9);
        CHECK(e.remainder_bounds.back() <= 1e-6);
        CHECK(e.reference == doctest::Approx(0.92185392407237097).epsilon(1e-9));
    }
    SUBCASE("geom(2) exercises the holomorphic bound with rho") {
        const auto p = problem("geom(2)", 0.0, 0.5, 1.0);
        const auto e = expand_origin_pole(p, 30);
        CHECK(!std::isnan(e.rho_used));
        CHECK(e.rho_used == doctest::Approx(0.75)); // min midpoint rule
        // correction = -f(-w) ln w = -(1/(1-w/2)) ln w
        CHECK(e.correction_term ==
              doctest::Approx(-(1.0 / (1.0 - 0.25)) * std::log(0.5)).epsilon(1e-12));
        CHECK(e.reference == doctest::Approx(0.92419624074659375).epsilon(1e-9));
        CHECK(std::abs(e.total() - e.reference) <= e.remainder_bounds.back() + 1e-9);
        for (std::size_t n = 0; n < e.partial_sums.size(); ++n) {
            const double err =
                std::abs(e.partial_sums[n] + e.correction_term - e.reference);
            CHECK(err <= e.remainder_bounds[n] + 1e-9);
        }
    }
}

TEST_CASE("branch-case expansion") {
    SUBCASE("one, nu = 0.5, omega = 0.25, a = 2") {
        const auto e = expand_origin_branch(problem("one", 0.5, 0.25, 2.0), 40);
        CHECK(e.correction_term == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
        CHECK(e.reference == doctest::Approx(4.9238376693630987).epsilon(1e-9));
        CHECK(std::abs(e.total() - e.reference) <= e.remainder_bounds.back() + 1e-9);
    }
    SUBCASE("exp_neg, nu = 0.5, omega = 0.5, a = 10") {
        const auto e = expand_origin_branch(problem("exp_neg", 0.5, 0.5, 10.0), 30);
        CHECK(e.reference == doctest::Approx(2.3243222546069673).epsilon(1e-9));
        CHECK(std::abs(e.total() - e.reference) <= e.remainder_bounds.back() + 1e-9);
    }
    SUBCASE("omega -> 0+: correction dominates, total still matches") {
        const auto p = problem("one", 0.5, 1e-3, 1.0);
        const auto e = expand_origin_branch(p, 10);
        CHECK(e.correction_term ==
              doctest::Approx(M_PI / std::sqrt(1e-3)).epsilon(1e-12));
        CHECK(e.reference == doctest::Approx(97.346548924913171).epsilon(1e-9));
        CHECK(std::abs(e.total() - e.reference) / e.reference <= 1e-6);
    }
}

TEST_CASE("remainder bounds decay geometrically at the exact ratio") {
    SUBCASE("entire: ratio omega/a") {
        const auto e = expand_origin_pole(problem("exp_neg", 0.0, 0.5, 2.0), 20);
        for (std::size_t n = 1; n < e.remainder_bounds.size(); ++n)
            CHECK(e.remainder_bounds[n] / e.remainder_bounds[n - 1] ==
                  doctest::Approx(0.25).epsilon(1e-12));
    }
    SUBCASE("holomorphic: ratio omega/rho") {
        const auto e = expand_origin_pole(problem("geom(2)", 0.0, 0.5, 2.0), 20);
        const double ratio = 0.5 / e.rho_used;
        for (std::size_t n = 1; n < e.remainder_bounds.size(); ++n)
            CHECK(e.remainder_bounds[n] / e.remainder_bounds[n - 1] ==
                  doctest::Approx(ratio).epsilon(1e-12));
    }
}

TEST_CASE("bound compliance across a parameter sweep") {
    const char* fs[] = {"one", "exp_neg", "geom(2)"};
    const double nus[] = {0.0, 0.5};
    const double ratios[] = {0.1, 0.25, 0.5};
    for (const auto* fname : fs) {
        for (double nu : nus) {
            for (double ratio : ratios) {
                const double a = 2.0;
                const auto p = problem(fname, nu, ratio * a, a);
                const auto e = expand_origin(p, 40);
                for (std::size_t n = 0; n < e.partial_sums.size(); ++n) {
                    const double err = std::abs(e.partial_sums[n] +
                                                e.correction_term - e.reference);
                    CHECK(err <= e.remainder_bounds[n] + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("expansion validity checks") {
    CHECK_THROWS_AS(expand_origin(problem("one", 0.0, 3.0, 2.0), 10),
                    ExpansionInvalid);
    CHECK_THROWS_AS(expand_origin(problem("geom(2)", 0.0, 2.5, 5.0), 10),
                    ExpansionInvalid);
    CHECK_THROWS_AS(expand_origin_branch(problem("one", 0.0, 0.5, 2.0), 10),
                    DegenerateBranch);
    CHECK_THROWS_AS(expand_origin_branch(problem("one", 1.0 - 1e-10, 0.5, 2.0), 10),
                    DegenerateBranch);
}

TEST_CASE("auto truncation stops once the bound is small") {
    const auto e = expand_origin(problem("exp_neg", 0.0, 0.2, 2.0), 0);
    CHECK(e.remainder_bounds.back() < 1e-10);
    CHECK(int(e.partial_sums.size()) < 200);
    CHECK(std::abs(e.total() - e.reference) <= 1e-8);
}

TEST_CASE("expansion at a = inf via closed-form FPI terms") {
    SUBCASE("exp_neg pole case reproduces e^{omega} E1(omega) / ... identity") {
        const auto p = problem("exp_neg", 0.0, 1.0, kInf);
        const auto e = expand_origin(p, 30);
        CHECK_FALSE(e.bounds_certified);
        // total should equal the Stieltjes transform value e^{w} E1(w)... i.e.
        // direct reference computed by quadrature
        CHECK(e.total() == doctest::Approx(e.reference).epsilon(1e-9));
        CHECK(e.reference ==
              doctest::Approx(std::exp(1.0) * oracles::e1(1.0)).epsilon(1e-9));
    }
    SUBCASE("one with nu > 0: FPI terms vanish, correction equals csc form") {
        const auto p = problem("one", 0.5, 0.7, kInf);
        const auto e = expand_origin(p, 10);
        for (double t : e.fpi_terms)
            CHECK(t == 0.0);
        CHECK(e.total() ==
              doctest::Approx(M_PI / std::sqrt(0.7)).epsilon(1e-10));
        CHECK(e.reference == doctest::Approx(M_PI / std::sqrt(0.7)).epsilon(1e-9));
    }
    SUBCASE("no closed form available") {
        CHECK_THROWS_AS(expand_origin(problem("geom(2)", 0.0, 0.5, kInf), 10),
                        ExpansionInvalid);
    }
}

TEST_CASE("pole exclusion audit") {
    const auto p = problem("exp_neg", 0.5, 0.25, 1.0);
    const auto e = expand_origin_branch(p, 10);

    SUBCASE("residue term is n-independent") {
        const auto a5 = pole_exclusion_audit(p, 5);
        const auto a10 = pole_exclusion_audit(p, 10);
        CHECK(std::abs(a5.residue_term - a10.residue_term) <= 1e-12);
    }
    SUBCASE("residue equals the expansion correction") {
        const auto a = pole_exclusion_audit(p, 7);
        CHECK(std::abs(a.residue_term - e.correction_term) <= 1e-10);
    }
    SUBCASE("geometric decay factor") {
        const auto a = pole_exclusion_audit(problem("one", 0.5, 0.25, 1.0), 20);
        CHECK(a.bound_decay == doctest::Approx(std::pow(0.25, 20)).epsilon(1e-12));
    }
    SUBCASE("requires a branch exponent") {
        CHECK_THROWS_AS(pole_exclusion_audit(problem("one", 0.0, 0.25, 1.0), 5),
                        DegenerateBranch);
    }
}

TEST_CASE("naive vs corrected") {
    SUBCASE("one, nu = 0: missing term is -ln omega") {
        const auto r = naive_vs_corrected(problem("one", 0.0, 0.5, 2.0), 30);
        CHECK(r.missing == doctest::Approx(std::log(2.0)).epsilon(1e-12));
        CHECK(r.corrected - r.naive == doctest::Approx(r.missing));
    }
    SUBCASE("exp_neg: missing = -e^{0.5} ln 0.5") {
        const auto r = naive_vs_corrected(problem("exp_neg", 0.0, 0.5, 5.0), 30);
        CHECK(r.missing ==
              doctest::Approx(std::exp(0.5) * std::log(2.0)).epsilon(1e-12));
        const double direct = stieltjes_direct(problem("exp_neg", 0.0, 0.5, 5.0));
        CHECK(std::abs(r.corrected - direct) <= 1e-8);
    }
    SUBCASE("one, nu = 0.5: missing = 2 pi") {
        const auto r = naive_vs_corrected(problem("one", 0.5, 0.25, 2.0), 30);
        CHECK(r.missing == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
    }
}
