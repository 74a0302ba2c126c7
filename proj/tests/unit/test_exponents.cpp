#include "doctest.h"

#include "common.hpp"
#include "ssmp/errors.hpp"

#include <random>

using namespace ssmp;
using namespace ssmp_test;

TEST_CASE("eval_psi examples")
{
    Exponent q(LevyQuadruplet(0.0, 0.0, 1.0));
    CHECK(std::abs(eval_psi(q, 1.0) - cplx(1.0)) <= 1e-15);
    Exponent p(WienerHopfPair{id(), id()});
    CHECK(std::abs(eval_psi(p, 2.0) - cplx(4.0)) <= 1e-14);
    WienerHopfPair gr{BernsteinFunction::gamma_ratio_plus(0.7), BernsteinFunction::gamma_ratio_minus(0.3, 1.0)};
    CHECK(std::abs(gr.psi(0.0)) <= 1e-15);
}

TEST_CASE("quadruplet with atoms and drift")
{
    // psi0 + sigma^2 xi^2 - i b xi + lambda (1 - e^{i xi y}) for |y| > 1
    LevyMeasure mu;
    mu.atoms = {{2.0, 0.5}, {-0.5, 1.5}};
    LevyQuadruplet q(0.1, 0.3, 0.2, mu);
    for (double xi : {-3.0, 0.7, 5.0}) {
        cplx want = 0.1 + 0.2 * xi * xi - cplx(0.0, 0.3 * xi) + 0.5 * (1.0 - std::exp(cplx(0.0, 2.0 * xi))) +
                    1.5 * (1.0 - std::exp(cplx(0.0, -0.5 * xi)) + cplx(0.0, -0.5 * xi));
        CHECK(std::abs(q(xi) - want) <= 1e-13);
    }
}

TEST_CASE("tabulated Levy density: tempered stable on both sides")
{
    // int (1 - e^{i xi y} + i xi y 1_{y<=1}) nu(dy) by a fine midpoint rule,
    // once on the interpolated table and once on y^{-3/2} e^{-y} itself
    LevyMeasure mu;
    mu.positive = tempered_stable_density();
    LevyQuadruplet q(0.0, 0.0, 0.0, mu);
    const TabulatedDensity& d = *mu.positive;
    auto direct = [&](double xi, bool table) {
        cplx s = 0.0;
        // substitution y = e^t, composite midpoint on a fine grid
        const int n = 400000;
        double t0 = std::log(1e-12), t1 = std::log(60.0), h = (t1 - t0) / n;
        for (int k = 0; k < n; ++k) {
            double y = std::exp(t0 + (k + 0.5) * h);
            cplx kern = 1.0 - std::exp(cplx(0.0, xi * y));
            if (y <= 1.0)
                kern += cplx(0.0, xi * y);
            double dens = table ? d.density(y) : std::pow(y, -1.5) * std::exp(-y);
            s += kern * dens * y * h;
        }
        return s;
    };
    for (double xi : {0.5, 3.0}) {
        cplx tab = direct(xi, true);
        CHECK(std::abs(q(xi) - tab) <= 1e-3 * std::abs(tab));
        cplx exact = direct(xi, false);
        CHECK(std::abs(q(xi) - exact) <= 5e-2 * std::abs(exact));
    }
}

TEST_CASE("Hermitian symmetry and nonnegativity")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-20.0, 20.0);
    LevyMeasure mu;
    mu.atoms = {{1.5, 0.4}, {-0.2, 2.0}};
    mu.positive = tempered_stable_density();
    LevyQuadruplet q(0.25, -0.4, 0.5, mu);
    WienerHopfPair p{BernsteinFunction::gamma_ratio_plus(0.7), BernsteinFunction::gamma_ratio_minus(0.3, 1.0)};
    for (int i = 0; i < 50; ++i) {
        double xi = U(rng);
        CHECK(std::abs(q(-xi) - std::conj(q(xi))) <= 1e-12 * (1.0 + std::abs(q(xi))));
        CHECK(std::abs(p.psi(-xi) - std::conj(p.psi(xi))) <= 1e-12 * (1.0 + std::abs(p.psi(xi))));
        CHECK(q(xi).real() >= q.psi0() - 1e-12);
    }
}

TEST_CASE("cross-representation for xi^2")
{
    Exponent e(LevyQuadruplet(0.0, 0.0, 1.0), WienerHopfPair{id(), id()});
    std::vector<double> xi;
    for (double x = -30.0; x <= 30.0; x += 0.25)
        xi.push_back(x);
    CHECK(representation_mismatch(e, xi) <= 1e-10);
}

TEST_CASE("conjugation")
{
    WienerHopfPair p{BernsteinFunction::gamma_ratio_plus(0.7), BernsteinFunction::gamma_ratio_minus(0.3, 1.0)};
    Exponent e(LevyQuadruplet(0.1, 0.5, 0.2, LevyMeasure{{{1.0, 0.3}}, std::nullopt, std::nullopt}), p);
    Exponent c = conjugate(e);
    Exponent cc = conjugate(c);
    for (double xi : {-2.0, 0.3, 4.0}) {
        CHECK(std::abs(eval_psi(cc, xi) - eval_psi(e, xi)) <= 1e-14);
        CHECK(std::abs(cc.quadruplet()->operator()(xi) - e.quadruplet()->operator()(xi)) <= 1e-14);
        // conjugate exponent is conj psi
        CHECK(std::abs(eval_psi(c, xi) - std::conj(eval_psi(e, xi))) <= 1e-12 * std::abs(eval_psi(e, xi)));
        CHECK(std::abs(c.quadruplet()->operator()(xi) - std::conj(e.quadruplet()->operator()(xi))) <= 1e-13);
    }
    Exponent idid(WienerHopfPair{id(), id()});
    CHECK(std::abs(eval_psi(conjugate(idid), 1.3) - eval_psi(idid, 1.3)) <= 1e-15);
}

TEST_CASE("diffusion factorization")
{
    for (auto [s, b] : {std::pair{1.0, 0.0}, std::pair{0.5, 0.8}, std::pair{0.5, -0.8}, std::pair{0.0, 2.0},
                        std::pair{0.0, -2.0}}) {
        LevyQuadruplet q(0.0, b, s);
        auto p = factorize_diffusion(q);
        REQUIRE(p);
        for (double xi : {-3.0, 0.4, 7.0})
            CHECK(std::abs(p->psi(xi) - q(xi)) <= 1e-13 * (1.0 + std::abs(q(xi))));
    }
    CHECK_FALSE(factorize_diffusion(LevyQuadruplet(1.0, 0.0, 1.0)));
}

TEST_CASE("invalid quadruplets")
{
    CHECK_THROWS_AS(LevyQuadruplet(-1.0, 0.0, 1.0), Error);
    CHECK_THROWS_AS(LevyQuadruplet(0.0, 0.0, -1.0), Error);
    LevyMeasure bad;
    bad.atoms = {{0.0, 1.0}};
    CHECK_THROWS_AS(LevyQuadruplet(0.0, 0.0, 0.0, bad), Error);
    LevyMeasure heavy;
    heavy.positive = tempered_stable_density();
    heavy.positive->lower_exponent = 2.5; // int y^2 ^ 1 mu(dy) diverges
    CHECK_THROWS_AS(LevyQuadruplet(0.0, 0.0, 0.0, heavy), Error);
}

TEST_CASE("weak non-lattice check")
{
    NonLatticeReport a = weak_nonlattice_check(id(), 100.0);
    CHECK(a.ok);
    CHECK(std::abs(a.kappa + 1.0) <= 1e-6);
    NonLatticeReport b = weak_nonlattice_check(BernsteinFunction::compound_poisson(0.0, 0.0, {{1.0, 1.0}}), 100.0);
    CHECK_FALSE(b.ok);
    NonLatticeReport c = weak_nonlattice_check(BernsteinFunction::stable(0.5), 100.0);
    CHECK(c.ok);
    CHECK(std::abs(c.kappa + 0.5) <= 1e-6);
}
