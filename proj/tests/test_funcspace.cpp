#include <doctest.h>

#include <cmath>
#include <random>

#include "prabhakar/rl.hpp"

using namespace prabhakar;

namespace {

double rel_err(Cplx got, Cplx want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

PowerSum taylor_sin(double center, int degree) {
    // sin about 0 only (center 0 in these tests)
    std::vector<PowerTerm> terms;
    double fact = 1.0;
    for (int k = 1; k <= degree; ++k) {
        fact *= k;
        if (k % 2 == 1) {
            const double sign = ((k - 1) / 2) % 2 == 0 ? 1.0 : -1.0;
            terms.push_back({Cplx(sign / fact, 0.0), Cplx(double(k), 0.0)});
        }
    }
    return PowerSum(center, std::move(terms));
}

PowerSum poly(double center, std::initializer_list<double> coeffs) {
    std::vector<PowerTerm> terms;
    int k = 0;
    for (double a : coeffs)
        terms.push_back({Cplx(a, 0.0), Cplx(double(k++), 0.0)});
    return PowerSum(center, std::move(terms));
}

} // namespace

TEST_CASE("PowerSum: invariants and evaluation") {
    CHECK_THROWS_AS(PowerSum(0.0, {{Cplx(1.0, 0.0), Cplx(-1.0, 0.0)}}), DomainError);
    CHECK_NOTHROW(PowerSum(0.0, {{Cplx(1.0, 0.0), Cplx(-0.99, 0.0)}}));

    const PowerSum p = poly(0.0, {1.0, 2.0, 3.0}); // 1 + 2x + 3x^2
    CHECK(rel_err(p(2.0), Cplx(17.0, 0.0)) < 1e-15);
    CHECK(p.is_polynomial());
    CHECK(p.degree() == 2);

    // duplicate exponents merge
    const PowerSum q(0.0, {{Cplx(1.0, 0.0), Cplx(2.0, 0.0)}, {Cplx(3.0, 0.0), Cplx(2.0, 0.0)}});
    CHECK(q.terms().size() == 1);
    CHECK(q.terms()[0].coeff == Cplx(4.0, 0.0));
}

TEST_CASE("Exponential converts to its shifted Taylor power sum") {
    const Function f{Exponential{Cplx(0.7, 0.0), 30}};
    const PowerSum ps = f.to_power_sum(0.5);
    CHECK(rel_err(ps(1.3), Cplx(std::exp(0.7 * 1.3), 0.0)) < 1e-14);
    CHECK(rel_err(f(1.3), Cplx(std::exp(0.7 * 1.3), 0.0)) < 1e-15);
}

TEST_CASE("derivative_value: exact and finite-difference paths") {
    const Function g{poly(0.0, {0.0, 0.0, -1.0})}; // -x^2
    CHECK(rel_err(derivative_value(g, 1, 0.7), Cplx(-1.4, 0.0)) < 1e-14);
    CHECK(rel_err(derivative_value(g, 2, 0.7), Cplx(-2.0, 0.0)) < 1e-14);
    CHECK(derivative_value(g, 3, 0.7) == Cplx(0.0, 0.0));

    const Function h{Callable{[](double x) { return Cplx(std::sin(x), 0.0); }, 10}};
    CHECK(rel_err(derivative_value(h, 1, 0.9), Cplx(std::cos(0.9), 0.0)) < 1e-9);
    CHECK(rel_err(derivative_value(h, 2, 0.9), Cplx(-std::sin(0.9), 0.0)) < 1e-7);
    CHECK_THROWS_AS(derivative_value(h, 7, 0.9), SmoothnessError);
    const Function rough{Callable{[](double x) { return Cplx(x, 0.0); }, 1}};
    CHECK_THROWS_AS(derivative_value(rough, 2, 0.9), SmoothnessError);
}

TEST_CASE("rl_integral_exact: closed forms on monomials") {
    // I^{1/2} applied to 1: (x-c)^{1/2}/Gamma(3/2) = 2 sqrt((x-c)/pi)
    const PowerSum one = PowerSum::constant(0.0, Cplx(1.0, 0.0));
    const PowerSum half = rl_integral_exact(one, Cplx(0.5, 0.0));
    const double x = 0.83;
    CHECK(rel_err(half(x), Cplx(2.0 * std::sqrt(x / M_PI), 0.0)) < 1e-14);

    // I^{alpha} of (x-c)^{beta-1} at alpha = beta = 1 is (x-c)
    const PowerSum lin = rl_integral_exact(PowerSum::monomial(0.0, 1.0, Cplx(0.0, 0.0)), 1.0);
    CHECK(rel_err(lin(x), Cplx(x, 0.0)) < 1e-15);

    // I^{alpha n + beta + m} of 1 = (x-c)^{...}/Gamma(...+1)
    const Cplx ord(0.6 * 2 + 0.4 + 3, 0.0);
    const PowerSum r = rl_integral_exact(one, ord);
    CHECK(rel_err(r(x), std::pow(Cplx(x, 0.0), ord) * rgamma(ord + 1.0)) < 1e-14);

    CHECK_THROWS_AS(rl_integral_exact(one, Cplx(-0.5, 0.0)), ConditionError);
}

TEST_CASE("rl_differintegrate: integral then derivative recovers the function") {
    const Function f{PowerSum::monomial(0.0, 1.0, Cplx(2.0, 0.0))};
    const double x = 1.37;
    const PowerSum integrated = rl_integral_exact(f.power_sum(), Cplx(0.5, 0.0));
    const EvalResult back = rl_differintegrate(Function{integrated}, Cplx(-0.5, 0.0), 0.0, x);
    CHECK(rel_err(back.value, Cplx(x * x, 0.0)) < 1e-12);
    CHECK(back.method == Method::exact);
}

TEST_CASE("rl_differintegrate: integer orders are classical derivatives") {
    const Function cube{PowerSum::monomial(0.0, 1.0, Cplx(3.0, 0.0))};
    const EvalResult d = rl_differintegrate(cube, Cplx(-1.0, 0.0), 0.0, 0.9);
    CHECK(rel_err(d.value, Cplx(3.0 * 0.81, 0.0)) < 1e-14);

    // n-th classical derivative of a polynomial, exact coefficient arithmetic
    const Function p{poly(0.0, {1.0, -2.0, 0.5, 4.0})};
    for (int n = 1; n <= 4; ++n) {
        const EvalResult dn = rl_differintegrate(p, Cplx(double(-n), 0.0), 0.0, 0.6);
        Cplx want(0.0, 0.0);
        const std::vector<double> c = {1.0, -2.0, 0.5, 4.0};
        for (int k = n; k <= 3; ++k) {
            double ff = 1.0;
            for (int j = 0; j < n; ++j)
                ff *= k - j;
            want += c[k] * ff * std::pow(0.6, k - n);
        }
        CHECK(std::abs(dn.value - want) < 1e-13 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("rl_differintegrate: callable derivative path vs exact Taylor route") {
    // order 0.3 on sin via quadrature+Richardson against the degree-25 power sum
    const Function taylor{taylor_sin(0.0, 25)};
    const Function blackbox{Callable{[](double t) { return Cplx(std::sin(t), 0.0); }, 50}};
    const EvalResult exact = rl_differintegrate(taylor, Cplx(0.3, 0.0), 0.0, 1.0);
    const EvalResult quad = rl_differintegrate(blackbox, Cplx(0.3, 0.0), 0.0, 1.0);
    CHECK(rel_err(quad.value, exact.value) < 1e-9);

    const EvalResult dexact = rl_differintegrate(taylor, Cplx(-0.5, 0.0), 0.0, 1.0);
    const EvalResult dquad = rl_differintegrate(blackbox, Cplx(-0.5, 0.0), 0.0, 1.0);
    CHECK(rel_err(dquad.value, dexact.value) < 1e-6);
    CHECK(dquad.err_estimate >= 1e-6 * std::abs(dquad.value)); // flagged lower-accuracy
}

TEST_CASE("rl_quadrature: closed forms") {
    const Callable one{[](double) { return Cplx(1.0, 0.0); }, 1000};
    const EvalResult a = rl_quadrature(one, Cplx(1.0, 0.0), 0.0, 0.77);
    CHECK(rel_err(a.value, Cplx(0.77, 0.0)) < 1e-13);

    const EvalResult b = rl_quadrature(one, Cplx(0.5, 0.0), 0.0, 1.0);
    CHECK(rel_err(b.value, 1.0 / gamma(Cplx(1.5, 0.0))) < 1e-13);

    const Callable expf{[](double t) { return Cplx(std::exp(t), 0.0); }, 1000};
    const Function taylor{Exponential{Cplx(1.0, 0.0), 40}};
    const EvalResult q = rl_quadrature(expf, Cplx(0.7, 0.0), 0.0, 1.0);
    const EvalResult e = rl_differintegrate(taylor, Cplx(0.7, 0.0), 0.0, 1.0);
    CHECK(rel_err(q.value, e.value) < 1e-10);
}

TEST_CASE("rl semigroup: I^a I^b = I^{a+b} on power sums") {
    std::mt19937_64 rng(21u);
    auto uni = [&](double lo, double hi) {
        return lo + (hi - lo) * ((rng() >> 11) * 0x1.0p-53);
    };
    const PowerSum f = poly(0.0, {0.5, 1.0, -0.25, 2.0});
    for (int i = 0; i < 8; ++i) {
        const Cplx a(uni(0.1, 1.5), uni(-0.2, 0.2));
        const Cplx b(uni(0.1, 1.5), uni(-0.2, 0.2));
        const PowerSum fb = rl_integral_exact(f, b);
        const PowerSum fab = rl_integral_exact(fb, a);
        const PowerSum direct = rl_integral_exact(f, a + b);
        for (int k = 1; k <= 10; ++k) {
            const double x = 0.2 * k;
            CHECK(std::abs(fab(x) - direct(x)) <=
                  1e-11 * std::max(1.0, std::abs(direct(x))));
        }
    }
}

TEST_CASE("rl: exact and quadrature paths agree on polynomials") {
    const PowerSum p = poly(0.0, {1.0, -1.0, 0.5, 0.0, 2.0, 0.0, -0.3});
    const Function pf{p};
    const Callable pc{[p](double t) { return p(t); }, 1000};
    for (double order : {0.25, 0.5, 0.9, 1.5}) {
        for (double x : {0.4, 1.0, 2.0}) {
            const EvalResult ex = rl_differintegrate(pf, Cplx(order, 0.0), 0.0, x);
            const EvalResult qu = rl_quadrature(pc, Cplx(order, 0.0), 0.0, x);
            CHECK(rel_err(qu.value, ex.value) < 1e-8);
        }
    }
}

TEST_CASE("rl: domain errors and the x == c tie-break") {
    const Function f{PowerSum::monomial(0.0, 1.0, Cplx(2.0, 0.0))};
    CHECK_THROWS_AS(rl_differintegrate(f, Cplx(0.5, 0.0), 0.0, -0.1), DomainError);
    // all exponents satisfy Re(mu + order) > 0: integral vanishes at x = c
    const EvalResult z = rl_differintegrate(f, Cplx(0.5, 0.0), 0.0, 0.0);
    CHECK(z.value == Cplx(0.0, 0.0));
    // otherwise the evaluation is singular
    const Function s{PowerSum::monomial(0.0, 1.0, Cplx(-0.5, 0.0))};
    CHECK_THROWS_AS(rl_differintegrate(s, Cplx(0.2, 0.0), 0.0, 0.0), DomainError);
}

TEST_CASE("rl: complex order with imaginary part") {
    // I^{0.5+0.3i} on t^2: exact vs quadrature
    const PowerSum p = PowerSum::monomial(0.0, 1.0, Cplx(2.0, 0.0));
    const Callable pc{[](double t) { return Cplx(t * t, 0.0); }, 1000};
    const Cplx order(0.5, 0.3);
    const EvalResult ex = rl_differintegrate(Function{p}, order, 0.0, 1.2);
    const EvalResult qu = rl_quadrature(pc, order, 0.0, 1.2);
    CHECK(rel_err(qu.value, ex.value) < 1e-10);
}
