#include "prabhakar/function.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <unordered_map>

namespace prabhakar {

namespace {

constexpr double kIntTol = 1e-12;

bool is_nonneg_integer(Cplx z) {
    if (std::abs(z.imag()) > kIntTol)
        return false;
    const double r = std::round(z.real());
    return r >= -0.5 && std::abs(z.real() - r) <= kIntTol;
}

// (x - c)^mu for real x - c >= 0, complex mu
Cplx real_pow(double base, Cplx mu) {
    if (base == 0.0) {
        if (mu == Cplx(0.0, 0.0))
            return Cplx(1.0, 0.0);
        if (mu.real() > 0.0)
            return Cplx(0.0, 0.0);
        throw DomainError("power sum: evaluating a singular term at the base point");
    }
    if (mu.imag() == 0.0)
        return Cplx(std::pow(base, mu.real()), 0.0);
    return std::exp(mu * std::log(base));
}

struct KeyHash {
    size_t operator()(const std::pair<double, double>& k) const noexcept {
        const std::hash<double> h;
        return h(k.first) ^ (h(k.second) << 1);
    }
};

} // namespace

PowerSum::PowerSum(double center, std::vector<PowerTerm> terms) : center_(center) {
    // merge bit-identical exponents, drop zero coefficients
    std::unordered_map<std::pair<double, double>, size_t, KeyHash> index;
    std::vector<PowerTerm> merged;
    merged.reserve(terms.size());
    for (const auto& t : terms) {
        if (!(t.exponent.real() > -1.0))
            throw DomainError("PowerSum: exponent must have Re(mu) > -1");
        if (t.coeff == Cplx(0.0, 0.0))
            continue;
        const auto key = std::make_pair(t.exponent.real(), t.exponent.imag());
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, merged.size());
            merged.push_back(t);
        } else {
            merged[it->second].coeff += t.coeff;
        }
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const PowerTerm& t) { return t.coeff == Cplx(0.0, 0.0); }),
                 merged.end());
    terms_ = std::move(merged);
}

Cplx PowerSum::operator()(double x) const {
    const double dx = x - center_;
    if (dx < 0.0)
        throw DomainError("PowerSum: evaluation point left of the center");
    Cplx s(0.0, 0.0);
    for (const auto& t : terms_)
        s += t.coeff * real_pow(dx, t.exponent);
    return s;
}

bool PowerSum::is_polynomial() const noexcept {
    for (const auto& t : terms_)
        if (!is_nonneg_integer(t.exponent))
            return false;
    return true;
}

int PowerSum::degree() const {
    if (!is_polynomial())
        throw DomainError("PowerSum::degree: not a polynomial");
    int deg = -1;
    for (const auto& t : terms_)
        deg = std::max(deg, static_cast<int>(std::lround(t.exponent.real())));
    return deg;
}

PowerSum PowerSum::constant(double center, Cplx value) {
    return PowerSum(center, {{value, Cplx(0.0, 0.0)}});
}

PowerSum PowerSum::monomial(double center, Cplx coeff, Cplx exponent) {
    return PowerSum(center, {{coeff, exponent}});
}

bool Function::has_power_sum(double center) const {
    if (is_callable())
        return false;
    if (is_power_sum())
        return power_sum().center() == center;
    return true;
}

PowerSum Function::to_power_sum(double center) const {
    if (is_power_sum()) {
        if (power_sum().center() != center)
            throw DomainError("Function: power sum center differs from operator base point");
        return power_sum();
    }
    if (is_exponential()) {
        const auto& e = exponential();
        // e^{a x} = e^{a c} sum_k a^k (x-c)^k / k!
        std::vector<PowerTerm> terms;
        terms.reserve(static_cast<size_t>(e.taylor_degree) + 1);
        Cplx coef = std::exp(e.a * center);
        for (int k = 0; k <= e.taylor_degree; ++k) {
            terms.push_back({coef, Cplx(static_cast<double>(k), 0.0)});
            coef *= e.a / static_cast<double>(k + 1);
        }
        return PowerSum(center, std::move(terms));
    }
    throw DomainError("Function: callable has no power-sum form");
}

Cplx Function::operator()(double x) const {
    if (is_power_sum())
        return power_sum()(x);
    if (is_exponential())
        return std::exp(exponential().a * x);
    return callable().evaluator(x);
}

int Function::smoothness() const noexcept {
    if (is_callable())
        return callable().smoothness_order;
    return INT_MAX;
}

Cplx falling_factorial(Cplx mu, int m) {
    Cplx v(1.0, 0.0);
    for (int j = 0; j < m; ++j)
        v *= mu - static_cast<double>(j);
    return v;
}

PowerSum power_sum_derivative(const PowerSum& f, int m) {
    std::vector<PowerTerm> out;
    out.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        const Cplx ff = falling_factorial(t.exponent, m);
        if (ff == Cplx(0.0, 0.0))
            continue;
        out.push_back({t.coeff * ff, t.exponent - static_cast<double>(m)});
    }
    return PowerSum(f.center(), std::move(out));
}

namespace {

// m-th central difference with one Richardson level (h, h/2)
Cplx richardson_derivative(const std::function<Cplx(double)>& f, int m, double x, double h) {
    auto central = [&](double hh) {
        Cplx tot(0.0, 0.0);
        double sign = 1.0;
        double cmj = 1.0; // C(m, j)
        for (int j = 0; j <= m; ++j) {
            tot += sign * cmj * f(x + (0.5 * m - j) * hh);
            sign = -sign;
            cmj = cmj * (m - j) / (j + 1.0);
        }
        return tot / std::pow(hh, m);
    };
    const Cplx d1 = central(h);
    const Cplx d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace

Cplx derivative_value(const Function& f, int m, double x) {
    if (m == 0)
        return f(x);
    if (f.is_power_sum()) {
        const auto& ps = f.power_sum();
        const double dx = x - ps.center();
        Cplx s(0.0, 0.0);
        for (const auto& t : ps.terms()) {
            const Cplx ff = falling_factorial(t.exponent, m);
            if (ff == Cplx(0.0, 0.0))
                continue;
            s += t.coeff * ff * real_pow(dx, t.exponent - static_cast<double>(m));
        }
        return s;
    }
    if (f.is_exponential()) {
        const Cplx a = f.exponential().a;
        return std::pow(a, static_cast<double>(m)) * std::exp(a * x);
    }
    const auto& c = f.callable();
    if (m > 6)
        throw SmoothnessError("derivative_value: finite differences refused above order 6");
    if (m > c.smoothness_order)
        throw SmoothnessError("derivative_value: callable lacks the declared smoothness");
    const double h = std::max(std::abs(x), 1.0) * 1e-3;
    return richardson_derivative(c.evaluator, m, x, h);
}

Cplx derivative_at_point(const Function& f, int r, Cplx y) {
    if (f.is_power_sum()) {
        const auto& ps = f.power_sum();
        const Cplx dy = y - ps.center();
        Cplx s(0.0, 0.0);
        for (const auto& t : ps.terms()) {
            const Cplx ff = falling_factorial(t.exponent, r);
            if (ff == Cplx(0.0, 0.0))
                continue;
            s += t.coeff * ff * std::pow(dy, t.exponent - static_cast<double>(r));
        }
        return s;
    }
    if (f.is_exponential()) {
        const Cplx a = f.exponential().a;
        return std::pow(a, static_cast<double>(r)) * std::exp(a * y);
    }
    if (std::abs(y.imag()) > 1e-12)
        throw SmoothnessError("derivative_at_point: callable requires a real point");
    if (r == 0)
        return f(y.real());
    return derivative_value(f, r, y.real());
}

PowerSum multiply(const PowerSum& a, const PowerSum& b) {
    if (a.center() != b.center())
        throw DomainError("multiply: power sums have different centers");
    std::vector<PowerTerm> out;
    out.reserve(a.terms().size() * b.terms().size());
    for (const auto& ta : a.terms())
        for (const auto& tb : b.terms())
            out.push_back({ta.coeff * tb.coeff, ta.exponent + tb.exponent});
    return PowerSum(a.center(), std::move(out));
}

PowerSum add_scaled(const PowerSum& a, const PowerSum& b, Cplx scale) {
    if (a.center() != b.center())
        throw DomainError("add_scaled: power sums have different centers");
    std::vector<PowerTerm> out = a.terms();
    for (const auto& tb : b.terms())
        out.push_back({scale * tb.coeff, tb.exponent});
    return PowerSum(a.center(), std::move(out));
}

} // namespace prabhakar
