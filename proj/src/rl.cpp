#include "prabhakar/rl.hpp"

#include <cmath>

namespace prabhakar {

namespace {

Cplx pow_nonneg(double base, Cplx p) {
    if (base == 0.0) {
        if (p == Cplx(0.0, 0.0))
            return Cplx(1.0, 0.0);
        if (p.real() > 0.0)
            return Cplx(0.0, 0.0);
        throw DomainError("differintegral: singular power at the base point");
    }
    if (p.imag() == 0.0)
        return Cplx(std::pow(base, p.real()), 0.0);
    return std::exp(p * std::log(base));
}

} // namespace

Cplx PowerCache::factor(Cplx power) {
    const auto key = std::make_pair(power.real(), power.imag());
    auto it = cache_.find(key);
    if (it != cache_.end())
        return it->second;
    const Cplx rg = rgamma(power + 1.0);
    const Cplx v = (rg == Cplx(0.0, 0.0)) ? Cplx(0.0, 0.0) : pow_nonneg(dx_, power) * rg;
    cache_.emplace(key, v);
    return v;
}

PowerSum rl_integral_exact(const PowerSum& f, Cplx mu) {
    if (!(mu.real() > 0.0))
        throw ConditionError("rl_integral_exact: Re(mu) must be > 0");
    std::vector<PowerTerm> out;
    out.reserve(f.terms().size());
    for (const auto& t : f.terms()) {
        const Cplx ratio = gamma(t.exponent + 1.0) * rgamma(t.exponent + mu + 1.0);
        out.push_back({t.coeff * ratio, t.exponent + mu});
    }
    return PowerSum(f.center(), std::move(out));
}

Cplx powersum_differint_value(const PowerSum& f, Cplx order, double x, PowerCache* cache) {
    const double dx = x - f.center();
    if (dx < 0.0)
        throw DomainError("differintegral: evaluation point left of the base point");
    PowerCache local(dx);
    PowerCache& pc = cache ? *cache : local;
    Cplx s(0.0, 0.0);
    for (const auto& t : f.terms())
        s += t.coeff * gamma(t.exponent + 1.0) * pc.factor(t.exponent + order);
    return s;
}

EvalResult rl_quadrature(const Callable& f, Cplx order, double c, double x,
                         const QuadratureSpec& quad, double rel_tol) {
    quad.validate();
    if (!(order.real() > 0.0))
        throw ConditionError("rl_quadrature: Re(order) must be > 0");
    if (x <= c)
        throw DomainError("rl_quadrature: requires x > c");

    const double dx = x - c;
    const Cplx prefactor = pow_nonneg(dx, order) * rgamma(order);
    auto integrand = [&](double s, double) { return f.evaluator(c + dx * s); };

    auto run = [&](int n) {
        // left endpoint singularity of f unknown; -0.9 keeps the node range
        // wide enough for anything integrable the corpus uses
        const auto nodes = detail::tanh_sinh_nodes(n, -0.9, order.real() - 1.0);
        return prefactor * detail::integrate_weighted(nodes, order - 1.0, integrand);
    };
    const Cplx coarse = run(quad.nodes);
    const Cplx fine = run(2 * quad.nodes);

    EvalResult out;
    out.value = fine;
    out.err_estimate = std::abs(fine - coarse);
    out.terms_used = 2 * quad.nodes + 1;
    out.method = Method::quadrature;
    const double scale = std::max(std::abs(fine), 1e-8);
    if (out.err_estimate > 100.0 * rel_tol * scale)
        throw QuadratureFailure("rl_quadrature: node-doubling estimate above 100*rel_tol");
    if (!std::isfinite(fine.real()) || !std::isfinite(fine.imag()))
        throw QuadratureFailure("rl_quadrature: non-finite result");
    return out;
}

namespace {

EvalResult powersum_path(const Function& f, Cplx order, double c, double x) {
    EvalResult out;
    const PowerSum ps = f.to_power_sum(c);
    out.value = powersum_differint_value(ps, order, x);
    out.terms_used = static_cast<int>(ps.terms().size());
    if (f.is_exponential()) {
        // crude Taylor remainder bound for the truncated exponential
        const auto& e = f.exponential();
        const double am = std::abs(e.a) * (x - c);
        double tail = 1.0;
        for (int k = 1; k <= e.taylor_degree + 1; ++k)
            tail *= am / k;
        out.err_estimate = tail * std::exp(am);
        out.method = Method::series;
    } else {
        out.method = Method::exact;
    }
    return out;
}

EvalResult callable_derivative_path(const Function& f, Cplx order, double c, double x,
                                    const Truncation& trunc, const QuadratureSpec& quad) {
    const int n = static_cast<int>(std::floor(-order.real())) + 1;
    if (f.smoothness() < n)
        throw SmoothnessError("rl_differintegrate: callable lacks smoothness for the derivative order");
    const Cplx inner_order = order + static_cast<double>(n);

    auto F = [&](double xi) {
        return rl_quadrature(f.callable(), inner_order, c, xi, quad, trunc.rel_tol).value;
    };
    auto central = [&](double h) {
        Cplx tot(0.0, 0.0);
        double sign = 1.0, cnj = 1.0;
        for (int j = 0; j <= n; ++j) {
            tot += sign * cnj * F(x + (0.5 * n - j) * h);
            sign = -sign;
            cnj = cnj * (n - j) / (j + 1.0);
        }
        return tot / std::pow(h, n);
    };

    // h = (x-c)*1e-3 with two Richardson levels; target accuracy ~1e-6
    const double h = (x - c) * 1e-3;
    const Cplx d0 = central(h);
    const Cplx d1 = central(0.5 * h);
    const Cplx d2 = central(0.25 * h);
    const Cplx r1a = (4.0 * d1 - d0) / 3.0;
    const Cplx r1b = (4.0 * d2 - d1) / 3.0;
    const Cplx r2 = (16.0 * r1b - r1a) / 15.0;

    EvalResult out;
    out.value = r2;
    out.err_estimate = std::max(std::abs(r2 - r1b), 1e-6 * std::abs(r2));
    out.terms_used = 2 * quad.nodes + 1;
    out.method = Method::quadrature;
    return out;
}

} // namespace

EvalResult rl_differintegrate(const Function& f, Cplx order, double c, double x,
                              const Truncation& trunc, const QuadratureSpec& quad) {
    trunc.validate();
    quad.validate();
    if (x < c)
        throw DomainError("rl_differintegrate: requires x >= c");
    if (x == c) {
        // tie-break: integral of a power sum vanishing at the base point
        if (f.has_power_sum(c) && order.real() > 0.0) {
            const PowerSum ps = f.to_power_sum(c);
            bool all_positive = true;
            for (const auto& t : ps.terms())
                all_positive = all_positive && (t.exponent + order).real() > 0.0;
            if (all_positive) {
                EvalResult out;
                out.method = Method::exact;
                return out;
            }
        }
        throw DomainError("rl_differintegrate: evaluation at the base point is singular");
    }

    if (order == Cplx(0.0, 0.0)) {
        EvalResult out;
        out.value = f(x);
        out.method = Method::exact;
        return out;
    }

    if (f.has_power_sum(c))
        return powersum_path(f, order, c, x);

    if (!f.is_callable())
        throw DomainError("rl_differintegrate: unsupported representation");
    if (order.real() > 0.0)
        return rl_quadrature(f.callable(), order, c, x, quad, trunc.rel_tol);
    return callable_derivative_path(f, order, c, x, trunc, quad);
}

} // namespace prabhakar
