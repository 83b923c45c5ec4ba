#include "prabhakar/operators.hpp"

#include <cmath>
#include <memory>

namespace prabhakar {

namespace {

constexpr double kTol = 1e-12;

Cplx pow_nonneg(double base, Cplx p) {
    if (base == 0.0) {
        if (p == Cplx(0.0, 0.0))
            return Cplx(1.0, 0.0);
        if (p.real() > 0.0)
            return Cplx(0.0, 0.0);
        throw DomainError("operator: singular power at the base point");
    }
    if (p.imag() == 0.0)
        return Cplx(std::pow(base, p.real()), 0.0);
    return std::exp(p * std::log(base));
}

bool is_nonneg_int(double v) {
    const double r = std::round(v);
    return r >= -0.5 && std::abs(v - r) <= kTol;
}

using CoeffFn = std::function<Cplx()>;

struct EngineOut {
    Cplx value{0.0, 0.0};
    double last_mag = 0.0;
    int terms = 0;
    double route_err = 0.0; // extra error from quadrature/Taylor legs
};

void check_cap(const Truncation& tr, const EngineOut& out) {
    if (out.terms >= tr.max_terms &&
        out.last_mag > tr.rel_tol * std::max(std::abs(out.value), 1e-300))
        throw NonConvergence("operator series: term cap reached with non-small last term");
}

EngineOut engine_powersum(const CoeffFn& next, Cplx alpha, Cplx sigma, const PowerSum& ps,
                          double x, const Truncation& tr) {
    PowerCache cache(x - ps.center());
    EngineOut out;
    int small = 0;
    for (int n = 0; n < tr.max_terms; ++n) {
        const Cplx a = next();
        if (a == Cplx(0.0, 0.0) && n > 0) {
            out.terms = n;
            out.last_mag = 0.0;
            return out; // terminating series
        }
        const Cplx ord = alpha * static_cast<double>(n) + sigma;
        Cplx t(0.0, 0.0);
        for (const auto& term : ps.terms())
            t += term.coeff * gamma(term.exponent + 1.0) * cache.factor(term.exponent + ord);
        t *= a;
        out.value += t;
        out.last_mag = std::abs(t);
        out.terms = n + 1;
        if (out.last_mag <= tr.rel_tol * std::max(std::abs(out.value), 1e-300)) {
            if (++small >= tr.consecutive_small)
                return out;
        } else {
            small = 0;
        }
    }
    check_cap(tr, out);
    return out;
}

EngineOut engine_callable(const CoeffFn& next, Cplx alpha, Cplx sigma, const Function& f,
                          double c, double x, const Truncation& tr, const QuadratureSpec& quad) {
    const double dx = x - c;
    // weight exponent of the most singular positive-order term in the series
    double lam = sigma.real() - 1.0;
    if (lam <= -1.0) {
        const int n0 = static_cast<int>(std::floor(-sigma.real() / alpha.real())) + 1;
        lam = alpha.real() * n0 + sigma.real() - 1.0;
    }
    lam = std::min(lam, 0.0);

    struct NodeSet {
        std::vector<detail::QuadNode> nodes;
        std::vector<Cplx> fvals;
        std::vector<double> log_oms;
    };
    auto build = [&](int n) {
        NodeSet ns;
        ns.nodes = detail::tanh_sinh_nodes(n, -0.9, lam);
        ns.fvals.reserve(ns.nodes.size());
        ns.log_oms.reserve(ns.nodes.size());
        for (const auto& nd : ns.nodes) {
            ns.fvals.push_back(f(c + dx * nd.s));
            ns.log_oms.push_back(std::log(nd.one_minus_s));
        }
        return ns;
    };
    const NodeSet coarse = build(quad.nodes);
    const NodeSet fine = build(2 * quad.nodes);

    auto term_integral = [&](const NodeSet& ns, Cplx ord) {
        Cplx acc(0.0, 0.0);
        for (size_t k = 0; k < ns.nodes.size(); ++k) {
            const double lm = ns.nodes[k].log_weight + (ord.real() - 1.0) * ns.log_oms[k];
            if (lm < -745.0)
                continue;
            acc += std::exp(Cplx(lm, ord.imag() * ns.log_oms[k])) * ns.fvals[k];
        }
        return pow_nonneg(dx, ord) * rgamma(ord) * acc;
    };

    EngineOut out;
    Cplx sum_coarse(0.0, 0.0);
    int small = 0;
    for (int n = 0; n < tr.max_terms; ++n) {
        const Cplx a = next();
        if (a == Cplx(0.0, 0.0) && n > 0) {
            out.terms = n;
            out.last_mag = 0.0;
            out.route_err = std::abs(out.value - sum_coarse);
            return out;
        }
        const Cplx ord = alpha * static_cast<double>(n) + sigma;
        Cplx t_fine, t_coarse;
        if (ord == Cplx(0.0, 0.0)) {
            t_fine = t_coarse = f(x);
        } else if (ord.real() > 0.0) {
            t_fine = term_integral(fine, ord);
            t_coarse = term_integral(coarse, ord);
        } else {
            const EvalResult r = rl_differintegrate(f, ord, c, x, tr, quad);
            t_fine = t_coarse = r.value;
            out.route_err += std::abs(a) * r.err_estimate;
        }
        out.value += a * t_fine;
        sum_coarse += a * t_coarse;
        out.last_mag = std::abs(a * t_fine);
        out.terms = n + 1;
        if (out.last_mag <= tr.rel_tol * std::max(std::abs(out.value), 1e-300)) {
            if (++small >= tr.consecutive_small)
                break;
        } else {
            small = 0;
        }
    }
    check_cap(tr, out);
    out.route_err += std::abs(out.value - sum_coarse);
    return out;
}

double taylor_tail_bound(const Exponential& e, double dx) {
    const double am = std::abs(e.a) * dx;
    double tail = 1.0;
    for (int k = 1; k <= e.taylor_degree + 1; ++k)
        tail *= am / k;
    return tail * std::exp(am);
}

EvalResult run_series(const CoeffFn& next, Cplx alpha, Cplx sigma, const Function& f, double c,
                      double x, const Truncation& tr, const QuadratureSpec& quad) {
    tr.validate();
    quad.validate();
    if (!(x > c))
        throw DomainError("operator: requires x > c");

    EvalResult out;
    if (f.has_power_sum(c)) {
        const PowerSum ps = f.to_power_sum(c);
        const EngineOut e = engine_powersum(next, alpha, sigma, ps, x, tr);
        out.value = e.value;
        out.terms_used = e.terms;
        out.err_estimate = e.last_mag;
        out.method = Method::series;
        if (f.is_exponential())
            out.err_estimate += taylor_tail_bound(f.exponential(), x - c);
    } else if (f.is_callable()) {
        const EngineOut e = engine_callable(next, alpha, sigma, f, c, x, tr, quad);
        out.value = e.value;
        out.terms_used = e.terms;
        out.err_estimate = e.last_mag + e.route_err;
        out.method = Method::series;
    } else {
        throw DomainError("operator: unsupported function representation");
    }
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag()))
        throw NonConvergence("operator series produced a non-finite value");
    return out;
}

CoeffFn gp_coeff_fn(Cplx rho, Cplx kappa, Cplx factor) {
    auto seq = std::make_shared<detail::GpCoeffs>(rho, kappa, factor);
    return [seq]() { return seq->next(); };
}

} // namespace

void ParamSet::validate(bool integral_type) const {
    if (!(alpha.real() > 0.0) || !(kappa.real() > 0.0) || !((kappa - alpha).real() < 1.0))
        throw ConditionError("ParamSet: need Re(alpha)>0, Re(kappa)>0, Re(kappa-alpha)<1");
    if (integral_type && !(beta.real() > 0.0))
        throw ConditionError("ParamSet: integral-type operation needs Re(beta)>0");
}

bool ParamSet::kappa_is_one() const noexcept {
    return std::abs(kappa - 1.0) <= kTol;
}

void ABConfig::validate() const {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw RangeError("ABConfig: alpha must lie in (0,1)");
    if (!(b() > 0.0))
        throw RangeError("ABConfig: multiplier B(alpha) must be positive");
}

IterationOrder IterationOrder::make(Cplx nu, Cplx beta) {
    IterationOrder out;
    out.nu = nu;
    const double re = (nu * beta).real();
    out.m = std::max(0, static_cast<int>(std::floor(-re)) + 1);
    return out;
}

EvalResult prabhakar_series(const ParamSet& p, const Function& f, double x,
                            const Truncation& trunc, const QuadratureSpec& quad) {
    p.validate(true);
    return run_series(gp_coeff_fn(p.rho, p.kappa, p.omega), p.alpha, p.beta, f, p.c, x, trunc,
                      quad);
}

EvalResult prabhakar_quadrature(const ParamSet& p, const Function& f, double x,
                                const QuadratureSpec& quad, const Truncation& trunc) {
    p.validate(true);
    trunc.validate();
    quad.validate();
    if (!(x > p.c))
        throw DomainError("prabhakar_quadrature: requires x > c");

    const double dx = x - p.c;
    auto run = [&](int n) {
        const auto nodes = detail::tanh_sinh_nodes(n, -0.9, p.beta.real() - 1.0);
        auto g = [&](double s, double oms) {
            const double u = dx * oms; // x - t
            const Cplx z = p.omega * pow_nonneg(u, p.alpha);
            return mittag_leffler(p.alpha, p.beta, p.rho, p.kappa, z, trunc).value *
                   f(p.c + dx * s);
        };
        return pow_nonneg(dx, p.beta) * detail::integrate_weighted(nodes, p.beta - 1.0, g);
    };
    const Cplx coarse = run(quad.nodes);
    const Cplx fine = run(2 * quad.nodes);

    EvalResult out;
    out.value = fine;
    out.err_estimate = std::abs(fine - coarse);
    out.terms_used = 2 * quad.nodes + 1;
    out.method = Method::quadrature;
    const double bar =
        std::max(100.0 * trunc.rel_tol * std::max(std::abs(fine), 1e-8), 1e-13);
    if (out.err_estimate > bar)
        throw QuadratureFailure("prabhakar_quadrature: node-doubling estimate too large");
    return out;
}

EvalResult prabhakar_derivative(const ParamSet& p, const Function& f, double x,
                                const Truncation& trunc, const QuadratureSpec& quad) {
    if (!p.kappa_is_one())
        throw ConditionError("prabhakar_derivative: requires kappa = 1");
    if (!(p.alpha.real() > 0.0) || !(p.beta.real() > 0.0))
        throw ConditionError("prabhakar_derivative: need Re(alpha)>0, Re(beta)>0");
    if (f.is_callable()) {
        const int m = static_cast<int>(std::floor(p.beta.real())) + 1;
        if (f.smoothness() < m)
            throw SmoothnessError("prabhakar_derivative: callable lacks required smoothness");
    }
    return run_series(gp_coeff_fn(-p.rho, 1.0, p.omega), p.alpha, -p.beta, f, p.c, x, trunc,
                      quad);
}

PowerSum detail::expand_series(Cplx alpha, Cplx sigma, GpCoeffs coeffs, const PowerSum& f,
                               double x_ref, const Truncation& trunc) {
    trunc.validate();
    if (!(sigma.real() > 0.0))
        throw ConditionError("expand_series: requires Re(sigma) > 0");
    const double dx = x_ref - f.center();
    if (!(dx > 0.0))
        throw DomainError("expand_series: reference point must lie right of the center");

    std::vector<PowerTerm> acc;
    double sum_mag = 0.0;
    int small = 0;
    int n = 0;
    double last = 0.0;
    for (; n < trunc.max_terms; ++n) {
        const Cplx a = coeffs.next();
        if (a == Cplx(0.0, 0.0) && n > 0)
            return PowerSum(f.center(), std::move(acc));
        const Cplx ord = alpha * static_cast<double>(n) + sigma;
        double mag = 0.0;
        for (const auto& t : f.terms()) {
            const Cplx coef = a * t.coeff * gamma(t.exponent + 1.0) * rgamma(t.exponent + ord + 1.0);
            const Cplx expo = t.exponent + ord;
            acc.push_back({coef, expo});
            mag += std::abs(coef) * std::pow(dx, expo.real());
        }
        sum_mag += mag;
        last = mag;
        if (mag <= trunc.rel_tol * std::max(sum_mag, 1e-300)) {
            if (++small >= trunc.consecutive_small) {
                ++n;
                break;
            }
        } else {
            small = 0;
        }
    }
    if (n >= trunc.max_terms && last > trunc.rel_tol * std::max(sum_mag, 1e-300))
        throw NonConvergence("expand_series: term cap reached with non-small last term");
    return PowerSum(f.center(), std::move(acc));
}

PowerSum prabhakar_expand(const ParamSet& p, const PowerSum& f, double x_ref,
                          const Truncation& trunc) {
    p.validate(true);
    return detail::expand_series(p.alpha, p.beta, detail::GpCoeffs(p.rho, p.kappa, p.omega), f,
                                 x_ref, trunc);
}

EvalResult prabhakar_left_inverse_form(const ParamSet& p, Cplx gamma_order, const Function& f,
                                       double x, const Truncation& trunc,
                                       const QuadratureSpec& quad) {
    if (!p.kappa_is_one())
        throw ConditionError("prabhakar_left_inverse_form: requires kappa = 1");
    if (!(gamma_order.real() > 0.0))
        throw ConditionError("prabhakar_left_inverse_form: requires Re(gamma) > 0");
    if (!(x > p.c))
        throw DomainError("prabhakar_left_inverse_form: requires x > c");

    const Cplx diff_order = -(p.beta + gamma_order);
    if (f.has_power_sum(p.c)) {
        const PowerSum inner =
            detail::expand_series(p.alpha, gamma_order, detail::GpCoeffs(-p.rho, 1.0, p.omega),
                                  f.to_power_sum(p.c), x, trunc);
        EvalResult out;
        out.value = powersum_differint_value(inner, diff_order, x);
        out.terms_used = static_cast<int>(inner.terms().size());
        out.err_estimate = trunc.rel_tol * std::max(std::abs(out.value), 1.0);
        out.method = Method::series;
        if (f.is_exponential())
            out.err_estimate += taylor_tail_bound(f.exponential(), x - p.c);
        return out;
    }

    // callable: numerically differintegrate the inner series evaluation
    auto inner_eval = [p, gamma_order, f, trunc, quad](double xi) {
        return run_series(gp_coeff_fn(-p.rho, 1.0, p.omega), p.alpha, gamma_order, f, p.c, xi,
                          trunc, quad)
            .value;
    };
    Callable wrapped{inner_eval, f.smoothness()};
    return rl_differintegrate(Function(wrapped), diff_order, p.c, x, trunc, quad);
}

namespace {

Function derivative_function(const Function& f, double c) {
    if (f.is_callable()) {
        if (f.smoothness() < 1)
            throw SmoothnessError("AB derivative: callable lacks a first derivative");
        const Callable& inner = f.callable();
        Callable d{[inner_f = inner.evaluator, c](double xi) {
                       Function tmp{Callable{inner_f, 1000}};
                       return derivative_value(tmp, 1, xi);
                   },
                   inner.smoothness_order - 1};
        return Function(d);
    }
    try {
        return Function(power_sum_derivative(f.to_power_sum(c), 1));
    } catch (const DomainError&) {
        throw SmoothnessError("AB derivative: derivative of f is not integrable at c");
    }
}

} // namespace

EvalResult ab_derivative_r(const ABConfig& cfg, const Function& f, double c, double x,
                           const Truncation& trunc, const QuadratureSpec& quad) {
    cfg.validate();
    const Cplx q(-cfg.alpha / (1.0 - cfg.alpha), 0.0);
    // geometric coefficients q^n; d/dx absorbed into the order shift
    auto qpow = std::make_shared<Cplx>(1.0, 0.0);
    CoeffFn coeff = [qpow, q]() {
        const Cplx out = *qpow;
        *qpow *= q;
        return out;
    };
    EvalResult out = run_series(coeff, cfg.alpha, Cplx(0.0, 0.0), f, c, x, trunc, quad);
    const double pref = cfg.b() / (1.0 - cfg.alpha);
    out.value *= pref;
    out.err_estimate *= pref;
    return out;
}

EvalResult ab_derivative_c(const ABConfig& cfg, const Function& f, double c, double x,
                           const Truncation& trunc, const QuadratureSpec& quad) {
    cfg.validate();
    const Function fp = derivative_function(f, c);
    const Cplx q(-cfg.alpha / (1.0 - cfg.alpha), 0.0);
    auto qpow = std::make_shared<Cplx>(1.0, 0.0);
    CoeffFn coeff = [qpow, q]() {
        const Cplx out = *qpow;
        *qpow *= q;
        return out;
    };
    EvalResult out = run_series(coeff, cfg.alpha, Cplx(1.0, 0.0), fp, c, x, trunc, quad);
    const double pref = cfg.b() / (1.0 - cfg.alpha);
    out.value *= pref;
    out.err_estimate *= pref;
    return out;
}

EvalResult ab_integral(const ABConfig& cfg, const Function& f, double c, double x,
                       const QuadratureSpec& quad) {
    cfg.validate();
    if (!(x > c))
        throw DomainError("ab_integral: requires x > c");
    const double b = cfg.b();
    const EvalResult ri = rl_differintegrate(f, cfg.alpha, c, x, Truncation{}, quad);
    EvalResult out;
    out.value = (1.0 - cfg.alpha) / b * f(x) + cfg.alpha / b * ri.value;
    out.err_estimate = cfg.alpha / b * ri.err_estimate;
    out.terms_used = ri.terms_used;
    out.method = ri.method;
    return out;
}

EvalResult iterated_ab(const ABConfig& cfg, double rho, const Function& f, double c, double x,
                       const Truncation& trunc, const QuadratureSpec& quad) {
    if (!(cfg.alpha >= 0.0) || !(cfg.alpha <= 1.0))
        throw RangeError("iterated_ab: alpha must lie in [0,1]");
    const double b = cfg.b();
    if (!(b > 0.0))
        throw RangeError("iterated_ab: multiplier must be positive");

    if (cfg.alpha == 0.0) {
        EvalResult out;
        out.value = std::pow(1.0 / b, rho) * f(x);
        out.method = Method::exact;
        out.terms_used = 1;
        return out;
    }
    if (cfg.alpha == 1.0) {
        EvalResult out = rl_differintegrate(f, Cplx(rho, 0.0), c, x, trunc, quad);
        out.value *= std::pow(1.0 / b, rho);
        return out;
    }

    const double ratio = cfg.alpha / (1.0 - cfg.alpha);
    if (ratio >= 1.0 && !is_nonneg_int(rho))
        throw NonConvergence("iterated_ab: alpha/(1-alpha) >= 1 with non-integer rho");

    const double scale = std::pow((1.0 - cfg.alpha) / b, rho);
    auto state = std::make_shared<std::pair<Cplx, Cplx>>(Cplx(1.0, 0.0), Cplx(1.0, 0.0));
    auto count = std::make_shared<int>(0);
    CoeffFn coeff = [state, count, rho, ratio]() {
        auto& [gb, fac] = *state;
        const Cplx out = gb * fac;
        gb *= (rho - *count) / static_cast<double>(*count + 1); // gen_binomial recursion
        fac *= ratio;
        ++*count;
        return out;
    };
    EvalResult out = run_series(coeff, Cplx(cfg.alpha, 0.0), Cplx(0.0, 0.0), f, c, x, trunc, quad);
    out.value *= scale;
    out.err_estimate *= std::abs(scale);
    return out;
}

EvalResult iterated_prabhakar(const ParamSet& p, Cplx nu, const Function& f, double x,
                              const Truncation& trunc, const QuadratureSpec& quad) {
    if (!p.kappa_is_one())
        throw ConditionError("iterated_prabhakar: requires kappa = 1");
    if (!(p.alpha.real() > 0.0) || !(p.beta.real() > 0.0))
        throw ConditionError("iterated_prabhakar: need Re(alpha)>0, Re(beta)>0");
    (void)IterationOrder::make(nu, p.beta);
    return run_series(gp_coeff_fn(nu * p.rho, 1.0, p.omega), p.alpha, nu * p.beta, f, p.c, x,
                      trunc, quad);
}

Specialization specialize_model(ModelTag tag, const ModelInputs& in) {
    Specialization s;
    switch (tag) {
    case ModelTag::prabhakar:
        s.params = in.params;
        s.params.kappa = Cplx(1.0, 0.0);
        s.params.validate(false);
        s.prefactor = Cplx(1.0, 0.0);
        s.post_op = PostOp::none;
        return s;
    case ModelTag::abr:
    case ModelTag::abc: {
        const double a = in.ab.alpha;
        if (!(a > 0.0) || !(a < 1.0))
            throw RangeError("specialize_model: AB model needs alpha in (0,1)");
        const double b = in.ab.b();
        if (!(b > 0.0))
            throw RangeError("specialize_model: multiplier must be positive");
        s.params = ParamSet{Cplx(a, 0.0), Cplx(1.0, 0.0), Cplx(-a / (1.0 - a), 0.0),
                            Cplx(1.0, 0.0), Cplx(1.0, 0.0), in.c};
        s.prefactor = Cplx(b / (1.0 - a), 0.0);
        s.post_op = tag == ModelTag::abr ? PostOp::d_dx : PostOp::on_derivative;
        return s;
    }
    case ModelTag::iab: {
        const double a = in.ab.alpha;
        if (!(a > 0.0) || !(a < 1.0))
            throw RangeError("specialize_model: iterated AB reduction needs alpha in (0,1)");
        const double b = in.ab.b();
        if (!(b > 0.0))
            throw RangeError("specialize_model: multiplier must be positive");
        // E_{alpha,0}^{-alpha/(1-alpha), -rho, 1} reproduces the binomial
        // series of the iterated AB integral; the beta = 0 order shift makes
        // the n = 0 term the identity.
        s.params = ParamSet{Cplx(a, 0.0), Cplx(0.0, 0.0), Cplx(-a / (1.0 - a), 0.0),
                            Cplx(-in.iter_rho, 0.0), Cplx(1.0, 0.0), in.c};
        s.prefactor = Cplx(std::pow((1.0 - a) / b, in.iter_rho), 0.0);
        s.post_op = PostOp::none;
        return s;
    }
    }
    throw RangeError("specialize_model: unknown model tag");
}

EvalResult apply_specialization(const Specialization& s, const Function& f, double x,
                                const Truncation& trunc, const QuadratureSpec& quad) {
    const ParamSet& p = s.params;
    p.validate(false);
    EvalResult out;
    switch (s.post_op) {
    case PostOp::none:
        out = run_series(gp_coeff_fn(p.rho, p.kappa, p.omega), p.alpha, p.beta, f, p.c, x, trunc,
                         quad);
        break;
    case PostOp::d_dx:
        // d/dx absorbed into the order shift, exact on power functions
        out = run_series(gp_coeff_fn(p.rho, p.kappa, p.omega), p.alpha, p.beta - 1.0, f, p.c, x,
                         trunc, quad);
        break;
    case PostOp::on_derivative:
        out = run_series(gp_coeff_fn(p.rho, p.kappa, p.omega), p.alpha, p.beta,
                         derivative_function(f, p.c), p.c, x, trunc, quad);
        break;
    }
    out.value *= s.prefactor;
    out.err_estimate *= std::abs(s.prefactor);
    return out;
}

} // namespace prabhakar
