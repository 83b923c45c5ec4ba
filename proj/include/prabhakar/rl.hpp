#pragma once

#include <unordered_map>

#include "prabhakar/function.hpp"
#include "prabhakar/quadrature.hpp"

namespace prabhakar {

enum class Method { series, quadrature, exact };

/// Value of one operator evaluation with its accuracy bookkeeping.
struct EvalResult {
    Cplx value{0.0, 0.0};
    double err_estimate = 0.0;
    int terms_used = 0;
    Method method = Method::exact;
};

/// Per-x cache of (x-c)^p * rgamma(p+1) keyed by the power p. Series over n
/// and their compositions hit the same powers repeatedly; one evaluation each.
class PowerCache {
public:
    explicit PowerCache(double dx) : dx_(dx) {}

    double dx() const noexcept { return dx_; }

    /// (x-c)^power * rgamma(power + 1); 0 at gamma poles of power+1.
    Cplx factor(Cplx power);

private:
    struct KeyHash {
        size_t operator()(const std::pair<double, double>& k) const noexcept {
            const std::hash<double> h;
            return h(k.first) ^ (h(k.second) << 1);
        }
    };
    double dx_;
    std::unordered_map<std::pair<double, double>, Cplx, KeyHash> cache_;
};

/// Closed form of I^{mu} on a power sum: each coeff (x-c)^{nu} maps to
/// coeff Gamma(nu+1)/Gamma(nu+mu+1) (x-c)^{nu+mu}. Requires Re(mu) > 0.
PowerSum rl_integral_exact(const PowerSum& f, Cplx mu);

/// Pointwise I^{order} f(x) for a power sum, valid for both signs of
/// Re(order) (derivatives via the same gamma-ratio term shift; terms whose
/// shifted gamma sits at a pole vanish).
Cplx powersum_differint_value(const PowerSum& f, Cplx order, double x,
                              PowerCache* cache = nullptr);

/// Riemann-Liouville integral by weighted quadrature:
///   (1/Gamma(order)) int_c^x (x-t)^{order-1} f(t) dt,  Re(order) > 0,
/// with the change of variable t = c + (x-c)s. err_estimate comes from
/// node-doubling; QuadratureFailure above 100*rel_tol relative.
EvalResult rl_quadrature(const Callable& f, Cplx order, double c, double x,
                         const QuadratureSpec& quad = {}, double rel_tol = 1e-14);

/// Unified RL differintegral: integral for Re(order) > 0, derivative for
/// Re(order) <= 0 (as d^n/dx^n of I^{n+order} with n = floor(Re(-order))+1).
/// Power sums take the exact path; callables go through quadrature, with
/// Richardson-extrapolated central differences for the outer derivative.
EvalResult rl_differintegrate(const Function& f, Cplx order, double c, double x,
                              const Truncation& trunc = {}, const QuadratureSpec& quad = {});

} // namespace prabhakar
