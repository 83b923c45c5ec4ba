#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "prabhakar/special.hpp"

namespace prabhakar {

/// One term coeff * (x - c)^exponent of a shifted power sum.
struct PowerTerm {
    Cplx coeff;
    Cplx exponent;
};

/// Finite sum of shifted powers about a common center. Every exponent must
/// satisfy Re(mu) > -1 so the function is integrable at the base point.
class PowerSum {
public:
    PowerSum(double center, std::vector<PowerTerm> terms);

    double center() const noexcept { return center_; }
    const std::vector<PowerTerm>& terms() const noexcept { return terms_; }

    /// Pointwise value at real x >= center (0^mu handled at x == center).
    Cplx operator()(double x) const;

    /// True when all exponents are non-negative integers (within 1e-12).
    bool is_polynomial() const noexcept;
    /// Largest integer exponent; requires is_polynomial(). -1 for the zero sum.
    int degree() const;

    static PowerSum constant(double center, Cplx value);
    static PowerSum monomial(double center, Cplx coeff, Cplx exponent);

private:
    double center_;
    std::vector<PowerTerm> terms_;
};

/// e^{a x}, realised as its shifted Taylor power sum about the operator's
/// base point, truncated at taylor_degree.
struct Exponential {
    Cplx a;
    int taylor_degree = 30;
};

/// Black-box evaluator with a declared smoothness order (how many derivatives
/// finite differences may take).
struct Callable {
    std::function<Cplx(double)> evaluator;
    int smoothness_order = 1000;
};

/// Tagged union of the function representations operators act on.
class Function {
public:
    Function(PowerSum ps) : repr_(std::move(ps)) {}
    Function(Exponential e) : repr_(e) {}
    Function(Callable c) : repr_(std::move(c)) {}

    bool is_power_sum() const noexcept { return std::holds_alternative<PowerSum>(repr_); }
    bool is_exponential() const noexcept { return std::holds_alternative<Exponential>(repr_); }
    bool is_callable() const noexcept { return std::holds_alternative<Callable>(repr_); }

    const PowerSum& power_sum() const { return std::get<PowerSum>(repr_); }
    const Exponential& exponential() const { return std::get<Exponential>(repr_); }
    const Callable& callable() const { return std::get<Callable>(repr_); }

    /// True when an exact power-sum form about `center` is available.
    bool has_power_sum(double center) const;

    /// Exact/Taylor power-sum form about `center`. Throws DomainError for
    /// Callable, or for a PowerSum with a different center.
    PowerSum to_power_sum(double center) const;

    /// Pointwise evaluation (exact exponential, not its Taylor sum).
    Cplx operator()(double x) const;

    /// Highest derivative order the representation supports exactly
    /// (INT_MAX for power sums / exponentials).
    int smoothness() const noexcept;

private:
    std::variant<PowerSum, Exponential, Callable> repr_;
};

/// Falling factorial mu (mu-1) ... (mu-m+1).
Cplx falling_factorial(Cplx mu, int m);

/// Symbolic m-th derivative of a power sum. Throws DomainError when a
/// resulting exponent violates Re(mu) > -1 (non-integrable derivative).
PowerSum power_sum_derivative(const PowerSum& f, int m);

/// d^m/dx^m f at real x. Exact for PowerSum/Exponential; Richardson finite
/// differences for Callable up to order 6 (SmoothnessError beyond, or past
/// the declared smoothness_order).
Cplx derivative_value(const Function& f, int m, double x);

/// d^r/dy^r f at a complex point y (principal powers for PowerSum bases).
/// Callable representations are evaluated only for real y (|Im| <= 1e-12).
Cplx derivative_at_point(const Function& f, int r, Cplx y);

/// Product of two power sums about the same center.
PowerSum multiply(const PowerSum& a, const PowerSum& b);

/// a + scale * b, same center.
PowerSum add_scaled(const PowerSum& a, const PowerSum& b, Cplx scale = Cplx(1.0, 0.0));

} // namespace prabhakar
