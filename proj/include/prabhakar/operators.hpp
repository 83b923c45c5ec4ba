#pragma once

#include "prabhakar/rl.hpp"

namespace prabhakar {

/// Parameters of a generalised Prabhakar operator with base point c:
/// kernel (x-t)^{beta-1} E^{rho,kappa}_{alpha,beta}[omega (x-t)^alpha].
struct ParamSet {
    Cplx alpha;
    Cplx beta;
    Cplx omega;
    Cplx rho;
    Cplx kappa{1.0, 0.0};
    double c = 0.0;

    /// Convergence conditions on (alpha, kappa); Re(beta) > 0 is enforced
    /// only for integral-type operations.
    void validate(bool integral_type) const;
    bool kappa_is_one() const noexcept;
};

/// Atangana-Baleanu configuration: order in (0,1) plus the positive
/// multiplier B with B(0) = B(1) = 1 (default: constant 1).
struct ABConfig {
    double alpha = 0.5;
    std::function<double(double)> b_multiplier; // empty => B == 1

    double b() const { return b_multiplier ? b_multiplier(alpha) : 1.0; }
    void validate() const;
};

/// Iteration exponent nu with the derived derivative order m from the
/// definition of the nu-th operator power.
struct IterationOrder {
    Cplx nu;
    int m = 0;

    static IterationOrder make(Cplx nu, Cplx beta);
};

/// Generalised Prabhakar integral as the series
///   sum_n Gamma(rho + kappa n) omega^n / (Gamma(rho) n!) I^{alpha n + beta} f.
EvalResult prabhakar_series(const ParamSet& p, const Function& f, double x,
                            const Truncation& trunc = {}, const QuadratureSpec& quad = {});

/// Generalised Prabhakar integral by direct kernel quadrature, with kernel
/// values from mittag_leffler. The independent cross-check for the series.
EvalResult prabhakar_quadrature(const ParamSet& p, const Function& f, double x,
                                const QuadratureSpec& quad = {}, const Truncation& trunc = {});

/// Prabhakar fractional derivative (kappa = 1) as the signed-order series
///   sum_n Gamma(-rho + n) omega^n / (Gamma(-rho) n!) I^{alpha n - beta} f.
EvalResult prabhakar_derivative(const ParamSet& p, const Function& f, double x,
                                const Truncation& trunc = {}, const QuadratureSpec& quad = {});

/// Left inverse in the form D^{beta+gamma} E^{omega,-rho}_{alpha,gamma} f,
/// computed as an actual composition (expand, then differintegrate). The
/// result is independent of gamma for Re(gamma) > 0.
EvalResult prabhakar_left_inverse_form(const ParamSet& p, Cplx gamma_order, const Function& f,
                                       double x, const Truncation& trunc = {},
                                       const QuadratureSpec& quad = {});

/// AB derivative of Riemann-Liouville type,
///   B(a)/(1-a) d/dx sum_n (-a/(1-a))^n I^{a n + 1} f,
/// with the outer derivative absorbed into the order shift.
EvalResult ab_derivative_r(const ABConfig& cfg, const Function& f, double c, double x,
                           const Truncation& trunc = {}, const QuadratureSpec& quad = {});

/// AB derivative of Caputo type: the same series applied to f'.
EvalResult ab_derivative_c(const ABConfig& cfg, const Function& f, double c, double x,
                           const Truncation& trunc = {}, const QuadratureSpec& quad = {});

/// AB integral (1-a)/B(a) f(x) + a/B(a) I^a f(x).
EvalResult ab_integral(const ABConfig& cfg, const Function& f, double c, double x,
                       const QuadratureSpec& quad = {});

/// rho-th iterate of the AB integral:
///   sum_n binom(rho,n) (1-a)^{rho-n} a^n / B(a)^rho I^{a n} f,  0 <= a <= 1.
EvalResult iterated_ab(const ABConfig& cfg, double rho, const Function& f, double c, double x,
                       const Truncation& trunc = {}, const QuadratureSpec& quad = {});

/// nu-th iterate of the Prabhakar operator (kappa = 1), unified series
///   sum_n Gamma(nu rho + n) omega^n / (Gamma(nu rho) n!) I^{alpha n + nu beta} f
/// valid for both signs of Re(nu beta).
EvalResult iterated_prabhakar(const ParamSet& p, Cplx nu, const Function& f, double x,
                              const Truncation& trunc = {}, const QuadratureSpec& quad = {});

enum class ModelTag { prabhakar, abr, abc, iab };
enum class PostOp { none, d_dx, on_derivative };

/// A model expressed through the generalised Prabhakar operator: parameter
/// set plus a scalar prefactor and a wrapper action.
struct Specialization {
    ParamSet params;
    Cplx prefactor{1.0, 0.0};
    PostOp post_op = PostOp::none;
};

struct ModelInputs {
    ParamSet params;      // used by ModelTag::prabhakar
    ABConfig ab;          // used by abr / abc / iab
    double iter_rho = 1.0; // used by iab
    double c = 0.0;       // base point for the AB family
};

/// Reduction of the named model to generalised Prabhakar form.
Specialization specialize_model(ModelTag tag, const ModelInputs& in);

/// Evaluate a specialization: prefactor * post_op(series) at x.
EvalResult apply_specialization(const Specialization& s, const Function& f, double x,
                                const Truncation& trunc = {}, const QuadratureSpec& quad = {});

/// Truncated symbolic expansion of the Prabhakar integral series applied to
/// a power sum, with the truncation policy applied to term magnitudes at
/// x_ref. The returned power sum is what operator compositions consume.
PowerSum prabhakar_expand(const ParamSet& p, const PowerSum& f, double x_ref,
                          const Truncation& trunc = {});

namespace detail {

/// Expansion of sum_n coeff_n I^{alpha n + sigma} f for Re(sigma) > 0.
PowerSum expand_series(Cplx alpha, Cplx sigma, GpCoeffs coeffs, const PowerSum& f,
                       double x_ref, const Truncation& trunc);

} // namespace detail

} // namespace prabhakar
