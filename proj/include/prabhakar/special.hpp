#pragma once

#include <complex>

#include "prabhakar/errors.hpp"

namespace prabhakar {

using Cplx = std::complex<double>;

/// Series truncation policy: stop once `consecutive_small` successive terms
/// fall below rel_tol relative to the running partial sum, or at max_terms.
struct Truncation {
    double rel_tol = 1e-14;
    int consecutive_small = 3;
    int max_terms = 512;

    void validate() const {
        if (!(rel_tol > 0.0))
            throw ConditionError("Truncation: rel_tol must be > 0");
        if (consecutive_small < 1)
            throw ConditionError("Truncation: consecutive_small must be >= 1");
        if (max_terms < consecutive_small)
            throw ConditionError("Truncation: max_terms must be >= consecutive_small");
    }
};

/// Result of a Mittag-Leffler evaluation. err_estimate is the magnitude of
/// the last included term.
struct MLValue {
    Cplx value{0.0, 0.0};
    int terms_used = 0;
    double err_estimate = 0.0;
};

/// True when z lies within `tol` of a non-positive integer (a gamma pole).
bool near_nonpositive_integer(Cplx z, double tol = 1e-12) noexcept;

/// Gamma(z) for complex z. Lanczos approximation (~15 digits), reflection
/// formula for Re(z) < 0.5. Throws PoleError at non-positive integers.
Cplx gamma(Cplx z);

/// A logarithm of Gamma(z), on an unspecified branch. The guarantee is
/// exp(log_gamma(a) - log_gamma(b)) == Gamma(a)/Gamma(b), which is all the
/// coefficient recursions need.
Cplx log_gamma(Cplx z);

/// 1/Gamma(z); exactly 0 at the poles of Gamma. Never throws.
Cplx rgamma(Cplx z) noexcept;

/// Beta function Gamma(x)Gamma(y)/Gamma(x+y).
Cplx beta(Cplx x, Cplx y);

/// Generalised Pochhammer symbol (rho)_{kappa n} = Gamma(rho + kappa n)/Gamma(rho).
///
/// kappa == 1 always uses the finite product rho(rho+1)...(rho+n-1), so
/// terminating series at non-positive integer rho come out exact.
/// For kappa != 1 with rho at a gamma pole, the rgamma limit applies:
/// 1 for n == 0 and 0 for n >= 1.
Cplx gen_pochhammer(Cplx rho, Cplx kappa, int n);

/// Generalised binomial coefficient a(a-1)...(a-m+1)/m!, computed as a
/// falling-factorial product. Pole-free for every complex a.
Cplx gen_binomial(Cplx a, int m);

/// Four-parameter Mittag-Leffler function
///   E^{rho,kappa}_{alpha,beta}(z) = sum_n (rho)_{kappa n} z^n / (Gamma(alpha n + beta) n!).
/// Requires Re(alpha) > 0, Re(beta) > 0, Re(kappa) > 0, Re(kappa - alpha) < 1.
MLValue mittag_leffler(Cplx alpha, Cplx beta, Cplx rho, Cplx kappa, Cplx z,
                       const Truncation& trunc = {});

namespace detail {

/// Sequential coefficient generator a_n = (rho)_{kappa n} * factor^n / n!.
/// Shared by the Mittag-Leffler series and every operator series. Returns
/// exact 0 forever once a terminating series has ended.
class GpCoeffs {
public:
    GpCoeffs(Cplx rho, Cplx kappa, Cplx factor);

    /// Coefficient for the current index, then advance.
    Cplx next();

private:
    Cplx rho_, kappa_, factor_;
    Cplx current_{1.0, 0.0};
    Cplx factor_pow_{1.0, 0.0}; // factor^n, general-kappa path
    int n_ = 0;
    bool kappa_is_one_ = false;
    bool rho_at_pole_ = false;
    bool dead_ = false; // terminated: all further coefficients are 0
};

} // namespace detail

} // namespace prabhakar
