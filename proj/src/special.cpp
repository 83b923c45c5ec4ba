#include "prabhakar/special.hpp"

#include <cmath>
#include <limits>

namespace prabhakar {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kPoleTol = 1e-12;

// Lanczos g=7, 9 coefficients; relative accuracy ~1e-15 in double.
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

Cplx lanczos_sum(Cplx zm1) {
    Cplx ag(kLanczos[0], 0.0);
    for (int k = 1; k < 9; ++k)
        ag += kLanczos[k] / (zm1 + static_cast<double>(k));
    return ag;
}

Cplx gamma_positive(Cplx z) {
    // valid for Re(z) >= 0.5
    const Cplx zm1 = z - 1.0;
    const Cplx t = zm1 + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * lanczos_sum(zm1);
}

Cplx log_gamma_positive(Cplx z) {
    const Cplx zm1 = z - 1.0;
    const Cplx t = zm1 + 7.5;
    return 0.5 * std::log(2.0 * kPi) + (zm1 + 0.5) * std::log(t) - t +
           std::log(lanczos_sum(zm1));
}

bool finite(Cplx v) {
    return std::isfinite(v.real()) && std::isfinite(v.imag());
}

} // namespace

bool near_nonpositive_integer(Cplx z, double tol) noexcept {
    if (std::abs(z.imag()) > tol)
        return false;
    const double r = std::round(z.real());
    return r <= 0.5 && std::abs(z.real() - r) <= tol && r <= 0.0;
}

Cplx gamma(Cplx z) {
    if (near_nonpositive_integer(z, kPoleTol))
        throw PoleError("gamma: argument at a non-positive integer pole");
    Cplx v;
    if (z.real() < 0.5)
        v = kPi / (std::sin(kPi * z) * gamma_positive(1.0 - z));
    else
        v = gamma_positive(z);
    if (!finite(v))
        throw RangeError("gamma: result overflowed double range");
    return v;
}

Cplx log_gamma(Cplx z) {
    if (near_nonpositive_integer(z, kPoleTol))
        throw PoleError("log_gamma: argument at a non-positive integer pole");
    if (z.real() < 0.5)
        return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma_positive(1.0 - z);
    return log_gamma_positive(z);
}

Cplx rgamma(Cplx z) noexcept {
    if (near_nonpositive_integer(z, kPoleTol))
        return Cplx(0.0, 0.0);
    if (z.real() < 0.5) {
        // 1/Gamma(z) = sin(pi z) Gamma(1-z) / pi -- no overflow until
        // Gamma(1-z) itself overflows, which the callers' ranges avoid.
        return std::sin(kPi * z) * gamma_positive(1.0 - z) / kPi;
    }
    return 1.0 / gamma_positive(z);
}

Cplx beta(Cplx x, Cplx y) {
    if (near_nonpositive_integer(x, kPoleTol) || near_nonpositive_integer(y, kPoleTol))
        throw PoleError("beta: argument at a gamma pole");
    if (near_nonpositive_integer(x + y, kPoleTol))
        throw PoleError("beta: x + y at a gamma pole");
    return std::exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y));
}

Cplx gen_pochhammer(Cplx rho, Cplx kappa, int n) {
    if (n < 0)
        throw RangeError("gen_pochhammer: n must be >= 0");
    if (n == 0)
        return Cplx(1.0, 0.0);

    const bool kappa_one = std::abs(kappa - 1.0) <= kPoleTol;
    if (kappa_one) {
        Cplx prod(1.0, 0.0);
        for (int j = 0; j < n; ++j)
            prod *= rho + static_cast<double>(j);
        if (!finite(prod))
            throw RangeError("gen_pochhammer: product overflowed double range");
        return prod;
    }

    if (near_nonpositive_integer(rho, kPoleTol))
        return Cplx(0.0, 0.0); // limit value via rgamma, n >= 1
    const Cplx arg = rho + kappa * static_cast<double>(n);
    if (near_nonpositive_integer(arg, kPoleTol))
        throw PoleError("gen_pochhammer: rho + kappa*n at a gamma pole");
    return std::exp(log_gamma(arg) - log_gamma(rho));
}

Cplx gen_binomial(Cplx a, int m) {
    if (m < 0)
        throw RangeError("gen_binomial: m must be >= 0");
    Cplx v(1.0, 0.0);
    for (int j = 0; j < m; ++j)
        v *= (a - static_cast<double>(j)) / static_cast<double>(j + 1);
    return v;
}

namespace detail {

GpCoeffs::GpCoeffs(Cplx rho, Cplx kappa, Cplx factor)
    : rho_(rho), kappa_(kappa), factor_(factor) {
    kappa_is_one_ = std::abs(kappa - 1.0) <= kPoleTol;
    rho_at_pole_ = near_nonpositive_integer(rho, kPoleTol);
    if (factor_ == Cplx(0.0, 0.0))
        dead_ = false; // n=0 term still 1; next() handles the rest
}

Cplx GpCoeffs::next() {
    if (dead_) {
        ++n_;
        return Cplx(0.0, 0.0);
    }
    const Cplx out = current_;

    if (kappa_is_one_) {
        // a_{n+1} = a_n * (rho + n) * factor / (n + 1); exact zero sticks,
        // which is what terminates series at non-positive integer rho.
        current_ *= (rho_ + static_cast<double>(n_)) * factor_ / static_cast<double>(n_ + 1);
        if (current_ == Cplx(0.0, 0.0))
            dead_ = true;
    } else if (rho_at_pole_) {
        // (rho)_{kappa n} -> 1 for n=0 and 0 for n>=1 (rgamma limit).
        current_ = Cplx(0.0, 0.0);
        dead_ = true;
    } else {
        const int n1 = n_ + 1;
        const Cplx arg = rho_ + kappa_ * static_cast<double>(n1);
        if (near_nonpositive_integer(arg, kPoleTol))
            throw PoleError("series coefficient: rho + kappa*n at a gamma pole");
        factor_pow_ *= factor_;
        current_ = std::exp(log_gamma(arg) - log_gamma(rho_) -
                            std::lgamma(static_cast<double>(n1) + 1.0)) *
                   factor_pow_;
        if (current_ == Cplx(0.0, 0.0))
            dead_ = true;
    }
    ++n_;
    return out;
}

} // namespace detail

MLValue mittag_leffler(Cplx alpha, Cplx beta_p, Cplx rho, Cplx kappa, Cplx z,
                       const Truncation& trunc) {
    trunc.validate();
    if (!(alpha.real() > 0.0) || !(beta_p.real() > 0.0) || !(kappa.real() > 0.0) ||
        !((kappa - alpha).real() < 1.0))
        throw ConditionError(
            "mittag_leffler: need Re(alpha)>0, Re(beta)>0, Re(kappa)>0, Re(kappa-alpha)<1");

    MLValue out;
    if (z == Cplx(0.0, 0.0)) {
        out.value = rgamma(beta_p);
        out.terms_used = 1;
        return out;
    }

    detail::GpCoeffs coeffs(rho, kappa, z);
    Cplx sum(0.0, 0.0);
    double last = 0.0;
    int small = 0;
    int n = 0;
    for (; n < trunc.max_terms; ++n) {
        const Cplx a = coeffs.next();
        if (a == Cplx(0.0, 0.0) && n > 0) {
            // terminating series (rho a non-positive integer, kappa = 1)
            out.value = sum;
            out.terms_used = n;
            out.err_estimate = 0.0;
            return out;
        }
        const Cplx term = a * rgamma(alpha * static_cast<double>(n) + beta_p);
        sum += term;
        last = std::abs(term);
        if (last <= trunc.rel_tol * std::max(std::abs(sum), 1e-300)) {
            if (++small >= trunc.consecutive_small) {
                ++n;
                break;
            }
        } else {
            small = 0;
        }
    }
    out.value = sum;
    out.terms_used = n;
    out.err_estimate = last;
    if (n >= trunc.max_terms && last > trunc.rel_tol * std::max(std::abs(sum), 1e-300))
        throw NonConvergence("mittag_leffler: term cap reached with non-small last term");
    if (!std::isfinite(sum.real()) || !std::isfinite(sum.imag()))
        throw NonConvergence("mittag_leffler: series produced a non-finite value");
    return out;
}

} // namespace prabhakar
