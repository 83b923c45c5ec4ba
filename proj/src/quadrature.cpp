#include "prabhakar/quadrature.hpp"

#include <cmath>

namespace prabhakar::detail {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTailLog = 46.0; // -log(1e-20): target tail contribution
} // namespace

std::vector<QuadNode> tanh_sinh_nodes(int n, double lam_left, double lam_right) {
    // Pick the half-width Y so the weakest endpoint decay, weight times
    // dist^{lam}, still reaches ~1e-20 at the last node.
    const double p = std::max(0.05, 1.0 + std::min({lam_left, lam_right, 0.0}));
    const double Y = std::asinh(2.0 * kTailLog / (kPi * p));
    const int half = n / 2;
    const double h = Y / half;

    std::vector<QuadNode> out;
    out.reserve(2 * half + 1);
    for (int k = -half; k <= half; ++k) {
        const double y = k * h;
        const double a = 0.5 * kPi * std::sinh(y);
        QuadNode node;
        node.s = 1.0 / (1.0 + std::exp(-2.0 * a));
        node.one_minus_s = 1.0 / (1.0 + std::exp(2.0 * a));
        node.log_weight =
            std::log(h * 0.25 * kPi) + std::log(std::cosh(y)) - 2.0 * std::log(std::cosh(a));
        out.push_back(node);
    }
    return out;
}

Cplx integrate_weighted(const std::vector<QuadNode>& nodes, Cplx w_exponent,
                        const std::function<Cplx(double, double)>& g) {
    Cplx acc(0.0, 0.0);
    for (const auto& nd : nodes) {
        const double log_mag = nd.log_weight + w_exponent.real() * std::log(nd.one_minus_s);
        if (log_mag < -745.0)
            continue; // weight underflows; singular factor cannot rescue it
        Cplx w(std::exp(log_mag), 0.0);
        if (w_exponent.imag() != 0.0)
            w *= std::exp(Cplx(0.0, w_exponent.imag() * std::log(nd.one_minus_s)));
        acc += w * g(nd.s, nd.one_minus_s);
    }
    return acc;
}

} // namespace prabhakar::detail
