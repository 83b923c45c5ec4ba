#pragma once

#include <functional>
#include <vector>

#include "prabhakar/special.hpp"

namespace prabhakar {

/// Weighted quadrature scheme for kernels with an algebraic endpoint
/// singularity (x - t)^{beta - 1} at t = x. The tanh-sinh map clusters nodes
/// at both endpoints; the singular factor is folded into the node weights,
/// parameterised by Re(beta) - 1.
struct QuadratureSpec {
    enum class Scheme { tanh_sinh };

    int nodes = 64;
    Scheme scheme = Scheme::tanh_sinh;

    void validate() const {
        if (nodes < 2)
            throw ConditionError("QuadratureSpec: nodes must be >= 2");
    }
};

namespace detail {

/// Abscissa on (0,1) with its distance to 1 carried separately (the naive
/// 1 - s loses all digits near the right endpoint).
struct QuadNode {
    double s;
    double one_minus_s;
    double log_weight; // log of the plain tanh-sinh weight
};

/// Node set for integrating over (0,1) with endpoint behaviours
/// s^{lam_left} and (1-s)^{lam_right} (real parts; both > -1).
std::vector<QuadNode> tanh_sinh_nodes(int n, double lam_left, double lam_right);

/// sum_k w_k (1-s_k)^{w_exponent} g(s_k, 1-s_k); complex w_exponent covers
/// the (x-t)^{i Im beta} factor together with the real singular weight.
Cplx integrate_weighted(const std::vector<QuadNode>& nodes, Cplx w_exponent,
                        const std::function<Cplx(double, double)>& g);

} // namespace detail

} // namespace prabhakar
