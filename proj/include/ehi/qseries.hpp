#ifndef EHI_QSERIES_HPP
#define EHI_QSERIES_HPP

// Scalar building blocks: q-Pochhammer symbols, the multiplicative theta
// function, the elliptic gamma function, the antisymmetric theta pairing
// e(u,v;p) and their t-shifted factorials.

#include <cmath>
#include <cstdlib>

#include "core.hpp"

namespace ehi {

namespace detail {
// Smallest I with |nome|^I * max(|u|,1) < rel_eps.
inline int trunc_index(double anome, double au, const Truncation& tr) {
    double scale = std::max(au, 1.0);
    if (anome <= 0.0) return 1;
    double bound = scale;
    for (int I = 0; I <= tr.max_index; ++I) {
        if (bound < tr.rel_eps) return I;
        bound *= anome;
    }
    throw truncation_error("q-series truncation did not reach tolerance", bound);
}
} // namespace detail

// (u; p)_\infty = prod_{i>=0} (1 - u p^i), truncated per policy.
inline cplx poch_p(cplx u, cplx p, const Truncation& tr = {}) {
    double ap = std::abs(p);
    if (ap >= 1.0) throw std::invalid_argument("poch_p: |p| must be < 1");
    int I = detail::trunc_index(ap, std::abs(u), tr);
    cplx acc(1.0), pk(1.0);
    for (int i = 0; i < I; ++i) {
        acc *= (cplx(1.0) - u * pk);
        pk *= p;
    }
    return acc;
}

// (u; p, q)_\infty = prod_{i,j>=0} (1 - u p^i q^j), truncated per policy.
inline cplx poch_pq(cplx u, cplx p, cplx q, const Truncation& tr = {}) {
    double ap = std::abs(p), aq = std::abs(q);
    if (ap >= 1.0 || aq >= 1.0)
        throw std::invalid_argument("poch_pq: |p|, |q| must be < 1");
    int I = detail::trunc_index(std::max(ap, aq), std::abs(u), tr);
    // Truncate over i + j < I: every omitted factor is within the bound.
    cplx acc(1.0), pi(1.0);
    for (int i = 0; i < I; ++i) {
        cplx upi = u * pi, qj(1.0);
        for (int j = 0; i + j < I; ++j) {
            acc *= (cplx(1.0) - upi * qj);
            qj *= q;
        }
        pi *= p;
    }
    return acc;
}

// theta(u; p) = (u; p)_\infty (p/u; p)_\infty.
inline cplx theta(cplx u, cplx p, const Truncation& tr = {}) {
    if (u == cplx(0.0)) throw std::invalid_argument("theta: u must be nonzero");
    return poch_p(u, p, tr) * poch_p(p / u, p, tr);
}

// prod_{i<k} theta(t^i u; p); for k < 0, 1 / prod_{i=1}^{-k} theta(t^{-i} u; p).
inline cplx theta_fact(cplx u, cplx p, cplx t, int k, const Truncation& tr = {}) {
    cplx acc(1.0);
    if (k >= 0) {
        cplx ti(1.0);
        for (int i = 0; i < k; ++i) {
            acc *= theta(ti * u, p, tr);
            ti *= t;
        }
    } else {
        cplx ti(1.0);
        for (int i = 1; i <= -k; ++i) {
            ti /= t;
            acc /= theta(ti * u, p, tr);
        }
    }
    return acc;
}

// Elliptic gamma: Gamma(u; p, q) = (pq/u; p, q)_\infty / (u; p, q)_\infty.
// Throws when u is within pole_eps of the pole set {p^{-i} q^{-j}}.
inline cplx ell_gamma(cplx u, cplx p, cplx q, const Truncation& tr = {},
                      double pole_eps = kPoleEps) {
    if (u == cplx(0.0)) throw std::invalid_argument("ell_gamma: u must be nonzero");
    cplx den = poch_pq(u, p, q, tr);
    if (std::abs(den) < pole_eps)
        throw pole_error("ell_gamma: argument too close to a pole");
    return poch_pq(p * q / u, p, q, tr) / den;
}

// 1 / Gamma(u; p, q), finite (zero) at the poles of Gamma.
inline cplx ell_gamma_inv(cplx u, cplx p, cplx q, const Truncation& tr = {}) {
    return poch_pq(u, p, q, tr) / poch_pq(p * q / u, p, q, tr);
}

// e(u, v; p) = u^{-1} theta(uv; p) theta(u/v; p).
// Antisymmetric in (u,v) and invariant under v -> 1/v.
inline cplx e_pair(cplx u, cplx v, cplx p, const Truncation& tr = {}) {
    return theta(u * v, p, tr) * theta(u / v, p, tr) / u;
}

// prod_{i<k} e(t^i u, v; p), shift in the first argument.
inline cplx e_fact(cplx u, cplx v, cplx p, cplx t, int k, const Truncation& tr = {}) {
    if (k < 0) throw std::invalid_argument("e_fact: negative length");
    cplx acc(1.0), ti(1.0);
    for (int i = 0; i < k; ++i) {
        acc *= e_pair(ti * u, v, p, tr);
        ti *= t;
    }
    return acc;
}

} // namespace ehi

#endif
