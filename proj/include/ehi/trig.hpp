#ifndef EHI_TRIG_HPP
#define EHI_TRIG_HPP

// Trigonometric (p -> 0) degeneration: the q-Pochhammer weight, the
// polynomial interpolation basis built on the degenerate pairing
//   e(u,v) = u + 1/u - v - 1/v,
// the Gustafson evaluation formulas, and the determinant formulas for the
// q-hypergeometric pairing, including the symplectic-Schur basis variants.

#include "torusquad.hpp"

namespace ehi {

struct TrigPairing {
    cplx operator()(cplx u, cplx v) const {
        return u + cplx(1.0) / u - v - cplx(1.0) / v;
    }
};

inline cplx e_trig(cplx u, cplx v) { return TrigPairing{}(u, v); }

// Weight of the q-hypergeometric pairing obtained from the elliptic weight by
// a_{m-1} -> p a_{m-1}, p -> 0 (balancing a_0...a_{m-1} t^{2n-2} = q):
//   sPhi(z;a;q) = prod_i (z_i^{+-2};q) (q a_{m-1}^{-1} z_i^{+-1};q)
//                 / prod_{k<m-1} (a_k z_i^{+-1};q)
//                 prod_{i<j} (z_i^{+-1} z_j^{+-1};q) / (t z_i^{+-1} z_j^{+-1};q).
inline cplx sphi_weight(const std::vector<cplx>& z, const std::vector<cplx>& a, cplx q,
                        cplx t, const Truncation& tr = {}) {
    size_t m = a.size();
    cplx am = a[m - 1];
    cplx acc(1.0);
    for (cplx zi : z) {
        acc *= poch_p(zi * zi, q, tr) * poch_p(cplx(1.0) / (zi * zi), q, tr);
        acc *= poch_p(q * zi / am, q, tr) * poch_p(q / (am * zi), q, tr);
        for (size_t k = 0; k + 1 < m; ++k)
            acc /= poch_p(a[k] * zi, q, tr) * poch_p(a[k] / zi, q, tr);
    }
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = i + 1; j < z.size(); ++j)
            for (cplx w : {z[i] * z[j], z[i] / z[j], z[j] / z[i], cplx(1.0) / (z[i] * z[j])})
                acc *= poch_p(w, q, tr) / poch_p(t * w, q, tr);
    return acc;
}

// Askey-Wilson-type weight with 2r+2 free parameters and no balancing.
inline cplx sphi_tilde_weight(const std::vector<cplx>& z, const std::vector<cplx>& a, cplx q,
                              cplx t, const Truncation& tr = {}) {
    cplx acc(1.0);
    for (cplx zi : z) {
        acc *= poch_p(zi * zi, q, tr) * poch_p(cplx(1.0) / (zi * zi), q, tr);
        for (cplx ak : a) acc /= poch_p(ak * zi, q, tr) * poch_p(ak / zi, q, tr);
    }
    for (size_t i = 0; i < z.size(); ++i)
        for (size_t j = i + 1; j < z.size(); ++j)
            for (cplx w : {z[i] * z[j], z[i] / z[j], z[j] / z[i], cplx(1.0) / (z[i] * z[j])})
                acc *= poch_p(w, q, tr) / poch_p(t * w, q, tr);
    return acc;
}

inline double factorial_d(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Gustafson's multivariate Nassrallah-Rahman evaluation (m = 6, balancing
// a_0...a_5 t^{2n-2} = q).
inline cplx gustafson_nr_closed(const std::vector<cplx>& a, int n, cplx q, cplx t,
                                const Truncation& tr = {}) {
    cplx am = a[5];
    cplx acc = cpow_int(cplx(2.0), n) * factorial_d(n) /
               cpow_int(poch_p(q, q, tr), n);
    for (int i = 0; i < n; ++i) {
        cplx ti = cpow_int(t, i);
        cplx num = poch_p(t, q, tr);
        for (int k = 0; k < 5; ++k) num *= poch_p(q / (ti * a[static_cast<size_t>(k)] * am), q, tr);
        cplx den = poch_p(t * ti, q, tr);
        for (int k = 0; k < 5; ++k)
            for (int l = k + 1; l < 5; ++l)
                den *= poch_p(ti * a[static_cast<size_t>(k)] * a[static_cast<size_t>(l)], q, tr);
        acc *= num / den;
    }
    return acc;
}

// Gustafson's multivariate Askey-Wilson evaluation (4 free parameters).
inline cplx gustafson_aw_closed(const std::vector<cplx>& a, int n, cplx q, cplx t,
                                const Truncation& tr = {}) {
    cplx acc = cpow_int(cplx(2.0), n) * factorial_d(n) /
               cpow_int(poch_p(q, q, tr), n);
    cplx prod_a = a[0] * a[1] * a[2] * a[3];
    for (int i = 0; i < n; ++i) {
        cplx ti = cpow_int(t, i);
        cplx num = poch_p(t, q, tr) * poch_p(cpow_int(t, 2 * n - i - 2) * prod_a, q, tr);
        cplx den = poch_p(t * ti, q, tr);
        for (int k = 0; k < 4; ++k)
            for (int l = k + 1; l < 4; ++l)
                den *= poch_p(ti * a[static_cast<size_t>(k)] * a[static_cast<size_t>(l)], q, tr);
        acc *= num / den;
    }
    return acc;
}

// det of the pairing matrix sK(a;x,y)_{mu,nu} = <E_mu(x;z) E_nu(y;z;q)>_sPhi
// over Z_{r,n} (m = 2r+4, balancing a_0...a_{m-1} t^{2n-2} = q).
inline cplx trig_detK_closed(const std::vector<cplx>& a, const std::vector<cplx>& x,
                             const std::vector<cplx>& y, int n, cplx q, cplx t,
                             const Truncation& tr = {}) {
    int m = static_cast<int>(a.size());
    int r = (m - 4) / 2;
    cplx am = a[static_cast<size_t>(m - 1)];
    cplx acc = cpow_int(cpow_int(cplx(2.0), n) * factorial_d(n) /
                            cpow_int(poch_p(q, q, tr), n),
                        binom(n + r - 1, r - 1));
    for (int i = 0; i < n; ++i) {
        long long e = face_mult(n, i, r);
        if (e == 0) continue;
        cplx ti = cpow_int(t, i);
        cplx num = cpow_int(poch_p(t, q, tr), r);
        for (int k = 0; k < m - 1; ++k)
            num *= poch_p(q / (ti * a[static_cast<size_t>(k)] * am), q, tr);
        cplx den = cpow_int(poch_p(t * ti, q, tr), r);
        for (int k = 0; k < m - 1; ++k)
            for (int l = k + 1; l < m - 1; ++l)
                den *= poch_p(ti * a[static_cast<size_t>(k)] * a[static_cast<size_t>(l)], q, tr);
        acc *= cpow_int(num / den, e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) {
            long long e = edge_mult(n, i, j, r);
            if (e == 0) continue;
            for (int k = 0; k < r; ++k)
                for (int l = k + 1; l < r; ++l) {
                    cplx f = e_trig(cpow_int(t, i) * x[static_cast<size_t>(k)],
                                    cpow_int(t, j) * x[static_cast<size_t>(l)]) *
                             e_pair(cpow_int(t, i) * y[static_cast<size_t>(k)],
                                    cpow_int(t, j) * y[static_cast<size_t>(l)], q, tr);
                    acc /= cpow_int(f, e);
                }
        }
    return acc;
}

// Same determinant for the unbalanced Askey-Wilson-type weight with 2r+2
// parameters.
inline cplx trig_detKtilde_closed(const std::vector<cplx>& a, const std::vector<cplx>& x,
                                  const std::vector<cplx>& y, int n, cplx q, cplx t,
                                  const Truncation& tr = {}) {
    int m2 = static_cast<int>(a.size()); // 2r+2
    int r = (m2 - 2) / 2;
    cplx prod_a(1.0);
    for (cplx ak : a) prod_a *= ak;
    cplx acc = cpow_int(cpow_int(cplx(2.0), n) * factorial_d(n) /
                            cpow_int(poch_p(q, q, tr), n),
                        binom(n + r - 1, r - 1));
    for (int i = 0; i < n; ++i) {
        long long e = face_mult(n, i, r);
        if (e == 0) continue;
        cplx ti = cpow_int(t, i);
        cplx num = cpow_int(poch_p(t, q, tr), r) *
                   poch_p(cpow_int(t, 2 * n - i - 2) * prod_a, q, tr);
        cplx den = cpow_int(poch_p(t * ti, q, tr), r);
        for (int k = 0; k < m2; ++k)
            for (int l = k + 1; l < m2; ++l)
                den *= poch_p(ti * a[static_cast<size_t>(k)] * a[static_cast<size_t>(l)], q, tr);
        acc *= cpow_int(num / den, e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) {
            long long e = edge_mult(n, i, j, r);
            if (e == 0) continue;
            for (int k = 0; k < r; ++k)
                for (int l = k + 1; l < r; ++l) {
                    cplx f = e_trig(cpow_int(t, i) * x[static_cast<size_t>(k)],
                                    cpow_int(t, j) * x[static_cast<size_t>(l)]) *
                             e_pair(cpow_int(t, i) * y[static_cast<size_t>(k)],
                                    cpow_int(t, j) * y[static_cast<size_t>(l)], q, tr);
                    acc /= cpow_int(f, e);
                }
        }
    return acc;
}

// ---------------------------------------------------------------------------
// Symplectic Schur functions and the change of basis to the interpolation
// polynomials.
// ---------------------------------------------------------------------------

// chi_lambda(z) as a ratio of C_n bialternants.
inline cplx symplectic_schur(const Composition& lam, const std::vector<cplx>& z) {
    size_t n = z.size();
    auto alt = [&](const std::vector<long long>& expo) {
        Matrix A(n, std::vector<cplx>(n));
        for (size_t j = 0; j < n; ++j)
            for (size_t k = 0; k < n; ++k)
                A[j][k] = cpow_int(z[j], expo[k]) - cpow_int(z[j], -expo[k]);
        return det_gauss(std::move(A));
    };
    std::vector<long long> num(n), den(n);
    for (size_t k = 0; k < n; ++k) {
        num[k] = lam[k] + static_cast<long long>(n - k);
        den[k] = static_cast<long long>(n - k);
    }
    return alt(num) / alt(den);
}

// Partitions with at most n parts, each part <= r-1, listed in the order
// induced from IndexedBasisOrder by the bijection sending mu to the
// partition with mu_k parts equal to k-1.  This alignment fixes the sign of
// the transition determinant below.
inline std::vector<Composition> partitions_in_box(int r, int n) {
    IndexedBasisOrder basis(r, n);
    std::vector<Composition> out;
    out.reserve(basis.size());
    for (size_t i = 0; i < basis.size(); ++i) {
        Composition lam;
        for (int k = r - 1; k >= 0; --k)
            for (long long c = 0; c < basis[i][static_cast<size_t>(k)]; ++c)
                lam.push_back(k);
        lam.resize(static_cast<size_t>(n), 0);
        out.push_back(std::move(lam));
    }
    return out;
}

// Transition det between symplectic Schur and interpolation bases, rows and
// columns aligned via partitions_in_box:
// det(chi_lambda((x)_{t,mu})) = prod e(t^j x_l, t^i x_k)^{C(n-i-j+r-3, r-2)}.
// The argument order in e matters only for the overall sign.
inline cplx schur_transition_det_closed(const std::vector<cplx>& x, int n, cplx t) {
    int r = static_cast<int>(x.size());
    cplx acc(1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) {
            long long e = edge_mult(n, i, j, r);
            if (e == 0) continue;
            for (int k = 0; k < r; ++k)
                for (int l = k + 1; l < r; ++l)
                    acc *= cpow_int(e_trig(cpow_int(t, j) * x[static_cast<size_t>(l)],
                                           cpow_int(t, i) * x[static_cast<size_t>(k)]),
                                    e);
        }
    return acc;
}

inline Matrix schur_transition_matrix(const std::vector<cplx>& x, int n, cplx t) {
    int r = static_cast<int>(x.size());
    IndexedBasisOrder basis(r, n);
    std::vector<Composition> lams = partitions_in_box(r, n);
    size_t d = basis.size();
    if (lams.size() != d) throw std::logic_error("schur_transition_matrix: index mismatch");
    Matrix C(d, std::vector<cplx>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            C[i][j] = symplectic_schur(lams[i], reference_point(x, basis[j], t));
    return C;
}

// det X(a;y) for the symplectic-Schur x-basis, balanced weight.
inline cplx trig_detX_closed(const std::vector<cplx>& a, const std::vector<cplx>& y, int n,
                             cplx q, cplx t, const Truncation& tr = {}) {
    int m = static_cast<int>(a.size());
    int r = (m - 4) / 2;
    cplx am = a[static_cast<size_t>(m - 1)];
    cplx acc = cpow_int(cpow_int(cplx(2.0), n) * factorial_d(n) /
                            cpow_int(poch_p(q, q, tr), n),
                        binom(n + r - 1, r - 1));
    for (int i = 0; i < n; ++i) {
        long long e = face_mult(n, i, r);
        if (e == 0) continue;
        cplx ti = cpow_int(t, i);
        cplx num = cpow_int(poch_p(t, q, tr), r);
        for (int k = 0; k < m - 1; ++k)
            num *= poch_p(q / (ti * a[static_cast<size_t>(k)] * am), q, tr);
        cplx den = cpow_int(poch_p(t * ti, q, tr), r);
        for (int k = 0; k < m - 1; ++k)
            for (int l = k + 1; l < m - 1; ++l)
                den *= poch_p(ti * a[static_cast<size_t>(k)] * a[static_cast<size_t>(l)], q, tr);
        acc *= cpow_int(num / den, e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) {
            long long e = edge_mult(n, i, j, r);
            if (e == 0) continue;
            for (int k = 0; k < r; ++k)
                for (int l = k + 1; l < r; ++l)
                    acc /= cpow_int(e_pair(cpow_int(t, j) * y[static_cast<size_t>(l)],
                                           cpow_int(t, i) * y[static_cast<size_t>(k)], q, tr),
                                    e);
        }
    return acc;
}

} // namespace ehi

#endif
