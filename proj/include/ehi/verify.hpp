#ifndef EHI_VERIFY_HPP
#define EHI_VERIFY_HPP

// Closed-form evaluation and determinant formulas for the elliptic pairing:
// the BC_n Selberg-type evaluation, the determinant of the pairing matrix in
// interpolation bases, the particular solution of the rank-one difference
// equation for that determinant, the normalization constant c_{r,n}, and the
// connection matrix M of the difference system in the (x,y) bases.

#include "torusquad.hpp"
#include "trig.hpp"

namespace ehi {

// Selberg-type evaluation: <1>_Phi for m = 6 under a_0...a_5 t^{2n-2} = pq.
inline cplx selberg_closed(const std::vector<cplx>& a, int n, cplx p, cplx q, cplx t,
                           const Truncation& tr = {}) {
    cplx acc = cpow_int(cplx(2.0), n) * factorial_d(n) /
               cpow_int(poch_p(p, p, tr) * poch_p(q, q, tr), n);
    for (int i = 0; i < n; ++i) {
        acc *= ell_gamma(cpow_int(t, i + 1), p, q, tr) / ell_gamma(t, p, q, tr);
        for (size_t k = 0; k < 6; ++k)
            for (size_t l = k + 1; l < 6; ++l)
                acc *= ell_gamma(cpow_int(t, i) * a[k] * a[l], p, q, tr);
    }
    return acc;
}

// Coefficient of the scalar q-difference equation satisfied by the Selberg
// integral under a_k -> q a_k, a_5 -> a_5/q:
//   I(..q a_k.., a_5/q) / I(a) = prod_{i<n} prod_{l<5, l!=k}
//       theta(a_l a_k t^i; p) / theta(q^{-1} a_l a_5 t^i; p).
inline cplx selberg_shift_coeff(const std::vector<cplx>& a, int n, int k, cplx p, cplx q,
                                cplx t, const Truncation& tr = {}) {
    cplx acc(1.0);
    for (int i = 0; i < n; ++i) {
        cplx ti = cpow_int(t, i);
        for (size_t l = 0; l < 5; ++l) {
            if (static_cast<int>(l) == k) continue;
            acc *= theta(a[l] * a[static_cast<size_t>(k)] * ti, p, tr) /
                   theta(a[l] * a[5] * ti / q, p, tr);
        }
    }
    return acc;
}

// Normalization constant of the pairing determinant.
inline cplx c_rn_closed(int r, int n, cplx p, cplx q, cplx t, const Truncation& tr = {}) {
    cplx base = cpow_int(cplx(2.0), n) * factorial_d(n) /
                cpow_int(poch_p(p, p, tr) * poch_p(q, q, tr), n);
    cplx acc = cpow_int(base, binom(n + r - 1, r - 1));
    for (int i = 0; i < n; ++i)
        acc *= cpow_int(ell_gamma(cpow_int(t, i + 1), p, q, tr) / ell_gamma(t, p, q, tr),
                        static_cast<long long>(r) * face_mult(n, i, r));
    return acc;
}

// The same constant through its recurrences in (r, n); cross-check only.
inline cplx c_rn_recurrence(int r, int n, cplx p, cplx q, cplx t, const Truncation& tr = {}) {
    if (n == 0) return cplx(1.0);
    cplx pp = poch_p(p, p, tr) * poch_p(q, q, tr);
    if (r == 1)
        return c_rn_recurrence(1, n - 1, p, q, t, tr) * cplx(2.0 * n) / pp *
               ell_gamma(cpow_int(t, n), p, q, tr) / ell_gamma(t, p, q, tr);
    cplx acc = c_rn_recurrence(r - 1, n, p, q, t, tr) * c_rn_recurrence(r, n - 1, p, q, t, tr);
    acc *= cpow_int(cplx(2.0 * n) / pp, binom(n + r - 2, r - 1));
    for (int i = 1; i <= n; ++i)
        acc *= cpow_int(ell_gamma(cpow_int(t, i), p, q, tr), binom(n - i + r - 2, r - 2));
    acc /= cpow_int(ell_gamma(t, p, q, tr), binom(n + r - 2, r - 1));
    return acc;
}

// det K(a) for the interpolation bases taken at x = y = a_{0..r-1}
// (m = 2r+4, balancing t^{2n-2} a_0...a_{m-1} = pq).
inline cplx detK_a_closed(const std::vector<cplx>& a, int n, cplx p, cplx q, cplx t,
                          const Truncation& tr = {}) {
    int m = static_cast<int>(a.size());
    int r = (m - 4) / 2;
    cplx acc = c_rn_closed(r, n, p, q, t, tr);
    for (int i = 0; i < n; ++i) {
        long long e = face_mult(n, i, r);
        if (e == 0) continue;
        for (int k = 0; k < m; ++k)
            for (int l = k + 1; l < m; ++l)
                acc *= cpow_int(ell_gamma(cpow_int(t, i) * a[static_cast<size_t>(k)] *
                                              a[static_cast<size_t>(l)],
                                          p, q, tr),
                                e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) {
            long long e = edge_mult(n, i, j, r);
            if (e == 0) continue;
            for (int k = 0; k < r; ++k)
                for (int l = k + 1; l < r; ++l) {
                    cplx ak = a[static_cast<size_t>(k)], al = a[static_cast<size_t>(l)];
                    acc /= cpow_int(e_pair(cpow_int(t, i) * ak, cpow_int(t, j) * al, p, tr) *
                                        e_pair(cpow_int(t, i) * ak, cpow_int(t, j) * al, q, tr),
                                    e);
                }
        }
    return acc;
}

// det K(a;x,y) for generic basis parameters x, y.
inline cplx detK_axy_closed(const std::vector<cplx>& a, const std::vector<cplx>& x,
                            const std::vector<cplx>& y, int n, cplx p, cplx q, cplx t,
                            const Truncation& tr = {}) {
    int m = static_cast<int>(a.size());
    int r = (m - 4) / 2;
    cplx acc = c_rn_closed(r, n, p, q, t, tr);
    for (int i = 0; i < n; ++i) {
        long long e = face_mult(n, i, r);
        if (e == 0) continue;
        for (int k = 0; k < m; ++k)
            for (int l = k + 1; l < m; ++l)
                acc *= cpow_int(ell_gamma(cpow_int(t, i) * a[static_cast<size_t>(k)] *
                                              a[static_cast<size_t>(l)],
                                          p, q, tr),
                                e);
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) {
            long long e = edge_mult(n, i, j, r);
            if (e == 0) continue;
            for (int k = 0; k < r; ++k)
                for (int l = k + 1; l < r; ++l)
                    acc /= cpow_int(
                        e_pair(cpow_int(t, i) * x[static_cast<size_t>(k)],
                               cpow_int(t, j) * x[static_cast<size_t>(l)], p, tr) *
                            e_pair(cpow_int(t, i) * y[static_cast<size_t>(k)],
                                   cpow_int(t, j) * y[static_cast<size_t>(l)], q, tr),
                        e);
        }
    return acc;
}

// Particular solution J_0(a;u,v) of the rank-one difference system satisfied
// by det I(a;u,v); det I = c_{r,n} J_0.
inline cplx J0_closed(const std::vector<cplx>& a, const std::vector<cplx>& u,
                      const std::vector<cplx>& v, int n, cplx p, cplx q, cplx t,
                      const Truncation& tr = {}) {
    int m = static_cast<int>(a.size());
    int r = (m - 4) / 2;
    cplx acc(1.0);
    for (int i = 0; i < n; ++i) {
        long long e = face_mult(n, i, r);
        if (e == 0) continue;
        for (int k = 0; k < m; ++k)
            for (int l = k + 1; l < m; ++l)
                acc *= cpow_int(ell_gamma(cpow_int(t, i) * a[static_cast<size_t>(k)] *
                                              a[static_cast<size_t>(l)],
                                          p, q, tr),
                                e);
    }
    for (int i = 1; i <= n; ++i) {
        long long e = binom(n - i + r - 2, r - 2);
        if (e == 0) continue;
        for (int k = 0; k < r; ++k) {
            cplx ak = a[static_cast<size_t>(k)];
            for (cplx ul : u) acc *= cpow_int(e_fact(ak, ul, p, t, i, tr), e);
            for (cplx vl : v) acc *= cpow_int(e_fact(ak, vl, q, t, i, tr), e);
        }
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) {
            long long e = edge_mult(n, i, j, r);
            if (e == 0) continue;
            for (int k = 0; k < r; ++k)
                for (int l = k + 1; l < r; ++l) {
                    cplx ak = a[static_cast<size_t>(k)], al = a[static_cast<size_t>(l)];
                    acc /= cpow_int(e_pair(cpow_int(t, i) * ak, cpow_int(t, j) * al, p, tr) *
                                        e_pair(cpow_int(t, i) * ak, cpow_int(t, j) * al, q, tr),
                                    e);
                }
        }
    return acc;
}

// det of the basis-transition matrix (E_mu(x;(c)_{t,nu};p))_{mu,nu in Z_{r,n}}.
inline cplx etrans_det_closed(const std::vector<cplx>& c, const std::vector<cplx>& x, int n,
                              cplx p, cplx t, const Truncation& tr = {}) {
    int r = static_cast<int>(c.size());
    cplx acc(1.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; i + j < n; ++j) {
            long long e = edge_mult(n, i, j, r);
            if (e == 0) continue;
            for (int k = 0; k < r; ++k)
                for (int l = k + 1; l < r; ++l)
                    acc *= cpow_int(
                        e_pair(cpow_int(t, i) * c[static_cast<size_t>(k)],
                               cpow_int(t, j) * c[static_cast<size_t>(l)], p, tr) /
                            e_pair(cpow_int(t, i) * x[static_cast<size_t>(k)],
                                   cpow_int(t, j) * x[static_cast<size_t>(l)], p, tr),
                        e);
        }
    return acc;
}

inline Matrix etrans_matrix(const std::vector<cplx>& c, const std::vector<cplx>& x, int n,
                            cplx p, cplx t, const Truncation& tr = {}) {
    int r = static_cast<int>(c.size());
    IndexedBasisOrder basis(r, n);
    size_t d = basis.size();
    EllipticPairing ep{p, tr};
    Matrix M(d, std::vector<cplx>(d));
    for (size_t j = 0; j < d; ++j) {
        std::vector<cplx> ref = reference_point(c, basis[j], t);
        for (size_t i = 0; i < d; ++i) M[i][j] = E_eval(x, basis[i], ref, t, ep);
    }
    return M;
}

// Connection matrix of the difference system in the (x, y) interpolation
// bases: M^{k,m-1}(a;x;p,q) = (shifted G) A^{k,m-1} G^{-1}, where G is shifted
// by a_k -> q a_k only when a_k occurs among the basis parameters (k < r).
inline Matrix M_matrix(const std::vector<cplx>& a, const std::vector<cplx>& x,
                       const std::vector<cplx>& u, int n, int k, cplx p, cplx q, cplx t,
                       const Truncation& tr = {}) {
    int m = static_cast<int>(a.size());
    int r = (m - 4) / 2;
    std::vector<cplx> head(a.begin(), a.begin() + r);
    Matrix A = A_rescaled_matrix(a, u, n, k, p, q, t, tr);
    Matrix G = G_matrix(head, x, u, n, p, t, tr);
    std::vector<cplx> head_sh = head;
    if (k < r) head_sh[static_cast<size_t>(k)] *= q;
    Matrix G_sh = G_matrix(head_sh, x, u, n, p, t, tr);
    return mat_mul(mat_mul(G_sh, A), mat_inverse(std::move(G)));
}

} // namespace ehi

#endif
