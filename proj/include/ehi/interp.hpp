#ifndef EHI_INTERP_HPP
#define EHI_INTERP_HPP

// BC_n interpolation functions E_mu(c;z) of type (s,n), their closed forms
// on vertices/faces, dual Cauchy partner F_mu, special values at geometric
// progressions, and the parameter-transition matrices C between bases.
//
// Everything is written against an abstract pairing e(u,v); the elliptic
// pairing e(u,v;p) and its trigonometric degeneration share all the code.

#include <functional>
#include <map>

#include "combi.hpp"
#include "ledger.hpp"
#include "qseries.hpp"

namespace ehi {

struct EllipticPairing {
    cplx p;
    Truncation tr{};
    cplx operator()(cplx u, cplx v) const { return e_pair(u, v, p, tr); }
};

// e(u,v)_{t,k}: t-shifted factorial in the first argument.
template <class Pairing>
cplx pair_fact(const Pairing& ep, cplx u, cplx v, cplx t, int k) {
    if (k < 0) throw std::invalid_argument("pair_fact: negative length");
    cplx acc(1.0), ti(1.0);
    for (int i = 0; i < k; ++i) {
        acc *= ep(ti * u, v);
        ti *= t;
    }
    return acc;
}

// n = 1 building block: E_{eps_k}(c; u) = prod_{l != k} e(u,c_l)/e(c_k,c_l).
template <class Pairing>
cplx E_n1(const std::vector<cplx>& c, int k, cplx u, const Pairing& ep) {
    cplx acc(1.0);
    for (size_t l = 0; l < c.size(); ++l) {
        if (static_cast<int>(l) == k) continue;
        cplx den = ep(c[static_cast<size_t>(k)], c[l]);
        if (std::abs(den) < 1e-13)
            throw degenerate_error("E_n1: degenerate parameters c_k, c_l");
        acc *= ep(u, c[l]) / den;
    }
    return acc;
}

namespace detail {
template <class Pairing>
cplx E_rec(const std::vector<cplx>& c, const Composition& mu,
           const std::vector<cplx>& z, cplx t, const Pairing& ep,
           std::map<Composition, cplx>& cache) {
    int n = comp_weight(mu);
    if (n == 0) return cplx(1.0);
    auto it = cache.find(mu);
    if (it != cache.end()) return it->second;
    cplx acc(0.0);
    Composition lam = mu;
    for (size_t k = 0; k < mu.size(); ++k) {
        if (mu[k] == 0) continue;
        lam[k] -= 1;
        std::vector<cplx> cshift(c.size());
        for (size_t i = 0; i < c.size(); ++i) cshift[i] = c[i] * cpow_int(t, lam[i]);
        acc += E_rec(c, lam, z, t, ep, cache) *
               E_n1(cshift, static_cast<int>(k), z[static_cast<size_t>(n) - 1], ep);
        lam[k] += 1;
    }
    cache.emplace(mu, acc);
    return acc;
}
} // namespace detail

// E_mu(c; z_1..z_n) by the one-variable recursion, memoized over sub-indices.
template <class Pairing>
cplx E_eval(const std::vector<cplx>& c, const Composition& mu,
            const std::vector<cplx>& z, cplx t, const Pairing& ep) {
    if (mu.size() != c.size()) throw std::invalid_argument("E_eval: size mismatch");
    if (static_cast<int>(z.size()) != comp_weight(mu))
        throw std::invalid_argument("E_eval: |mu| != number of variables");
    std::map<Composition, cplx> cache;
    return detail::E_rec(c, mu, z, t, ep, cache);
}

// E_mu(c; z) as the unrolled sum over branch sequences (k_1,...,k_n) with
// eps_{k_1} + ... + eps_{k_n} = mu; independent of the recursion above.
template <class Pairing>
cplx E_explicit(const std::vector<cplx>& c, const Composition& mu,
                const std::vector<cplx>& z, cplx t, const Pairing& ep) {
    int n = comp_weight(mu);
    size_t s = c.size();
    cplx total(0.0);
    Composition acc_mu(s, 0);
    std::vector<int> ks(static_cast<size_t>(n), 0);
    std::function<void(int, cplx)> walk = [&](int i, cplx val) {
        if (i == n) {
            if (acc_mu == mu) total += val;
            return;
        }
        for (size_t k = 0; k < s; ++k) {
            if (acc_mu[k] >= mu[k]) continue; // prune: can never reach mu
            std::vector<cplx> cshift(s);
            for (size_t l = 0; l < s; ++l) cshift[l] = c[l] * cpow_int(t, acc_mu[l]);
            cplx f = E_n1(cshift, static_cast<int>(k), z[static_cast<size_t>(i)], ep);
            acc_mu[k] += 1;
            walk(i + 1, val * f);
            acc_mu[k] -= 1;
        }
    };
    walk(0, cplx(1.0));
    return total;
}

// Vertex factorization: E_{n eps_k}(c; z).
template <class Pairing>
cplx E_vertex(const std::vector<cplx>& c, int k, const std::vector<cplx>& z, cplx t,
              const Pairing& ep) {
    int n = static_cast<int>(z.size());
    cplx acc(1.0);
    for (size_t l = 0; l < c.size(); ++l) {
        if (static_cast<int>(l) == k) continue;
        cplx num(1.0);
        for (cplx zi : z) num *= ep(zi, c[l]);
        acc *= num / pair_fact(ep, c[static_cast<size_t>(k)], c[l], t, n);
    }
    return acc;
}

// Face reduction: for mu_s = 0,
// E_{(mu',0)}(c;z) = E_{mu'}(c';z) * prod_i e(z_i,c_s) / prod_l e(c_l,c_s)_{mu_l}.
template <class Pairing>
cplx E_face(const std::vector<cplx>& c, const Composition& mu,
            const std::vector<cplx>& z, cplx t, const Pairing& ep) {
    size_t s = c.size();
    if (mu.back() != 0) throw std::invalid_argument("E_face: last part must vanish");
    std::vector<cplx> chead(c.begin(), c.end() - 1);
    Composition muhead(mu.begin(), mu.end() - 1);
    cplx fac(1.0);
    for (cplx zi : z) fac *= ep(zi, c[s - 1]);
    for (size_t l = 0; l + 1 < s; ++l)
        fac /= pair_fact(ep, c[l], c[s - 1], t, mu[l]);
    return E_eval(chead, muhead, z, t, ep) * fac;
}

// Dual Cauchy partner F_mu(c; w) = prod_{k<=s} prod_{l<=s-1} e(c_k,w_l)_{mu_k}.
template <class Pairing>
cplx F_mu(const std::vector<cplx>& c, const Composition& mu,
          const std::vector<cplx>& w, const Pairing& ep, cplx t) {
    cplx acc(1.0);
    for (size_t k = 0; k < c.size(); ++k)
        for (cplx wl : w) acc *= pair_fact(ep, c[k], wl, t, mu[k]);
    return acc;
}

// Residual of the dual Cauchy identity at a point (z, w); exercised by tests.
template <class Pairing>
cplx dual_cauchy_residual(const std::vector<cplx>& c, const std::vector<cplx>& z,
                          const std::vector<cplx>& w, cplx t, const Pairing& ep) {
    cplx lhs(1.0);
    for (cplx zj : z)
        for (cplx wl : w) lhs *= ep(zj, wl);
    cplx rhs(0.0);
    for (const Composition& mu :
         enumerate_compositions(static_cast<int>(c.size()), static_cast<int>(z.size())))
        rhs += E_eval(c, mu, z, t, ep) * F_mu(c, mu, w, ep, t);
    return lhs - rhs;
}

// Residual of the variable-splitting identity
// E_lam(c;z',z'') = sum_{mu+nu=lam} E_mu(c;z') E_nu(t^mu c;z'').
template <class Pairing>
cplx partition_identity_residual(const std::vector<cplx>& c, const Composition& lam,
                                 const std::vector<cplx>& z, size_t cut, cplx t,
                                 const Pairing& ep) {
    std::vector<cplx> z1(z.begin(), z.begin() + static_cast<long>(cut));
    std::vector<cplx> z2(z.begin() + static_cast<long>(cut), z.end());
    cplx rhs(0.0);
    for (const Composition& mu :
         enumerate_compositions(static_cast<int>(c.size()), static_cast<int>(cut))) {
        bool ok = true;
        Composition nu(lam.size());
        for (size_t i = 0; i < lam.size(); ++i) {
            nu[i] = lam[i] - mu[i];
            if (nu[i] < 0) { ok = false; break; }
        }
        if (!ok) continue;
        std::vector<cplx> cshift(c.size());
        for (size_t i = 0; i < c.size(); ++i) cshift[i] = c[i] * cpow_int(t, mu[i]);
        rhs += E_eval(c, mu, z1, t, ep) * E_eval(cshift, nu, z2, t, ep);
    }
    return E_eval(c, lam, z, t, ep) - rhs;
}

// ---------------------------------------------------------------------------
// Special value at a geometric progression z = (u, tu, ..., t^{n-1} u),
// assembled on the exponent ledger (bracket form).
// ---------------------------------------------------------------------------

inline cplx special_value(const std::vector<cplx>& c, const Composition& mu, cplx u,
                          cplx t, cplx p, const Truncation& tr = {}) {
    int s = static_cast<int>(c.size());
    int n = comp_weight(mu);
    // symbols: 0 = t, 1 = u, 2.. = c_i
    std::vector<cplx> vals{t, u};
    vals.insert(vals.end(), c.begin(), c.end());
    ExponentLedger L(vals);
    auto T = [](int e) { return mono({{0, e}}); };
    auto ci = [](int i) { return i + 2; };
    L.bracket_fact(T(-n), n);
    for (int i = 0; i < s; ++i) {
        L.bracket_fact(mono({{1, 1}, {ci(i), -1}}), n - mu[static_cast<size_t>(i)]);
        L.bracket_fact(mono({{0, mu[static_cast<size_t>(i)]}, {1, 1}, {ci(i), 1}}),
                       n - mu[static_cast<size_t>(i)]);
    }
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            L.bracket_fact(mono({{0, -mu[static_cast<size_t>(j)]}, {ci(i), 1}, {ci(j), -1}}),
                           mu[static_cast<size_t>(i)], true);
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            L.bracket_fact(mono({{ci(i), 1}, {ci(j), 1}}),
                           mu[static_cast<size_t>(i)] + mu[static_cast<size_t>(j)], true);
    return L.eval(p, tr);
}

// Same special value written with explicit monomial prefactor and theta
// factorials; used to cross-check the ledger transcription.
inline cplx special_value_theta(const std::vector<cplx>& c, const Composition& mu, cplx u,
                                cplx t, cplx p, const Truncation& tr = {}) {
    int s = static_cast<int>(c.size());
    int n = comp_weight(mu);
    cplx pre = cpow_int(t, -binom(n, 2)) * cpow_int(u, -n);
    for (int i = 0; i < s; ++i)
        pre *= cpow_int(t, binom(mu[static_cast<size_t>(i)], 2)) *
               cpow_int(c[static_cast<size_t>(i)], mu[static_cast<size_t>(i)]);
    cplx acc = cpow_int(pre, s - 1);
    acc *= theta_fact(cpow_int(t, -n), p, t, n, tr);
    for (int i = 0; i < s; ++i) {
        int mi = mu[static_cast<size_t>(i)];
        acc *= theta_fact(u / c[static_cast<size_t>(i)], p, t, n - mi, tr);
        acc *= theta_fact(cpow_int(t, mi) * u * c[static_cast<size_t>(i)], p, t, n - mi, tr);
    }
    for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j)
            acc /= theta_fact(cpow_int(t, -mu[static_cast<size_t>(j)]) *
                                  c[static_cast<size_t>(i)] / c[static_cast<size_t>(j)],
                              p, t, mu[static_cast<size_t>(i)], tr);
    for (int i = 0; i < s; ++i)
        for (int j = i + 1; j < s; ++j)
            acc /= theta_fact(c[static_cast<size_t>(i)] * c[static_cast<size_t>(j)], p, t,
                              mu[static_cast<size_t>(i)] + mu[static_cast<size_t>(j)], tr);
    return acc;
}

// ---------------------------------------------------------------------------
// Transition coefficients C between interpolation bases differing in one
// parameter.  cI are the shared parameters, c_src is replaced by c_tgt.
// Nonzero only when muI >= nuI componentwise (then mu_src <= nu_tgt).
// ---------------------------------------------------------------------------

inline cplx transC_entry(const std::vector<cplx>& cI, cplx c_src, cplx c_tgt,
                         const Composition& muI, int mu_src, const Composition& nuI,
                         int nu_tgt, cplx t, cplx p, const Truncation& tr = {}) {
    size_t r1 = cI.size(); // s - 1 shared parameters
    if (muI.size() != r1 || nuI.size() != r1)
        throw std::invalid_argument("transC_entry: size mismatch");
    for (size_t i = 0; i < r1; ++i)
        if (muI[i] < nuI[i]) return cplx(0.0);
    // symbols: 0 = t, 1.. = cI, then c_src, c_tgt
    std::vector<cplx> vals{t};
    vals.insert(vals.end(), cI.begin(), cI.end());
    vals.push_back(c_src);
    vals.push_back(c_tgt);
    int S = static_cast<int>(r1) + 1, D = S + 1;
    auto ci = [](size_t i) { return static_cast<int>(i) + 1; };
    ExponentLedger L(vals);
    L.bracket_fact(mono({{0, -nu_tgt}}), nu_tgt);
    L.bracket_fact(mono({{0, -mu_src}}), mu_src, true);
    L.bracket_fact(mono({{D, 1}, {0, -mu_src}, {S, -1}}), nu_tgt);
    L.bracket_fact(mono({{D, 1}, {0, -mu_src}, {S, -1}}), mu_src, true);
    L.bracket_fact(mono({{S, 1}, {D, 1}}), nu_tgt);
    L.bracket_fact(mono({{S, 1}, {D, 1}}), mu_src, true);
    for (size_t i = 0; i < r1; ++i) {
        L.bracket_fact(mono({{D, 1}, {0, -muI[i]}, {ci(i), -1}}), nu_tgt);
        L.bracket_fact(mono({{S, 1}, {0, -muI[i]}, {ci(i), -1}}), mu_src, true);
        L.bracket_fact(mono({{ci(i), 1}, {0, -mu_src}, {S, -1}}), nuI[i]);
        L.bracket_fact(mono({{ci(i), 1}, {0, -mu_src}, {S, -1}}), muI[i], true);
        L.bracket_fact(mono({{D, 1}, {0, -nuI[i]}, {ci(i), -1}}), nuI[i]);
        L.bracket_fact(mono({{D, 1}, {0, -muI[i]}, {ci(i), -1}}), muI[i], true);
        L.bracket_fact(mono({{ci(i), 1}, {S, 1}}), nuI[i]);
        L.bracket_fact(mono({{ci(i), 1}, {D, 1}}), nuI[i] + nu_tgt);
        L.bracket_fact(mono({{ci(i), 1}, {S, 1}}), muI[i] + mu_src, true);
        L.bracket_fact(mono({{ci(i), 1}, {D, 1}}), muI[i], true);
    }
    for (size_t i = 0; i < r1; ++i)
        for (size_t j = 0; j < r1; ++j) {
            L.bracket_fact(mono({{ci(i), 1}, {0, -muI[j]}, {ci(j), -1}}), nuI[i]);
            L.bracket_fact(mono({{ci(i), 1}, {0, -muI[j]}, {ci(j), -1}}), muI[i], true);
        }
    for (size_t i = 0; i < r1; ++i)
        for (size_t j = i + 1; j < r1; ++j) {
            L.bracket_fact(mono({{ci(i), 1}, {ci(j), 1}}), nuI[i] + nuI[j]);
            L.bracket_fact(mono({{ci(i), 1}, {ci(j), 1}}), muI[i] + muI[j], true);
        }
    return L.eval(p, tr);
}

// Theta-factorial form of the same coefficient (explicit monomial prefactor);
// used to cross-check the bracket-form ledger.
inline cplx transC_entry_theta(const std::vector<cplx>& cI, cplx c_src, cplx c_tgt,
                               const Composition& muI, int mu_src, const Composition& nuI,
                               int nu_tgt, cplx t, cplx p, const Truncation& tr = {}) {
    size_t r1 = cI.size();
    for (size_t i = 0; i < r1; ++i)
        if (muI[i] < nuI[i]) return cplx(0.0);
    auto tf = [&](cplx u, int k) { return theta_fact(u, p, t, k, tr); };
    auto tp = [&](int e) { return cpow_int(t, e); };
    cplx pre = tp(static_cast<int>(binom(mu_src, 2) - binom(nu_tgt, 2))) *
               cpow_int(c_src, mu_src) * cpow_int(c_tgt, -nu_tgt);
    for (size_t i = 0; i < r1; ++i)
        pre *= tp(static_cast<int>(binom(muI[i], 2) - binom(nuI[i], 2))) *
               cpow_int(cI[i], muI[i] - nuI[i]);
    cplx acc = cpow_int(pre, static_cast<int>(r1));
    acc *= tf(tp(-nu_tgt), nu_tgt) / tf(tp(-mu_src), mu_src);
    acc *= tf(c_tgt / (tp(mu_src) * c_src), nu_tgt) / tf(c_tgt / (tp(mu_src) * c_src), mu_src);
    acc *= tf(c_src * c_tgt, nu_tgt) / tf(c_src * c_tgt, mu_src);
    for (size_t i = 0; i < r1; ++i) {
        acc *= tf(c_tgt / (tp(muI[i]) * cI[i]), nu_tgt) / tf(c_src / (tp(muI[i]) * cI[i]), mu_src);
        acc *= tf(cI[i] / (tp(mu_src) * c_src), nuI[i]) / tf(cI[i] / (tp(mu_src) * c_src), muI[i]);
        acc *= tf(c_tgt / (tp(nuI[i]) * cI[i]), nuI[i]) / tf(c_tgt / (tp(muI[i]) * cI[i]), muI[i]);
        acc *= tf(cI[i] * c_src, nuI[i]) * tf(cI[i] * c_tgt, nuI[i] + nu_tgt) /
               (tf(cI[i] * c_src, muI[i] + mu_src) * tf(cI[i] * c_tgt, muI[i]));
    }
    for (size_t i = 0; i < r1; ++i)
        for (size_t j = 0; j < r1; ++j)
            acc *= tf(cI[i] / (tp(muI[j]) * cI[j]), nuI[i]) /
                   tf(cI[i] / (tp(muI[j]) * cI[j]), muI[i]);
    for (size_t i = 0; i < r1; ++i)
        for (size_t j = i + 1; j < r1; ++j)
            acc *= tf(cI[i] * cI[j], nuI[i] + nuI[j]) / tf(cI[i] * cI[j], muI[i] + muI[j]);
    return acc;
}

// Full transition matrix in the graded-lex basis order (head = shared parts).
inline std::vector<std::vector<cplx>> transC_matrix(const std::vector<cplx>& cI, cplx c_src,
                                                    cplx c_tgt, int n, cplx t, cplx p,
                                                    const Truncation& tr = {}) {
    int s = static_cast<int>(cI.size()) + 1;
    IndexedBasisOrder basis(s, n);
    size_t d = basis.size();
    std::vector<std::vector<cplx>> C(d, std::vector<cplx>(d));
    for (size_t i = 0; i < d; ++i) {
        Composition mu = basis[i];
        Composition muI(mu.begin(), mu.end() - 1);
        for (size_t j = 0; j < d; ++j) {
            Composition nu = basis[j];
            Composition nuI(nu.begin(), nu.end() - 1);
            C[i][j] = transC_entry(cI, c_src, c_tgt, muI, mu.back(), nuI, nu.back(), t, p, tr);
        }
    }
    return C;
}

// Closed-form determinant of the transition matrix.
inline cplx transC_det_closed(const std::vector<cplx>& cI, cplx c_src, cplx c_tgt, int n,
                              cplx t, cplx p, const Truncation& tr = {}) {
    int s = static_cast<int>(cI.size()) + 1;
    cplx acc(1.0);
    for (int u = 0; u < n; ++u)
        for (int v = 0; u + v < n; ++v) {
            long long e = binom(n - u - v + s - 3, s - 2);
            if (e == 0) continue;
            for (cplx ai : cI) {
                cplx ratio = e_pair(cpow_int(t, u) * c_tgt, cpow_int(t, v) * ai, p, tr) /
                             e_pair(cpow_int(t, u) * c_src, cpow_int(t, v) * ai, p, tr);
                acc *= cpow_int(ratio, e);
            }
        }
    return acc;
}

} // namespace ehi

#endif
