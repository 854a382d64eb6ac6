// Acceptance suite: one pass/fail line per criterion, each with its pinned
// tolerance.  Exit code 0 iff every criterion passes.  The optional slow
// three-variable evaluation check runs only with --n3.
#include "ehi/ehi.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <random>
#include <string>

using namespace ehi;

namespace {

std::mt19937_64 rng(20240817);

cplx on_circle(double r) {
    std::uniform_real_distribution<double> ang(0.0, 2.0 * M_PI);
    return std::polar(r, ang(rng));
}

cplx rand_pt(double lo, double hi) {
    std::uniform_real_distribution<double> rad(lo, hi);
    return on_circle(rad(rng));
}

std::vector<cplx> rand_vec(size_t k, double lo, double hi) {
    std::vector<cplx> v(k);
    for (auto& x : v) x = rand_pt(lo, hi);
    return v;
}

double rel_err(cplx a, cplx b) {
    double s = std::max({std::abs(a), std::abs(b), 1e-30});
    return std::abs(a - b) / s;
}

std::vector<cplx> balanced(size_t m, int n, cplx t, cplx target, double mod) {
    std::vector<cplx> a(m);
    cplx prod = cpow_int(t, 2 * n - 2);
    for (size_t i = 0; i + 1 < m; ++i) {
        a[i] = on_circle(mod);
        prod *= a[i];
    }
    a[m - 1] = target / prod;
    return a;
}

QuadOptions opts(double tol, int nmax = 512) {
    QuadOptions o;
    o.tol = tol;
    o.n_max = nmax;
    o.strict = false;
    return o;
}

struct Criterion {
    std::string name;
    double tol;
    double max_resid = 0.0;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    void note(double r) { max_resid = std::max(max_resid, r); }
    bool finish(int idx) const {
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = max_resid < tol;
        std::printf("criterion %2d: %s  %-58s max resid %.2e  (tol %.0e, %.1fs)\n", idx,
                    ok ? "PASS" : "FAIL", name.c_str(), max_resid, tol, secs);
        std::fflush(stdout);
        return ok;
    }
};

const cplx kP(0.05, 0.0);
const cplx kQ(0.35, 0.0);
const cplx kT(0.6, 0.0);

} // namespace

int main(int argc, char** argv) {
    bool with_n3 = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--n3") == 0) with_n3 = true;
    int fails = 0;
    auto tally = [&](bool ok) { fails += ok ? 0 : 1; };

    { // 1. scalar functional equations
        Criterion c{"scalar functional equations (theta, gamma, pairing)", 1e-12};
        for (int it = 0; it < 500; ++it) {
            cplx p = rand_pt(0.05, 0.3), q = rand_pt(0.05, 0.3);
            cplx u = rand_pt(0.4, 1.6), v = rand_pt(0.4, 1.6);
            c.note(rel_err(theta(p * u, p), -theta(u, p) / u));
            c.note(rel_err(theta(cplx(1.0) / u, p), -theta(u, p) / u));
            c.note(rel_err(ell_gamma(q * u, p, q), theta(u, p) * ell_gamma(u, p, q)));
            c.note(rel_err(ell_gamma(u, p, q) * ell_gamma(p * q / u, p, q), cplx(1.0)));
            c.note(rel_err(e_pair(u, v, p), -e_pair(v, u, p)));
            c.note(rel_err(e_pair(u, cplx(1.0) / v, p), e_pair(u, v, p)));
        }
        tally(c.finish(1));
    }

    { // 2. interpolation Kronecker property
        Criterion c{"interpolation basis is Kronecker at reference points", 1e-10};
        EllipticPairing ep{cplx(0.15, 0.0)};
        for (auto [s, n] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}}) {
            auto cc = rand_vec(static_cast<size_t>(s), 0.4, 0.75);
            IndexedBasisOrder basis(s, n);
            for (size_t i = 0; i < basis.size(); ++i)
                for (size_t j = 0; j < basis.size(); ++j) {
                    cplx v = E_eval(cc, basis[i], reference_point(cc, basis[j], kT), kT, ep);
                    c.note(std::abs(v - ((i == j) ? cplx(1.0) : cplx(0.0))));
                }
        }
        tally(c.finish(2));
    }

    { // 3. interpolation identities, randomized
        Criterion c{"explicit sum, Cauchy, splitting, special value, transition", 1e-9};
        EllipticPairing ep{cplx(0.15, 0.0)};
        const std::pair<int, int> sn[] = {{2, 2}, {2, 3}, {3, 2}, {3, 3}};
        for (int it = 0; it < 50; ++it) {
            auto [s, n] = sn[it % 4];
            auto cc = rand_vec(static_cast<size_t>(s), 0.35, 0.75);
            auto z = rand_vec(static_cast<size_t>(n), 0.5, 1.4);
            IndexedBasisOrder basis(s, n);
            Composition mu = basis[static_cast<size_t>(rng() % basis.size())];
            c.note(rel_err(E_eval(cc, mu, z, kT, ep), E_explicit(cc, mu, z, kT, ep)));
            auto w = rand_vec(static_cast<size_t>(s) - 1, 0.5, 1.2);
            cplx lhs(1.0);
            for (cplx zj : z)
                for (cplx wl : w) lhs *= ep(zj, wl);
            // the expansion cancels between large terms, so normalize the
            // residual by the total term magnitude
            double terms = std::abs(lhs);
            for (size_t j = 0; j < basis.size(); ++j)
                terms += std::abs(E_eval(cc, basis[j], z, kT, ep) *
                                  F_mu(cc, basis[j], w, ep, kT));
            c.note(std::abs(dual_cauchy_residual(cc, z, w, kT, ep)) / terms);
            size_t cut = rng() % (static_cast<size_t>(n) + 1);
            c.note(std::abs(partition_identity_residual(cc, mu, z, cut, kT, ep)) /
                   std::max(1.0, std::abs(E_eval(cc, mu, z, kT, ep))));
            cplx u = rand_pt(0.5, 1.2);
            std::vector<cplx> zu(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) zu[static_cast<size_t>(i)] = cpow_int(kT, i) * u;
            c.note(rel_err(special_value(cc, mu, u, kT, cplx(0.15, 0.0)),
                           E_eval(cc, mu, zu, kT, ep)));
            std::vector<cplx> cI(cc.begin(), cc.end() - 1);
            cplx src = cc.back(), tgt = rand_pt(0.35, 0.75);
            std::vector<cplx> c_tgt(cI);
            c_tgt.push_back(tgt);
            auto C = transC_matrix(cI, src, tgt, n, kT, cplx(0.15, 0.0));
            size_t irow = 0;
            for (size_t i = 0; i < basis.size(); ++i)
                if (basis[i] == mu) irow = i;
            cplx lhsE = E_eval(cc, mu, z, kT, ep);
            cplx rhs(0.0);
            double tscale = std::abs(lhsE);
            for (size_t j = 0; j < basis.size(); ++j) {
                cplx term = C[irow][j] * E_eval(c_tgt, basis[j], z, kT, ep);
                rhs += term;
                tscale += std::abs(term);
            }
            c.note(std::abs(lhsE - rhs) / tscale);
        }
        tally(c.finish(3));
    }

    { // 4. transition determinants vs LU
        Criterion c{"parameter/face transition determinants vs LU", 1e-9};
        cplx p15(0.15, 0.0);
        for (auto [r, n] : {std::pair{2, 1}, {2, 2}, {3, 1}}) {
            auto cI = rand_vec(static_cast<size_t>(r) - 1, 0.4, 0.75);
            cplx src = rand_pt(0.4, 0.75), tgt = rand_pt(0.4, 0.75);
            auto C = transC_matrix(cI, src, tgt, n, kT, p15);
            c.note(rel_err(det_gauss(C), transC_det_closed(cI, src, tgt, n, kT, p15)));
            int m = 2 * r + 4;
            auto a = balanced(static_cast<size_t>(m), n, kT, cplx(1.0), 0.55);
            std::vector<int> I;
            for (int i = 1; i < r; ++i) I.push_back(i);
            auto B = B_matrix(a, I, m - 1, 0, n, p15, kT);
            c.note(rel_err(det_gauss(B), B_det_closed(a, I, m - 1, 0, n, p15, kT)));
        }
        tally(c.finish(4));
    }

    { // 5. elliptic Selberg evaluation
        Criterion c{"Selberg-type evaluation integral (n = 1, 2)", 1e-7};
        auto one = [](const std::vector<cplx>&) { return cplx(1.0); };
        auto a1 = balanced(6, 1, kT, kP * kQ, 0.6);
        QuadResult r1 = pair_phi(a1, kP, kQ, kT, one, 1, opts(1e-13, 2048));
        double res1 = rel_err(r1.value, selberg_closed(a1, 1, kP, kQ, kT));
        bool ok1 = res1 < 1e-10;
        auto a2 = balanced(6, 2, kT, kP * kQ, 0.7);
        QuadResult r2 = pair_phi(a2, kP, kQ, kT, one, 2, opts(1e-10, 512));
        c.note(rel_err(r2.value, selberg_closed(a2, 2, kP, kQ, kT)));
        if (!ok1) c.note(res1);
        std::printf("              (n = 1 resid %.2e, tol 1e-10: %s)\n", res1,
                    ok1 ? "ok" : "FAIL");
        tally(c.finish(5) && ok1);
        if (with_n3) {
            auto a3 = balanced(6, 3, kT, kP * kQ, 0.78);
            QuadResult r3 = pair_phi(a3, kP, kQ, kT, one, 3, opts(1e-7, 256));
            double res3 = rel_err(r3.value, selberg_closed(a3, 3, kP, kQ, kT));
            bool ok3 = res3 < 1e-4;
            std::printf("criterion  5+: %s  optional n = 3 evaluation integral"
                        "                    max resid %.2e  (tol 1e-04)\n",
                        ok3 ? "PASS" : "FAIL", res3);
            tally(ok3);
        }
    }

    { // 6. coboundary vanishing and congruence reduction
        Criterion c{"coboundary vanishing under the pairing (n = 1, 2)", 1e-6};
        double resid1 = 0.0;
        for (int n = 1; n <= 2; ++n) {
            auto b = balanced(6, n, kT, kP * kQ, n == 1 ? 0.74 : 0.905);
            b[5] /= kP * kQ;
            cplx b5 = b[5];
            TorusFn g = [b5](const std::vector<cplx>& z) {
                cplx acc(1.0);
                for (cplx zi : z) acc *= e_pair(b5, zi, kQ);
                return acc;
            };
            std::vector<cplx> head(b.begin(), b.begin() + 2);
            EllipticPairing ep{kP};
            TorusFn w = [&b](const std::vector<cplx>& z) {
                return phi_weight(z, b, kP, kQ, kT);
            };
            Composition top(2, 0);
            top[0] = n;
            auto fr = [&](const std::vector<cplx>& z) {
                return E_eval(head, top, z, kT, ep) * g(z);
            };
            double tol = n == 1 ? 1e-12 : 1e-10;
            double scale = std::abs(torus_integrate(w, fr, n, opts(tol)).value);
            for (const auto& lam : enumerate_compositions(2, n - 1)) {
                auto f = [&](const std::vector<cplx>& z) {
                    return nabla_expansion(b, 2, lam, z, kP, kT) * g(z);
                };
                double res = std::abs(torus_integrate(w, f, n, opts(tol)).value) / scale;
                if (n == 1) resid1 = std::max(resid1, res);
                else c.note(res);
            }
        }
        bool ok1 = resid1 < 1e-8;
        std::printf("              (n = 1 resid %.2e, tol 1e-08: %s)\n", resid1,
                    ok1 ? "ok" : "FAIL");
        tally(c.finish(6) && ok1);

        Criterion cc{"congruence reduction of basis integrals (s, n) = (2, 2)", 1e-7};
        int n = 2;
        auto b = balanced(6, n, kT, kP * kQ, 0.905);
        b[5] /= kP * kQ;
        cplx b5 = b[5];
        std::vector<cplx> head(b.begin(), b.begin() + 2);
        EllipticPairing ep{kP};
        TorusFn w = [&b](const std::vector<cplx>& z) {
            return phi_weight(z, b, kP, kQ, kT);
        };
        IndexedBasisOrder basis(2, n);
        std::vector<TorusFn> fs;
        for (size_t i = 0; i < basis.size(); ++i) {
            Composition mu = basis[i];
            fs.push_back([&head, b5, mu, ep](const std::vector<cplx>& z) {
                cplx gg(1.0);
                for (cplx zi : z) gg *= e_pair(b5, zi, kQ);
                return E_eval(head, mu, z, kT, ep) * gg;
            });
        }
        auto res = torus_integrate_many(w, fs, n, opts(1e-10));
        double scale = 0.0;
        for (const auto& r : res) scale = std::max(scale, std::abs(r.value));
        for (size_t i = 0; i < basis.size(); ++i) {
            cplx rhs(0.0);
            for (size_t j = 0; j < basis.size(); ++j) {
                if (basis[j].back() != 0) continue;
                rhs += S_entry(b, 2, basis[i], basis[j], kP, kT) * res[j].value;
            }
            cc.note(std::abs(res[i].value - rhs) / scale);
        }
        tally(cc.finish(6));
    }

    { // 7. pairing-matrix determinant vs closed form
        Criterion c{"pairing determinant, (r, n) in {(1,1),(1,2),(2,1)}", 1e-8};
        for (auto [r, n] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
            int m = 2 * r + 4;
            auto a = balanced(static_cast<size_t>(m), n, kT, kP * kQ,
                              m == 6 ? (n == 1 ? 0.6 : 0.7) : 0.68);
            auto x = rand_vec(static_cast<size_t>(r), 0.45, 0.6);
            auto y = rand_vec(static_cast<size_t>(r), 0.45, 0.6);
            auto K = K_matrix(a, x, y, n, kP, kQ, kT, opts(n == 1 ? 1e-12 : 1e-10));
            c.note(rel_err(det_gauss(K), detK_axy_closed(a, x, y, n, kP, kQ, kT)));
        }
        tally(c.finish(7));
        Criterion c22{"pairing determinant, (r, n) = (2, 2)", 1e-6};
        auto a = balanced(8, 2, kT, kP * kQ, 0.75);
        auto x = rand_vec(2, 0.45, 0.6);
        auto y = rand_vec(2, 0.45, 0.6);
        auto K = K_matrix(a, x, y, 2, kP, kQ, kT, opts(1e-9));
        c22.note(rel_err(det_gauss(K), detK_axy_closed(a, x, y, 2, kP, kQ, kT)));
        tally(c22.finish(7));
    }

    { // 8. q-difference systems
        Criterion c{"rank-one shift equation for the evaluation integral", 1e-9};
        auto one = [](const std::vector<cplx>&) { return cplx(1.0); };
        for (int n = 1; n <= 2; ++n) {
            auto a = balanced(6, n, kT, kP * kQ, n == 1 ? 0.6 : 0.7);
            double tol = n == 1 ? 1e-13 : 1e-11;
            QuadResult base = pair_phi(a, kP, kQ, kT, one, n, opts(tol, 1024));
            for (int k : {0, 2}) {
                auto ash = a;
                ash[static_cast<size_t>(k)] *= kQ;
                ash[5] /= kQ;
                QuadResult sh = pair_phi(ash, kP, kQ, kT, one, n, opts(tol, 1024));
                c.note(rel_err(sh.value / base.value,
                               selberg_shift_coeff(a, n, k, kP, kQ, kT)));
            }
        }
        tally(c.finish(8));

        for (int n = 1; n <= 2; ++n) {
            Criterion cr{n == 1 ? "matrix shift systems, (r, n) = (2, 1)"
                                : "matrix shift systems, (r, n) = (2, 2)",
                         n == 1 ? 1e-7 : 1e-5};
            // the shifted a_7/q must stay inside the unit disk
            auto a = balanced(8, n, kT, kP * kQ, n == 1 ? 0.68 : 0.78);
            auto x = rand_vec(2, 0.45, 0.62);
            auto y = rand_vec(2, 0.45, 0.62);
            std::vector<cplx> u = {on_circle(0.5)}, v = {on_circle(0.52)};
            double tol = n == 1 ? 1e-12 : 1e-9;
            auto I0 = I_matrix(a, u, v, n, kP, kQ, kT, opts(tol));
            auto K0 = K_matrix(a, x, y, n, kP, kQ, kT, opts(tol));
            for (int k : {0, 2}) {
                auto ash = a;
                ash[static_cast<size_t>(k)] *= kQ;
                ash[7] /= kQ;
                auto Ish = I_matrix(ash, u, v, n, kP, kQ, kT, opts(tol));
                auto AI = mat_mul(A_rescaled_matrix(a, u, n, k, kP, kQ, kT), I0);
                double sI = 0.0;
                for (const auto& row : Ish)
                    for (cplx e : row) sI = std::max(sI, std::abs(e));
                for (size_t i = 0; i < Ish.size(); ++i)
                    for (size_t j = 0; j < Ish.size(); ++j)
                        cr.note(std::abs(Ish[i][j] - AI[i][j]) / sI);
                auto Ksh = K_matrix(ash, x, y, n, kP, kQ, kT, opts(tol));
                auto MK = mat_mul(M_matrix(a, x, u, n, k, kP, kQ, kT), K0);
                double sK = 0.0;
                for (const auto& row : Ksh)
                    for (cplx e : row) sK = std::max(sK, std::abs(e));
                for (size_t i = 0; i < Ksh.size(); ++i)
                    for (size_t j = 0; j < Ksh.size(); ++j)
                        cr.note(std::abs(Ksh[i][j] - MK[i][j]) / sK);
            }
            tally(cr.finish(8));
        }

        Criterion cd{"connection determinant closed forms vs LU; J0 ratio", 1e-9};
        for (int r : {1, 2}) {
            int m = 2 * r + 4, n = r == 1 ? 2 : 1;
            auto a1 = balanced(static_cast<size_t>(m), n, kT, cplx(1.0), 0.55);
            for (int k : {0, r})
                cd.note(rel_err(det_gauss(Atilde_matrix(a1, n, k, kP, kQ, kT)),
                                detAtilde_closed(a1, n, k, kP, kQ, kT)));
            auto a2 = balanced(static_cast<size_t>(m), n, kT, kP * kQ, 0.55);
            for (int k : {0, r})
                cd.note(rel_err(det_gauss(A_cal_matrix(a2, n, k, kP, kQ, kT)),
                                detA_cal_closed(a2, n, k, kP, kQ, kT)));
            std::vector<cplx> u = rand_vec(static_cast<size_t>(r) - 1, 0.45, 0.6);
            for (int k : {0, r})
                cd.note(rel_err(det_gauss(A_rescaled_matrix(a2, u, n, k, kP, kQ, kT)),
                                detA_rescaled_closed(a2, u, n, k, kP, kQ, kT)));
            // determinant shift equation via the closed-form J0 prefactor
            std::vector<cplx> vv = rand_vec(static_cast<size_t>(r) - 1, 0.45, 0.6);
            for (int k : {0, r}) {
                auto ash = a2;
                ash[static_cast<size_t>(k)] *= kQ;
                ash[static_cast<size_t>(m - 1)] /= kQ;
                cplx ratio = J0_closed(ash, u, vv, n, kP, kQ, kT) /
                             J0_closed(a2, u, vv, n, kP, kQ, kT);
                cd.note(rel_err(ratio, detA_rescaled_closed(a2, u, n, k, kP, kQ, kT)));
            }
        }
        tally(cd.finish(8));
    }

    { // 9. normalization constant
        Criterion c{"normalization constant: closed form vs recurrence", 1e-12};
        for (int r = 1; r <= 4; ++r)
            for (int n = 1; n <= 4; ++n)
                c.note(rel_err(c_rn_closed(r, n, kP, kQ, kT),
                               c_rn_recurrence(r, n, kP, kQ, kT)));
        tally(c.finish(9));
    }

    { // 10. trigonometric degenerations
        Criterion c{"trigonometric evaluations and determinants", 1e-7};
        auto one = [](const std::vector<cplx>&) { return cplx(1.0); };
        // Askey-Wilson n = 1 at 1e-10
        std::vector<cplx> aw = rand_vec(4, 0.45, 0.6);
        TorusFn waw = [&aw](const std::vector<cplx>& z) {
            return sphi_tilde_weight(z, aw, kQ, kT);
        };
        double res_aw = rel_err(torus_integrate(waw, one, 1, opts(1e-13, 1024)).value,
                                gustafson_aw_closed(aw, 1, kQ, kT));
        bool ok_aw = res_aw < 1e-10;
        // Nassrallah-Rahman n = 1 at 1e-9, n = 2 at 1e-7
        double res_nr1 = 0.0;
        for (int n = 1; n <= 2; ++n) {
            std::vector<cplx> a(6);
            cplx prod = cpow_int(kT, 2 * n - 2);
            for (int i = 0; i < 5; ++i) {
                a[static_cast<size_t>(i)] = on_circle(0.55);
                prod *= a[static_cast<size_t>(i)];
            }
            a[5] = kQ / prod;
            TorusFn w = [&a](const std::vector<cplx>& z) {
                return sphi_weight(z, a, kQ, kT);
            };
            double res = rel_err(torus_integrate(w, one, n, opts(1e-12)).value,
                                 gustafson_nr_closed(a, n, kQ, kT));
            if (n == 1) res_nr1 = res;
            else c.note(res);
        }
        bool ok_nr1 = res_nr1 < 1e-9;
        // q-hypergeometric pairing determinant at (r, n) = (2, 1)
        {
            int n = 1;
            std::vector<cplx> a(8);
            cplx prod(1.0);
            for (int i = 0; i < 7; ++i) {
                a[static_cast<size_t>(i)] = on_circle(0.55);
                prod *= a[static_cast<size_t>(i)];
            }
            a[7] = kQ / prod;
            auto x = rand_vec(2, 0.45, 0.62);
            auto y = rand_vec(2, 0.45, 0.62);
            TrigPairing tp;
            EllipticPairing eq{kQ};
            TorusFn w = [&a](const std::vector<cplx>& z) {
                return sphi_weight(z, a, kQ, kT);
            };
            IndexedBasisOrder basis(2, n);
            size_t d = basis.size();
            TorusVecFn f = [&](const std::vector<cplx>& z, std::vector<cplx>& vals) {
                std::vector<cplx> ex(d), ey(d);
                for (size_t i = 0; i < d; ++i) {
                    ex[i] = E_eval(x, basis[i], z, kT, tp);
                    ey[i] = E_eval(y, basis[i], z, kT, eq);
                }
                for (size_t i = 0; i < d; ++i)
                    for (size_t j = 0; j < d; ++j) vals[i * d + j] = ex[i] * ey[j];
            };
            auto res = torus_integrate_batch(w, f, d * d, n, opts(1e-12));
            Matrix K(d, std::vector<cplx>(d));
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < d; ++j) K[i][j] = res[i * d + j].value;
            c.note(rel_err(det_gauss(K), trig_detK_closed(a, x, y, n, kQ, kT)));
        }
        // symplectic Schur transition determinant at 1e-9
        double res_schur = 0.0;
        {
            auto x = rand_vec(3, 0.45, 0.62);
            auto C = schur_transition_matrix(x, 2, kT);
            res_schur = rel_err(det_gauss(C), schur_transition_det_closed(x, 2, kT));
        }
        bool ok_schur = res_schur < 1e-9;
        // elliptic-vs-trig agreement at p = 1e-6
        double res_tiny = 0.0;
        {
            EllipticPairing tiny{cplx(1e-6, 0.0)};
            TrigPairing tp;
            auto cc = rand_vec(2, 0.45, 0.65);
            auto z = rand_vec(2, 0.8, 1.1);
            IndexedBasisOrder basis(2, 2);
            for (size_t i = 0; i < basis.size(); ++i)
                res_tiny = std::max(res_tiny, rel_err(E_eval(cc, basis[i], z, kT, tiny),
                                                      E_eval(cc, basis[i], z, kT, tp)));
        }
        bool ok_tiny = res_tiny < 1e-4;
        std::printf("              (AW n=1 %.2e tol 1e-10: %s;  NR n=1 %.2e tol 1e-09: %s;"
                    "  Schur det %.2e tol 1e-09: %s;  tiny-p %.2e tol 1e-04: %s)\n",
                    res_aw, ok_aw ? "ok" : "FAIL", res_nr1, ok_nr1 ? "ok" : "FAIL",
                    res_schur, ok_schur ? "ok" : "FAIL", res_tiny, ok_tiny ? "ok" : "FAIL");
        tally(c.finish(10) && ok_aw && ok_nr1 && ok_schur && ok_tiny);
    }

    std::printf("%s (%d criterion line%s failed)\n", fails == 0 ? "ALL PASS" : "FAILURES",
                fails, fails == 1 ? "" : "s");
    return fails == 0 ? 0 : 1;
}
