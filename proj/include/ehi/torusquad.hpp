#ifndef EHI_TORUSQUAD_HPP
#define EHI_TORUSQUAD_HPP

// Product trapezoid quadrature on the unit torus T^dim, evaluated at N-th
// roots of unity with N doubling until successive estimates agree.  For the
// integrands here (holomorphic in an annulus around |z|=1) the rule is
// spectrally accurate.  Batched sweeps share one weight evaluation per node
// across all integrands, and the reduction order is deterministic for any
// thread count.

#include <cmath>
#include <functional>
#include <numbers>
#include <thread>

#include "cohom.hpp"
#include "core.hpp"
#include "interp.hpp"

namespace ehi {

struct QuadOptions {
    int n0 = 32;
    int n_max = 1024;
    double tol = 1e-11;
    int threads = 1;
    bool strict = true; // throw convergence_error if tol is not reached
};

struct QuadResult {
    cplx value;
    double err; // relative change between the last two refinements
    int nodes;  // N of the final grid (per dimension)
};

using TorusFn = std::function<cplx(const std::vector<cplx>&)>;
// Vector-valued integrand: writes all component values for one node into the
// output span.  Lets batched sweeps share per-node work between components.
using TorusVecFn = std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>;

namespace detail {

inline std::vector<cplx> roots_of_unity(int N) {
    std::vector<cplx> w(static_cast<size_t>(N));
    for (int k = 0; k < N; ++k) {
        double th = 2.0 * std::numbers::pi * k / N;
        w[static_cast<size_t>(k)] = cplx(std::cos(th), std::sin(th));
    }
    return w;
}

// Sum of weight * f_j over the full N^dim grid, reduced in index order.
inline std::vector<cplx> grid_sums(const TorusFn& weight, const TorusVecFn& f, size_t count,
                                   int dim, int N, int threads) {
    std::vector<cplx> w = roots_of_unity(N);
    long long total = 1;
    for (int d = 0; d < dim; ++d) total *= N;
    int nthreads = std::max(1, threads);
    std::vector<std::vector<cplx>> partial(static_cast<size_t>(nthreads),
                                           std::vector<cplx>(count, cplx(0.0)));
    auto work = [&](int tid) {
        std::vector<cplx> z(static_cast<size_t>(dim));
        std::vector<cplx> vals(count);
        auto& acc = partial[static_cast<size_t>(tid)];
        for (long long idx = tid; idx < total; idx += nthreads) {
            long long rest = idx;
            for (int d = 0; d < dim; ++d) {
                z[static_cast<size_t>(d)] = w[static_cast<size_t>(rest % N)];
                rest /= N;
            }
            cplx wt = weight(z);
            if (wt == cplx(0.0)) continue;
            f(z, vals);
            for (size_t j = 0; j < count; ++j) acc[j] += wt * vals[j];
        }
    };
    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int tdx = 0; tdx < nthreads; ++tdx) pool.emplace_back(work, tdx);
        for (auto& th : pool) th.join();
    }
    std::vector<cplx> sums(count, cplx(0.0));
    for (const auto& acc : partial)
        for (size_t j = 0; j < count; ++j) sums[j] += acc[j];
    return sums;
}

} // namespace detail

inline std::vector<QuadResult> torus_integrate_batch(const TorusFn& weight,
                                                     const TorusVecFn& f, size_t count,
                                                     int dim, const QuadOptions& opt = {}) {
    std::vector<cplx> prev;
    double err = std::numeric_limits<double>::infinity();
    double last_err = std::numeric_limits<double>::infinity();
    for (int N = opt.n0; N <= opt.n_max; N *= 2) {
        std::vector<cplx> sums = detail::grid_sums(weight, f, count, dim, N, opt.threads);
        double scale = 1.0;
        for (int d = 0; d < dim; ++d) scale /= N;
        for (cplx& s : sums) s *= scale;
        if (!prev.empty()) {
            err = 0.0;
            for (size_t j = 0; j < sums.size(); ++j) {
                double denom = std::max(1.0, std::abs(sums[j]));
                err = std::max(err, std::abs(sums[j] - prev[j]) / denom);
            }
            // for integrands analytic around the torus each doubling shrinks
            // the change geometrically; assert at least 10x while well above
            // the noise floor (catches non-analytic integrands early)
            if (std::isfinite(last_err) && N / 2 >= 32 && last_err > 1e-9 &&
                err > 0.1 * last_err)
                throw convergence_error("torus_integrate_batch: non-geometric convergence",
                                        sums[0], prev[0]);
            last_err = err;
            if (err <= opt.tol || N == opt.n_max) {
                std::vector<QuadResult> out;
                for (cplx s : sums) out.push_back({s, err, N});
                if (err > opt.tol && opt.strict)
                    throw convergence_error("torus_integrate_batch: tolerance not reached",
                                            sums[0], prev[0]);
                return out;
            }
        }
        prev = std::move(sums);
    }
    throw convergence_error("torus_integrate_batch: grid exhausted",
                            prev.empty() ? cplx(0) : prev[0], cplx(0));
}

inline std::vector<QuadResult> torus_integrate_many(const TorusFn& weight,
                                                    const std::vector<TorusFn>& fs, int dim,
                                                    const QuadOptions& opt = {}) {
    TorusVecFn f = [&fs](const std::vector<cplx>& z, std::vector<cplx>& vals) {
        for (size_t j = 0; j < fs.size(); ++j) vals[j] = fs[j](z);
    };
    return torus_integrate_batch(weight, f, fs.size(), dim, opt);
}

inline QuadResult torus_integrate(const TorusFn& weight, const TorusFn& f, int dim,
                                  const QuadOptions& opt = {}) {
    return torus_integrate_many(weight, {f}, dim, opt)[0];
}

// <f>_Phi = integral of f * Phi(z;a) over T^n against the torus measure.
inline QuadResult pair_phi(const std::vector<cplx>& a, cplx p, cplx q, cplx t,
                           const TorusFn& f, int dim, const QuadOptions& opt = {},
                           const Truncation& tr = {}) {
    TorusFn w = [&a, p, q, t, tr](const std::vector<cplx>& z) {
        return phi_weight(z, a, p, q, t, tr);
    };
    return torus_integrate(w, f, dim, opt);
}

// Pairing matrix K(a;x,y)_{mu,nu} = <E_mu(x;z;p) E_nu(y;z;q)>_Phi over the
// shared basis order; one batched sweep for the whole matrix.
inline Matrix K_matrix(const std::vector<cplx>& a, const std::vector<cplx>& x,
                       const std::vector<cplx>& y, int n, cplx p, cplx q, cplx t,
                       const QuadOptions& opt = {}, const Truncation& tr = {}) {
    int r = static_cast<int>(x.size());
    IndexedBasisOrder basis(r, n);
    size_t d = basis.size();
    EllipticPairing epp{p, tr}, epq{q, tr};
    // evaluate the d + d basis values once per node and form all d^2 products
    TorusVecFn f = [&](const std::vector<cplx>& z, std::vector<cplx>& vals) {
        std::vector<cplx> ex(d), ey(d);
        for (size_t i = 0; i < d; ++i) {
            ex[i] = E_eval(x, basis[i], z, t, epp);
            ey[i] = E_eval(y, basis[i], z, t, epq);
        }
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) vals[i * d + j] = ex[i] * ey[j];
    };
    TorusFn w = [&a, p, q, t, tr](const std::vector<cplx>& z) {
        return phi_weight(z, a, p, q, t, tr);
    };
    std::vector<QuadResult> res = torus_integrate_batch(w, f, d * d, n, opt);
    Matrix K(d, std::vector<cplx>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) K[i][j] = res[i * d + j].value;
    return K;
}

// Pairing matrix I(a;u,v)_{mu,nu} = F_mu(a;u;p) F_nu(a;v;q) K(a)_{mu,nu}
// where K(a) pairs the interpolation bases taken at x = y = a_{0..r-1}.
inline Matrix I_matrix(const std::vector<cplx>& a, const std::vector<cplx>& u,
                       const std::vector<cplx>& v, int n, cplx p, cplx q, cplx t,
                       const QuadOptions& opt = {}, const Truncation& tr = {}) {
    int m = static_cast<int>(a.size());
    int r = (m - 4) / 2;
    std::vector<cplx> head(a.begin(), a.begin() + r);
    Matrix K = K_matrix(a, head, head, n, p, q, t, opt, tr);
    IndexedBasisOrder basis(r, n);
    EllipticPairing epp{p, tr}, epq{q, tr};
    for (size_t i = 0; i < basis.size(); ++i) {
        cplx fu = F_mu(head, basis[i], u, epp, t);
        for (size_t j = 0; j < basis.size(); ++j)
            K[i][j] *= fu * F_mu(head, basis[j], v, epq, t);
    }
    return K;
}

} // namespace ehi

#endif
