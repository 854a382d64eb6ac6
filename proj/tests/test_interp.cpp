#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ehi/interp.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <random>

using namespace ehi;

namespace {

std::mt19937_64 rng(777);

cplx rand_pt(double lo = 0.3, double hi = 0.8) {
    std::uniform_real_distribution<double> mod(lo, hi), ang(0.0, 2.0 * M_PI);
    double r = mod(rng), th = ang(rng);
    return cplx(r * std::cos(th), r * std::sin(th));
}

std::vector<cplx> rand_vec(size_t k, double lo = 0.3, double hi = 0.8) {
    std::vector<cplx> v(k);
    for (auto& x : v) x = rand_pt(lo, hi);
    return v;
}

double rel_err(cplx a, cplx b) {
    double s = std::max({std::abs(a), std::abs(b), 1e-30});
    return std::abs(a - b) / s;
}

cplx eigen_det(const std::vector<std::vector<cplx>>& M) {
    size_t d = M.size();
    Eigen::MatrixXcd A(d, d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) A(i, j) = M[i][j];
    return A.fullPivLu().determinant();
}

const cplx kP(0.15, 0.0);
const cplx kT(0.55, 0.0);

} // namespace

TEST_CASE("interpolation property: delta at reference points") {
    EllipticPairing ep{kP};
    for (int s = 2; s <= 3; ++s) {
        int n = (s == 2) ? 3 : 2;
        auto c = rand_vec(static_cast<size_t>(s));
        IndexedBasisOrder basis(s, n);
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t j = 0; j < basis.size(); ++j) {
                cplx v = E_eval(c, basis[i], reference_point(c, basis[j], kT), kT, ep);
                cplx want = (i == j) ? cplx(1.0) : cplx(0.0);
                CHECK(std::abs(v - want) < 1e-9);
            }
    }
}

TEST_CASE("recursion agrees with explicit branch sum") {
    EllipticPairing ep{kP};
    for (int s = 2; s <= 3; ++s) {
        auto c = rand_vec(static_cast<size_t>(s));
        int n = 3;
        auto z = rand_vec(static_cast<size_t>(n));
        for (const auto& mu : enumerate_compositions(s, n))
            CHECK(rel_err(E_eval(c, mu, z, kT, ep), E_explicit(c, mu, z, kT, ep)) < 1e-10);
    }
}

TEST_CASE("symmetry in the variables and under inversion") {
    EllipticPairing ep{kP};
    auto c = rand_vec(3);
    auto z = rand_vec(3);
    Composition mu = {1, 0, 2};
    cplx base = E_eval(c, mu, z, kT, ep);
    std::vector<cplx> zs = {z[2], z[0], z[1]};
    CHECK(rel_err(E_eval(c, mu, zs, kT, ep), base) < 1e-10);
    std::vector<cplx> zi = z;
    zi[1] = cplx(1.0) / zi[1];
    CHECK(rel_err(E_eval(c, mu, zi, kT, ep), base) < 1e-10);
}

TEST_CASE("quasi-periodicity in each variable") {
    // degree s-1 per variable: f(p z) = (p z^2)^{-(s-1)} f(z)
    EllipticPairing ep{kP};
    for (int s = 2; s <= 3; ++s) {
        auto c = rand_vec(static_cast<size_t>(s));
        auto z = rand_vec(2);
        Composition mu(static_cast<size_t>(s), 0);
        mu[0] = 1;
        mu[static_cast<size_t>(s) - 1] = 1;
        cplx base = E_eval(c, mu, z, kT, ep);
        std::vector<cplx> zp = z;
        zp[0] *= kP;
        cplx fac = cpow_int(kP * z[0] * z[0], -(s - 1));
        CHECK(rel_err(E_eval(c, mu, zp, kT, ep), fac * base) < 1e-9);
    }
}

TEST_CASE("vertex factorization") {
    EllipticPairing ep{kP};
    auto c = rand_vec(3);
    auto z = rand_vec(3);
    for (int k = 0; k < 3; ++k) {
        Composition mu = {0, 0, 0};
        mu[static_cast<size_t>(k)] = 3;
        CHECK(rel_err(E_vertex(c, k, z, kT, ep), E_eval(c, mu, z, kT, ep)) < 1e-10);
    }
}

TEST_CASE("face reduction") {
    EllipticPairing ep{kP};
    auto c = rand_vec(3);
    auto z = rand_vec(3);
    for (const auto& mu : enumerate_compositions(3, 3)) {
        if (mu.back() != 0) continue;
        CHECK(rel_err(E_face(c, mu, z, kT, ep), E_eval(c, mu, z, kT, ep)) < 1e-10);
    }
}

TEST_CASE("dual Cauchy identity") {
    EllipticPairing ep{kP};
    for (int s = 2; s <= 3; ++s) {
        auto c = rand_vec(static_cast<size_t>(s));
        auto z = rand_vec(2);
        auto w = rand_vec(static_cast<size_t>(s) - 1);
        cplx lhs(1.0);
        for (cplx zj : z)
            for (cplx wl : w) lhs *= ep(zj, wl);
        CHECK(std::abs(dual_cauchy_residual(c, z, w, kT, ep)) <
              1e-10 * std::max(1.0, std::abs(lhs)));
    }
}

TEST_CASE("variable splitting identity") {
    EllipticPairing ep{kP};
    auto c = rand_vec(2);
    auto z = rand_vec(3);
    for (const auto& lam : enumerate_compositions(2, 3))
        for (size_t cut = 0; cut <= 3; ++cut)
            CHECK(std::abs(partition_identity_residual(c, lam, z, cut, kT, ep)) < 1e-9);
}

TEST_CASE("special value at geometric progressions") {
    EllipticPairing ep{kP};
    for (int s = 2; s <= 3; ++s) {
        auto c = rand_vec(static_cast<size_t>(s));
        cplx u = rand_pt();
        int n = 2;
        for (const auto& mu : enumerate_compositions(s, n)) {
            std::vector<cplx> z(static_cast<size_t>(n));
            for (int i = 0; i < n; ++i) z[static_cast<size_t>(i)] = cpow_int(kT, i) * u;
            cplx direct = E_eval(c, mu, z, kT, ep);
            cplx ledger = special_value(c, mu, u, kT, kP);
            cplx theta_form = special_value_theta(c, mu, u, kT, kP);
            CHECK(rel_err(ledger, direct) < 1e-9);
            CHECK(rel_err(theta_form, direct) < 1e-9);
        }
    }
}

TEST_CASE("transition entries: ledger and theta forms agree") {
    auto cI = rand_vec(2);
    cplx src = rand_pt(), tgt = rand_pt();
    IndexedBasisOrder basis(3, 2);
    for (size_t i = 0; i < basis.size(); ++i)
        for (size_t j = 0; j < basis.size(); ++j) {
            Composition mu = basis[i], nu = basis[j];
            Composition muI(mu.begin(), mu.end() - 1), nuI(nu.begin(), nu.end() - 1);
            cplx a = transC_entry(cI, src, tgt, muI, mu.back(), nuI, nu.back(), kT, kP);
            cplx b = transC_entry_theta(cI, src, tgt, muI, mu.back(), nuI, nu.back(), kT, kP);
            CHECK(rel_err(a, b) < 1e-10);
        }
}

TEST_CASE("transition matrix expands one basis in the other") {
    EllipticPairing ep{kP};
    for (int s = 2; s <= 3; ++s) {
        auto cI = rand_vec(static_cast<size_t>(s) - 1);
        cplx src = rand_pt(), tgt = rand_pt();
        std::vector<cplx> c_src(cI), c_tgt(cI);
        c_src.push_back(src);
        c_tgt.push_back(tgt);
        int n = 2;
        auto z = rand_vec(static_cast<size_t>(n));
        IndexedBasisOrder basis(s, n);
        auto C = transC_matrix(cI, src, tgt, n, kT, kP);
        for (size_t i = 0; i < basis.size(); ++i) {
            cplx lhs = E_eval(c_src, basis[i], z, kT, ep);
            cplx rhs(0.0);
            for (size_t j = 0; j < basis.size(); ++j)
                rhs += C[i][j] * E_eval(c_tgt, basis[j], z, kT, ep);
            CHECK(rel_err(lhs, rhs) < 1e-9);
        }
    }
}

TEST_CASE("transition matrix is triangular with unit-like diagonal support") {
    auto cI = rand_vec(2);
    auto C = transC_matrix(cI, rand_pt(), rand_pt(), 3, kT, kP);
    IndexedBasisOrder basis(3, 3);
    for (size_t i = 0; i < basis.size(); ++i) {
        CHECK(std::abs(C[i][i]) > 1e-12);
        for (size_t j = i + 1; j < basis.size(); ++j) {
            Composition muI(basis[i].begin(), basis[i].end() - 1);
            Composition nuI(basis[j].begin(), basis[j].end() - 1);
            bool support = true;
            for (size_t k = 0; k < muI.size(); ++k)
                if (muI[k] < nuI[k]) support = false;
            if (!support) CHECK(std::abs(C[i][j]) == 0.0);
        }
    }
}

TEST_CASE("transition determinant: closed form vs LU") {
    for (int s = 2; s <= 3; ++s)
        for (int n = 1; n <= 3; ++n) {
            auto cI = rand_vec(static_cast<size_t>(s) - 1);
            cplx src = rand_pt(), tgt = rand_pt();
            auto C = transC_matrix(cI, src, tgt, n, kT, kP);
            cplx lu = eigen_det(C);
            cplx closed = transC_det_closed(cI, src, tgt, n, kT, kP);
            CHECK(rel_err(lu, closed) < 1e-9);
        }
}
