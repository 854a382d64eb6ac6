#ifndef EHI_LEDGER_HPP
#define EHI_LEDGER_HPP

// Exact bookkeeping for products of "bracket" factors
//
//     [u] = u^{-1/2} theta(u; p),   [u]_k = prod_{i<k} [t^i u],
//
// where u ranges over Laurent monomials in a fixed list of symbols.  Each
// bracket contributes -1/2 times the monomial's exponent vector to a global
// half-integer exponent tally; the theta factors are kept symbolically.  A
// product of brackets is evaluated only after the tally has been checked to
// be integral, so no complex half-power is ever taken.

#include <map>
#include <utility>
#include <vector>

#include "qseries.hpp"

namespace ehi {

// A Laurent monomial in the ledger's symbols: symbol index -> exponent.
using Mono = std::map<int, int>;

inline Mono operator*(Mono a, const Mono& b) {
    for (auto [s, e] : b) {
        a[s] += e;
        if (a[s] == 0) a.erase(s);
    }
    return a;
}

// Build a monomial from (symbol, exponent) pairs, accumulating exponents.
// Brace-initializing a Mono directly would silently drop repeated symbols,
// which do occur when loop indices coincide.
inline Mono mono(std::initializer_list<std::pair<int, int>> parts) {
    Mono m;
    for (auto [s, e] : parts) {
        m[s] += e;
        if (m[s] == 0) m.erase(s);
    }
    return m;
}

class ExponentLedger {
public:
    explicit ExponentLedger(std::vector<cplx> symbol_values, int t_symbol = 0)
        : vals_(std::move(symbol_values)),
          halves_(vals_.size(), 0),
          t_sym_(t_symbol) {}

    // Multiply by [m]^{sign} where m is a monomial (t-power offset included
    // by giving the t symbol an exponent).
    void bracket(const Mono& m, bool denom = false) {
        for (auto [s, e] : m) halves_[static_cast<size_t>(s)] += denom ? e : -e;
        (denom ? th_den_ : th_num_).push_back(m);
    }

    // Multiply by [m]_k^{sign} = prod_{i<k} [t^i m]^{sign}.  Lengths are
    // always nonnegative on the support of the formulas handled here.
    void bracket_fact(const Mono& m, int k, bool denom = false) {
        if (k < 0) throw std::invalid_argument("ExponentLedger: negative factorial length");
        Mono cur = m;
        for (int i = 0; i < k; ++i) {
            bracket(cur, denom);
            ++cur[t_sym_];
            if (cur[t_sym_] == 0) cur.erase(t_sym_);
        }
    }

    // Multiply by an explicit monomial with integer exponents.
    void monomial(const Mono& m, bool denom = false) {
        for (auto [s, e] : m) halves_[static_cast<size_t>(s)] += denom ? -2 * e : 2 * e;
    }

    void negate() { sign_ = -sign_; }
    void sign_pow(long long k) { if (k & 1) negate(); }

    bool closable() const {
        for (long long h : halves_)
            if (h & 1) return false;
        return true;
    }

    cplx mono_value(const Mono& m) const {
        cplx v(1.0);
        for (auto [s, e] : m) v *= cpow_int(vals_[static_cast<size_t>(s)], e);
        return v;
    }

    cplx eval(cplx p, const Truncation& tr = {}) const {
        if (!closable())
            throw branch_error("ExponentLedger: accumulated half-exponents are not integral");
        cplx acc(static_cast<double>(sign_));
        for (size_t s = 0; s < vals_.size(); ++s)
            acc *= cpow_int(vals_[s], halves_[s] / 2);
        for (const Mono& m : th_num_) acc *= theta(mono_value(m), p, tr);
        for (const Mono& m : th_den_) acc /= theta(mono_value(m), p, tr);
        return acc;
    }

    // Evaluation with one fixed (principal) square root per symbol.  Unlike
    // taking a square root of the assembled monomial, this is exactly
    // multiplicative: products of ledgers evaluate to products of values, so
    // identities quadratic in non-closable factors still hold with a
    // consistent branch.
    cplx eval_halved(cplx p, const Truncation& tr = {}) const {
        cplx acc(static_cast<double>(sign_));
        for (size_t s = 0; s < vals_.size(); ++s) {
            long long h = halves_[s];
            acc *= cpow_int(vals_[s], h / 2);
            if (h % 2 != 0) {
                cplx root = std::sqrt(vals_[s]);
                acc *= (h > 0) ? root : cplx(1.0) / root;
            }
        }
        for (const Mono& m : th_num_) acc *= theta(mono_value(m), p, tr);
        for (const Mono& m : th_den_) acc /= theta(mono_value(m), p, tr);
        return acc;
    }

private:
    std::vector<cplx> vals_;
    std::vector<long long> halves_; // accumulated exponents in units of 1/2
    std::vector<Mono> th_num_, th_den_;
    int t_sym_;
    int sign_ = 1;
};

// Single bracket evaluated with the principal square root; only for
// diagnostics and branch-sensitivity tests, never inside formula code.
inline cplx bracket_principal(cplx u, cplx p, const Truncation& tr = {}) {
    return theta(u, p, tr) / std::sqrt(u);
}

} // namespace ehi

#endif
