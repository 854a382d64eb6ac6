#ifndef EHI_COMBI_HPP
#define EHI_COMBI_HPP

// Compositions of n into s nonnegative parts and the basis order used for
// all transition matrices: graded lexicographic on the first s-1 parts,
// which refines the componentwise partial order on those parts.

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "core.hpp"

namespace ehi {

using Composition = std::vector<int>;

inline long long binom(long long a, long long b) {
    if (b < 0) return 0;
    if (b == 0) return 1;
    if (a < b) return 0;
    b = std::min(b, a - b);
    long long r = 1;
    for (long long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
}

inline int comp_weight(const Composition& mu) {
    return std::accumulate(mu.begin(), mu.end(), 0);
}

// All s-part compositions of n, sorted by graded lex on the first s-1 parts.
class IndexedBasisOrder {
public:
    IndexedBasisOrder(int s, int n) : s_(s), n_(n) {
        if (s < 1 || n < 0) throw std::invalid_argument("IndexedBasisOrder: bad (s,n)");
        Composition cur(static_cast<size_t>(s), 0);
        gen(cur, 0, n);
        std::stable_sort(elems_.begin(), elems_.end(),
                         [s](const Composition& a, const Composition& b) {
                             int ga = a[static_cast<size_t>(s) - 1];
                             int gb = b[static_cast<size_t>(s) - 1];
                             if (ga != gb) return ga > gb; // smaller head-weight first
                             return a < b;
                         });
        for (size_t i = 0; i < elems_.size(); ++i) pos_[elems_[i]] = i;
    }

    int s() const { return s_; }
    int n() const { return n_; }
    size_t size() const { return elems_.size(); }
    const Composition& operator[](size_t i) const { return elems_[i]; }
    const std::vector<Composition>& all() const { return elems_; }
    size_t index(const Composition& mu) const {
        auto it = pos_.find(mu);
        if (it == pos_.end()) throw std::invalid_argument("IndexedBasisOrder: not a member");
        return it->second;
    }

private:
    void gen(Composition& cur, int k, int rem) {
        if (k == s_ - 1) {
            cur[static_cast<size_t>(k)] = rem;
            elems_.push_back(cur);
            return;
        }
        for (int v = 0; v <= rem; ++v) {
            cur[static_cast<size_t>(k)] = v;
            gen(cur, k + 1, rem - v);
        }
    }

    int s_, n_;
    std::vector<Composition> elems_;
    std::map<Composition, size_t> pos_;
};

inline std::vector<Composition> enumerate_compositions(int s, int n) {
    return IndexedBasisOrder(s, n).all();
}

// Componentwise comparison of the first s-1 parts ("head" of the composition).
inline bool head_leq(const Composition& mu, const Composition& nu) {
    for (size_t i = 0; i + 1 < mu.size(); ++i)
        if (mu[i] > nu[i]) return false;
    return true;
}

// Reference point (c)_{t,mu}: the concatenation of geometric progressions
// (c_i, t c_i, ..., t^{mu_i - 1} c_i) for i = 1..s.
inline std::vector<cplx> reference_point(const std::vector<cplx>& c, const Composition& mu,
                                         cplx t) {
    if (c.size() < mu.size()) throw std::invalid_argument("reference_point: size mismatch");
    std::vector<cplx> z;
    z.reserve(static_cast<size_t>(comp_weight(mu)));
    for (size_t i = 0; i < mu.size(); ++i) {
        cplx v = c[i];
        for (int k = 0; k < mu[i]; ++k) {
            z.push_back(v);
            v *= t;
        }
    }
    return z;
}

// Multiplicity exponents appearing in the closed-form determinants:
//   face exponent  C(n-i+r-2, r-1),   edge exponent  C(n-i-j+r-3, r-2).
inline long long face_mult(int n, int i, int r) { return binom(n - i + r - 2, r - 1); }
inline long long edge_mult(int n, int i, int j, int r) { return binom(n - i - j + r - 3, r - 2); }

} // namespace ehi

#endif
