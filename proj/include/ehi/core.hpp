#ifndef EHI_CORE_HPP
#define EHI_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace ehi {

using cplx = std::complex<double>;

struct truncation_error : std::runtime_error {
    double achieved;
    truncation_error(const std::string& msg, double bound)
        : std::runtime_error(msg), achieved(bound) {}
};

struct pole_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct region_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct branch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct convergence_error : std::runtime_error {
    cplx last, previous;
    convergence_error(const std::string& msg, cplx a, cplx b)
        : std::runtime_error(msg), last(a), previous(b) {}
};

// Truncation policy for infinite products.
struct Truncation {
    double rel_eps = 1e-15;
    int max_index = 512;
};

// The triple of nomes (p, q, t), all inside the unit disk.
struct Bases {
    cplx p, q, t;
    Bases(cplx p_, cplx q_, cplx t_) : p(p_), q(q_), t(t_) {
        if (std::abs(p) >= 1.0 || std::abs(q) >= 1.0 || std::abs(t) >= 1.0)
            throw std::invalid_argument("Bases: |p|, |q|, |t| must all be < 1");
    }
};

constexpr double kPoleEps = 1e-10;

// u^k for integer k (k of either sign).
inline cplx cpow_int(cplx u, long long k) {
    if (k == 0) return cplx(1.0);
    bool neg = k < 0;
    unsigned long long e = neg ? static_cast<unsigned long long>(-k)
                               : static_cast<unsigned long long>(k);
    cplx acc(1.0), base = u;
    while (e) {
        if (e & 1ull) acc *= base;
        base *= base;
        e >>= 1;
    }
    return neg ? cplx(1.0) / acc : acc;
}

} // namespace ehi

#endif
