#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace lyapdual {

// Exact rational scalar. All certificate arithmetic is done in Rat; floating
// point never enters the solver or the verifiers.
using Rat = mpq_class;
using Int = mpz_class;

// Canonical "p/q" in lowest terms, "p" when the denominator is 1.
inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

// Accepts "p" or "p/q" with q > 0 after canonicalization.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw std::invalid_argument("bad rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

inline bool rat_is_integer(const Rat& q) { return q.get_den() == 1; }

// Largest integer <= q.
inline Int rat_floor(const Rat& q) {
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

// Representative in [0, 1).
inline Rat rat_mod1(const Rat& q) {
    Rat r = q - Rat(rat_floor(q));
    r.canonicalize();
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// Least common multiple of the denominators, >= 1.
inline Int denominator_lcm(const std::vector<Rat>& vals) {
    Int m = 1;
    for (const Rat& v : vals) m = lcm(m, Int(v.get_den()));
    return m;
}

}  // namespace lyapdual
