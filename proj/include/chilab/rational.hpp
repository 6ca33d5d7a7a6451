#ifndef CHILAB_RATIONAL_HPP
#define CHILAB_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "chilab/errors.hpp"

namespace chilab {

// All threshold and density comparisons in this project are exact.
// Rat is an arbitrary-precision rational; Int an arbitrary-precision integer.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw ParameterError("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// q^e for integer e (negative allowed; q must be nonzero then).
inline Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Rat base = q;
    if (inv) {
        if (q == 0) throw ParameterError("0 raised to a negative power");
        base = Rat(1) / q;
    }
    Rat out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), k);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), k);
    out.canonicalize();
    return out;
}

inline Int int_pow(const Int& b, unsigned long e) {
    Int out;
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
    return out;
}

inline Int binom(unsigned long n, unsigned long k) {
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

inline Int rat_ceil(const Rat& q) {
    Int out;
    mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

inline Int rat_floor(const Rat& q) {
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return out;
}

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw CapabilityError("integer does not fit in a machine word: " + z.get_str());
    return z.get_si();
}

// Ceiling clamped into [lo, hi]; used for "at least d children" demands where
// d may be astronomically large but only the comparison against a small count matters.
inline long ceil_clamped(const Rat& q, long lo, long hi) {
    Int c = rat_ceil(q);
    if (c < lo) return lo;
    if (c > hi) return hi;
    return to_long(c);
}

inline std::string rat_str(const Rat& q) { return q.get_str(); }

// Parses "p", "p/q" with optional sign. Throws ParameterError on junk.
inline Rat parse_rat(const std::string& text) {
    Rat r;
    if (text.empty() || r.set_str(text, 10) != 0) throw ParameterError("not a rational: '" + text + "'");
    if (r.get_den() == 0) throw ParameterError("rational with zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

} // namespace chilab

#endif
