#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "nodal/errors.hpp"

namespace nodal {

/// Exact rational scalar. GMP keeps results of arithmetic in lowest terms
/// with positive denominator as long as the operands are canonical, so the
/// constructors below are the only places that need an explicit
/// canonicalize().
using Scalar = mpq_class;

inline Scalar scalar(long num, long den = 1) {
    if (den == 0) throw DomainError("scalar: zero denominator");
    Scalar q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "num/den" or a bare integer, both in decimal.
inline Scalar parse_scalar(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Scalar q(text);
            q.canonicalize();
            return q;
        }
        Scalar q(text.substr(0, slash) + "/" + text.substr(slash + 1));
        if (q.get_den() == 0) throw ParseError("parse_scalar: zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        throw ParseError("parse_scalar: malformed rational '" + text + "'");
    }
}

/// Always prints the canonical "num/den" form, e.g. "3/2", "-1/1", "0/1".
inline std::string scalar_string(const Scalar& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Rational square root, when one exists.
inline std::optional<Scalar> scalar_sqrt(const Scalar& q) {
    if (q < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t()))
        return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    Scalar r(rn, rd);
    r.canonicalize();
    return r;
}

inline Scalar factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Scalar(f);
}

} // namespace nodal
