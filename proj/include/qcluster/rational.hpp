#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qcluster {

using Rational = mpq_class;
using Integer = mpz_class;

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& x)
{
    return x.get_str();
}

inline Rational parse_rational(const std::string& text)
{
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0)
        throw std::invalid_argument("not a rational: '" + text + "'");
    if (r.get_den() == 0)
        throw std::invalid_argument("zero denominator: '" + text + "'");
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& x)
{
    return x.get_den() == 1;
}

/// Exact conversion; throws unless x is an integer fitting in long.
inline long to_long(const Rational& x)
{
    if (!is_integer(x))
        throw std::domain_error("expected an integer, got " + x.get_str());
    if (!x.get_num().fits_slong_p())
        throw std::overflow_error("integer out of range: " + x.get_str());
    return x.get_num().get_si();
}

} // namespace qcluster
