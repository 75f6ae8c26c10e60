#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

#include "dgp/common.hpp"

namespace dgp {

/// Exact rational scalar. Always stored canonically reduced with positive
/// denominator (GMP maintains this under arithmetic).
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Parses "p" or "p/q" with optional leading '-'. Decimal notation is a
/// fault: serialized scalars are exact by contract.
Rational rational_from_string(const std::string& s);

/// Formats canonically: "p" when the denominator is 1, else "p/q".
std::string rational_to_string(const Rational& x);

} // namespace dgp
