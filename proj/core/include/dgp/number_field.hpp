#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dgp/rational.hpp"

namespace dgp {

/// Thrown when inversion in Q[x]/(m) meets a zero divisor; names the
/// discovered proper factor of m so the caller learns m was reducible.
class ZeroDivisorFault : public Fault {
public:
    ZeroDivisorFault(std::string what, std::vector<Rational> factor)
        : Fault(std::move(what)), factor_(std::move(factor)) {}

    /// Monic proper factor of the minimal polynomial, lowest degree first.
    const std::vector<Rational>& factor() const { return factor_; }

private:
    std::vector<Rational> factor_;
};

/// Simple extension Q[x]/(m(x)) for a monic m of degree >= 1. Irreducibility
/// is not checked up front; a reducible m surfaces lazily as ZeroDivisorFault.
class NumberField {
public:
    /// Coefficients lowest degree first; leading coefficient must be 1.
    explicit NumberField(std::vector<Rational> monic_min_poly);

    std::size_t degree() const { return min_poly_.size() - 1; }
    const std::vector<Rational>& min_poly() const { return min_poly_; }

private:
    std::vector<Rational> min_poly_;
};

/// Element of Q or of a NumberField. A null field pointer marks a plain
/// rational constant, which mixes freely with elements of any field.
class NFElem {
public:
    NFElem() : coeffs_{Rational(0)} {}
    NFElem(int n) : coeffs_{Rational(n)} {}
    NFElem(const Rational& r) : coeffs_{r} {}
    NFElem(std::shared_ptr<const NumberField> field, std::vector<Rational> coeffs);

    /// The residue class of x.
    static NFElem generator(std::shared_ptr<const NumberField> field);

    const std::shared_ptr<const NumberField>& field() const { return field_; }
    /// Coefficients lowest degree first; size degree(field), or 1 if rational.
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    /// The value as a rational; Fault if a generator coefficient is nonzero.
    Rational rational_value() const;

    NFElem operator-() const;
    friend NFElem operator+(const NFElem& a, const NFElem& b);
    friend NFElem operator-(const NFElem& a, const NFElem& b);
    friend NFElem operator*(const NFElem& a, const NFElem& b);
    friend NFElem operator/(const NFElem& a, const NFElem& b);
    NFElem& operator+=(const NFElem& b) { return *this = *this + b; }
    NFElem& operator-=(const NFElem& b) { return *this = *this - b; }
    NFElem& operator*=(const NFElem& b) { return *this = *this * b; }
    NFElem& operator/=(const NFElem& b) { return *this = *this / b; }
    friend bool operator==(const NFElem& a, const NFElem& b);
    friend bool operator!=(const NFElem& a, const NFElem& b) { return !(a == b); }

private:
    std::shared_ptr<const NumberField> field_; // null: rational constant
    std::vector<Rational> coeffs_;
};

/// Multiplicative inverse; Fault on zero, ZeroDivisorFault if the element is
/// a zero divisor (then m was reducible and the gcd factor is reported).
NFElem inv(const NFElem& a);

std::string nfelem_to_string(const NFElem& a);

namespace polyq {
// Dense polynomials over Q, lowest degree first, no trailing zeros
// (zero polynomial == empty vector). Shared by NFElem and the tests.
using Poly = std::vector<Rational>;
Poly trim(Poly p);
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, const Rational& c);
/// Quotient and remainder by a nonzero divisor.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly make_monic(const Poly& a);
/// Monic gcd.
Poly gcd(Poly a, Poly b);
/// (g, s, t) with g = gcd monic and s*a + t*b = g.
std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b);
} // namespace polyq

} // namespace dgp
