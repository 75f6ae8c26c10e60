#include "dgp/number_field.hpp"

#include <sstream>

namespace dgp {

Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw Fault("scalar: empty string");
    if (s.find('.') != std::string::npos)
        throw Fault("scalar: decimal notation rejected, use p/q: '" + s + "'");
    auto parse_int = [](const std::string& t) -> Integer {
        if (t.empty()) throw Fault("scalar: empty integer part");
        std::size_t k = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (k == t.size()) throw Fault("scalar: sign without digits: '" + t + "'");
        for (; k < t.size(); ++k)
            if (t[k] < '0' || t[k] > '9')
                throw Fault("scalar: invalid character in integer: '" + t + "'");
        return Integer(t);
    };
    std::size_t slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_int(s));
    Integer num = parse_int(s.substr(0, slash));
    Integer den = parse_int(s.substr(slash + 1));
    if (den == 0) throw Fault("scalar: zero denominator: '" + s + "'");
    return Rational(num) / Rational(den);
}

std::string rational_to_string(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

namespace polyq {

Poly trim(Poly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return trim(std::move(r));
}

Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return trim(std::move(r));
}

Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return trim(std::move(r));
}

Poly scale(const Poly& a, const Rational& c) {
    if (c == 0) return {};
    Poly r = a;
    for (auto& x : r) x *= c;
    return trim(std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (trim(b).empty()) throw Fault("polynomial division by zero");
    Poly rem = trim(a);
    Poly div = trim(b);
    if (rem.size() < div.size()) return {Poly{}, std::move(rem)};
    Poly quot(rem.size() - div.size() + 1, Rational(0));
    for (std::size_t idx = rem.size(); idx-- > div.size() - 1;) {
        if (rem[idx] == 0) continue;
        std::size_t shift = idx - (div.size() - 1);
        Rational q = rem[idx] / div.back();
        quot[shift] = q;
        for (std::size_t i = 0; i < div.size(); ++i) rem[shift + i] -= q * div[i];
    }
    return {trim(std::move(quot)), trim(std::move(rem))};
}

Poly make_monic(const Poly& a) {
    if (a.empty()) return {};
    return scale(a, Rational(1) / a.back());
}

Poly gcd(Poly a, Poly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        Poly r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(a);
}

std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
    // Invariants: r0 = s0*a + t0*b, r1 = s1*a + t1*b.
    Poly r0 = trim(a), r1 = trim(b);
    Poly s0{Rational(1)}, s1{};
    Poly t0{}, t1{Rational(1)};
    while (!r1.empty()) {
        auto [q, r] = divmod(r0, r1);
        Poly s2 = sub(s0, mul(q, s1));
        Poly t2 = sub(t0, mul(q, t1));
        r0 = std::move(r1); r1 = std::move(r);
        s0 = std::move(s1); s1 = std::move(s2);
        t0 = std::move(t1); t1 = std::move(t2);
    }
    if (r0.empty()) return {Poly{}, Poly{}, Poly{}};
    Rational lead = r0.back();
    return {make_monic(r0), scale(s0, Rational(1) / lead),
            scale(t0, Rational(1) / lead)};
}

} // namespace polyq

NumberField::NumberField(std::vector<Rational> monic_min_poly)
    : min_poly_(std::move(monic_min_poly)) {
    if (min_poly_.size() < 2)
        throw Fault("number field: minimal polynomial must have degree >= 1");
    if (min_poly_.back() != 1)
        throw Fault("number field: minimal polynomial must be monic");
}

namespace {

std::string poly_to_string(const std::vector<Rational>& p) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) os << ", ";
        os << rational_to_string(p[i]);
    }
    os << "]";
    return os.str();
}

void check_same_field(const NFElem& a, const NFElem& b) {
    if (a.field() && b.field() &&
        a.field()->min_poly() != b.field()->min_poly())
        throw Fault("number field: mixing elements of different extensions");
}

const std::shared_ptr<const NumberField>& pick_field(const NFElem& a,
                                                     const NFElem& b) {
    return a.field() ? a.field() : b.field();
}

std::vector<Rational> padded(const NFElem& e, std::size_t n) {
    std::vector<Rational> c = e.coeffs();
    c.resize(std::max(c.size(), n), Rational(0));
    return c;
}

} // namespace

NFElem::NFElem(std::shared_ptr<const NumberField> field,
               std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (!field_) throw Fault("number field element: null field");
    if (coeffs_.size() > field_->degree()) {
        // Reduce modulo the minimal polynomial.
        coeffs_ = polyq::divmod(coeffs_, field_->min_poly()).second;
    }
    coeffs_.resize(field_->degree(), Rational(0));
}

NFElem NFElem::generator(std::shared_ptr<const NumberField> field) {
    if (!field) throw Fault("number field generator: null field");
    if (field->degree() == 1) {
        // Q[x]/(x - a): the residue class of x is the rational root itself.
        return NFElem(field, {-field->min_poly()[0]});
    }
    std::vector<Rational> c(field->degree(), Rational(0));
    c[1] = Rational(1);
    return NFElem(field, std::move(c));
}

bool NFElem::is_zero() const {
    for (const auto& c : coeffs_)
        if (c != 0) return false;
    return true;
}

bool NFElem::is_rational() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        if (coeffs_[i] != 0) return false;
    return true;
}

Rational NFElem::rational_value() const {
    if (!is_rational())
        throw Fault("number field element is not rational: " +
                    nfelem_to_string(*this));
    return coeffs_.empty() ? Rational(0) : coeffs_[0];
}

NFElem NFElem::operator-() const {
    NFElem r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
}

NFElem operator+(const NFElem& a, const NFElem& b) {
    check_same_field(a, b);
    const auto& f = pick_field(a, b);
    std::size_t n = f ? f->degree() : 1;
    std::vector<Rational> c = padded(a, n);
    std::vector<Rational> d = padded(b, n);
    for (std::size_t i = 0; i < n; ++i) c[i] += d[i];
    if (!f) return NFElem(c[0]);
    return NFElem(f, std::move(c));
}

NFElem operator-(const NFElem& a, const NFElem& b) { return a + (-b); }

NFElem operator*(const NFElem& a, const NFElem& b) {
    check_same_field(a, b);
    const auto& f = pick_field(a, b);
    std::vector<Rational> prod = polyq::mul(a.coeffs(), b.coeffs());
    if (!f) return NFElem(prod.empty() ? Rational(0) : prod[0]);
    return NFElem(f, std::move(prod));
}

NFElem inv(const NFElem& a) {
    if (a.is_zero()) throw Fault("number field: inverse of zero");
    if (!a.field()) return NFElem(Rational(1) / a.coeffs()[0]);
    const auto& m = a.field()->min_poly();
    auto [g, s, t] = polyq::xgcd(polyq::trim(a.coeffs()), m);
    (void)t;
    if (g.size() != 1) {
        // gcd(a, m) is a proper factor of m: m was reducible and a is a
        // zero divisor in Q[x]/(m).
        throw ZeroDivisorFault(
            "number field: zero divisor; minimal polynomial has factor " +
                poly_to_string(g),
            g);
    }
    // s*a + t*m = 1, so s is the inverse modulo m.
    return NFElem(a.field(), std::move(s));
}

NFElem operator/(const NFElem& a, const NFElem& b) { return a * inv(b); }

bool operator==(const NFElem& a, const NFElem& b) {
    check_same_field(a, b);
    std::size_t n = std::max(a.coeffs().size(), b.coeffs().size());
    return padded(a, n) == padded(b, n);
}

std::string nfelem_to_string(const NFElem& a) {
    if (!a.field()) return rational_to_string(a.coeffs()[0]);
    return poly_to_string(a.coeffs());
}

} // namespace dgp
