#pragma once

#include <optional>
#include <vector>

#include "dgp/matrix.hpp"

namespace dgp {

/// Subspace of K^ambient held in canonical reduced echelon form: basis rows
/// have strictly increasing pivot columns, pivots are 1 with zeros above and
/// below. Two equal subspaces produce identical objects.
template <FieldScalar K>
struct SubspaceBasis {
    std::size_t ambient = 0;
    std::vector<std::vector<K>> vecs;
    std::vector<std::size_t> pivots;

    std::size_t dim() const { return vecs.size(); }

    /// v minus its projection onto the basis along pivot coordinates; the
    /// result has zeros at all pivot positions. Linear in v.
    std::vector<K> reduce(std::vector<K> v) const {
        for (std::size_t k = 0; k < vecs.size(); ++k) {
            K c = v[pivots[k]];
            if (c == K(0)) continue;
            for (std::size_t j = 0; j < ambient; ++j)
                v[j] = v[j] - c * vecs[k][j];
        }
        return v;
    }

    bool contains(const std::vector<K>& v) const {
        std::vector<K> r = reduce(v);
        for (const K& x : r)
            if (!(x == K(0))) return false;
        return true;
    }

    /// Coordinates of v in the basis, or nullopt if v lies outside.
    std::optional<std::vector<K>> coordinates(const std::vector<K>& v) const {
        std::vector<K> coef(vecs.size(), K(0));
        std::vector<K> r = v;
        for (std::size_t k = 0; k < vecs.size(); ++k) {
            coef[k] = r[pivots[k]];
            if (coef[k] == K(0)) continue;
            for (std::size_t j = 0; j < ambient; ++j)
                r[j] = r[j] - coef[k] * vecs[k][j];
        }
        for (const K& x : r)
            if (!(x == K(0))) return std::nullopt;
        return coef;
    }
};

/// Canonicalizes a generating set: echelonizes, drops zero rows.
template <FieldScalar K>
SubspaceBasis<K> make_subspace(std::size_t ambient,
                               const std::vector<std::vector<K>>& gens) {
    Mat<K> m(gens.size(), ambient);
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].size() != ambient)
            throw InternalError("make_subspace: ambient mismatch");
        for (std::size_t j = 0; j < ambient; ++j) m(i, j) = gens[i][j];
    }
    std::vector<std::size_t> piv = rref(m);
    SubspaceBasis<K> s;
    s.ambient = ambient;
    s.pivots = piv;
    for (std::size_t k = 0; k < piv.size(); ++k) s.vecs.push_back(m.row(k));
    return s;
}

/// Canonical kernel basis of m: the standard free-variable vectors of the
/// reduced echelon form, re-echelonized into a SubspaceBasis.
template <FieldScalar K>
SubspaceBasis<K> kernel_basis(Mat<K> m) {
    std::size_t n = m.cols();
    std::vector<std::size_t> piv = rref(m);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : piv) is_pivot[c] = true;
    std::vector<std::vector<K>> gens;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        std::vector<K> v(n, K(0));
        v[j] = K(1);
        for (std::size_t k = 0; k < piv.size(); ++k)
            v[piv[k]] = K(0) - m(k, j);
        gens.push_back(std::move(v));
    }
    return make_subspace(n, gens);
}

/// Presentation of a quotient U/W (W a subspace of U inside K^ambient) with
/// deterministic representatives: reduce U's basis modulo W, echelonize, and
/// read classes off the surviving pivot coordinates.
template <FieldScalar K>
struct QuotientPresentation {
    std::size_t ambient = 0;
    SubspaceBasis<K> denominator;
    std::vector<std::vector<K>> reps;
    std::vector<std::size_t> rep_pivots;

    std::size_t dim() const { return reps.size(); }

    /// Coordinates of the class [v]; Fault if v does not lie in U.
    std::vector<K> coords(const std::vector<K>& v) const {
        std::vector<K> r = denominator.reduce(v);
        std::vector<K> coef(reps.size(), K(0));
        for (std::size_t k = 0; k < reps.size(); ++k) {
            coef[k] = r[rep_pivots[k]];
            if (coef[k] == K(0)) continue;
            for (std::size_t j = 0; j < ambient; ++j)
                r[j] = r[j] - coef[k] * reps[k][j];
        }
        for (const K& x : r)
            if (!(x == K(0)))
                throw Fault("quotient coords: vector outside the presented space");
        return coef;
    }
};

/// Quotient of span(numerator basis) by span(denominator); the denominator
/// must be contained in the numerator's span.
template <FieldScalar K>
QuotientPresentation<K> quotient_of(const SubspaceBasis<K>& numerator,
                                    const SubspaceBasis<K>& denominator) {
    if (numerator.ambient != denominator.ambient)
        throw InternalError("quotient_of: ambient mismatch");
    for (const auto& w : denominator.vecs)
        if (!numerator.contains(w))
            throw Fault("quotient_of: denominator not contained in numerator");
    std::vector<std::vector<K>> reduced;
    for (const auto& u : numerator.vecs)
        reduced.push_back(denominator.reduce(u));
    SubspaceBasis<K> q = make_subspace(numerator.ambient, reduced);
    QuotientPresentation<K> p;
    p.ambient = numerator.ambient;
    p.denominator = denominator;
    p.reps = q.vecs;
    p.rep_pivots = q.pivots;
    return p;
}

/// Quotient of the full ambient space by span(relations).
template <FieldScalar K>
QuotientPresentation<K> quotient_of_ambient(std::size_t ambient,
                                            const SubspaceBasis<K>& relations) {
    std::vector<std::vector<K>> eye;
    for (std::size_t i = 0; i < ambient; ++i) {
        std::vector<K> v(ambient, K(0));
        v[i] = K(1);
        eye.push_back(std::move(v));
    }
    return quotient_of(make_subspace(ambient, eye), relations);
}

} // namespace dgp
