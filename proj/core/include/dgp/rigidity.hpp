#pragma once

#include <map>

#include "dgp/torsor.hpp"

namespace dgp {

/// Gram matrix of a bilinear pairing with its exact perfectness verdict.
struct Pairing {
    QMat gram;
    bool perfect = false;
};

/// Faults unless the matrix is square.
Pairing make_pairing(QMat gram);

/// True iff the Gram matrix has full rank. Faults unless square.
bool perfect_duality_check(const QMat& a);

/// Polynomial in the entries X_{st} of an n x n matrix of variables:
/// monomial -> coefficient, where a monomial is the sorted multiset of
/// entry positions (row, col) and the empty monomial is the constant term.
using MatrixPolynomial =
    std::map<std::vector<std::pair<std::size_t, std::size_t>>, Rational>;

Rational evaluate(const MatrixPolynomial& p, const QMat& x);

/// The quadratic constraints cutting out the isometry group of a perfect
/// pairing: for each (i, j) the entry sum_{r,r'} X_{ri} X_{r'j} a_{rr'}
/// - a_{ij} of X^t A X - A.
struct IsometryEquations {
    std::size_t n = 0;
    /// One equation per (i, j) in row-major order, n^2 in total.
    std::vector<MatrixPolynomial> equations;
    /// Deduplicated nonzero equations in first-appearance order.
    std::vector<MatrixPolynomial> distinct;
};

/// Faults when A is singular or not square.
IsometryEquations isometry_equations(const QMat& a);

bool satisfies_isometry_equations(const IsometryEquations& eqs, const QMat& x);

/// The closed-form candidate inverse Y = A^{-1} X^t A. When X satisfies
/// X^t A X = A the two-sided inverse law Y X = X Y = I is forced and is
/// verified exactly; a failure there raises InternalError.
struct IsometryInverseReport {
    QMat y;
    /// Whether X^t A X = A held for the given X.
    bool hypothesis = false;
    /// Verified only when the hypothesis holds.
    bool two_sided_inverse = false;
};

/// Faults when A is singular or the shapes do not match.
IsometryInverseReport isometry_inverse(const QMat& a, const QMat& x);

/// Finite monoid of matrices: verifies closure and the identity member,
/// then recovers every inverse inside the set by the stabilizing chain
/// M >= gM >= g^2 M ... (immediate at finite scale, since an invertible g
/// maps the finite set M injectively into itself).
struct MonoidGroupReport {
    bool closed = false;
    bool has_identity = false;
    bool is_group = false;
    /// Index of g^{-1} within the input list, parallel to it.
    std::vector<std::size_t> inverse_index;
    Report violations;

    bool ok() const {
        return closed && has_identity && is_group && violations.ok();
    }
};

/// Faults when the list is empty, shapes are mixed, or a member is
/// singular (the lemma's hypotheses speak about invertible points only);
/// closure or identity failures are reported, not thrown.
MonoidGroupReport monoid_is_group(const std::vector<QMat>& m);

/// The regular representation: each group element as the permutation
/// matrix of its left translation, a multiplicatively closed set of
/// invertible matrices containing the identity.
std::vector<QMat> regular_representation(const FiniteGroup& g);

/// The symmetric extension of a perfect pairing Q : V (x) W -> R to
/// V (+) W, as the block matrix [[0, Q], [Q^t, 0]]. Faults unless Q is
/// square and perfect; the result is re-verified perfect.
QMat symmetric_extension(const QMat& q);

/// Block diagonal sum of two Gram matrices.
QMat orthogonal_sum(const QMat& a1, const QMat& a2);

} // namespace dgp
