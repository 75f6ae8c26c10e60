#pragma once

#include "dgp/localization.hpp"

namespace dgp {

/// A diagram with product structure and a graded representation, bundled for
/// tests and the fixture emitter.
struct GradedFixture {
    Diagram d;
    ProductStructure p;
    GradedRepresentation t;
};

/// Product tower on a single generator f over the unit vertex: vertices
/// one, f, ff = f x f, f(ff), (ff)f, (ff)(ff), all lines. Every commutator,
/// associator and unit edge is a scalar chosen to satisfy the graded axioms;
/// flip_commutator_sign negates the f x f commutator so sign-sensitive
/// checks have a failing counterpart.
GradedFixture scalar_tower_fixture(int grade_f,
                                   bool flip_commutator_sign = false);

/// The same tower with dim T(f) = 2 and a configurable isomorphism
/// tau_{(f,f)}; products of the commutator edge with identities are
/// materialized so the deeper endomorphism spaces stay inside the tensor
/// spans. With deep = false the tower stops at {one, f, ff}.
GradedFixture matrix_tower_fixture(int grade_f, const QMat& tau_ff,
                                   bool flip_commutator_sign = false,
                                   bool deep = true);

/// One product vertex ff = f x f with dim T(f) = 2 and a diagonal loop at
/// f. With symmetric = true both id x gam and gam x id exist at ff, so
/// End(T(ff)) equals the span of the tensor products and the
/// comultiplication is well defined; with symmetric = false only gam x id
/// exists and the membership solve must fail.
GradedFixture constrained_product_fixture(bool symmetric = true);

/// Unit chain one, f0, f0^2, f0^3 of lines with left-multiplication
/// products by f0: the smallest fixture on which consecutive coalgebra
/// transitions compose. A nonzero lambda adds an edge one -> f0 acting by
/// that scalar.
GradedFixture unit_chain_fixture(const Rational& lambda = Rational(0));

/// Two base vertices f0 (a line) and g (dim 2, with a diagonal loop) and
/// their products with f0; tau_{(g, f0)} is a nontrivial change of basis,
/// so twist matrices in the localization are not identities.
GradedFixture twisted_pair_fixture();

} // namespace dgp
