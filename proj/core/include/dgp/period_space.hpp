#pragma once

#include <optional>

#include "dgp/bialgebra.hpp"

namespace dgp {

/// Generators-and-relations model of the space of formal period matrices
/// between two representations: ambient (+)_p T1(p) (x) T2(p)^v, one vector
/// per non-identity edge and basis pair spanning the change-of-variables
/// relations, and the quotient with deterministic echelon representatives.
struct PeriodSpace {
    std::vector<VertexId> F;
    /// Block per vertex, dim1(p) x dim2(p) flattened row-major: index
    /// (i, j) -> i * dim2(p) + j represents omega_i (x) gamma_j.
    BlockLayout layout;
    SubspaceBasis<Rational> relations;
    QuotientPresentation<Rational> quotient;

    std::size_t dim() const { return quotient.dim(); }
};

PeriodSpace period_space(const Diagram& d, const Representation& t1,
                         const Representation& t2,
                         const std::vector<VertexId>& F);

/// The relation vector of an edge f: p -> q with matrices m1 = T1(f) and
/// m2 = T2(f), at omega in T1(p) and gamma in T2(q)^v (coordinates):
/// m1 omega (x) gamma at the q block minus omega (x) gamma m2 at the p
/// block. The stored basis uses coordinate vectors; arbitrary omega and
/// gamma support checking that the span does not depend on that choice.
QVec period_relation(const PeriodSpace& ps, const QMat& m1, const QMat& m2,
                     const VertexId& p, const VertexId& q, const QVec& omega,
                     const QVec& gamma);

/// The evaluation pairing Psi(p, omega, gamma)(phi) = gamma(phi(p)(omega))
/// from the period quotient onto the dual of the intertwiner space, with
/// the bijectivity verdict computed from two independent dimension routes
/// (quotient rank versus kernel rank) plus invertibility.
struct PsiReport {
    IntertwinerSpace hom;
    PeriodSpace periods;
    /// dim Hom x ambient: Psi on raw generators.
    QMat psi_ambient;
    /// dim Hom x dim P: Psi on the quotient representatives.
    QMat psi;
    bool dims_match = false;
    bool bijective = false;
    Report violations;

    bool ok() const { return dims_match && bijective && violations.ok(); }
};

PsiReport psi_map(const Diagram& d, const Representation& t1,
                  const Representation& t2, const std::vector<VertexId>& F);

/// Mixed comultiplication for intertwiner spaces between two graded
/// representations, reading components at product vertices through the
/// pair (tau1, tau2); the same shape as mu_star with End replaced by Hom.
struct HomMuStar {
    std::vector<VertexId> F, G, Fprime;
    IntertwinerSpace left, right, prod;
    QMat mu;
};

HomMuStar hom_mu_star(const Diagram& d, const ProductStructure& p,
                      const GradedRepresentation& t1,
                      const GradedRepresentation& t2,
                      const std::vector<VertexId>& F,
                      const std::vector<VertexId>& G,
                      const std::vector<VertexId>& Fprime);

/// The period product P(F) (x) P(F) -> P(F') on generators:
/// (p, omega, gamma)(p', omega', gamma') = (p x p', omega (x) omega' read
/// through tau1^{-1}, gamma (x) gamma' read through tau2^v).
struct PeriodProductReport {
    PeriodSpace base, target; // P(F) and P(F')
    /// dim P(F') x dim P(F)^2 on quotient classes, second index fastest.
    QMat mult;
    bool well_defined = false;
    /// Checked when every vertex of F has even grade.
    std::optional<bool> commutative;
    bool psi_multiplicative = false;
    Report violations;

    bool ok() const {
        return well_defined && commutative.value_or(true) &&
               psi_multiplicative && violations.ok();
    }
};

PeriodProductReport period_product(const Diagram& d, const ProductStructure& p,
                                   const GradedRepresentation& t1,
                                   const GradedRepresentation& t2,
                                   const std::vector<VertexId>& F,
                                   const std::vector<VertexId>& Fprime);

/// Coactions of A1 = End(T1|F)^v and A2 on A12 = Hom(T1|F,T2|F)^v, dual to
/// pre- and post-composition, with counit, coassociativity and bicomodule
/// compatibility checked exactly.
struct PeriodCoactions {
    std::size_t n1 = 0, n12 = 0, n2 = 0;
    /// (n1 * n12) x n12, rows (k1, k) with k fastest.
    QMat left;
    /// (n12 * n2) x n12, rows (k, k2) with k2 fastest.
    QMat right;
    Report laws;

    bool ok() const { return laws.ok(); }
};

PeriodCoactions period_coactions(const Diagram& d, const Representation& t1,
                                 const Representation& t2,
                                 const std::vector<VertexId>& F);

} // namespace dgp
