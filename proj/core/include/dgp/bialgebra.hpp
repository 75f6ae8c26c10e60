#pragma once

#include <optional>

#include "dgp/end_algebra.hpp"

namespace dgp {

/// Mixed comultiplication data between named subdiagrams: the matrix of
/// End(T|F') -> End(T|F) (x) End(T|G) that reads each basis element's
/// component at every product vertex f x g through tau_{(f,g)}. Faults when
/// a product or tau is missing, or when some component fails to lie in the
/// span of the b_i (x) c_j (well-definedness).
struct MuStar {
    std::vector<VertexId> F, G, Fprime;
    EndAlgebraData end_left, end_right, end_prod;
    /// Shape (dim End F * dim End G) x dim End F', row (i,j) with j fastest.
    QMat mu;
};

MuStar mu_star(const Diagram& d, const ProductStructure& p,
               const GradedRepresentation& t, const std::vector<VertexId>& F,
               const std::vector<VertexId>& G,
               const std::vector<VertexId>& Fprime);

/// Bialgebra laws for the pair (F, F'). A check is skipped (left empty, not
/// failed) when its data is out of scope: the counit laws need the unit
/// vertex inside F and F inside F'; coassociativity needs a third level,
/// either supplied or F' itself when F' is product-closed.
struct BialgebraReport {
    std::vector<VertexId> F, Fprime;
    /// End(T|F') -> End(T|F) (x) End(T|F).
    QMat mu;
    /// The dual reading, A(F) (x) A(F) -> A(F'): the transpose of mu.
    QMat a_mult;
    bool well_defined = false;
    bool cocommutative = false;
    std::optional<QVec> counit;
    std::optional<bool> counit_law;
    std::optional<bool> coassociative;
    Report violations;

    bool ok() const {
        return well_defined && cocommutative && counit_law.value_or(true) &&
               coassociative.value_or(true) && violations.ok();
    }
};

BialgebraReport comultiplication(
    const Diagram& d, const ProductStructure& p, const GradedRepresentation& t,
    const std::vector<VertexId>& F, const std::vector<VertexId>& Fprime,
    const std::optional<std::vector<VertexId>>& Fsecond = std::nullopt);

/// The coordinate projection onto the block of the unit vertex, as a
/// functional on End(T|F); Faults unless that block is a line.
QVec counit_functional(const EndAlgebraData& e, const VertexId& unit_vertex);

} // namespace dgp
