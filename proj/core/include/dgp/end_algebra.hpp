#pragma once

#include <memory>

#include "dgp/diagram.hpp"
#include "dgp/subspace.hpp"

namespace dgp {

/// Coordinate layout for tuples (e_p)_{p in F} of matrices, one block per
/// vertex in sorted order, each flattened row-major.
struct BlockLayout {
    struct Block {
        VertexId v;
        std::size_t rows = 0, cols = 0, offset = 0;
    };
    std::vector<Block> blocks;
    std::size_t total = 0;

    const Block& block(const VertexId& v) const;
    bool has_block(const VertexId& v) const;
};

BlockLayout make_layout(const std::vector<VertexId>& verts,
                        const Representation& row_rep,
                        const Representation& col_rep);

/// Space of tuples (e_p) with e_q T1(m) = T2(m) e_p for every edge m: p -> q
/// of the full subdiagram on F; elements live in Q^{layout.total} and the
/// basis is canonical echelon. T1 = T2 gives the endomorphism algebra.
struct IntertwinerSpace {
    std::vector<VertexId> verts; // sorted, deduplicated
    BlockLayout layout;
    SubspaceBasis<Rational> basis;

    std::size_t dim() const { return basis.dim(); }
    /// Block of an ambient vector at a vertex, as a matrix.
    QMat block_of(const QVec& ambient, const VertexId& v) const;
    /// Block of the k-th basis element.
    QMat element(std::size_t k, const VertexId& v) const;
    /// Ambient vector assembled from per-vertex matrices.
    QVec assemble(const std::map<VertexId, QMat>& blocks) const;
};

/// The constraint matrix whose kernel is the intertwiner space: one row per
/// entry of e_q T1(m) - T2(m) e_p per edge m of the full subdiagram on F.
QMat intertwiner_constraints(const Diagram& d, const Representation& t1,
                             const Representation& t2,
                             const std::vector<VertexId>& F);

IntertwinerSpace hom_space(const Diagram& d, const Representation& t1,
                           const Representation& t2,
                           const std::vector<VertexId>& F);

/// End(T|F) with its multiplication in the echelon basis.
struct EndAlgebraData {
    IntertwinerSpace space;
    /// mult[i][j] = coordinates of b_i b_j (componentwise composition).
    std::vector<std::vector<QVec>> mult;
    /// Coordinates of the identity tuple.
    QVec unit_coords;

    std::size_t dim() const { return space.dim(); }
};

EndAlgebraData end_algebra(const Diagram& d, const Representation& t,
                           const std::vector<VertexId>& F);

/// Product of two elements given by coordinates, in coordinates.
QVec mult_in_basis(const EndAlgebraData& e, const QVec& x, const QVec& y);

/// A(F, T) = End(T|F)^v: comultiplication is the transposed multiplication
/// tensor, counit evaluates at the identity tuple.
struct CoalgebraData {
    std::size_t dim = 0;
    /// Matrix of Delta : A -> A (x) A, shape d^2 x d, rows (i,j) flattened
    /// with j fastest.
    QMat comult;
    /// Row functional A -> Q.
    QVec counit;
};

CoalgebraData coalgebra_of(const EndAlgebraData& e);

/// Coassociativity and both counit laws, checked as exact matrix identities.
Report coalgebra_laws(const CoalgebraData& c);

/// Coaction T(p) -> T(p) (x) A dual to the evaluation action of End(T|F)
/// on T(p); matrix of shape (dim(p) * dimA) x dim(p), rows (i,k) with the
/// A-index k fastest.
QMat coaction(const EndAlgebraData& e, const Representation& t,
              const VertexId& p);

/// Comodule laws for the coaction: (id (x) counit) rho = id and
/// (id (x) Delta) rho = (rho (x) id) rho.
Report coaction_laws(const EndAlgebraData& e, const Representation& t,
                     const VertexId& p);

/// Matrix of the restriction End(T|F') -> End(T|F) in the echelon bases,
/// for F a subset of F'. Its transpose is the coalgebra transition
/// A(F) -> A(F'); transitions are never materialized beyond this.
QMat restriction_matrix(const EndAlgebraData& big, const EndAlgebraData& small);

/// Same projection for intertwiner spaces between two representations.
QMat restriction_matrix(const IntertwinerSpace& big,
                        const IntertwinerSpace& small);

/// Verifies the restriction is an algebra morphism (hence the dual is a
/// morphism of coalgebras).
Report restriction_is_morphism(const EndAlgebraData& big,
                               const EndAlgebraData& small);

struct BaseChangeReport {
    std::size_t dim_rational = 0;
    std::size_t dim_extension = 0;
    bool dims_match = false;
    bool rational_basis_spans = false;

    bool ok() const { return dims_match && rational_basis_spans; }
};

/// Recomputes the intertwiner kernel over Q[x]/(m) and compares with the
/// rational computation.
BaseChangeReport base_change(const Diagram& d, const Representation& t1,
                             const Representation& t2,
                             const std::vector<VertexId>& F,
                             const std::shared_ptr<const NumberField>& k);

} // namespace dgp
