#pragma once

#include "dgp/bialgebra.hpp"

namespace dgp {

/// Truncated localization of a graded diagram at an even vertex f0: one copy
/// f(n) of every vertex per level |n| <= bound, level copies of every edge,
/// and twist edges (f x f0)(n) -> f(n+1) where the product is materialized.
struct LocalizedDiagram {
    Diagram diagram;
    ProductStructure product;
    VertexId f0;
    long bound = 0;

    /// (base vertex, level) -> localized id "f@n".
    std::map<std::pair<VertexId, long>, VertexId> vertex_at;
    /// Localized vertex -> (base vertex, level).
    std::map<VertexId, std::pair<VertexId, long>> base_of;
    /// Localized edge -> base edge, for the level copies.
    std::map<EdgeId, EdgeId> base_edge;
    /// Twist edges keyed by (base vertex, level n), mapping into level n+1.
    std::map<std::pair<VertexId, long>, EdgeId> twist;
    /// Base vertices with no materialized product f x f0, hence no twists.
    std::vector<VertexId> skipped_twists;
};

/// Faults when f0 is odd (localize at f0 x f0 instead) or, with
/// require_all_twists, when some f x f0 is not materialized.
LocalizedDiagram localize_diagram(const Diagram& d, const ProductStructure& p,
                                  const VertexId& f0, long bound,
                                  bool require_all_twists = false);

/// Representation on the localized diagram, twisting by the line T(f0):
/// with the basis of T(f0) fixed once, T(f(n)) = T(f) at every level, level
/// copies of edges keep their matrices, twist edges carry tau_{(f,f0)}, and
/// the localized tau table repeats the base one. Faults unless dim T(f0) = 1.
GradedRepresentation extend_representation(const LocalizedDiagram& l,
                                           const GradedRepresentation& t);

/// chi and the transition maps of the localization at f0, over the pair
/// F' = F together with the products f x f0.
struct ChiReport {
    /// Coordinates of chi, the dual of the identity, in the line A({f0}).
    QVec chi;
    /// End(T|F) -> End(T|F'): a |-> the tuple extending a by a (x) id read
    /// through tau at each product vertex.
    QMat iota;
    /// The coalgebra transition A(F) -> A(F'): dual of the component
    /// read-off End(T|F') -> End(T|F).
    QMat transition;
    bool transition_is_chi_multiplication = false;
    bool iota_is_section = false;
    bool iota_is_morphism = false;
    Report violations;

    bool ok() const {
        return transition_is_chi_multiplication && iota_is_section &&
               iota_is_morphism && violations.ok();
    }
};

ChiReport chi_and_transitions(const Diagram& d, const ProductStructure& p,
                              const GradedRepresentation& t,
                              const VertexId& f0,
                              const std::vector<VertexId>& F,
                              const std::vector<VertexId>& Fprime);

} // namespace dgp
