#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "dgp/matrix.hpp"

namespace dgp {

using VertexId = std::string;
using EdgeId = std::string;

struct Vertex {
    VertexId id;
    int grade = 0; // Z/2, stored as 0 or 1
};

struct Edge {
    EdgeId id;
    VertexId src;
    VertexId dst;
    bool identity = false;
};

/// Directed multigraph with one distinguished identity loop per vertex.
/// Vertices and edges iterate in sorted id order, so every computation
/// downstream is deterministic.
class Diagram {
public:
    void add_vertex(const VertexId& id, int grade = 0);
    void add_edge(const EdgeId& id, const VertexId& src, const VertexId& dst,
                  bool identity = false);

    bool has_vertex(const VertexId& id) const { return vertices_.count(id) > 0; }
    bool has_edge(const EdgeId& id) const { return edges_.count(id) > 0; }
    const Vertex& vertex(const VertexId& id) const;
    const Edge& edge(const EdgeId& id) const;
    int grade(const VertexId& id) const { return vertex(id).grade; }

    const std::map<VertexId, Vertex>& vertices() const { return vertices_; }
    const std::map<EdgeId, Edge>& edges() const { return edges_; }

    /// The distinguished identity edge of a vertex, if one was declared.
    std::optional<EdgeId> identity_edge(const VertexId& id) const;

    std::vector<VertexId> vertex_ids() const;

private:
    std::map<VertexId, Vertex> vertices_;
    std::map<EdgeId, Edge> edges_;
    std::map<VertexId, EdgeId> identity_of_;
};

/// Commutative product data on a diagram: vertex products, commutator and
/// associator edges, unit vertex with unit edges, and the products of edges
/// with identity vertices. All tables are materialized partially; finite
/// truncations of infinite diagrams cannot carry total products, so the
/// validator checks exactly the entries present (and totality on request).
struct ProductStructure {
    std::map<std::pair<VertexId, VertexId>, VertexId> mul;
    /// alpha_{f,g} : f x g -> g x f, keyed by (f,g).
    std::map<std::pair<VertexId, VertexId>, EdgeId> alpha;
    /// beta_{f,g,h} : f x (g x h) -> (f x g) x h.
    std::map<std::tuple<VertexId, VertexId, VertexId>, EdgeId> beta;
    VertexId unit;
    /// u_f : f -> unit x f.
    std::map<VertexId, EdgeId> unit_edges;
    /// (gamma : f -> f', g) |-> the edge gamma x id_g : f x g -> f' x g.
    std::map<std::pair<EdgeId, VertexId>, EdgeId> edge_mul_left;
    /// (g, gamma : f -> f') |-> the edge id_g x gamma : g x f -> g x f'.
    std::map<std::pair<VertexId, EdgeId>, EdgeId> edge_mul_right;

    bool has_product(const VertexId& f, const VertexId& g) const {
        return mul.count({f, g}) > 0;
    }
    /// The product vertex; Fault when the pair is not materialized.
    const VertexId& product(const VertexId& f, const VertexId& g) const;
};

/// Representation: dimensions for vertices, matrices for edges, acting
/// covariantly (T(e) : T(src) -> T(dst), so the matrix is dim(dst) x dim(src)).
/// Identity-edge matrices may be omitted; they read back as identities.
struct Representation {
    std::map<VertexId, std::size_t> dims;
    std::map<EdgeId, QMat> mats;

    std::size_t dim(const VertexId& v) const;
};

/// Matrix of an edge, synthesizing identities for identity edges.
QMat edge_matrix(const Diagram& d, const Representation& t, const EdgeId& e);

/// Graded representation: the underlying representation plus the chosen
/// isomorphisms tau_{(f,g)} : T(f x g) -> T(f) (x) T(g), keyed by (f,g).
struct GradedRepresentation {
    Representation rep;
    std::map<std::pair<VertexId, VertexId>, QMat> tau;

    const QMat& tau_at(const VertexId& f, const VertexId& g) const;
};

/// Sign convention for the id x gamma axiom. The literal rule scales by
/// (-1)^{|gamma|}; the alternative scales by (-1)^{|g| |gamma|} with g the
/// fixed left factor, matching the sign that appears when the axiom is used
/// to push comultiplications past edges.
enum class GradedSignRule { EdgeDegree, LeftVertexTimesEdge };

struct GradedCheckOptions {
    GradedSignRule sign_rule = GradedSignRule::EdgeDegree;
    bool require_total = false;
};

Report validate_diagram(const Diagram& d);
Report validate_representation(const Diagram& d, const Representation& t);

/// Structural checks of the product tables against the diagram: endpoints,
/// grade additivity, id x id = id, unit edge shapes.
Report validate_product_structure(const Diagram& d, const ProductStructure& p);

/// Full graded-representation validation: structural checks plus the five
/// identities (commutator with Koszul sign, edge x id, id x edge with the
/// configured sign rule, associator square, invertible unit maps).
Report validate_graded(const Diagram& d, const ProductStructure& p,
                       const GradedRepresentation& t,
                       const GradedCheckOptions& opts = {});

/// Full subdiagram on a vertex subset: keeps every edge whose endpoints both
/// lie in the subset, identity edges included.
Diagram finite_subdiagram(const Diagram& d, const std::vector<VertexId>& verts);

/// Product diagram: vertices are pairs, edges are alpha x id and id x beta
/// only, with id x id collapsing to the pair's single identity edge.
/// Synthesized ids: vertex "(f,g)", edges "L(a|g)", "R(f|b)", "id(f,g)".
Diagram product_diagram(const Diagram& d1, const Diagram& d2);

} // namespace dgp
