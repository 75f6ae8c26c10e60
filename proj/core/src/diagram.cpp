#include "dgp/diagram.hpp"

#include <set>

namespace dgp {

namespace {
int norm_grade(int g) { return ((g % 2) + 2) % 2; }
} // namespace

void Diagram::add_vertex(const VertexId& id, int grade) {
    if (id.empty()) throw Fault("diagram: empty vertex id");
    if (vertices_.count(id)) throw Fault("diagram: duplicate vertex id '" + id + "'");
    vertices_[id] = Vertex{id, norm_grade(grade)};
}

void Diagram::add_edge(const EdgeId& id, const VertexId& src, const VertexId& dst,
                       bool identity) {
    if (id.empty()) throw Fault("diagram: empty edge id");
    if (edges_.count(id)) throw Fault("diagram: duplicate edge id '" + id + "'");
    edges_[id] = Edge{id, src, dst, identity};
    if (identity) {
        auto [it, fresh] = identity_of_.emplace(src, id);
        (void)it;
        if (!fresh)
            throw Fault("diagram: vertex '" + src + "' has two identity edges");
    }
}

const Vertex& Diagram::vertex(const VertexId& id) const {
    auto it = vertices_.find(id);
    if (it == vertices_.end()) throw Fault("diagram: unknown vertex '" + id + "'");
    return it->second;
}

const Edge& Diagram::edge(const EdgeId& id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw Fault("diagram: unknown edge '" + id + "'");
    return it->second;
}

std::optional<EdgeId> Diagram::identity_edge(const VertexId& id) const {
    auto it = identity_of_.find(id);
    if (it == identity_of_.end()) return std::nullopt;
    return it->second;
}

std::vector<VertexId> Diagram::vertex_ids() const {
    std::vector<VertexId> ids;
    ids.reserve(vertices_.size());
    for (const auto& [id, v] : vertices_) ids.push_back(id);
    return ids;
}

const VertexId& ProductStructure::product(const VertexId& f,
                                          const VertexId& g) const {
    auto it = mul.find({f, g});
    if (it == mul.end())
        throw Fault("product structure: product (" + f + ", " + g +
                    ") not materialized");
    return it->second;
}

std::size_t Representation::dim(const VertexId& v) const {
    auto it = dims.find(v);
    if (it == dims.end())
        throw Fault("representation: no dimension for vertex '" + v + "'");
    return it->second;
}

QMat edge_matrix(const Diagram& d, const Representation& t, const EdgeId& e) {
    const Edge& ed = d.edge(e);
    auto it = t.mats.find(e);
    if (it != t.mats.end()) return it->second;
    if (ed.identity) return QMat::identity(t.dim(ed.src));
    throw Fault("representation: no matrix for edge '" + e + "'");
}

const QMat& GradedRepresentation::tau_at(const VertexId& f,
                                         const VertexId& g) const {
    auto it = tau.find({f, g});
    if (it == tau.end())
        throw Fault("graded representation: missing tau for (" + f + ", " + g + ")");
    return it->second;
}

Report validate_diagram(const Diagram& d) {
    Report rep;
    for (const auto& [id, e] : d.edges()) {
        if (!d.has_vertex(e.src))
            rep.fail("edge '" + id + "': unknown source '" + e.src + "'");
        if (!d.has_vertex(e.dst))
            rep.fail("edge '" + id + "': unknown target '" + e.dst + "'");
        if (e.identity && e.src != e.dst)
            rep.fail("identity edge '" + id + "' is not a loop");
    }
    for (const auto& [id, v] : d.vertices()) {
        if (!d.identity_edge(id))
            rep.fail("vertex '" + id + "' has no identity edge");
    }
    return rep;
}

Report validate_representation(const Diagram& d, const Representation& t) {
    Report rep;
    for (const auto& [id, v] : d.vertices()) {
        if (!t.dims.count(id)) rep.fail("no dimension for vertex '" + id + "'");
    }
    for (const auto& [vid, n] : t.dims) {
        (void)n;
        if (!d.has_vertex(vid)) rep.fail("dimension for unknown vertex '" + vid + "'");
    }
    for (const auto& [eid, m] : t.mats) {
        if (!d.has_edge(eid)) {
            rep.fail("matrix for unknown edge '" + eid + "'");
            continue;
        }
        const Edge& e = d.edge(eid);
        if (!t.dims.count(e.src) || !t.dims.count(e.dst)) continue;
        if (m.rows() != t.dim(e.dst) || m.cols() != t.dim(e.src))
            rep.fail("edge '" + eid + "': matrix shape " + std::to_string(m.rows()) +
                     "x" + std::to_string(m.cols()) + ", expected " +
                     std::to_string(t.dim(e.dst)) + "x" + std::to_string(t.dim(e.src)));
        else if (e.identity && !m.is_identity())
            rep.fail("identity edge '" + eid + "' has a non-identity matrix");
    }
    for (const auto& [eid, e] : d.edges()) {
        if (e.identity || t.mats.count(eid)) continue;
        rep.fail("no matrix for edge '" + eid + "'");
    }
    return rep;
}

Report validate_product_structure(const Diagram& d, const ProductStructure& p) {
    Report rep;
    for (const auto& [fg, prod] : p.mul) {
        const auto& [f, g] = fg;
        if (!d.has_vertex(f) || !d.has_vertex(g) || !d.has_vertex(prod)) {
            rep.fail("product (" + f + ", " + g + ") -> " + prod +
                     ": unknown vertex");
            continue;
        }
        if (d.grade(prod) != (d.grade(f) + d.grade(g)) % 2)
            rep.fail("product (" + f + ", " + g + "): grade of '" + prod +
                     "' is not |f|+|g|");
    }
    for (const auto& [fg, eid] : p.alpha) {
        const auto& [f, g] = fg;
        if (!d.has_edge(eid)) {
            rep.fail("commutator alpha(" + f + ", " + g + "): unknown edge '" +
                     eid + "'");
            continue;
        }
        if (!p.has_product(f, g) || !p.has_product(g, f)) {
            rep.fail("commutator alpha(" + f + ", " + g +
                     "): products not materialized");
            continue;
        }
        const Edge& e = d.edge(eid);
        if (e.src != p.product(f, g) || e.dst != p.product(g, f))
            rep.fail("commutator alpha(" + f + ", " + g +
                     "): endpoints do not match f x g -> g x f");
    }
    for (const auto& [fgh, eid] : p.beta) {
        const auto& [f, g, h] = fgh;
        if (!d.has_edge(eid)) {
            rep.fail("associator beta(" + f + ", " + g + ", " + h +
                     "): unknown edge '" + eid + "'");
            continue;
        }
        if (!p.has_product(g, h) || !p.has_product(f, g) ||
            !p.has_product(f, p.product(g, h)) ||
            !p.has_product(p.product(f, g), h)) {
            rep.fail("associator beta(" + f + ", " + g + ", " + h +
                     "): products not materialized");
            continue;
        }
        const Edge& e = d.edge(eid);
        if (e.src != p.product(f, p.product(g, h)) ||
            e.dst != p.product(p.product(f, g), h))
            rep.fail("associator beta(" + f + ", " + g + ", " + h +
                     "): endpoints do not match f x (g x h) -> (f x g) x h");
    }
    if (!p.unit.empty()) {
        if (!d.has_vertex(p.unit))
            rep.fail("unit vertex '" + p.unit + "' unknown");
        else if (d.grade(p.unit) != 0)
            rep.fail("unit vertex '" + p.unit + "' has odd grade");
    }
    for (const auto& [f, eid] : p.unit_edges) {
        if (!d.has_edge(eid)) {
            rep.fail("unit edge u(" + f + "): unknown edge '" + eid + "'");
            continue;
        }
        if (p.unit.empty()) {
            rep.fail("unit edge u(" + f + ") without a unit vertex");
            continue;
        }
        if (!p.has_product(p.unit, f)) {
            rep.fail("unit edge u(" + f + "): product unit x f not materialized");
            continue;
        }
        const Edge& e = d.edge(eid);
        if (e.src != f || e.dst != p.product(p.unit, f))
            rep.fail("unit edge u(" + f + "): endpoints do not match f -> unit x f");
    }
    auto check_edge_mul = [&](const EdgeId& gamma, const VertexId& g,
                              const EdgeId& eid, bool left) {
        std::string label = left ? ("edge product (" + gamma + " x id " + g + ")")
                                 : ("edge product (id " + g + " x " + gamma + ")");
        if (!d.has_edge(gamma) || !d.has_edge(eid) || !d.has_vertex(g)) {
            rep.fail(label + ": unknown edge or vertex");
            return;
        }
        const Edge& ga = d.edge(gamma);
        const Edge& e = d.edge(eid);
        VertexId want_src = left ? (p.has_product(ga.src, g) ? p.product(ga.src, g) : "")
                                 : (p.has_product(g, ga.src) ? p.product(g, ga.src) : "");
        VertexId want_dst = left ? (p.has_product(ga.dst, g) ? p.product(ga.dst, g) : "")
                                 : (p.has_product(g, ga.dst) ? p.product(g, ga.dst) : "");
        if (want_src.empty() || want_dst.empty()) {
            rep.fail(label + ": products not materialized");
            return;
        }
        if (e.src != want_src || e.dst != want_dst) {
            rep.fail(label + ": endpoints mismatch");
            return;
        }
        // id x id must be the identity edge of the product vertex.
        if (ga.identity && !e.identity)
            rep.fail(label + ": product of identity with identity vertex factor "
                             "is not the identity edge");
    };
    for (const auto& [key, eid] : p.edge_mul_left)
        check_edge_mul(key.first, key.second, eid, true);
    for (const auto& [key, eid] : p.edge_mul_right)
        check_edge_mul(key.second, key.first, eid, false);
    return rep;
}

namespace {

int edge_degree(const Diagram& d, const Edge& e) {
    return (d.grade(e.src) + d.grade(e.dst)) % 2;
}

} // namespace

Report validate_graded(const Diagram& d, const ProductStructure& p,
                       const GradedRepresentation& t,
                       const GradedCheckOptions& opts) {
    Report rep = validate_product_structure(d, p);
    rep.merge(validate_representation(d, t.rep));
    if (!rep.ok()) return rep; // identities need well-shaped data

    const Representation& T = t.rep;

    // tau must exist, be well-shaped and invertible for each materialized
    // product; cache the inverses.
    std::map<std::pair<VertexId, VertexId>, QMat> tau_inv;
    for (const auto& [fg, prod] : p.mul) {
        const auto& [f, g] = fg;
        auto it = t.tau.find(fg);
        if (it == t.tau.end()) {
            rep.fail("missing tau for (" + f + ", " + g + ")");
            continue;
        }
        const QMat& m = it->second;
        if (m.rows() != T.dim(f) * T.dim(g) || m.cols() != T.dim(prod)) {
            rep.fail("tau(" + f + ", " + g + ") has wrong shape");
            continue;
        }
        auto inv = inverse(m);
        if (!inv) {
            rep.fail("tau(" + f + ", " + g + ") is not invertible");
            continue;
        }
        tau_inv.emplace(fg, *inv);
    }
    if (!rep.ok()) return rep;

    // (1) commutator: tau_{(g,f)} T(alpha_{f,g}) tau_{(f,g)}^{-1}
    //     = (-1)^{|f||g|} Swap.
    for (const auto& [fg, eid] : p.alpha) {
        const auto& [f, g] = fg;
        QMat lhs = t.tau_at(g, f) * edge_matrix(d, T, eid) * tau_inv.at(fg);
        QMat swap = swap_matrix<Rational>(T.dim(f), T.dim(g));
        QMat rhs = (d.grade(f) * d.grade(g)) % 2 ? -swap : swap;
        if (lhs != rhs)
            rep.fail("commutator axiom fails at alpha(" + f + ", " + g + ")");
    }

    // (2) gamma x id: tau_{(f',g)} T(gamma x id) tau_{(f,g)}^{-1} = T(gamma) (x) I.
    for (const auto& [key, eid] : p.edge_mul_left) {
        const auto& [gid, g] = key;
        const Edge& ga = d.edge(gid);
        QMat lhs = t.tau_at(ga.dst, g) * edge_matrix(d, T, eid) *
                   tau_inv.at({ga.src, g});
        QMat rhs = kron(edge_matrix(d, T, gid), QMat::identity(T.dim(g)));
        if (lhs != rhs)
            rep.fail("edge x id axiom fails at (" + gid + ") x id(" + g + ")");
    }

    // (3) id x gamma: tau_{(g,f')} T(id x gamma) tau_{(g,f)}^{-1}
    //     = sign * (I (x) T(gamma)), sign per the configured rule.
    for (const auto& [key, eid] : p.edge_mul_right) {
        const auto& [g, gid] = key;
        const Edge& ga = d.edge(gid);
        QMat lhs = t.tau_at(g, ga.dst) * edge_matrix(d, T, eid) *
                   tau_inv.at({g, ga.src});
        QMat rhs = kron(QMat::identity(T.dim(g)), edge_matrix(d, T, gid));
        int deg = edge_degree(d, ga);
        int sign = opts.sign_rule == GradedSignRule::EdgeDegree
                       ? deg
                       : deg * d.grade(g);
        if (sign % 2) rhs = -rhs;
        if (lhs != rhs)
            rep.fail("id x edge axiom fails at id(" + g + ") x (" + gid + ")");
    }

    // (4) associator square under strict Kronecker reassociation:
    //     (tau_{(f,g)} (x) I) tau_{(fg,h)} T(beta) = (I (x) tau_{(g,h)}) tau_{(f,gh)}.
    for (const auto& [fgh, eid] : p.beta) {
        const auto& [f, g, h] = fgh;
        const VertexId& gh = p.product(g, h);
        const VertexId& fg = p.product(f, g);
        QMat lhs = kron(t.tau_at(f, g), QMat::identity(T.dim(h))) *
                   t.tau_at(fg, h) * edge_matrix(d, T, eid);
        QMat rhs = kron(QMat::identity(T.dim(f)), t.tau_at(g, h)) *
                   t.tau_at(f, gh);
        if (lhs != rhs)
            rep.fail("associator axiom fails at beta(" + f + ", " + g + ", " + h + ")");
    }

    // (5) unit maps invertible; the unit object is a line.
    for (const auto& [f, eid] : p.unit_edges) {
        if (!inverse(edge_matrix(d, T, eid)))
            rep.fail("unit map T(u_" + f + ") is not invertible");
    }
    if (!p.unit.empty() && T.dim(p.unit) != 1)
        rep.fail("unit vertex '" + p.unit + "' does not carry a line");

    if (opts.require_total) {
        for (const auto& [fid, fv] : d.vertices())
            for (const auto& [gid, gv] : d.vertices()) {
                if (!p.has_product(fid, gid))
                    rep.fail("product (" + fid + ", " + gid + ") missing (totality)");
                else if (!p.alpha.count({fid, gid}))
                    rep.fail("commutator alpha(" + fid + ", " + gid +
                             ") missing (totality)");
            }
        if (p.unit.empty()) rep.fail("unit vertex missing (totality)");
        for (const auto& [fid, fv] : d.vertices())
            if (!p.unit_edges.count(fid))
                rep.fail("unit edge u(" + fid + ") missing (totality)");
    }
    return rep;
}

Diagram finite_subdiagram(const Diagram& d, const std::vector<VertexId>& verts) {
    std::set<VertexId> keep(verts.begin(), verts.end());
    Diagram s;
    for (const VertexId& v : verts) {
        if (!d.has_vertex(v)) throw Fault("subdiagram: unknown vertex '" + v + "'");
    }
    for (const auto& [id, v] : d.vertices())
        if (keep.count(id)) s.add_vertex(id, v.grade);
    for (const auto& [id, e] : d.edges())
        if (keep.count(e.src) && keep.count(e.dst))
            s.add_edge(id, e.src, e.dst, e.identity);
    return s;
}

Diagram product_diagram(const Diagram& d1, const Diagram& d2) {
    Diagram p;
    auto vid = [](const VertexId& f, const VertexId& g) {
        return "(" + f + "," + g + ")";
    };
    for (const auto& [f, fv] : d1.vertices())
        for (const auto& [g, gv] : d2.vertices())
            p.add_vertex(vid(f, g), (fv.grade + gv.grade) % 2);
    for (const auto& [f, fv] : d1.vertices())
        for (const auto& [g, gv] : d2.vertices())
            p.add_edge("id" + vid(f, g), vid(f, g), vid(f, g), true);
    for (const auto& [a, e] : d1.edges()) {
        if (e.identity) continue;
        for (const auto& [g, gv] : d2.vertices())
            p.add_edge("L(" + a + "|" + g + ")", vid(e.src, g), vid(e.dst, g));
    }
    for (const auto& [b, e] : d2.edges()) {
        if (e.identity) continue;
        for (const auto& [f, fv] : d1.vertices())
            p.add_edge("R(" + f + "|" + b + ")", vid(f, e.src), vid(f, e.dst));
    }
    return p;
}

} // namespace dgp
