#include "dgp/end_algebra.hpp"

#include <algorithm>
#include <set>

namespace dgp {

const BlockLayout::Block& BlockLayout::block(const VertexId& v) const {
    for (const auto& b : blocks)
        if (b.v == v) return b;
    throw Fault("layout: no block for vertex '" + v + "'");
}

bool BlockLayout::has_block(const VertexId& v) const {
    for (const auto& b : blocks)
        if (b.v == v) return true;
    return false;
}

BlockLayout make_layout(const std::vector<VertexId>& verts,
                        const Representation& row_rep,
                        const Representation& col_rep) {
    BlockLayout l;
    std::size_t off = 0;
    for (const VertexId& v : verts) {
        BlockLayout::Block b;
        b.v = v;
        b.rows = row_rep.dim(v);
        b.cols = col_rep.dim(v);
        b.offset = off;
        off += b.rows * b.cols;
        l.blocks.push_back(std::move(b));
    }
    l.total = off;
    return l;
}

namespace {

std::vector<VertexId> sorted_unique(std::vector<VertexId> f) {
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    return f;
}

} // namespace

QMat IntertwinerSpace::block_of(const QVec& ambient, const VertexId& v) const {
    const auto& b = layout.block(v);
    QMat m(b.rows, b.cols);
    for (std::size_t i = 0; i < b.rows; ++i)
        for (std::size_t j = 0; j < b.cols; ++j)
            m(i, j) = ambient[b.offset + i * b.cols + j];
    return m;
}

QMat IntertwinerSpace::element(std::size_t k, const VertexId& v) const {
    return block_of(basis.vecs.at(k), v);
}

QVec IntertwinerSpace::assemble(const std::map<VertexId, QMat>& blocks) const {
    QVec v(layout.total, Rational(0));
    for (const auto& b : layout.blocks) {
        auto it = blocks.find(b.v);
        if (it == blocks.end())
            throw Fault("assemble: missing block for vertex '" + b.v + "'");
        const QMat& m = it->second;
        if (m.rows() != b.rows || m.cols() != b.cols)
            throw Fault("assemble: block shape mismatch at '" + b.v + "'");
        for (std::size_t i = 0; i < b.rows; ++i)
            for (std::size_t j = 0; j < b.cols; ++j)
                v[b.offset + i * b.cols + j] = m(i, j);
    }
    return v;
}

QMat intertwiner_constraints(const Diagram& d, const Representation& t1,
                             const Representation& t2,
                             const std::vector<VertexId>& F) {
    std::vector<VertexId> verts = sorted_unique(F);
    Diagram sub = finite_subdiagram(d, verts);
    BlockLayout layout = make_layout(verts, t2, t1);

    // Count rows: one per entry of the dim2(dst) x dim1(src) constraint
    // block per edge. Identity edges constrain nothing and are skipped.
    std::size_t rows = 0;
    for (const auto& [eid, e] : sub.edges())
        if (!e.identity) rows += t2.dim(e.dst) * t1.dim(e.src);

    QMat phi(rows, layout.total);
    std::size_t r0 = 0;
    for (const auto& [eid, e] : sub.edges()) {
        if (e.identity) continue;
        QMat m1 = edge_matrix(d, t1, eid);
        QMat m2 = edge_matrix(d, t2, eid);
        const auto& bp = layout.block(e.src);
        const auto& bq = layout.block(e.dst);
        // (e_q T1(m) - T2(m) e_p)_{r,c}: coefficient of (e_q)_{r,k} is
        // T1(m)_{k,c}, coefficient of (e_p)_{k,c} is -T2(m)_{r,k}.
        for (std::size_t r = 0; r < bq.rows; ++r)
            for (std::size_t c = 0; c < bp.cols; ++c) {
                std::size_t row = r0 + r * bp.cols + c;
                for (std::size_t k = 0; k < bq.cols; ++k)
                    phi(row, bq.offset + r * bq.cols + k) += m1(k, c);
                for (std::size_t k = 0; k < bp.rows; ++k)
                    phi(row, bp.offset + k * bp.cols + c) -= m2(r, k);
            }
        r0 += bq.rows * bp.cols;
    }
    return phi;
}

IntertwinerSpace hom_space(const Diagram& d, const Representation& t1,
                           const Representation& t2,
                           const std::vector<VertexId>& F) {
    IntertwinerSpace s;
    s.verts = sorted_unique(F);
    s.layout = make_layout(s.verts, t2, t1);
    s.basis = kernel_basis(intertwiner_constraints(d, t1, t2, F));
    return s;
}

EndAlgebraData end_algebra(const Diagram& d, const Representation& t,
                           const std::vector<VertexId>& F) {
    EndAlgebraData e;
    e.space = hom_space(d, t, t, F);
    std::size_t n = e.space.dim();

    // Identity tuple.
    std::map<VertexId, QMat> eye;
    for (const auto& b : e.space.layout.blocks)
        eye[b.v] = QMat::identity(b.rows);
    auto unit = e.space.basis.coordinates(e.space.assemble(eye));
    if (!unit)
        throw InternalError("end_algebra: identity tuple escaped the kernel");
    e.unit_coords = *unit;

    // Structure constants by componentwise composition; closure is a
    // theorem, so failed re-expression is an engine bug.
    e.mult.assign(n, std::vector<QVec>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::map<VertexId, QMat> prod;
            for (const auto& b : e.space.layout.blocks)
                prod[b.v] = e.space.element(i, b.v) * e.space.element(j, b.v);
            auto coords = e.space.basis.coordinates(e.space.assemble(prod));
            if (!coords)
                throw InternalError("end_algebra: product escaped the span");
            e.mult[i][j] = *coords;
        }
    return e;
}

QVec mult_in_basis(const EndAlgebraData& e, const QVec& x, const QVec& y) {
    std::size_t n = e.dim();
    if (x.size() != n || y.size() != n)
        throw InternalError("mult_in_basis: coordinate size mismatch");
    QVec r(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (y[j] == 0) continue;
            Rational f = x[i] * y[j];
            for (std::size_t k = 0; k < n; ++k) r[k] += f * e.mult[i][j][k];
        }
    }
    return r;
}

CoalgebraData coalgebra_of(const EndAlgebraData& e) {
    CoalgebraData c;
    std::size_t n = e.dim();
    c.dim = n;
    c.comult = QMat(n * n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                c.comult(i * n + j, k) = e.mult[i][j][k];
    c.counit = e.unit_coords;
    return c;
}

Report coalgebra_laws(const CoalgebraData& c) {
    Report rep;
    std::size_t n = c.dim;
    QMat eye = QMat::identity(n);
    if (kron(c.comult, eye) * c.comult != kron(eye, c.comult) * c.comult)
        rep.fail("comultiplication is not coassociative");
    QMat eps(1, n);
    for (std::size_t k = 0; k < n; ++k) eps(0, k) = c.counit[k];
    if (kron(eps, eye) * c.comult != eye)
        rep.fail("left counit law fails");
    if (kron(eye, eps) * c.comult != eye)
        rep.fail("right counit law fails");
    return rep;
}

QMat coaction(const EndAlgebraData& e, const Representation& t,
              const VertexId& p) {
    std::size_t n = t.dim(p);
    std::size_t d = e.dim();
    QMat rho(n * d, n);
    for (std::size_t k = 0; k < d; ++k) {
        QMat bk = e.space.element(k, p);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) rho(i * d + k, j) = bk(i, j);
    }
    return rho;
}

Report coaction_laws(const EndAlgebraData& e, const Representation& t,
                     const VertexId& p) {
    Report rep;
    CoalgebraData c = coalgebra_of(e);
    std::size_t n = t.dim(p);
    std::size_t d = e.dim();
    QMat rho = coaction(e, t, p);
    QMat eye_n = QMat::identity(n);
    QMat eye_d = QMat::identity(d);
    QMat eps(1, d);
    for (std::size_t k = 0; k < d; ++k) eps(0, k) = c.counit[k];
    if (kron(eye_n, eps) * rho != eye_n)
        rep.fail("coaction counit law fails at '" + p + "'");
    if (kron(rho, eye_d) * rho != kron(eye_n, c.comult) * rho)
        rep.fail("coaction coassociativity fails at '" + p + "'");
    return rep;
}

QMat restriction_matrix(const IntertwinerSpace& big,
                        const IntertwinerSpace& small) {
    std::set<VertexId> bigset(big.verts.begin(), big.verts.end());
    for (const VertexId& v : small.verts)
        if (!bigset.count(v))
            throw Fault("restriction: vertex '" + v + "' not in the larger set");
    QMat r(small.dim(), big.dim());
    for (std::size_t k = 0; k < big.dim(); ++k) {
        std::map<VertexId, QMat> blocks;
        for (const VertexId& v : small.verts) blocks[v] = big.element(k, v);
        auto coords = small.basis.coordinates(small.assemble(blocks));
        if (!coords)
            throw InternalError("restriction: projected tuple escaped the "
                                "smaller intertwiner space");
        for (std::size_t i = 0; i < small.dim(); ++i) r(i, k) = (*coords)[i];
    }
    return r;
}

QMat restriction_matrix(const EndAlgebraData& big, const EndAlgebraData& small) {
    return restriction_matrix(big.space, small.space);
}

Report restriction_is_morphism(const EndAlgebraData& big,
                               const EndAlgebraData& small) {
    Report rep;
    QMat r = restriction_matrix(big, small);
    auto col = [&](const QMat& m, std::size_t j) {
        QVec v(m.rows(), Rational(0));
        for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
        return v;
    };
    for (std::size_t i = 0; i < big.dim(); ++i)
        for (std::size_t j = 0; j < big.dim(); ++j) {
            QVec lhs = mat_apply(r, big.mult[i][j]);
            QVec rhs = mult_in_basis(small, col(r, i), col(r, j));
            if (lhs != rhs) {
                rep.fail("restriction is not an algebra morphism");
                return rep;
            }
        }
    if (mat_apply(r, big.unit_coords) != small.unit_coords)
        rep.fail("restriction does not preserve the unit");
    return rep;
}

BaseChangeReport base_change(const Diagram& d, const Representation& t1,
                             const Representation& t2,
                             const std::vector<VertexId>& F,
                             const std::shared_ptr<const NumberField>& k) {
    BaseChangeReport out;
    if (!k) throw Fault("base change: null extension field");
    QMat phi = intertwiner_constraints(d, t1, t2, F);
    SubspaceBasis<Rational> ker_q = kernel_basis(phi);
    // Same matrix, arithmetic carried out in K end to end. Equality of the
    // dimensions is flat base change; computing it both ways checks the
    // extension arithmetic path, not the theorem.
    Mat<NFElem> phi_k = lift<NFElem>(phi);
    SubspaceBasis<NFElem> ker_k = kernel_basis(phi_k);
    out.dim_rational = ker_q.dim();
    out.dim_extension = ker_k.dim();
    out.dims_match = out.dim_rational == out.dim_extension;

    std::vector<std::vector<NFElem>> lifted;
    for (const auto& v : ker_q.vecs) {
        std::vector<NFElem> w;
        w.reserve(v.size());
        for (const auto& x : v) w.push_back(NFElem(x));
        lifted.push_back(std::move(w));
    }
    SubspaceBasis<NFElem> span_q = make_subspace(ker_q.ambient, lifted);
    out.rational_basis_spans = true;
    for (const auto& v : ker_k.vecs)
        if (!span_q.contains(v)) out.rational_basis_spans = false;
    return out;
}

} // namespace dgp
