#include "dgp/period_space.hpp"

#include <algorithm>
#include <sstream>

namespace dgp {

namespace {

std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void require_pair_data(const ProductStructure& p, const GradedRepresentation& t1,
                       const GradedRepresentation& t2,
                       const std::vector<VertexId>& F,
                       const std::vector<VertexId>& G,
                       const std::vector<VertexId>& Fprime,
                       const std::string& who) {
    std::vector<std::string> missing;
    for (const VertexId& f : F)
        for (const VertexId& g : G) {
            if (!p.has_product(f, g)) {
                missing.push_back("product (" + f + ", " + g + ")");
                continue;
            }
            const VertexId& fg = p.product(f, g);
            if (!std::binary_search(Fprime.begin(), Fprime.end(), fg))
                missing.push_back("vertex '" + fg + "' outside F'");
            if (!t1.tau.count({f, g}))
                missing.push_back("tau1(" + f + ", " + g + ")");
            if (!t2.tau.count({f, g}))
                missing.push_back("tau2(" + f + ", " + g + ")");
        }
    if (!missing.empty()) {
        std::ostringstream os;
        os << who << ": missing product data:";
        for (const auto& s : missing) os << " " << s << ";";
        throw Fault(os.str());
    }
}

} // namespace

PeriodSpace period_space(const Diagram& d, const Representation& t1,
                         const Representation& t2,
                         const std::vector<VertexId>& F) {
    PeriodSpace ps;
    ps.F = sorted_unique(F);
    Diagram sub = finite_subdiagram(d, ps.F);
    ps.layout = make_layout(ps.F, t1, t2);

    std::vector<QVec> rels;
    for (const auto& [eid, e] : sub.edges()) {
        if (e.identity) continue;
        QMat m1 = edge_matrix(d, t1, eid);
        QMat m2 = edge_matrix(d, t2, eid);
        const auto& bp = ps.layout.block(e.src);
        const auto& bq = ps.layout.block(e.dst);
        for (std::size_t i = 0; i < bp.rows; ++i)
            for (std::size_t b = 0; b < bq.cols; ++b) {
                QVec r(ps.layout.total, Rational(0));
                for (std::size_t a = 0; a < bq.rows; ++a)
                    r[bq.offset + a * bq.cols + b] += m1(a, i);
                for (std::size_t j = 0; j < bp.cols; ++j)
                    r[bp.offset + i * bp.cols + j] -= m2(b, j);
                rels.push_back(std::move(r));
            }
    }
    ps.relations = make_subspace(ps.layout.total, rels);
    ps.quotient = quotient_of_ambient(ps.layout.total, ps.relations);
    return ps;
}

QVec period_relation(const PeriodSpace& ps, const QMat& m1, const QMat& m2,
                     const VertexId& p, const VertexId& q, const QVec& omega,
                     const QVec& gamma) {
    const auto& bp = ps.layout.block(p);
    const auto& bq = ps.layout.block(q);
    if (omega.size() != bp.rows || gamma.size() != bq.cols)
        throw InternalError("period_relation: coordinate shape mismatch");
    QVec r(ps.layout.total, Rational(0));
    QVec w1 = mat_apply(m1, omega); // T1(f) omega in T1(q)
    for (std::size_t a = 0; a < bq.rows; ++a)
        for (std::size_t b = 0; b < bq.cols; ++b)
            r[bq.offset + a * bq.cols + b] += w1[a] * gamma[b];
    // gamma T2(f) in T2(p)^v
    QVec g1(bp.cols, Rational(0));
    for (std::size_t j = 0; j < bp.cols; ++j)
        for (std::size_t b = 0; b < bq.cols; ++b) g1[j] += gamma[b] * m2(b, j);
    for (std::size_t i = 0; i < bp.rows; ++i)
        for (std::size_t j = 0; j < bp.cols; ++j)
            r[bp.offset + i * bp.cols + j] -= omega[i] * g1[j];
    return r;
}

PsiReport psi_map(const Diagram& d, const Representation& t1,
                  const Representation& t2, const std::vector<VertexId>& F) {
    PsiReport r;
    r.hom = hom_space(d, t1, t2, F);
    r.periods = period_space(d, t1, t2, F);
    std::size_t nh = r.hom.dim();

    r.psi_ambient = QMat(nh, r.periods.layout.total);
    for (std::size_t k = 0; k < nh; ++k)
        for (const auto& b : r.periods.layout.blocks) {
            QMat hk = r.hom.element(k, b.v); // dim2(p) x dim1(p)
            for (std::size_t i = 0; i < b.rows; ++i)
                for (std::size_t j = 0; j < b.cols; ++j)
                    r.psi_ambient(k, b.offset + i * b.cols + j) = hk(j, i);
        }

    for (const auto& rel : r.periods.relations.vecs) {
        QVec img = mat_apply(r.psi_ambient, rel);
        if (std::any_of(img.begin(), img.end(),
                        [](const Rational& x) { return x != 0; }))
            throw InternalError("psi: a relation vector has nonzero image");
    }

    r.psi = QMat(nh, r.periods.dim());
    for (std::size_t c = 0; c < r.periods.dim(); ++c) {
        QVec img = mat_apply(r.psi_ambient, r.periods.quotient.reps[c]);
        for (std::size_t k = 0; k < nh; ++k) r.psi(k, c) = img[k];
    }

    r.dims_match = r.periods.dim() == nh;
    if (!r.dims_match)
        r.violations.fail("dim P = " + std::to_string(r.periods.dim()) +
                          " differs from dim Hom = " + std::to_string(nh));
    r.bijective = r.dims_match && rank(r.psi) == nh;
    if (r.dims_match && !r.bijective)
        r.violations.fail("psi is not invertible despite matching dimensions");
    return r;
}

HomMuStar hom_mu_star(const Diagram& d, const ProductStructure& p,
                      const GradedRepresentation& t1,
                      const GradedRepresentation& t2,
                      const std::vector<VertexId>& F,
                      const std::vector<VertexId>& G,
                      const std::vector<VertexId>& Fprime) {
    HomMuStar m;
    m.F = sorted_unique(F);
    m.G = sorted_unique(G);
    m.Fprime = sorted_unique(Fprime);
    require_pair_data(p, t1, t2, m.F, m.G, m.Fprime, "hom mu*");

    m.left = hom_space(d, t1.rep, t2.rep, m.F);
    m.right = m.G == m.F ? m.left : hom_space(d, t1.rep, t2.rep, m.G);
    m.prod = hom_space(d, t1.rep, t2.rep, m.Fprime);
    std::size_t nl = m.left.dim(), nr = m.right.dim(), dp = m.prod.dim();

    std::size_t total = 0;
    std::vector<std::size_t> offsets;
    for (const VertexId& f : m.F)
        for (const VertexId& g : m.G) {
            offsets.push_back(total);
            total += t1.rep.dim(f) * t1.rep.dim(g) * t2.rep.dim(f) *
                     t2.rep.dim(g);
        }

    auto flatten_into = [](QMat& target, std::size_t row0, std::size_t col,
                           const QMat& x) {
        for (std::size_t i = 0; i < x.rows(); ++i)
            for (std::size_t j = 0; j < x.cols(); ++j)
                target(row0 + i * x.cols() + j, col) = x(i, j);
    };

    QMat w(total, nl * nr);
    QMat v(total, dp);
    std::size_t pair = 0;
    for (const VertexId& f : m.F)
        for (const VertexId& g : m.G) {
            std::size_t row0 = offsets[pair++];
            for (std::size_t i = 0; i < nl; ++i) {
                QMat hf = m.left.element(i, f);
                for (std::size_t j = 0; j < nr; ++j)
                    flatten_into(w, row0, i * nr + j,
                                 kron(hf, m.right.element(j, g)));
            }
            const VertexId& fg = p.product(f, g);
            auto t1inv = inverse(t1.tau_at(f, g));
            if (!t1inv)
                throw Fault("hom mu*: tau1(" + f + ", " + g +
                            ") is not invertible");
            const QMat& tau2 = t2.tau_at(f, g);
            for (std::size_t a = 0; a < dp; ++a)
                flatten_into(v, row0, a,
                             tau2 * m.prod.element(a, fg) * *t1inv);
        }

    std::size_t bad = 0;
    auto sol = solve_many(w, v, &bad);
    if (!sol)
        throw Fault("hom mu*: component of basis element " +
                    std::to_string(bad) + " is not a member of Hom (x) Hom");
    m.mu = *sol;
    return m;
}

PeriodProductReport period_product(const Diagram& d, const ProductStructure& p,
                                   const GradedRepresentation& t1,
                                   const GradedRepresentation& t2,
                                   const std::vector<VertexId>& F,
                                   const std::vector<VertexId>& Fprime) {
    PeriodProductReport r;
    std::vector<VertexId> fs = sorted_unique(F);
    std::vector<VertexId> fps = sorted_unique(Fprime);
    require_pair_data(p, t1, t2, fs, fs, fps, "period product");

    r.base = period_space(d, t1.rep, t2.rep, fs);
    r.target = period_space(d, t1.rep, t2.rep, fps);

    std::map<std::pair<VertexId, VertexId>, QMat> tau1_inv;
    for (const VertexId& f : fs)
        for (const VertexId& g : fs) {
            auto inv = inverse(t1.tau_at(f, g));
            if (!inv)
                throw Fault("period product: tau1(" + f + ", " + g +
                            ") is not invertible");
            tau1_inv[{f, g}] = *inv;
        }

    // Product of two ambient vectors of P(F), landing in the ambient of
    // P(F').
    auto raw_product = [&](const QVec& x, const QVec& y) {
        QVec z(r.target.layout.total, Rational(0));
        for (const VertexId& f : fs) {
            const auto& bf = r.base.layout.block(f);
            for (const VertexId& g : fs) {
                const auto& bg = r.base.layout.block(g);
                const VertexId& fg = p.product(f, g);
                const auto& bt = r.target.layout.block(fg);
                const QMat& t1i = tau1_inv.at({f, g});
                const QMat& tau2 = t2.tau_at(f, g);
                for (std::size_t i = 0; i < bf.rows; ++i)
                    for (std::size_t b = 0; b < bf.cols; ++b) {
                        const Rational& xc = x[bf.offset + i * bf.cols + b];
                        if (xc == 0) continue;
                        for (std::size_t i2 = 0; i2 < bg.rows; ++i2)
                            for (std::size_t b2 = 0; b2 < bg.cols; ++b2) {
                                Rational c = xc *
                                    y[bg.offset + i2 * bg.cols + b2];
                                if (c == 0) continue;
                                std::size_t wcol = i * bg.rows + i2;
                                std::size_t grow = b * bg.cols + b2;
                                for (std::size_t a = 0; a < bt.rows; ++a) {
                                    if (t1i(a, wcol) == 0) continue;
                                    Rational ca = c * t1i(a, wcol);
                                    for (std::size_t cc = 0; cc < bt.cols; ++cc)
                                        z[bt.offset + a * bt.cols + cc] +=
                                            ca * tau2(grow, cc);
                                }
                            }
                    }
            }
        }
        return z;
    };

    std::size_t np = r.base.dim();
    r.mult = QMat(r.target.dim(), np * np);
    for (std::size_t s = 0; s < np; ++s)
        for (std::size_t t = 0; t < np; ++t) {
            QVec z = raw_product(r.base.quotient.reps[s],
                                 r.base.quotient.reps[t]);
            QVec cls = r.target.quotient.coords(z);
            for (std::size_t a = 0; a < r.target.dim(); ++a)
                r.mult(a, s * np + t) = cls[a];
        }

    // Relations multiply to zero against every representative, both sides.
    r.well_defined = true;
    for (const auto& rel : r.base.relations.vecs) {
        for (std::size_t s = 0; s < np && r.well_defined; ++s) {
            QVec lz = r.target.quotient.coords(
                raw_product(rel, r.base.quotient.reps[s]));
            QVec rz = r.target.quotient.coords(
                raw_product(r.base.quotient.reps[s], rel));
            auto nonzero = [](const QVec& v) {
                return std::any_of(v.begin(), v.end(),
                                   [](const Rational& x) { return x != 0; });
            };
            if (nonzero(lz) || nonzero(rz)) {
                r.well_defined = false;
                r.violations.fail("period product does not kill a relation");
            }
        }
        if (!r.well_defined) break;
    }

    bool all_even = std::all_of(fs.begin(), fs.end(), [&](const VertexId& f) {
        return d.grade(f) % 2 == 0;
    });
    if (all_even) {
        bool comm = true;
        for (std::size_t s = 0; s < np && comm; ++s)
            for (std::size_t t = 0; t < s; ++t)
                for (std::size_t a = 0; a < r.target.dim(); ++a)
                    if (r.mult(a, s * np + t) != r.mult(a, t * np + s)) {
                        comm = false;
                        r.violations.fail("period product is not commutative");
                        break;
                    }
        r.commutative = comm;
    }

    // Psi turns the period product into the mixed comultiplication's dual.
    PsiReport psi_f = psi_map(d, t1.rep, t2.rep, fs);
    PsiReport psi_fp = psi_map(d, t1.rep, t2.rep, fps);
    HomMuStar hm = hom_mu_star(d, p, t1, t2, fs, fs, fps);
    std::size_t n = psi_f.hom.dim();
    bool multiplicative = true;
    for (std::size_t s = 0; s < np && multiplicative; ++s)
        for (std::size_t t = 0; t < np; ++t) {
            QVec lhs(psi_fp.hom.dim(), Rational(0));
            for (std::size_t a = 0; a < r.target.dim(); ++a)
                for (std::size_t k = 0; k < psi_fp.hom.dim(); ++k)
                    lhs[k] += psi_fp.psi(k, a) * r.mult(a, s * np + t);
            QVec xs(n), yt(n);
            for (std::size_t k = 0; k < n; ++k) {
                xs[k] = psi_f.psi(k, s);
                yt[k] = psi_f.psi(k, t);
            }
            QVec rhs(psi_fp.hom.dim(), Rational(0));
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Rational c = xs[i] * yt[j];
                    if (c == 0) continue;
                    for (std::size_t k = 0; k < psi_fp.hom.dim(); ++k)
                        rhs[k] += hm.mu(i * n + j, k) * c;
                }
            if (lhs != rhs) {
                multiplicative = false;
                r.violations.fail("psi does not intertwine the period product "
                                  "with the coalgebra-side multiplication");
                break;
            }
        }
    r.psi_multiplicative = multiplicative;
    return r;
}

PeriodCoactions period_coactions(const Diagram& d, const Representation& t1,
                                 const Representation& t2,
                                 const std::vector<VertexId>& F) {
    PeriodCoactions r;
    std::vector<VertexId> fs = sorted_unique(F);
    EndAlgebraData e1 = end_algebra(d, t1, fs);
    EndAlgebraData e2 = end_algebra(d, t2, fs);
    IntertwinerSpace hom = hom_space(d, t1, t2, fs);
    r.n1 = e1.dim();
    r.n12 = hom.dim();
    r.n2 = e2.dim();

    auto compose_coords = [&](const std::map<VertexId, QMat>& blocks) {
        auto coords = hom.basis.coordinates(hom.assemble(blocks));
        if (!coords)
            throw InternalError("coaction: a composition escaped Hom");
        return *coords;
    };

    // Dual of the action: the column index is the basis element being
    // composed, the row collects the output coordinates.
    r.left = QMat(r.n1 * r.n12, r.n12);
    for (std::size_t k1 = 0; k1 < r.n1; ++k1)
        for (std::size_t k = 0; k < r.n12; ++k) {
            std::map<VertexId, QMat> blocks;
            for (const VertexId& v : fs)
                blocks[v] = hom.element(k, v) * e1.space.element(k1, v);
            QVec c = compose_coords(blocks);
            for (std::size_t kp = 0; kp < r.n12; ++kp)
                r.left(k1 * r.n12 + kp, k) = c[kp];
        }

    r.right = QMat(r.n12 * r.n2, r.n12);
    for (std::size_t k = 0; k < r.n12; ++k)
        for (std::size_t k2 = 0; k2 < r.n2; ++k2) {
            std::map<VertexId, QMat> blocks;
            for (const VertexId& v : fs)
                blocks[v] = e2.space.element(k2, v) * hom.element(k, v);
            QVec c = compose_coords(blocks);
            for (std::size_t kp = 0; kp < r.n12; ++kp)
                r.right(kp * r.n2 + k2, k) = c[kp];
        }

    CoalgebraData c1 = coalgebra_of(e1);
    CoalgebraData c2 = coalgebra_of(e2);

    QMat l_eps(r.n12, r.n12);
    for (std::size_t k = 0; k < r.n12; ++k)
        for (std::size_t kp = 0; kp < r.n12; ++kp)
            for (std::size_t k1 = 0; k1 < r.n1; ++k1)
                l_eps(k, kp) += c1.counit[k1] * r.left(k1 * r.n12 + k, kp);
    if (l_eps != QMat::identity(r.n12))
        r.laws.fail("left coaction fails the counit law");

    QMat r_eps(r.n12, r.n12);
    for (std::size_t k = 0; k < r.n12; ++k)
        for (std::size_t kp = 0; kp < r.n12; ++kp)
            for (std::size_t k2 = 0; k2 < r.n2; ++k2)
                r_eps(k, kp) += r.right(k * r.n2 + k2, kp) * c2.counit[k2];
    if (r_eps != QMat::identity(r.n12))
        r.laws.fail("right coaction fails the counit law");

    if (kron(c1.comult, QMat::identity(r.n12)) * r.left !=
        kron(QMat::identity(r.n1), r.left) * r.left)
        r.laws.fail("left coaction fails coassociativity");
    if (kron(QMat::identity(r.n12), c2.comult) * r.right !=
        kron(r.right, QMat::identity(r.n2)) * r.right)
        r.laws.fail("right coaction fails coassociativity");
    if (kron(QMat::identity(r.n1), r.right) * r.left !=
        kron(r.left, QMat::identity(r.n2)) * r.right)
        r.laws.fail("left and right coactions do not commute");
    return r;
}

} // namespace dgp
