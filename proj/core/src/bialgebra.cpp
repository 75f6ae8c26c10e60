#include "dgp/bialgebra.hpp"

#include <algorithm>
#include <sstream>

namespace dgp {

namespace {

std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool subset_of(const std::vector<VertexId>& small,
               const std::vector<VertexId>& big) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void flatten_into(QMat& target, std::size_t row0, std::size_t col,
                  const QMat& x) {
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            target(row0 + i * x.cols() + j, col) = x(i, j);
}

/// Whether every pairwise product of F is materialized, lands inside F, and
/// carries a tau (so that F can serve as its own third level).
bool self_closed(const ProductStructure& p, const GradedRepresentation& t,
                 const std::vector<VertexId>& F) {
    for (const VertexId& f : F)
        for (const VertexId& g : F) {
            if (!p.has_product(f, g)) return false;
            if (!std::binary_search(F.begin(), F.end(), p.product(f, g)))
                return false;
            if (!t.tau.count({f, g})) return false;
        }
    return true;
}

} // namespace

MuStar mu_star(const Diagram& d, const ProductStructure& p,
               const GradedRepresentation& t, const std::vector<VertexId>& F,
               const std::vector<VertexId>& G,
               const std::vector<VertexId>& Fprime) {
    MuStar m;
    m.F = sorted_unique(F);
    m.G = sorted_unique(G);
    m.Fprime = sorted_unique(Fprime);

    std::vector<std::string> missing;
    for (const VertexId& f : m.F)
        for (const VertexId& g : m.G) {
            if (!p.has_product(f, g)) {
                missing.push_back("product (" + f + ", " + g + ")");
                continue;
            }
            const VertexId& fg = p.product(f, g);
            if (!std::binary_search(m.Fprime.begin(), m.Fprime.end(), fg))
                missing.push_back("vertex '" + fg + "' outside F'");
            if (!t.tau.count({f, g}))
                missing.push_back("tau(" + f + ", " + g + ")");
        }
    if (!missing.empty()) {
        std::ostringstream os;
        os << "mu*: missing product data:";
        for (const auto& s : missing) os << " " << s << ";";
        throw Fault(os.str());
    }

    m.end_left = end_algebra(d, t.rep, m.F);
    m.end_right = m.G == m.F ? m.end_left : end_algebra(d, t.rep, m.G);
    m.end_prod = end_algebra(d, t.rep, m.Fprime);
    std::size_t nl = m.end_left.dim();
    std::size_t nr = m.end_right.dim();
    std::size_t dp = m.end_prod.dim();

    // Ambient: one flattened End(T(f)) (x) End(T(g)) block per pair.
    std::size_t total = 0;
    std::vector<std::size_t> offsets;
    for (const VertexId& f : m.F)
        for (const VertexId& g : m.G) {
            offsets.push_back(total);
            std::size_t n = t.rep.dim(f) * t.rep.dim(g);
            total += n * n;
        }

    QMat w(total, nl * nr);
    QMat v(total, dp);
    std::size_t pair = 0;
    for (const VertexId& f : m.F)
        for (const VertexId& g : m.G) {
            std::size_t row0 = offsets[pair++];
            for (std::size_t i = 0; i < nl; ++i) {
                QMat bf = m.end_left.space.element(i, f);
                for (std::size_t j = 0; j < nr; ++j)
                    flatten_into(w, row0, i * nr + j,
                                 kron(bf, m.end_right.space.element(j, g)));
            }
            const QMat& tau = t.tau_at(f, g);
            auto tinv = inverse(tau);
            if (!tinv)
                throw Fault("mu*: tau(" + f + ", " + g + ") is not invertible");
            const VertexId& fg = p.product(f, g);
            if (m.end_prod.space.layout.block(fg).rows != tau.cols())
                throw Fault("mu*: tau(" + f + ", " + g +
                            ") does not match dim T(" + fg + ")");
            for (std::size_t a = 0; a < dp; ++a)
                flatten_into(v, row0, a,
                             tau * m.end_prod.space.element(a, fg) * *tinv);
        }

    std::size_t bad = 0;
    auto sol = solve_many(w, v, &bad);
    if (!sol)
        throw Fault("mu*: component of End(T|F') basis element " +
                    std::to_string(bad) +
                    " is not a member of End(T|F) (x) End(T|G)");
    m.mu = *sol;
    return m;
}

QVec counit_functional(const EndAlgebraData& e, const VertexId& unit_vertex) {
    if (!e.space.layout.has_block(unit_vertex))
        throw Fault("counit: unit vertex '" + unit_vertex + "' is not in F");
    const auto& b = e.space.layout.block(unit_vertex);
    if (b.rows != 1 || b.cols != 1)
        throw Fault("counit: unit vertex '" + unit_vertex +
                    "' does not carry a line");
    QVec eps(e.dim(), Rational(0));
    for (std::size_t k = 0; k < e.dim(); ++k)
        eps[k] = e.space.element(k, unit_vertex)(0, 0);
    return eps;
}

BialgebraReport comultiplication(
    const Diagram& d, const ProductStructure& p, const GradedRepresentation& t,
    const std::vector<VertexId>& F, const std::vector<VertexId>& Fprime,
    const std::optional<std::vector<VertexId>>& Fsecond) {
    BialgebraReport r;
    MuStar m = mu_star(d, p, t, F, F, Fprime);
    r.F = m.F;
    r.Fprime = m.Fprime;
    r.mu = m.mu;
    r.a_mult = m.mu.transpose();
    r.well_defined = true; // mu_star faults otherwise

    // Cocommutativity: symmetry of the two output legs, plus the middle
    // square tau_{(g,f)} T(alpha_{f,g}) tau_{(f,g)}^{-1} = (-1)^{|f||g|} Swap
    // whose sign cancels under conjugation and must therefore be checked on
    // its own.
    std::size_t n = m.end_left.dim();
    bool sym = true;
    for (std::size_t k = 0; k < m.end_prod.dim() && sym; ++k)
        for (std::size_t i = 0; i < n && sym; ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (r.mu(i * n + j, k) != r.mu(j * n + i, k)) {
                    sym = false;
                    r.violations.fail("mu* is not symmetric in its output legs");
                    break;
                }
    bool middle = true;
    for (const VertexId& f : r.F)
        for (const VertexId& g : r.F) {
            auto it = p.alpha.find({f, g});
            if (it == p.alpha.end())
                throw Fault("cocommutativity: missing commutator edge alpha(" +
                            f + ", " + g + ")");
            auto tinv = inverse(t.tau_at(f, g));
            if (!tinv) throw Fault("cocommutativity: tau not invertible");
            QMat lhs = t.tau_at(g, f) * edge_matrix(d, t.rep, it->second) * *tinv;
            QMat sw = swap_matrix<Rational>(t.rep.dim(f), t.rep.dim(g));
            if (d.grade(f) * d.grade(g) % 2) sw = -sw;
            if (lhs != sw) {
                middle = false;
                r.violations.fail("cocommutativity: middle square fails at (" +
                                  f + ", " + g + ")");
            }
        }
    r.cocommutative = sym && middle;

    // Counit laws, when the unit vertex lies in F and F lies in F'.
    if (!p.unit.empty() &&
        std::binary_search(r.F.begin(), r.F.end(), p.unit) &&
        subset_of(r.F, r.Fprime)) {
        QVec eps = counit_functional(m.end_left, p.unit);
        r.counit = eps;
        QMat rest = restriction_matrix(m.end_prod, m.end_left);
        QMat left(n, m.end_prod.dim());
        QMat right(n, m.end_prod.dim());
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t a = 0; a < m.end_prod.dim(); ++a)
                for (std::size_t i = 0; i < n; ++i) {
                    left(k, a) += eps[i] * r.mu(i * n + k, a);
                    right(k, a) += r.mu(k * n + i, a) * eps[i];
                }
        bool law = left == rest && right == rest;
        r.counit_law = law;
        if (!law)
            r.violations.fail("counit law: (eps (x) id) mu* differs from the "
                              "restriction to F");
    }

    // Coassociativity through a third level F'': LHS and RHS read an
    // End(T|F'') element down to End(T|F)^{(x)3} along the two bracketings,
    // with the restriction to F closing the outer leg.
    std::optional<std::vector<VertexId>> f2 = Fsecond;
    if (!f2 && self_closed(p, t, r.Fprime)) f2 = r.Fprime;
    if (f2 && subset_of(r.F, r.Fprime)) {
        MuStar m2 = mu_star(d, p, t, r.Fprime, r.Fprime, *f2);
        QMat rest = restriction_matrix(m2.end_left, m.end_left);
        QMat lhs = kron(r.mu, rest) * m2.mu;
        QMat rhs = kron(rest, r.mu) * m2.mu;
        bool law = lhs == rhs;
        r.coassociative = law;
        if (!law)
            r.violations.fail("coassociativity: the two bracketed descents "
                              "from End(T|F'') disagree");
    }
    return r;
}

} // namespace dgp
