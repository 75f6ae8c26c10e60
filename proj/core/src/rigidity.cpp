#include "dgp/rigidity.hpp"

#include <algorithm>

namespace dgp {

Pairing make_pairing(QMat gram) {
    if (!gram.is_square()) throw Fault("pairing: Gram matrix must be square");
    Pairing p;
    p.perfect = rank(gram) == gram.rows();
    p.gram = std::move(gram);
    return p;
}

bool perfect_duality_check(const QMat& a) {
    if (!a.is_square())
        throw Fault("perfect duality: Gram matrix must be square");
    return rank(a) == a.rows();
}

Rational evaluate(const MatrixPolynomial& p, const QMat& x) {
    Rational total(0);
    for (const auto& [mono, coeff] : p) {
        Rational term = coeff;
        for (const auto& [r, c] : mono) term *= x(r, c);
        total += term;
    }
    return total;
}

IsometryEquations isometry_equations(const QMat& a) {
    if (!a.is_square())
        throw Fault("isometry equations: Gram matrix must be square");
    if (rank(a) != a.rows())
        throw Fault("isometry equations: pairing is not perfect");
    const std::size_t n = a.rows();
    IsometryEquations out;
    out.n = n;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            MatrixPolynomial p;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t rp = 0; rp < n; ++rp) {
                    if (a(r, rp) == Rational(0)) continue;
                    std::vector<std::pair<std::size_t, std::size_t>> mono = {
                        {r, i}, {rp, j}};
                    std::sort(mono.begin(), mono.end());
                    p[mono] += a(r, rp);
                }
            p[{}] -= a(i, j);
            for (auto it = p.begin(); it != p.end();)
                it = it->second == Rational(0) ? p.erase(it) : std::next(it);
            out.equations.push_back(std::move(p));
        }
    for (const auto& p : out.equations) {
        if (p.empty()) continue;
        if (std::find(out.distinct.begin(), out.distinct.end(), p) ==
            out.distinct.end())
            out.distinct.push_back(p);
    }
    return out;
}

bool satisfies_isometry_equations(const IsometryEquations& eqs,
                                  const QMat& x) {
    if (x.rows() != eqs.n || x.cols() != eqs.n)
        throw Fault("isometry equations: matrix size does not match");
    for (const auto& p : eqs.equations)
        if (!(evaluate(p, x) == Rational(0))) return false;
    return true;
}

IsometryInverseReport isometry_inverse(const QMat& a, const QMat& x) {
    if (!a.is_square() || !x.is_square() || a.rows() != x.rows())
        throw Fault("isometry inverse: shapes do not match");
    std::optional<QMat> b = inverse(a);
    if (!b) throw Fault("isometry inverse: pairing is not perfect");
    IsometryInverseReport out;
    out.y = *b * (x.transpose() * a);
    out.hypothesis = x.transpose() * a * x == a;
    if (out.hypothesis) {
        QMat id = QMat::identity(a.rows());
        if (!(out.y * x == id) || !(x * out.y == id))
            throw InternalError(
                "isometry inverse: forced inverse law failed");
        out.two_sided_inverse = true;
    }
    return out;
}

MonoidGroupReport monoid_is_group(const std::vector<QMat>& m) {
    if (m.empty()) throw Fault("monoid: empty member list");
    const std::size_t n = m.front().rows();
    for (const QMat& g : m)
        if (g.rows() != n || g.cols() != n)
            throw Fault("monoid: members have mixed shapes");
    for (std::size_t i = 0; i < m.size(); ++i)
        if (rank(m[i]) != n)
            throw Fault("monoid: member " + std::to_string(i) +
                        " is not invertible");

    MonoidGroupReport out;
    auto index_of = [&](const QMat& g) -> std::size_t {
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] == g) return i;
        return m.size();
    };

    out.closed = true;
    for (std::size_t i = 0; i < m.size() && out.closed; ++i)
        for (std::size_t j = 0; j < m.size() && out.closed; ++j)
            if (index_of(m[i] * m[j]) == m.size()) {
                out.closed = false;
                out.violations.fail("product of members " +
                                    std::to_string(i) + " and " +
                                    std::to_string(j) +
                                    " is outside the set");
            }
    QMat id = QMat::identity(n);
    std::size_t id_at = index_of(id);
    out.has_identity = id_at != m.size();
    if (!out.has_identity)
        out.violations.fail("identity matrix is not a member");
    if (!out.closed || !out.has_identity) return out;

    // Chain g^k M: each step permutes the member set, so it stabilizes at
    // once; stabilization hands back the identity inside gM, whose
    // preimage is the inverse witness.
    out.is_group = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        std::vector<std::size_t> cur(m.size());
        for (std::size_t j = 0; j < m.size(); ++j) cur[j] = j;
        std::vector<std::size_t> next;
        for (;;) {
            next.clear();
            for (std::size_t j : cur) {
                std::size_t k = index_of(m[i] * m[j]);
                if (k == m.size())
                    throw InternalError("monoid: closed set escaped itself");
                next.push_back(k);
            }
            std::vector<std::size_t> a = cur, b = next;
            std::sort(a.begin(), a.end());
            a.erase(std::unique(a.begin(), a.end()), a.end());
            std::sort(b.begin(), b.end());
            b.erase(std::unique(b.begin(), b.end()), b.end());
            if (a == b) break;
            cur = next;
        }
        std::size_t inv = m.size();
        for (std::size_t j = 0; j < m.size(); ++j)
            if (index_of(m[i] * m[j]) == id_at) {
                inv = j;
                break;
            }
        if (inv == m.size())
            throw InternalError(
                "monoid: stabilized chain carries no inverse for member " +
                std::to_string(i));
        out.inverse_index.push_back(inv);
    }
    return out;
}

std::vector<QMat> regular_representation(const FiniteGroup& g) {
    Report laws = check_group(g);
    if (!laws.ok())
        throw Fault("regular representation: group laws fail: " +
                    laws.violations.front());
    std::vector<QMat> out;
    out.reserve(g.size);
    for (std::size_t a = 0; a < g.size; ++a) {
        QMat p(g.size, g.size);
        for (std::size_t b = 0; b < g.size; ++b) p(g.mul[a][b], b) = 1;
        out.push_back(std::move(p));
    }
    return out;
}

QMat symmetric_extension(const QMat& q) {
    if (!q.is_square())
        throw Fault("symmetric extension: pairing matrix must be square");
    if (rank(q) != q.rows())
        throw Fault("symmetric extension: pairing is not perfect");
    const std::size_t n = q.rows();
    QMat s(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            s(i, n + j) = q(i, j);
            s(n + j, i) = q(i, j);
        }
    if (!perfect_duality_check(s))
        throw InternalError("symmetric extension: block pairing degenerated");
    return s;
}

QMat orthogonal_sum(const QMat& a1, const QMat& a2) {
    if (!a1.is_square() || !a2.is_square())
        throw Fault("orthogonal sum: Gram matrices must be square");
    QMat s(a1.rows() + a2.rows(), a1.cols() + a2.cols());
    for (std::size_t i = 0; i < a1.rows(); ++i)
        for (std::size_t j = 0; j < a1.cols(); ++j) s(i, j) = a1(i, j);
    for (std::size_t i = 0; i < a2.rows(); ++i)
        for (std::size_t j = 0; j < a2.cols(); ++j)
            s(a1.rows() + i, a1.cols() + j) = a2(i, j);
    return s;
}

} // namespace dgp
