#include "dgp/torsor.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace dgp {

namespace {

constexpr std::size_t npos = static_cast<std::size_t>(-1);

std::string tup(std::initializer_list<std::size_t> xs) {
    std::string s = "(";
    bool first = true;
    for (std::size_t x : xs) {
        if (!first) s += ", ";
        s += std::to_string(x);
        first = false;
    }
    return s + ")";
}

void shape_check(const FiniteTorsor& x) {
    if (x.table.size() != x.size)
        throw Fault("torsor: table has " + std::to_string(x.table.size()) +
                    " layers, expected " + std::to_string(x.size));
    for (const auto& layer : x.table) {
        if (layer.size() != x.size)
            throw Fault("torsor: table is not cubic");
        for (const auto& row : layer) {
            if (row.size() != x.size)
                throw Fault("torsor: table is not cubic");
            for (std::size_t v : row)
                if (v >= x.size)
                    throw Fault("torsor: table entry out of range");
        }
    }
}

/// Failure sink that lists the first few messages and counts the rest.
class CappedFailures {
public:
    explicit CappedFailures(Report& rep, std::size_t cap = 16)
        : rep_(rep), cap_(cap) {}
    void fail(const std::string& msg) {
        if (count_ < cap_) rep_.fail(msg);
        ++count_;
    }
    void finish(const std::string& what) {
        if (count_ > cap_)
            rep_.fail(what + ": " + std::to_string(count_ - cap_) +
                      " further violations not listed");
    }

private:
    Report& rep_;
    std::size_t cap_;
    std::size_t count_ = 0;
};

} // namespace

std::size_t FiniteTorsor::op(std::size_t x, std::size_t y, std::size_t z) const {
    if (x >= size || y >= size || z >= size)
        throw Fault("torsor: operand out of range");
    return table[x][y][z];
}

Report check_torsor(const FiniteTorsor& x) {
    shape_check(x);
    Report rep;
    const std::size_t n = x.size;
    {
        CappedFailures f(rep);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                std::size_t r1 = x.table[a][b][b];
                if (r1 != a)
                    f.fail("axiom (1): t" + tup({a, b, b}) + " = " +
                           std::to_string(r1) + ", expected " +
                           std::to_string(a));
                std::size_t r2 = x.table[b][b][a];
                if (r2 != a)
                    f.fail("axiom (1): t" + tup({b, b, a}) + " = " +
                           std::to_string(r2) + ", expected " +
                           std::to_string(a));
            }
        f.finish("axiom (1)");
    }
    {
        CappedFailures f(rep);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    for (std::size_t u = 0; u < n; ++u)
                        for (std::size_t v = 0; v < n; ++v) {
                            std::size_t lhs = x.table[x.table[a][b][c]][u][v];
                            std::size_t mid = x.table[a][x.table[u][c][b]][v];
                            std::size_t rhs = x.table[a][b][x.table[c][u][v]];
                            if (lhs != mid)
                                f.fail("axiom (2): t(t(x,y,z), u, v) != "
                                       "t(x, t(u,z,y), v) at " +
                                       tup({a, b, c, u, v}));
                            if (lhs != rhs)
                                f.fail("axiom (2): t(t(x,y,z), u, v) != "
                                       "t(x, y, t(z,u,v)) at " +
                                       tup({a, b, c, u, v}));
                        }
        f.finish("axiom (2)");
    }
    return rep;
}

Report check_group(const FiniteGroup& g) {
    if (g.mul.size() != g.size)
        throw Fault("group: multiplication table has " +
                    std::to_string(g.mul.size()) + " rows, expected " +
                    std::to_string(g.size));
    for (const auto& row : g.mul) {
        if (row.size() != g.size)
            throw Fault("group: multiplication table is not square");
        for (std::size_t v : row)
            if (v >= g.size)
                throw Fault("group: table entry out of range");
    }
    if (g.inv.size() != g.size)
        throw Fault("group: inverse table has wrong size");
    for (std::size_t v : g.inv)
        if (v >= g.size)
            throw Fault("group: inverse entry out of range");
    if (g.size > 0 && g.identity >= g.size)
        throw Fault("group: identity out of range");

    Report rep;
    CappedFailures f(rep);
    for (std::size_t a = 0; a < g.size; ++a) {
        if (g.mul[g.identity][a] != a || g.mul[a][g.identity] != a)
            f.fail("identity law fails at " + std::to_string(a));
        if (g.mul[a][g.inv[a]] != g.identity ||
            g.mul[g.inv[a]][a] != g.identity)
            f.fail("inverse law fails at " + std::to_string(a));
    }
    for (std::size_t a = 0; a < g.size; ++a)
        for (std::size_t b = 0; b < g.size; ++b)
            for (std::size_t c = 0; c < g.size; ++c)
                if (g.mul[g.mul[a][b]][c] != g.mul[a][g.mul[b][c]])
                    f.fail("associativity fails at " + tup({a, b, c}));
    f.finish("group laws");
    return rep;
}

FiniteTorsor torsor_of_group(const FiniteGroup& g) {
    Report laws = check_group(g);
    if (!laws.ok())
        throw Fault("torsor of group: group laws fail: " +
                    laws.violations.front());
    FiniteTorsor t;
    t.size = g.size;
    const std::size_t n = g.size;
    t.table.assign(n, std::vector<std::vector<std::size_t>>(
                          n, std::vector<std::size_t>(n, 0)));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            for (std::size_t z = 0; z < n; ++z)
                t.table[x][y][z] = g.mul[g.mul[x][g.inv[y]]][z];
    return t;
}

FiniteGroup group_at(const FiniteTorsor& x, std::size_t e) {
    Report ax = check_torsor(x);
    if (!ax.ok())
        throw Fault("group at basepoint: torsor axioms fail: " +
                    ax.violations.front());
    if (e >= x.size)
        throw Fault("group at basepoint: basepoint out of range");
    FiniteGroup g;
    g.size = x.size;
    g.identity = e;
    const std::size_t n = x.size;
    g.mul.assign(n, std::vector<std::size_t>(n, 0));
    g.inv.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) g.mul[a][b] = x.table[a][e][b];
        g.inv[a] = x.table[e][a][e];
    }
    Report laws = check_group(g);
    if (!laws.ok())
        throw InternalError("group at basepoint: derived table breaks group "
                            "laws: " +
                            laws.violations.front());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (x.table[a][b][c] != g.mul[g.mul[a][g.inv[b]]][c])
                    throw InternalError(
                        "group at basepoint: round trip t(g, h, k) = "
                        "g h^{-1} k fails at " +
                        tup({a, b, c}));
    return g;
}

namespace {

TorsorQuotient make_pair_group(const FiniteTorsor& x, bool left) {
    const std::string tag = left ? "gl group" : "gr group";
    Report ax = check_torsor(x);
    if (!ax.ok())
        throw Fault(tag + ": torsor axioms fail: " + ax.violations.front());

    TorsorQuotient out;
    out.left = left;
    const std::size_t n = x.size;
    if (n == 0) {
        out.simply_transitive = true;
        return out;
    }

    const std::size_t P = n * n;
    auto pidx = [n](std::size_t a, std::size_t b) { return a * n + b; };
    auto pair_str = [n](std::size_t p) { return tup({p / n, p % n}); };
    auto compose = [&](std::size_t p, std::size_t q) {
        std::size_t a = p / n, b = p % n, c = q / n, d = q % n;
        return left ? pidx(x.table[a][b][c], d) : pidx(a, x.table[b][c][d]);
    };

    // One-step identifications (a,b) ~ (t(a,b,s), s), mirrored for the
    // right version as (a,b) ~ (s, t(s,a,b)).
    std::vector<std::vector<std::size_t>> step(P);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t s = 0; s < n; ++s)
                step[pidx(a, b)].push_back(left ? pidx(x.table[a][b][s], s)
                                                : pidx(s, x.table[s][a][b]));
    for (auto& s : step) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    auto related = [&](std::size_t p, std::size_t q) {
        return std::binary_search(step[p].begin(), step[p].end(), q);
    };
    {
        CappedFailures f(out.checks, 8);
        for (std::size_t p = 0; p < P; ++p)
            if (!related(p, p))
                f.fail("one-step relation not reflexive at " + pair_str(p));
        for (std::size_t p = 0; p < P; ++p)
            for (std::size_t q : step[p]) {
                if (!related(q, p))
                    f.fail("one-step relation not symmetric at " +
                           pair_str(p) + " ~ " + pair_str(q));
                for (std::size_t r : step[q])
                    if (!related(p, r))
                        f.fail("one-step relation not transitive at " +
                               pair_str(p) + " ~ " + pair_str(q) + " ~ " +
                               pair_str(r));
            }
        f.finish("one-step relation");
    }

    // Classes by transitive closure; ids in first-appearance order.
    std::vector<std::size_t> parent(P);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        return v;
    };
    for (std::size_t p = 0; p < P; ++p)
        for (std::size_t q : step[p]) {
            std::size_t a = find(p), b = find(q);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    out.class_of.assign(P, 0);
    std::vector<std::size_t> id_of_root(P, npos);
    std::size_t k = 0;
    for (std::size_t p = 0; p < P; ++p) {
        std::size_t r = find(p);
        if (id_of_root[r] == npos) id_of_root[r] = k++;
        out.class_of[p] = id_of_root[r];
    }

    // Class multiplication, re-verified well defined over all members.
    std::vector<std::vector<std::size_t>> mul(k,
                                              std::vector<std::size_t>(k, npos));
    {
        CappedFailures f(out.checks, 8);
        for (std::size_t p = 0; p < P; ++p)
            for (std::size_t q = 0; q < P; ++q) {
                std::size_t ci = out.class_of[p], cj = out.class_of[q];
                std::size_t cr = out.class_of[compose(p, q)];
                if (mul[ci][cj] == npos)
                    mul[ci][cj] = cr;
                else if (mul[ci][cj] != cr)
                    f.fail("class product not well defined at " + pair_str(p) +
                           " * " + pair_str(q));
            }
        f.finish("class product");
    }

    std::size_t e_class = out.class_of[pidx(0, 0)];
    for (std::size_t s = 0; s < n; ++s)
        if (out.class_of[pidx(s, s)] != e_class) {
            out.checks.fail("diagonal pair " + pair_str(pidx(s, s)) +
                            " is not in the identity class");
            break;
        }

    std::vector<std::size_t> inv(k, npos);
    for (std::size_t p = 0; p < P; ++p) {
        std::size_t c = out.class_of[p];
        std::size_t cs = out.class_of[pidx(p % n, p / n)];
        if (inv[c] == npos)
            inv[c] = cs;
        else if (inv[c] != cs)
            out.checks.fail("class inverse not well defined at " + pair_str(p));
    }

    out.group.size = k;
    out.group.mul = mul;
    out.group.identity = e_class;
    out.group.inv = inv;
    out.checks.merge(check_group(out.group));

    // The action on points, re-verified well defined over all members.
    out.action.assign(k, std::vector<std::size_t>(n, npos));
    {
        CappedFailures f(out.checks, 8);
        for (std::size_t p = 0; p < P; ++p) {
            std::size_t a = p / n, b = p % n, c = out.class_of[p];
            for (std::size_t y = 0; y < n; ++y) {
                std::size_t img = left ? x.table[a][b][y] : x.table[y][a][b];
                if (out.action[c][y] == npos)
                    out.action[c][y] = img;
                else if (out.action[c][y] != img)
                    f.fail("action not well defined: " + pair_str(p) +
                           " at point " + std::to_string(y));
            }
        }
        f.finish("action");
    }
    for (std::size_t y = 0; y < n; ++y)
        if (out.action[e_class][y] != y) {
            out.checks.fail("identity class moves point " + std::to_string(y));
            break;
        }
    {
        CappedFailures f(out.checks, 8);
        for (std::size_t ci = 0; ci < k; ++ci)
            for (std::size_t cj = 0; cj < k; ++cj)
                for (std::size_t y = 0; y < n; ++y) {
                    std::size_t seq = left
                                          ? out.action[ci][out.action[cj][y]]
                                          : out.action[cj][out.action[ci][y]];
                    if (out.action[mul[ci][cj]][y] != seq)
                        f.fail("action incompatible with multiplication at "
                               "classes " +
                               tup({ci, cj}) + " point " + std::to_string(y));
                }
        f.finish("action compatibility");
    }

    out.simply_transitive = true;
    {
        CappedFailures f(out.checks, 8);
        for (std::size_t from = 0; from < n; ++from)
            for (std::size_t to = 0; to < n; ++to) {
                std::size_t hits = 0;
                for (std::size_t c = 0; c < k; ++c)
                    if (out.action[c][from] == to) ++hits;
                if (hits != 1) {
                    out.simply_transitive = false;
                    f.fail("simple transitivity fails: " +
                           std::to_string(hits) + " classes send " +
                           std::to_string(from) + " to " + std::to_string(to));
                }
            }
        f.finish("simple transitivity");
    }
    if (k != n)
        out.checks.fail("group order " + std::to_string(k) +
                        " differs from torsor size " + std::to_string(n));

    // x -> class(x, e) (left) or class(e, x) (right) is an isomorphism from
    // the basepoint group, inverted by letting a class act on e.
    {
        CappedFailures f(out.checks, 8);
        for (std::size_t e = 0; e < n; ++e) {
            FiniteGroup ge = group_at(x, e);
            auto i_of = [&](std::size_t s) {
                return out.class_of[left ? pidx(s, e) : pidx(e, s)];
            };
            std::vector<bool> seen(k, false);
            bool bij = (k == n);
            for (std::size_t s = 0; s < n; ++s) {
                std::size_t c = i_of(s);
                if (seen[c]) bij = false;
                seen[c] = true;
            }
            if (!bij)
                f.fail("basepoint " + std::to_string(e) +
                       ": point-to-class map is not a bijection");
            if (i_of(e) != e_class)
                f.fail("basepoint " + std::to_string(e) +
                       ": identity does not map to the identity class");
            for (std::size_t g = 0; g < n; ++g)
                for (std::size_t h = 0; h < n; ++h)
                    if (i_of(ge.mul[g][h]) != mul[i_of(g)][i_of(h)])
                        f.fail("basepoint " + std::to_string(e) +
                               ": map is not a homomorphism at " +
                               tup({g, h}));
            for (std::size_t c = 0; c < k; ++c)
                if (i_of(out.action[c][e]) != c)
                    f.fail("basepoint " + std::to_string(e) +
                           ": acting on the basepoint does not invert the "
                           "map at class " +
                           std::to_string(c));
            for (std::size_t s = 0; s < n; ++s)
                if (out.action[i_of(s)][e] != s)
                    f.fail("basepoint " + std::to_string(e) +
                           ": round trip through the class of " +
                           std::to_string(s) + " misses");
        }
        f.finish("basepoint isomorphisms");
    }
    return out;
}

} // namespace

TorsorQuotient gl_group(const FiniteTorsor& x) {
    return make_pair_group(x, true);
}

TorsorQuotient gr_group(const FiniteTorsor& x) {
    return make_pair_group(x, false);
}

FiniteGroup cyclic_group(std::size_t n) {
    if (n == 0) throw Fault("cyclic group: order must be positive");
    FiniteGroup g;
    g.size = n;
    g.identity = 0;
    g.mul.assign(n, std::vector<std::size_t>(n, 0));
    g.inv.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
        g.inv[a] = (n - a) % n;
    }
    return g;
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    FiniteGroup g;
    g.size = a.size * b.size;
    g.identity = a.identity * b.size + b.identity;
    g.mul.assign(g.size, std::vector<std::size_t>(g.size, 0));
    g.inv.assign(g.size, 0);
    for (std::size_t ia = 0; ia < a.size; ++ia)
        for (std::size_t ib = 0; ib < b.size; ++ib) {
            for (std::size_t ja = 0; ja < a.size; ++ja)
                for (std::size_t jb = 0; jb < b.size; ++jb)
                    g.mul[ia * b.size + ib][ja * b.size + jb] =
                        a.mul[ia][ja] * b.size + b.mul[ib][jb];
            g.inv[ia * b.size + ib] = a.inv[ia] * b.size + b.inv[ib];
        }
    return g;
}

FiniteGroup dihedral_group(std::size_t n) {
    if (n == 0) throw Fault("dihedral group: order must be positive");
    FiniteGroup g;
    g.size = 2 * n;
    g.identity = 0;
    g.mul.assign(g.size, std::vector<std::size_t>(g.size, 0));
    g.inv.assign(g.size, 0);
    auto idx = [n](std::size_t flip, std::size_t rot) { return flip * n + rot; };
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t j = 0; j < n; ++j) {
                    // (r^i s^a)(r^j s^b) = r^{i + (a ? -j : j)} s^{a xor b}
                    std::size_t rot = (i + (a ? (n - j) % n : j)) % n;
                    g.mul[idx(a, i)][idx(b, j)] = idx(a ^ b, rot);
                }
            g.inv[idx(a, i)] = a ? idx(1, i) : idx(0, (n - i) % n);
        }
    return g;
}

FiniteGroup quaternion_group() {
    // Axes 0..3 stand for 1, i, j, k; index = sign * 4 + axis.
    auto amul = [](std::size_t a,
                   std::size_t b) -> std::pair<std::size_t, std::size_t> {
        if (a == 0) return {0, b};
        if (b == 0) return {0, a};
        if (a == b) return {1, 0};
        if (a == 1 && b == 2) return {0, 3};
        if (a == 2 && b == 3) return {0, 1};
        if (a == 3 && b == 1) return {0, 2};
        if (a == 2 && b == 1) return {1, 3};
        if (a == 3 && b == 2) return {1, 1};
        return {1, 2}; // a == 1, b == 3
    };
    FiniteGroup g;
    g.size = 8;
    g.identity = 0;
    g.mul.assign(8, std::vector<std::size_t>(8, 0));
    g.inv.assign(8, 0);
    for (std::size_t sa = 0; sa < 2; ++sa)
        for (std::size_t a = 0; a < 4; ++a) {
            for (std::size_t sb = 0; sb < 2; ++sb)
                for (std::size_t b = 0; b < 4; ++b) {
                    auto [s, ax] = amul(a, b);
                    g.mul[sa * 4 + a][sb * 4 + b] = ((sa ^ sb ^ s) * 4) + ax;
                }
            g.inv[sa * 4 + a] = a == 0 ? sa * 4 : ((sa ^ 1) * 4 + a);
        }
    return g;
}

std::vector<FiniteGroup> small_group_catalog(std::size_t max_order) {
    if (max_order > 8)
        throw Fault("small group catalog: complete only through order 8");
    std::vector<FiniteGroup> out;
    auto add = [&](FiniteGroup g) {
        if (g.size <= max_order) out.push_back(std::move(g));
    };
    add(cyclic_group(1));
    add(cyclic_group(2));
    add(cyclic_group(3));
    add(cyclic_group(4));
    add(direct_product(cyclic_group(2), cyclic_group(2)));
    add(cyclic_group(5));
    add(cyclic_group(6));
    add(dihedral_group(3));
    add(cyclic_group(7));
    add(cyclic_group(8));
    add(direct_product(cyclic_group(4), cyclic_group(2)));
    add(direct_product(cyclic_group(2),
                       direct_product(cyclic_group(2), cyclic_group(2))));
    add(dihedral_group(4));
    add(quaternion_group());
    return out;
}

template <FieldScalar K>
Mat<K> ternary_product(const Mat<K>& x, const Mat<K>& y, const Mat<K>& z) {
    if (!y.is_square() || x.cols() != y.rows() || y.cols() != z.rows())
        throw Fault("ternary product: shape mismatch");
    std::optional<Mat<K>> yi = inverse(y);
    if (!yi) throw Fault("ternary product: middle factor is singular");
    return x * (*yi * z);
}

template QMat ternary_product(const QMat&, const QMat&, const QMat&);
template Mat<NFElem> ternary_product(const Mat<NFElem>&, const Mat<NFElem>&,
                                     const Mat<NFElem>&);

const char* to_string(MatrixTorsorVerdict v) {
    switch (v) {
    case MatrixTorsorVerdict::pass: return "pass";
    case MatrixTorsorVerdict::fail: return "fail";
    default: return "inconclusive";
    }
}

namespace {

template <FieldScalar K>
struct TorsorSample {
    std::vector<K> ambient;
    std::vector<Mat<K>> blocks;
    std::vector<Mat<K>> inv_blocks; // filled only when every block inverts
};

template <FieldScalar K>
void run_matrix_torsor(const IntertwinerSpace& hom,
                       const std::vector<K>& palette, std::size_t samples,
                       MatrixTorsorReport& out) {
    const std::size_t m = hom.dim();
    const std::size_t nv = hom.verts.size();
    out.hom_dim = m;
    if (m == 0) return;

    std::vector<std::vector<K>> basis_amb;
    std::vector<std::vector<Mat<K>>> basis_blocks(m);
    for (std::size_t bk = 0; bk < m; ++bk) {
        std::vector<K> row;
        row.reserve(hom.basis.ambient);
        for (const Rational& c : hom.basis.vecs[bk]) row.push_back(K(c));
        basis_amb.push_back(std::move(row));
        for (std::size_t vi = 0; vi < nv; ++vi)
            basis_blocks[bk].push_back(lift<K>(hom.element(bk, hom.verts[vi])));
    }
    SubspaceBasis<K> span = make_subspace(hom.basis.ambient, basis_amb);

    bool all_square = true;
    for (const auto& b : hom.layout.blocks)
        if (b.rows != b.cols) all_square = false;

    // Deterministic coefficient grid: three dense seed combinations, then
    // an odometer over {0} + palette, capped. Digit d > 0 means
    // palette[d-1], digit 0 means the coefficient is absent.
    const std::size_t member_cap = std::clamp<std::size_t>(samples, 16, 128);
    const std::size_t np = palette.size();
    std::vector<std::vector<std::size_t>> digit_sets;
    std::set<std::vector<std::size_t>> seen;
    auto push_digits = [&](std::vector<std::size_t> dg) {
        if (digit_sets.size() >= member_cap) return;
        bool zero = true;
        for (std::size_t d : dg)
            if (d != 0) zero = false;
        if (zero) return;
        if (seen.insert(dg).second) digit_sets.push_back(std::move(dg));
    };
    {
        std::vector<std::size_t> ones(m, 1), alt(m), ramp(m);
        for (std::size_t i = 0; i < m; ++i) {
            alt[i] = i % 2 ? 2 : 1;
            ramp[i] = 1 + (i % np);
        }
        push_digits(ones);
        push_digits(alt);
        push_digits(ramp);
        std::vector<std::size_t> dg(m, 0);
        bool done = false;
        while (!done && digit_sets.size() < member_cap) {
            std::size_t pos = m;
            done = true;
            while (pos-- > 0) {
                if (dg[pos] < np) {
                    ++dg[pos];
                    done = false;
                    break;
                }
                dg[pos] = 0;
            }
            if (!done) push_digits(dg);
        }
    }

    std::vector<TorsorSample<K>> members;
    std::vector<std::size_t> invertible;
    for (const auto& dg : digit_sets) {
        TorsorSample<K> s;
        s.ambient.assign(hom.basis.ambient, K(0));
        for (std::size_t bk = 0; bk < m; ++bk) {
            if (dg[bk] == 0) continue;
            const K& c = palette[dg[bk] - 1];
            for (std::size_t j = 0; j < hom.basis.ambient; ++j)
                s.ambient[j] = s.ambient[j] + c * basis_amb[bk][j];
        }
        for (std::size_t vi = 0; vi < nv; ++vi) {
            const auto& b = hom.layout.block(hom.verts[vi]);
            Mat<K> blk(b.rows, b.cols);
            for (std::size_t bk = 0; bk < m; ++bk) {
                if (dg[bk] == 0) continue;
                const K& c = palette[dg[bk] - 1];
                for (std::size_t i = 0; i < b.rows; ++i)
                    for (std::size_t j = 0; j < b.cols; ++j)
                        blk(i, j) = blk(i, j) + c * basis_blocks[bk][vi](i, j);
            }
            s.blocks.push_back(std::move(blk));
        }
        if (all_square) {
            std::vector<Mat<K>> invs;
            bool inv_ok = true;
            for (const auto& blk : s.blocks) {
                auto iv = inverse(blk);
                if (!iv) {
                    inv_ok = false;
                    break;
                }
                invs.push_back(std::move(*iv));
            }
            if (inv_ok) {
                s.inv_blocks = std::move(invs);
                invertible.push_back(members.size());
            }
        }
        members.push_back(std::move(s));
    }
    out.members_sampled = members.size();
    out.invertible_samples = invertible.size();
    if (invertible.empty()) return;

    out.closure = out.axioms = out.entry_formula = true;
    auto flatten = [&](const std::vector<Mat<K>>& blocks) {
        std::vector<K> v(hom.basis.ambient, K(0));
        for (std::size_t vi = 0; vi < nv; ++vi) {
            const auto& b = hom.layout.block(hom.verts[vi]);
            for (std::size_t i = 0; i < b.rows; ++i)
                for (std::size_t j = 0; j < b.cols; ++j)
                    v[b.offset + i * b.cols + j] = blocks[vi](i, j);
        }
        return v;
    };
    auto ternary_blocks = [&](const TorsorSample<K>& xs,
                              const TorsorSample<K>& ys,
                              const TorsorSample<K>& zs) {
        std::vector<Mat<K>> w;
        w.reserve(nv);
        for (std::size_t vi = 0; vi < nv; ++vi)
            w.push_back(xs.blocks[vi] * (ys.inv_blocks[vi] * zs.blocks[vi]));
        return w;
    };

    CappedFailures f(out.violations, 12);
    const std::size_t ns = members.size();
    const std::size_t ni = invertible.size();

    // Closure and the entrywise formula over sample x invertible x sample.
    const std::size_t triple_limit = std::min(samples, ns * ni * ns);
    for (std::size_t t = 0; t < triple_limit; ++t) {
        std::size_t zi = t % ns;
        std::size_t yi = invertible[(t / ns) % ni];
        std::size_t xi = (t / (ns * ni)) % ns;
        const auto& xs = members[xi];
        const auto& ys = members[yi];
        const auto& zs = members[zi];
        auto w = ternary_blocks(xs, ys, zs);
        ++out.triples_checked;
        if (!span.contains(flatten(w))) {
            out.closure = false;
            f.fail("closure: triple " + tup({xi, yi, zi}) +
                   " leaves the intertwiner space");
        }
        for (std::size_t vi = 0; vi < nv; ++vi) {
            const Mat<K>& xb = xs.blocks[vi];
            const Mat<K>& yb = ys.inv_blocks[vi];
            const Mat<K>& zb = zs.blocks[vi];
            bool good = true;
            for (std::size_t i = 0; i < w[vi].rows(); ++i)
                for (std::size_t j = 0; j < w[vi].cols(); ++j) {
                    K acc = K(0);
                    for (std::size_t kk = 0; kk < xb.cols(); ++kk)
                        for (std::size_t ll = 0; ll < zb.rows(); ++ll)
                            acc = acc + xb(i, kk) * yb(kk, ll) * zb(ll, j);
                    if (!(acc == w[vi](i, j))) good = false;
                }
            if (!good) {
                out.entry_formula = false;
                f.fail("entry formula: mismatch at triple " +
                       tup({xi, yi, zi}) + " vertex '" + hom.verts[vi] + "'");
            }
        }
    }

    // Axiom (1) on sampled points: t(x,y,y) = t(y,y,x) = x.
    const std::size_t pair_limit = std::min(samples, ns * ni);
    for (std::size_t t = 0; t < pair_limit; ++t) {
        std::size_t xi = t % ns;
        std::size_t yi = invertible[(t / ns) % ni];
        const auto& xs = members[xi];
        const auto& ys = members[yi];
        ++out.axiom_pairs_checked;
        if (ternary_blocks(xs, ys, ys) != xs.blocks) {
            out.axioms = false;
            f.fail("axiom (1): t(x, y, y) != x at pair " + tup({xi, yi}));
        }
        if (ternary_blocks(ys, ys, xs) != xs.blocks) {
            out.axioms = false;
            f.fail("axiom (1): t(y, y, x) != x at pair " + tup({xi, yi}));
        }
    }

    // Axiom (2) on invertible quintuples; the middle factor t(u,z,y) is
    // inverted afresh rather than assembled from cached inverses, so the
    // comparison exercises the elimination path.
    std::size_t quint_space = ni * ni * ni * ni * ni;
    const std::size_t quint_limit =
        std::min({samples, static_cast<std::size_t>(32), quint_space});
    for (std::size_t t = 0; t < quint_limit; ++t) {
        std::size_t rem = t;
        std::size_t ix[5];
        for (int q = 0; q < 5; ++q) {
            ix[q] = invertible[rem % ni];
            rem /= ni;
        }
        const auto& xs = members[ix[0]];
        const auto& ys = members[ix[1]];
        const auto& zs = members[ix[2]];
        const auto& us = members[ix[3]];
        const auto& vs = members[ix[4]];
        ++out.axiom_quintuples_checked;

        auto xyz = ternary_blocks(xs, ys, zs);
        std::vector<Mat<K>> a, b, c;
        for (std::size_t vi = 0; vi < nv; ++vi)
            a.push_back(xyz[vi] * (us.inv_blocks[vi] * vs.blocks[vi]));
        bool mid_ok = true;
        for (std::size_t vi = 0; vi < nv; ++vi) {
            Mat<K> mid =
                us.blocks[vi] * (zs.inv_blocks[vi] * ys.blocks[vi]);
            auto mi = inverse(mid);
            if (!mi) {
                mid_ok = false;
                break;
            }
            b.push_back(xs.blocks[vi] * (*mi * vs.blocks[vi]));
        }
        if (!mid_ok) {
            out.axioms = false;
            f.fail("axiom (2): middle factor t(u, z, y) is singular at "
                   "quintuple " +
                   tup({ix[0], ix[1], ix[2], ix[3], ix[4]}));
            continue;
        }
        for (std::size_t vi = 0; vi < nv; ++vi)
            c.push_back(xs.blocks[vi] *
                        (ys.inv_blocks[vi] *
                         (zs.blocks[vi] *
                          (us.inv_blocks[vi] * vs.blocks[vi]))));
        if (a != b || a != c) {
            out.axioms = false;
            f.fail("axiom (2): forms disagree at quintuple " +
                   tup({ix[0], ix[1], ix[2], ix[3], ix[4]}));
        }
    }
    f.finish("matrix torsor");
}

} // namespace

MatrixTorsorReport matrix_torsor_check(
    const Diagram& d, const Representation& t1, const Representation& t2,
    const std::vector<VertexId>& F, std::size_t samples,
    const std::shared_ptr<const NumberField>& field) {
    if (samples == 0)
        throw Fault("matrix torsor: sample count must be positive");
    IntertwinerSpace hom = hom_space(d, t1, t2, F);
    MatrixTorsorReport out;
    if (field) {
        NFElem g = NFElem::generator(field);
        std::vector<NFElem> palette = {NFElem(1), NFElem(-1), NFElem(2), g,
                                       NFElem(1) + g};
        run_matrix_torsor<NFElem>(hom, palette, samples, out);
    } else {
        std::vector<Rational> palette = {Rational(1), Rational(-1),
                                         Rational(2),
                                         Rational(1) / Rational(2),
                                         Rational(3)};
        run_matrix_torsor<Rational>(hom, palette, samples, out);
    }
    if (out.invertible_samples == 0)
        out.verdict = MatrixTorsorVerdict::inconclusive;
    else
        out.verdict = out.violations.ok() ? MatrixTorsorVerdict::pass
                                          : MatrixTorsorVerdict::fail;
    return out;
}

} // namespace dgp
