#include "dgp/simplicial.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace dgp {

namespace {

std::string simplex_str(const Simplex& s) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    os << "}";
    return os.str();
}

Rational face_sign(std::size_t j) { return Rational(j % 2 == 0 ? 1 : -1); }

} // namespace

SimplicialComplex SimplicialComplex::from_maximal(
    const std::vector<Simplex>& maximal) {
    SimplicialComplex c;
    for (const Simplex& raw : maximal) {
        if (raw.empty()) throw Fault("simplicial complex: empty simplex");
        Simplex s = raw;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw Fault("simplicial complex: simplex " + simplex_str(raw) +
                        " has a repeated vertex");
        // Every nonempty subset of a simplex is a face.
        for (std::size_t mask = 1; mask < (std::size_t(1) << s.size()); ++mask) {
            Simplex face;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (mask & (std::size_t(1) << i)) face.push_back(s[i]);
            c.simplices_.insert(std::move(face));
        }
    }
    return c;
}

bool SimplicialComplex::subcomplex_of(const SimplicialComplex& other) const {
    for (const Simplex& s : simplices_)
        if (!other.contains(s)) return false;
    return true;
}

long SimplicialComplex::dimension() const {
    long d = -1;
    for (const Simplex& s : simplices_)
        d = std::max(d, static_cast<long>(s.size()) - 1);
    return d;
}

std::vector<Simplex> SimplicialComplex::simplices_of_dim(std::size_t k) const {
    std::vector<Simplex> out;
    for (const Simplex& s : simplices_)
        if (s.size() == k + 1) out.push_back(s);
    return out;
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
    std::vector<Simplex> out;
    for (const Simplex& s : simplices_) {
        bool covered = false;
        for (const Simplex& t : simplices_) {
            if (t.size() <= s.size()) continue;
            if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                covered = true;
                break;
            }
        }
        if (!covered) out.push_back(s);
    }
    return out;
}

SimplicialComplex SimplicialComplex::skeleton(long j) const {
    SimplicialComplex c;
    if (j < 0) return c;
    for (const Simplex& s : simplices_)
        if (static_cast<long>(s.size()) <= j + 1) c.simplices_.insert(s);
    return c;
}

SimplicialComplex SimplicialComplex::intersect(
    const SimplicialComplex& other) const {
    SimplicialComplex c;
    for (const Simplex& s : simplices_)
        if (other.contains(s)) c.simplices_.insert(s);
    return c;
}

SimplicialPair make_simplicial_pair(const SimplicialComplex& x,
                                    const SimplicialComplex& y) {
    if (!y.subcomplex_of(x))
        throw Fault("simplicial pair: second complex is not a subcomplex of "
                    "the first");
    return SimplicialPair{x, y};
}

Report validate_cochain_complex(const CochainComplex& c) {
    Report r;
    if (c.dims.empty()) {
        r.fail("cochain complex: no terms");
        return r;
    }
    if (c.d.size() + 1 != c.dims.size()) {
        r.fail("cochain complex: " + std::to_string(c.dims.size()) +
               " terms need " + std::to_string(c.dims.size() - 1) +
               " coboundaries, found " + std::to_string(c.d.size()));
        return r;
    }
    for (std::size_t k = 0; k < c.d.size(); ++k)
        if (c.d[k].rows() != c.dims[k + 1] || c.d[k].cols() != c.dims[k])
            r.fail("cochain complex: coboundary " + std::to_string(k) +
                   " has shape " + std::to_string(c.d[k].rows()) + " x " +
                   std::to_string(c.d[k].cols()) + ", expected " +
                   std::to_string(c.dims[k + 1]) + " x " +
                   std::to_string(c.dims[k]));
    if (!r.ok()) return r;
    for (std::size_t k = 0; k + 1 < c.d.size(); ++k)
        if (!(c.d[k + 1] * c.d[k]).is_zero())
            r.fail("cochain complex: d o d is nonzero at degree " +
                   std::to_string(k));
    return r;
}

long long euler_characteristic(const CochainComplex& c) {
    long long chi = 0;
    for (std::size_t k = 0; k < c.dims.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(c.dims[k]);
    return chi;
}

QuotientPresentation<Rational> cohomology_presentation(const CochainComplex& c,
                                                       std::size_t degree) {
    std::size_t ambient = degree < c.dims.size() ? c.dims[degree] : 0;
    SubspaceBasis<Rational> ker;
    if (degree < c.d.size()) {
        ker = kernel_basis(c.d[degree]);
    } else {
        std::vector<std::vector<Rational>> eye;
        for (std::size_t i = 0; i < ambient; ++i) {
            std::vector<Rational> v(ambient, Rational(0));
            v[i] = Rational(1);
            eye.push_back(std::move(v));
        }
        ker = make_subspace(ambient, eye);
    }
    std::vector<std::vector<Rational>> image;
    if (degree > 0 && degree - 1 < c.d.size()) {
        const QMat& prev = c.d[degree - 1];
        for (std::size_t j = 0; j < prev.cols(); ++j) image.push_back(prev.col(j));
    }
    return quotient_of(ker, make_subspace(ambient, image));
}

CohomologySpace cohomology(const CochainComplex& c, std::size_t degree) {
    auto p = cohomology_presentation(c, degree);
    return CohomologySpace{p.dim(), p.reps};
}

std::vector<std::size_t> cohomology_dims(const CochainComplex& c) {
    std::vector<std::size_t> h(c.dims.size(), 0);
    std::vector<std::size_t> rk(c.d.size(), 0);
    for (std::size_t k = 0; k < c.d.size(); ++k) rk[k] = rank(c.d[k]);
    for (std::size_t k = 0; k < c.dims.size(); ++k) {
        std::size_t out = k < c.d.size() ? rk[k] : 0;
        std::size_t in = k > 0 ? rk[k - 1] : 0;
        h[k] = c.dims[k] - out - in;
    }
    return h;
}

std::vector<Simplex> relative_basis(const SimplicialPair& p, std::size_t k) {
    std::vector<Simplex> out;
    for (const Simplex& s : p.x.simplices_of_dim(k))
        if (!p.y.contains(s)) out.push_back(s);
    return out;
}

CochainComplex relative_cochain_complex(const SimplicialPair& p) {
    CochainComplex c;
    long n = p.x.dimension();
    if (n < 0) {
        c.dims = {0};
        return c;
    }
    std::vector<std::vector<Simplex>> bases;
    std::vector<std::map<Simplex, std::size_t>> index;
    for (long k = 0; k <= n; ++k) {
        bases.push_back(relative_basis(p, static_cast<std::size_t>(k)));
        std::map<Simplex, std::size_t> ix;
        for (std::size_t i = 0; i < bases.back().size(); ++i)
            ix[bases.back()[i]] = i;
        index.push_back(std::move(ix));
        c.dims.push_back(bases.back().size());
    }
    for (long k = 0; k + 1 <= n; ++k) {
        QMat dk(c.dims[k + 1], c.dims[k]);
        const auto& rows = bases[k + 1];
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Simplex& tau = rows[r];
            for (std::size_t j = 0; j < tau.size(); ++j) {
                Simplex face = tau;
                face.erase(face.begin() + static_cast<long>(j));
                auto it = index[k].find(face);
                if (it == index[k].end()) continue; // face lies in Y
                dk(r, it->second) = dk(r, it->second) + face_sign(j);
            }
        }
        c.d.push_back(std::move(dk));
    }
    return c;
}

CohomologySpace relative_cohomology(const SimplicialComplex& x,
                                    const SimplicialComplex& y,
                                    std::size_t i) {
    CochainComplex c = relative_cochain_complex(make_simplicial_pair(x, y));
    if (i >= c.dims.size()) return CohomologySpace{};
    return cohomology(c, i);
}

bool is_good_pair(const SimplicialComplex& x, const SimplicialComplex& y,
                  std::size_t i) {
    CochainComplex c = relative_cochain_complex(make_simplicial_pair(x, y));
    std::vector<std::size_t> h = cohomology_dims(c);
    for (std::size_t j = 0; j < h.size(); ++j)
        if (j != i && h[j] != 0) return false;
    return true;
}

namespace {

/// Induced map on cohomology from a cochain-level map: express the image of
/// every source representative in the target presentation.
QMat induced_on_cohomology(const QuotientPresentation<Rational>& src,
                           const QMat& cochain_map,
                           const QuotientPresentation<Rational>& dst) {
    QMat m(dst.dim(), src.dim());
    for (std::size_t k = 0; k < src.dim(); ++k) {
        std::vector<Rational> image = mat_apply(cochain_map, src.reps[k]);
        std::vector<Rational> cls = dst.coords(image);
        for (std::size_t r = 0; r < dst.dim(); ++r) m(r, k) = cls[r];
    }
    return m;
}

/// im(in) == ker(out) at the module between two composable maps, assuming
/// out * in == 0 was already recorded; the rank identity closes the gap.
void check_exact_at(const QMat& in, const QMat& out, const std::string& where,
                    Report& r) {
    if (!(out * in).is_zero())
        r.fail("connecting map: composite through " + where + " is nonzero");
    std::size_t ker_out = out.cols() - rank(out);
    if (rank(in) != ker_out)
        r.fail("connecting map: sequence is not exact at " + where);
}

std::map<Simplex, std::size_t> position_index(const std::vector<Simplex>& basis) {
    std::map<Simplex, std::size_t> ix;
    for (std::size_t i = 0; i < basis.size(); ++i) ix[basis[i]] = i;
    return ix;
}

} // namespace

ConnectingReport connecting_map(const SimplicialComplex& x,
                                const SimplicialComplex& y,
                                const SimplicialComplex& z, std::size_t i) {
    if (!z.subcomplex_of(y) || !y.subcomplex_of(x))
        throw Fault("connecting map: not a chain of subcomplexes");
    SimplicialPair xy{x, y}, xz{x, z}, yz{y, z};
    CochainComplex cxy = relative_cochain_complex(xy);
    CochainComplex cxz = relative_cochain_complex(xz);
    CochainComplex cyz = relative_cochain_complex(yz);

    auto hxy_i = cohomology_presentation(cxy, i);
    auto hxz_i = cohomology_presentation(cxz, i);
    auto hyz_i = cohomology_presentation(cyz, i);
    auto hxy_n = cohomology_presentation(cxy, i + 1);
    auto hxz_n = cohomology_presentation(cxz, i + 1);

    // Cochain-level inclusion C(X,Y) -> C(X,Z) and restriction
    // C(X,Z) -> C(Y,Z) at one degree, as coordinate matrices.
    auto inclusion_at = [&](std::size_t k) {
        std::vector<Simplex> from = relative_basis(xy, k);
        auto to_ix = position_index(relative_basis(xz, k));
        QMat m(to_ix.size(), from.size());
        for (std::size_t c = 0; c < from.size(); ++c)
            m(to_ix.at(from[c]), c) = Rational(1);
        return m;
    };
    auto restriction_at = [&](std::size_t k) {
        std::vector<Simplex> to = relative_basis(yz, k);
        auto from_ix = position_index(relative_basis(xz, k));
        QMat m(to.size(), from_ix.size());
        for (std::size_t r = 0; r < to.size(); ++r)
            m(r, from_ix.at(to[r])) = Rational(1);
        return m;
    };

    ConnectingReport rep;
    rep.inclusion = induced_on_cohomology(hxy_i, inclusion_at(i), hxz_i);
    rep.restriction = induced_on_cohomology(hxz_i, restriction_at(i), hyz_i);
    rep.inclusion_next =
        induced_on_cohomology(hxy_n, inclusion_at(i + 1), hxz_n);

    // Connecting homomorphism: lift a (Y,Z)-cocycle by zero-extension to
    // C^i(X,Z), take its coboundary, and read the result as an (X,Y)-class.
    std::vector<Simplex> yz_basis = relative_basis(yz, i);
    auto xz_ix = position_index(relative_basis(xz, i));
    std::vector<Simplex> xz_next = relative_basis(xz, i + 1);
    auto xy_next_ix = position_index(relative_basis(xy, i + 1));
    std::size_t xz_dim = i < cxz.dims.size() ? cxz.dims[i] : 0;
    rep.partial = QMat(hxy_n.dim(), hyz_i.dim());
    for (std::size_t k = 0; k < hyz_i.dim(); ++k) {
        std::vector<Rational> lift(xz_dim, Rational(0));
        for (std::size_t c = 0; c < yz_basis.size(); ++c)
            lift[xz_ix.at(yz_basis[c])] = hyz_i.reps[k][c];
        std::vector<Rational> db(xz_next.size(), Rational(0));
        if (i < cxz.d.size()) db = mat_apply(cxz.d[i], lift);
        std::vector<Rational> in_xy(xy_next_ix.size(), Rational(0));
        for (std::size_t r = 0; r < xz_next.size(); ++r) {
            auto it = xy_next_ix.find(xz_next[r]);
            if (it == xy_next_ix.end()) {
                if (!(db[r] == Rational(0)))
                    throw InternalError("connecting map: coboundary of the "
                                        "lift meets the subcomplex");
                continue;
            }
            in_xy[it->second] = db[r];
        }
        std::vector<Rational> cls = hxy_n.coords(in_xy);
        for (std::size_t r = 0; r < hxy_n.dim(); ++r) rep.partial(r, k) = cls[r];
    }

    check_exact_at(rep.inclusion, rep.restriction, "H(X,Z)", rep.checks);
    check_exact_at(rep.restriction, rep.partial, "H(Y,Z)", rep.checks);
    check_exact_at(rep.partial, rep.inclusion_next, "H(X,Y)", rep.checks);
    rep.exact = rep.checks.ok();
    return rep;
}

SkeletalFiltration skeletal_filtration(const SimplicialComplex& x) {
    SkeletalFiltration f;
    long n = x.dimension();
    if (n < 0) {
        f.skeleta = {x};
        f.good = {is_good_pair(x, SimplicialComplex{}, 0)};
        f.all_good = f.good[0];
        return f;
    }
    for (long j = 0; j <= n; ++j) f.skeleta.push_back(x.skeleton(j));
    f.all_good = true;
    for (std::size_t j = 0; j < f.skeleta.size(); ++j) {
        SimplicialComplex prev =
            j > 0 ? f.skeleta[j - 1] : SimplicialComplex{};
        f.good.push_back(is_good_pair(f.skeleta[j], prev, j));
        f.all_good = f.all_good && f.good.back();
    }
    return f;
}

FiltrationReport filtration_complex(const SimplicialComplex& x,
                                    const SkeletalFiltration& f) {
    if (f.skeleta.empty()) throw Fault("filtration complex: empty filtration");
    if (!f.all_good)
        throw Fault("filtration complex: filtration has a step that is not a "
                    "good pair");
    if (!(f.skeleta.back() == x))
        throw Fault("filtration complex: filtration does not end at the "
                    "complex");
    for (std::size_t j = 0; j + 1 < f.skeleta.size(); ++j)
        if (!f.skeleta[j].subcomplex_of(f.skeleta[j + 1]))
            throw Fault("filtration complex: steps are not nested");

    FiltrationReport out;
    std::size_t steps = f.skeleta.size();
    for (std::size_t j = 0; j < steps; ++j) {
        SimplicialComplex prev =
            j > 0 ? f.skeleta[j - 1] : SimplicialComplex{};
        CochainComplex cj =
            relative_cochain_complex(SimplicialPair{f.skeleta[j], prev});
        out.complex.dims.push_back(cohomology_presentation(cj, j).dim());
    }
    for (std::size_t j = 0; j + 1 < steps; ++j) {
        SimplicialComplex prev =
            j > 0 ? f.skeleta[j - 1] : SimplicialComplex{};
        ConnectingReport conn =
            connecting_map(f.skeleta[j + 1], f.skeleta[j], prev, j);
        if (!conn.ok())
            throw InternalError("filtration complex: connecting map failed "
                                "exactness");
        out.complex.d.push_back(conn.partial);
    }
    Report valid = validate_cochain_complex(out.complex);
    if (!valid.ok())
        throw InternalError("filtration complex: " + valid.violations.front());

    out.complex_cohomology = cohomology_dims(out.complex);
    out.direct_cohomology = cohomology_dims(
        relative_cochain_complex(SimplicialPair{x, SimplicialComplex{}}));
    out.matches = out.complex_cohomology == out.direct_cohomology;
    return out;
}

namespace {

/// Total complex of a first-quadrant double complex with commuting maps:
/// D = hor + (-1)^p ver. dims is (P+1) x (Q+1); hor[p][q] maps (p,q) to
/// (p+1,q), ver[p][q] maps (p,q) to (p,q+1).
CochainComplex totalize_double_complex(
    const std::vector<std::vector<std::size_t>>& dims,
    const std::vector<std::vector<QMat>>& hor,
    const std::vector<std::vector<QMat>>& ver) {
    std::size_t pmax = dims.size() - 1;
    std::size_t qmax = dims[0].size() - 1;
    std::size_t top = pmax + qmax;

    // Block offsets inside each total degree, blocks ordered by ascending p.
    std::vector<std::map<std::size_t, std::size_t>> offset(top + 1);
    CochainComplex c;
    for (std::size_t n = 0; n <= top; ++n) {
        std::size_t total = 0;
        for (std::size_t p = 0; p <= std::min(n, pmax); ++p) {
            std::size_t q = n - p;
            if (q > qmax) continue;
            offset[n][p] = total;
            total += dims[p][q];
        }
        c.dims.push_back(total);
    }
    for (std::size_t n = 0; n < top; ++n) {
        QMat dn(c.dims[n + 1], c.dims[n]);
        for (const auto& [p, col0] : offset[n]) {
            std::size_t q = n - p;
            if (p < pmax && offset[n + 1].count(p + 1)) {
                const QMat& h = hor[p][q];
                std::size_t row0 = offset[n + 1].at(p + 1);
                for (std::size_t r = 0; r < h.rows(); ++r)
                    for (std::size_t cc = 0; cc < h.cols(); ++cc)
                        dn(row0 + r, col0 + cc) = h(r, cc);
            }
            if (q < qmax && offset[n + 1].count(p)) {
                const QMat& v = ver[p][q];
                Rational sign(p % 2 == 0 ? 1 : -1);
                std::size_t row0 = offset[n + 1].at(p);
                for (std::size_t r = 0; r < v.rows(); ++r)
                    for (std::size_t cc = 0; cc < v.cols(); ++cc)
                        dn(row0 + r, col0 + cc) = sign * v(r, cc);
            }
        }
        c.d.push_back(std::move(dn));
    }
    return c;
}

} // namespace

CechReport cech_total_complex(const SimplicialComplex& x,
                              const std::vector<SimplicialComplex>& cover) {
    for (const SimplicialComplex& u : cover)
        if (!u.subcomplex_of(x))
            throw Fault("cech complex: cover member is not a subcomplex");
    for (const Simplex& s : x.simplices()) {
        bool hit = false;
        for (const SimplicialComplex& u : cover)
            if (u.contains(s)) {
                hit = true;
                break;
            }
        if (!hit)
            throw Fault("cech complex: cover does not cover the complex "
                        "(simplex " +
                        simplex_str(s) + " is missed)");
    }

    // All index tuples with nonempty intersection, grouped by level
    // p = tuple size - 1; tuples iterate lexicographically per level.
    std::size_t m = cover.size();
    std::vector<std::vector<std::vector<std::size_t>>> tuples;
    std::vector<std::vector<SimplicialComplex>> pieces;
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> tuple_ix;
    for (std::size_t level = 0;; ++level) {
        std::vector<std::vector<std::size_t>> here;
        std::vector<SimplicialComplex> inter;
        std::vector<std::size_t> t(level + 1);
        // Odometer over strictly increasing tuples of size level + 1.
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos,
                                                                std::size_t lo) {
            if (pos == t.size()) {
                SimplicialComplex u = cover[t[0]];
                for (std::size_t k = 1; k < t.size(); ++k)
                    u = u.intersect(cover[t[k]]);
                if (u.size() > 0) {
                    here.push_back(t);
                    inter.push_back(std::move(u));
                }
                return;
            }
            for (std::size_t i = lo; i < m; ++i) {
                t[pos] = i;
                rec(pos + 1, i + 1);
            }
        };
        if (level + 1 <= m) rec(0, 0);
        if (here.empty()) break;
        std::map<std::vector<std::size_t>, std::size_t> ix;
        for (std::size_t i = 0; i < here.size(); ++i) ix[here[i]] = i;
        tuples.push_back(std::move(here));
        pieces.push_back(std::move(inter));
        tuple_ix.push_back(std::move(ix));
    }

    CechReport out;
    out.rows = tuples.size();
    out.direct_cohomology = cohomology_dims(
        relative_cochain_complex(SimplicialPair{x, SimplicialComplex{}}));
    if (tuples.empty()) {
        out.total = CochainComplex{{0}, {}};
        out.complex_cohomology = {0};
        out.matches = true;
        for (std::size_t h : out.direct_cohomology) out.matches &= (h == 0);
        return out;
    }
    std::size_t pmax = tuples.size() - 1;
    long qdim = -1;
    for (const auto& level : pieces)
        for (const SimplicialComplex& u : level)
            qdim = std::max(qdim, u.dimension());
    std::size_t qmax = qdim < 0 ? 0 : static_cast<std::size_t>(qdim);

    // Per-piece absolute cochain complexes, then the (p, q) grid.
    std::vector<std::vector<CochainComplex>> piece_cochains(tuples.size());
    std::vector<std::vector<std::vector<std::vector<Simplex>>>> piece_bases(
        tuples.size());
    for (std::size_t p = 0; p < tuples.size(); ++p)
        for (std::size_t t = 0; t < tuples[p].size(); ++t) {
            SimplicialPair pr{pieces[p][t], SimplicialComplex{}};
            piece_cochains[p].push_back(relative_cochain_complex(pr));
            std::vector<std::vector<Simplex>> bs;
            for (std::size_t q = 0; q <= qmax; ++q)
                bs.push_back(relative_basis(pr, q));
            piece_bases[p].push_back(std::move(bs));
        }

    auto piece_dim = [&](std::size_t p, std::size_t t, std::size_t q) {
        const auto& dims = piece_cochains[p][t].dims;
        return q < dims.size() ? dims[q] : std::size_t(0);
    };

    std::vector<std::vector<std::size_t>> grid(
        pmax + 1, std::vector<std::size_t>(qmax + 1, 0));
    std::vector<std::vector<std::vector<std::size_t>>> block_off(
        pmax + 1,
        std::vector<std::vector<std::size_t>>(qmax + 1));
    for (std::size_t p = 0; p <= pmax; ++p)
        for (std::size_t q = 0; q <= qmax; ++q) {
            std::size_t total = 0;
            for (std::size_t t = 0; t < tuples[p].size(); ++t) {
                block_off[p][q].push_back(total);
                total += piece_dim(p, t, q);
            }
            grid[p][q] = total;
        }

    std::vector<std::vector<QMat>> hor(pmax + 1,
                                       std::vector<QMat>(qmax + 1));
    std::vector<std::vector<QMat>> ver(pmax + 1,
                                       std::vector<QMat>(qmax + 1));
    for (std::size_t p = 0; p <= pmax; ++p)
        for (std::size_t q = 0; q <= qmax; ++q) {
            if (q < qmax) {
                QMat v(grid[p][q + 1], grid[p][q]);
                for (std::size_t t = 0; t < tuples[p].size(); ++t) {
                    const CochainComplex& cc = piece_cochains[p][t];
                    if (q >= cc.d.size()) continue;
                    const QMat& dq = cc.d[q];
                    std::size_t r0 = block_off[p][q + 1][t];
                    std::size_t c0 = block_off[p][q][t];
                    for (std::size_t r = 0; r < dq.rows(); ++r)
                        for (std::size_t c = 0; c < dq.cols(); ++c)
                            v(r0 + r, c0 + c) = dq(r, c);
                }
                ver[p][q] = std::move(v);
            }
            if (p < pmax) {
                QMat h(grid[p + 1][q], grid[p][q]);
                for (std::size_t t = 0; t < tuples[p + 1].size(); ++t) {
                    const std::vector<std::size_t>& tup = tuples[p + 1][t];
                    auto target_ix = position_index(piece_bases[p + 1][t][q]);
                    for (std::size_t j = 0; j < tup.size(); ++j) {
                        std::vector<std::size_t> sub = tup;
                        sub.erase(sub.begin() + static_cast<long>(j));
                        auto it = tuple_ix[p].find(sub);
                        if (it == tuple_ix[p].end()) continue;
                        std::size_t s = it->second;
                        auto source_ix = position_index(piece_bases[p][s][q]);
                        std::size_t r0 = block_off[p + 1][q][t];
                        std::size_t c0 = block_off[p][q][s];
                        for (const auto& [simplex, row] : target_ix) {
                            auto src = source_ix.find(simplex);
                            if (src == source_ix.end())
                                throw InternalError(
                                    "cech complex: intersection is not "
                                    "contained in its factors");
                            h(r0 + row, c0 + src->second) =
                                h(r0 + row, c0 + src->second) + face_sign(j);
                        }
                    }
                }
                hor[p][q] = std::move(h);
            }
        }

    out.total = totalize_double_complex(grid, hor, ver);
    Report valid = validate_cochain_complex(out.total);
    if (!valid.ok())
        throw InternalError("cech complex: " + valid.violations.front());

    out.complex_cohomology = cohomology_dims(out.total);
    std::vector<std::size_t> lhs = out.complex_cohomology;
    std::vector<std::size_t> rhs = out.direct_cohomology;
    std::size_t len = std::max(lhs.size(), rhs.size());
    lhs.resize(len, 0);
    rhs.resize(len, 0);
    out.matches = lhs == rhs;
    return out;
}

CochainComplex tensor_complex(const CochainComplex& a,
                              const CochainComplex& b) {
    Report ra = validate_cochain_complex(a);
    Report rb = validate_cochain_complex(b);
    if (!ra.ok() || !rb.ok())
        throw Fault("tensor complex: factor is not a valid cochain complex");
    std::size_t pmax = a.dims.size() - 1;
    std::size_t qmax = b.dims.size() - 1;
    std::vector<std::vector<std::size_t>> grid(
        pmax + 1, std::vector<std::size_t>(qmax + 1, 0));
    std::vector<std::vector<QMat>> hor(pmax + 1, std::vector<QMat>(qmax + 1));
    std::vector<std::vector<QMat>> ver(pmax + 1, std::vector<QMat>(qmax + 1));
    for (std::size_t p = 0; p <= pmax; ++p)
        for (std::size_t q = 0; q <= qmax; ++q) {
            grid[p][q] = a.dims[p] * b.dims[q];
            if (p < pmax)
                hor[p][q] = kron(a.d[p], QMat::identity(b.dims[q]));
            if (q < qmax)
                ver[p][q] = kron(QMat::identity(a.dims[p]), b.d[q]);
        }
    return totalize_double_complex(grid, hor, ver);
}

namespace {

struct ResolvedPair {
    PairSpec spec;
    CochainComplex cochains;
    QuotientPresentation<Rational> classes;
};

/// Image of a simplex under a vertex map: the sorted image with the parity
/// of the sorting permutation, or no value when the map collapses it.
struct MappedSimplex {
    Simplex image;
    Rational sign = Rational(1);
    bool degenerate = false;
};

MappedSimplex map_simplex(const Simplex& s,
                          const std::vector<std::size_t>& vertex_map) {
    MappedSimplex out;
    std::vector<std::size_t> img;
    for (std::size_t v : s) {
        if (v >= vertex_map.size())
            throw Fault("fixture: vertex map does not cover the complex");
        img.push_back(vertex_map[v]);
    }
    // Sort by adjacent swaps to track the orientation sign.
    for (std::size_t i = 0; i + 1 < img.size(); ++i)
        for (std::size_t j = 0; j + 1 < img.size() - i; ++j)
            if (img[j] > img[j + 1]) {
                std::swap(img[j], img[j + 1]);
                out.sign = -out.sign;
            }
    out.degenerate =
        std::adjacent_find(img.begin(), img.end()) != img.end();
    out.image = std::move(img);
    return out;
}

} // namespace

DiagramFixture make_diagram_fixture(const std::vector<PairSpec>& pairs,
                                    const std::vector<MapSpec>& maps,
                                    const std::vector<TripleSpec>& triples) {
    DiagramFixture fx;
    std::map<VertexId, ResolvedPair> byname;
    for (const PairSpec& ps : pairs) {
        if (byname.count(ps.name))
            throw Fault("fixture: duplicate pair name '" + ps.name + "'");
        ResolvedPair rp;
        rp.spec = ps;
        rp.spec.pair = make_simplicial_pair(ps.pair.x, ps.pair.y);
        rp.cochains = relative_cochain_complex(rp.spec.pair);
        rp.classes = cohomology_presentation(rp.cochains, ps.degree);
        fx.diagram.add_vertex(ps.name, static_cast<int>(ps.degree % 2));
        fx.diagram.add_edge("id(" + ps.name + ")", ps.name, ps.name, true);
        fx.rep.dims[ps.name] = rp.classes.dim();
        byname.emplace(ps.name, std::move(rp));
    }
    auto resolve = [&](const VertexId& v) -> const ResolvedPair& {
        auto it = byname.find(v);
        if (it == byname.end())
            throw Fault("fixture: unknown vertex name '" + v + "'");
        return it->second;
    };

    for (const MapSpec& ms : maps) {
        const ResolvedPair& src = resolve(ms.src);
        const ResolvedPair& dst = resolve(ms.dst);
        if (src.spec.degree != dst.spec.degree)
            throw Fault("fixture: map edge '" + ms.name +
                        "' joins different degrees");
        std::size_t deg = dst.spec.degree;
        const SimplicialPair& from = dst.spec.pair; // simplicial source
        const SimplicialPair& to = src.spec.pair;   // simplicial target
        for (const Simplex& s : from.x.simplices()) {
            MappedSimplex img = map_simplex(s, ms.vertex_map);
            if (!to.x.contains(img.image))
                throw Fault("fixture: map '" + ms.name +
                            "' is not simplicial");
            if (from.y.contains(s) && !to.y.contains(img.image))
                throw Fault("fixture: map '" + ms.name +
                            "' does not respect the subcomplex");
        }
        // Pullback on relative cochains, rows over dst's basis.
        std::vector<Simplex> rows = relative_basis(from, deg);
        auto col_ix = position_index(relative_basis(to, deg));
        QMat pull(rows.size(), col_ix.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            MappedSimplex img = map_simplex(rows[r], ms.vertex_map);
            if (img.degenerate) continue;
            auto it = col_ix.find(img.image);
            if (it == col_ix.end()) continue; // image lies in the subcomplex
            pull(r, it->second) = img.sign;
        }
        fx.diagram.add_edge(ms.name, ms.src, ms.dst);
        fx.rep.mats[ms.name] =
            induced_on_cohomology(src.classes, pull, dst.classes);
    }

    for (const TripleSpec& ts : triples) {
        const ResolvedPair& src = resolve(ts.src);
        const ResolvedPair& dst = resolve(ts.dst);
        if (dst.spec.degree != src.spec.degree + 1)
            throw Fault("fixture: coboundary edge '" + ts.name +
                        "' must raise the degree by one");
        if (!(src.spec.pair.x == dst.spec.pair.y))
            throw Fault("fixture: coboundary chain for edge '" + ts.name +
                        "' does not interlock");
        ConnectingReport conn =
            connecting_map(dst.spec.pair.x, src.spec.pair.x, src.spec.pair.y,
                           src.spec.degree);
        if (!conn.ok())
            throw InternalError("fixture: connecting map failed exactness");
        fx.diagram.add_edge(ts.name, ts.src, ts.dst);
        fx.rep.mats[ts.name] = conn.partial;
    }
    return fx;
}

Representation conjugate_representation(const Diagram& d,
                                        const Representation& rep,
                                        const std::map<VertexId, QMat>& change) {
    std::map<VertexId, QMat> p, pinv;
    for (const auto& [vid, v] : d.vertices()) {
        (void)v;
        std::size_t n = rep.dim(vid);
        auto it = change.find(vid);
        QMat m = it != change.end() ? it->second : QMat::identity(n);
        if (m.rows() != n || m.cols() != n)
            throw Fault("conjugate representation: change matrix shape "
                        "mismatch at vertex '" +
                        vid + "'");
        auto inv = inverse(m);
        if (!inv)
            throw Fault("conjugate representation: change matrix is singular "
                        "at vertex '" +
                        vid + "'");
        p.emplace(vid, std::move(m));
        pinv.emplace(vid, std::move(*inv));
    }
    Representation out;
    out.dims = rep.dims;
    for (const auto& [eid, e] : d.edges()) {
        if (e.identity) continue; // stays the identity under conjugation
        out.mats[eid] = p.at(e.dst) * edge_matrix(d, rep, eid) * pinv.at(e.src);
    }
    return out;
}

} // namespace dgp
