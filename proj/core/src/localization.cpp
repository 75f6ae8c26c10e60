#include "dgp/localization.hpp"

#include <algorithm>

namespace dgp {

namespace {

std::string at_level(const std::string& id, long n) {
    return id + "@" + std::to_string(n);
}

std::vector<VertexId> sorted_unique(std::vector<VertexId> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

} // namespace

LocalizedDiagram localize_diagram(const Diagram& d, const ProductStructure& p,
                                  const VertexId& f0, long bound,
                                  bool require_all_twists) {
    if (!d.has_vertex(f0)) throw Fault("localize: unknown vertex '" + f0 + "'");
    if (d.grade(f0) != 0)
        throw Fault("localize: vertex '" + f0 +
                    "' has odd grade; localize at " + f0 + " x " + f0 +
                    " instead");
    if (bound < 0) throw Fault("localize: negative truncation bound");

    LocalizedDiagram l;
    l.f0 = f0;
    l.bound = bound;

    for (long n = -bound; n <= bound; ++n)
        for (const auto& [vid, v] : d.vertices()) {
            VertexId id = at_level(vid, n);
            l.diagram.add_vertex(id, v.grade);
            l.vertex_at[{vid, n}] = id;
            l.base_of[id] = {vid, n};
        }
    for (long n = -bound; n <= bound; ++n)
        for (const auto& [eid, e] : d.edges()) {
            EdgeId id = at_level(eid, n);
            l.diagram.add_edge(id, at_level(e.src, n), at_level(e.dst, n),
                               e.identity);
            l.base_edge[id] = eid;
        }

    for (const auto& [vid, v] : d.vertices()) {
        if (!p.has_product(vid, f0)) {
            l.skipped_twists.push_back(vid);
            continue;
        }
        const VertexId& prod = p.product(vid, f0);
        for (long n = -bound; n < bound; ++n) {
            EdgeId id = "tw(" + vid + ")@" + std::to_string(n);
            l.diagram.add_edge(id, at_level(prod, n), at_level(vid, n + 1));
            l.twist[{vid, n}] = id;
        }
    }
    if (require_all_twists && !l.skipped_twists.empty()) {
        std::string msg = "localize: missing products with " + f0 + ":";
        for (const auto& v : l.skipped_twists) msg += " " + v;
        throw Fault(msg);
    }

    // Level-shifted product structure: f(n) x g(m) = (f x g)(n+m).
    auto in_range = [bound](long n) { return -bound <= n && n <= bound; };
    for (const auto& [pair, prod] : p.mul)
        for (long n = -bound; n <= bound; ++n)
            for (long m = -bound; m <= bound; ++m) {
                if (!in_range(n + m)) continue;
                l.product.mul[{at_level(pair.first, n),
                               at_level(pair.second, m)}] =
                    at_level(prod, n + m);
            }
    for (const auto& [pair, eid] : p.alpha)
        for (long n = -bound; n <= bound; ++n)
            for (long m = -bound; m <= bound; ++m) {
                if (!in_range(n + m)) continue;
                l.product.alpha[{at_level(pair.first, n),
                                 at_level(pair.second, m)}] =
                    at_level(eid, n + m);
            }
    for (const auto& [triple, eid] : p.beta)
        for (long n = -bound; n <= bound; ++n)
            for (long m = -bound; m <= bound; ++m)
                for (long k = -bound; k <= bound; ++k) {
                    if (!in_range(n + m) || !in_range(m + k) ||
                        !in_range(n + m + k))
                        continue;
                    l.product.beta[{at_level(std::get<0>(triple), n),
                                    at_level(std::get<1>(triple), m),
                                    at_level(std::get<2>(triple), k)}] =
                        at_level(eid, n + m + k);
                }
    if (!p.unit.empty()) {
        l.product.unit = at_level(p.unit, 0);
        for (const auto& [f, eid] : p.unit_edges)
            for (long n = -bound; n <= bound; ++n)
                l.product.unit_edges[at_level(f, n)] = at_level(eid, n);
    }
    for (const auto& [key, eid] : p.edge_mul_left)
        for (long n = -bound; n <= bound; ++n)
            for (long m = -bound; m <= bound; ++m) {
                if (!in_range(n + m)) continue;
                l.product.edge_mul_left[{at_level(key.first, n),
                                         at_level(key.second, m)}] =
                    at_level(eid, n + m);
            }
    for (const auto& [key, eid] : p.edge_mul_right)
        for (long n = -bound; n <= bound; ++n)
            for (long m = -bound; m <= bound; ++m) {
                if (!in_range(n + m)) continue;
                l.product.edge_mul_right[{at_level(key.first, n),
                                          at_level(key.second, m)}] =
                    at_level(eid, n + m);
            }
    return l;
}

GradedRepresentation extend_representation(const LocalizedDiagram& l,
                                           const GradedRepresentation& t) {
    if (t.rep.dim(l.f0) != 1)
        throw Fault("extend: T(" + l.f0 + ") must be a line, has dimension " +
                    std::to_string(t.rep.dim(l.f0)));

    GradedRepresentation r;
    for (const auto& [id, bl] : l.base_of)
        r.rep.dims[id] = t.rep.dim(bl.first);

    std::map<EdgeId, std::pair<VertexId, long>> twist_of;
    for (const auto& [key, eid] : l.twist) twist_of[eid] = key;

    for (const auto& [eid, e] : l.diagram.edges()) {
        if (e.identity) continue;
        auto tw = twist_of.find(eid);
        if (tw != twist_of.end()) {
            auto it = t.tau.find({tw->second.first, l.f0});
            if (it == t.tau.end())
                throw Fault("extend: missing tau(" + tw->second.first + ", " +
                            l.f0 + ") for a twist edge");
            r.rep.mats[eid] = it->second;
            continue;
        }
        auto base = l.base_edge.find(eid);
        if (base == l.base_edge.end())
            throw InternalError("extend: unclassified localized edge " + eid);
        auto mat = t.rep.mats.find(base->second);
        if (mat == t.rep.mats.end())
            throw Fault("extend: base representation has no matrix for '" +
                        base->second + "'");
        r.rep.mats[eid] = mat->second;
    }

    for (const auto& [pair, prod] : l.product.mul) {
        auto bf = l.base_of.at(pair.first).first;
        auto bg = l.base_of.at(pair.second).first;
        auto it = t.tau.find({bf, bg});
        if (it != t.tau.end()) r.tau[pair] = it->second;
    }
    return r;
}

ChiReport chi_and_transitions(const Diagram& d, const ProductStructure& p,
                              const GradedRepresentation& t,
                              const VertexId& f0,
                              const std::vector<VertexId>& F,
                              const std::vector<VertexId>& Fprime) {
    ChiReport r;
    std::vector<VertexId> fs = sorted_unique(F);
    std::vector<VertexId> fps = sorted_unique(Fprime);
    if (t.rep.dim(f0) != 1)
        throw Fault("chi: T(" + f0 + ") must be a line");
    if (!std::includes(fps.begin(), fps.end(), fs.begin(), fs.end()))
        throw Fault("chi: F must be contained in F'");

    // F' must be exactly F plus the product vertices f x f0.
    std::map<VertexId, std::vector<VertexId>> product_sources;
    for (const VertexId& f : fs) {
        if (!p.has_product(f, f0))
            throw Fault("chi: product (" + f + ", " + f0 +
                        ") is not materialized");
        product_sources[p.product(f, f0)].push_back(f);
    }
    for (const VertexId& v : fps)
        if (!std::binary_search(fs.begin(), fs.end(), v) &&
            !product_sources.count(v))
            throw Fault("chi: F' contains '" + v +
                        "', neither in F nor a product with " + f0);
    for (const auto& [prod, srcs] : product_sources)
        if (!std::binary_search(fps.begin(), fps.end(), prod))
            throw Fault("chi: product vertex '" + prod + "' is missing from F'");

    // chi: the dual of the identity in the line End(T|{f0}).
    EndAlgebraData e0 = end_algebra(d, t.rep, {f0});
    if (e0.dim() != 1)
        throw InternalError("chi: End(T|{f0}) is not one-dimensional");
    r.chi = QVec{Rational(1) / e0.unit_coords[0]};

    MuStar mixed = mu_star(d, p, t, fs, {f0}, fps);
    const EndAlgebraData& el = mixed.end_left;
    const EndAlgebraData& ep = mixed.end_prod;
    std::size_t n = el.dim();
    std::size_t dp = ep.dim();

    std::map<std::pair<VertexId, VertexId>, QMat> tau_inv;
    for (const VertexId& f : fs) {
        auto inv = inverse(t.tau_at(f, f0));
        if (!inv) throw Fault("chi: tau(" + f + ", " + f0 + ") not invertible");
        tau_inv[{f, f0}] = *inv;
    }

    // iota: extend each End(T|F) basis element by its tau-conjugate at the
    // product vertices; blocks at vertices shared between F and the products
    // must agree.
    r.iota = QMat(dp, n);
    for (std::size_t i = 0; i < n; ++i) {
        std::map<VertexId, QMat> blocks;
        for (const VertexId& f : fs) blocks[f] = el.space.element(i, f);
        for (const auto& [prod, srcs] : product_sources)
            for (const VertexId& f : srcs) {
                QMat x = tau_inv.at({f, f0}) *
                         kron(el.space.element(i, f), QMat::identity(1)) *
                         t.tau_at(f, f0);
                auto it = blocks.find(prod);
                if (it == blocks.end()) {
                    blocks[prod] = x;
                } else if (it->second != x) {
                    throw Fault("chi: inconsistent extension at shared vertex '" +
                                prod + "'");
                }
            }
        auto coords = ep.space.basis.coordinates(ep.space.assemble(blocks));
        if (!coords)
            throw Fault("chi: a (x) id escapes End(T|F') at basis element " +
                        std::to_string(i));
        for (std::size_t a = 0; a < dp; ++a) r.iota(a, i) = (*coords)[a];
    }

    // Independent component read-off End(T|F') -> End(T|F).
    QMat readoff(n, dp);
    for (std::size_t a = 0; a < dp; ++a) {
        std::map<VertexId, QMat> blocks;
        for (const VertexId& f : fs)
            blocks[f] = t.tau_at(f, f0) * ep.space.element(a, p.product(f, f0)) *
                        tau_inv.at({f, f0});
        auto coords = el.space.basis.coordinates(el.space.assemble(blocks));
        if (!coords)
            throw Fault("chi: component read-off escapes End(T|F) at basis "
                        "element " + std::to_string(a));
        for (std::size_t i = 0; i < n; ++i) readoff(i, a) = (*coords)[i];
    }
    r.transition = readoff.transpose();

    // The transition must be multiplication by chi under the mixed product.
    QMat chi_mult(dp, n);
    for (std::size_t a = 0; a < dp; ++a)
        for (std::size_t i = 0; i < n; ++i)
            chi_mult(a, i) = mixed.mu(i, a) * r.chi[0];
    r.transition_is_chi_multiplication = r.transition == chi_mult;
    if (!r.transition_is_chi_multiplication)
        r.violations.fail("coalgebra transition differs from multiplication "
                          "by chi");

    QMat section = readoff * r.iota;
    r.iota_is_section = section == QMat::identity(n);
    if (!r.iota_is_section)
        r.violations.fail("component read-off after a (x) id is not the "
                          "identity");

    bool morphism = true;
    for (std::size_t i = 0; i < n && morphism; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            QVec lhs = mult_in_basis(ep, r.iota.col(i), r.iota.col(j));
            QVec ij = el.mult[i][j];
            QVec rhs(dp, Rational(0));
            for (std::size_t k = 0; k < n; ++k)
                for (std::size_t a = 0; a < dp; ++a)
                    rhs[a] += r.iota(a, k) * ij[k];
            if (lhs != rhs) {
                morphism = false;
                r.violations.fail("a (x) id is not multiplicative at basis "
                                  "pair (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ")");
                break;
            }
        }
    QVec unit_image(dp, Rational(0));
    for (std::size_t a = 0; a < dp; ++a)
        for (std::size_t k = 0; k < n; ++k)
            unit_image[a] += r.iota(a, k) * el.unit_coords[k];
    if (unit_image != ep.unit_coords) {
        morphism = false;
        r.violations.fail("a (x) id does not preserve the identity tuple");
    }
    r.iota_is_morphism = morphism;
    return r;
}

} // namespace dgp
