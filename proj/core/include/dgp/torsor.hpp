#pragma once

#include <memory>

#include "dgp/end_algebra.hpp"

namespace dgp {

/// A finite set {0, .., size-1} with a ternary operation t(x, y, z). The
/// heap axioms are checked by check_torsor, never assumed:
///   (1) t(x, y, y) = t(y, y, x) = x,
///   (2) t(t(x, y, z), u, v) = t(x, t(u, z, y), v) = t(x, y, t(z, u, v)).
struct FiniteTorsor {
    std::size_t size = 0;
    /// table[x][y][z] = t(x, y, z).
    std::vector<std::vector<std::vector<std::size_t>>> table;

    std::size_t op(std::size_t x, std::size_t y, std::size_t z) const;
};

/// A finite group on {0, .., size-1} given by tables.
struct FiniteGroup {
    std::size_t size = 0;
    std::vector<std::vector<std::size_t>> mul;
    std::size_t identity = 0;
    std::vector<std::size_t> inv;
};

/// Exhaustive verification of the torsor axioms: (1) over all pairs, (2)
/// over all quintuples. Faults on malformed tables only; axiom failures are
/// reported, and long failure lists are truncated with a count.
Report check_torsor(const FiniteTorsor& x);

/// Exhaustive verification of the group laws: identity, inverses,
/// associativity. Faults on malformed tables only.
Report check_group(const FiniteGroup& g);

/// The torsor induced by a group, t(g, h, k) = g h^{-1} k. Faults when the
/// group laws fail.
FiniteTorsor torsor_of_group(const FiniteGroup& g);

/// The group structure at a basepoint e: gh := t(g, e, h) with identity e
/// and g^{-1} := t(e, g, e). Faults when the torsor axioms fail or e is out
/// of range. The group laws and the round trip t(g, h, k) = g h^{-1} k are
/// re-verified exhaustively; a failure there contradicts the construction
/// and raises InternalError.
FiniteGroup group_at(const FiniteTorsor& x, std::size_t e);

/// A group of pair classes acting simply transitively on the torsor. Left
/// version: classes of X x X under (a,b) ~ (t(a,b,x), x), multiplication
/// (a,b)(c,d) = (t(a,b,c), d), class of (a,b) sending x to t(a,b,x). Right
/// version mirrored: (a,b) ~ (x, t(x,a,b)), (a,b)(c,d) = (a, t(b,c,d)),
/// acting by x -> t(x,a,b). The one-step relation is re-verified to be an
/// equivalence already, the quotient operations to be well defined, and
/// x -> class(x, e) (resp. class(e, x)) to be a group isomorphism from the
/// basepoint group at every e, with inverse c -> c acting on e.
struct TorsorQuotient {
    bool left = true;
    FiniteGroup group;
    /// Pair (a, b) -> its class, indexed a * size + b.
    std::vector<std::size_t> class_of;
    /// action[c][x]: the image of x under class c.
    std::vector<std::vector<std::size_t>> action;
    /// For all x, y exactly one class c with action[c][x] = y.
    bool simply_transitive = false;
    Report checks;

    bool ok() const { return simply_transitive && checks.ok(); }
};

/// Faults when the torsor axioms fail.
TorsorQuotient gl_group(const FiniteTorsor& x);
TorsorQuotient gr_group(const FiniteTorsor& x);

FiniteGroup cyclic_group(std::size_t n);
/// Componentwise product on pairs (a, b), indexed a * b.size + b.
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Symmetries of the regular n-gon, order 2n: rotations r^i at 0 .. n-1 and
/// reflections r^i s at n .. 2n-1, with s r s = r^{-1}.
FiniteGroup dihedral_group(std::size_t n);
/// The unit quaternions {±1, ±i, ±j, ±k}: index sign * 4 + axis with axes
/// 1, i, j, k at 0 .. 3.
FiniteGroup quaternion_group();
/// Every group of order <= max_order, one per isomorphism class. Complete
/// only through order 8; larger bounds fault.
std::vector<FiniteGroup> small_group_catalog(std::size_t max_order);

/// x y^{-1} z for square matrices over an exact field; Faults when y is
/// singular or the shapes do not match.
template <FieldScalar K>
Mat<K> ternary_product(const Mat<K>& x, const Mat<K>& y, const Mat<K>& z);

enum class MatrixTorsorVerdict { pass, fail, inconclusive };
const char* to_string(MatrixTorsorVerdict v);

/// Sampled verification that the invertible intertwiners T1 -> T2 over F
/// form a torsor under (x, y, z) -> x y^{-1} z: closure back into the
/// intertwiner space, the two torsor axioms on sampled tuples, and the
/// entrywise formula sum_{k,l} x_ik (y^{-1})_kl z_lj at every vertex block.
/// Samples are deterministic small-coefficient combinations of the echelon
/// basis, taken over Q or, when a number field is supplied, over its
/// K-points with coefficients involving the field generator. Finding no
/// invertible sample is inconclusive, not a failure.
struct MatrixTorsorReport {
    std::size_t hom_dim = 0;
    std::size_t members_sampled = 0;
    std::size_t invertible_samples = 0;
    std::size_t triples_checked = 0;
    std::size_t axiom_pairs_checked = 0;
    std::size_t axiom_quintuples_checked = 0;
    bool closure = false;
    bool axioms = false;
    bool entry_formula = false;
    MatrixTorsorVerdict verdict = MatrixTorsorVerdict::inconclusive;
    Report violations;

    bool ok() const {
        return verdict == MatrixTorsorVerdict::pass && violations.ok();
    }
};

/// Faults when samples is zero or the intertwiner space cannot be built.
MatrixTorsorReport matrix_torsor_check(
    const Diagram& d, const Representation& t1, const Representation& t2,
    const std::vector<VertexId>& F, std::size_t samples,
    const std::shared_ptr<const NumberField>& field = nullptr);

} // namespace dgp
