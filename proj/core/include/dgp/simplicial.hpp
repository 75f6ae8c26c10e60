#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dgp/common.hpp"
#include "dgp/diagram.hpp"
#include "dgp/matrix.hpp"
#include "dgp/subspace.hpp"

namespace dgp {

/// A simplex as a strictly increasing list of vertex indices.
using Simplex = std::vector<std::size_t>;

/// Finite abstract simplicial complex: a set of simplices closed under
/// taking faces. The empty complex is legal and has dimension -1. Simplices
/// iterate in lexicographic order, which fixes every basis downstream.
class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Closure of the given simplices under faces. Vertex lists are sorted
    /// first; a list with a repeated vertex is a fault.
    static SimplicialComplex from_maximal(const std::vector<Simplex>& maximal);

    bool contains(const Simplex& s) const { return simplices_.count(s) > 0; }
    bool subcomplex_of(const SimplicialComplex& other) const;
    bool operator==(const SimplicialComplex& other) const {
        return simplices_ == other.simplices_;
    }

    /// -1 for the empty complex.
    long dimension() const;
    std::size_t size() const { return simplices_.size(); }

    /// All k-simplices in lexicographic order.
    std::vector<Simplex> simplices_of_dim(std::size_t k) const;
    const std::set<Simplex>& simplices() const { return simplices_; }

    /// The simplices not contained in any other; from_maximal of these
    /// rebuilds the complex.
    std::vector<Simplex> maximal_simplices() const;

    /// The j-skeleton: all simplices of dimension <= j.
    SimplicialComplex skeleton(long j) const;

    /// Simplexwise intersection (always a complex).
    SimplicialComplex intersect(const SimplicialComplex& other) const;

private:
    std::set<Simplex> simplices_;
};

/// Pair (X, Y) with Y a subcomplex of X; the relative cochain groups are
/// spanned by the simplices of X that are not in Y.
struct SimplicialPair {
    SimplicialComplex x;
    SimplicialComplex y;
};

/// Validates the subcomplex condition; faults otherwise.
SimplicialPair make_simplicial_pair(const SimplicialComplex& x,
                                    const SimplicialComplex& y);

/// Cochain complex over the rationals: dims[k] is the rank of the degree-k
/// term and d[k] : C^k -> C^{k+1} has shape dims[k+1] x dims[k]. The top
/// coboundary is omitted (treated as the zero map), so d.size() + 1 ==
/// dims.size() whenever there is more than one term.
struct CochainComplex {
    std::vector<std::size_t> dims;
    std::vector<QMat> d;
};

/// Shape bookkeeping plus exact d(d(x)) = 0; empty report means valid.
Report validate_cochain_complex(const CochainComplex& c);

/// Alternating sum of the term ranks. Equals the alternating sum of the
/// cohomology dimensions for any valid complex.
long long euler_characteristic(const CochainComplex& c);

/// Cohomology at one degree with representing cocycles in the degree-k
/// cochain coordinates (canonical echelon representatives).
struct CohomologySpace {
    std::size_t dim = 0;
    std::vector<std::vector<Rational>> basis;
};

CohomologySpace cohomology(const CochainComplex& c, std::size_t degree);
std::vector<std::size_t> cohomology_dims(const CochainComplex& c);

/// Quotient presentation ker d^k / im d^{k-1}; exposes class coordinates,
/// which the fixture builder uses to express induced maps.
QuotientPresentation<Rational> cohomology_presentation(const CochainComplex& c,
                                                       std::size_t degree);

/// Basis simplices of the relative degree-k cochain group: the k-simplices
/// of X not in Y, in lexicographic order.
std::vector<Simplex> relative_basis(const SimplicialPair& p, std::size_t k);

/// Relative simplicial cochain complex of the pair, with the standard
/// alternating-face coboundary under the lexicographic orientation.
CochainComplex relative_cochain_complex(const SimplicialPair& p);

/// H^i(X, Y) over the rationals; faults when Y is not a subcomplex of X.
CohomologySpace relative_cohomology(const SimplicialComplex& x,
                                    const SimplicialComplex& y,
                                    std::size_t i);

/// True iff H^j(X, Y) = 0 for every j != i.
bool is_good_pair(const SimplicialComplex& x, const SimplicialComplex& y,
                  std::size_t i);

/// Snake construction on 0 -> C(X,Y) -> C(X,Z) -> C(Y,Z) -> 0 at degree i.
/// `partial` is the connecting homomorphism H^i(Y,Z) -> H^{i+1}(X,Y); the
/// neighbouring induced maps come along so exactness can be verified at the
/// three spots around it. Column/row counts follow the cohomology ranks.
struct ConnectingReport {
    QMat inclusion;      // H^i(X,Y)   -> H^i(X,Z)
    QMat restriction;    // H^i(X,Z)   -> H^i(Y,Z)
    QMat partial;        // H^i(Y,Z)   -> H^{i+1}(X,Y)
    QMat inclusion_next; // H^{i+1}(X,Y) -> H^{i+1}(X,Z)
    bool exact = false;
    Report checks;

    bool ok() const { return exact && checks.ok(); }
};

/// Faults unless Z <= Y <= X as subcomplexes.
ConnectingReport connecting_map(const SimplicialComplex& x,
                                const SimplicialComplex& y,
                                const SimplicialComplex& z, std::size_t i);

/// Skeletal filtration F_j = j-skeleton, with F_{-1} empty left implicit.
/// good[j] records is_good_pair(F_j, F_{j-1}, j); relative cochains of a
/// skeleton pair live in the single degree j, so every step is good.
struct SkeletalFiltration {
    std::vector<SimplicialComplex> skeleta;
    std::vector<bool> good;
    bool all_good = false;
};

SkeletalFiltration skeletal_filtration(const SimplicialComplex& x);

/// One-row complex T^j = H^j(F_j, F_{j-1}) with the connecting maps of the
/// chains F_{j+1} >= F_j >= F_{j-1} as differential, plus the comparison of
/// its cohomology against the direct computation on X.
struct FiltrationReport {
    CochainComplex complex;
    std::vector<std::size_t> complex_cohomology;
    std::vector<std::size_t> direct_cohomology;
    bool matches = false;
};

/// Faults when the filtration has a bad step or does not end at X.
FiltrationReport filtration_complex(const SimplicialComplex& x,
                                    const SkeletalFiltration& f);

/// Total complex of the cover double complex: level p carries the degree-q
/// cochains of all (p+1)-fold intersections, the horizontal differential is
/// the alternating sum of restrictions, the vertical one the coboundary
/// with the level sign. `rows` counts the levels with a nonempty
/// intersection; cohomology is compared against the direct computation.
struct CechReport {
    CochainComplex total;
    std::size_t rows = 0;
    std::vector<std::size_t> complex_cohomology;
    std::vector<std::size_t> direct_cohomology;
    bool matches = false;
};

/// Faults when a member is not a subcomplex or the union misses a simplex.
CechReport cech_total_complex(const SimplicialComplex& x,
                              const std::vector<SimplicialComplex>& cover);

/// Tensor product of complexes with the Koszul-signed differential
/// d(a (x) b) = d(a) (x) b + (-1)^{deg a} a (x) d(b). Within total degree n
/// the blocks A^p (x) B^q are laid out by ascending p, each block indexed
/// a-major. Cohomology obeys the Kunneth formula over a field.
CochainComplex tensor_complex(const CochainComplex& a, const CochainComplex& b);

/// Diagram vertex datum: a named pair together with the cohomology degree
/// it is read in. The diagram grade is degree mod 2.
struct PairSpec {
    VertexId name;
    SimplicialPair pair;
    std::size_t degree = 0;
};

/// Functoriality edge src -> dst between vertices of equal degree. The
/// underlying simplicial map runs against the edge: vertex_map sends the
/// vertices of dst's complex into src's, respecting subcomplexes, and the
/// edge matrix is the induced pullback on relative cohomology.
struct MapSpec {
    EdgeId name;
    VertexId src;
    VertexId dst;
    std::vector<std::size_t> vertex_map;
};

/// Coboundary edge src -> dst for a chain X >= Y >= Z: src must be (Y, Z)
/// in degree i and dst (X, Y) in degree i + 1; the edge matrix is the
/// connecting homomorphism.
struct TripleSpec {
    EdgeId name;
    VertexId src;
    VertexId dst;
};

struct DiagramFixture {
    Diagram diagram;
    Representation rep;
};

/// Assembles the diagram (with identity loops "id(<name>)") and the
/// cohomology representation. Faults: duplicate or unknown names, degree
/// mismatches, non-simplicial maps, maps that leave the subcomplex, chains
/// that do not interlock.
DiagramFixture make_diagram_fixture(const std::vector<PairSpec>& pairs,
                                    const std::vector<MapSpec>& maps,
                                    const std::vector<TripleSpec>& triples);

/// Second representation T2(e) = P(dst) T1(e) P(src)^{-1} from a choice of
/// invertible change matrices (identity where absent), so (P(v)) itself is
/// an intertwiner from T1 to T2. Faults on shape mismatch or singularity.
Representation conjugate_representation(const Diagram& d,
                                        const Representation& rep,
                                        const std::map<VertexId, QMat>& change);

} // namespace dgp
