#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <string>
#include <vector>

#include "dgp/end_algebra.hpp"
#include "dgp/simplicial.hpp"
#include "test_util.hpp"

using namespace dgp;
using namespace dgp::testutil;

namespace {

SimplicialComplex interval() {
    return SimplicialComplex::from_maximal({{0, 1}});
}

SimplicialComplex interval_boundary() {
    return SimplicialComplex::from_maximal({{0}, {1}});
}

SimplicialComplex circle() {
    return SimplicialComplex::from_maximal({{0, 1}, {0, 2}, {1, 2}});
}

SimplicialComplex triangle() {
    return SimplicialComplex::from_maximal({{0, 1, 2}});
}

SimplicialComplex sphere() {
    return SimplicialComplex::from_maximal(
        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
}

SimplicialComplex point() { return SimplicialComplex::from_maximal({{0}}); }

template <typename F>
std::string fault_message(F&& f) {
    try {
        f();
    } catch (const Fault& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST_CASE("complexes close under faces and report their shape") {
    SimplicialComplex t = triangle();
    CHECK(t.size() == 7);
    CHECK(t.dimension() == 2);
    CHECK(t.contains({0, 2}));
    CHECK(t.contains({1}));
    CHECK_FALSE(t.contains({0, 3}));

    // Input order and orientation of the vertex list do not matter.
    SimplicialComplex t2 = SimplicialComplex::from_maximal({{2, 0, 1}});
    CHECK(t == t2);

    CHECK(circle().subcomplex_of(t));
    CHECK_FALSE(t.subcomplex_of(circle()));
    CHECK(t.skeleton(1) == circle());
    CHECK(t.skeleton(-1).size() == 0);
    CHECK(t.skeleton(-1).dimension() == -1);

    SimplicialComplex cap = triangle().intersect(
        SimplicialComplex::from_maximal({{1, 2, 3}}));
    CHECK(cap == SimplicialComplex::from_maximal({{1, 2}}));

    CHECK(fault_message([] {
              SimplicialComplex::from_maximal({{0, 1, 0}});
          }) == "simplicial complex: simplex {0 1 0} has a repeated vertex");
    CHECK(fault_message([] { SimplicialComplex::from_maximal({{}}); }) ==
          "simplicial complex: empty simplex");
    CHECK(fault_message([] {
              make_simplicial_pair(SimplicialComplex::from_maximal({{0}}),
                                   SimplicialComplex::from_maximal({{1}}));
          }) == "simplicial pair: second complex is not a subcomplex of the "
                "first");
}

TEST_CASE("relative cochain complexes carry the alternating coboundary") {
    // Circle: three vertices, three edges, the standard 3 x 3 coboundary.
    CochainComplex c =
        relative_cochain_complex(SimplicialPair{circle(), SimplicialComplex{}});
    CHECK(c.dims == std::vector<std::size_t>{3, 3});
    REQUIRE(c.d.size() == 1);
    CHECK(c.d[0] == qm({{-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}}));
    CHECK(validate_cochain_complex(c).ok());
    CHECK(euler_characteristic(c) == 0);

    // Interval rel boundary: everything lives in degree one.
    CochainComplex rel = relative_cochain_complex(
        SimplicialPair{interval(), interval_boundary()});
    CHECK(rel.dims == std::vector<std::size_t>{0, 1});
    CHECK(euler_characteristic(rel) == -1);

    CochainComplex empty =
        relative_cochain_complex(SimplicialPair{SimplicialComplex{},
                                                SimplicialComplex{}});
    CHECK(empty.dims == std::vector<std::size_t>{0});

    CochainComplex bad;
    bad.dims = {1, 1};
    CHECK_FALSE(validate_cochain_complex(bad).ok());
    bad.d = {qm({{1}, {1}})};
    CHECK(validate_cochain_complex(bad).violations ==
          std::vector<std::string>{
              "cochain complex: coboundary 0 has shape 2 x 1, expected 1 x 1"});
    CochainComplex notsq;
    notsq.dims = {1, 1, 1};
    notsq.d = {qm({{1}}), qm({{1}})};
    CHECK(validate_cochain_complex(notsq).violations ==
          std::vector<std::string>{
              "cochain complex: d o d is nonzero at degree 0"});
}

TEST_CASE("relative cohomology of the frozen pairs") {
    CohomologySpace h1 = relative_cohomology(interval(), interval_boundary(), 1);
    CHECK(h1.dim == 1);
    REQUIRE(h1.basis.size() == 1);
    CHECK(h1.basis[0] == qv({1}));
    CHECK(relative_cohomology(interval(), interval_boundary(), 0).dim == 0);

    CHECK(relative_cohomology(point(), SimplicialComplex{}, 0).dim == 1);
    CHECK(relative_cohomology(point(), SimplicialComplex{}, 1).dim == 0);

    CohomologySpace c0 = relative_cohomology(circle(), SimplicialComplex{}, 0);
    CohomologySpace c1 = relative_cohomology(circle(), SimplicialComplex{}, 1);
    CHECK(c0.dim == 1);
    CHECK(c0.basis[0] == qv({1, 1, 1}));
    CHECK(c1.dim == 1);
    // The echelon representative is the cochain dual to the last edge {1,2}.
    CHECK(c1.basis[0] == qv({0, 0, 1}));

    // Degrees beyond the complex are zero, not an error.
    CHECK(relative_cohomology(circle(), SimplicialComplex{}, 5).dim == 0);
}

TEST_CASE("good pairs concentrate cohomology in one degree") {
    CHECK(is_good_pair(interval(), interval_boundary(), 1));
    CHECK_FALSE(is_good_pair(circle(), SimplicialComplex{}, 1));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(is_good_pair(circle(), circle(), i));
        CHECK(is_good_pair(triangle(), triangle(), i));
    }
    CHECK(is_good_pair(point(), SimplicialComplex{}, 0));
    CHECK_FALSE(is_good_pair(point(), SimplicialComplex{}, 1));
}

TEST_CASE("connecting map: degenerate chain and the interval triple") {
    // Z = Y collapses the sub-pair, so the connecting map has no columns.
    ConnectingReport zero =
        connecting_map(interval(), interval_boundary(), interval_boundary(), 0);
    CHECK(zero.partial.rows() == 1);
    CHECK(zero.partial.cols() == 0);
    CHECK(zero.ok());

    // (interval >= boundary >= one endpoint): the snake map is 1 x 1 and
    // invertible, lifting the step cochain to the edge cochain.
    ConnectingReport snake =
        connecting_map(interval(), interval_boundary(), point(), 0);
    CHECK(snake.partial == qm({{1}}));
    CHECK(snake.ok());
    CHECK(snake.inclusion.rows() == 0);    // H^0(X,Y) = 0
    CHECK(snake.restriction.cols() == 0);  // H^0(X,Z) = 0
    CHECK(snake.inclusion_next.rows() == 0); // H^1(X,Z) = 0

    CHECK(fault_message([] {
              connecting_map(interval(), circle(), SimplicialComplex{}, 0);
          }) == "connecting map: not a chain of subcomplexes");
}

TEST_CASE("connecting map: exactness holds on random skeleton chains") {
    Rng rng(413);
    for (int trial = 0; trial < 12; ++trial) {
        // Random 2-complex on up to 6 vertices.
        std::vector<Simplex> maximal;
        std::size_t nverts = static_cast<std::size_t>(rng.pick_int(3, 6));
        std::size_t pieces = static_cast<std::size_t>(rng.pick_int(2, 5));
        for (std::size_t p = 0; p < pieces; ++p) {
            std::size_t k = static_cast<std::size_t>(rng.pick_int(1, 3));
            std::vector<std::size_t> pool(nverts);
            for (std::size_t v = 0; v < nverts; ++v) pool[v] = v;
            std::shuffle(pool.begin(), pool.end(), rng.gen);
            maximal.push_back(Simplex(pool.begin(), pool.begin() + k));
        }
        SimplicialComplex x = SimplicialComplex::from_maximal(maximal);
        SimplicialComplex y = x.skeleton(1);
        SimplicialComplex z = x.skeleton(0);
        for (std::size_t i = 0; i < 3; ++i) {
            ConnectingReport r = connecting_map(x, y, z, i);
            CAPTURE(trial);
            CAPTURE(i);
            CHECK(r.ok());
        }
    }
}

TEST_CASE("skeletal filtrations are good step by step") {
    SkeletalFiltration f2 = skeletal_filtration(triangle());
    REQUIRE(f2.skeleta.size() == 3);
    CHECK(f2.good == std::vector<bool>{true, true, true});
    CHECK(f2.all_good);
    CHECK(f2.skeleta[1] == circle());

    SkeletalFiltration fp = skeletal_filtration(point());
    CHECK(fp.skeleta.size() == 1);
    CHECK(fp.all_good);

    SkeletalFiltration f3 = skeletal_filtration(sphere());
    REQUIRE(f3.skeleta.size() == 3);
    CHECK(f3.all_good);

    SkeletalFiltration fe = skeletal_filtration(SimplicialComplex{});
    CHECK(fe.skeleta.size() == 1);
    CHECK(fe.all_good);
}

TEST_CASE("filtration complex reproduces the direct cohomology") {
    // Solid triangle: terms Q^3 -> Q^3 -> Q with the simplicial coboundaries.
    FiltrationReport t =
        filtration_complex(triangle(), skeletal_filtration(triangle()));
    CHECK(t.complex.dims == std::vector<std::size_t>{3, 3, 1});
    REQUIRE(t.complex.d.size() == 2);
    CHECK(t.complex.d[1] == qm({{1, -1, 1}}));
    CHECK(t.complex_cohomology == std::vector<std::size_t>{1, 0, 0});
    CHECK(t.matches);

    FiltrationReport c =
        filtration_complex(circle(), skeletal_filtration(circle()));
    CHECK(c.complex.dims == std::vector<std::size_t>{3, 3});
    CHECK(c.complex_cohomology == std::vector<std::size_t>{1, 1});
    CHECK(c.matches);

    FiltrationReport s =
        filtration_complex(sphere(), skeletal_filtration(sphere()));
    CHECK(s.complex.dims == std::vector<std::size_t>{4, 6, 4});
    CHECK(s.complex_cohomology == std::vector<std::size_t>{1, 0, 1});
    CHECK(s.matches);

    FiltrationReport p =
        filtration_complex(point(), skeletal_filtration(point()));
    CHECK(p.complex.dims == std::vector<std::size_t>{1});
    CHECK(p.matches);

    CHECK(fault_message([] {
              filtration_complex(triangle(), skeletal_filtration(circle()));
          }) == "filtration complex: filtration does not end at the complex");
    CHECK(fault_message([] {
              filtration_complex(triangle(), SkeletalFiltration{});
          }) == "filtration complex: empty filtration");
}

TEST_CASE("cech total complex: one-set cover is the plain complex") {
    CechReport one = cech_total_complex(circle(), {circle()});
    CHECK(one.rows == 1);
    CHECK(one.total.dims == std::vector<std::size_t>{3, 3});
    CHECK(one.total.d[0] == qm({{-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}}));
    CHECK(one.complex_cohomology == std::vector<std::size_t>{1, 1});
    CHECK(one.matches);
}

TEST_CASE("cech total complex: two arcs recover the circle") {
    // Arcs 1-0-2 and 1-2 meet in the two points {1} and {2}.
    SimplicialComplex arc1 = SimplicialComplex::from_maximal({{0, 1}, {0, 2}});
    SimplicialComplex arc2 = SimplicialComplex::from_maximal({{1, 2}});
    CHECK(arc1.intersect(arc2).size() == 2);

    CechReport r = cech_total_complex(circle(), {arc1, arc2});
    CHECK(r.rows == 2);
    CHECK(r.total.dims == std::vector<std::size_t>{5, 5, 0});
    CHECK(r.complex_cohomology == std::vector<std::size_t>{1, 1, 0});
    CHECK(r.direct_cohomology == std::vector<std::size_t>{1, 1});
    CHECK(r.matches);
}

TEST_CASE("cech total complex: interval halves and the cover faults") {
    // Subdivided interval 0-1-2 covered by its two halves.
    SimplicialComplex path = SimplicialComplex::from_maximal({{0, 1}, {1, 2}});
    SimplicialComplex left = SimplicialComplex::from_maximal({{0, 1}});
    SimplicialComplex right = SimplicialComplex::from_maximal({{1, 2}});
    CechReport r = cech_total_complex(path, {left, right});
    CHECK(r.rows == 2);
    CHECK(r.total.dims == std::vector<std::size_t>{4, 3, 0});
    CHECK(r.complex_cohomology == std::vector<std::size_t>{1, 0, 0});
    CHECK(r.matches);

    CHECK(fault_message([&] {
              cech_total_complex(circle(), {left});
          }) == "cech complex: cover does not cover the complex (simplex {0 "
                "2} is missed)");
    CHECK(fault_message([&] {
              cech_total_complex(left, {path});
          }) == "cech complex: cover member is not a subcomplex");
}

TEST_CASE("tensor complexes carry the Koszul sign") {
    // Two copies of the one-arrow complex 1 -> 1: the degree-one
    // differential must mix signs or d(d(x)) is nonzero.
    CochainComplex e;
    e.dims = {1, 1};
    e.d = {qm({{1}})};
    CochainComplex t = tensor_complex(e, e);
    CHECK(t.dims == std::vector<std::size_t>{1, 2, 1});
    CHECK(t.d[0] == qm({{1}, {1}}));
    CHECK(t.d[1] == qm({{1, -1}}));
    CHECK(validate_cochain_complex(t).ok());

    // Product of two circles: the torus Betti numbers 1, 2, 1.
    CochainComplex sc =
        relative_cochain_complex(SimplicialPair{circle(), SimplicialComplex{}});
    CochainComplex torus = tensor_complex(sc, sc);
    CHECK(torus.dims == std::vector<std::size_t>{9, 18, 9});
    CHECK(validate_cochain_complex(torus).ok());
    CHECK(cohomology_dims(torus) == std::vector<std::size_t>{1, 2, 1});
    CHECK(euler_characteristic(torus) == 0);

    // Product of two intervals: contractible square.
    CochainComplex si =
        relative_cochain_complex(SimplicialPair{interval(), SimplicialComplex{}});
    CHECK(cohomology_dims(tensor_complex(si, si)) ==
          std::vector<std::size_t>{1, 0, 0});

    // Euler characteristic is multiplicative under tensor products.
    CHECK(euler_characteristic(tensor_complex(sc, si)) ==
          euler_characteristic(sc) * euler_characteristic(si));

    CochainComplex bad;
    bad.dims = {2, 1};
    bad.d = {qm({{1}})};
    CHECK(fault_message([&] { tensor_complex(bad, e); }) ==
          "tensor complex: factor is not a valid cochain complex");
}

TEST_CASE("euler characteristic equals the alternating cohomology sum") {
    std::vector<CochainComplex> fixtures = {
        relative_cochain_complex(SimplicialPair{circle(), SimplicialComplex{}}),
        relative_cochain_complex(SimplicialPair{sphere(), SimplicialComplex{}}),
        relative_cochain_complex(SimplicialPair{interval(), interval_boundary()}),
        relative_cochain_complex(SimplicialPair{triangle(), circle()}),
    };
    for (const CochainComplex& c : fixtures) {
        std::vector<std::size_t> h = cohomology_dims(c);
        long long chi = 0;
        for (std::size_t k = 0; k < h.size(); ++k)
            chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(h[k]);
        CHECK(euler_characteristic(c) == chi);
    }
}

TEST_CASE("diagram fixtures: single pair and the coboundary edge") {
    PairSpec a{"a", SimplicialPair{interval(), interval_boundary()}, 1};
    DiagramFixture single = make_diagram_fixture({a}, {}, {});
    CHECK(single.diagram.vertices().size() == 1);
    CHECK(single.diagram.vertex("a").grade == 1);
    CHECK(single.diagram.identity_edge("a").has_value());
    CHECK(single.rep.dim("a") == 1);
    CHECK(validate_representation(single.diagram, single.rep).ok());

    PairSpec yz{"yz", SimplicialPair{interval_boundary(), point()}, 0};
    PairSpec xy{"xy", SimplicialPair{interval(), interval_boundary()}, 1};
    DiagramFixture chain =
        make_diagram_fixture({yz, xy}, {}, {TripleSpec{"del", "yz", "xy"}});
    CHECK(chain.diagram.vertices().size() == 2);
    CHECK(chain.diagram.vertex("yz").grade == 0);
    CHECK(chain.diagram.vertex("xy").grade == 1);
    CHECK(chain.rep.mats.at("del") == qm({{1}}));
    CHECK(validate_representation(chain.diagram, chain.rep).ok());

    // The connecting edge is invertible, as the snake computation showed.
    CHECK(rank(chain.rep.mats.at("del")) == 1);
}

TEST_CASE("diagram fixtures: functoriality edges and their faults") {
    // The swap of the interval reverses orientation on relative H^1.
    PairSpec p{"p", SimplicialPair{interval(), interval_boundary()}, 1};
    MapSpec swap{"s", "p", "p", {1, 0}};
    DiagramFixture fx = make_diagram_fixture({p}, {swap}, {});
    CHECK(fx.rep.mats.at("s") == qm({{-1}}));
    // Contravariant composition: s after s pulls back to the identity.
    CHECK(fx.rep.mats.at("s") * fx.rep.mats.at("s") == QMat::identity(1));

    // Collapsing two points onto one pulls constants back to constants.
    PairSpec v2{"v2", SimplicialPair{interval_boundary(), SimplicialComplex{}},
                0};
    PairSpec v1{"v1", SimplicialPair{point(), SimplicialComplex{}}, 0};
    MapSpec collapse{"c", "v1", "v2", {0, 0}};
    DiagramFixture fc = make_diagram_fixture({v1, v2}, {collapse}, {});
    CHECK(fc.rep.mats.at("c") == qm({{1}, {1}}));

    PairSpec e{"e", SimplicialPair{interval(), SimplicialComplex{}}, 0};
    PairSpec b{"b", SimplicialPair{interval_boundary(), SimplicialComplex{}},
               0};
    CHECK(fault_message([&] {
              make_diagram_fixture({e, b}, {MapSpec{"m", "b", "e", {0, 1}}},
                                   {});
          }) == "fixture: map 'm' is not simplicial");

    PairSpec q0{"q0", SimplicialPair{interval(),
                                     SimplicialComplex::from_maximal({{0}})},
                1};
    PairSpec q1{"q1", SimplicialPair{interval(),
                                     SimplicialComplex::from_maximal({{1}})},
                1};
    CHECK(fault_message([&] {
              make_diagram_fixture({q0, q1},
                                   {MapSpec{"m", "q1", "q0", {0, 1}}}, {});
          }) == "fixture: map 'm' does not respect the subcomplex");

    CHECK(fault_message([&] {
              make_diagram_fixture({v1, p}, {MapSpec{"m", "v1", "p", {0}}},
                                   {});
          }) == "fixture: map edge 'm' joins different degrees");
    CHECK(fault_message([&] {
              make_diagram_fixture({v1}, {MapSpec{"m", "v1", "nope", {0}}},
                                   {});
          }) == "fixture: unknown vertex name 'nope'");
    CHECK(fault_message([&] {
              make_diagram_fixture({v1, v1}, {}, {});
          }) == "fixture: duplicate pair name 'v1'");
    CHECK(fault_message([&] {
              make_diagram_fixture({v1, p}, {},
                                   {TripleSpec{"d", "v1", "p"}});
          }) == "fixture: coboundary chain for edge 'd' does not interlock");
    PairSpec same_deg{"sd", SimplicialPair{interval(), interval_boundary()},
                      0};
    CHECK(fault_message([&] {
              make_diagram_fixture({v1, same_deg}, {},
                                   {TripleSpec{"d", "v1", "sd"}});
          }) == "fixture: coboundary edge 'd' must raise the degree by one");
    CHECK(fault_message([&] {
              make_diagram_fixture({v2, v1},
                                   {MapSpec{"m", "v1", "v2", {0}}}, {});
          }) == "fixture: vertex map does not cover the complex");
}

TEST_CASE("conjugated twin representations leave a visible intertwiner") {
    PairSpec yz{"yz", SimplicialPair{interval_boundary(), point()}, 0};
    PairSpec xy{"xy", SimplicialPair{interval(), interval_boundary()}, 1};
    DiagramFixture fx =
        make_diagram_fixture({yz, xy}, {}, {TripleSpec{"del", "yz", "xy"}});

    std::map<VertexId, QMat> change;
    change["xy"] = qm({{2}});
    change["yz"] = qm({{3}});
    Representation twin = conjugate_representation(fx.diagram, fx.rep, change);
    CHECK(twin.mats.at("del") == QMat(1, 1, {rat(2, 3)}));
    CHECK(validate_representation(fx.diagram, twin).ok());

    // The change matrices themselves intertwine the two representations,
    // and nothing else does (up to scale).
    std::vector<VertexId> verts = fx.diagram.vertex_ids();
    IntertwinerSpace hom = hom_space(fx.diagram, fx.rep, twin, verts);
    CHECK(hom.dim() == 1);
    QVec expected = hom.assemble({{"xy", change["xy"]}, {"yz", change["yz"]}});
    CHECK(hom.basis.contains(expected));

    CHECK(fault_message([&] {
              conjugate_representation(fx.diagram, fx.rep,
                                       {{"xy", QMat(1, 1)}});
          }) == "conjugate representation: change matrix is singular at "
                "vertex 'xy'");
    CHECK(fault_message([&] {
              conjugate_representation(fx.diagram, fx.rep,
                                       {{"xy", QMat::identity(2)}});
          }) == "conjugate representation: change matrix shape mismatch at "
                "vertex 'xy'");
}

TEST_CASE("random 2-complexes: filtration and cech match direct cohomology") {
    Rng rng(2718);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t nverts = static_cast<std::size_t>(rng.pick_int(3, 6));
        std::size_t pieces = static_cast<std::size_t>(rng.pick_int(2, 6));
        std::vector<Simplex> maximal;
        for (std::size_t p = 0; p < pieces; ++p) {
            std::size_t k = static_cast<std::size_t>(rng.pick_int(1, 3));
            std::vector<std::size_t> pool(nverts);
            for (std::size_t v = 0; v < nverts; ++v) pool[v] = v;
            std::shuffle(pool.begin(), pool.end(), rng.gen);
            maximal.push_back(Simplex(pool.begin(), pool.begin() + k));
        }
        SimplicialComplex x = SimplicialComplex::from_maximal(maximal);
        CAPTURE(trial);

        FiltrationReport fr = filtration_complex(x, skeletal_filtration(x));
        CHECK(fr.matches);

        // Partition the maximal simplices into two or three cover members.
        std::size_t members = static_cast<std::size_t>(rng.pick_int(2, 3));
        std::vector<std::vector<Simplex>> parts(members);
        for (std::size_t p = 0; p < maximal.size(); ++p)
            parts[static_cast<std::size_t>(
                      rng.pick_int(0, static_cast<long>(members) - 1))]
                .push_back(maximal[p]);
        std::vector<SimplicialComplex> cover;
        for (auto& part : parts) {
            if (part.empty()) part.push_back(maximal[0]);
            cover.push_back(SimplicialComplex::from_maximal(part));
        }
        CechReport cr = cech_total_complex(x, cover);
        CHECK(cr.matches);
    }
}
