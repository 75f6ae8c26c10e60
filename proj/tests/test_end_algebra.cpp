#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgp/end_algebra.hpp"
#include "dgp/number_field.hpp"

#include "test_util.hpp"

using namespace dgp;
using namespace dgp::testutil;

namespace {

/// One vertex "v" of the given dimension with only its identity loop.
std::pair<Diagram, Representation> single_vertex(std::size_t n) {
    Diagram d;
    d.add_vertex("v");
    d.add_edge("id_v", "v", "v", true);
    Representation t;
    t.dims["v"] = n;
    return {d, t};
}

/// Two vertices p -> q with the given edge matrix.
std::pair<Diagram, Representation> arrow(std::size_t np, std::size_t nq,
                                         const QMat& m) {
    Diagram d;
    d.add_vertex("p");
    d.add_vertex("q");
    d.add_edge("id_p", "p", "p", true);
    d.add_edge("id_q", "q", "q", true);
    d.add_edge("e", "p", "q");
    Representation t;
    t.dims = {{"p", np}, {"q", nq}};
    t.mats["e"] = m;
    return {d, t};
}

} // namespace

TEST_CASE("endomorphisms of a bare 2-dimensional vertex form the full matrix algebra") {
    auto [d, t] = single_vertex(2);
    EndAlgebraData e = end_algebra(d, t, {"v"});
    REQUIRE(e.dim() == 4);

    // Canonical echelon basis is the standard matrix units in row-major
    // order.
    for (std::size_t k = 0; k < 4; ++k) {
        QMat b = e.space.element(k, "v");
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(b(i, j) == (i * 2 + j == k ? 1 : 0));
    }
    CHECK(e.unit_coords == qv({1, 0, 0, 1}));

    // Independent multiplication oracle: matrix units compose by
    // E(a,b) E(c,d) = [b == c] E(a,d).
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            QVec expect(4, Rational(0));
            if (i % 2 == j / 2) expect[(i / 2) * 2 + (j % 2)] = 1;
            CHECK(e.mult[i][j] == expect);
        }
}

TEST_CASE("an invertible connecting edge cuts the endomorphism space to one line") {
    auto [d, t] = arrow(1, 1, qm({{1}}));
    EndAlgebraData e = end_algebra(d, t, {"p", "q"});
    REQUIRE(e.dim() == 1);
    CHECK(e.space.element(0, "p") == qm({{1}}));
    CHECK(e.space.element(0, "q") == qm({{1}}));
    CHECK(e.unit_coords == qv({1}));
    CHECK(mult_in_basis(e, qv({5}), qv({7})) == qv({35}));
}

TEST_CASE("a zero edge imposes no constraint") {
    auto [d, t] = arrow(1, 1, qm({{0}}));
    EndAlgebraData e = end_algebra(d, t, {"p", "q"});
    CHECK(e.dim() == 2);
}

TEST_CASE("a rank-one projection edge cuts dimensions by two") {
    // e_q T = T e_p with T = [1 0] forces t = a and b = 0 in
    // e_p = [[a,b],[c,d]], e_q = [t]; c, d stay free.
    auto [d, t] = arrow(2, 1, qm({{1, 0}}));
    EndAlgebraData e = end_algebra(d, t, {"p", "q"});
    CHECK(e.dim() == 3);
}

TEST_CASE("constraint matrix rows match the edge equation entrywise") {
    auto [d, t] = arrow(2, 2, qm({{1, 2}, {3, 4}}));
    QMat phi = intertwiner_constraints(d, t, t, {"p", "q"});
    // Layout: p-block then q-block, 8 ambient coordinates; 4 rows.
    REQUIRE(phi.rows() == 4);
    REQUIRE(phi.cols() == 8);
    IntertwinerSpace sp = hom_space(d, t, t, {"p", "q"});
    for (std::size_t k = 0; k < sp.dim(); ++k) {
        QMat ep = sp.element(k, "p");
        QMat eq = sp.element(k, "q");
        CHECK((eq * t.mats["e"] - t.mats["e"] * ep).is_zero());
    }
}

TEST_CASE("hom spaces between different representations") {
    Diagram d;
    d.add_vertex("v");
    d.add_edge("id_v", "v", "v", true);
    d.add_edge("g", "v", "v");
    Representation t1, t2;
    t1.dims["v"] = 1;
    t1.mats["g"] = qm({{2}});
    t2.dims["v"] = 2;
    t2.mats["g"] = qm({{2, 0}, {0, 3}});
    IntertwinerSpace h = hom_space(d, t1, t2, {"v"});
    REQUIRE(h.dim() == 1);
    CHECK(h.element(0, "v") == qm({{1}, {0}}));
}

TEST_CASE("endomorphism products stay in the computed span on random diagrams") {
    Rng rng(2026);
    for (int trial = 0; trial < 30; ++trial) {
        Diagram d;
        Representation t;
        std::size_t nv = 1 + rng.pick_int(0, 2);
        std::vector<VertexId> verts;
        for (std::size_t v = 0; v < nv; ++v) {
            VertexId id = "v" + std::to_string(v);
            d.add_vertex(id);
            d.add_edge("id_" + id, id, id, true);
            t.dims[id] = 1 + rng.pick_int(0, 2);
            verts.push_back(id);
        }
        std::size_t ne = rng.pick_int(0, 3);
        for (std::size_t k = 0; k < ne; ++k) {
            const VertexId& a = verts[rng.pick_int(0, nv - 1)];
            const VertexId& b = verts[rng.pick_int(0, nv - 1)];
            EdgeId eid = "e" + std::to_string(k);
            d.add_edge(eid, a, b);
            t.mats[eid] = rng.pick_matrix(t.dims[b], t.dims[a]);
        }
        EndAlgebraData e = end_algebra(d, t, verts);

        // Unit and associativity in the structure constants.
        std::size_t n = e.dim();
        QVec x(n), y(n), z(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = rng.pick_rational();
            y[i] = rng.pick_rational();
            z[i] = rng.pick_rational();
        }
        CHECK(mult_in_basis(e, e.unit_coords, x) == x);
        CHECK(mult_in_basis(e, x, e.unit_coords) == x);
        QVec xy_z = mult_in_basis(e, mult_in_basis(e, x, y), z);
        QVec x_yz = mult_in_basis(e, x, mult_in_basis(e, y, z));
        CHECK(xy_z == x_yz);

        CoalgebraData c = coalgebra_of(e);
        CHECK(coalgebra_laws(c).ok());
        for (const VertexId& v : verts)
            CHECK(coaction_laws(e, t, v).ok());
    }
}

TEST_CASE("the dual of the matrix algebra is the matrix coalgebra") {
    auto [d, t] = single_vertex(2);
    EndAlgebraData e = end_algebra(d, t, {"v"});
    CoalgebraData c = coalgebra_of(e);
    REQUIRE(c.dim == 4);

    // Independent oracle: Delta(x_k) = sum over factorizations of the unit
    // products, i.e. comult((i,j), k) = coefficient of b_k in b_i b_j.
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t k = 0; k < 4; ++k) {
                Rational expect = 0;
                if (i % 2 == j / 2 && (i / 2) * 2 + (j % 2) == k) expect = 1;
                CHECK(c.comult(i * 4 + j, k) == expect);
            }
    CHECK(c.counit == qv({1, 0, 0, 1}));
    CHECK(coalgebra_laws(c).ok());
}

TEST_CASE("coalgebra law checker rejects a broken comultiplication") {
    auto [d, t] = single_vertex(2);
    CoalgebraData c = coalgebra_of(end_algebra(d, t, {"v"}));
    c.comult(0, 0) += 1;
    CHECK_FALSE(coalgebra_laws(c).ok());
}

TEST_CASE("coaction on a bare vertex is v_j -> sum_i v_i (x) x_ij") {
    auto [d, t] = single_vertex(2);
    EndAlgebraData e = end_algebra(d, t, {"v"});
    QMat rho = coaction(e, t, "v");
    REQUIRE(rho.rows() == 8);
    REQUIRE(rho.cols() == 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t j = 0; j < 2; ++j)
                CHECK(rho(i * 4 + k, j) == (k / 2 == i && k % 2 == j ? 1 : 0));
    CHECK(coaction_laws(e, t, "v").ok());
}

TEST_CASE("restriction to a subset is a unital algebra morphism") {
    auto [d, t] = arrow(2, 2, qm({{1, 1}, {0, 1}}));
    EndAlgebraData big = end_algebra(d, t, {"p", "q"});
    EndAlgebraData small = end_algebra(d, t, {"p"});
    REQUIRE(big.dim() == 4);
    REQUIRE(small.dim() == 4);
    QMat r = restriction_matrix(big, small);
    CHECK(rank(r) == 4);
    CHECK(restriction_is_morphism(big, small).ok());

    // Forgetting a zero edge: the restriction is a genuine projection.
    auto [d0, t0] = arrow(2, 2, QMat(2, 2));
    EndAlgebraData big0 = end_algebra(d0, t0, {"p", "q"});
    EndAlgebraData small0 = end_algebra(d0, t0, {"p"});
    CHECK(big0.dim() == 8);
    QMat r0 = restriction_matrix(big0, small0);
    CHECK(r0.rows() == 4);
    CHECK(r0.cols() == 8);
    CHECK(rank(r0) == 4);
    CHECK(restriction_is_morphism(big0, small0).ok());
}

TEST_CASE("intertwiner kernels are stable under base change") {
    auto qi = std::make_shared<NumberField>(std::vector<Rational>{1, 0, 1});
    auto qs2 = std::make_shared<NumberField>(std::vector<Rational>{-2, 0, 1});

    auto [d, t] = single_vertex(2);
    BaseChangeReport r1 = base_change(d, t, t, {"v"}, qi);
    CHECK(r1.ok());
    CHECK(r1.dim_rational == 4);
    CHECK(r1.dim_extension == 4);

    // A rotation by 90 degrees: irreducible over Q, splits over Q(i);
    // the endomorphism kernel itself has the same dimension either way.
    Diagram dr;
    dr.add_vertex("v");
    dr.add_edge("id_v", "v", "v", true);
    dr.add_edge("rot", "v", "v");
    Representation tr;
    tr.dims["v"] = 2;
    tr.mats["rot"] = qm({{0, -1}, {1, 0}});
    BaseChangeReport r2 = base_change(dr, tr, tr, {"v"}, qi);
    CHECK(r2.ok());
    CHECK(r2.dim_rational == 2);

    auto [da, ta] = arrow(1, 1, qm({{1}}));
    BaseChangeReport r3 = base_change(da, ta, ta, {"p", "q"}, qs2);
    CHECK(r3.ok());
    CHECK(r3.dim_rational == 1);

    CHECK_THROWS_AS(base_change(d, t, t, {"v"}, nullptr), Fault);
}
