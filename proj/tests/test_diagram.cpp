#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgp/diagram.hpp"

#include "test_util.hpp"

using namespace dgp;
using namespace dgp::testutil;

namespace {

Diagram two_vertex_arrow() {
    Diagram d;
    d.add_vertex("p");
    d.add_vertex("q");
    d.add_edge("id_p", "p", "p", true);
    d.add_edge("id_q", "q", "q", true);
    d.add_edge("e", "p", "q");
    return d;
}

} // namespace

TEST_CASE("diagram construction and validation") {
    Diagram d = two_vertex_arrow();
    CHECK(validate_diagram(d).ok());
    CHECK(d.identity_edge("p") == EdgeId("id_p"));
    CHECK(d.edge("e").src == "p");

    Diagram bad;
    bad.add_vertex("v");
    CHECK_FALSE(validate_diagram(bad).ok()); // no identity edge

    Diagram bad2;
    bad2.add_vertex("v");
    bad2.add_edge("id_v", "v", "v", true);
    bad2.add_edge("e", "v", "w"); // dangling target
    CHECK_FALSE(validate_diagram(bad2).ok());

    CHECK_THROWS_AS(d.add_vertex("p"), Fault);
    Diagram twoid;
    twoid.add_vertex("v");
    twoid.add_edge("i1", "v", "v", true);
    CHECK_THROWS_AS(twoid.add_edge("i2", "v", "v", true), Fault);
}

TEST_CASE("grades are normalized into Z/2") {
    Diagram d;
    d.add_vertex("a", 3);
    d.add_vertex("b", -1);
    d.add_vertex("c", 4);
    CHECK(d.grade("a") == 1);
    CHECK(d.grade("b") == 1);
    CHECK(d.grade("c") == 0);
}

TEST_CASE("representation validation catches shape and identity mismatches") {
    Diagram d = two_vertex_arrow();
    Representation t;
    t.dims = {{"p", 2}, {"q", 1}};
    t.mats["e"] = qm({{1, 0}});
    CHECK(validate_representation(d, t).ok());
    CHECK(edge_matrix(d, t, "id_p") == QMat::identity(2));

    Representation bad = t;
    bad.mats["e"] = qm({{1, 0}, {0, 1}});
    CHECK_FALSE(validate_representation(d, bad).ok());

    Representation bad2 = t;
    bad2.mats["id_p"] = qm({{1, 1}, {0, 1}});
    CHECK_FALSE(validate_representation(d, bad2).ok());

    Representation missing;
    missing.dims = {{"p", 2}, {"q", 1}};
    CHECK_FALSE(validate_representation(d, missing).ok());
}

TEST_CASE("finite subdiagram keeps exactly the induced edges") {
    Diagram d = two_vertex_arrow();
    Diagram s = finite_subdiagram(d, {"p"});
    CHECK(s.vertices().size() == 1);
    CHECK(s.edges().size() == 1); // just id_p
    CHECK(s.has_edge("id_p"));

    Diagram full = finite_subdiagram(d, {"p", "q"});
    CHECK(full.edges().size() == 3);
    CHECK_THROWS_AS(finite_subdiagram(d, {"nope"}), Fault);
}

TEST_CASE("product diagram has only one-sided edge products") {
    Diagram d1 = two_vertex_arrow();
    Diagram d2;
    d2.add_vertex("x", 1);
    d2.add_edge("id_x", "x", "x", true);

    Diagram p = product_diagram(d1, d2);
    CHECK(p.vertices().size() == 2);
    std::size_t nonid = 0, ids = 0;
    for (const auto& [id, e] : p.edges()) (e.identity ? ids : nonid)++;
    CHECK(ids == 2);
    CHECK(nonid == 1);
    CHECK(p.grade("(p,x)") == 1);
    CHECK(validate_diagram(p).ok());

    // Two non-identity edges on each side: every product edge moves only
    // one coordinate.
    Diagram d3 = two_vertex_arrow();
    Diagram q = product_diagram(d1, d3);
    CHECK(q.vertices().size() == 4);
    for (const auto& [id, e] : q.edges()) {
        if (e.identity) continue;
        bool left_move = e.src.substr(0, e.src.find(',')) !=
                         e.dst.substr(0, e.dst.find(','));
        bool right_move = e.src.substr(e.src.find(',')) !=
                          e.dst.substr(e.dst.find(','));
        CHECK(left_move != right_move);
    }
}

namespace {

/// One odd line f with f x f = ff: the minimal fixture where the commutator
/// sign is visible. alpha_sign is the scalar of T(alpha_{f,f}).
struct OddLine {
    Diagram d;
    ProductStructure p;
    GradedRepresentation t;
};

OddLine odd_line(long alpha_sign) {
    OddLine o;
    o.d.add_vertex("f", 1);
    o.d.add_vertex("ff", 0);
    o.d.add_edge("id_f", "f", "f", true);
    o.d.add_edge("id_ff", "ff", "ff", true);
    o.d.add_edge("alpha", "ff", "ff");
    o.p.mul[{"f", "f"}] = "ff";
    o.p.alpha[{"f", "f"}] = "alpha";
    o.t.rep.dims = {{"f", 1}, {"ff", 1}};
    o.t.rep.mats["alpha"] = qm({{alpha_sign}});
    o.t.tau[{"f", "f"}] = qm({{1}});
    return o;
}

} // namespace

TEST_CASE("graded validation enforces the commutator sign on an odd line") {
    OddLine good = odd_line(-1);
    CHECK(validate_graded(good.d, good.p, good.t).ok());

    OddLine bad = odd_line(1);
    auto rep = validate_graded(bad.d, bad.p, bad.t);
    REQUIRE_FALSE(rep.ok());
    CHECK(rep.violations[0].find("commutator") != std::string::npos);
}

TEST_CASE("graded validation checks grade additivity of products") {
    OddLine o = odd_line(-1);
    Diagram d;
    d.add_vertex("f", 1);
    d.add_vertex("ff", 1); // wrong: |f x f| should be 0
    d.add_edge("id_f", "f", "f", true);
    d.add_edge("id_ff", "ff", "ff", true);
    ProductStructure p;
    p.mul[{"f", "f"}] = "ff";
    CHECK_FALSE(validate_product_structure(d, p).ok());
}

namespace {

/// Fixture with a 2-dimensional edge product: left factor g of chosen
/// grade, edge gamma : a -> b with |gamma| = 1, materialized as
/// id_g x gamma with the sign of the requested rule.
struct RightProduct {
    Diagram d;
    ProductStructure p;
    GradedRepresentation t;
};

RightProduct right_product_fixture(int left_grade, GradedSignRule rule) {
    RightProduct r;
    r.d.add_vertex("g", left_grade);
    r.d.add_vertex("a", 0);
    r.d.add_vertex("b", 1);
    r.d.add_vertex("ga", left_grade);
    r.d.add_vertex("gb", (left_grade + 1) % 2);
    for (const char* v : {"g", "a", "b", "ga", "gb"})
        r.d.add_edge(std::string("id_") + v, v, v, true);
    r.d.add_edge("gamma", "a", "b");
    r.d.add_edge("idg_x_gamma", "ga", "gb");

    r.p.mul[{"g", "a"}] = "ga";
    r.p.mul[{"g", "b"}] = "gb";
    r.p.edge_mul_right[{"g", "gamma"}] = "idg_x_gamma";

    r.t.rep.dims = {{"g", 1}, {"a", 2}, {"b", 2}, {"ga", 2}, {"gb", 2}};
    QMat gam = qm({{1, 1}, {0, 1}});
    r.t.rep.mats["gamma"] = gam;
    QMat tau_ga = qm({{1, 2}, {0, 1}});
    QMat tau_gb = qm({{1, 0}, {1, 1}});
    r.t.tau[{"g", "a"}] = tau_ga;
    r.t.tau[{"g", "b"}] = tau_gb;
    // |gamma| = 1; the literal rule signs by -1, the alternative by
    // (-1)^{|g|}.
    int sign = rule == GradedSignRule::EdgeDegree ? -1 : (left_grade ? -1 : 1);
    QMat rhs = kron(QMat::identity(1), gam);
    if (sign < 0) rhs = -rhs;
    QMat mat = *inverse(tau_gb) * rhs * tau_ga;
    r.t.rep.mats["idg_x_gamma"] = mat;
    return r;
}

} // namespace

TEST_CASE("id x edge sign rule is configurable") {
    // Even left factor: the two rules disagree on an odd edge.
    RightProduct lit = right_product_fixture(0, GradedSignRule::EdgeDegree);
    GradedCheckOptions literal;
    CHECK(validate_graded(lit.d, lit.p, lit.t, literal).ok());
    GradedCheckOptions alt;
    alt.sign_rule = GradedSignRule::LeftVertexTimesEdge;
    CHECK_FALSE(validate_graded(lit.d, lit.p, lit.t, alt).ok());

    RightProduct pr = right_product_fixture(0, GradedSignRule::LeftVertexTimesEdge);
    CHECK(validate_graded(pr.d, pr.p, pr.t, alt).ok());
    CHECK_FALSE(validate_graded(pr.d, pr.p, pr.t, literal).ok());

    // Odd left factor: the rules agree.
    RightProduct odd = right_product_fixture(1, GradedSignRule::EdgeDegree);
    CHECK(validate_graded(odd.d, odd.p, odd.t, literal).ok());
    CHECK(validate_graded(odd.d, odd.p, odd.t, alt).ok());
}

TEST_CASE("totality can be demanded explicitly") {
    OddLine o = odd_line(-1);
    GradedCheckOptions opts;
    opts.require_total = true;
    auto rep = validate_graded(o.d, o.p, o.t, opts);
    CHECK_FALSE(rep.ok()); // (ff, f) etc. not materialized, no unit
}
