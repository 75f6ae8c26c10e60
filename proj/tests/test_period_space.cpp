#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dgp/fixtures.hpp"
#include "dgp/period_space.hpp"
#include "test_util.hpp"

#include <functional>

using namespace dgp;
using namespace dgp::testutil;

namespace {

std::string fault_message(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Fault& f) {
        return f.what();
    }
    return "";
}

/// Two representations on (a, aa) with product a x a = aa and different tau
/// tables, for exercising the mixed comultiplication.
struct MixedFixture {
    Diagram d;
    ProductStructure p;
    GradedRepresentation t1, t2;
};

MixedFixture mixed_fixture() {
    MixedFixture m;
    m.d.add_vertex("a", 0);
    m.d.add_vertex("aa", 0);
    m.d.add_edge("id(a)", "a", "a", true);
    m.d.add_edge("id(aa)", "aa", "aa", true);
    m.p.mul[{"a", "a"}] = "aa";
    for (GradedRepresentation* t : {&m.t1, &m.t2}) {
        t->rep.dims["a"] = 1;
        t->rep.dims["aa"] = 1;
    }
    m.t1.tau[{"a", "a"}] = qm({{1}});
    m.t2.tau[{"a", "a"}] = qm({{2}});
    return m;
}

} // namespace

TEST_CASE("a line against a line pairs period classes with intertwiners") {
    Diagram d;
    d.add_vertex("v", 0);
    d.add_edge("id(v)", "v", "v", true);
    Representation t1, t2;
    t1.dims["v"] = 1;
    t2.dims["v"] = 1;

    PsiReport r = psi_map(d, t1, t2, {"v"});
    CHECK(r.periods.dim() == 1);
    CHECK(r.hom.dim() == 1);
    CHECK(r.psi == qm({{1}}));
    CHECK(r.dims_match);
    CHECK(r.bijective);
    CHECK(r.ok());
}

TEST_CASE("unconstrained vertices contribute full blocks") {
    Diagram d;
    d.add_vertex("p", 0);
    d.add_vertex("q", 0);
    d.add_edge("id(p)", "p", "p", true);
    d.add_edge("id(q)", "q", "q", true);
    Representation t1, t2;
    t1.dims["p"] = 2;
    t1.dims["q"] = 1;
    t2.dims["p"] = 2;
    t2.dims["q"] = 3;

    PeriodSpace ps = period_space(d, t1, t2, {"p", "q"});
    CHECK(ps.layout.total == 7);
    CHECK(ps.layout.block("p").offset == 0);
    CHECK(ps.layout.block("q").offset == 4);
    CHECK(ps.relations.dim() == 0);
    CHECK(ps.dim() == 7);

    PsiReport r = psi_map(d, t1, t2, {"p", "q"});
    CHECK(r.hom.dim() == 7);
    CHECK(r.ok());
}

TEST_CASE("an edge imposes exactly the change-of-variables relations") {
    Diagram d;
    d.add_vertex("p", 0);
    d.add_vertex("q", 0);
    d.add_edge("id(p)", "p", "p", true);
    d.add_edge("id(q)", "q", "q", true);
    d.add_edge("m", "p", "q");
    Representation t1, t2;
    t1.dims["p"] = 2;
    t1.dims["q"] = 1;
    t2.dims["p"] = 1;
    t2.dims["q"] = 1;
    t1.mats["m"] = qm({{1, 0}});
    t2.mats["m"] = qm({{3}});

    PsiReport r = psi_map(d, t1, t2, {"p", "q"});
    // omega_0 (x) gamma at q is identified with 3 omega_0 (x) gamma at p,
    // and omega_1 (x) gamma at p dies.
    CHECK(r.periods.relations.dim() == 2);
    CHECK(r.periods.dim() == 1);
    CHECK(r.hom.dim() == 1);
    CHECK(r.psi_ambient == qm({{1, 0, 3}}));
    CHECK(r.psi == qm({{3}}));
    CHECK(r.ok());
}

TEST_CASE("mismatched scalars on a loop kill the whole block") {
    Diagram d;
    d.add_vertex("v", 0);
    d.add_edge("id(v)", "v", "v", true);
    d.add_edge("c", "v", "v");
    Representation t1, t2;
    t1.dims["v"] = 1;
    t2.dims["v"] = 1;
    t1.mats["c"] = qm({{1}});
    t2.mats["c"] = qm({{2}});

    PsiReport r = psi_map(d, t1, t2, {"v"});
    CHECK(r.hom.dim() == 0);
    CHECK(r.periods.dim() == 0);
    CHECK(r.ok());
}

TEST_CASE("relation vectors do not depend on the probing vectors") {
    for (std::uint64_t seed : {11u, 12u, 13u, 14u}) {
        Rng rng(seed);
        Diagram d = random_diagram(rng, 3, 5);
        Representation t1 = random_representation(rng, d, 3);
        Representation t2 = random_representation(rng, d, 3);
        std::vector<VertexId> F;
        for (const auto& [vid, v] : d.vertices()) F.push_back(vid);

        PeriodSpace ps = period_space(d, t1, t2, F);
        for (const auto& [eid, e] : d.edges()) {
            if (e.identity) continue;
            QMat m1 = t1.mats.at(eid);
            QMat m2 = t2.mats.at(eid);
            QVec omega(t1.dim(e.src));
            QVec gamma(t2.dim(e.dst));
            for (auto& x : omega) x = rng.pick_rational();
            for (auto& x : gamma) x = rng.pick_rational();
            QVec rel = period_relation(ps, m1, m2, e.src, e.dst, omega, gamma);
            CHECK(ps.relations.contains(rel));
        }
    }
}

TEST_CASE("the evaluation pairing is bijective on random pairs") {
    for (std::uint64_t seed = 20; seed < 32; ++seed) {
        Rng rng(seed);
        Diagram d = random_diagram(rng, 3, 5);
        Representation t1 = random_representation(rng, d, 3);
        Representation t2 = random_representation(rng, d, 3);
        std::vector<VertexId> F;
        for (const auto& [vid, v] : d.vertices()) F.push_back(vid);

        PsiReport r = psi_map(d, t1, t2, F);
        CHECK(r.ok());
        // Independent rank route for both dimensions.
        CHECK(bareiss_rank(r.psi) == r.hom.dim());
        CHECK(bareiss_rank(r.psi) == r.periods.dim());
    }
}

TEST_CASE("equal representations reproduce the endomorphism dimensions") {
    GradedFixture st = scalar_tower_fixture(0);
    std::vector<VertexId> all = {"one", "f", "ff", "f(ff)", "(ff)f",
                                 "(ff)(ff)"};
    EndAlgebraData e = end_algebra(st.d, st.t.rep, all);
    PsiReport r = psi_map(st.d, st.t.rep, st.t.rep, all);
    CHECK(e.dim() == 5);
    CHECK(r.periods.dim() == 5);
    CHECK(r.hom.dim() == 5);
    CHECK(r.ok());

    GradedFixture mt = matrix_tower_fixture(0, QMat::identity(4), false,
                                            false);
    std::vector<VertexId> fp = {"f", "ff", "one"};
    EndAlgebraData em = end_algebra(mt.d, mt.t.rep, fp);
    PsiReport rm = psi_map(mt.d, mt.t.rep, mt.t.rep, fp);
    CHECK(em.dim() == 15);
    CHECK(rm.periods.dim() == 15);
    CHECK(rm.ok());
}

TEST_CASE("the period product on the scalar tower multiplies the scalars") {
    GradedFixture st = scalar_tower_fixture(0);
    PeriodProductReport r = period_product(st.d, st.p, st.t, st.t,
                                           {"f", "one"}, {"f", "ff", "one"});
    CHECK(r.base.dim() == 2);
    CHECK(r.target.dim() == 3);
    // Generators [f], [one]; products land at ff, f, f, one.
    CHECK(r.mult == qm({{0, 1, 1, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}}));
    CHECK(r.well_defined);
    CHECK(r.commutative == std::optional<bool>(true));
    CHECK(r.psi_multiplicative);
    CHECK(r.ok());
}

TEST_CASE("odd factors leave commutativity out of scope") {
    GradedFixture st = scalar_tower_fixture(1);
    PeriodProductReport r = period_product(st.d, st.p, st.t, st.t,
                                           {"f", "one"}, {"f", "ff", "one"});
    CHECK(r.mult == qm({{0, 1, 1, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}}));
    CHECK_FALSE(r.commutative.has_value());
    CHECK(r.well_defined);
    CHECK(r.psi_multiplicative);
    CHECK(r.ok());
}

TEST_CASE("the period product is compatible with psi on the matrix tower") {
    GradedFixture mt = matrix_tower_fixture(0, QMat::identity(4), false,
                                            false);
    PeriodProductReport r = period_product(mt.d, mt.p, mt.t, mt.t,
                                           {"f", "one"}, {"f", "ff", "one"});
    CHECK(r.base.dim() == 5);
    CHECK(r.target.dim() == 15);
    CHECK(r.well_defined);
    CHECK(r.psi_multiplicative);
    CHECK(r.ok());
}

TEST_CASE("hom mu* reads components through both taus") {
    MixedFixture m = mixed_fixture();
    HomMuStar h = hom_mu_star(m.d, m.p, m.t1, m.t2, {"a"}, {"a"},
                              {"a", "aa"});
    CHECK(h.left.dim() == 1);
    CHECK(h.prod.dim() == 2);
    CHECK(h.mu == qm({{0, 2}}));
}

TEST_CASE("hom mu* faults on missing product data") {
    MixedFixture m = mixed_fixture();
    CHECK(fault_message([&] {
              hom_mu_star(m.d, m.p, m.t1, m.t2, {"a"}, {"a"}, {"a"});
          }).find("vertex 'aa' outside F'") != std::string::npos);

    GradedRepresentation bare = m.t2;
    bare.tau.clear();
    CHECK(fault_message([&] {
              hom_mu_star(m.d, m.p, m.t1, bare, {"a"}, {"a"}, {"a", "aa"});
          }).find("tau2(a, a)") != std::string::npos);
}

TEST_CASE("hom mu* agrees with mu* when the representations coincide") {
    GradedFixture st = scalar_tower_fixture(0);
    std::vector<VertexId> F = {"f", "one"};
    std::vector<VertexId> Fp = {"f", "ff", "one"};
    HomMuStar h = hom_mu_star(st.d, st.p, st.t, st.t, F, F, Fp);
    MuStar m = mu_star(st.d, st.p, st.t, F, F, Fp);
    CHECK(h.mu == m.mu);
}

TEST_CASE("coactions on matrix units follow the composition indices") {
    Diagram d;
    d.add_vertex("v", 0);
    d.add_edge("id(v)", "v", "v", true);
    Representation t1, t2;
    t1.dims["v"] = 2;
    t2.dims["v"] = 2;

    PeriodCoactions c = period_coactions(d, t1, t2, {"v"});
    CHECK(c.n1 == 4);
    CHECK(c.n12 == 4);
    CHECK(c.n2 == 4);
    CHECK(c.ok());

    // Bases are matrix units E(u,v) <-> 2u+v. Precomposition gives
    // E(u,v) E(a,b) = [v==a] E(u,b); postcomposition E(cc,dd) E(u,v)
    // = [dd==u] E(cc,v). The column is the element being composed.
    for (std::size_t k1 = 0; k1 < 4; ++k1)
        for (std::size_t k = 0; k < 4; ++k)
            for (std::size_t col = 0; col < 4; ++col) {
                std::size_t a = k1 / 2, b = k1 % 2, u = col / 2, v = col % 2;
                Rational want((v == a && k == 2 * u + b) ? 1 : 0);
                CHECK(c.left(k1 * 4 + k, col) == want);
            }
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t k2 = 0; k2 < 4; ++k2)
            for (std::size_t col = 0; col < 4; ++col) {
                std::size_t u = col / 2, v = col % 2, cc = k2 / 2, dd = k2 % 2;
                Rational want((dd == u && k == 2 * cc + v) ? 1 : 0);
                CHECK(c.right(k * 4 + k2, col) == want);
            }
}

TEST_CASE("coaction laws hold for a constrained asymmetric pair") {
    Diagram d;
    d.add_vertex("p", 0);
    d.add_vertex("q", 0);
    d.add_edge("id(p)", "p", "p", true);
    d.add_edge("id(q)", "q", "q", true);
    d.add_edge("m", "p", "q");
    Representation t1, t2;
    t1.dims["p"] = 2;
    t1.dims["q"] = 1;
    t2.dims["p"] = 1;
    t2.dims["q"] = 1;
    t1.mats["m"] = qm({{1, 0}});
    t2.mats["m"] = qm({{3}});

    PeriodCoactions c = period_coactions(d, t1, t2, {"p", "q"});
    CHECK(c.n1 == 3);
    CHECK(c.n12 == 1);
    CHECK(c.n2 == 1);
    CHECK(c.ok());
}
