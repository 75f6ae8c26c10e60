#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dgp/rigidity.hpp"
#include "test_util.hpp"

using namespace dgp;
using namespace dgp::testutil;

namespace {

template <typename F>
std::string fault_message(F&& f) {
    try {
        f();
    } catch (const Fault& e) {
        return e.what();
    }
    return "";
}

QMat symplectic2() { return qm({{0, 1}, {-1, 0}}); }

} // namespace

TEST_CASE("perfect duality is exact full rank") {
    CHECK(perfect_duality_check(QMat::identity(2)));
    CHECK(perfect_duality_check(symplectic2()));
    CHECK_FALSE(perfect_duality_check(qm({{1, 1}, {1, 1}})));
    CHECK(fault_message([] { perfect_duality_check(qm({{1, 0}})); }) ==
          "perfect duality: Gram matrix must be square");

    Pairing p = make_pairing(qm({{2, 0}, {0, 3}}));
    CHECK(p.perfect);
    CHECK_FALSE(make_pairing(qm({{0}})).perfect);
}

TEST_CASE("isometry equations for the 1x1 identity form") {
    IsometryEquations eqs = isometry_equations(QMat::identity(1));
    REQUIRE(eqs.equations.size() == 1);
    MatrixPolynomial want;
    want[{{0, 0}, {0, 0}}] = 1;
    want[{}] = -1;
    CHECK(eqs.equations[0] == want);
    CHECK(eqs.distinct.size() == 1);

    CHECK(satisfies_isometry_equations(eqs, qm({{1}})));
    CHECK(satisfies_isometry_equations(eqs, qm({{-1}})));
    CHECK(evaluate(eqs.equations[0], qm({{2}})) == 3);
}

TEST_CASE("isometry equations for the standard plane form") {
    IsometryEquations eqs = isometry_equations(QMat::identity(2));
    CHECK(eqs.equations.size() == 4);
    REQUIRE(eqs.distinct.size() == 3);

    MatrixPolynomial col0;
    col0[{{0, 0}, {0, 0}}] = 1;
    col0[{{1, 0}, {1, 0}}] = 1;
    col0[{}] = -1;
    CHECK(eqs.distinct[0] == col0);
    MatrixPolynomial mixed;
    mixed[{{0, 0}, {0, 1}}] = 1;
    mixed[{{1, 0}, {1, 1}}] = 1;
    CHECK(eqs.distinct[1] == mixed);

    QMat rot = QMat{{rat(3, 5), rat(-4, 5)}, {rat(4, 5), rat(3, 5)}};
    CHECK(satisfies_isometry_equations(eqs, rot));
    CHECK_FALSE(satisfies_isometry_equations(eqs, qm({{1, 1}, {0, 1}})));

    CHECK(fault_message([] { isometry_equations(qm({{1, 1}, {1, 1}})); }) ==
          "isometry equations: pairing is not perfect");
}

TEST_CASE("symplectic isometry equations reduce to the determinant") {
    IsometryEquations eqs = isometry_equations(symplectic2());
    CHECK(eqs.equations.size() == 4);
    CHECK(eqs.equations[0].empty()); // diagonal entries vanish identically
    REQUIRE(eqs.distinct.size() == 2);
    // The (0,1) entry is det X - 1.
    CHECK(evaluate(eqs.distinct[0], qm({{2, 0}, {0, 2}})) == 3);
    CHECK(satisfies_isometry_equations(eqs, qm({{1, 1}, {0, 1}})));
    CHECK_FALSE(satisfies_isometry_equations(eqs, qm({{2, 0}, {0, 1}})));
}

TEST_CASE("closed-form inverse of an isometry") {
    QMat i2 = QMat::identity(2);
    IsometryInverseReport tr = isometry_inverse(i2, i2);
    CHECK(tr.y == i2);
    CHECK(tr.hypothesis);
    CHECK(tr.two_sided_inverse);

    QMat rot = QMat{{rat(3, 5), rat(-4, 5)}, {rat(4, 5), rat(3, 5)}};
    IsometryInverseReport rr = isometry_inverse(i2, rot);
    CHECK(rr.hypothesis);
    CHECK(rr.y == rot.transpose());
    CHECK(rr.two_sided_inverse);

    QMat shear = qm({{1, 1}, {0, 1}});
    IsometryInverseReport sr = isometry_inverse(symplectic2(), shear);
    CHECK(sr.hypothesis);
    CHECK(sr.y == qm({{1, -1}, {0, 1}}));
    CHECK(sr.two_sided_inverse);

    // Outside the isometry group the candidate is still returned.
    IsometryInverseReport nr = isometry_inverse(i2, qm({{2, 0}, {0, 2}}));
    CHECK_FALSE(nr.hypothesis);
    CHECK_FALSE(nr.two_sided_inverse);
    CHECK(nr.y == qm({{2, 0}, {0, 2}}));

    CHECK(fault_message([&] { isometry_inverse(qm({{0}}), qm({{1}})); }) ==
          "isometry inverse: pairing is not perfect");
}

TEST_CASE("equation sets are stable under the closed-form inverse") {
    struct Sample {
        QMat a;
        QMat x;
    };
    std::vector<Sample> samples = {
        {QMat::identity(2), QMat{{rat(3, 5), rat(-4, 5)}, {rat(4, 5), rat(3, 5)}}},
        {QMat::identity(2), qm({{1, 0}, {0, -1}})},
        {symplectic2(), qm({{1, 1}, {0, 1}})},
        {symplectic2(), qm({{1, 0}, {-3, 1}})},
        {qm({{1, 0}, {0, 2}}),
         QMat{{rat(1, 3), rat(-4, 3)}, {rat(2, 3), rat(1, 3)}}},
    };
    for (const auto& s : samples) {
        IsometryEquations eqs = isometry_equations(s.a);
        REQUIRE(satisfies_isometry_equations(eqs, s.x));
        IsometryInverseReport r = isometry_inverse(s.a, s.x);
        CHECK(r.two_sided_inverse);
        CHECK(satisfies_isometry_equations(eqs, r.y));
    }
}

TEST_CASE("finite matrix monoids of invertibles are groups") {
    MonoidGroupReport triv = monoid_is_group({QMat::identity(2)});
    CHECK(triv.ok());
    CHECK(triv.inverse_index == std::vector<std::size_t>{0});

    QMat r = qm({{0, -1}, {1, 0}});
    std::vector<QMat> c4 = {QMat::identity(2), r, r * r, r * r * r};
    MonoidGroupReport rep = monoid_is_group(c4);
    CHECK(rep.ok());
    CHECK(rep.inverse_index == std::vector<std::size_t>{0, 3, 2, 1});

    CHECK(fault_message([] {
              monoid_is_group({QMat::identity(2), qm({{1, 0}, {0, 0}})});
          }) == "monoid: member 1 is not invertible");

    MonoidGroupReport open = monoid_is_group({QMat::identity(2),
                                              qm({{2, 0}, {0, 1}})});
    CHECK_FALSE(open.ok());
    CHECK_FALSE(open.closed);
    REQUIRE(open.violations.violations.size() == 1);
    CHECK(open.violations.violations[0] ==
          "product of members 1 and 1 is outside the set");

    CHECK(fault_message([] { monoid_is_group({}); }) ==
          "monoid: empty member list");
    CHECK(fault_message([] {
              monoid_is_group({QMat::identity(2), QMat::identity(3)});
          }) == "monoid: members have mixed shapes");
}

TEST_CASE("regular representations feed the monoid check at every order") {
    for (const auto& g : small_group_catalog(8)) {
        CAPTURE(g.size);
        std::vector<QMat> m = regular_representation(g);
        REQUIRE(m.size() == g.size);
        CHECK(m[g.identity] == QMat::identity(g.size));
        MonoidGroupReport rep = monoid_is_group(m);
        CHECK(rep.ok());
        for (std::size_t a = 0; a < g.size; ++a)
            CHECK(rep.inverse_index[a] == g.inv[a]);
    }

    // Order 24 through the largest dihedral group.
    MonoidGroupReport big =
        monoid_is_group(regular_representation(dihedral_group(12)));
    CHECK(big.ok());
}

TEST_CASE("symmetric extension and orthogonal sums stay perfect") {
    CHECK(symmetric_extension(qm({{2}})) == qm({{0, 2}, {2, 0}}));
    QMat s = symmetric_extension(QMat::identity(2));
    CHECK(s.rows() == 4);
    CHECK(s == s.transpose());
    CHECK(perfect_duality_check(s));

    CHECK(fault_message([] { symmetric_extension(qm({{1, 1}, {1, 1}})); }) ==
          "symmetric extension: pairing is not perfect");
    CHECK(fault_message([] { symmetric_extension(qm({{1, 0}})); }) ==
          "symmetric extension: pairing matrix must be square");

    CHECK(orthogonal_sum(qm({{1}}), symplectic2()) ==
          qm({{1, 0, 0}, {0, 0, 1}, {0, -1, 0}}));
    CHECK(perfect_duality_check(orthogonal_sum(QMat::identity(1),
                                               symplectic2())));
    CHECK_FALSE(perfect_duality_check(orthogonal_sum(QMat::identity(2),
                                                     qm({{0}}))));
}
