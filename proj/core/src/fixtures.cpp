#include "dgp/fixtures.hpp"

namespace dgp {

namespace {

void add_vertex_with_id(GradedFixture& x, const VertexId& v, int grade,
                        std::size_t dim) {
    x.d.add_vertex(v, grade);
    x.d.add_edge("id(" + v + ")", v, v, true);
    x.t.rep.dims[v] = dim;
}

void add_unit_products(GradedFixture& x, const VertexId& unit) {
    x.p.unit = unit;
    for (const auto& [vid, v] : x.d.vertices()) {
        x.p.mul[{unit, vid}] = vid;
        x.p.mul[{vid, unit}] = vid;
        EdgeId u = "u(" + vid + ")";
        x.d.add_edge(u, vid, vid);
        x.t.rep.mats[u] = QMat::identity(x.t.rep.dim(vid));
        x.p.unit_edges[vid] = u;
    }
}

void fill_missing_tau_identities(GradedFixture& x) {
    for (const auto& [pair, prod] : x.p.mul)
        if (!x.t.tau.count(pair))
            x.t.tau[pair] = QMat::identity(x.t.rep.dim(prod));
}

void add_alpha(GradedFixture& x, const VertexId& f, const VertexId& g,
               const QMat& mat) {
    EdgeId id = "alpha(" + f + "," + g + ")";
    x.d.add_edge(id, x.p.product(f, g), x.p.product(g, f));
    x.t.rep.mats[id] = mat;
    x.p.alpha[{f, g}] = id;
}

} // namespace

GradedFixture scalar_tower_fixture(int grade_f, bool flip_commutator_sign) {
    GradedFixture x;
    int g = ((grade_f % 2) + 2) % 2;
    add_vertex_with_id(x, "one", 0, 1);
    add_vertex_with_id(x, "f", g, 1);
    add_vertex_with_id(x, "ff", 0, 1);
    add_vertex_with_id(x, "f(ff)", g, 1);
    add_vertex_with_id(x, "(ff)f", g, 1);
    add_vertex_with_id(x, "(ff)(ff)", 0, 1);

    x.p.mul[{"f", "f"}] = "ff";
    x.p.mul[{"f", "ff"}] = "f(ff)";
    x.p.mul[{"ff", "f"}] = "(ff)f";
    x.p.mul[{"ff", "ff"}] = "(ff)(ff)";
    add_unit_products(x, "one");

    Rational sign(g == 1 ? -1 : 1);
    if (flip_commutator_sign) sign = -sign;
    for (const VertexId a : {"f", "ff", "one"})
        for (const VertexId b : {"f", "ff", "one"})
            add_alpha(x, a, b,
                      a == "f" && b == "f" ? QMat(1, 1, {sign})
                                           : QMat::identity(1));

    x.d.add_edge("beta(f,f,f)", "f(ff)", "(ff)f");
    x.t.rep.mats["beta(f,f,f)"] = QMat::identity(1);
    x.p.beta[{"f", "f", "f"}] = "beta(f,f,f)";

    fill_missing_tau_identities(x);
    return x;
}

GradedFixture matrix_tower_fixture(int grade_f, const QMat& tau_ff,
                                   bool flip_commutator_sign, bool deep) {
    if (tau_ff.rows() != 4 || tau_ff.cols() != 4)
        throw Fault("matrix tower: tau_ff must be 4 x 4");
    auto tau_inv = inverse(tau_ff);
    if (!tau_inv) throw Fault("matrix tower: tau_ff is not invertible");

    GradedFixture x;
    int g = ((grade_f % 2) + 2) % 2;
    add_vertex_with_id(x, "one", 0, 1);
    add_vertex_with_id(x, "f", g, 2);
    add_vertex_with_id(x, "ff", 0, 4);
    if (deep) {
        add_vertex_with_id(x, "f(ff)", g, 8);
        add_vertex_with_id(x, "(ff)f", g, 8);
        add_vertex_with_id(x, "(ff)(ff)", 0, 16);
    }

    x.p.mul[{"f", "f"}] = "ff";
    if (deep) {
        x.p.mul[{"f", "ff"}] = "f(ff)";
        x.p.mul[{"ff", "f"}] = "(ff)f";
        x.p.mul[{"ff", "ff"}] = "(ff)(ff)";
    }
    add_unit_products(x, "one");
    x.t.tau[{"f", "f"}] = tau_ff;

    Rational sign(g == 1 ? -1 : 1);
    if (flip_commutator_sign) sign = -sign;
    QMat m = *tau_inv * swap_matrix<Rational>(2, 2) * tau_ff;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = m(i, j) * sign;

    add_alpha(x, "one", "one", QMat::identity(1));
    add_alpha(x, "one", "f", QMat::identity(2));
    add_alpha(x, "f", "one", QMat::identity(2));
    add_alpha(x, "one", "ff", QMat::identity(4));
    add_alpha(x, "ff", "one", QMat::identity(4));
    add_alpha(x, "f", "f", m);
    if (deep) {
        add_alpha(x, "f", "ff", swap_matrix<Rational>(2, 4));
        add_alpha(x, "ff", "f", swap_matrix<Rational>(4, 2));
        add_alpha(x, "ff", "ff", swap_matrix<Rational>(4, 4));

        // Products of the commutator loop with identity vertices keep the
        // deeper End spaces inside the spans that mu* solves against.
        auto add_loop = [&x](const EdgeId& id, const VertexId& at,
                             const QMat& mat) {
            x.d.add_edge(id, at, at);
            x.t.rep.mats[id] = mat;
        };
        add_loop("lmul(alpha(f,f),f)", "(ff)f", kron(m, QMat::identity(2)));
        x.p.edge_mul_left[{"alpha(f,f)", "f"}] = "lmul(alpha(f,f),f)";
        add_loop("rmul(f,alpha(f,f))", "f(ff)", kron(QMat::identity(2), m));
        x.p.edge_mul_right[{"f", "alpha(f,f)"}] = "rmul(f,alpha(f,f))";
        add_loop("lmul(alpha(f,f),ff)", "(ff)(ff)",
                 kron(m, QMat::identity(4)));
        x.p.edge_mul_left[{"alpha(f,f)", "ff"}] = "lmul(alpha(f,f),ff)";
        add_loop("rmul(ff,alpha(f,f))", "(ff)(ff)",
                 kron(QMat::identity(4), m));
        x.p.edge_mul_right[{"ff", "alpha(f,f)"}] = "rmul(ff,alpha(f,f))";

        x.d.add_edge("beta(f,f,f)", "f(ff)", "(ff)f");
        x.t.rep.mats["beta(f,f,f)"] =
            *inverse(kron(tau_ff, QMat::identity(2))) *
            kron(QMat::identity(2), tau_ff);
        x.p.beta[{"f", "f", "f"}] = "beta(f,f,f)";
    }

    fill_missing_tau_identities(x);
    return x;
}

GradedFixture constrained_product_fixture(bool symmetric) {
    GradedFixture x;
    add_vertex_with_id(x, "one", 0, 1);
    add_vertex_with_id(x, "f", 0, 2);
    add_vertex_with_id(x, "ff", 0, 4);

    x.p.mul[{"f", "f"}] = "ff";
    add_unit_products(x, "one");

    QMat g = QMat(2, 2, {Rational(2), Rational(0), Rational(0), Rational(3)});
    x.d.add_edge("gam", "f", "f");
    x.t.rep.mats["gam"] = g;
    x.d.add_edge("lmul(gam,f)", "ff", "ff");
    x.t.rep.mats["lmul(gam,f)"] = kron(g, QMat::identity(2));
    x.p.edge_mul_left[{"gam", "f"}] = "lmul(gam,f)";

    add_alpha(x, "one", "one", QMat::identity(1));
    add_alpha(x, "one", "f", QMat::identity(2));
    add_alpha(x, "f", "one", QMat::identity(2));
    if (symmetric) {
        x.d.add_edge("rmul(f,gam)", "ff", "ff");
        x.t.rep.mats["rmul(f,gam)"] = kron(QMat::identity(2), g);
        x.p.edge_mul_right[{"f", "gam"}] = "rmul(f,gam)";
        add_alpha(x, "f", "f", swap_matrix<Rational>(2, 2));
    }

    fill_missing_tau_identities(x);
    return x;
}

GradedFixture unit_chain_fixture(const Rational& lambda) {
    GradedFixture x;
    add_vertex_with_id(x, "one", 0, 1);
    add_vertex_with_id(x, "f0", 0, 1);
    add_vertex_with_id(x, "f0f0", 0, 1);
    add_vertex_with_id(x, "f0f0f0", 0, 1);

    x.p.mul[{"f0", "f0"}] = "f0f0";
    x.p.mul[{"f0f0", "f0"}] = "f0f0f0";
    add_unit_products(x, "one");

    add_alpha(x, "one", "one", QMat::identity(1));
    add_alpha(x, "one", "f0", QMat::identity(1));
    add_alpha(x, "f0", "one", QMat::identity(1));
    add_alpha(x, "f0", "f0", QMat::identity(1));

    if (lambda != 0) {
        x.d.add_edge("lam", "one", "f0");
        x.t.rep.mats["lam"] = QMat(1, 1, {lambda});
    }

    fill_missing_tau_identities(x);
    return x;
}

GradedFixture twisted_pair_fixture() {
    GradedFixture x;
    add_vertex_with_id(x, "f0", 0, 1);
    add_vertex_with_id(x, "g", 0, 2);
    add_vertex_with_id(x, "f0f0", 0, 1);
    add_vertex_with_id(x, "gf0", 0, 2);

    x.p.mul[{"f0", "f0"}] = "f0f0";
    x.p.mul[{"g", "f0"}] = "gf0";

    QMat u(2, 2, {Rational(1), Rational(2), Rational(0), Rational(1)});
    x.t.tau[{"g", "f0"}] = u;

    QMat g = QMat(2, 2, {Rational(2), Rational(0), Rational(0), Rational(3)});
    x.d.add_edge("gam", "g", "g");
    x.t.rep.mats["gam"] = g;
    x.d.add_edge("lmul(gam,f0)", "gf0", "gf0");
    x.t.rep.mats["lmul(gam,f0)"] = *inverse(u) * g * u;
    x.p.edge_mul_left[{"gam", "f0"}] = "lmul(gam,f0)";

    fill_missing_tau_identities(x);
    return x;
}

} // namespace dgp
