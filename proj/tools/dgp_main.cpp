// dgp: exact computations on diagram representations, their endomorphism
// coalgebras, formal period spaces, torsors, and simplicial fixtures.
//
// Exit codes: 0 success or verdict true, 1 verdict false, 2 input fault.
// Every report on standard output is a single JSON object.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgp/bialgebra.hpp"
#include "dgp/fixtures.hpp"
#include "dgp/json_io.hpp"
#include "dgp/localization.hpp"
#include "dgp/period_space.hpp"
#include "dgp/rigidity.hpp"
#include "dgp/simplicial.hpp"
#include "dgp/torsor.hpp"

using namespace dgp;
using nlohmann::json;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Fault("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw Fault("cannot open file: " + out_path);
    out << text;
}

void emit(const json& report) { std::cout << report.dump(2) << "\n"; }

json vec_json(const QVec& v) {
    json a = json::array();
    for (const Rational& x : v) a.push_back(rational_to_string(x));
    return a;
}

json mat_json(const QMat& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(rational_to_string(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

json dims_json(const std::vector<std::size_t>& dims) {
    json a = json::array();
    for (std::size_t n : dims) a.push_back(n);
    return a;
}

/// Semantic validation after the schema-level parse; Faults so commands
/// never compute on malformed inputs.
DiagramFile load_diagram(const std::string& path) {
    DiagramFile f = parse_diagram_text(read_input(path));
    Report r = validate_diagram(f.diagram);
    r.merge(validate_representation(f.diagram, f.graded.rep));
    if (f.rep2) r.merge(validate_representation(f.diagram, *f.rep2));
    if (f.product) r.merge(validate_product_structure(f.diagram, *f.product));
    if (!r.ok()) {
        std::string msg = "invalid input";
        for (const std::string& v : r.violations) msg += "\n  " + v;
        throw Fault(msg);
    }
    return f;
}

std::vector<VertexId> resolve_verts(const Diagram& d,
                                    const std::vector<std::string>& opt) {
    if (opt.empty()) return d.vertex_ids();
    for (const std::string& v : opt)
        if (!d.has_vertex(v)) throw Fault("unknown vertex '" + v + "'");
    return opt;
}

const Representation& second_rep(const DiagramFile& f) {
    return f.rep2 ? *f.rep2 : f.graded.rep;
}

const ProductStructure& need_product(const DiagramFile& f) {
    if (!f.product) throw Fault("input has no product structure");
    return *f.product;
}

std::shared_ptr<const NumberField> make_field(const std::string& s) {
    if (s.empty()) return nullptr;
    std::vector<Rational> coeffs;
    if (s == "i") {
        coeffs = {Rational(1), Rational(0), Rational(1)};
    } else if (s == "sqrt2") {
        coeffs = {Rational(-2), Rational(0), Rational(1)};
    } else {
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, ','))
            coeffs.push_back(rational_from_string(part));
        if (coeffs.size() < 2)
            throw Fault("field: minimal polynomial needs degree at least 1");
        if (coeffs.back() != Rational(1))
            throw Fault("field: minimal polynomial must be monic");
    }
    return std::make_shared<const NumberField>(std::move(coeffs));
}

std::string monomial_key(
    const std::vector<std::pair<std::size_t, std::size_t>>& mono) {
    if (mono.empty()) return "1";
    std::string key;
    for (const auto& [r, c] : mono) {
        if (!key.empty()) key += "*";
        key += "X(" + std::to_string(r) + "," + std::to_string(c) + ")";
    }
    return key;
}

// ---------------------------------------------------------------- fixtures

SimplicialComplex cx(std::initializer_list<Simplex> maximal) {
    return SimplicialComplex::from_maximal(maximal);
}

DiagramFile graded_file(const GradedFixture& x) {
    DiagramFile f;
    f.diagram = x.d;
    f.graded = x.t;
    f.product = x.p;
    return f;
}

const QMat kTowerTau = QMat(4, 4,
                            {Rational(1), Rational(0), Rational(0), Rational(0),
                             Rational(1), Rational(1), Rational(0), Rational(0),
                             Rational(0), Rational(2), Rational(1), Rational(0),
                             Rational(0), Rational(0), Rational(0), Rational(1)});

/// The bundled corpus, keyed by name. Torsor names accept any cyclic order
/// through torsor-z12.
std::string fixture_text(const std::string& name) {
    // Simplicial building blocks shared by several fixtures.
    SimplicialComplex seg = cx({{0, 1}});
    SimplicialComplex seg_boundary = cx({{0}, {1}});
    SimplicialComplex pt = cx({{0}});
    SimplicialComplex circle3 = cx({{0, 1}, {0, 2}, {1, 2}});
    SimplicialComplex path2 = cx({{0, 1}, {1, 2}});

    if (name == "interval-pair") {
        DiagramFixture fx = make_diagram_fixture(
            {{"v", make_simplicial_pair(seg, seg_boundary), 1}}, {}, {});
        DiagramFile f;
        f.diagram = fx.diagram;
        f.graded.rep = fx.rep;
        return diagram_file_text(f);
    }
    if (name == "interval-chain" || name == "conjugate-pair") {
        DiagramFixture fx = make_diagram_fixture(
            {{"v0", make_simplicial_pair(seg_boundary, pt), 0},
             {"v1", make_simplicial_pair(seg, seg_boundary), 1}},
            {}, {{"del", "v0", "v1"}});
        DiagramFile f;
        f.diagram = fx.diagram;
        f.graded.rep = fx.rep;
        if (name == "conjugate-pair")
            f.rep2 = conjugate_representation(
                fx.diagram, fx.rep, {{"v1", QMat(1, 1, {Rational(2)})}});
        return diagram_file_text(f);
    }
    if (name == "arrow") {
        DiagramFile f;
        f.diagram.add_vertex("a", 0);
        f.diagram.add_vertex("b", 0);
        f.diagram.add_edge("id(a)", "a", "a", true);
        f.diagram.add_edge("id(b)", "b", "b", true);
        f.diagram.add_edge("f", "a", "b");
        f.graded.rep.dims = {{"a", 1}, {"b", 1}};
        f.graded.rep.mats["f"] = QMat::identity(1);
        return diagram_file_text(f);
    }
    if (name == "mismatched-pair") {
        DiagramFile f;
        f.diagram.add_vertex("a", 0);
        f.diagram.add_vertex("b", 0);
        f.diagram.add_edge("id(a)", "a", "a", true);
        f.diagram.add_edge("id(b)", "b", "b", true);
        f.diagram.add_edge("f", "a", "b");
        f.graded.rep.dims = {{"a", 1}, {"b", 1}};
        f.graded.rep.mats["f"] = QMat::identity(1);
        f.rep2.emplace();
        f.rep2->dims = {{"a", 1}, {"b", 1}};
        f.rep2->mats["f"] = QMat(1, 1, {Rational(0)});
        return diagram_file_text(f);
    }
    if (name == "sqrt2-pair") {
        DiagramFile f;
        f.diagram.add_vertex("v", 0);
        f.diagram.add_edge("id(v)", "v", "v", true);
        f.diagram.add_edge("m", "v", "v");
        f.graded.rep.dims = {{"v", 2}};
        f.graded.rep.mats["m"] =
            QMat(2, 2, {Rational(0), Rational(2), Rational(1), Rational(0)});
        f.rep2 = f.graded.rep;
        return diagram_file_text(f);
    }
    if (name == "odd-tower") return diagram_file_text(graded_file(scalar_tower_fixture(1)));
    if (name == "even-tower") return diagram_file_text(graded_file(scalar_tower_fixture(0)));
    if (name == "matrix-tower-odd")
        return diagram_file_text(
            graded_file(matrix_tower_fixture(1, kTowerTau, false, false)));
    if (name == "unit-chain")
        return diagram_file_text(graded_file(unit_chain_fixture(Rational(1))));
    if (name == "twisted-pair")
        return diagram_file_text(graded_file(twisted_pair_fixture()));

    if (name == "interval") {
        ComplexFile f;
        f.x = seg;
        f.y = seg_boundary;
        f.cover = {seg};
        return complex_file_text(f);
    }
    if (name == "interval-halves") {
        ComplexFile f;
        f.x = path2;
        f.cover = {cx({{0, 1}}), cx({{1, 2}})};
        return complex_file_text(f);
    }
    if (name == "circle") {
        ComplexFile f;
        f.x = circle3;
        f.cover = {path2, cx({{0, 2}})};
        return complex_file_text(f);
    }
    if (name == "triangle") {
        ComplexFile f;
        f.x = cx({{0, 1, 2}});
        f.y = circle3;
        f.cover = {f.x};
        return complex_file_text(f);
    }
    if (name == "sphere") {
        ComplexFile f;
        f.x = cx({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
        f.cover = {cx({{0, 1, 2}}), cx({{0, 1, 3}, {0, 2, 3}, {1, 2, 3}})};
        return complex_file_text(f);
    }

    if (name.rfind("torsor-z", 0) == 0) {
        std::size_t n = 0;
        try {
            n = std::stoul(name.substr(8));
        } catch (...) {
            throw Fault("unknown fixture '" + name + "'");
        }
        if (n < 1 || n > 12)
            throw Fault("cyclic torsor fixtures range over torsor-z1 .. torsor-z12");
        return torsor_text(torsor_of_group(cyclic_group(n)));
    }
    if (name == "torsor-s3") return torsor_text(torsor_of_group(dihedral_group(3)));
    if (name == "torsor-q8") return torsor_text(torsor_of_group(quaternion_group()));

    if (name == "gram-catalog") {
        std::vector<QMat> grams = {
            QMat::identity(2),
            QMat(2, 2, {Rational(0), Rational(1), Rational(-1), Rational(0)}),
            QMat(2, 2, {Rational(1), Rational(0), Rational(0), Rational(2)})};
        return matrix_list_text(grams);
    }
    if (name == "symplectic-demo") {
        // The alternating form on the plane with two of its isometries: a
        // squeeze and a shear.
        std::vector<QMat> members = {
            QMat(2, 2, {Rational(0), Rational(1), Rational(-1), Rational(0)}),
            QMat(2, 2, {Rational(2), Rational(0), Rational(0), Rational(1, 2)}),
            QMat(2, 2, {Rational(1), Rational(3), Rational(0), Rational(1)})};
        return matrix_list_text(members);
    }
    if (name == "regular-s3")
        return matrix_list_text(regular_representation(dihedral_group(3)));

    throw Fault("unknown fixture '" + name + "'; run `dgp fixture --list`");
}

const std::vector<std::string> kFixtureNames = {
    "arrow",          "circle",       "conjugate-pair", "even-tower",
    "gram-catalog",   "interval",     "interval-chain", "interval-halves",
    "interval-pair",  "matrix-tower-odd", "mismatched-pair", "odd-tower",
    "regular-s3",     "sphere",       "sqrt2-pair",     "symplectic-demo",
    "torsor-q8",      "torsor-s3",    "torsor-z2",      "torsor-z3",
    "torsor-z4",      "torsor-z5",    "torsor-z6",      "torsor-z7",
    "torsor-z8",      "triangle",     "twisted-pair",   "unit-chain"};

// ---------------------------------------------------------------- commands

int cmd_validate(const std::string& path) {
    std::string text = read_input(path);
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Fault(std::string("malformed JSON: ") + e.what());
    }
    std::string format =
        root.is_object() && root.contains("format") && root["format"].is_string()
            ? root["format"].get<std::string>()
            : "";
    json report;
    report["format"] = format;
    std::vector<std::string> violations;

    if (format == "dgp.diagram/1") {
        DiagramFile f = parse_diagram_text(text);
        Report r = validate_diagram(f.diagram);
        r.merge(validate_representation(f.diagram, f.graded.rep));
        if (f.rep2) r.merge(validate_representation(f.diagram, *f.rep2));
        if (f.product) {
            r.merge(validate_product_structure(f.diagram, *f.product));
            if (!f.graded.tau.empty())
                r.merge(validate_graded(f.diagram, *f.product, f.graded));
        }
        violations = r.violations;
    } else if (format == "dgp.complex/1") {
        ComplexFile f = parse_complex_text(text);
        if (f.y && !f.y->subcomplex_of(f.x))
            violations.push_back("subcomplex: not contained in the complex");
        for (std::size_t i = 0; i < f.cover.size(); ++i)
            if (!f.cover[i].subcomplex_of(f.x))
                violations.push_back("cover member " + std::to_string(i) +
                                     ": not a subcomplex");
    } else if (format == "dgp.torsor/1") {
        FiniteTorsor t = parse_torsor_text(text);
        violations = check_torsor(t).violations;
    } else if (format == "dgp.matrices/1") {
        parse_matrix_list_text(text);
    } else {
        throw Fault("unrecognized format '" + format + "'");
    }

    report["valid"] = violations.empty();
    report["violations"] = violations;
    emit(report);
    return violations.empty() ? 0 : 1;
}

int cmd_endo(const std::string& path, const std::vector<std::string>& verts) {
    DiagramFile f = load_diagram(path);
    EndAlgebraData e = end_algebra(f.diagram, f.graded.rep,
                                   resolve_verts(f.diagram, verts));
    emit(json{{"dim", e.dim()}});
    return 0;
}

int cmd_coalgebra(const std::string& path,
                  const std::vector<std::string>& verts) {
    DiagramFile f = load_diagram(path);
    EndAlgebraData e = end_algebra(f.diagram, f.graded.rep,
                                   resolve_verts(f.diagram, verts));
    CoalgebraData c = coalgebra_of(e);
    Report laws = coalgebra_laws(c);
    json report;
    report["dim"] = c.dim;
    report["counit"] = vec_json(c.counit);
    report["lawsOk"] = laws.ok();
    report["violations"] = laws.violations;
    emit(report);
    return laws.ok() ? 0 : 1;
}

int cmd_bialgebra(const std::string& path, const std::vector<std::string>& F,
                  const std::vector<std::string>& Fprime,
                  const std::vector<std::string>& Fsecond) {
    DiagramFile f = load_diagram(path);
    const ProductStructure& p = need_product(f);
    std::vector<VertexId> vF = resolve_verts(f.diagram, F);
    std::vector<VertexId> vFp =
        Fprime.empty() ? vF : resolve_verts(f.diagram, Fprime);
    std::optional<std::vector<VertexId>> vFs;
    if (!Fsecond.empty()) vFs = resolve_verts(f.diagram, Fsecond);
    BialgebraReport r = comultiplication(f.diagram, p, f.graded, vF, vFp, vFs);
    json report;
    report["muRows"] = r.mu.rows();
    report["endDimProduct"] = r.mu.cols();
    report["wellDefined"] = r.well_defined;
    report["cocommutative"] = r.cocommutative;
    report["counitLaw"] = r.counit_law ? json(*r.counit_law) : json(nullptr);
    report["coassociative"] =
        r.coassociative ? json(*r.coassociative) : json(nullptr);
    report["ok"] = r.ok();
    report["violations"] = r.violations.violations;
    emit(report);
    return r.ok() ? 0 : 1;
}

int cmd_localize(const std::string& path, const std::string& at, long bound,
                 bool emit_file, const std::vector<std::string>& F,
                 const std::vector<std::string>& Fprime) {
    DiagramFile f = load_diagram(path);
    const ProductStructure& p = need_product(f);
    if (!f.diagram.has_vertex(at)) throw Fault("unknown vertex '" + at + "'");
    LocalizedDiagram l = localize_diagram(f.diagram, p, at, bound);
    GradedRepresentation ext = extend_representation(l, f.graded);

    if (emit_file) {
        DiagramFile out;
        out.diagram = l.diagram;
        out.graded = ext;
        out.product = l.product;
        std::cout << diagram_file_text(out);
        return 0;
    }

    bool twists_invertible = true;
    for (const auto& [key, eid] : l.twist) {
        QMat m = edge_matrix(l.diagram, ext.rep, eid);
        if (!inverse(m)) twists_invertible = false;
    }
    json report;
    report["vertices"] = l.diagram.vertices().size();
    report["edges"] = l.diagram.edges().size();
    report["twistEdges"] = l.twist.size();
    report["twistsInvertible"] = twists_invertible;
    report["skippedTwists"] = l.skipped_twists;
    bool ok = twists_invertible;
    if (!F.empty() && !Fprime.empty()) {
        ChiReport chi = chi_and_transitions(f.diagram, p, f.graded, at,
                                            resolve_verts(f.diagram, F),
                                            resolve_verts(f.diagram, Fprime));
        report["chi"] = vec_json(chi.chi);
        report["transitionIsChiMultiplication"] =
            chi.transition_is_chi_multiplication;
        report["iotaIsSection"] = chi.iota_is_section;
        report["iotaIsMorphism"] = chi.iota_is_morphism;
        report["violations"] = chi.violations.violations;
        ok = ok && chi.ok();
    }
    report["ok"] = ok;
    emit(report);
    return ok ? 0 : 1;
}

int cmd_hom(const std::string& path, const std::vector<std::string>& verts) {
    DiagramFile f = load_diagram(path);
    IntertwinerSpace h = hom_space(f.diagram, f.graded.rep, second_rep(f),
                                   resolve_verts(f.diagram, verts));
    emit(json{{"dim", h.dim()}});
    return 0;
}

int cmd_periods(const std::string& path,
                const std::vector<std::string>& verts) {
    DiagramFile f = load_diagram(path);
    PeriodSpace ps = period_space(f.diagram, f.graded.rep, second_rep(f),
                                  resolve_verts(f.diagram, verts));
    json report;
    report["dim"] = ps.dim();
    report["ambient"] = ps.layout.total;
    report["relations"] = ps.relations.dim();
    emit(report);
    return 0;
}

int cmd_psi_check(const std::string& path,
                  const std::vector<std::string>& verts) {
    DiagramFile f = load_diagram(path);
    PsiReport r = psi_map(f.diagram, f.graded.rep, second_rep(f),
                          resolve_verts(f.diagram, verts));
    emit(json{{"dimP", r.periods.dim()},
              {"dimHom", r.hom.dim()},
              {"bijective", r.bijective}});
    return r.ok() ? 0 : 1;
}

int cmd_torsor_check(const std::string& path) {
    FiniteTorsor t = parse_torsor_text(read_input(path));
    Report axioms = check_torsor(t);
    json report;
    report["size"] = t.size;
    report["axiomsOk"] = axioms.ok();
    report["violations"] = axioms.violations;
    bool ok = axioms.ok();
    if (axioms.ok() && t.size > 0) {
        TorsorQuotient gl = gl_group(t);
        TorsorQuotient gr = gr_group(t);
        report["leftGroupOk"] = gl.ok();
        report["leftGroupSize"] = gl.group.size;
        report["rightGroupOk"] = gr.ok();
        report["rightGroupSize"] = gr.group.size;
        bool round_trip = true;
        for (std::size_t e = 0; e < t.size; ++e) {
            FiniteGroup g = group_at(t, e);
            if (torsor_of_group(g).table != t.table) round_trip = false;
        }
        report["roundTripOk"] = round_trip;
        ok = gl.ok() && gr.ok() && round_trip &&
             gl.group.size == t.size && gr.group.size == t.size;
    }
    report["ok"] = ok;
    emit(report);
    return ok ? 0 : 1;
}

int cmd_matrix_torsor(const std::string& path,
                      const std::vector<std::string>& verts,
                      std::size_t samples, const std::string& field) {
    DiagramFile f = load_diagram(path);
    MatrixTorsorReport r =
        matrix_torsor_check(f.diagram, f.graded.rep, second_rep(f),
                            resolve_verts(f.diagram, verts), samples,
                            make_field(field));
    json report;
    report["verdict"] = to_string(r.verdict);
    report["homDim"] = r.hom_dim;
    report["membersSampled"] = r.members_sampled;
    report["invertibleSamples"] = r.invertible_samples;
    report["triplesChecked"] = r.triples_checked;
    report["closure"] = r.closure;
    report["axioms"] = r.axioms;
    report["entryFormula"] = r.entry_formula;
    report["violations"] = r.violations.violations;
    emit(report);
    return r.ok() ? 0 : 1;
}

int cmd_rigidity(const std::string& path, bool with_equations) {
    std::vector<QMat> members = parse_matrix_list_text(read_input(path));
    if (members.empty()) throw Fault("rigidity: no matrices in input");
    const QMat& a = members.front();
    IsometryEquations eqs = isometry_equations(a);
    json report;
    report["n"] = eqs.n;
    report["perfect"] = perfect_duality_check(a);
    report["distinctEquations"] = eqs.distinct.size();
    if (with_equations) {
        json list = json::array();
        for (const MatrixPolynomial& p : eqs.distinct) {
            json poly;
            for (const auto& [mono, coeff] : p)
                poly[monomial_key(mono)] = rational_to_string(coeff);
            list.push_back(std::move(poly));
        }
        report["equations"] = std::move(list);
    }
    bool ok = true;
    json candidates = json::array();
    for (std::size_t i = 1; i < members.size(); ++i) {
        IsometryInverseReport inv_report = isometry_inverse(a, members[i]);
        json c;
        c["satisfiesEquations"] =
            satisfies_isometry_equations(eqs, members[i]);
        c["hypothesis"] = inv_report.hypothesis;
        c["twoSidedInverse"] = inv_report.two_sided_inverse;
        c["inverse"] = mat_json(inv_report.y);
        ok = ok && inv_report.hypothesis && inv_report.two_sided_inverse;
        candidates.push_back(std::move(c));
    }
    report["candidates"] = std::move(candidates);
    emit(report);
    return ok ? 0 : 1;
}

int cmd_monoid_group(const std::string& path) {
    std::vector<QMat> members = parse_matrix_list_text(read_input(path));
    MonoidGroupReport r = monoid_is_group(members);
    json report;
    report["members"] = members.size();
    report["closed"] = r.closed;
    report["hasIdentity"] = r.has_identity;
    report["isGroup"] = r.is_group;
    report["violations"] = r.violations.violations;
    emit(report);
    return r.ok() ? 0 : 1;
}

int cmd_cohomology(const std::string& path, long degree) {
    ComplexFile f = parse_complex_text(read_input(path));
    SimplicialPair pair =
        make_simplicial_pair(f.x, f.y ? *f.y : SimplicialComplex());
    CochainComplex c = relative_cochain_complex(pair);
    json report;
    report["cochainDims"] = dims_json(c.dims);
    report["cohomology"] = dims_json(cohomology_dims(c));
    report["euler"] = euler_characteristic(c);
    if (degree >= 0) {
        std::size_t k = static_cast<std::size_t>(degree);
        CohomologySpace h = relative_cohomology(
            f.x, f.y ? *f.y : SimplicialComplex(), k);
        json basis = json::array();
        for (const auto& v : h.basis) basis.push_back(vec_json(v));
        report["degree"] = k;
        report["basis"] = std::move(basis);
        report["goodPair"] =
            is_good_pair(f.x, f.y ? *f.y : SimplicialComplex(), k);
    }
    emit(report);
    return 0;
}

int cmd_cech(const std::string& path) {
    ComplexFile f = parse_complex_text(read_input(path));
    if (f.cover.empty()) throw Fault("cech: input has no cover");
    CechReport r = cech_total_complex(f.x, f.cover);
    json report;
    report["rows"] = r.rows;
    report["totalDims"] = dims_json(r.total.dims);
    report["complexCohomology"] = dims_json(r.complex_cohomology);
    report["directCohomology"] = dims_json(r.direct_cohomology);
    report["matches"] = r.matches;
    emit(report);
    return r.matches ? 0 : 1;
}

int cmd_filtration(const std::string& path) {
    ComplexFile f = parse_complex_text(read_input(path));
    SkeletalFiltration sf = skeletal_filtration(f.x);
    FiltrationReport r = filtration_complex(f.x, sf);
    json report;
    report["steps"] = sf.skeleta.size();
    report["allGood"] = sf.all_good;
    report["complexDims"] = dims_json(r.complex.dims);
    report["complexCohomology"] = dims_json(r.complex_cohomology);
    report["directCohomology"] = dims_json(r.direct_cohomology);
    report["matches"] = r.matches;
    emit(report);
    return r.matches && sf.all_good ? 0 : 1;
}

int cmd_fixture(const std::string& name, bool list,
                const std::string& out_path) {
    if (list) {
        emit(json{{"names", kFixtureNames}});
        return 0;
    }
    if (name.empty())
        throw Fault("fixture: pass --name or --list");
    write_output(fixture_text(name), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact rational computations on diagram representations:\n"
                 "endomorphism coalgebras, formal period spaces, torsor and\n"
                 "rigidity checks, and simplicial cohomology fixtures"};
    app.require_subcommand(1);

    std::string path;
    std::vector<std::string> verts, prod_verts, second_verts;
    std::string at_vertex, field, fixture_name, out_path;
    long bound = 1, degree = -1;
    std::size_t samples = 25;
    bool emit_file = false, list_names = false, with_equations = false;

    auto add_path = [&](CLI::App* sub) {
        sub->add_option("file", path, "input file, or - for standard input")
            ->required();
    };
    auto add_verts = [&](CLI::App* sub) {
        sub->add_option("--verts", verts,
                        "vertex subset F (default: all vertices)")
            ->delimiter(',');
    };

    int code = 0;

    CLI::App* validate = app.add_subcommand(
        "validate", "schema and semantic validation of any dgp file");
    add_path(validate);
    validate->callback([&] { code = cmd_validate(path); });

    CLI::App* endo = app.add_subcommand(
        "endo", "dimension of the endomorphism algebra End(T|F)");
    add_path(endo);
    add_verts(endo);
    endo->callback([&] { code = cmd_endo(path, verts); });

    CLI::App* coalg = app.add_subcommand(
        "coalgebra", "A(F,T) with its counit and the coalgebra laws");
    add_path(coalg);
    add_verts(coalg);
    coalg->callback([&] { code = cmd_coalgebra(path, verts); });

    CLI::App* bialg = app.add_subcommand(
        "bialgebra", "comultiplication on End(T|F') and the bialgebra laws");
    add_path(bialg);
    add_verts(bialg);
    bialg->add_option("--prod", prod_verts,
                      "product-closed level F' (default: F)")
        ->delimiter(',');
    bialg->add_option("--second", second_verts,
                      "third level F'' for coassociativity")
        ->delimiter(',');
    bialg->callback(
        [&] { code = cmd_bialgebra(path, verts, prod_verts, second_verts); });

    CLI::App* localize = app.add_subcommand(
        "localize", "truncated localization at an even line vertex");
    add_path(localize);
    localize->add_option("--at", at_vertex, "vertex f0 to localize at")
        ->required();
    localize->add_option("--bound", bound, "level bound N (default 1)");
    localize->add_flag("--emit", emit_file,
                       "print the localized diagram file instead of a report");
    add_verts(localize);
    localize->add_option("--prod", prod_verts,
                         "F' for the chi transition check")
        ->delimiter(',');
    localize->callback([&] {
        code = cmd_localize(path, at_vertex, bound, emit_file, verts,
                            prod_verts);
    });

    CLI::App* hom = app.add_subcommand(
        "hom", "dimension of the intertwiner space Hom(T1|F, T2|F)");
    add_path(hom);
    add_verts(hom);
    hom->callback([&] { code = cmd_hom(path, verts); });

    CLI::App* periods = app.add_subcommand(
        "periods", "formal period space P(F) of two representations");
    add_path(periods);
    add_verts(periods);
    periods->callback([&] { code = cmd_periods(path, verts); });

    CLI::App* psi = app.add_subcommand(
        "psi-check", "bijectivity of P(F) -> Hom(T1|F, T2|F)^v");
    add_path(psi);
    add_verts(psi);
    psi->callback([&] { code = cmd_psi_check(path, verts); });

    CLI::App* torsor = app.add_subcommand(
        "torsor-check", "heap axioms, quotient groups, basepoint round trips");
    add_path(torsor);
    torsor->callback([&] { code = cmd_torsor_check(path); });

    CLI::App* mtorsor = app.add_subcommand(
        "matrix-torsor", "sampled (x,y,z) -> x y^{-1} z closure on intertwiners");
    add_path(mtorsor);
    add_verts(mtorsor);
    mtorsor->add_option("--samples", samples, "sample count (default 25)");
    mtorsor->add_option(
        "--field", field,
        "extension field: i, sqrt2, or comma coefficients lowest first");
    mtorsor->callback(
        [&] { code = cmd_matrix_torsor(path, verts, samples, field); });

    CLI::App* rigidity = app.add_subcommand(
        "rigidity",
        "isometry equations of a Gram matrix; closed-form inverses of "
        "candidate solutions");
    add_path(rigidity);
    rigidity->add_flag("--equations", with_equations,
                       "include the polynomial equations in the report");
    rigidity->callback([&] { code = cmd_rigidity(path, with_equations); });

    CLI::App* monoid = app.add_subcommand(
        "monoid-group", "group verdict for a finite invertible-matrix monoid");
    add_path(monoid);
    monoid->callback([&] { code = cmd_monoid_group(path); });

    CLI::App* cohomology = app.add_subcommand(
        "cohomology", "relative simplicial cohomology of a pair");
    add_path(cohomology);
    cohomology->add_option("--degree", degree,
                           "also report the basis and good-pair verdict");
    cohomology->callback([&] { code = cmd_cohomology(path, degree); });

    CLI::App* cech = app.add_subcommand(
        "cech", "cover total complex versus direct cohomology");
    add_path(cech);
    cech->callback([&] { code = cmd_cech(path); });

    CLI::App* filtration = app.add_subcommand(
        "filtration", "skeletal filtration complex versus direct cohomology");
    add_path(filtration);
    filtration->callback([&] { code = cmd_filtration(path); });

    CLI::App* fixture = app.add_subcommand(
        "fixture", "emit a bundled fixture by name");
    fixture->add_option("--name", fixture_name, "fixture name");
    fixture->add_flag("--list", list_names, "list available fixtures");
    fixture->add_option("--out", out_path, "write to a file instead of stdout");
    fixture->callback(
        [&] { code = cmd_fixture(fixture_name, list_names, out_path); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int c = app.exit(e);
        return c == 0 ? 0 : 2;
    } catch (const Fault& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return code;
}
