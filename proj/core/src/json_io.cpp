#include "dgp/json_io.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

namespace dgp {

namespace {

using nlohmann::json;

/// Collects pointer-annotated schema violations; throwing once at the end
/// lets a single parse report every problem in the file.
struct SchemaErrors {
    std::string kind;
    std::vector<std::string> list;

    explicit SchemaErrors(std::string k) : kind(std::move(k)) {}
    void fail(const std::string& ptr, const std::string& what) {
        list.push_back(ptr + ": " + what);
    }
    bool ok() const { return list.empty(); }
    void finish() const {
        if (list.empty()) return;
        std::string msg = kind + ": schema violations";
        for (const std::string& e : list) msg += "\n  " + e;
        throw Fault(msg);
    }
};

json parse_root(const std::string& text, const std::string& kind) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Fault(kind + ": malformed JSON: " + e.what());
    }
}

void check_format(const json& root, const std::string& expect,
                  SchemaErrors& errs) {
    if (!root.is_object()) {
        errs.fail("", "expected a JSON object");
        return;
    }
    auto it = root.find("format");
    if (it == root.end() || !it->is_string() ||
        it->get<std::string>() != expect)
        errs.fail("/format", "expected \"" + expect + "\"");
}

void check_known_keys(const json& obj, const std::string& ptr,
                      const std::set<std::string>& known,
                      SchemaErrors& errs) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            errs.fail(ptr + "/" + it.key(), "unknown field");
}

std::optional<Rational> parse_scalar(const json& j, const std::string& ptr,
                                     SchemaErrors& errs) {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) {
        try {
            return rational_from_string(j.get<std::string>());
        } catch (const Fault& f) {
            errs.fail(ptr, f.what());
            return std::nullopt;
        }
    }
    if (j.is_number_float()) {
        errs.fail(ptr, "decimal literals are rejected, use \"p/q\"");
        return std::nullopt;
    }
    errs.fail(ptr, "expected an exact scalar (integer or \"p/q\" string)");
    return std::nullopt;
}

std::optional<QMat> parse_matrix(const json& j, const std::string& ptr,
                                 SchemaErrors& errs) {
    if (!j.is_array()) {
        errs.fail(ptr, "expected an array of rows");
        return std::nullopt;
    }
    std::size_t rows = j.size();
    std::size_t cols = 0;
    if (rows > 0) {
        if (!j[0].is_array()) {
            errs.fail(ptr + "/0", "expected an array of scalars");
            return std::nullopt;
        }
        cols = j[0].size();
    }
    QMat m(rows, cols);
    bool good = true;
    for (std::size_t r = 0; r < rows; ++r) {
        const json& row = j[r];
        if (!row.is_array() || row.size() != cols) {
            errs.fail(ptr + "/" + std::to_string(r),
                      "expected a row of " + std::to_string(cols) +
                          " scalars");
            good = false;
            continue;
        }
        for (std::size_t c = 0; c < cols; ++c) {
            auto x = parse_scalar(row[c],
                                  ptr + "/" + std::to_string(r) + "/" +
                                      std::to_string(c),
                                  errs);
            if (x)
                m(r, c) = *x;
            else
                good = false;
        }
    }
    if (!good) return std::nullopt;
    return m;
}

json matrix_json(const QMat& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(rational_to_string(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::string> split_key(const std::string& key) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = key.find(',', start);
        if (comma == std::string::npos) {
            parts.push_back(key.substr(start));
            return parts;
        }
        parts.push_back(key.substr(start, comma - start));
        start = comma + 1;
    }
}

/// Representation object {dims, mats, tau?}; tau keys are "f,g" pairs.
void parse_representation(const json& j, const std::string& ptr,
                          const Diagram& d, bool allow_tau,
                          Representation& rep,
                          std::map<std::pair<VertexId, VertexId>, QMat>* tau,
                          SchemaErrors& errs) {
    if (!j.is_object()) {
        errs.fail(ptr, "expected an object");
        return;
    }
    check_known_keys(j, ptr,
                     allow_tau ? std::set<std::string>{"dims", "mats", "tau"}
                               : std::set<std::string>{"dims", "mats"},
                     errs);
    auto dims = j.find("dims");
    if (dims == j.end() || !dims->is_object()) {
        errs.fail(ptr + "/dims", "expected an object of vertex dimensions");
    } else {
        for (auto it = dims->begin(); it != dims->end(); ++it) {
            if (!d.has_vertex(it.key())) {
                errs.fail(ptr + "/dims/" + it.key(), "unknown vertex");
                continue;
            }
            if (!it.value().is_number_integer() ||
                it.value().get<long long>() < 0) {
                errs.fail(ptr + "/dims/" + it.key(),
                          "expected a nonnegative integer");
                continue;
            }
            rep.dims[it.key()] = it.value().get<std::size_t>();
        }
        for (const auto& [vid, v] : d.vertices()) {
            (void)v;
            if (!rep.dims.count(vid))
                errs.fail(ptr + "/dims",
                          "missing dimension for vertex '" + vid + "'");
        }
    }
    auto mats = j.find("mats");
    if (mats != j.end()) {
        if (!mats->is_object()) {
            errs.fail(ptr + "/mats", "expected an object of edge matrices");
        } else {
            for (auto it = mats->begin(); it != mats->end(); ++it) {
                if (!d.has_edge(it.key())) {
                    errs.fail(ptr + "/mats/" + it.key(), "unknown edge");
                    continue;
                }
                auto m =
                    parse_matrix(it.value(), ptr + "/mats/" + it.key(), errs);
                if (m) rep.mats[it.key()] = std::move(*m);
            }
        }
    }
    auto tj = j.find("tau");
    if (tj != j.end() && allow_tau) {
        if (!tj->is_object()) {
            errs.fail(ptr + "/tau", "expected an object keyed \"f,g\"");
        } else {
            for (auto it = tj->begin(); it != tj->end(); ++it) {
                std::vector<std::string> fg = split_key(it.key());
                std::string at = ptr + "/tau/" + it.key();
                if (fg.size() != 2) {
                    errs.fail(at, "expected a \"f,g\" key");
                    continue;
                }
                if (!d.has_vertex(fg[0]) || !d.has_vertex(fg[1])) {
                    errs.fail(at, "unknown vertex in key");
                    continue;
                }
                auto m = parse_matrix(it.value(), at, errs);
                if (m) (*tau)[{fg[0], fg[1]}] = std::move(*m);
            }
        }
    }
}

json representation_json(const Representation& rep,
                         const std::map<std::pair<VertexId, VertexId>, QMat>*
                             tau) {
    json out;
    json dims;
    for (const auto& [vid, n] : rep.dims) dims[vid] = n;
    out["dims"] = std::move(dims);
    if (!rep.mats.empty()) {
        json mats;
        for (const auto& [eid, m] : rep.mats) mats[eid] = matrix_json(m);
        out["mats"] = std::move(mats);
    }
    if (tau && !tau->empty()) {
        json tj;
        for (const auto& [key, m] : *tau)
            tj[key.first + "," + key.second] = matrix_json(m);
        out["tau"] = std::move(tj);
    }
    return out;
}

/// Product tables keyed by comma-joined vertex (or edge) ids.
void parse_product(const json& j, const Diagram& d, ProductStructure& p,
                   SchemaErrors& errs) {
    if (!j.is_object()) {
        errs.fail("/product", "expected an object");
        return;
    }
    check_known_keys(j, "/product",
                     {"mul", "alpha", "beta", "unit", "unit_edges",
                      "edge_mul_left", "edge_mul_right"},
                     errs);
    auto vertex_ok = [&](const std::string& v, const std::string& at) {
        if (d.has_vertex(v)) return true;
        errs.fail(at, "unknown vertex '" + v + "'");
        return false;
    };
    auto edge_ok = [&](const std::string& e, const std::string& at) {
        if (d.has_edge(e)) return true;
        errs.fail(at, "unknown edge '" + e + "'");
        return false;
    };
    auto table = [&](const char* field, std::size_t arity, auto&& sink) {
        auto it = j.find(field);
        if (it == j.end()) return;
        std::string base = std::string("/product/") + field;
        if (!it->is_object()) {
            errs.fail(base, "expected an object");
            return;
        }
        for (auto e = it->begin(); e != it->end(); ++e) {
            std::string at = base + "/" + e.key();
            std::vector<std::string> parts = split_key(e.key());
            if (parts.size() != arity) {
                errs.fail(at, "expected " + std::to_string(arity) +
                                  " comma-separated ids");
                continue;
            }
            if (!e.value().is_string()) {
                errs.fail(at, "expected an id string");
                continue;
            }
            sink(parts, e.value().get<std::string>(), at);
        }
    };
    table("mul", 2, [&](const auto& k, const std::string& v,
                        const std::string& at) {
        if (vertex_ok(k[0], at) && vertex_ok(k[1], at) && vertex_ok(v, at))
            p.mul[{k[0], k[1]}] = v;
    });
    table("alpha", 2, [&](const auto& k, const std::string& v,
                          const std::string& at) {
        if (vertex_ok(k[0], at) && vertex_ok(k[1], at) && edge_ok(v, at))
            p.alpha[{k[0], k[1]}] = v;
    });
    table("beta", 3, [&](const auto& k, const std::string& v,
                         const std::string& at) {
        if (vertex_ok(k[0], at) && vertex_ok(k[1], at) &&
            vertex_ok(k[2], at) && edge_ok(v, at))
            p.beta[{k[0], k[1], k[2]}] = v;
    });
    table("unit_edges", 1, [&](const auto& k, const std::string& v,
                               const std::string& at) {
        if (vertex_ok(k[0], at) && edge_ok(v, at)) p.unit_edges[k[0]] = v;
    });
    table("edge_mul_left", 2, [&](const auto& k, const std::string& v,
                                  const std::string& at) {
        if (edge_ok(k[0], at) && vertex_ok(k[1], at) && edge_ok(v, at))
            p.edge_mul_left[{k[0], k[1]}] = v;
    });
    table("edge_mul_right", 2, [&](const auto& k, const std::string& v,
                                   const std::string& at) {
        if (vertex_ok(k[0], at) && edge_ok(k[1], at) && edge_ok(v, at))
            p.edge_mul_right[{k[0], k[1]}] = v;
    });
    auto unit = j.find("unit");
    if (unit != j.end()) {
        if (!unit->is_string())
            errs.fail("/product/unit", "expected a vertex id");
        else if (vertex_ok(unit->get<std::string>(), "/product/unit"))
            p.unit = unit->get<std::string>();
    }
}

json product_json(const ProductStructure& p) {
    json out;
    if (!p.mul.empty()) {
        json t;
        for (const auto& [k, v] : p.mul) t[k.first + "," + k.second] = v;
        out["mul"] = std::move(t);
    }
    if (!p.alpha.empty()) {
        json t;
        for (const auto& [k, v] : p.alpha) t[k.first + "," + k.second] = v;
        out["alpha"] = std::move(t);
    }
    if (!p.beta.empty()) {
        json t;
        for (const auto& [k, v] : p.beta)
            t[std::get<0>(k) + "," + std::get<1>(k) + "," + std::get<2>(k)] =
                v;
        out["beta"] = std::move(t);
    }
    if (!p.unit.empty()) out["unit"] = p.unit;
    if (!p.unit_edges.empty()) {
        json t;
        for (const auto& [k, v] : p.unit_edges) t[k] = v;
        out["unit_edges"] = std::move(t);
    }
    if (!p.edge_mul_left.empty()) {
        json t;
        for (const auto& [k, v] : p.edge_mul_left)
            t[k.first + "," + k.second] = v;
        out["edge_mul_left"] = std::move(t);
    }
    if (!p.edge_mul_right.empty()) {
        json t;
        for (const auto& [k, v] : p.edge_mul_right)
            t[k.first + "," + k.second] = v;
        out["edge_mul_right"] = std::move(t);
    }
    return out;
}

/// Simplex list: array of arrays of nonnegative vertex indices.
std::optional<SimplicialComplex> parse_complex_list(const json& j,
                                                    const std::string& ptr,
                                                    SchemaErrors& errs) {
    if (!j.is_array()) {
        errs.fail(ptr, "expected an array of simplices");
        return std::nullopt;
    }
    std::vector<Simplex> maximal;
    bool good = true;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& sj = j[i];
        std::string at = ptr + "/" + std::to_string(i);
        if (!sj.is_array() || sj.empty()) {
            errs.fail(at, "expected a nonempty array of vertex indices");
            good = false;
            continue;
        }
        Simplex s;
        bool entry_good = true;
        for (std::size_t k = 0; k < sj.size(); ++k) {
            if (!sj[k].is_number_integer() || sj[k].get<long long>() < 0) {
                errs.fail(at + "/" + std::to_string(k),
                          "expected a nonnegative integer");
                entry_good = false;
                continue;
            }
            s.push_back(sj[k].get<std::size_t>());
        }
        if (!entry_good) {
            good = false;
            continue;
        }
        Simplex sorted = s;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            errs.fail(at, "repeated vertex in simplex");
            good = false;
            continue;
        }
        maximal.push_back(std::move(s));
    }
    if (!good) return std::nullopt;
    return SimplicialComplex::from_maximal(maximal);
}

json complex_list_json(const SimplicialComplex& x) {
    json out = json::array();
    for (const Simplex& s : x.maximal_simplices()) {
        json sj = json::array();
        for (std::size_t v : s) sj.push_back(v);
        out.push_back(std::move(sj));
    }
    return out;
}

} // namespace

DiagramFile parse_diagram_text(const std::string& text) {
    SchemaErrors errs("diagram file");
    json root = parse_root(text, "diagram file");
    check_format(root, "dgp.diagram/1", errs);
    if (!root.is_object()) errs.finish();
    check_known_keys(root, "",
                     {"format", "vertices", "edges", "representation",
                      "representation2", "product"},
                     errs);

    DiagramFile f;
    auto vj = root.find("vertices");
    if (vj == root.end() || !vj->is_array()) {
        errs.fail("/vertices", "expected an array");
    } else {
        for (std::size_t i = 0; i < vj->size(); ++i) {
            const json& v = (*vj)[i];
            std::string at = "/vertices/" + std::to_string(i);
            if (!v.is_object()) {
                errs.fail(at, "expected an object");
                continue;
            }
            check_known_keys(v, at, {"id", "grade"}, errs);
            auto id = v.find("id");
            if (id == v.end() || !id->is_string() ||
                id->get<std::string>().empty()) {
                errs.fail(at + "/id", "expected a nonempty string");
                continue;
            }
            int grade = 0;
            auto gj = v.find("grade");
            if (gj != v.end()) {
                if (!gj->is_number_integer() ||
                    (gj->get<int>() != 0 && gj->get<int>() != 1)) {
                    errs.fail(at + "/grade", "expected 0 or 1");
                    continue;
                }
                grade = gj->get<int>();
            }
            if (f.diagram.has_vertex(id->get<std::string>())) {
                errs.fail(at + "/id", "duplicate vertex id '" +
                                          id->get<std::string>() + "'");
                continue;
            }
            f.diagram.add_vertex(id->get<std::string>(), grade);
        }
    }
    auto ej = root.find("edges");
    if (ej == root.end() || !ej->is_array()) {
        errs.fail("/edges", "expected an array");
    } else {
        for (std::size_t i = 0; i < ej->size(); ++i) {
            const json& e = (*ej)[i];
            std::string at = "/edges/" + std::to_string(i);
            if (!e.is_object()) {
                errs.fail(at, "expected an object");
                continue;
            }
            check_known_keys(e, at, {"id", "src", "dst", "identity"}, errs);
            std::string id, src, dst;
            bool fields_good = true;
            for (const char* field : {"id", "src", "dst"}) {
                auto fj = e.find(field);
                if (fj == e.end() || !fj->is_string() ||
                    fj->get<std::string>().empty()) {
                    errs.fail(at + "/" + field, "expected a nonempty string");
                    fields_good = false;
                    continue;
                }
                std::string val = fj->get<std::string>();
                if (field == std::string("id"))
                    id = val;
                else if (field == std::string("src"))
                    src = val;
                else
                    dst = val;
            }
            if (!fields_good) continue;
            bool identity = false;
            auto idj = e.find("identity");
            if (idj != e.end()) {
                if (!idj->is_boolean()) {
                    errs.fail(at + "/identity", "expected a boolean");
                    continue;
                }
                identity = idj->get<bool>();
            }
            if (!f.diagram.has_vertex(src)) {
                errs.fail(at + "/src", "unknown vertex '" + src + "'");
                continue;
            }
            if (!f.diagram.has_vertex(dst)) {
                errs.fail(at + "/dst", "unknown vertex '" + dst + "'");
                continue;
            }
            if (identity && src != dst) {
                errs.fail(at, "identity edge must be a loop");
                continue;
            }
            if (f.diagram.has_edge(id)) {
                errs.fail(at + "/id", "duplicate edge id '" + id + "'");
                continue;
            }
            if (identity && f.diagram.identity_edge(src)) {
                errs.fail(at, "vertex '" + src +
                                  "' already has an identity edge");
                continue;
            }
            f.diagram.add_edge(id, src, dst, identity);
        }
    }

    auto rj = root.find("representation");
    if (rj == root.end())
        errs.fail("/representation", "missing");
    else
        parse_representation(*rj, "/representation", f.diagram, true,
                             f.graded.rep, &f.graded.tau, errs);
    auto r2 = root.find("representation2");
    if (r2 != root.end()) {
        f.rep2.emplace();
        parse_representation(*r2, "/representation2", f.diagram, false,
                             *f.rep2, nullptr, errs);
    }
    auto pj = root.find("product");
    if (pj != root.end()) {
        f.product.emplace();
        parse_product(*pj, f.diagram, *f.product, errs);
    }
    errs.finish();
    return f;
}

std::string diagram_file_text(const DiagramFile& f) {
    json root;
    root["format"] = "dgp.diagram/1";
    json verts = json::array();
    for (const auto& [vid, v] : f.diagram.vertices())
        verts.push_back(json{{"id", vid}, {"grade", v.grade}});
    root["vertices"] = std::move(verts);
    json edges = json::array();
    for (const auto& [eid, e] : f.diagram.edges()) {
        json ej{{"id", eid}, {"src", e.src}, {"dst", e.dst}};
        if (e.identity) ej["identity"] = true;
        edges.push_back(std::move(ej));
    }
    root["edges"] = std::move(edges);
    root["representation"] = representation_json(f.graded.rep, &f.graded.tau);
    if (f.rep2) root["representation2"] = representation_json(*f.rep2, nullptr);
    if (f.product) root["product"] = product_json(*f.product);
    return root.dump(2) + "\n";
}

ComplexFile parse_complex_text(const std::string& text) {
    SchemaErrors errs("complex file");
    json root = parse_root(text, "complex file");
    check_format(root, "dgp.complex/1", errs);
    if (!root.is_object()) errs.finish();
    check_known_keys(root, "", {"format", "maximal", "subcomplex", "cover"},
                     errs);

    ComplexFile f;
    auto mj = root.find("maximal");
    if (mj == root.end()) {
        errs.fail("/maximal", "missing");
    } else {
        auto x = parse_complex_list(*mj, "/maximal", errs);
        if (x) f.x = std::move(*x);
    }
    auto sj = root.find("subcomplex");
    if (sj != root.end()) {
        auto y = parse_complex_list(*sj, "/subcomplex", errs);
        if (y) f.y = std::move(*y);
    }
    auto cj = root.find("cover");
    if (cj != root.end()) {
        if (!cj->is_array()) {
            errs.fail("/cover", "expected an array of simplex lists");
        } else {
            for (std::size_t i = 0; i < cj->size(); ++i) {
                auto u = parse_complex_list(
                    (*cj)[i], "/cover/" + std::to_string(i), errs);
                if (u) f.cover.push_back(std::move(*u));
            }
        }
    }
    errs.finish();
    return f;
}

std::string complex_file_text(const ComplexFile& f) {
    json root;
    root["format"] = "dgp.complex/1";
    root["maximal"] = complex_list_json(f.x);
    if (f.y) root["subcomplex"] = complex_list_json(*f.y);
    if (!f.cover.empty()) {
        json cover = json::array();
        for (const SimplicialComplex& u : f.cover)
            cover.push_back(complex_list_json(u));
        root["cover"] = std::move(cover);
    }
    return root.dump(2) + "\n";
}

FiniteTorsor parse_torsor_text(const std::string& text) {
    SchemaErrors errs("torsor file");
    json root = parse_root(text, "torsor file");
    check_format(root, "dgp.torsor/1", errs);
    if (!root.is_object()) errs.finish();
    check_known_keys(root, "", {"format", "table"}, errs);

    FiniteTorsor t;
    auto tj = root.find("table");
    if (tj == root.end() || !tj->is_array()) {
        errs.fail("/table", "expected a cubic array");
        errs.finish();
    }
    std::size_t n = tj->size();
    t.size = n;
    for (std::size_t x = 0; x < n; ++x) {
        const json& plane = (*tj)[x];
        std::string atx = "/table/" + std::to_string(x);
        if (!plane.is_array() || plane.size() != n) {
            errs.fail(atx, "expected " + std::to_string(n) + " rows");
            continue;
        }
        std::vector<std::vector<std::size_t>> rows;
        for (std::size_t y = 0; y < n; ++y) {
            const json& row = plane[y];
            std::string aty = atx + "/" + std::to_string(y);
            if (!row.is_array() || row.size() != n) {
                errs.fail(aty, "expected " + std::to_string(n) + " entries");
                continue;
            }
            std::vector<std::size_t> vals;
            for (std::size_t z = 0; z < n; ++z) {
                if (!row[z].is_number_integer() ||
                    row[z].get<long long>() < 0) {
                    errs.fail(aty + "/" + std::to_string(z),
                              "expected a nonnegative integer");
                    continue;
                }
                vals.push_back(row[z].get<std::size_t>());
            }
            if (vals.size() == n) rows.push_back(std::move(vals));
        }
        if (rows.size() == n) t.table.push_back(std::move(rows));
    }
    errs.finish();
    return t;
}

std::string torsor_text(const FiniteTorsor& t) {
    json root;
    root["format"] = "dgp.torsor/1";
    json table = json::array();
    for (const auto& plane : t.table) {
        json pj = json::array();
        for (const auto& row : plane) {
            json rj = json::array();
            for (std::size_t v : row) rj.push_back(v);
            pj.push_back(std::move(rj));
        }
        table.push_back(std::move(pj));
    }
    root["table"] = std::move(table);
    return root.dump(2) + "\n";
}

std::vector<QMat> parse_matrix_list_text(const std::string& text) {
    SchemaErrors errs("matrix file");
    json root = parse_root(text, "matrix file");
    check_format(root, "dgp.matrices/1", errs);
    if (!root.is_object()) errs.finish();
    check_known_keys(root, "", {"format", "members"}, errs);

    std::vector<QMat> out;
    auto mj = root.find("members");
    if (mj == root.end() || !mj->is_array()) {
        errs.fail("/members", "expected an array of matrices");
    } else {
        for (std::size_t i = 0; i < mj->size(); ++i) {
            auto m = parse_matrix((*mj)[i], "/members/" + std::to_string(i),
                                  errs);
            if (m) out.push_back(std::move(*m));
        }
    }
    errs.finish();
    return out;
}

std::string matrix_list_text(const std::vector<QMat>& mats) {
    json root;
    root["format"] = "dgp.matrices/1";
    json members = json::array();
    for (const QMat& m : mats) members.push_back(matrix_json(m));
    root["members"] = std::move(members);
    return root.dump(2) + "\n";
}

} // namespace dgp
