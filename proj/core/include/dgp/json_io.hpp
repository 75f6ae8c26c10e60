#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgp/common.hpp"
#include "dgp/diagram.hpp"
#include "dgp/simplicial.hpp"
#include "dgp/torsor.hpp"

namespace dgp {

/// Payload of a diagram file, "format": "dgp.diagram/1". The representation
/// carries its tau table (empty when the fixture is ungraded); the second
/// representation and the product tables are optional.
struct DiagramFile {
    Diagram diagram;
    GradedRepresentation graded;
    std::optional<Representation> rep2;
    std::optional<ProductStructure> product;
};

/// Payload of a complex file, "format": "dgp.complex/1": maximal simplices,
/// an optional subcomplex, an optional cover by subcomplexes.
struct ComplexFile {
    SimplicialComplex x;
    std::optional<SimplicialComplex> y;
    std::vector<SimplicialComplex> cover;
};

/// Parsers fault on malformed JSON (with the parser's position message) and
/// on schema violations, which are listed one per line with JSON-pointer
/// paths. Emitters produce deterministic, round-trip-stable text with all
/// scalar payloads as exact fraction strings.
DiagramFile parse_diagram_text(const std::string& text);
std::string diagram_file_text(const DiagramFile& f);

ComplexFile parse_complex_text(const std::string& text);
std::string complex_file_text(const ComplexFile& f);

/// Torsor table file, "format": "dgp.torsor/1": the ternary operation as a
/// cubic array of element indices, table[x][y][z] = t(x, y, z).
FiniteTorsor parse_torsor_text(const std::string& text);
std::string torsor_text(const FiniteTorsor& t);

/// Matrix list file, "format": "dgp.matrices/1".
std::vector<QMat> parse_matrix_list_text(const std::string& text);
std::string matrix_list_text(const std::vector<QMat>& mats);

} // namespace dgp
