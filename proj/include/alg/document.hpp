#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "alg/constructions.hpp"
#include "alg/fixtures.hpp"

namespace alg {

/// Malformed document, with 1-based line and column (0 when unknown).
struct DocumentError : std::runtime_error {
    DocumentError(std::string file, std::size_t line, std::size_t column, const std::string& msg);
    std::string file;
    std::size_t line, column;
};

/// Line-oriented sectioned text:
///
///   name = heis_j              # top-level keys: name, import
///   import = flat_r2           # start from a fixture; later sections replace its parts
///   [chart]
///   name = line
///   coords = x
///   rank = 4
///   [anchor]                   # one row per frame vector: rho^i_a along the coordinates
///   0
///   [bracket]                  # a b c = C^c_ab for a < b, other entries zero
///   1 2 3 = 1
///   [J]                        # rows b, columns a: J^b_a
///   [metric]                   # rows and columns of g_ab
///
/// Matrix rows are comma separated expressions; `#` starts a comment.
Geometry parse_document(const std::string& text, const std::string& file = "<input>");
Geometry load_document(const std::filesystem::path& path);
std::string emit_document(const Geometry& G);

/// Projector file: [chart] with coords (no rank), [projector] rows of Pi, [ambient_anchor] rows e_A,
/// optional [J] and [metric] of the ambient frame.
ProjectorRestriction parse_projector(const std::string& text, const std::string& file = "<input>");
ProjectorRestriction load_projector(const std::filesystem::path& path);
std::string emit_projector(const ProjectorRestriction& R);

/// Same chart coordinates, anchor, structure functions, J and metric.
bool structurally_equal(const Geometry& a, const Geometry& b);

/// A path to an existing file is loaded as a document, anything else is read as a fixture expression.
Geometry resolve_target(const std::string& target);

}  // namespace alg
