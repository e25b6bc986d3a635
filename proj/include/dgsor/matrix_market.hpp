#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "dgsor/dense.hpp"

namespace dgsor::mm {

/// Reads `%%MatrixMarket matrix coordinate|array real|integer general|symmetric`.
/// Symmetric files are expanded to full storage; array data is column-major.
/// Throws ParseError (message carries the line number) or UnsupportedField
/// for complex/pattern data and other symmetry kinds.
DenseMatrix read_matrix(std::istream& in);
DenseMatrix load_matrix(const std::filesystem::path& path);

/// Loads an n x 1 (or 1 x n) matrix as a vector.
Vector load_vector(const std::filesystem::path& path);
Vector read_vector(std::istream& in);

/// Writes lower-triangle nonzeros as `coordinate real symmetric` when m is
/// exactly symmetric, `coordinate real general` otherwise. Values use 17
/// significant digits so reloading reproduces every entry exactly.
void write_matrix(std::ostream& out, const DenseMatrix& m);
void save_matrix(const std::filesystem::path& path, const DenseMatrix& m);

/// `array real general` with n rows and one column.
void write_vector(std::ostream& out, const Vector& v);
void save_vector(const std::filesystem::path& path, const Vector& v);

} // namespace dgsor::mm
