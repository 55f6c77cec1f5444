#pragma once

#include <iosfwd>
#include <string>

#include "gave/linalg.hpp"

namespace gave {

// "%%MatrixMarket matrix {coordinate|array} {real|integer|double} {general|symmetric}".
// Coordinate input keeps the band implied by its entries.
DenseMatrix read_matrix_market(std::istream& in);
DenseMatrix read_matrix_market_file(const std::string& path);
// n x 1 matrix (array or coordinate) read as a vector
Vector read_vector_market(std::istream& in);
Vector read_vector_market_file(const std::string& path);

// full matrices are written as arrays, banded ones as coordinate lists; %.17g
void write_matrix_market(std::ostream& out, const DenseMatrix& m);
void write_matrix_market_file(const std::string& path, const DenseMatrix& m);
void write_vector_market(std::ostream& out, const Vector& v);
void write_vector_market_file(const std::string& path, const Vector& v);

}  // namespace gave
