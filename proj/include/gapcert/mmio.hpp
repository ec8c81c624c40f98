#pragma once

#include <string>

#include "gapcert/linalg.hpp"

namespace gapcert {

/// Matrix Market dense array / coordinate readers and writers. Symmetric
/// array files store the lower triangle column by column; general array
/// files store all entries column by column. Values are written with 17
/// significant digits so that a write/read round trip is exact.

Matrix read_matrix_market(const std::string& path);

void write_matrix_market_symmetric(const std::string& path, const Matrix& m);
void write_matrix_market_general(const std::string& path, const Matrix& m);

std::string format_double(double v);  // %.17g

}  // namespace gapcert
