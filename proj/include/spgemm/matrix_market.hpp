#pragma once

#include <iosfwd>
#include <string>

#include "spgemm/triple.hpp"

namespace spgemm {

struct MatrixMarketError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads a coordinate-format Matrix Market file (general or symmetric).
/// 1-based file indices become 0-based, symmetric files are expanded to both
/// triangles, duplicate coordinates are summed, and explicit zero values are
/// kept as nonzeros.
TripleList<double> read_matrix_market(const std::string& path);
TripleList<double> read_matrix_market(std::istream& in, const std::string& name = "<stream>");

void write_matrix_market(const TripleList<double>& t, const std::string& path);
void write_matrix_market(const TripleList<double>& t, std::ostream& out);

}  // namespace spgemm
