#include "spgemm/matrix_market.hpp"

#include <cctype>
#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spgemm {

namespace {

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

}  // namespace

TripleList<double> read_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MatrixMarketError("cannot open " + path);
    return read_matrix_market(in, path);
}

TripleList<double> read_matrix_market(std::istream& in, const std::string& name) {
    std::string header;
    if (!std::getline(in, header)) throw MatrixMarketError(name + ": empty file");

    std::istringstream hs(header);
    std::string banner, object, format, field, symmetry;
    hs >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || lower(object) != "matrix" || lower(format) != "coordinate")
        throw MatrixMarketError(name + ": malformed header: " + header);
    field = lower(field);
    symmetry = lower(symmetry);
    if (field != "real" && field != "integer" && field != "pattern")
        throw MatrixMarketError(name + ": unsupported field type: " + field);
    if (symmetry != "general" && symmetry != "symmetric")
        throw MatrixMarketError(name + ": unsupported symmetry: " + symmetry);
    const bool pattern = field == "pattern";
    const bool symmetric = symmetry == "symmetric";

    std::string line;
    index_t nrows = -1, ncols = -1, declared = -1;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        if (!(ls >> nrows >> ncols >> declared))
            throw MatrixMarketError(name + ": malformed size line: " + line);
        break;
    }
    if (nrows < 0) throw MatrixMarketError(name + ": missing size line");

    TripleList<double> t(nrows, ncols);
    t.triples.reserve(static_cast<std::size_t>(symmetric ? 2 * declared : declared));
    index_t seen = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '%') continue;
        std::istringstream ls(line);
        index_t r, c;
        double v = 1.0;
        if (!(ls >> r >> c) || (!pattern && !(ls >> v)))
            throw MatrixMarketError(name + ": malformed entry: " + line);
        if (r < 1 || r > nrows || c < 1 || c > ncols)
            throw MatrixMarketError(name + ": entry index out of declared bounds: " + line);
        t.triples.push_back({r - 1, c - 1, v});
        if (symmetric && r != c) t.triples.push_back({c - 1, r - 1, v});
        ++seen;
    }
    if (seen != declared)
        throw MatrixMarketError(name + ": declared " + std::to_string(declared) +
                                " entries, found " + std::to_string(seen));
    t.sort();
    t.reduce([](double a, double b) { return a + b; });
    return t;
}

void write_matrix_market(const TripleList<double>& t, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw MatrixMarketError("cannot open " + path + " for writing");
    write_matrix_market(t, out);
    if (!out) throw MatrixMarketError("write failed: " + path);
}

void write_matrix_market(const TripleList<double>& t, std::ostream& out) {
    out << "%%MatrixMarket matrix coordinate real general\n";
    out << t.nrows << ' ' << t.ncols << ' ' << t.nnz() << '\n';
    char buf[96];
    for (const auto& e : t.triples) {
        // %.17g round-trips doubles exactly
        std::snprintf(buf, sizeof buf, "%" PRId64 " %" PRId64 " %.17g\n", e.row + 1, e.col + 1,
                      e.value);
        out << buf;
    }
}

}  // namespace spgemm
