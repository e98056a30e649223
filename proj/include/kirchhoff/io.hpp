#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include "kirchhoff/dyadic.hpp"
#include "kirchhoff/matrix.hpp"
#include "kirchhoff/trace.hpp"

namespace kirchhoff {

// 17 significant digits in scientific notation; round-trips 64-bit floats
// exactly and is locale independent.
std::string format_float(double x);

// Comma list of decimal times or "linspace:a,b,n"; result is sorted,
// deduplicated and nonnegative. Throws ParseError.
Vector parse_times(const std::string& spec);

// "linspace:a,b,n" with exact endpoints; also accepts a plain comma list.
// Entries must be strictly increasing. Used for sample grids.
Vector parse_grid(const std::string& spec);

// --- CSV readers. All take "path" for error messages; stream overloads
// --- exist for tests. Rows are "fields..." with no header unless stated.

// Rows "i,j,value", 0-based, omitted pairs zero. Square by default; the
// size is max index + 1 unless `n` forces it.
Matrix read_matrix_csv(std::istream& in, const std::string& path, std::size_t n = 0);
Matrix read_matrix_csv(const std::string& path, std::size_t n = 0);

// Rows "i,value"; omitted indices zero.
Vector read_vector_csv(std::istream& in, const std::string& path, std::size_t n = 0);
Vector read_vector_csv(const std::string& path, std::size_t n = 0);

// Graph edges "i,j,w" with i != j, symmetrized on load; diagonal entries
// and conflicting duplicates are rejected.
Matrix read_graph_csv(std::istream& in, const std::string& path);
Matrix read_graph_csv(const std::string& path);

// Kernel coefficients "j,alpha" for all scales 0..J, contiguous.
Vector read_alpha_csv(std::istream& in, const std::string& path);
Vector read_alpha_csv(const std::string& path);

// Grid function "k,value" with exactly 2^J rows for some J.
DyadicGridFunction read_grid_function_csv(std::istream& in, const std::string& path);
DyadicGridFunction read_grid_function_csv(const std::string& path);

// Strictly increasing sample table "x,value" (transport maps and
// tabulated functions).
std::pair<Vector, Vector> read_table_csv(std::istream& in, const std::string& path);
std::pair<Vector, Vector> read_table_csv(const std::string& path);

// --- Writers. Deterministic output: fixed order, format_float values.

// Header "time,index,value".
void write_trace_csv(std::ostream& out, const DiffusionTrace& trace);
void write_trace_csv(const std::string& path, const DiffusionTrace& trace);
DiffusionTrace read_trace_csv(std::istream& in, const std::string& path);
DiffusionTrace read_trace_csv(const std::string& path);

// Rows "i,value" (re-parses under read_vector_csv).
void write_vector_csv(std::ostream& out, const Vector& values);
void write_vector_csv(const std::string& path, const Vector& values);

// Sidecar abscissa file, header "index,x".
void write_abscissae_csv(std::ostream& out, const Vector& xs);
void write_abscissae_csv(const std::string& path, const Vector& xs);

}  // namespace kirchhoff
