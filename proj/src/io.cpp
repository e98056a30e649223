#include "kirchhoff/io.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "kirchhoff/errors.hpp"

namespace kirchhoff {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line, const std::string& message) {
  throw ParseError(path + ":" + std::to_string(line) + ": " + message);
}

std::string trim(const std::string& s) {
  std::size_t first = 0;
  std::size_t last = s.size();
  while (first < last && std::isspace(static_cast<unsigned char>(s[first]))) ++first;
  while (last > first && std::isspace(static_cast<unsigned char>(s[last - 1]))) --last;
  return s.substr(first, last - first);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(trim(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(trim(current));
  return fields;
}

double parse_value(const std::string& field, const std::string& path, std::size_t line) {
  if (field.empty()) fail(path, line, "empty value field");
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size()) fail(path, line, "bad float '" + field + "'");
  return v;
}

std::size_t parse_index(const std::string& field, const std::string& path, std::size_t line) {
  if (field.empty()) fail(path, line, "empty index field");
  char* end = nullptr;
  const long long v = std::strtoll(field.c_str(), &end, 10);
  if (end != field.c_str() + field.size() || v < 0) fail(path, line, "bad index '" + field + "'");
  return static_cast<std::size_t>(v);
}

// Calls `row` for every nonblank line with its split fields.
template <typename Row>
void for_each_row(std::istream& in, const std::string& path, std::size_t expected_fields, Row row) {
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != expected_fields)
      fail(path, lineno, "expected " + std::to_string(expected_fields) + " fields, got " +
                             std::to_string(fields.size()));
    row(fields, lineno);
  }
}

std::ifstream open_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open file");
  return in;
}

std::ofstream create_file(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParseError(path + ": cannot create file");
  return out;
}

Vector parse_float_list(const std::string& spec, const char* what) {
  std::vector<double> out;
  for (const std::string& field : split_fields(spec)) {
    if (field.empty()) throw ParseError(std::string(what) + ": empty entry in '" + spec + "'");
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end != field.c_str() + field.size())
      throw ParseError(std::string(what) + ": bad float '" + field + "'");
    out.push_back(v);
  }
  return out;
}

Vector parse_linspace_or_list(const std::string& spec, const char* what) {
  constexpr const char* prefix = "linspace:";
  if (spec.rfind(prefix, 0) == 0) {
    const Vector parts = parse_float_list(spec.substr(std::string(prefix).size()), what);
    if (parts.size() != 3) throw ParseError(std::string(what) + ": linspace needs a,b,n");
    const double a = parts[0];
    const double b = parts[1];
    const double count_raw = parts[2];
    if (!(count_raw >= 1.0) || count_raw != std::floor(count_raw) || count_raw > 1e7)
      throw ParseError(std::string(what) + ": linspace count must be a positive integer");
    const std::size_t count = static_cast<std::size_t>(count_raw);
    if (count == 1) {
      if (a != b) throw ParseError(std::string(what) + ": linspace with one point needs a == b");
      return {a};
    }
    if (!(a < b)) throw ParseError(std::string(what) + ": linspace needs a < b");
    Vector out(count);
    for (std::size_t i = 0; i < count; ++i)
      out[i] = a + (b - a) * (static_cast<double>(i) / static_cast<double>(count - 1));
    out.front() = a;  // exact endpoints
    out.back() = b;
    return out;
  }
  return parse_float_list(spec, what);
}

}  // namespace

std::string format_float(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.16e", x);
  return buffer;
}

Vector parse_times(const std::string& spec) {
  Vector out = parse_linspace_or_list(spec, "times");
  if (out.empty()) throw ParseError("times: empty specification");
  for (double t : out)
    if (!std::isfinite(t) || t < 0.0) throw ParseError("times: entries must be finite and nonnegative");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Vector parse_grid(const std::string& spec) {
  Vector out = parse_linspace_or_list(spec, "grid");
  if (out.empty()) throw ParseError("grid: empty specification");
  for (double x : out)
    if (!std::isfinite(x)) throw ParseError("grid: entries must be finite");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (!(out[i] > out[i - 1])) throw ParseError("grid: entries must be strictly increasing");
  return out;
}

Matrix read_matrix_csv(std::istream& in, const std::string& path, std::size_t n) {
  std::map<std::pair<std::size_t, std::size_t>, double> entries;
  std::size_t extent = n;
  for_each_row(in, path, 3, [&](const std::vector<std::string>& f, std::size_t lineno) {
    const std::size_t i = parse_index(f[0], path, lineno);
    const std::size_t j = parse_index(f[1], path, lineno);
    const double v = parse_value(f[2], path, lineno);
    if (n > 0 && (i >= n || j >= n)) fail(path, lineno, "index out of range");
    if (!entries.emplace(std::make_pair(i, j), v).second)
      fail(path, lineno, "duplicate entry (" + f[0] + "," + f[1] + ")");
    extent = std::max(extent, std::max(i, j) + 1);
  });
  if (extent == 0) throw ParseError(path + ": no matrix entries");
  Matrix m(extent, extent, 0.0);
  for (const auto& [key, v] : entries) m(key.first, key.second) = v;
  return m;
}

Matrix read_matrix_csv(const std::string& path, std::size_t n) {
  auto in = open_file(path);
  return read_matrix_csv(in, path, n);
}

Vector read_vector_csv(std::istream& in, const std::string& path, std::size_t n) {
  std::map<std::size_t, double> entries;
  std::size_t extent = n;
  for_each_row(in, path, 2, [&](const std::vector<std::string>& f, std::size_t lineno) {
    const std::size_t i = parse_index(f[0], path, lineno);
    const double v = parse_value(f[1], path, lineno);
    if (n > 0 && i >= n) fail(path, lineno, "index out of range");
    if (!entries.emplace(i, v).second) fail(path, lineno, "duplicate entry " + f[0]);
    extent = std::max(extent, i + 1);
  });
  if (extent == 0) throw ParseError(path + ": no vector entries");
  Vector out(extent, 0.0);
  for (const auto& [i, v] : entries) out[i] = v;
  return out;
}

Vector read_vector_csv(const std::string& path, std::size_t n) {
  auto in = open_file(path);
  return read_vector_csv(in, path, n);
}

Matrix read_graph_csv(std::istream& in, const std::string& path) {
  std::map<std::pair<std::size_t, std::size_t>, double> edges;
  std::size_t extent = 0;
  for_each_row(in, path, 3, [&](const std::vector<std::string>& f, std::size_t lineno) {
    const std::size_t i = parse_index(f[0], path, lineno);
    const std::size_t j = parse_index(f[1], path, lineno);
    const double v = parse_value(f[2], path, lineno);
    if (i == j) fail(path, lineno, "diagonal entries are not allowed in a graph file");
    const auto key = std::minmax(i, j);
    const auto [it, inserted] = edges.emplace(std::make_pair(key.first, key.second), v);
    if (!inserted) {
      if (it->second != v) fail(path, lineno, "conflicting duplicate edge (" + f[0] + "," + f[1] + ")");
    }
    extent = std::max(extent, std::max(i, j) + 1);
  });
  if (extent < 2) throw ParseError(path + ": a graph needs at least two vertices");
  Matrix w(extent, extent, 0.0);
  for (const auto& [key, v] : edges) {
    w(key.first, key.second) = v;
    w(key.second, key.first) = v;
  }
  return w;
}

Matrix read_graph_csv(const std::string& path) {
  auto in = open_file(path);
  return read_graph_csv(in, path);
}

Vector read_alpha_csv(std::istream& in, const std::string& path) {
  std::map<std::size_t, double> entries;
  for_each_row(in, path, 2, [&](const std::vector<std::string>& f, std::size_t lineno) {
    const std::size_t j = parse_index(f[0], path, lineno);
    const double v = parse_value(f[1], path, lineno);
    if (!entries.emplace(j, v).second) fail(path, lineno, "duplicate scale " + f[0]);
  });
  if (entries.empty()) throw ParseError(path + ": no coefficients");
  Vector alpha(entries.rbegin()->first + 1, 0.0);
  std::size_t expected = 0;
  for (const auto& [j, v] : entries) {
    if (j != expected) throw ParseError(path + ": missing scale " + std::to_string(expected));
    alpha[j] = v;
    ++expected;
  }
  return alpha;
}

Vector read_alpha_csv(const std::string& path) {
  auto in = open_file(path);
  return read_alpha_csv(in, path);
}

DyadicGridFunction read_grid_function_csv(std::istream& in, const std::string& path) {
  const Vector values = read_vector_csv(in, path, 0);
  if (!std::has_single_bit(values.size()))
    throw ParseError(path + ": grid function needs 2^J rows, got " + std::to_string(values.size()));
  const int resolution = std::bit_width(values.size()) - 1;
  return DyadicGridFunction{resolution, values};
}

DyadicGridFunction read_grid_function_csv(const std::string& path) {
  auto in = open_file(path);
  return read_grid_function_csv(in, path);
}

std::pair<Vector, Vector> read_table_csv(std::istream& in, const std::string& path) {
  Vector xs;
  Vector values;
  for_each_row(in, path, 2, [&](const std::vector<std::string>& f, std::size_t lineno) {
    const double x = parse_value(f[0], path, lineno);
    const double v = parse_value(f[1], path, lineno);
    if (!xs.empty() && !(x > xs.back())) fail(path, lineno, "sample points must be strictly increasing");
    xs.push_back(x);
    values.push_back(v);
  });
  if (xs.empty()) throw ParseError(path + ": no table rows");
  return {std::move(xs), std::move(values)};
}

std::pair<Vector, Vector> read_table_csv(const std::string& path) {
  auto in = open_file(path);
  return read_table_csv(in, path);
}

void write_trace_csv(std::ostream& out, const DiffusionTrace& trace) {
  out << "time,index,value\n";
  for (std::size_t ti = 0; ti < trace.times.size(); ++ti)
    for (std::size_t i = 0; i < trace.snapshots.cols(); ++i)
      out << format_float(trace.times[ti]) << ',' << i << ',' << format_float(trace.snapshots(ti, i))
          << '\n';
}

void write_trace_csv(const std::string& path, const DiffusionTrace& trace) {
  auto out = create_file(path);
  write_trace_csv(out, trace);
}

DiffusionTrace read_trace_csv(std::istream& in, const std::string& path) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError(path + ": empty trace file");
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (trim(header) != "time,index,value") throw ParseError(path + ": bad trace header");

  Vector times;
  std::vector<Vector> rows;
  for_each_row(in, path, 3, [&](const std::vector<std::string>& f, std::size_t lineno) {
    const double t = parse_value(f[0], path, lineno);
    const std::size_t i = parse_index(f[1], path, lineno);
    const double v = parse_value(f[2], path, lineno);
    if (times.empty() || t != times.back()) {
      if (!times.empty() && !(t > times.back())) fail(path, lineno, "times must increase");
      times.push_back(t);
      rows.emplace_back();
    }
    if (i != rows.back().size()) fail(path, lineno, "indices must be contiguous per time");
    rows.back().push_back(v);
  });
  if (times.empty()) throw ParseError(path + ": no trace rows");
  const std::size_t n = rows.front().size();
  for (const Vector& row : rows)
    if (row.size() != n) throw ParseError(path + ": ragged snapshot blocks");

  DiffusionTrace trace;
  trace.times = std::move(times);
  trace.snapshots = Matrix(trace.times.size(), n);
  for (std::size_t ti = 0; ti < trace.times.size(); ++ti)
    for (std::size_t i = 0; i < n; ++i) trace.snapshots(ti, i) = rows[ti][i];
  return trace;
}

DiffusionTrace read_trace_csv(const std::string& path) {
  auto in = open_file(path);
  return read_trace_csv(in, path);
}

void write_vector_csv(std::ostream& out, const Vector& values) {
  for (std::size_t i = 0; i < values.size(); ++i)
    out << i << ',' << format_float(values[i]) << '\n';
}

void write_vector_csv(const std::string& path, const Vector& values) {
  auto out = create_file(path);
  write_vector_csv(out, values);
}

void write_abscissae_csv(std::ostream& out, const Vector& xs) {
  out << "index,x\n";
  for (std::size_t i = 0; i < xs.size(); ++i) out << i << ',' << format_float(xs[i]) << '\n';
}

void write_abscissae_csv(const std::string& path, const Vector& xs) {
  auto out = create_file(path);
  write_abscissae_csv(out, xs);
}

}  // namespace kirchhoff
