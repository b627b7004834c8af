#include "localmax/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace localmax {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

[[noreturn]] void fail_at(std::size_t line_no, const std::string& what) {
  throw IoError("line " + std::to_string(line_no) + ": " + what);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string join_commas(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

}  // namespace

Graph parse_matrix_market(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw IoError("empty MatrixMarket file");
  ++line_no;

  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") fail_at(line_no, "missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix" || format != "coordinate") fail_at(line_no, "only 'matrix coordinate' is supported");
  if (field != "real" && field != "integer" && field != "pattern") {
    fail_at(line_no, "unsupported field '" + field + "'");
  }
  if (symmetry != "symmetric") fail_at(line_no, "matrix must be symmetric, got '" + symmetry + "'");
  const bool pattern = field == "pattern";

  // size line follows any number of % comments
  std::uint64_t rows = 0, cols = 0, nnz = 0;
  for (;;) {
    if (!std::getline(in, line)) throw IoError("missing size line");
    ++line_no;
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz)) fail_at(line_no, "malformed size line");
    break;
  }
  if (rows != cols) fail_at(line_no, "matrix is not square");
  if (rows >= kNoVertex) fail_at(line_no, "matrix too large");

  std::vector<InputEdge> edges;
  edges.reserve(nnz);
  std::uint64_t seen = 0;
  while (seen < nnz && std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '%' || blank(line)) continue;
    std::istringstream ss(line);
    std::uint64_t i = 0, j = 0;
    double value = 1.0;
    if (!(ss >> i >> j)) fail_at(line_no, "malformed entry");
    if (!pattern && !(ss >> value)) fail_at(line_no, "entry is missing its value");
    if (i < 1 || j < 1 || i > rows || j > cols) {
      fail_at(line_no, "index (" + std::to_string(i) + ", " + std::to_string(j) + ") outside " +
                           std::to_string(rows) + "x" + std::to_string(cols));
    }
    if (!std::isfinite(value)) fail_at(line_no, "non-finite value");
    ++seen;
    if (i == j || value == 0.0) continue;
    edges.push_back({static_cast<VertexId>(i - 1), static_cast<VertexId>(j - 1), std::fabs(value)});
  }
  if (seen < nnz) {
    throw IoError("expected " + std::to_string(nnz) + " entries, found " + std::to_string(seen));
  }
  return build_graph(static_cast<VertexId>(rows), edges);
}

Graph read_matrix_market(const std::filesystem::path& path) {
  auto in = open_input(path);
  try {
    return parse_matrix_market(in);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_matrix_market(const Graph& g, std::ostream& out) {
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << g.num_vertices() << ' ' << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& e : g.edges()) {
    // lower triangle: row > column
    out << e.v + 1 << ' ' << e.u + 1 << ' ' << format_double(e.w) << '\n';
  }
}

Graph parse_edge_list(std::istream& in, std::optional<VertexId> n_override) {
  std::vector<InputEdge> edges;
  std::optional<VertexId> declared;
  std::uint64_t max_id_plus_one = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto first = line.find_first_not_of(" \t");
    if (line[first] == '#') {
      std::string body = line.substr(first + 1);
      body.erase(std::remove_if(body.begin(), body.end(), [](unsigned char c) { return std::isspace(c); }),
                 body.end());
      if (body.rfind("n=", 0) == 0) {
        std::uint64_t n = 0;
        const char* b = body.data() + 2;
        const char* e = body.data() + body.size();
        auto [ptr, ec] = std::from_chars(b, e, n);
        if (ec != std::errc{} || ptr != e || n >= kNoVertex) fail_at(line_no, "malformed n= header");
        declared = static_cast<VertexId>(n);
      }
      continue;
    }
    std::istringstream ss(line);
    std::int64_t u = 0, v = 0;
    double w = 0.0;
    std::string rest;
    if (!(ss >> u >> v >> w)) fail_at(line_no, "expected 'u v w'");
    if (ss >> rest && rest[0] != '#') fail_at(line_no, "trailing garbage '" + rest + "'");
    if (u < 0 || v < 0 || u >= kNoVertex || v >= kNoVertex) fail_at(line_no, "vertex id out of range");
    if (!std::isfinite(w) || w < 0.0) fail_at(line_no, "weight must be finite and >= 0");
    max_id_plus_one = std::max<std::uint64_t>(max_id_plus_one, std::max(u, v) + 1);
    edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
  }
  const VertexId n = n_override ? *n_override
                     : declared ? *declared
                                : static_cast<VertexId>(max_id_plus_one);
  try {
    return build_graph(n, edges);
  } catch (const GraphError& e) {
    throw IoError(e.what());
  }
}

Graph read_edge_list(const std::filesystem::path& path, std::optional<VertexId> n_override) {
  auto in = open_input(path);
  try {
    return parse_edge_list(in, n_override);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void write_edge_list(const Graph& g, std::ostream& out) {
  out << "# n=" << g.num_vertices() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << ' ' << format_double(e.w) << '\n';
}

void write_edge_list(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  write_edge_list(g, out);
}

Graph read_graph(const std::filesystem::path& path) {
  std::string first;
  {
    auto in = open_input(path);
    std::getline(in, first);
  }
  if (first.rfind("%%MatrixMarket", 0) == 0) return read_matrix_market(path);
  return read_edge_list(path);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

void write_csv(const CsvTable& table, std::ostream& out, const std::vector<std::string>& preamble) {
  for (const auto& p : preamble) out << "# " << p << '\n';
  out << join_commas(table.header) << '\n';
  for (const auto& row : table.rows) out << join_commas(row) << '\n';
}

void write_csv(const CsvTable& table, const std::filesystem::path& path, bool append,
               const std::vector<std::string>& preamble) {
  const bool existing = append && std::filesystem::exists(path) && std::filesystem::file_size(path) > 0;
  if (existing) {
    auto in = open_input(path);
    std::string line;
    for (const auto& p : preamble) {
      if (!std::getline(in, line) || line != "# " + p) {
        throw IoError("'" + path.string() + "' has a different schema preamble; refusing to append");
      }
    }
    if (!std::getline(in, line) || line != join_commas(table.header)) {
      throw IoError("'" + path.string() + "' has a different header; refusing to append");
    }
  }
  std::ofstream out(path, existing ? std::ios::app : std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  if (existing) {
    for (const auto& row : table.rows) out << join_commas(row) << '\n';
  } else {
    write_csv(table, out, preamble);
  }
}

CsvTable read_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!have_header) {
      table.header = split_commas(line);
      have_header = true;
    } else {
      table.rows.push_back(split_commas(line));
    }
  }
  return table;
}

}  // namespace localmax
