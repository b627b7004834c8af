#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "localmax/graph.hpp"

namespace localmax {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// MatrixMarket coordinate format, symmetric only (real, integer or pattern).
// Entry (i, j) becomes edge {i-1, j-1} with weight |value| (1.0 for pattern).
// Diagonal and explicit zero entries are dropped; duplicates keep the larger
// magnitude.
Graph parse_matrix_market(std::istream& in);
Graph read_matrix_market(const std::filesystem::path& path);
void write_matrix_market(const Graph& g, std::ostream& out);

// Plain edge list: one "u v w" triple per line, '#' starts a comment. A
// "# n=<N>" comment fixes the vertex count, otherwise n = max id + 1.
Graph parse_edge_list(std::istream& in, std::optional<VertexId> n_override = std::nullopt);
Graph read_edge_list(const std::filesystem::path& path,
                     std::optional<VertexId> n_override = std::nullopt);
void write_edge_list(const Graph& g, std::ostream& out);
void write_edge_list(const Graph& g, const std::filesystem::path& path);

/// Picks the reader from the file's "%%MatrixMarket" banner.
Graph read_graph(const std::filesystem::path& path);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// Writes `preamble` comment lines ("# ..."), the header and all rows. With
// append=true and a non-empty existing file, only the rows are appended after
// checking that the file's preamble and header match.
void write_csv(const CsvTable& table, const std::filesystem::path& path, bool append = false,
               const std::vector<std::string>& preamble = {});
void write_csv(const CsvTable& table, std::ostream& out,
               const std::vector<std::string>& preamble = {});

/// Reads a CSV written by write_csv (no quoting); '#' lines are skipped.
CsvTable read_csv(const std::filesystem::path& path);

}  // namespace localmax
