#pragma once

#include <optional>
#include <string>
#include <vector>

#include "green/config.hpp"
#include "green/spectrum.hpp"

namespace green {

struct ProbePair {
  Coord x{}, y{};
};

struct RunConfig {
  ModelConfig model;
  std::optional<Cx> energy;
  std::vector<ProbePair> probes;
  int bench_n_max = 256;
  std::optional<std::uint64_t> bench_seed;
  ScanOptions scan;
};

// parses and validates the structured config; throws Validation with a
// rendered issue list on any problem
RunConfig load_config(const std::string& path);

// tabular output shared by every subcommand; numeric cells are pre-rendered
// with format_double so csv and json carry byte-identical payloads
struct Cell {
  std::string text;
  bool is_number = false;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> meta;  // insertion-ordered
};

std::string format_double(double v);  // %.17g
Cell num_cell(double v);
Cell int_cell(long long v);
Cell str_cell(const std::string& s);

std::string to_csv(const Table& t);
std::string to_json(const Table& t);

void write_output(const Table& t, const std::string& format, const std::string& out_path);

}  // namespace green
