#include "boltzlab/snapshot_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace boltzlab {

namespace {

using nlohmann::json;

std::string format_double(double x) {
  char buf[32];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string grid_metadata_json(const PhaseGrid& grid, double time) {
  json j;
  j["format"] = "boltzlab-snapshot-v1";
  j["N"] = grid.dim();
  j["L"] = grid.length();
  j["n_x"] = grid.n_x();
  j["v_max"] = grid.v_max();
  j["n_v"] = grid.n_v();
  j["time"] = time;
  return j.dump();
}

void write_snapshot(const std::filesystem::path& path, const DistributionFunction& f,
                    double time) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open snapshot for writing: " + path.string());
  const PhaseGrid& g = f.grid();
  out << "# " << grid_metadata_json(g, time) << '\n';
  for (int d = 0; d < g.dim(); ++d) out << "ix" << d << ',';
  for (int d = 0; d < g.dim(); ++d) out << "iv" << d << ',';
  out << "value\n";

  std::string line;
  for (std::size_t x = 0; x < g.x_cells(); ++x) {
    const auto xm = g.x_multi(x);
    for (std::size_t v = 0; v < g.v_nodes(); ++v) {
      const auto vm = g.v_multi(v);
      line.clear();
      for (int d = 0; d < g.dim(); ++d) line += std::to_string(xm[d]) + ',';
      for (int d = 0; d < g.dim(); ++d) line += std::to_string(vm[d]) + ',';
      line += format_double(f.at(x, v));
      out << line << '\n';
    }
  }
  if (!out) throw std::runtime_error("failed writing snapshot: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open snapshot: " + path.string());

  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) {
    throw std::invalid_argument("snapshot " + path.string() + ": missing '# {json}' header");
  }
  json meta;
  try {
    meta = json::parse(line.substr(2));
  } catch (const json::exception& e) {
    throw std::invalid_argument("snapshot " + path.string() + ": bad header JSON: " + e.what());
  }
  for (const char* key : {"N", "L", "n_x", "v_max", "n_v"}) {
    if (!meta.contains(key)) {
      throw std::invalid_argument("snapshot " + path.string() + ": header lacks '" + key + "'");
    }
  }
  const PhaseGrid grid(meta["N"].get<int>(), meta["L"].get<double>(), meta["n_x"].get<int>(),
                       meta["v_max"].get<double>(), meta["n_v"].get<int>());
  const double time = meta.value("time", 0.0);
  const int dim = grid.dim();

  if (!std::getline(in, line)) {
    throw std::invalid_argument("snapshot " + path.string() + ": missing column header");
  }
  if (static_cast<int>(split_csv(line).size()) != 2 * dim + 1) {
    throw std::invalid_argument("snapshot " + path.string() + ": column count disagrees with N");
  }

  std::vector<double> values(grid.size(), 0.0);
  std::vector<char> seen(grid.size(), 0);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cols = split_csv(line);
    if (static_cast<int>(cols.size()) != 2 * dim + 1) {
      throw std::invalid_argument("snapshot " + path.string() + ": malformed row " +
                                  std::to_string(rows + 3));
    }
    std::array<int, 3> xm{0, 0, 0}, vm{0, 0, 0};
    for (int d = 0; d < 2 * dim; ++d) {
      int idx = -1;
      auto [p, ec] = std::from_chars(cols[d].data(), cols[d].data() + cols[d].size(), idx);
      const int limit = d < dim ? grid.n_x() : grid.n_v();
      if (ec != std::errc{} || idx < 0 || idx >= limit) {
        throw std::invalid_argument("snapshot " + path.string() + ": index out of range in row " +
                                    std::to_string(rows + 3));
      }
      (d < dim ? xm[d] : vm[d - dim]) = idx;
    }
    double value = 0.0;
    try {
      value = std::stod(std::string(cols.back()));
    } catch (const std::exception&) {
      throw std::invalid_argument("snapshot " + path.string() + ": bad value in row " +
                                  std::to_string(rows + 3));
    }
    const std::size_t flat = grid.v_flat(vm) * grid.x_cells() + grid.x_flat(xm);
    if (seen[flat]) {
      throw std::invalid_argument("snapshot " + path.string() + ": duplicate node in row " +
                                  std::to_string(rows + 3));
    }
    seen[flat] = 1;
    values[flat] = value;
    ++rows;
  }
  if (rows != grid.size()) {
    throw std::invalid_argument("snapshot " + path.string() + ": expected " +
                                std::to_string(grid.size()) + " rows, found " +
                                std::to_string(rows));
  }
  return {DistributionFunction(grid, std::move(values)), time};
}

}  // namespace boltzlab
