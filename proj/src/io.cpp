#include "lomo/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace lomo {

namespace {

nlohmann::json header(const Domain& d) {
  return {{"dim", d.dim}, {"side", d.side}, {"n_points", d.points_per_axis}};
}

}  // namespace

void write_grid_function(std::ostream& out, const GridFunction& f) {
  const std::vector<double> samples(f.samples().begin(), f.samples().end());
  nlohmann::json doc = header(f.domain());
  if (f.domain().points_per_axis <= kSingleDocumentLimit) {
    doc["samples"] = samples;
    out << doc.dump() << '\n';
  } else {
    out << doc.dump() << '\n' << nlohmann::json(samples).dump() << '\n';
  }
}

GridFunction read_grid_function(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("grid function: malformed JSON header: ") + e.what());
  }
  if (!doc.is_object()) throw std::runtime_error("grid function: header must be a JSON object");
  const Domain domain =
      make_domain(doc.at("dim").get<int>(), doc.at("side").get<double>(), doc.at("n_points").get<std::size_t>());
  std::vector<double> samples;
  if (doc.contains("samples")) {
    samples = doc.at("samples").get<std::vector<double>>();
  } else {
    nlohmann::json body;
    try {
      in >> body;
    } catch (const nlohmann::json::exception& e) {
      throw std::runtime_error(std::string("grid function: malformed sample array: ") + e.what());
    }
    samples = body.get<std::vector<double>>();
  }
  return GridFunction(domain, std::move(samples));
}

void save_grid_function(const std::filesystem::path& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_grid_function(out, f);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

GridFunction load_grid_function(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string() + " for reading");
  try {
    return read_grid_function(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

}  // namespace lomo
