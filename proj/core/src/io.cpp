#include "bmolab/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace bmolab {

namespace {

template <class T>
void write_raw(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_raw(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw DomainError("gridfunction stream: truncated input");
  return v;
}

std::string hexfloat(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

}  // namespace

void write_gridfunction(std::ostream& os, const GridFunction& f) {
  os.write("GFN1", 4);
  write_raw<std::int64_t>(os, f.domain().lo_num());
  write_raw<std::int64_t>(os, f.domain().hi_num());
  write_raw<std::int32_t>(os, f.domain().level());
  write_raw<std::int32_t>(os, f.resolution_log2());
  write_raw<std::int32_t>(os, f.space().dimension);
  write_raw<double>(os, f.space().exponent);
  const auto data = f.data();
  os.write(reinterpret_cast<const char*>(data.data()),
           static_cast<std::streamsize>(data.size() * sizeof(double)));
}

GridFunction read_gridfunction(std::istream& is) {
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "GFN1", 4) != 0)
    throw DomainError("gridfunction stream: bad magic");
  const auto lo = read_raw<std::int64_t>(is);
  const auto hi = read_raw<std::int64_t>(is);
  const auto level = read_raw<std::int32_t>(is);
  const auto res = read_raw<std::int32_t>(is);
  const auto dim = read_raw<std::int32_t>(is);
  const auto exponent = read_raw<double>(is);
  const Interval domain(lo, hi, level);
  const std::int64_t n = (domain.right_ticks(res) - domain.left_ticks(res)) * dim;
  std::vector<double> samples(static_cast<std::size_t>(n));
  is.read(reinterpret_cast<char*>(samples.data()),
          static_cast<std::streamsize>(samples.size() * sizeof(double)));
  if (!is) throw DomainError("gridfunction stream: truncated samples");
  return GridFunction(domain, res, VectorSpaceDescriptor{dim, exponent}, std::move(samples));
}

void write_gridfunction_file(const std::string& path, const GridFunction& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open for write: " + path);
  write_gridfunction(os, f);
}

GridFunction read_gridfunction_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open for read: " + path);
  return read_gridfunction(is);
}

void write_gridfunction_csv(std::ostream& os, const GridFunction& f) {
  os << "# gridfunction " << f.domain().lo_num() << " " << f.domain().hi_num() << " "
     << f.domain().level() << " " << f.resolution_log2() << " " << f.space().dimension << " "
     << hexfloat(f.space().exponent) << "\n";
  const int d = f.space().dimension;
  for (std::int64_t i = 0; i < f.cell_count(); ++i) {
    const auto c = f.cell(i);
    for (int k = 0; k < d; ++k) {
      if (k) os << ",";
      os << hexfloat(c[k]);
    }
    os << "\n";
  }
}

GridFunction read_gridfunction_csv(std::istream& is) {
  std::string header;
  std::getline(is, header);
  std::istringstream hs(header);
  std::string hash, tag;
  std::int64_t lo, hi;
  int level, res, dim;
  std::string rtext;
  hs >> hash >> tag >> lo >> hi >> level >> res >> dim >> rtext;
  if (!hs || hash != "#" || tag != "gridfunction")
    throw DomainError("gridfunction csv: bad header");
  const double exponent = std::strtod(rtext.c_str(), nullptr);
  const Interval domain(lo, hi, level);
  const std::int64_t cells = domain.right_ticks(res) - domain.left_ticks(res);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(cells * dim));
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      std::size_t comma = line.find(',', pos);
      const std::string field =
          line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      samples.push_back(std::strtod(field.c_str(), nullptr));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  if (static_cast<std::int64_t>(samples.size()) != cells * dim)
    throw DomainError("gridfunction csv: sample count mismatch");
  return GridFunction(domain, res, VectorSpaceDescriptor{dim, exponent}, std::move(samples));
}

// ---- coefficient arrays -----------------------------------------------------

std::string coefficient_array_to_json(const CoefficientArray& a) {
  nlohmann::json j;
  j["d"] = a.space().dimension;
  j["r"] = a.space().exponent;
  j["provenance"] = a.provenance();
  auto& entries = j["entries"] = nlohmann::json::array();
  for (const auto& [J, v] : a) {
    nlohmann::json e;
    e["j"] = J.scale;
    e["k"] = J.position;
    e["v"] = v;
    entries.push_back(std::move(e));
  }
  return j.dump();
}

CoefficientArray coefficient_array_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  CoefficientArray a(VectorSpaceDescriptor{j.at("d").get<int>(), j.at("r").get<double>()},
                     j.value("provenance", std::string("synthetic")));
  for (const auto& e : j.at("entries")) {
    const DyadicInterval J{e.at("j").get<int>(), e.at("k").get<std::int64_t>()};
    const auto v = e.at("v").get<std::vector<double>>();
    a.set(J, v);
  }
  return a;
}

void write_coefficient_array_file(const std::string& path, const CoefficientArray& a) {
  std::ofstream os(path);
  if (!os) throw DomainError("cannot open for write: " + path);
  os << coefficient_array_to_json(a) << "\n";
}

CoefficientArray read_coefficient_array_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot open for read: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return coefficient_array_from_json(ss.str());
}

}  // namespace bmolab
