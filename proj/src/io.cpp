#include "weylab/io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace weylab {

namespace {

void put(std::ostream& os, const void* p, std::size_t bytes) {
  os.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
}

void get(std::istream& is, void* p, std::size_t bytes) {
  is.read(static_cast<char*>(p), static_cast<std::streamsize>(bytes));
  if (!is) throw std::runtime_error("io: truncated file");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("io: cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("io: cannot open for reading: " + path);
  return is;
}

void check_magic(std::istream& is, const char* magic) {
  char buf[4];
  get(is, buf, 4);
  if (std::memcmp(buf, magic, 4) != 0)
    throw std::runtime_error(std::string("io: bad magic, expected ") + magic);
}

bool all_real(const std::vector<cd>& v) {
  for (const cd& z : v)
    if (z.imag() != 0.0) return false;
  return true;
}

// Round-trip double formatting with a stable (non-locale) representation.
std::string fmt_double(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

void dump_rec(const nlohmann::json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // ordered by key
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(it.key()).dump();
        out += ':';
        dump_rec(it.value(), out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ',';
        dump_rec(j[i], out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float:
      out += fmt_double(j.get<double>());
      break;
    default:
      out += j.dump();
  }
}

}  // namespace

void write_field(const SymbolField& a, const std::string& path) {
  auto os = open_out(path);
  put(os, "WLF1", 4);
  const std::uint32_t n = static_cast<std::uint32_t>(a.grid.n);
  const double L = a.grid.L;
  const std::uint64_t N = a.grid.N;
  const std::uint32_t flag = all_real(a.values) ? 0u : 1u;
  const std::int32_t deg = a.poly_degree;
  put(os, &n, 4);
  put(os, &L, 8);
  put(os, &N, 8);
  put(os, &flag, 4);
  put(os, &deg, 4);
  if (flag == 0) {
    for (const cd& z : a.values) {
      const double re = z.real();
      put(os, &re, 8);
    }
  } else {
    put(os, a.values.data(), a.values.size() * sizeof(cd));
  }
  if (!os) throw std::runtime_error("io: write failed: " + path);
}

SymbolField read_field(const std::string& path) {
  auto is = open_in(path);
  check_magic(is, "WLF1");
  std::uint32_t n = 0, flag = 0;
  double L = 0;
  std::uint64_t N = 0;
  std::int32_t deg = -1;
  get(is, &n, 4);
  get(is, &L, 8);
  get(is, &N, 8);
  get(is, &flag, 4);
  get(is, &deg, 4);
  SymbolField a;
  a.grid = PhaseGrid{static_cast<int>(n), L, static_cast<int>(N)};
  a.values.resize(a.grid.phase_size());
  a.poly_degree = deg;
  if (flag == 0) {
    for (cd& z : a.values) {
      double re = 0;
      get(is, &re, 8);
      z = cd(re, 0.0);
    }
  } else {
    get(is, a.values.data(), a.values.size() * sizeof(cd));
  }
  return a;
}

void write_kernel(const OperatorKernel& k, const std::string& path) {
  auto os = open_out(path);
  put(os, "WLK1", 4);
  const std::uint32_t n = static_cast<std::uint32_t>(k.grid.n);
  const double L = k.grid.L;
  const std::uint64_t N = k.grid.N;
  const double t = k.t;
  const std::uint8_t scaled = k.scaled ? 1 : 0;
  put(os, &n, 4);
  put(os, &L, 8);
  put(os, &N, 8);
  put(os, &t, 8);
  put(os, &scaled, 1);
  put(os, k.K.data(), static_cast<std::size_t>(k.K.size()) * sizeof(cd));
  if (!os) throw std::runtime_error("io: write failed: " + path);
}

OperatorKernel read_kernel(const std::string& path) {
  auto is = open_in(path);
  check_magic(is, "WLK1");
  std::uint32_t n = 0;
  double L = 0, t = 0;
  std::uint64_t N = 0;
  std::uint8_t scaled = 0;
  get(is, &n, 4);
  get(is, &L, 8);
  get(is, &N, 8);
  get(is, &t, 8);
  get(is, &scaled, 1);
  OperatorKernel k;
  k.grid = PhaseGrid{static_cast<int>(n), L, static_cast<int>(N)};
  k.t = t;
  k.scaled = scaled != 0;
  const std::size_t rows = detail::ipow(k.grid.N, k.grid.n);
  k.K.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
  get(is, k.K.data(), rows * rows * sizeof(cd));
  return k;
}

nlohmann::json field_to_json(const SymbolField& a) {
  nlohmann::json j;
  j["n"] = a.grid.n;
  j["L"] = a.grid.L;
  j["N"] = a.grid.N;
  j["poly_degree"] = a.poly_degree;
  nlohmann::json vals = nlohmann::json::array();
  for (const cd& z : a.values) vals.push_back({z.real(), z.imag()});
  j["values"] = std::move(vals);
  return j;
}

SymbolField field_from_json(const nlohmann::json& j) {
  SymbolField a;
  a.grid = PhaseGrid{j.at("n").get<int>(), j.at("L").get<double>(),
                     j.at("N").get<int>()};
  a.values.resize(a.grid.phase_size());
  a.poly_degree = j.value("poly_degree", -1);
  const auto& vals = j.at("values");
  if (vals.size() != a.values.size())
    throw std::runtime_error("io: value count does not match grid");
  for (std::size_t i = 0; i < a.values.size(); ++i)
    a.values[i] = cd(vals[i][0].get<double>(), vals[i][1].get<double>());
  return a;
}

std::string dump_deterministic(const nlohmann::json& j) {
  std::string out;
  dump_rec(j, out);
  out += '\n';
  return out;
}

void write_json(const nlohmann::json& j, const std::string& path) {
  auto os = open_out(path);
  const std::string s = dump_deterministic(j);
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
  if (!os) throw std::runtime_error("io: write failed: " + path);
}

}  // namespace weylab
