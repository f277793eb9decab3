#include "sharpyoung/sampled_triple.hpp"

#include <bit>
#include <cmath>
#include <cstring>

#include <boost/archive/iterators/base64_from_binary.hpp>
#include <boost/archive/iterators/binary_from_base64.hpp>
#include <boost/archive/iterators/transform_width.hpp>
#include <json.hpp>

#include "sharpyoung/error.hpp"

namespace sharpyoung {

using nlohmann::json;

long GridSpec::size() const {
  long n = 1;
  for (int k : nodes) n *= k;
  return n;
}

double GridSpec::step(int axis) const { return 2.0 * half_widths(axis) / (nodes[axis] - 1); }

double GridSpec::coord(int axis, int i) const { return center(axis) - half_widths(axis) + i * step(axis); }

Vec GridSpec::point(long idx) const {
  Vec x(dims());
  for (int k = dims() - 1; k >= 0; --k) {
    x(k) = coord(k, static_cast<int>(idx % nodes[k]));
    idx /= nodes[k];
  }
  return x;
}

void GridSpec::validate() const {
  require(!nodes.empty() && center.size() == dims() && half_widths.size() == dims(),
          "grid axes disagree in count", "/grid");
  for (int k = 0; k < dims(); ++k) {
    require(nodes[k] >= 3, "each grid axis needs at least 3 nodes", "/grid/nodes/" + std::to_string(k));
    require(half_widths(k) > 0.0 && std::isfinite(half_widths(k)), "grid half-widths must be positive",
            "/grid/half_widths/" + std::to_string(k));
  }
  require(size() <= 50'000'000L, "grid too large", "/grid/nodes");
}

void SampledTriple::validate() const {
  grid.validate();
  require(grid.dims() == 2 * d + 1, "grid dimension must be 2d+1", "/grid");
  for (int j = 0; j < 3; ++j) {
    require(values[j].size() == grid.size(), "payload size does not match the grid",
            "/payload/" + std::to_string(j));
    require(values[j].allFinite(), "payload has non-finite values", "/payload/" + std::to_string(j));
  }
}

GridSpec auto_grid(const Triple& g, const std::array<Exponent, 3>& p, int x_nodes, int t_nodes) {
  const int m = g[0].dim();
  GridSpec grid;
  Vec lo = Vec::Constant(m, std::numeric_limits<double>::infinity());
  Vec hi = -lo;
  for (int j = 0; j < 3; ++j) {
    // |G|^p ∝ exp(−p(x−a)ᵀQ(x−a)): covariance (2pQ)⁻¹.
    const double pj = p[j].infinite ? 2.0 : p[j].value;
    const Mat cov = (2.0 * pj * g[j].Q).inverse();
    for (int k = 0; k < m; ++k) {
      const double w = 6.0 * std::sqrt(cov(k, k));
      lo(k) = std::min(lo(k), g[j].a(k) - w);
      hi(k) = std::max(hi(k), g[j].a(k) + w);
    }
  }
  grid.center = 0.5 * (lo + hi);
  grid.half_widths = 0.5 * (hi - lo);
  grid.nodes.assign(m, x_nodes);
  grid.nodes[m - 1] = t_nodes;
  return grid;
}

SampledTriple sample_triple(const Triple& g, const std::array<Exponent, 3>& p, const GridSpec& grid) {
  SampledTriple s;
  s.d = heis_d(g[0]);
  s.p = p;
  s.grid = grid;
  grid.validate();
  require(grid.dims() == g[0].dim(), "grid dimension must match the Gaussians", "/grid");
  const long n = grid.size();
  for (int j = 0; j < 3; ++j) {
    s.values[j].resize(n);
    for (long i = 0; i < n; ++i) s.values[j](i) = g[j](grid.point(i));
  }
  return s;
}

std::string base64_encode(const std::vector<unsigned char>& bytes) {
  using namespace boost::archive::iterators;
  using It = base64_from_binary<transform_width<std::vector<unsigned char>::const_iterator, 6, 8>>;
  std::string out(It(bytes.begin()), It(bytes.end()));
  out.append((3 - bytes.size() % 3) % 3, '=');
  return out;
}

std::vector<unsigned char> base64_decode(const std::string& text) {
  using namespace boost::archive::iterators;
  using It = transform_width<binary_from_base64<std::string::const_iterator>, 8, 6>;
  std::string body = text;
  std::size_t pad = 0;
  while (!body.empty() && body.back() == '=') {
    body.pop_back();
    ++pad;
  }
  require(pad <= 2 && (body.size() + pad) % 4 == 0, "malformed base64 payload");
  std::vector<unsigned char> out;
  try {
    out.assign(It(body.begin()), It(body.end()));
  } catch (const std::exception&) {
    raise(ErrorCode::validation, "malformed base64 payload");
  }
  // transform_width emits the partial trailing byte(s) implied by padding
  out.resize(body.size() * 6 / 8);
  return out;
}

namespace {

std::vector<unsigned char> pack(const CVec& v) {
  std::vector<unsigned char> bytes(static_cast<std::size_t>(v.size()) * 16);
  for (long i = 0; i < v.size(); ++i) {
    const double parts[2] = {v(i).real(), v(i).imag()};
    for (int k = 0; k < 2; ++k) {
      auto bits = std::bit_cast<std::uint64_t>(parts[k]);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      std::memcpy(&bytes[static_cast<std::size_t>(i) * 16 + k * 8], &bits, 8);
    }
  }
  return bytes;
}

CVec unpack(const std::vector<unsigned char>& bytes, long expected, const std::string& path) {
  require(bytes.size() == static_cast<std::size_t>(expected) * 16, "payload size does not match the grid", path);
  CVec v(expected);
  for (long i = 0; i < expected; ++i) {
    double parts[2];
    for (int k = 0; k < 2; ++k) {
      std::uint64_t bits;
      std::memcpy(&bits, &bytes[static_cast<std::size_t>(i) * 16 + k * 8], 8);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      parts[k] = std::bit_cast<double>(bits);
    }
    v(i) = cdouble(parts[0], parts[1]);
  }
  return v;
}

}  // namespace

std::string serialize(const SampledTriple& s) {
  s.validate();
  json doc;
  doc["format"] = "sharpyoung-sampled-triple";
  doc["version"] = 1;
  doc["d"] = s.d;
  doc["p"] = {s.p[0].str(), s.p[1].str(), s.p[2].str()};
  doc["grid"]["nodes"] = s.grid.nodes;
  doc["grid"]["center"] = std::vector<double>(s.grid.center.data(), s.grid.center.data() + s.grid.dims());
  doc["grid"]["half_widths"] =
      std::vector<double>(s.grid.half_widths.data(), s.grid.half_widths.data() + s.grid.dims());
  doc["layout"] = "row-major, last axis (t) fastest";
  doc["encoding"] = "base64 little-endian float64, interleaved re/im";
  for (int j = 0; j < 3; ++j) doc["payload"].push_back(base64_encode(pack(s.values[j])));
  return doc.dump();
}

SampledTriple deserialize_sampled_triple(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    raise(ErrorCode::validation, std::string("sampled triple is not valid JSON: ") + e.what());
  }
  try {
    require(doc.value("format", "") == "sharpyoung-sampled-triple", "not a sampled-triple file", "/format");
    require(doc.value("version", 0) == 1, "unsupported sampled-triple version", "/version");
    SampledTriple s;
    s.d = doc.at("d").get<int>();
    require(s.d >= 1, "d must be positive", "/d");
    const auto& p = doc.at("p");
    require(p.is_array() && p.size() == 3, "p must list three exponents", "/p");
    for (int j = 0; j < 3; ++j) s.p[j] = Exponent::parse(p[j].get<std::string>());
    s.grid.nodes = doc.at("grid").at("nodes").get<std::vector<int>>();
    const auto c = doc.at("grid").at("center").get<std::vector<double>>();
    const auto h = doc.at("grid").at("half_widths").get<std::vector<double>>();
    s.grid.center = Eigen::Map<const Vec>(c.data(), static_cast<long>(c.size()));
    s.grid.half_widths = Eigen::Map<const Vec>(h.data(), static_cast<long>(h.size()));
    s.grid.validate();
    require(s.grid.dims() == 2 * s.d + 1, "grid dimension must be 2d+1", "/grid");
    const auto& payload = doc.at("payload");
    require(payload.is_array() && payload.size() == 3, "payload must hold three functions", "/payload");
    for (int j = 0; j < 3; ++j) {
      const std::string path = "/payload/" + std::to_string(j);
      s.values[j] = unpack(base64_decode(payload[j].get<std::string>()), s.grid.size(), path);
    }
    s.validate();
    return s;
  } catch (const json::exception& e) {
    raise(ErrorCode::validation, std::string("malformed sampled-triple header: ") + e.what());
  }
}

}  // namespace sharpyoung
