#include <doctest.h>

#include <cmath>
#include <cstring>
#include <functional>
#include <limits>
#include <string>

#include "sharpyoung/error.hpp"
#include "sharpyoung/pipeline.hpp"
#include "sharpyoung/sampled_triple.hpp"

#include <json.hpp>

using namespace sharpyoung;

namespace {

std::vector<unsigned char> bytes(const std::string& s) { return {s.begin(), s.end()}; }

std::array<Exponent, 3> three_halves() {
  return {Exponent::finite(1.5), Exponent::finite(1.5), Exponent::finite(1.5)};
}

SampledTriple small_sample() {
  const auto dt = make_diffuse_triple(three_halves(), 0.1);
  return sample_triple(dt.triple, three_halves(), auto_grid(dt.triple, three_halves(), 9, 11));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::budget;
}

}  // namespace

TEST_CASE("base64 matches the standard test vectors") {
  const std::pair<const char*, const char*> vectors[] = {{"", ""},         {"f", "Zg=="},         {"fo", "Zm8="},
                                                         {"foo", "Zm9v"},  {"foob", "Zm9vYg=="},  {"fooba", "Zm9vYmE="},
                                                         {"foobar", "Zm9vYmFy"}};
  for (const auto& [plain, encoded] : vectors) {
    CHECK(base64_encode(bytes(plain)) == encoded);
    CHECK(base64_decode(encoded) == bytes(plain));
  }
  std::vector<unsigned char> all(256);
  for (int i = 0; i < 256; ++i) all[i] = static_cast<unsigned char>(i);
  CHECK(base64_decode(base64_encode(all)) == all);
  CHECK_THROWS_AS(base64_decode("Zm9"), Error);
  CHECK_THROWS_AS(base64_decode("Zm9v!==="), Error);
}

TEST_CASE("grid geometry") {
  GridSpec g{{3, 5}, Vec::Zero(2), Vec::Ones(2)};
  CHECK(g.size() == 15);
  CHECK(g.step(1) == 0.5);
  CHECK(g.coord(0, 0) == -1.0);
  CHECK(g.coord(1, 4) == 1.0);
  // Last axis fastest.
  CHECK(g.point(1)(1) == -0.5);
  CHECK(g.point(5)(0) == 0.0);
  CHECK(g.point(5)(1) == -1.0);
}

TEST_CASE("sampling reproduces the Gaussians at grid points") {
  const auto dt = make_diffuse_triple(three_halves(), 0.1);
  const SampledTriple s = small_sample();
  CHECK(s.d == 1);
  for (int j = 0; j < 3; ++j)
    for (long i = 0; i < s.grid.size(); i += 37) CHECK(s.values[j](i) == dt.triple[j](s.grid.point(i)));
}

TEST_CASE("serialization round-trips bitwise") {
  SampledTriple s = small_sample();
  s.values[1](3) = cdouble(-0.0, 1e-310);
  s.values[2](0) = cdouble(std::nextafter(1.0, 2.0), -std::numeric_limits<double>::max());
  const SampledTriple back = deserialize_sampled_triple(serialize(s));
  CHECK(back.d == s.d);
  CHECK(back.grid.nodes == s.grid.nodes);
  CHECK(back.grid.center == s.grid.center);
  CHECK(back.grid.half_widths == s.grid.half_widths);
  for (int j = 0; j < 3; ++j) {
    CHECK(back.p[j].value == s.p[j].value);
    REQUIRE(back.values[j].size() == s.values[j].size());
    CHECK(std::memcmp(back.values[j].data(), s.values[j].data(), sizeof(cdouble) * s.values[j].size()) == 0);
  }
  CHECK(serialize(back) == serialize(s));
}

TEST_CASE("malformed files are rejected with a path") {
  const std::string good = serialize(small_sample());
  auto path_of = [](const std::string& text) -> std::string {
    try {
      deserialize_sampled_triple(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::validation);
      return e.path();
    }
    return "no error";
  };
  auto edited = [&](auto&& edit) {
    auto doc = nlohmann::json::parse(good);
    edit(doc);
    return doc.dump();
  };
  CHECK(path_of("{") == "");
  CHECK(path_of(edited([](auto& d) { d["format"] = "other"; })) == "/format");
  CHECK(path_of(edited([](auto& d) { d["grid"]["nodes"][1] = 2; })) == "/grid/nodes/1");
  CHECK(path_of(edited([](auto& d) { d["grid"]["half_widths"][0] = -1.0; })) == "/grid/half_widths/0");
  CHECK(path_of(edited([](auto& d) { d["d"] = 2; })) == "/grid");
  CHECK(path_of(edited([](auto& d) { d["payload"][2] = "AAAA"; })) == "/payload/2");
  CHECK(path_of(edited([](auto& d) { d["payload"].erase(2); })) == "/payload");
}

TEST_CASE("grid validation") {
  GridSpec g{{3, 3, 3}, Vec::Zero(3), Vec::Ones(3)};
  CHECK_NOTHROW(g.validate());
  GridSpec few = g;
  few.nodes[2] = 2;
  CHECK(code_of([&] { few.validate(); }) == ErrorCode::validation);
  GridSpec huge = g;
  huge.nodes = {1000, 1000, 1000};
  CHECK(code_of([&] { huge.validate(); }) == ErrorCode::validation);
  GridSpec mismatch = g;
  mismatch.center = Vec::Zero(2);
  CHECK(code_of([&] { mismatch.validate(); }) == ErrorCode::validation);
  const auto dt = make_diffuse_triple(three_halves(), 0.1);
  GridSpec wrong{{3, 3}, Vec::Zero(2), Vec::Ones(2)};
  CHECK(code_of([&] { sample_triple(dt.triple, three_halves(), wrong); }) == ErrorCode::validation);
}

TEST_CASE("auto grid covers every function") {
  const auto dt = make_diffuse_triple(three_halves(), 0.1);
  const GridSpec g = auto_grid(dt.triple, three_halves(), 33, 65);
  CHECK(g.nodes == std::vector<int>{33, 33, 65});
  for (int j = 0; j < 3; ++j) {
    const Mat cov = (3.0 * dt.triple[j].Q).inverse();
    for (int k = 0; k < 3; ++k) CHECK(g.half_widths(k) >= 6.0 * std::sqrt(cov(k, k)) - 1e-12);
  }
}
