#include "pythag/triples.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pythag/numeric.hpp"

namespace pythag {

bool is_pythagorean(int a, int b, int c) {
  if (!(0 < a && a < b && b < c)) return false;
  auto aa = static_cast<std::int64_t>(a) * a;
  auto bb = static_cast<std::int64_t>(b) * b;
  auto cc = static_cast<std::int64_t>(c) * c;
  return aa + bb == cc;
}

std::vector<Triple> enumerate_triples(UpperBound bound) {
  const int n = bound.n;
  std::set<Triple> out;
  // Every triple a < b < c corresponds to exactly one (s, t) with
  // s = c-b, t = c-a, r = a+b-c and r^2 = 2st. z grows with t for fixed s,
  // so the inner loop may stop at the first integral point past the bound.
  for (int s = 1; 2 * s + 2 <= n; ++s) {
    for (int t = s + 1; s + t + 1 <= n; ++t) {
      std::uint64_t r = 0;
      if (!is_perfect_square(2ull * static_cast<std::uint64_t>(s) * t, r)) continue;
      long long z = static_cast<long long>(r) + s + t;
      if (z > n) break;
      int x = static_cast<int>(r) + s;
      int y = static_cast<int>(r) + t;
      out.insert(Triple{x, y, static_cast<int>(z)});
    }
  }
  return {out.begin(), out.end()};
}

std::vector<Triple> enumerate_primitive(UpperBound bound) {
  std::vector<Triple> prim;
  for (const Triple& t : enumerate_triples(bound))
    if (gcd3(t.a, t.b, t.c) == 1) prim.push_back(t);
  return prim;
}

std::string triples_to_json(const std::vector<Triple>& list) {
  nlohmann::json j = nlohmann::json::array();
  for (const Triple& t : list) j.push_back({t.a, t.b, t.c});
  return j.dump();
}

std::vector<Triple> triples_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("triple list is not valid JSON: ") + e.what());
  }
  if (!j.is_array()) throw std::runtime_error("triple list must be a JSON array");
  std::vector<Triple> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() ||
        !item[1].is_number_integer() || !item[2].is_number_integer())
      throw std::runtime_error("each triple must be a 3-element integer array");
    Triple t{item[0].get<int>(), item[1].get<int>(), item[2].get<int>()};
    if (!is_pythagorean(t.a, t.b, t.c)) {
      std::ostringstream msg;
      msg << "not a Pythagorean triple: [" << t.a << "," << t.b << "," << t.c << "]";
      throw std::runtime_error(msg.str());
    }
    out.push_back(t);
  }
  return out;
}

void save_triples(const std::vector<Triple>& list, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
  f << triples_to_json(list) << '\n';
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::vector<Triple> load_triples(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return triples_from_json(buf.str());
}

}  // namespace pythag
