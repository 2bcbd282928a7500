#include "pythag/verify_render.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "pythag/numeric.hpp"

namespace pythag {

namespace {

// Quadratic re-enumeration: for each leg pair (a,b) test whether a^2 + b^2
// is a perfect square within the bound. Deliberately not the Dickson path.
template <typename Fn>
void for_each_triple_quadratic(int bound, Fn&& fn) {
  const auto cap = static_cast<std::uint64_t>(bound) * bound;
  for (int a = 3; a < bound; ++a) {
    auto aa = static_cast<std::uint64_t>(a) * a;
    for (int b = a + 1; b < bound; ++b) {
      auto sum = aa + static_cast<std::uint64_t>(b) * b;
      if (sum > cap) break;  // grows with b
      std::uint64_t c = 0;
      if (!is_perfect_square(sum, c)) continue;
      fn(a, b, static_cast<int>(c));
    }
  }
}

}  // namespace

std::vector<Violation> verify(UpperBound bound, const Coloring& coloring) {
  std::vector<Violation> out;
  for_each_triple_quadratic(bound.n, [&](int a, int b, int c) {
    auto ia = coloring.find(a);
    auto ib = coloring.find(b);
    auto ic = coloring.find(c);
    if (ia == coloring.end() || ib == coloring.end() || ic == coloring.end()) {
      out.push_back({Triple{a, b, c}, Violation::Reason::UncoloredVertex});
      return;
    }
    if (ia->second == ib->second && ib->second == ic->second)
      out.push_back({Triple{a, b, c}, Violation::Reason::Monochromatic});
  });
  return out;
}

std::vector<int> occurring_integers(UpperBound bound) {
  std::vector<bool> seen(static_cast<std::size_t>(bound.n) + 1, false);
  for_each_triple_quadratic(bound.n, [&](int a, int b, int c) {
    seen[a] = seen[b] = seen[c] = true;
  });
  std::vector<int> out;
  for (int v = 1; v <= bound.n; ++v)
    if (seen[v]) out.push_back(v);
  return out;
}

int default_column_height(UpperBound bound) {
  int h = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(bound.n))));
  return std::max(h, 1);
}

Pixmap render(UpperBound bound, const Coloring& coloring, int column_height) {
  if (column_height < 1) throw std::invalid_argument("column height must be positive");
  const int h = column_height;
  const int w = (bound.n + h - 1) / h;

  Pixmap img;
  img.width = w;
  img.height = h;
  img.rgb.assign(static_cast<std::size_t>(w) * h * 3, 255);  // white

  std::vector<bool> occurs(static_cast<std::size_t>(bound.n) + 1, false);
  for (int v : occurring_integers(bound)) occurs[v] = true;

  for (int n = 1; n <= bound.n; ++n) {
    if (!occurs[n]) continue;  // white regardless of any stored color
    auto it = coloring.find(n);
    if (it == coloring.end()) continue;
    int col = (n - 1) / h;
    int row_from_top = h - 1 - ((n - 1) % h);
    std::size_t off = 3 * (static_cast<std::size_t>(row_from_top) * w + col);
    unsigned char value = it->second ? 0 : 128;  // true = black, false = grey
    img.rgb[off] = img.rgb[off + 1] = img.rgb[off + 2] = value;
  }
  return img;
}

std::string ppm_bytes(const Pixmap& img) {
  std::ostringstream out;
  out << "P6\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.rgb.data()),
            static_cast<std::streamsize>(img.rgb.size()));
  return out.str();
}

void write_ppm(const Pixmap& img, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  std::string bytes = ppm_bytes(img);
  f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string violations_to_json(const std::vector<Violation>& violations) {
  nlohmann::json j = nlohmann::json::array();
  for (const Violation& v : violations) {
    nlohmann::json item;
    item["triple"] = {v.triple.a, v.triple.b, v.triple.c};
    item["reason"] = v.reason == Violation::Reason::Monochromatic
                         ? "MONOCHROMATIC"
                         : "UNCOLORED_VERTEX";
    j.push_back(item);
  }
  return j.dump();
}

std::string coloring_to_json(const Coloring& coloring) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [n, value] : coloring) j[std::to_string(n)] = value;
  return j.dump();
}

Coloring coloring_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::runtime_error("coloring must be a JSON object");
  Coloring coloring;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_boolean()) throw std::runtime_error("coloring values must be booleans");
    coloring[std::stoi(key)] = value.get<bool>();
  }
  return coloring;
}

void save_coloring(const Coloring& coloring, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << coloring_to_json(coloring) << '\n';
}

Coloring load_coloring(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << f.rdbuf();
  return coloring_from_json(buf.str());
}

}  // namespace pythag
