#pragma once

#include <compare>
#include <filesystem>
#include <string>
#include <vector>

namespace pythag {

// A Pythagorean triple a < b < c with a^2 + b^2 = c^2.
struct Triple {
  int a = 0;
  int b = 0;
  int c = 0;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

// Inclusive cap on the hypotenuse.
struct UpperBound {
  int n = 1;
};

bool is_pythagorean(int a, int b, int c);

// All triples with c <= bound.n via Dickson's parameterization
// (r^2 = 2st, x = r+s, y = r+t, z = r+s+t), sorted lexicographically,
// no duplicates. Bounds of 4 or less yield an empty list.
std::vector<Triple> enumerate_triples(UpperBound bound);

// The gcd(a,b,c) = 1 subset of enumerate_triples(bound).
std::vector<Triple> enumerate_primitive(UpperBound bound);

// Triple-list file format: a JSON array of 3-element integer arrays,
// e.g. [[3,4,5],[6,8,10]]. Loading validates the Triple invariants.
std::string triples_to_json(const std::vector<Triple>&);
std::vector<Triple> triples_from_json(const std::string& text);
void save_triples(const std::vector<Triple>&, const std::filesystem::path&);
std::vector<Triple> load_triples(const std::filesystem::path&);

}  // namespace pythag
