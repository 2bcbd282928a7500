#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pythag/triples.hpp"
#include "pythag/types.hpp"

namespace pythag {

struct Violation {
  enum class Reason { Monochromatic, UncoloredVertex };
  Triple triple;
  Reason reason = Reason::Monochromatic;
};

// Independent check of a coloring against every triple with hypotenuse
// <= bound: the triples are re-enumerated here with a quadratic a,b scan --
// a code path separate from the Dickson generator -- so a generation bug
// cannot certify its own output. Empty result = valid.
std::vector<Violation> verify(UpperBound, const Coloring&);

// Integers appearing in some triple with hypotenuse <= bound (same
// independent enumeration).
std::vector<int> occurring_integers(UpperBound);

struct Pixmap {
  int width = 0;
  int height = 0;
  std::vector<unsigned char> rgb;  // row-major, 3 bytes per cell
};

// One cell per integer 1..bound: n sits in column (n-1)/h, climbing the
// column bottom-up at row (n-1) mod h. Grey = false, black = true, white =
// occurs in no triple. Cells past the bound in the last column stay white.
Pixmap render(UpperBound, const Coloring&, int column_height);

int default_column_height(UpperBound);  // ceil(sqrt(bound))

// Binary portable pixmap (P6, 8-bit RGB), one pixel per cell.
std::string ppm_bytes(const Pixmap&);
void write_ppm(const Pixmap&, const std::filesystem::path&);

std::string violations_to_json(const std::vector<Violation>&);
std::string coloring_to_json(const Coloring&);
Coloring coloring_from_json(const std::string& text);
void save_coloring(const Coloring&, const std::filesystem::path&);
Coloring load_coloring(const std::filesystem::path&);

}  // namespace pythag
