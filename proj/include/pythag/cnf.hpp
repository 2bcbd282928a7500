#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "pythag/hypergraph.hpp"
#include "pythag/types.hpp"

namespace pythag {

// Bijection between the original integers and consecutive DIMACS variables,
// assigned 1..n in ascending integer order.
struct RemapTable {
  std::map<int, int> forward;  // original integer -> variable
  std::vector<int> original;   // original[v-1] = integer mapped to variable v

  int var_of(int orig) const;
  int original_of(int var) const;
  int size() const { return static_cast<int>(original.size()); }

  std::string to_json() const;
  static RemapTable from_json(const std::string& text);
};

struct CnfDocument {
  std::vector<std::string> comments;      // text after "c ", emitted first
  int var_count = 0;
  std::vector<std::vector<int>> clauses;  // signed DIMACS literals

  int clause_count() const { return static_cast<int>(clauses.size()); }
};

// Truth assignments for the special vertices of one split instance,
// in plan order.
struct Cube {
  std::vector<std::pair<int, bool>> assignments;  // (original integer, value)
};

// Two clauses per edge {i,j,k}: all-positive then all-negative, edges taken
// in lexicographic order; header "p cnf <vars> <clauses>", one comment line
// carrying the bound.
std::pair<CnfDocument, RemapTable> encode(const TripleSystem&, UpperBound);

// 2^m copies of the document, one per assignment of the special vertices
// (all sign patterns, binary order: cube index bit j, MSB first, gives the
// value of specials[j]). Each copy appends one tripled unit clause
// "x x x 0" / "-x -x -x 0" per special; the header clause count grows by m.
std::vector<std::pair<Cube, CnfDocument>> split(const CnfDocument&,
                                                const RemapTable&,
                                                const std::vector<int>& specials);

std::string emit(const CnfDocument&);
CnfDocument parse(const std::string& text);

// Original integer n is colored true iff its variable is positive in the
// model; integers outside the table stay uncolored. The model must cover
// every variable of the table.
Coloring decode_model(const std::vector<int>& model, const RemapTable&);

}  // namespace pythag
