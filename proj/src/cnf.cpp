#include "pythag/cnf.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace pythag {

int RemapTable::var_of(int orig) const {
  auto it = forward.find(orig);
  if (it == forward.end()) {
    std::ostringstream msg;
    msg << "integer " << orig << " is not in the remap table";
    throw std::invalid_argument(msg.str());
  }
  return it->second;
}

int RemapTable::original_of(int var) const {
  if (var < 1 || var > size()) {
    std::ostringstream msg;
    msg << "variable " << var << " out of range [1," << size() << "]";
    throw std::invalid_argument(msg.str());
  }
  return original[var - 1];
}

std::string RemapTable::to_json() const {
  // Same shape as the generator's remap dictionary: {"3": 1, "4": 2, ...}
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [orig, var] : forward) j[std::to_string(orig)] = var;
  return j.dump();
}

RemapTable RemapTable::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object()) throw std::runtime_error("remap table must be a JSON object");
  RemapTable table;
  for (const auto& [key, value] : j.items()) {
    if (!value.is_number_integer())
      throw std::runtime_error("remap values must be integers");
    table.forward[std::stoi(key)] = value.get<int>();
  }
  table.original.resize(table.forward.size());
  for (const auto& [orig, var] : table.forward) {
    if (var < 1 || var > static_cast<int>(table.original.size()))
      throw std::runtime_error("remap variables must be consecutive from 1");
    table.original[var - 1] = orig;
  }
  return table;
}

std::pair<CnfDocument, RemapTable> encode(const TripleSystem& sys, UpperBound bound) {
  RemapTable table;
  int next = 1;
  for (int v : sys.vertices()) {
    table.forward[v] = next++;
    table.original.push_back(v);
  }

  CnfDocument doc;
  doc.comments.push_back(std::to_string(bound.n));
  doc.var_count = table.size();
  doc.clauses.reserve(2 * sys.edges().size());
  for (const Edge& e : sys.edges()) {
    int i = table.forward[e[0]], j = table.forward[e[1]], k = table.forward[e[2]];
    doc.clauses.push_back({i, j, k});
    doc.clauses.push_back({-i, -j, -k});
  }
  return {std::move(doc), std::move(table)};
}

std::vector<std::pair<Cube, CnfDocument>> split(const CnfDocument& doc,
                                                const RemapTable& table,
                                                const std::vector<int>& specials) {
  if (specials.empty()) throw std::invalid_argument("need at least one special vertex");
  std::vector<int> vars;
  vars.reserve(specials.size());
  for (int orig : specials) vars.push_back(table.var_of(orig));

  const int m = static_cast<int>(specials.size());
  std::vector<std::pair<Cube, CnfDocument>> out;
  out.reserve(std::size_t{1} << m);
  for (std::uint64_t q = 0; q < (std::uint64_t{1} << m); ++q) {
    Cube cube;
    CnfDocument copy = doc;
    for (int j = 0; j < m; ++j) {
      bool value = ((q >> (m - 1 - j)) & 1) != 0;
      cube.assignments.emplace_back(specials[j], value);
      int lit = value ? vars[j] : -vars[j];
      copy.clauses.push_back({lit, lit, lit});
    }
    out.emplace_back(std::move(cube), std::move(copy));
  }
  return out;
}

std::string emit(const CnfDocument& doc) {
  std::ostringstream out;
  for (const std::string& c : doc.comments) out << "c " << c << '\n';
  out << "p cnf " << doc.var_count << ' ' << doc.clause_count() << '\n';
  for (const auto& clause : doc.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfDocument parse(const std::string& text) {
  CnfDocument doc;
  bool saw_header = false;
  int declared_clauses = 0;
  std::vector<int> current;
  bool in_clause = false;

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();  // CRLF input
    if (line.empty()) continue;
    if (line[0] == 'c') {
      doc.comments.push_back(line.size() > 1 ? line.substr(line[1] == ' ' ? 2 : 1)
                                             : std::string());
      continue;
    }
    if (line[0] == 'p') {
      std::istringstream hdr(line);
      std::string p, fmt;
      if (!(hdr >> p >> fmt >> doc.var_count >> declared_clauses) || fmt != "cnf" ||
          doc.var_count < 0 || declared_clauses < 0)
        throw std::runtime_error("malformed DIMACS header: " + line);
      std::string rest;
      if (hdr >> rest) throw std::runtime_error("malformed DIMACS header: " + line);
      if (saw_header) throw std::runtime_error("duplicate DIMACS header");
      saw_header = true;
      continue;
    }
    if (!saw_header) throw std::runtime_error("clause before DIMACS header");
    std::istringstream body(line);
    int lit;
    while (body >> lit) {
      if (lit == 0) {
        doc.clauses.push_back(current);
        current.clear();
        in_clause = false;
      } else {
        if (std::abs(lit) > doc.var_count) {
          std::ostringstream msg;
          msg << "literal " << lit << " out of range for " << doc.var_count
              << " variables";
          throw std::runtime_error(msg.str());
        }
        current.push_back(lit);
        in_clause = true;
      }
    }
    if (!body.eof()) throw std::runtime_error("non-integer token in clause: " + line);
  }
  if (!saw_header) throw std::runtime_error("missing DIMACS header");
  if (in_clause) throw std::runtime_error("clause without terminating 0");
  if (doc.clause_count() != declared_clauses) {
    std::ostringstream msg;
    msg << "header declares " << declared_clauses << " clauses but body has "
        << doc.clause_count();
    throw std::runtime_error(msg.str());
  }
  return doc;
}

Coloring decode_model(const std::vector<int>& model, const RemapTable& table) {
  std::vector<int> sign(table.size() + 1, 0);
  for (int lit : model) {
    if (lit == 0) continue;
    int var = std::abs(lit);
    if (var <= table.size()) sign[var] = lit > 0 ? 1 : -1;
  }
  Coloring coloring;
  for (int var = 1; var <= table.size(); ++var) {
    if (sign[var] == 0) {
      std::ostringstream msg;
      msg << "model leaves variable " << var << " unassigned";
      throw std::invalid_argument(msg.str());
    }
    coloring[table.original_of(var)] = sign[var] > 0;
  }
  return coloring;
}

}  // namespace pythag
