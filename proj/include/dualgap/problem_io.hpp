#pragma once

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dualgap/model.hpp"

// Line-oriented problem format. One directive per line, '#' starts a comment,
// blank lines ignored. Coefficient tokens are spaceless quad literals, e.g.
// 1/2, -sqrt(2), 3-2*sqrt(2).
//
//   problem <name>
//   dim <n>
//   surd <d>                     optional, default 2
//   min <tok> x n
//   row <tok> x n  <=|>=|=  <tok>
//   lattice poly|finite|union
//   nonneg all | <idx>...        inside the lattice section
//   point <int> x n              finite lattice
//   lrow <tok> x n  <=|>=|=  <tok>   poly lattice, or inside piece/endpiece
//   piece / endpiece             union lattice

namespace dualgap {

inline std::string to_token(const Quad& q) {
  std::string s = to_string(q), out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) {
    if (w[0] == '#') break;
    out.push_back(w);
  }
  return out;
}

inline long parse_int(const std::string& w, int line) {
  try {
    size_t pos = 0;
    long v = std::stol(w, &pos);
    if (pos == w.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("expected an integer, got '" + w + "'", line);
}

inline BigInt parse_bigint(const std::string& w, int line) {
  bool ok = !w.empty();
  size_t at = (w[0] == '-' || w[0] == '+') ? 1 : 0;
  ok = ok && at < w.size();
  for (size_t i = at; i < w.size(); ++i) ok = ok && std::isdigit(static_cast<unsigned char>(w[i]));
  if (!ok) throw ParseError("expected an integer, got '" + w + "'", line);
  std::string digits = w.substr(at);
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  BigInt v(digits);  // stripped above: cpp_int reads 0-prefix as octal
  return w[0] == '-' ? BigInt(-v) : v;
}

inline Sense parse_sense(const std::string& w, int line) {
  if (w == ">=") return Sense::Ge;
  if (w == "<=") return Sense::Le;
  if (w == "=") return Sense::Eq;
  throw ParseError("expected <=, >= or =, got '" + w + "'", line);
}

inline Row parse_row_tokens(const std::vector<std::string>& toks, size_t from, int n, long d,
                           int line) {
  if (static_cast<int>(toks.size() - from) != n + 2)
    throw ParseError("row needs " + std::to_string(n) + " coefficients, a sense and a rhs", line);
  Row r;
  for (int i = 0; i < n; ++i) r.coeffs.push_back(parse_quad(toks[from + i], d, line));
  r.sense = parse_sense(toks[from + n], line);
  r.rhs = parse_quad(toks[from + n + 1], d, line);
  return r;
}

}  // namespace detail

inline Problem read_problem(std::istream& in) {
  Problem p;
  p.n = 0;
  bool saw_dim = false, saw_min = false, in_lattice = false, in_piece = false;
  LatticeSetSpec& ls = p.lattice;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto toks = detail::split_ws(line);
    if (toks.empty()) continue;
    const std::string& head = toks[0];
    auto need_dim = [&] {
      if (!saw_dim) throw ParseError("'" + head + "' before dim", lineno);
    };
    if (head == "problem") {
      p.name = toks.size() > 1 ? toks[1] : "";
    } else if (head == "dim") {
      if (toks.size() != 2) throw ParseError("dim needs one argument", lineno);
      p.n = static_cast<int>(detail::parse_int(toks[1], lineno));
      if (p.n <= 0) throw ParseError("dim must be positive", lineno);
      saw_dim = true;
    } else if (head == "surd") {
      if (toks.size() != 2) throw ParseError("surd needs one argument", lineno);
      p.d = detail::parse_int(toks[1], lineno);
      if (!is_square_free(p.d)) throw ParseError("surd index must be square-free", lineno);
    } else if (head == "min") {
      need_dim();
      if (static_cast<int>(toks.size()) != p.n + 1)
        throw ParseError("min needs " + std::to_string(p.n) + " coefficients", lineno);
      for (int i = 0; i < p.n; ++i) p.objective.push_back(parse_quad(toks[1 + i], p.d, lineno));
      saw_min = true;
    } else if (head == "row") {
      need_dim();
      if (in_lattice) throw ParseError("coupling row inside lattice section", lineno);
      p.coupling.rows.push_back(detail::parse_row_tokens(toks, 1, p.n, p.d, lineno));
    } else if (head == "lattice") {
      need_dim();
      if (in_lattice) throw ParseError("duplicate lattice directive", lineno);
      if (toks.size() != 2) throw ParseError("lattice needs a kind", lineno);
      if (toks[1] == "poly")
        ls.kind = LatticeSetSpec::Kind::PolyLattice;
      else if (toks[1] == "finite")
        ls.kind = LatticeSetSpec::Kind::FiniteList;
      else if (toks[1] == "union")
        ls.kind = LatticeSetSpec::Kind::UnionConvLattice;
      else
        throw ParseError("unknown lattice kind '" + toks[1] + "'", lineno);
      in_lattice = true;
      if (ls.kind == LatticeSetSpec::Kind::PolyLattice) ls.pieces.emplace_back();
    } else if (head == "nonneg") {
      if (!in_lattice) throw ParseError("nonneg outside lattice section", lineno);
      ls.nonneg.assign(p.n, false);
      if (toks.size() == 2 && toks[1] == "all") {
        ls.nonneg.assign(p.n, true);
      } else {
        for (size_t i = 1; i < toks.size(); ++i) {
          long idx = detail::parse_int(toks[i], lineno);
          if (idx < 0 || idx >= p.n) throw ParseError("nonneg index out of range", lineno);
          ls.nonneg[static_cast<size_t>(idx)] = true;
        }
      }
    } else if (head == "point") {
      if (!in_lattice || ls.kind != LatticeSetSpec::Kind::FiniteList)
        throw ParseError("point only valid in a finite lattice", lineno);
      if (static_cast<int>(toks.size()) != p.n + 1)
        throw ParseError("point needs " + std::to_string(p.n) + " integers", lineno);
      Point q;
      for (int i = 0; i < p.n; ++i) q.push_back(detail::parse_bigint(toks[1 + i], lineno));
      ls.points.push_back(q);
    } else if (head == "lrow") {
      if (!in_lattice) throw ParseError("lrow outside lattice section", lineno);
      if (ls.kind == LatticeSetSpec::Kind::FiniteList)
        throw ParseError("lrow invalid in a finite lattice", lineno);
      if (ls.kind == LatticeSetSpec::Kind::UnionConvLattice && !in_piece)
        throw ParseError("lrow outside piece in a union lattice", lineno);
      ls.pieces.back().rows.push_back(detail::parse_row_tokens(toks, 1, p.n, p.d, lineno));
    } else if (head == "piece") {
      if (!in_lattice || ls.kind != LatticeSetSpec::Kind::UnionConvLattice)
        throw ParseError("piece only valid in a union lattice", lineno);
      if (in_piece) throw ParseError("nested piece", lineno);
      ls.pieces.emplace_back();
      in_piece = true;
    } else if (head == "endpiece") {
      if (!in_piece) throw ParseError("endpiece without piece", lineno);
      in_piece = false;
    } else {
      throw ParseError("unknown directive '" + head + "'", lineno);
    }
  }
  if (in_piece) throw ParseError("unterminated piece", lineno);
  if (!saw_dim) throw ParseError("missing dim", lineno);
  if (!saw_min) throw ParseError("missing min", lineno);
  if (!in_lattice) throw ParseError("missing lattice", lineno);
  p.coupling.dim = p.n;
  ls.dim = p.n;
  for (ConstraintSystem& cs : ls.pieces) cs.dim = p.n;
  validate(p);
  return p;
}

inline Problem read_problem(const std::string& text) {
  std::istringstream in(text);
  return read_problem(in);
}

inline void write_problem(std::ostream& out, const Problem& p) {
  if (!p.name.empty()) out << "problem " << p.name << "\n";
  out << "dim " << p.n << "\n";
  if (p.d != 2) out << "surd " << p.d << "\n";
  out << "min";
  for (const Quad& q : p.objective) out << ' ' << to_token(q);
  out << "\n";
  auto put_row = [&out](const char* head, const Row& r) {
    out << head;
    for (const Quad& q : r.coeffs) out << ' ' << to_token(q);
    out << ' ' << to_symbol(r.sense) << ' ' << to_token(r.rhs) << "\n";
  };
  for (const Row& r : p.coupling.rows) put_row("row", r);
  const LatticeSetSpec& ls = p.lattice;
  switch (ls.kind) {
    case LatticeSetSpec::Kind::FiniteList: out << "lattice finite\n"; break;
    case LatticeSetSpec::Kind::PolyLattice: out << "lattice poly\n"; break;
    case LatticeSetSpec::Kind::UnionConvLattice: out << "lattice union\n"; break;
  }
  bool any_flag = false;
  for (bool f : ls.nonneg) any_flag = any_flag || f;
  if (any_flag) {
    bool all = true;
    for (bool f : ls.nonneg) all = all && f;
    out << "nonneg";
    if (all) {
      out << " all";
    } else {
      for (size_t i = 0; i < ls.nonneg.size(); ++i)
        if (ls.nonneg[i]) out << ' ' << i;
    }
    out << "\n";
  }
  if (ls.kind == LatticeSetSpec::Kind::FiniteList) {
    for (const Point& q : ls.points) {
      out << "point";
      for (const BigInt& v : q) out << ' ' << v.str();
      out << "\n";
    }
  } else if (ls.kind == LatticeSetSpec::Kind::PolyLattice) {
    for (const Row& r : ls.pieces[0].rows) put_row("lrow", r);
  } else {
    for (const ConstraintSystem& cs : ls.pieces) {
      out << "piece\n";
      for (const Row& r : cs.rows) put_row("lrow", r);
      out << "endpiece\n";
    }
  }
}

inline std::string write_problem(const Problem& p) {
  std::ostringstream out;
  write_problem(out, p);
  return out.str();
}

}  // namespace dualgap
