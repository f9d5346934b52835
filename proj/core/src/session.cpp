#include "dercat/session.hpp"

#include <functional>
#include <map>
#include <set>
#include <variant>

#include "json.hpp"

#include "dercat/adic.hpp"
#include "dercat/verify.hpp"

namespace dercat {

namespace {

// ---- lexer -------------------------------------------------------------------------

struct Tok {
  enum Kind { ident, number, sym, end } kind = end;
  std::string s;
  long num = 0;
  int line = 1, col = 1;
};

struct Lexer {
  std::vector<Tok> toks;
  std::size_t pos = 0;

  explicit Lexer(const std::string& text) {
    int line = 1, col = 1;
    std::size_t i = 0;
    auto push = [&](Tok t) {
      t.line = line;
      t.col = col;
      toks.push_back(std::move(t));
    };
    while (i < text.size()) {
      char c = text[i];
      if (c == '\n') {
        ++line;
        col = 1;
        ++i;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++col;
        ++i;
        continue;
      }
      if (c == '#') {  // comment to end of line
        while (i < text.size() && text[i] != '\n') ++i;
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
          ++j;
        Tok t;
        t.kind = Tok::ident;
        t.s = text.substr(i, j - i);
        push(t);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        Tok t;
        t.kind = Tok::number;
        t.s = text.substr(i, j - i);
        t.num = std::stol(t.s);
        push(t);
        col += static_cast<int>(j - i);
        i = j;
        continue;
      }
      if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
        Tok t;
        t.kind = Tok::sym;
        t.s = "->";
        push(t);
        i += 2;
        col += 2;
        continue;
      }
      static const std::string singles = ";=()[]{},:^*+-/";
      if (singles.find(c) != std::string::npos) {
        Tok t;
        t.kind = Tok::sym;
        t.s = std::string(1, c);
        push(t);
        ++i;
        ++col;
        continue;
      }
      fail(errc::syntax_error,
           "unexpected character '" + std::string(1, c) + "' at line " + std::to_string(line) + ", column " +
               std::to_string(col));
    }
    Tok t;
    t.kind = Tok::end;
    t.line = line;
    t.col = col;
    toks.push_back(t);
  }

  const Tok& peek(int ahead = 0) const { return toks[std::min(pos + ahead, toks.size() - 1)]; }
  Tok next() { return toks[std::min(pos++, toks.size() - 1)]; }
  bool at_sym(const std::string& s) const { return peek().kind == Tok::sym && peek().s == s; }
  bool at_ident(const std::string& s) const { return peek().kind == Tok::ident && peek().s == s; }
  [[noreturn]] void error(const std::string& what) const {
    const Tok& t = peek();
    fail(errc::syntax_error,
         what + " at line " + std::to_string(t.line) + ", column " + std::to_string(t.col));
  }
  void expect_sym(const std::string& s) {
    if (!at_sym(s)) error("expected '" + s + "'");
    next();
  }
  std::string expect_ident() {
    if (peek().kind != Tok::ident) error("expected an identifier");
    return next().s;
  }
  long expect_number() {
    bool neg = false;
    if (at_sym("-")) {
      next();
      neg = true;
    }
    if (peek().kind != Tok::number) error("expected a number");
    long v = next().num;
    return neg ? -v : v;
  }

  bool adjacent(std::size_t i) const {
    if (i == 0 || i >= toks.size()) return false;
    const Tok& a = toks[i - 1];
    const Tok& b = toks[i];
    return a.line == b.line && a.col + static_cast<int>(a.s.size()) == b.col;
  }

  /// A command word: an identifier possibly continued by tight '-' segments,
  /// e.g. supp-member or rhom-quotient. Spaced minus signs never join.
  std::string read_word() {
    std::string w = expect_ident();
    while (at_sym("-") && adjacent(pos) && peek(1).kind == Tok::ident && adjacent(pos + 1)) {
      next();
      w += "-" + next().s;
    }
    return w;
  }

  /// Canonical re-serialization of a token range: source-adjacent tokens stay
  /// glued, everything else is separated by one space. Stable under
  /// re-lexing, so printed sessions parse back to the same statements byte
  /// for byte.
  std::string slice(std::size_t from, std::size_t to) const {
    std::string out;
    for (std::size_t i = from; i < to; ++i) {
      if (i > from && !adjacent(i)) out += " ";
      out += toks[i].s;
    }
    return out;
  }
};

// ---- worlds ------------------------------------------------------------------------

template <class K>
struct PolyWorld {
  PolyEngine<K> eng;
  std::map<std::string, Ideal<K>> ideals;
  std::map<std::string, std::vector<Poly<K>>> seqs;
  std::map<std::string, FpMod<PolyEngine<K>>> modules;
  std::map<std::string, Complex<PolyEngine<K>>> complexes;
  std::map<std::string, ChainMap<PolyEngine<K>>> maps;
};

struct ZZWorld {
  ZZEngine eng;
  std::map<std::string, FpMod<ZZEngine>> modules;
  std::map<std::string, Complex<ZZEngine>> complexes;
  std::map<std::string, ChainMap<ZZEngine>> maps;
};

using Worlds = std::variant<std::monostate, ZZWorld, PolyWorld<RatField>, PolyWorld<PrimeField>>;

struct State {
  Worlds world;
  std::map<std::string, DvrObject> dvrs;
  std::set<std::string> names;

  void claim(Lexer& lx, const std::string& name) {
    if (names.count(name)) lx.error("name '" + name + "' is already defined");
    names.insert(name);
  }
};

struct CmdOut {
  std::vector<std::string> lines;
  std::vector<std::pair<std::string, std::string>> kv;
  int exit_code = 0;

  void put(const std::string& key, const std::string& value) { kv.emplace_back(key, value); }
  void say(const std::string& line) { lines.push_back(line); }
};

using CommandFn = std::function<void(CmdOut&, const SessionOptions&)>;

// ---- polynomial expression parsing ---------------------------------------------------

template <class K>
Poly<K> parse_poly(Lexer& lx, const PolyRing<K>& R);

template <class K>
Poly<K> parse_poly_atom(Lexer& lx, const PolyRing<K>& R) {
  Poly<K> base;
  if (lx.at_sym("(")) {
    lx.next();
    base = parse_poly(lx, R);
    lx.expect_sym(")");
  } else if (lx.peek().kind == Tok::number) {
    base = R.from_int(lx.next().num);
  } else if (lx.peek().kind == Tok::ident) {
    std::string v = lx.next().s;
    int idx = -1;
    for (int i = 0; i < R.nvars(); ++i)
      if (R.vars[i] == v) idx = i;
    if (idx < 0) lx.error("unknown variable '" + v + "'");
    base = R.var(idx);
  } else {
    lx.error("expected a polynomial atom");
  }
  while (lx.at_sym("^")) {
    lx.next();
    long e = lx.expect_number();
    if (e < 0) lx.error("negative exponent");
    Poly<K> p = R.one();
    for (long i = 0; i < e; ++i) p = R.mul(p, base);
    base = p;
  }
  return base;
}

template <class K>
Poly<K> parse_poly_term(Lexer& lx, const PolyRing<K>& R) {
  bool neg = false;
  while (lx.at_sym("-")) {
    lx.next();
    neg = !neg;
  }
  Poly<K> p = parse_poly_atom(lx, R);
  while (lx.at_sym("*")) {
    lx.next();
    p = R.mul(p, parse_poly_atom(lx, R));
  }
  return neg ? R.neg(p) : p;
}

template <class K>
Poly<K> parse_poly(Lexer& lx, const PolyRing<K>& R) {
  Poly<K> p = parse_poly_term(lx, R);
  while (lx.at_sym("+") || lx.at_sym("-")) {
    bool minus = lx.at_sym("-");
    lx.next();
    auto q = parse_poly_term(lx, R);
    p = minus ? R.sub(p, q) : R.add(p, q);
  }
  return p;
}

Int parse_int_entry(Lexer& lx) {
  bool neg = false;
  while (lx.at_sym("-")) {
    lx.next();
    neg = !neg;
  }
  if (lx.peek().kind != Tok::number) lx.error("expected an integer entry");
  Int v(lx.next().num);
  return neg ? -v : v;
}

template <class W>
auto parse_entry(Lexer& lx, const W& world) {
  if constexpr (std::is_same_v<W, ZZWorld>) {
    return parse_int_entry(lx);
  } else {
    return parse_poly(lx, world.eng.ring);
  }
}

template <class W>
Mat<typename decltype(W::eng)::Elem> parse_matrix(Lexer& lx, const W& world) {
  using E = typename decltype(W::eng)::Elem;
  lx.expect_sym("[");
  std::vector<std::vector<E>> rows;
  if (lx.at_sym("]")) {  // empty matrix
    lx.next();
    return mat_zero(world.eng.ctx(), 0, 0);
  }
  while (true) {
    lx.expect_sym("[");
    std::vector<E> row;
    if (!lx.at_sym("]")) {
      while (true) {
        row.push_back(parse_entry(lx, world));
        if (lx.at_sym(",")) {
          lx.next();
          continue;
        }
        break;
      }
    }
    lx.expect_sym("]");
    rows.push_back(std::move(row));
    if (lx.at_sym(",")) {
      lx.next();
      continue;
    }
    break;
  }
  lx.expect_sym("]");
  return mat_from_rows(world.eng.ctx(), rows);
}

// ---- canonical rendering helpers ------------------------------------------------------

template <class W>
std::string entry_str(const W& world, const typename decltype(W::eng)::Elem& e) {
  if constexpr (std::is_same_v<W, ZZWorld>) {
    return e.get_str();
  } else {
    return world.eng.ring.to_string(e);
  }
}

template <class W>
std::string matrix_str(const W& world, const Mat<typename decltype(W::eng)::Elem>& m) {
  std::string s = "[";
  for (int i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (int j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + entry_str(world, m.at(i, j));
    s += "]";
  }
  return s + "]";
}

template <class K>
std::string ideal_str(const PolyWorld<K>& world, const Ideal<K>& i) {
  std::string s = "(";
  for (std::size_t k = 0; k < i.gens.size(); ++k)
    s += (k ? ", " : "") + world.eng.ring.to_string(i.gens[k]);
  return s + ")";
}

template <class W>
std::string complex_str(const W& world, const Complex<decltype(W::eng)>& x) {
  std::string s = "{ ";
  bool first = true;
  for (auto it = x.ranks.rbegin(); it != x.ranks.rend(); ++it) {
    int deg = it->first;
    if (!first) s += ", ";
    first = false;
    if (x.diffs.count(deg)) {
      s += std::to_string(deg) + ": " + matrix_str(world, x.diffs.at(deg));
    } else {
      s += std::to_string(deg) + ": free " + std::to_string(it->second);
    }
  }
  return s + " }";
}

std::string dvr_expr_str(const DvrObject& o) {
  if (o.is_zero()) return "sum()";
  auto one_str = [](const DvrSummand& s) {
    std::string base;
    switch (s.kind) {
      case DvrKind::free_r: base = "R"; break;
      case DvrKind::frac_q: base = "Q"; break;
      case DvrKind::hull_e: base = "E"; break;
      case DvrKind::torsion: base = "T(" + std::to_string(s.n) + ")"; break;
    }
    if (s.shift != 0) base = "shift(" + std::to_string(s.shift) + ", " + base + ")";
    return base;
  };
  if (o.summands.size() == 1) return one_str(o.summands[0]);
  std::string s = "sum(";
  for (std::size_t i = 0; i < o.summands.size(); ++i) s += (i ? ", " : "") + one_str(o.summands[i]);
  return s + ")";
}

// ---- DVR expression parsing -------------------------------------------------------------

DvrObject parse_dvr_expr(Lexer& lx, const State& st, bool complete) {
  if (lx.peek().kind != Tok::ident) lx.error("expected a DVR expression");
  std::string head = lx.next().s;
  if (head == "R") return dvr_r(0, complete);
  if (head == "Q") return dvr_q(0, complete);
  if (head == "E") return dvr_e(0, complete);
  if (head == "T") {
    lx.expect_sym("(");
    long n = lx.expect_number();
    lx.expect_sym(")");
    return dvr_t(static_cast<int>(n), 0, complete);
  }
  if (head == "shift") {
    lx.expect_sym("(");
    long k = lx.expect_number();
    lx.expect_sym(",");
    auto inner = parse_dvr_expr(lx, st, complete);
    lx.expect_sym(")");
    return dvr_shift(inner, static_cast<int>(k));
  }
  if (head == "sum") {
    lx.expect_sym("(");
    DvrObject acc = dvr_zero(complete);
    if (!lx.at_sym(")")) {
      while (true) {
        acc = dvr_sum(acc, parse_dvr_expr(lx, st, complete));
        if (lx.at_sym(",")) {
          lx.next();
          continue;
        }
        break;
      }
    }
    lx.expect_sym(")");
    return acc;
  }
  if (head == "tensor" || head == "rhom" || head == "gamma" || head == "lambda") {
    lx.expect_sym("(");
    auto a = parse_dvr_expr(lx, st, complete);
    if (head == "gamma" || head == "lambda") {
      lx.expect_sym(")");
      return head == "gamma" ? dvr_gamma(a) : dvr_lambda(a);
    }
    lx.expect_sym(",");
    auto b = parse_dvr_expr(lx, st, complete);
    lx.expect_sym(")");
    return head == "tensor" ? dvr_tensor(a, b) : dvr_rhom(a, b);
  }
  auto it = st.dvrs.find(head);
  if (it != st.dvrs.end()) {
    require(it->second.complete == complete, errc::ambient_mismatch, "mixed ambient completeness flags");
    return it->second;
  }
  lx.error("unknown DVR object '" + head + "'");
}

// ---- command helpers ----------------------------------------------------------------------

template <class K>
Ideal<K> parse_ideal_ref(Lexer& lx, PolyWorld<K>& world) {
  if (lx.at_sym("(")) {
    lx.next();
    std::vector<Poly<K>> gens;
    if (!lx.at_sym(")")) {
      while (true) {
        gens.push_back(parse_poly(lx, world.eng.ring));
        if (lx.at_sym(",")) {
          lx.next();
          continue;
        }
        break;
      }
    }
    lx.expect_sym(")");
    return make_ideal(world.eng.ring, std::move(gens));
  }
  std::string name = lx.expect_ident();
  auto it = world.ideals.find(name);
  if (it == world.ideals.end()) lx.error("unknown ideal '" + name + "'");
  return it->second;
}

/// Named complex, or a named module promoted to its free resolution.
template <class K>
Complex<PolyEngine<K>> parse_complex_ref(Lexer& lx, PolyWorld<K>& world) {
  std::string name = lx.expect_ident();
  if (auto it = world.complexes.find(name); it != world.complexes.end()) return it->second;
  if (auto it = world.modules.find(name); it != world.modules.end())
    return free_resolution(world.eng, it->second, world.eng.ring.nvars() + 2).resolution;
  lx.error("unknown complex or module '" + name + "'");
}

template <class Eng>
std::string invariants_line(const Eng& eng, const FpMod<Eng>& h) {
  return invariants_to_string(module_invariants(eng, h));
}

DegreeWindow parse_window(Lexer& lx) {
  if (lx.at_ident("window")) {
    lx.next();
    long lo = lx.expect_number();
    long hi = lx.expect_number();
    return DegreeWindow{static_cast<int>(lo), static_cast<int>(hi)};
  }
  return DegreeWindow{-4, 4};
}

// ---- parsed document ------------------------------------------------------------------------

struct ImplData {
  std::shared_ptr<State> state = std::make_shared<State>();
  std::vector<std::string> stmts;
  std::vector<CommandFn> commands;
};

template <class W>
void define_module_complex_map(Lexer& lx, ImplData& d, W& world, const std::string& kw) {
  auto& st = *d.state;
  if (kw == "module") {
    std::string name = lx.expect_ident();
    st.claim(lx, name);
    lx.expect_sym("=");
    if (!lx.at_ident("coker")) lx.error("expected 'coker'");
    lx.next();
    auto m = parse_matrix(lx, world);
    lx.expect_sym(";");
    world.modules.emplace(name, presented(world.eng, m));
    d.stmts.push_back("module " + name + " = coker " + matrix_str(world, m) + ";");
    return;
  }
  if (kw == "complex") {
    std::string name = lx.expect_ident();
    st.claim(lx, name);
    lx.expect_sym("=");
    Complex<decltype(world.eng)> x;
    bool built = false;
    if (lx.peek().kind == Tok::ident) {
      std::string head = lx.expect_ident();
      auto named = [&](const std::string& n) -> Complex<decltype(world.eng)> {
        auto it = world.complexes.find(n);
        if (it == world.complexes.end()) lx.error("unknown complex '" + n + "'");
        return it->second;
      };
      if constexpr (!std::is_same_v<W, ZZWorld>) {
        if (head == "koszul") {
          lx.expect_sym("(");
          std::vector<typename decltype(world.eng)::Elem> xs;
          if (!lx.at_sym(")")) {
            while (true) {
              xs.push_back(parse_poly(lx, world.eng.ring));
              if (lx.at_sym(",")) {
                lx.next();
                continue;
              }
              break;
            }
          }
          lx.expect_sym(")");
          x = koszul_complex(world.eng, xs);
          built = true;
        }
      }
      if (!built) {
        if (head == "tensor" || head == "hom") {
          lx.expect_sym("(");
          auto a = named(lx.expect_ident());
          lx.expect_sym(",");
          auto b = named(lx.expect_ident());
          lx.expect_sym(")");
          x = head == "tensor" ? tensor_complexes(a, b) : hom_complexes(a, b);
        } else if (head == "shift") {
          lx.expect_sym("(");
          auto a = named(lx.expect_ident());
          lx.expect_sym(",");
          long k = lx.expect_number();
          lx.expect_sym(")");
          x = shift_complex(a, static_cast<int>(k));
        } else if (head == "cone") {
          lx.expect_sym("(");
          std::string mn = lx.expect_ident();
          lx.expect_sym(")");
          auto it = world.maps.find(mn);
          if (it == world.maps.end()) lx.error("unknown map '" + mn + "'");
          x = cone(it->second);
        } else if (head == "truncate") {
          lx.expect_sym("(");
          auto a = named(lx.expect_ident());
          lx.expect_sym(",");
          long s = lx.expect_number();
          lx.expect_sym(")");
          x = truncate_soft_above(a, static_cast<int>(s));
        } else {
          lx.error("unknown complex constructor '" + head + "'");
        }
      }
    } else {
      lx.expect_sym("{");
      std::map<int, int> ranks;
      std::map<int, Mat<typename decltype(world.eng)::Elem>> diffs;
      if (!lx.at_sym("}")) {
        while (true) {
          long deg = lx.expect_number();
          lx.expect_sym(":");
          if (lx.at_ident("free")) {
            lx.next();
            long r = lx.expect_number();
            if (r < 0) lx.error("negative rank");
            if (r > 0) ranks[static_cast<int>(deg)] = static_cast<int>(r);
          } else {
            auto m = parse_matrix(lx, world);
            int dd = static_cast<int>(deg);
            if (m.cols() > 0) {
              if (ranks.count(dd) && ranks[dd] != m.cols())
                fail(errc::semantic_error, "rank mismatch at degree " + std::to_string(dd));
              ranks[dd] = m.cols();
            }
            if (m.rows() > 0) {
              if (ranks.count(dd - 1) && ranks[dd - 1] != m.rows())
                fail(errc::semantic_error, "rank mismatch at degree " + std::to_string(dd - 1));
              ranks[dd - 1] = m.rows();
            }
            if (m.rows() > 0 && m.cols() > 0) diffs[dd] = m;
          }
          if (lx.at_sym(",")) {
            lx.next();
            continue;
          }
          break;
        }
      }
      lx.expect_sym("}");
      x = make_complex(world.eng, std::move(ranks), std::move(diffs));
    }
    lx.expect_sym(";");
    validate_complex(x);
    world.complexes.emplace(name, x);
    d.stmts.push_back("complex " + name + " = " + complex_str(world, x) + ";");
    return;
  }
  if (kw == "map") {
    std::string name = lx.expect_ident();
    st.claim(lx, name);
    lx.expect_sym(":");
    std::string srcn = lx.expect_ident();
    lx.expect_sym("->");
    std::string dstn = lx.expect_ident();
    lx.expect_sym("=");
    lx.expect_sym("{");
    auto find = [&](const std::string& n) -> Complex<decltype(world.eng)> {
      auto it = world.complexes.find(n);
      if (it == world.complexes.end()) lx.error("unknown complex '" + n + "'");
      return it->second;
    };
    ChainMap<decltype(world.eng)> f{find(srcn), find(dstn), {}};
    if (!lx.at_sym("}")) {
      while (true) {
        long deg = lx.expect_number();
        lx.expect_sym(":");
        f.comps[static_cast<int>(deg)] = parse_matrix(lx, world);
        if (lx.at_sym(",")) {
          lx.next();
          continue;
        }
        break;
      }
    }
    lx.expect_sym("}");
    lx.expect_sym(";");
    validate_chain_map(f);
    std::string lit = "{ ";
    bool first = true;
    for (auto it = f.comps.rbegin(); it != f.comps.rend(); ++it) {
      if (!first) lit += ", ";
      first = false;
      lit += std::to_string(it->first) + ": " + matrix_str(world, it->second);
    }
    lit += " }";
    world.maps.emplace(name, f);
    d.stmts.push_back("map " + name + ": " + srcn + " -> " + dstn + " = " + lit + ";");
    return;
  }
  lx.error("statement '" + kw + "' is not valid for this ring");
}

template <class K>
void define_poly_entities(Lexer& lx, ImplData& d, PolyWorld<K>& world, const std::string& kw) {
  auto& st = *d.state;
  const auto& R = world.eng.ring;
  if (kw == "ideal") {
    std::string name = lx.expect_ident();
    st.claim(lx, name);
    lx.expect_sym("=");
    auto i = parse_ideal_ref(lx, world);
    lx.expect_sym(";");
    std::string lit = ideal_str(world, i);
    world.ideals.emplace(name, with_gb(i));
    d.stmts.push_back("ideal " + name + " = " + lit + ";");
    return;
  }
  if (kw == "seq") {
    std::string name = lx.expect_ident();
    st.claim(lx, name);
    lx.expect_sym("=");
    lx.expect_sym("(");
    std::vector<Poly<K>> xs;
    if (!lx.at_sym(")")) {
      while (true) {
        xs.push_back(parse_poly(lx, R));
        if (lx.at_sym(",")) {
          lx.next();
          continue;
        }
        break;
      }
    }
    lx.expect_sym(")");
    lx.expect_sym(";");
    std::string lit = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) lit += (i ? ", " : "") + R.to_string(xs[i]);
    lit += ")";
    world.seqs.emplace(name, std::move(xs));
    d.stmts.push_back("seq " + name + " = " + lit + ";");
    return;
  }
  define_module_complex_map(lx, d, world, kw);
}

// ---- commands --------------------------------------------------------------------------

template <class K>
bool parse_poly_command(Lexer& lx, ImplData& d, PolyWorld<K>& world, const std::string& kw) {
  auto eng = world.eng;

  if (kw == "supp") {
    auto x = parse_complex_ref(lx, world);
    lx.expect_sym(";");
    d.commands.push_back([eng, x](CmdOut& out, const SessionOptions&) {
      auto s = supp_fg(eng, x);
      auto gb = ideal_groebner(s.defining_ideal);
      std::string ideal = "(";
      for (std::size_t i = 0; i < gb.size(); ++i) ideal += (i ? ", " : "") + eng.ring.to_string(gb[i]);
      ideal += ")";
      out.say("supp = V" + ideal + "  [" + s.provenance + "]");
      out.put("supp.ideal", ideal);
    });
    return true;
  }
  if (kw == "supp-member" || kw == "cosupp-member") {
    bool co = kw == "cosupp-member";
    auto p = parse_ideal_ref(lx, world);
    auto x = parse_complex_ref(lx, world);
    int bound = -1;
    if (lx.at_ident("bound")) {
      lx.next();
      bound = static_cast<int>(lx.expect_number());
    }
    lx.expect_sym(";");
    d.commands.push_back([eng, p, x, co, bound](CmdOut& out, const SessionOptions& opts) {
      auto prime = certify_prime(p);
      auto v = co ? cosupp_membership_maximal(eng, prime, x, bound > 0 ? bound : opts.bound)
                  : supp_membership(eng, prime, x);
      std::string head = co ? "cosupp-member" : "supp-member";
      std::string msg = head + ": " + membership_name(v.member);
      if (v.member == Membership::yes)
        msg += " (witness degree " + std::to_string(v.witness_degree) + ": " + v.witness + ")";
      if (v.bound_used > 0) msg += " [bound " + std::to_string(v.bound_used) + "]";
      out.say(msg);
      out.put(head + ".verdict", membership_name(v.member));
      out.put(head + ".certificate", certificate_name(prime.certificate));
    });
    return true;
  }
  if (kw == "homology" || kw == "infsupamp") {
    auto x = parse_complex_ref(lx, world);
    lx.expect_sym(";");
    bool isa = kw == "infsupamp";
    d.commands.push_back([eng, x, isa](CmdOut& out, const SessionOptions&) {
      if (isa) {
        auto v = inf_sup_amp(x);
        if (v.exact) {
          out.say("inf/sup/amp: exact complex");
          out.put("infsupamp", "exact");
        } else {
          out.say("inf = " + std::to_string(v.inf) + ", sup = " + std::to_string(v.sup) +
                  ", amp = " + std::to_string(v.amp));
          out.put("infsupamp.inf", std::to_string(v.inf));
          out.put("infsupamp.sup", std::to_string(v.sup));
          out.put("infsupamp.amp", std::to_string(v.amp));
        }
        return;
      }
      bool any = false;
      for (auto& [deg, m] : homology(x)) {
        if (module_is_zero(eng, m)) continue;
        any = true;
        out.say("H_" + std::to_string(deg) + " = " + invariants_line(eng, m));
        out.put("homology." + std::to_string(deg), invariants_line(eng, m));
      }
      if (!any) {
        out.say("homology: zero in every degree");
        out.put("homology", "0");
      }
    });
    return true;
  }
  if (kw == "tor" || kw == "ext") {
    bool is_tor = kw == "tor";
    std::string mn = lx.expect_ident(), nn = lx.expect_ident();
    auto mi = world.modules.find(mn);
    auto ni = world.modules.find(nn);
    if (mi == world.modules.end() || ni == world.modules.end()) lx.error("unknown module");
    auto w = parse_window(lx);
    lx.expect_sym(";");
    auto m = mi->second, n = ni->second;
    d.commands.push_back([eng, m, n, w, is_tor](CmdOut& out, const SessionOptions&) {
      auto h = is_tor ? derived_tensor(eng, m, n, w) : derived_hom(eng, m, n, DegreeWindow{-w.hi, -w.lo});
      for (int i = w.lo; i <= w.hi; ++i) {
        const auto& mod = is_tor ? h[i] : h[-i];
        std::string label = (is_tor ? "Tor_" : "Ext^") + std::to_string(i);
        std::string val = module_is_zero(eng, mod) ? "0" : invariants_line(eng, mod);
        out.say(label + " = " + val);
        out.put((is_tor ? "tor." : "ext.") + std::to_string(i), val);
      }
    });
    return true;
  }
  if (kw == "gamma") {
    auto a = parse_ideal_ref(lx, world);
    std::string mn = lx.expect_ident();
    auto mi = world.modules.find(mn);
    if (mi == world.modules.end()) lx.error("unknown module '" + mn + "'");
    lx.expect_sym(";");
    auto m = mi->second;
    d.commands.push_back([eng, a, m](CmdOut& out, const SessionOptions&) {
      auto t = torsion_submodule(eng, a, m);
      bool zero = module_is_zero(eng, t.module);
      bool whole = torsion_is_whole_module(eng, t, m);
      out.say(std::string("Gamma_a(M) is ") +
              (zero ? "zero" : whole ? "the whole module" : "a proper nonzero submodule"));
      out.put("gamma.zero", zero ? "true" : "false");
      out.put("gamma.whole", whole ? "true" : "false");
    });
    return true;
  }
  if (kw == "lcfiber") {
    auto mp = parse_ideal_ref(lx, world);
    auto a = parse_ideal_ref(lx, world);
    auto x = parse_complex_ref(lx, world);
    auto w = parse_window(lx);
    lx.expect_sym(";");
    d.commands.push_back([eng, mp, a, x, w](CmdOut& out, const SessionOptions&) {
      auto prime = certify_prime(mp);
      auto dims = local_cohomology_fiber(eng, prime, a, x, w);
      for (auto& [deg, v] : dims) {
        out.say("fibre dim H_" + std::to_string(deg) + " = " + std::to_string(v));
        out.put("lcfiber." + std::to_string(deg), std::to_string(v));
      }
    });
    return true;
  }
  if (kw == "bass") {
    auto p = parse_ideal_ref(lx, world);
    std::string mn = lx.expect_ident();
    auto mi = world.modules.find(mn);
    if (mi == world.modules.end()) lx.error("unknown module '" + mn + "'");
    auto w = parse_window(lx);
    lx.expect_sym(";");
    auto m = mi->second;
    d.commands.push_back([eng, p, m, w](CmdOut& out, const SessionOptions&) {
      auto prime = certify_prime(p);
      auto mu = bass_numbers(eng, prime, m, w);
      for (auto& [i, v] : mu) {
        out.say("mu^" + std::to_string(i) + " = " + std::to_string(v));
        out.put("bass." + std::to_string(i), std::to_string(v));
      }
    });
    return true;
  }
  if (kw == "adic") {
    auto x = parse_complex_ref(lx, world);
    auto a = parse_ideal_ref(lx, world);
    int bound = -1;
    if (lx.at_ident("bound")) {
      lx.next();
      bound = static_cast<int>(lx.expect_number());
    }
    lx.expect_sym(";");
    d.commands.push_back([eng, x, a, bound](CmdOut& out, const SessionOptions& opts) {
      auto v = is_adically_finite(eng, x, a, bound > 0 ? bound : opts.bound);
      out.say(std::string("adically finite: ") + (v.verdict ? "yes" : "no") +
              (v.support_ok ? "" : " (support escapes V(a))") + "; " + v.conditions.notes);
      out.put("adic.verdict", v.verdict ? "true" : "false");
      out.put("adic.support", v.support_ok ? "true" : "false");
    });
    return true;
  }
  if (kw == "filtration") {
    std::string mn = lx.expect_ident();
    auto mi = world.modules.find(mn);
    if (mi == world.modules.end()) lx.error("unknown module '" + mn + "'");
    lx.expect_sym(";");
    auto m = mi->second;
    d.commands.push_back([eng, m](CmdOut& out, const SessionOptions&) {
      auto f = prime_filtration(eng, m);
      int k = 0;
      for (const auto& s : f.steps) {
        std::string lbl = "(";
        for (std::size_t i = 0; i < s.label.ideal.gens.size(); ++i)
          lbl += (i ? ", " : "") + eng.ring.to_string(s.label.ideal.gens[i]);
        lbl += ")";
        out.say("step " + std::to_string(++k) + ": quotient R/" + lbl);
        out.put("filtration." + std::to_string(k), lbl);
      }
      if (f.steps.empty()) out.say("filtration: zero module");
    });
    return true;
  }
  if (kw == "detect-iso") {
    std::string fn = lx.expect_ident();
    auto fi = world.maps.find(fn);
    if (fi == world.maps.end()) lx.error("unknown map '" + fn + "'");
    auto a = parse_ideal_ref(lx, world);
    std::string mode_s = lx.read_word();
    DetectMode mode;
    if (mode_s == "koszul") mode = DetectMode::koszul;
    else if (mode_s == "quotient") mode = DetectMode::quotient;
    else if (mode_s == "rhom-quotient") mode = DetectMode::rhom_quotient;
    else lx.error("unknown detection mode '" + mode_s + "'");
    lx.expect_sym(";");
    auto f = fi->second;
    d.commands.push_back([eng, f, a, mode](CmdOut& out, const SessionOptions&) {
      auto rep = detect_iso_via_functor(eng, f, a, mode);
      out.say(std::string("f is qis: ") + (rep.f_is_qis ? "yes" : "no") + "; functored map is qis: " +
              (rep.functored_is_qis ? "yes" : "no") + "; hypothesis " +
              (rep.hypothesis_holds ? "holds" : "fails") +
              (rep.expected_counterexample ? "; expected counterexample" : "") +
              (rep.theorem_violated ? "; THEOREM VIOLATION" : ""));
      out.put("detect-iso.f", rep.f_is_qis ? "true" : "false");
      out.put("detect-iso.functored", rep.functored_is_qis ? "true" : "false");
      out.put("detect-iso.hypothesis", rep.hypothesis_holds ? "true" : "false");
      if (rep.theorem_violated) out.exit_code = 4;
    });
    return true;
  }
  if (kw == "gamma-check") {
    auto x = parse_complex_ref(lx, world);
    auto a = parse_ideal_ref(lx, world);
    auto b = parse_ideal_ref(lx, world);
    lx.expect_sym(";");
    d.commands.push_back([eng, x, a, b](CmdOut& out, const SessionOptions&) {
      auto rep = gamma_preserves_adic_finiteness(eng, x, a, b);
      out.say(std::string("Gamma preserves adic finiteness: ") + (rep.pass ? "pass" : "FAIL") + "; " +
              rep.notes);
      out.put("gamma-check.pass", rep.pass ? "true" : "false");
      if (!rep.pass) out.exit_code = 3;
    });
    return true;
  }
  if (kw == "snf") {
    if constexpr (std::is_same_v<K, RatField>) {
      auto m = parse_matrix(lx, world);
      lx.expect_sym(";");
      d.commands.push_back([eng, m](CmdOut& out, const SessionOptions&) {
        PolyEuclid<RatField> eu{eng.ring};
        auto s = smith_normal_form(eu, m);
        std::string diag = "(";
        for (std::size_t i = 0; i < s.diagonal.size(); ++i)
          diag += (i ? ", " : "") + eng.ring.to_string(s.diagonal[i]);
        diag += ")";
        out.say("snf diagonal = " + diag);
        out.put("snf.diagonal", diag);
      });
      return true;
    } else {
      lx.error("snf is exposed over ZZ and QQ[x] only");
    }
  }
  return false;
}

bool parse_zz_command(Lexer& lx, ImplData& d, ZZWorld& world, const std::string& kw) {
  auto eng = world.eng;
  if (kw == "snf") {
    auto m = parse_matrix(lx, world);
    lx.expect_sym(";");
    d.commands.push_back([m](CmdOut& out, const SessionOptions&) {
      IntEuclid eu;
      auto s = smith_normal_form(eu, m);
      std::string diag = "(";
      for (std::size_t i = 0; i < s.diagonal.size(); ++i) diag += (i ? ", " : "") + s.diagonal[i].get_str();
      diag += ")";
      out.say("snf diagonal = " + diag);
      out.put("snf.diagonal", diag);
    });
    return true;
  }
  if (kw == "tor" || kw == "ext") {
    bool is_tor = kw == "tor";
    std::string mn = lx.expect_ident(), nn = lx.expect_ident();
    auto mi = world.modules.find(mn);
    auto ni = world.modules.find(nn);
    if (mi == world.modules.end() || ni == world.modules.end()) lx.error("unknown module");
    auto w = parse_window(lx);
    lx.expect_sym(";");
    auto m = mi->second, n = ni->second;
    d.commands.push_back([eng, m, n, w, is_tor](CmdOut& out, const SessionOptions&) {
      auto h = is_tor ? derived_tensor(eng, m, n, w) : derived_hom(eng, m, n, DegreeWindow{-w.hi, -w.lo});
      for (int i = w.lo; i <= w.hi; ++i) {
        const auto& mod = is_tor ? h[i] : h[-i];
        std::string label = (is_tor ? "Tor_" : "Ext^") + std::to_string(i);
        std::string val = module_is_zero(eng, mod) ? "0" : invariants_line(eng, mod);
        out.say(label + " = " + val);
        out.put((is_tor ? "tor." : "ext.") + std::to_string(i), val);
      }
    });
    return true;
  }
  if (kw == "homology" || kw == "infsupamp") {
    std::string xn = lx.expect_ident();
    auto xi = world.complexes.find(xn);
    if (xi == world.complexes.end()) lx.error("unknown complex '" + xn + "'");
    lx.expect_sym(";");
    auto x = xi->second;
    bool isa = kw == "infsupamp";
    d.commands.push_back([eng, x, isa](CmdOut& out, const SessionOptions&) {
      if (isa) {
        auto v = inf_sup_amp(x);
        if (v.exact) {
          out.say("inf/sup/amp: exact complex");
          out.put("infsupamp", "exact");
        } else {
          out.say("inf = " + std::to_string(v.inf) + ", sup = " + std::to_string(v.sup) +
                  ", amp = " + std::to_string(v.amp));
          out.put("infsupamp.inf", std::to_string(v.inf));
          out.put("infsupamp.sup", std::to_string(v.sup));
          out.put("infsupamp.amp", std::to_string(v.amp));
        }
        return;
      }
      bool any = false;
      for (auto& [deg, m] : homology(x)) {
        if (module_is_zero(eng, m)) continue;
        any = true;
        out.say("H_" + std::to_string(deg) + " = " + invariants_line(eng, m));
        out.put("homology." + std::to_string(deg), invariants_line(eng, m));
      }
      if (!any) out.say("homology: zero in every degree");
    });
    return true;
  }
  return false;
}

bool parse_common_command(Lexer& lx, ImplData& d, const std::string& kw) {
  auto state = d.state;
  if (kw == "dvr-eval" || kw == "dvr-supp" || kw == "dvr-cosupp") {
    auto obj = parse_dvr_expr(lx, *state, true);
    lx.expect_sym(";");
    d.commands.push_back([kw, obj](CmdOut& out, const SessionOptions&) {
      if (kw == "dvr-eval") {
        out.say("= " + dvr_expr_str(obj));
        out.put("dvr-eval", dvr_expr_str(obj));
      } else if (kw == "dvr-supp") {
        out.say("supp = " + to_string(dvr_supp(obj)));
        out.put("dvr-supp", to_string(dvr_supp(obj)));
      } else {
        out.say("co-supp = " + to_string(dvr_cosupp(obj)));
        out.put("dvr-cosupp", to_string(dvr_cosupp(obj)));
      }
    });
    return true;
  }
  if (kw == "dvr-adic") {
    auto obj = parse_dvr_expr(lx, *state, true);
    std::string which = lx.peek().kind == Tok::number ? std::to_string(lx.expect_number())
                                                      : lx.expect_ident();
    DvrIdeal ideal;
    if (which == "m") ideal = DvrIdeal::max;
    else if (which == "0" || which == "zero") ideal = DvrIdeal::zero;
    else lx.error("DVR ideal must be 'm' or '0'");
    lx.expect_sym(";");
    d.commands.push_back([obj, ideal](CmdOut& out, const SessionOptions&) {
      auto v = is_adically_finite(obj, ideal);
      out.say(std::string("adically finite: ") + (v.verdict ? "yes" : "no") + "; " + v.conditions.notes);
      out.put("dvr-adic.verdict", v.verdict ? "true" : "false");
    });
    return true;
  }
  if (kw == "verify") {
    std::string suite = lx.read_word();
    std::uint64_t seed = 0;
    bool has_seed = false;
    int count = 0;
    while (lx.peek().kind == Tok::ident) {
      std::string opt = lx.expect_ident();
      if (opt == "seed") {
        seed = static_cast<std::uint64_t>(lx.expect_number());
        has_seed = true;
      } else if (opt == "count") {
        count = static_cast<int>(lx.expect_number());
      } else {
        lx.error("unknown verify option '" + opt + "'");
      }
    }
    lx.expect_sym(";");
    d.commands.push_back([suite, seed, has_seed, count](CmdOut& out, const SessionOptions& opts) {
      VerifyOptions vo;
      vo.seed = has_seed ? seed : opts.seed;
      vo.count = count;
      auto rep = run_verify_suite(suite, vo);
      auto text = render_report_text(rep);
      std::size_t start = 0;
      while (start < text.size()) {
        auto nl = text.find('\n', start);
        out.say(text.substr(start, nl == std::string::npos ? std::string::npos : nl - start));
        start = nl == std::string::npos ? text.size() : nl + 1;
      }
      out.put("verify." + suite + ".pass", rep.pass() ? "true" : "false");
      out.put("verify." + suite + ".failures", std::to_string(rep.failures()));
      if (!rep.pass()) out.exit_code = 3;
    });
    return true;
  }
  return false;
}

}  // namespace

// ---- SessionDocument -----------------------------------------------------------------

struct SessionDocument::Impl {
  ImplData data;
};

SessionDocument::SessionDocument() : impl_(std::make_unique<Impl>()) {}
SessionDocument::~SessionDocument() = default;
SessionDocument::SessionDocument(SessionDocument&&) noexcept = default;
SessionDocument& SessionDocument::operator=(SessionDocument&&) noexcept = default;

int SessionDocument::command_count() const { return static_cast<int>(impl_->data.commands.size()); }

SessionDocument SessionDocument::parse(const std::string& text) {
  SessionDocument doc;
  ImplData& d = doc.impl_->data;
  Lexer lx(text);
  while (lx.peek().kind != Tok::end) {
    std::size_t stmt_start = lx.pos;
    std::string kw = lx.read_word();
    if (kw == "ring") {
      require(std::holds_alternative<std::monostate>(d.state->world), errc::semantic_error,
              "the ring is already declared");
      std::string base = lx.expect_ident();
      if (base == "ZZ") {
        lx.expect_sym(";");
        ZZWorld w;
        w.modules.emplace("R", free_module(w.eng, 1));
        d.state->names.insert("R");
        d.state->world = std::move(w);
        d.stmts.push_back("ring ZZ;");
        continue;
      }
      std::uint64_t p = 0;
      if (base == "Fp") {
        lx.expect_sym("(");
        p = static_cast<std::uint64_t>(lx.expect_number());
        lx.expect_sym(")");
      } else if (base != "QQ") {
        lx.error("ring must be ZZ, QQ[...] or Fp(p)[...]");
      }
      lx.expect_sym("[");
      std::vector<std::string> vars;
      while (true) {
        vars.push_back(lx.expect_ident());
        if (lx.at_sym(",")) {
          lx.next();
          continue;
        }
        break;
      }
      lx.expect_sym("]");
      OrderKind order = OrderKind::grevlex;
      if (lx.at_ident("grevlex") || lx.at_ident("lex"))
        order = lx.next().s == "lex" ? OrderKind::lex : OrderKind::grevlex;
      auto finish = [&](auto world) {
        using W = std::decay_t<decltype(world)>;
        std::string rel_str;
        if (lx.at_sym("/")) {
          lx.next();
          auto rel = parse_ideal_ref(lx, world);
          world.eng.ring.relations = ideal_groebner(rel);
          rel_str = " / " + ideal_str(world, rel);
        }
        lx.expect_sym(";");
        world.modules.emplace("R", free_module(world.eng, 1));
        d.state->names.insert("R");
        std::string stmt = "ring ";
        if constexpr (std::is_same_v<W, PolyWorld<PrimeField>>) {
          stmt += "Fp(" + std::to_string(world.eng.ring.coeff.p) + ")";
        } else {
          stmt += "QQ";
        }
        stmt += "[";
        for (std::size_t i = 0; i < vars.size(); ++i) stmt += (i ? "," : "") + vars[i];
        stmt += "] ";
        stmt += order == OrderKind::lex ? "lex" : "grevlex";
        stmt += rel_str + ";";
        d.stmts.push_back(stmt);
        d.state->world = std::move(world);
      };
      if (base == "QQ") {
        PolyWorld<RatField> w;
        w.eng = QQPolyEngine{QQPolyRing{RatField{}, vars, MonomialOrder{order, 0}, {}}};
        finish(std::move(w));
      } else {
        require(p >= 2, errc::semantic_error, "Fp needs a prime modulus");
        PolyWorld<PrimeField> w;
        w.eng = FpPolyEngine{FpPolyRing{PrimeField{p}, vars, MonomialOrder{order, 0}, {}}};
        finish(std::move(w));
      }
      continue;
    }
    if (kw == "dvr") {
      std::string name = lx.expect_ident();
      d.state->claim(lx, name);
      lx.expect_sym("=");
      bool complete = true;
      if (lx.at_ident("incomplete")) {
        lx.next();
        complete = false;
      }
      auto obj = parse_dvr_expr(lx, *d.state, complete);
      lx.expect_sym(";");
      d.state->dvrs.emplace(name, obj);
      d.stmts.push_back("dvr " + name + " = " + std::string(complete ? "" : "incomplete ") +
                        dvr_expr_str(obj) + ";");
      continue;
    }
    if (parse_common_command(lx, d, kw)) {
      d.stmts.push_back(lx.slice(stmt_start, lx.pos));
      continue;
    }
    bool handled = std::visit(
        [&](auto& w) -> bool {
          using W = std::decay_t<decltype(w)>;
          if constexpr (std::is_same_v<W, std::monostate>) {
            lx.error("no ring declared before '" + kw + "'");
            return false;
          } else if constexpr (std::is_same_v<W, ZZWorld>) {
            if (kw == "module" || kw == "complex" || kw == "map") {
              define_module_complex_map(lx, d, w, kw);
              return true;
            }
            if (parse_zz_command(lx, d, w, kw)) {
              d.stmts.push_back(lx.slice(stmt_start, lx.pos));
              return true;
            }
            return false;
          } else {
            if (kw == "ideal" || kw == "seq" || kw == "module" || kw == "complex" || kw == "map") {
              define_poly_entities(lx, d, w, kw);
              return true;
            }
            if (parse_poly_command(lx, d, w, kw)) {
              d.stmts.push_back(lx.slice(stmt_start, lx.pos));
              return true;
            }
            return false;
          }
        },
        d.state->world);
    if (!handled) lx.error("unknown statement '" + kw + "'");
  }
  return doc;
}

std::string SessionDocument::print() const {
  std::string out;
  for (const auto& s : impl_->data.stmts) out += s + "\n";
  return out;
}

SessionResult SessionDocument::run(const SessionOptions& opts) const {
  SessionResult res;
  nlohmann::json j = nlohmann::json::object();
  int idx = 0;
  for (const auto& cmd : impl_->data.commands) {
    ++idx;
    char prefix[16];
    std::snprintf(prefix, sizeof(prefix), "%03d.", idx);
    CmdOut out;
    try {
      cmd(out, opts);
    } catch (const error& e) {
      out.say(std::string("error: ") + e.what());
      out.put("error", errc_name(e.code()));
      out.exit_code = e.code() == errc::condition_disagreement ? 4 : 2;
    }
    for (const auto& line : out.lines) res.output += line + "\n";
    for (const auto& [k, v] : out.kv) j[prefix + k] = v;
    if (out.exit_code == 4)
      res.exit_code = 4;
    else if (res.exit_code != 4 && out.exit_code > res.exit_code)
      res.exit_code = out.exit_code;
  }
  if (opts.format == OutputFormat::structured) res.output = j.dump(2) + "\n";
  return res;
}

}  // namespace dercat
