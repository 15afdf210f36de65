#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "glw/errors.hpp"
#include "glw/linalg.hpp"
#include "glw/textio.hpp"

namespace glw {

struct ArrowDecl {
  std::string name;
  int src;
  int dst;
  friend bool operator==(const ArrowDecl&, const ArrowDecl&) = default;
};

// One summand of a relation. Arrows are stored in application order
// (first applied first); the text form prints right-to-left.
struct PathTerm {
  uint32_t coeff;
  std::vector<int> arrows;
  friend bool operator==(const PathTerm&, const PathTerm&) = default;
};

struct RelationDecl {
  std::vector<PathTerm> terms;
  int src;
  int dst;
  std::string text;  // canonical left-hand side, used in diagnostics
  friend bool operator==(const RelationDecl& a, const RelationDecl& b) {
    return a.terms == b.terms && a.src == b.src && a.dst == b.dst;
  }
};

// A quiver with relations over F_p, truncated at path length N: the data of a
// finitely presented linear category.
struct QuiverPresentation {
  uint32_t p = 0;
  int nilpotency = 0;
  std::vector<std::string> objects;
  std::vector<ArrowDecl> arrows;
  std::vector<RelationDecl> relations;

  int object_index(std::string_view name) const {
    for (size_t i = 0; i < objects.size(); ++i)
      if (objects[i] == name) return int(i);
    return -1;
  }
  int arrow_index(std::string_view name) const {
    for (size_t i = 0; i < arrows.size(); ++i)
      if (arrows[i].name == name) return int(i);
    return -1;
  }

  friend bool operator==(const QuiverPresentation& a, const QuiverPresentation& b) {
    return a.p == b.p && a.nilpotency == b.nilpotency && a.objects == b.objects && a.arrows == b.arrows &&
           a.relations == b.relations;
  }
};

namespace detail {

// Prints a path in composition order (last applied leftmost).
inline std::string path_text(const QuiverPresentation& q, const std::vector<int>& app_order) {
  std::string s;
  for (size_t i = app_order.size(); i-- > 0;) {
    s += q.arrows[app_order[i]].name;
    if (i) s += ".";
  }
  return s;
}

inline std::string relation_text(const QuiverPresentation& q, const std::vector<PathTerm>& terms) {
  std::string s;
  for (size_t t = 0; t < terms.size(); ++t) {
    if (t) s += " + ";
    if (terms[t].coeff != 1) s += std::to_string(terms[t].coeff) + "*";
    s += path_text(q, terms[t].arrows);
  }
  return s;
}

}  // namespace detail

inline QuiverPresentation parse_category(std::string_view src) {
  text::Tokenizer tk(src);
  QuiverPresentation q;
  bool have_field = false, have_nilp = false;

  auto parse_path = [&](std::vector<int>* out) -> text::Token {
    // File order is composition order; we reverse into application order.
    std::vector<int> file_order;
    text::Token first = tk.expect_ident();
    int idx = q.arrow_index(first.text);
    if (idx < 0) text::Tokenizer::fail(first, "unknown arrow '" + first.text + "'");
    file_order.push_back(idx);
    while (tk.accept(".")) {
      text::Token t = tk.expect_ident();
      idx = q.arrow_index(t.text);
      if (idx < 0) text::Tokenizer::fail(t, "unknown arrow '" + t.text + "'");
      file_order.push_back(idx);
    }
    out->assign(file_order.rbegin(), file_order.rend());
    for (size_t i = 0; i + 1 < out->size(); ++i)
      if (q.arrows[(*out)[i]].dst != q.arrows[(*out)[i + 1]].src)
        text::Tokenizer::fail(first, "non-composable path");
    return first;
  };

  for (;;) {
    text::Token head = tk.next();
    if (head.kind == text::TokKind::End) break;
    if (head.kind != text::TokKind::Ident) text::Tokenizer::fail(head, "expected a declaration keyword");

    if (head.text == "field") {
      if (have_field) text::Tokenizer::fail(head, "duplicate field declaration");
      int64_t p = tk.expect_int();
      if (p < 2 || !Fp::is_prime(uint32_t(p)))
        throw ParseError("field order " + std::to_string(p) + " is not prime", head.line, head.col);
      q.p = uint32_t(p);
      have_field = true;
    } else if (head.text == "nilpotency") {
      if (have_nilp) text::Tokenizer::fail(head, "duplicate nilpotency declaration");
      int64_t n = tk.expect_int();
      if (n < 1) throw ParseError("nilpotency bound must be >= 1", head.line, head.col);
      q.nilpotency = int(n);
      have_nilp = true;
    } else if (head.text == "object") {
      text::Token id = tk.expect_ident();
      if (q.object_index(id.text) >= 0) text::Tokenizer::fail(id, "duplicate object '" + id.text + "'");
      q.objects.push_back(id.text);
    } else if (head.text == "arrow") {
      text::Token id = tk.expect_ident();
      if (q.arrow_index(id.text) >= 0) text::Tokenizer::fail(id, "duplicate arrow '" + id.text + "'");
      tk.expect(":");
      text::Token s = tk.expect_ident();
      tk.expect("->");
      text::Token d = tk.expect_ident();
      int si = q.object_index(s.text);
      int di = q.object_index(d.text);
      if (si < 0) text::Tokenizer::fail(s, "unknown object '" + s.text + "'");
      if (di < 0) text::Tokenizer::fail(d, "unknown object '" + d.text + "'");
      q.arrows.push_back({id.text, si, di});
    } else if (head.text == "relation") {
      if (!have_field) throw ParseError("field must be declared before relations", head.line, head.col);
      RelationDecl rel;
      Fp f(q.p);
      int64_t sign = 1;
      bool have_endpoints = false;
      for (;;) {
        int64_t coeff = 1;
        if (tk.peek().kind == text::TokKind::Int) {
          coeff = tk.expect_int();
          tk.expect("*");
        }
        PathTerm term;
        text::Token at = parse_path(&term.arrows);
        term.coeff = f.reduce(sign * coeff);
        int tsrc = q.arrows[term.arrows.front()].src;
        int tdst = q.arrows[term.arrows.back()].dst;
        if (!have_endpoints) {
          rel.src = tsrc;
          rel.dst = tdst;
          have_endpoints = true;
        } else if (tsrc != rel.src || tdst != rel.dst) {
          text::Tokenizer::fail(at, "non-parallel relation");
        }
        if (term.coeff != 0) rel.terms.push_back(std::move(term));
        if (tk.accept("+")) {
          sign = 1;
        } else if (tk.accept("-")) {
          sign = -1;
        } else {
          break;
        }
      }
      tk.expect("=");
      text::Token z = tk.next();
      if (z.kind != text::TokKind::Int || z.text != "0") text::Tokenizer::fail(z, "relations must equal 0");
      if (!rel.terms.empty()) {
        rel.text = detail::relation_text(q, rel.terms);
        q.relations.push_back(std::move(rel));
      }
    } else {
      text::Tokenizer::fail(head, "unknown declaration '" + head.text + "'");
    }
  }

  if (!have_field) throw ParseError("missing field declaration", 1, 1);
  if (!have_nilp) throw ParseError("missing nilpotency declaration", 1, 1);
  if (q.objects.empty()) throw ParseError("no objects", 1, 1);
  return q;
}

inline std::string pretty_print(const QuiverPresentation& q) {
  std::string s;
  s += "field " + std::to_string(q.p) + "\n";
  s += "nilpotency " + std::to_string(q.nilpotency) + "\n";
  for (const auto& o : q.objects) s += "object " + o + "\n";
  for (const auto& a : q.arrows)
    s += "arrow " + a.name + " : " + q.objects[a.src] + " -> " + q.objects[a.dst] + "\n";
  for (const auto& r : q.relations) s += "relation " + detail::relation_text(q, r.terms) + " = 0\n";
  return s;
}

// An element of Hom(src, dst) in the chosen basis.
struct Morphism {
  int src;
  int dst;
  std::vector<uint32_t> coords;
  friend bool operator==(const Morphism&, const Morphism&) = default;
};

// The linear category presented by a quiver with relations: Hom-space bases
// (normal-form path representatives) plus bilinear composition tables.
//
// Hom(a,b) is the span of paths a->b of length < N modulo the truncated
// two-sided ideal generated by the relations. Reduction rewrites each pivot
// path into smaller ones, so the surviving basis consists of the
// (length, lex)-smallest representatives.
class Category {
 public:
  static Category build(const QuiverPresentation& pres, uint64_t path_cap = 100000) {
    Category c(pres);
    c.collect_paths(path_cap);
    c.reduce_relations();
    c.build_tables();
    c.check_tables();
    return c;
  }

  const QuiverPresentation& presentation() const { return pres_; }
  const Fp& field() const { return field_; }
  int object_count() const { return int(pres_.objects.size()); }
  const std::string& object_name(int i) const { return pres_.objects[size_t(i)]; }
  int arrow_count() const { return int(pres_.arrows.size()); }
  const ArrowDecl& arrow(int i) const { return pres_.arrows[size_t(i)]; }

  int hom_dim(int a, int b) const { return hom(a, b).dim; }

  // Basis paths in application order.
  const std::vector<std::vector<int>>& basis_paths(int a, int b) const { return hom(a, b).basis_paths; }

  std::string basis_label(int a, int b, int k) const {
    const auto& path = hom(a, b).basis_paths[size_t(k)];
    if (path.empty()) return "1_" + pres_.objects[size_t(a)];
    return detail::path_text(pres_, path);
  }

  std::string morphism_label(const Morphism& m) const {
    std::string s;
    bool any = false;
    for (size_t k = 0; k < m.coords.size(); ++k) {
      if (!m.coords[k]) continue;
      if (any) s += " + ";
      if (m.coords[k] != 1) s += std::to_string(m.coords[k]) + "*";
      s += basis_label(m.src, m.dst, int(k));
      any = true;
    }
    return any ? s : "0";
  }

  Morphism zero_morphism(int a, int b) const {
    return Morphism{a, b, std::vector<uint32_t>(size_t(hom_dim(a, b)), 0)};
  }

  Morphism identity(int a) const {
    Morphism m = zero_morphism(a, a);
    const HomSpace& h = hom(a, a);
    for (size_t k = 0; k < h.basis_paths.size(); ++k)
      if (h.basis_paths[k].empty()) {
        m.coords[k] = 1;
        return m;
      }
    throw InternalError("identity path missing from basis");
  }

  // Normal form of a path given in application order.
  Morphism path_morphism(int src, const std::vector<int>& app_order) const {
    int at = src;
    for (int a : app_order) {
      if (pres_.arrows[size_t(a)].src != at) throw InternalError("non-composable path");
      at = pres_.arrows[size_t(a)].dst;
    }
    Morphism m = zero_morphism(src, at);
    accumulate_path(src, at, app_order, 1 % field_.p(), &m.coords);
    return m;
  }

  Morphism arrow_morphism(int a) const {
    return path_morphism(pres_.arrows[size_t(a)].src, {a});
  }

  // g after f.
  Morphism compose(const Morphism& g, const Morphism& f) const {
    if (f.dst != g.src) throw InputError("non-composable pair");
    Morphism out = zero_morphism(f.src, g.dst);
    if (out.coords.empty() || f.coords.empty() || g.coords.empty()) return out;
    const auto& table = post_table(f.src, g.src, g.dst);
    for (size_t i = 0; i < g.coords.size(); ++i) {
      if (!g.coords[i]) continue;
      std::vector<uint32_t> v = table[i].apply(f.coords);
      for (size_t k = 0; k < out.coords.size(); ++k)
        out.coords[k] = field_.add(out.coords[k], field_.mul(g.coords[i], v[k]));
    }
    return out;
  }

  // Matrix of (g o -) : Hom(a, src g) -> Hom(a, dst g).
  Matrix postcompose_matrix(const Morphism& g, int a) const {
    Matrix out(field_, size_t(hom_dim(a, g.dst)), size_t(hom_dim(a, g.src)));
    if (out.rows() == 0 || out.cols() == 0 || g.coords.empty()) return out;
    const auto& table = post_table(a, g.src, g.dst);
    for (size_t i = 0; i < g.coords.size(); ++i)
      if (g.coords[i]) out = out + table[i].scaled(g.coords[i]);
    return out;
  }

  // Matrix of (- o h) : Hom(h.dst, x) -> Hom(h.src, x).
  Matrix precompose_matrix(const Morphism& h, int x) const {
    int b = h.dst;
    Matrix out(field_, size_t(hom_dim(h.src, x)), size_t(hom_dim(b, x)));
    for (int j = 0; j < hom_dim(b, x); ++j) {
      Morphism fj = zero_morphism(b, x);
      fj.coords[size_t(j)] = 1;
      Morphism c = compose(fj, h);
      for (size_t k = 0; k < c.coords.size(); ++k) out.set(k, size_t(j), c.coords[k]);
    }
    return out;
  }

  uint64_t morphism_count(int a, int b, uint64_t cap) const {
    return pow_u64_checked(field_.p(), size_t(hom_dim(a, b)), cap);
  }

  // All morphisms a -> b in lexicographic coordinate order.
  std::vector<Morphism> enumerate_morphisms(int a, int b, uint64_t cap) const {
    std::vector<Morphism> out;
    for (auto& v : enumerate_vectors(field_, size_t(hom_dim(a, b)), cap))
      out.push_back(Morphism{a, b, std::move(v)});
    return out;
  }

  uint64_t morphism_code(const Morphism& m) const {
    uint64_t code = 0;
    for (uint32_t c : m.coords) code = code * field_.p() + c;
    return code;
  }

  // Exhaustively checks unit laws and associativity of the composition tables.
  void check_tables() const {
    int n = object_count();
    for (int a = 0; a < n; ++a) {
      Morphism ida = identity(a);
      for (int b = 0; b < n; ++b) {
        Morphism idb = identity(b);
        for (int k = 0; k < hom_dim(a, b); ++k) {
          Morphism f = zero_morphism(a, b);
          f.coords[size_t(k)] = 1;
          if (!(compose(f, ida) == f) || !(compose(idb, f) == f))
            throw InternalError("unit law fails in composition tables");
        }
      }
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) {
            if (!hom_dim(a, b) || !hom_dim(b, c) || !hom_dim(c, d)) continue;
            for (int i = 0; i < hom_dim(a, b); ++i)
              for (int j = 0; j < hom_dim(b, c); ++j)
                for (int k = 0; k < hom_dim(c, d); ++k) {
                  Morphism f = zero_morphism(a, b);
                  f.coords[size_t(i)] = 1;
                  Morphism g = zero_morphism(b, c);
                  g.coords[size_t(j)] = 1;
                  Morphism h = zero_morphism(c, d);
                  h.coords[size_t(k)] = 1;
                  if (!(compose(compose(h, g), f) == compose(h, compose(g, f))))
                    throw InternalError("associativity fails in composition tables");
                }
          }
  }

  // Normal form coordinates of an arbitrary path (application order), used by
  // tests that reduce paths of length >= N.
  Morphism reduce_path(int src, const std::vector<int>& app_order) const {
    return path_morphism(src, app_order);
  }

 private:
  struct HomSpace {
    std::vector<std::vector<int>> paths;  // all length < N paths, (length, lex) ascending
    std::map<std::vector<int>, int> path_index;
    Matrix rel;                   // RREF over descending path columns
    std::vector<size_t> rel_pivots;
    std::vector<char> is_pivot_path;       // indexed by path index
    std::vector<std::vector<int>> basis_paths;
    std::vector<int> basis_of_path;        // path index -> basis position or -1
    int dim = 0;

    HomSpace() : rel(Fp(2), 0, 0) {}
  };

  explicit Category(const QuiverPresentation& pres)
      : pres_(pres), field_(pres.p ? pres.p : throw InputError("presentation has no field")) {
    if (pres.nilpotency < 1) throw InputError("presentation has no nilpotency bound");
    homs_.resize(size_t(object_count()) * size_t(object_count()));
  }

  HomSpace& hom_mutable(int a, int b) { return homs_[size_t(a) * size_t(object_count()) + size_t(b)]; }
  const HomSpace& hom(int a, int b) const { return homs_[size_t(a) * size_t(object_count()) + size_t(b)]; }

  static bool path_less(const std::vector<int>& x, const std::vector<int>& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  }

  void collect_paths(uint64_t path_cap) {
    int n = object_count();
    uint64_t total = 0;
    for (int a = 0; a < n; ++a) {
      std::vector<std::pair<int, std::vector<int>>> frontier{{a, {}}};
      for (int len = 0; len < pres_.nilpotency && !frontier.empty(); ++len) {
        for (auto& [at, path] : frontier) {
          hom_mutable(a, at).paths.push_back(path);
          if (++total > path_cap) throw CapExceeded("path enumeration exceeds cap");
        }
        std::vector<std::pair<int, std::vector<int>>> next;
        if (len + 1 < pres_.nilpotency)
          for (auto& [at, path] : frontier)
            for (int ai = 0; ai < arrow_count(); ++ai) {
              if (pres_.arrows[size_t(ai)].src != at) continue;
              std::vector<int> ext = path;
              ext.push_back(ai);
              next.emplace_back(pres_.arrows[size_t(ai)].dst, std::move(ext));
            }
        frontier = std::move(next);
      }
    }
    for (auto& h : homs_) {
      std::sort(h.paths.begin(), h.paths.end(), path_less);
      for (size_t i = 0; i < h.paths.size(); ++i) h.path_index[h.paths[i]] = int(i);
    }
  }

  // Builds the truncated relation ideal in each Hom space and chooses basis
  // representatives. Columns are ordered with the largest path first so RREF
  // pivots land on the largest path of each reducible combination.
  void reduce_relations() {
    int n = object_count();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        HomSpace& h = hom_mutable(a, b);
        size_t np = h.paths.size();
        std::vector<std::vector<uint32_t>> rows;
        for (const RelationDecl& rel : pres_.relations) {
          const auto& pre = hom(a, rel.src).paths;   // v : a -> rel.src
          const auto& post = hom(rel.dst, b).paths;  // u : rel.dst -> b
          for (const auto& v : pre)
            for (const auto& u : post) {
              std::vector<uint32_t> row(np, 0);
              bool nonzero = false;
              for (const PathTerm& t : rel.terms) {
                if (v.size() + t.arrows.size() + u.size() >= size_t(pres_.nilpotency)) continue;
                std::vector<int> whole = v;
                whole.insert(whole.end(), t.arrows.begin(), t.arrows.end());
                whole.insert(whole.end(), u.begin(), u.end());
                auto it = h.path_index.find(whole);
                if (it == h.path_index.end()) throw InternalError("missing path in index");
                size_t col = np - 1 - size_t(it->second);  // descending order
                row[col] = field_.add(row[col], t.coeff);
                nonzero = true;
              }
              if (nonzero) rows.push_back(std::move(row));
            }
        }
        Matrix m(field_, rows.size(), np);
        for (size_t i = 0; i < rows.size(); ++i)
          for (size_t j = 0; j < np; ++j) m.set(i, j, rows[i][j]);
        RrefResult r = rref(m);
        Matrix rel_rows(field_, r.rank, np);
        for (size_t i = 0; i < r.rank; ++i)
          for (size_t j = 0; j < np; ++j) rel_rows.set(i, j, r.mat.at(i, j));
        h.rel = rel_rows;
        h.rel_pivots.assign(r.pivots.begin(), r.pivots.begin() + long(r.rank));
        h.is_pivot_path.assign(np, 0);
        for (size_t c : h.rel_pivots) h.is_pivot_path[np - 1 - c] = 1;
        h.basis_of_path.assign(np, -1);
        for (size_t i = 0; i < np; ++i) {
          if (h.is_pivot_path[i]) continue;
          h.basis_of_path[i] = int(h.basis_paths.size());
          h.basis_paths.push_back(h.paths[i]);
        }
        h.dim = int(h.basis_paths.size());
      }
  }

  // Adds coeff * nf(path) into out (coords in the target basis).
  void accumulate_path(int a, int b, const std::vector<int>& app_order, uint32_t coeff,
                       std::vector<uint32_t>* out) const {
    if (coeff == 0) return;
    const HomSpace& h = hom(a, b);
    if (app_order.size() >= size_t(pres_.nilpotency)) return;  // truncated to zero
    auto it = h.path_index.find(app_order);
    if (it == h.path_index.end()) throw InternalError("missing path in index");
    size_t np = h.paths.size();
    std::vector<uint32_t> v(np, 0);
    v[np - 1 - size_t(it->second)] = coeff;  // descending coordinates
    for (size_t i = 0; i < h.rel.rows(); ++i) {
      uint32_t c = v[h.rel_pivots[i]];
      if (!c) continue;
      for (size_t j = 0; j < np; ++j) v[j] = field_.sub(v[j], field_.mul(c, h.rel.at(i, j)));
    }
    for (size_t col = 0; col < np; ++col) {
      if (!v[col]) continue;
      int pidx = int(np - 1 - col);
      int bpos = h.basis_of_path[size_t(pidx)];
      if (bpos < 0) throw InternalError("pivot survived reduction");
      (*out)[size_t(bpos)] = field_.add((*out)[size_t(bpos)], v[col]);
    }
  }

  void build_tables() {
    int n = object_count();
    post_.assign(size_t(n) * size_t(n) * size_t(n), {});
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          if (!hom_dim(a, b) || !hom_dim(b, c) || !hom_dim(a, c)) continue;
          auto& table = post_[(size_t(a) * size_t(n) + size_t(b)) * size_t(n) + size_t(c)];
          const auto& gb = hom(b, c).basis_paths;
          const auto& fb = hom(a, b).basis_paths;
          for (const auto& g : gb) {
            Matrix m(field_, size_t(hom_dim(a, c)), size_t(hom_dim(a, b)));
            for (size_t j = 0; j < fb.size(); ++j) {
              std::vector<int> whole = fb[j];
              whole.insert(whole.end(), g.begin(), g.end());
              std::vector<uint32_t> col(size_t(hom_dim(a, c)), 0);
              if (whole.size() < size_t(pres_.nilpotency)) accumulate_path(a, c, whole, 1 % field_.p(), &col);
              for (size_t k = 0; k < col.size(); ++k) m.set(k, j, col[k]);
            }
            table.push_back(std::move(m));
          }
        }
  }

  const std::vector<Matrix>& post_table(int a, int b, int c) const {
    const auto& t = post_[(size_t(a) * size_t(object_count()) + size_t(b)) * size_t(object_count()) + size_t(c)];
    if (t.empty()) throw InternalError("composition table missing");
    return t;
  }

  QuiverPresentation pres_;
  Fp field_;
  std::vector<HomSpace> homs_;
  std::vector<std::vector<Matrix>> post_;
};

}  // namespace glw
