#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glw/errors.hpp"
#include "glw/linalg.hpp"
#include "glw/presentation.hpp"
#include "glw/textio.hpp"

namespace glw {

// A module over a linear category: one F_p-space per object, one matrix per
// arrow. Valid modules satisfy every presented relation and kill every path
// of length N (the truncation that keeps Hom spaces finite).
class CModule {
 public:
  CModule(const Category& cat, std::vector<int> dims, std::vector<Matrix> action)
      : cat_(&cat), dims_(std::move(dims)), action_(std::move(action)) {
    if (dims_.size() != size_t(cat.object_count()) || action_.size() != size_t(cat.arrow_count()))
      throw InputError("module data does not match category");
    for (int a = 0; a < cat.arrow_count(); ++a) {
      const ArrowDecl& ar = cat.arrow(a);
      if (action_[size_t(a)].rows() != size_t(dims_[size_t(ar.dst)]) ||
          action_[size_t(a)].cols() != size_t(dims_[size_t(ar.src)]))
        throw InputError("map for arrow '" + ar.name + "' has wrong shape");
    }
  }

  const Category& category() const { return *cat_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim(int c) const { return dims_[size_t(c)]; }
  int total_dim() const {
    int t = 0;
    for (int d : dims_) t += d;
    return t;
  }
  bool is_zero() const { return total_dim() == 0; }

  const Matrix& act_arrow(int a) const { return action_[size_t(a)]; }

  // Evaluation of a path given in application order.
  Matrix act_path(int src, const std::vector<int>& app_order) const {
    Matrix m = Matrix::identity(cat_->field(), size_t(dims_[size_t(src)]));
    for (int a : app_order) m = action_[size_t(a)] * m;
    return m;
  }

  // Evaluation of an arbitrary morphism in the Hom basis.
  Matrix act(const Morphism& h) const {
    const auto& paths = cat_->basis_paths(h.src, h.dst);
    Matrix m(cat_->field(), size_t(dims_[size_t(h.dst)]), size_t(dims_[size_t(h.src)]));
    for (size_t k = 0; k < paths.size(); ++k)
      if (h.coords[k]) m = m + act_path(h.src, paths[k]).scaled(h.coords[k]);
    return m;
  }

  // Checks the relations and the length-N truncation; names the first
  // violation. Returns nothing on success.
  void validate() const {
    const QuiverPresentation& q = cat_->presentation();
    for (const RelationDecl& rel : q.relations) {
      Matrix sum(cat_->field(), size_t(dims_[size_t(rel.dst)]), size_t(dims_[size_t(rel.src)]));
      for (const PathTerm& t : rel.terms) sum = sum + act_path(rel.src, t.arrows).scaled(t.coeff);
      if (!sum.is_zero()) throw InputError("relation " + rel.text + " violated");
    }
    // Every path of exactly length N must evaluate to zero.
    for (int a = 0; a < cat_->object_count(); ++a) {
      std::vector<std::pair<int, std::vector<int>>> frontier{{a, {}}};
      for (int len = 0; len < q.nilpotency; ++len) {
        std::vector<std::pair<int, std::vector<int>>> next;
        for (auto& [at, path] : frontier)
          for (int ai = 0; ai < cat_->arrow_count(); ++ai) {
            if (q.arrows[size_t(ai)].src != at) continue;
            std::vector<int> ext = path;
            ext.push_back(ai);
            next.emplace_back(q.arrows[size_t(ai)].dst, std::move(ext));
          }
        frontier = std::move(next);
      }
      for (auto& [at, path] : frontier)
        if (!act_path(a, path).is_zero())
          throw InputError("path " + detail::path_text(q, path) + " of length " +
                           std::to_string(q.nilpotency) + " does not act as zero");
    }
  }

  friend bool operator==(const CModule& a, const CModule& b) {
    return a.cat_ == b.cat_ && a.dims_ == b.dims_ && a.action_ == b.action_;
  }

 private:
  const Category* cat_;
  std::vector<int> dims_;
  std::vector<Matrix> action_;
};

inline CModule make_module(const Category& cat, std::vector<int> dims, std::vector<Matrix> action) {
  CModule m(cat, std::move(dims), std::move(action));
  m.validate();
  return m;
}

inline CModule zero_module(const Category& cat) {
  std::vector<int> dims(size_t(cat.object_count()), 0);
  std::vector<Matrix> action;
  for (int a = 0; a < cat.arrow_count(); ++a) action.emplace_back(cat.field(), 0, 0);
  return CModule(cat, std::move(dims), std::move(action));
}

// The representable module at c: fibers Hom(c,x), arrows acting by
// postcomposition through the composition tables.
inline CModule representable(const Category& cat, int c) {
  std::vector<int> dims;
  for (int x = 0; x < cat.object_count(); ++x) dims.push_back(cat.hom_dim(c, x));
  std::vector<Matrix> action;
  for (int a = 0; a < cat.arrow_count(); ++a)
    action.push_back(cat.postcompose_matrix(cat.arrow_morphism(a), c));
  CModule m(cat, std::move(dims), std::move(action));
  m.validate();
  return m;
}

inline CModule direct_sum(const CModule& m, const CModule& n) {
  const Category& cat = m.category();
  if (&cat != &n.category()) throw InternalError("direct sum across categories");
  std::vector<int> dims;
  for (int c = 0; c < cat.object_count(); ++c) dims.push_back(m.dim(c) + n.dim(c));
  std::vector<Matrix> action;
  for (int a = 0; a < cat.arrow_count(); ++a) {
    const ArrowDecl& ar = cat.arrow(a);
    Matrix blk(cat.field(), size_t(dims[size_t(ar.dst)]), size_t(dims[size_t(ar.src)]));
    const Matrix& ma = m.act_arrow(a);
    const Matrix& na = n.act_arrow(a);
    for (size_t i = 0; i < ma.rows(); ++i)
      for (size_t j = 0; j < ma.cols(); ++j) blk.set(i, j, ma.at(i, j));
    for (size_t i = 0; i < na.rows(); ++i)
      for (size_t j = 0; j < na.cols(); ++j) blk.set(ma.rows() + i, ma.cols() + j, na.at(i, j));
    action.push_back(std::move(blk));
  }
  return CModule(cat, std::move(dims), std::move(action));
}

// A natural transformation between modules, stored with copies of its
// endpoints so values stay self-contained.
struct NatTransform {
  CModule source;
  CModule target;
  std::vector<Matrix> comp;  // per object: dim target(c) x dim source(c)

  const Matrix& at(int c) const { return comp[size_t(c)]; }
  bool is_zero() const {
    for (const Matrix& m : comp)
      if (!m.is_zero()) return false;
    return true;
  }
  friend bool operator==(const NatTransform& a, const NatTransform& b) {
    return a.source == b.source && a.target == b.target && a.comp == b.comp;
  }
};

inline bool is_natural(const CModule& m, const CModule& n, const std::vector<Matrix>& comp) {
  const Category& cat = m.category();
  for (int a = 0; a < cat.arrow_count(); ++a) {
    const ArrowDecl& ar = cat.arrow(a);
    if (!(comp[size_t(ar.dst)] * m.act_arrow(a) == n.act_arrow(a) * comp[size_t(ar.src)])) return false;
  }
  return true;
}

inline NatTransform make_nat(const CModule& m, const CModule& n, std::vector<Matrix> comp) {
  if (comp.size() != size_t(m.category().object_count())) throw InternalError("component count mismatch");
  for (int c = 0; c < m.category().object_count(); ++c)
    if (comp[size_t(c)].rows() != size_t(n.dim(c)) || comp[size_t(c)].cols() != size_t(m.dim(c)))
      throw InternalError("component shape mismatch");
  if (!is_natural(m, n, comp)) throw InternalError("components are not natural");
  return NatTransform{m, n, std::move(comp)};
}

inline NatTransform zero_nat(const CModule& m, const CModule& n) {
  std::vector<Matrix> comp;
  for (int c = 0; c < m.category().object_count(); ++c)
    comp.emplace_back(m.category().field(), size_t(n.dim(c)), size_t(m.dim(c)));
  return NatTransform{m, n, std::move(comp)};
}

inline NatTransform identity_nat(const CModule& m) {
  std::vector<Matrix> comp;
  for (int c = 0; c < m.category().object_count(); ++c)
    comp.push_back(Matrix::identity(m.category().field(), size_t(m.dim(c))));
  return NatTransform{m, m, std::move(comp)};
}

inline NatTransform compose_nat(const NatTransform& g, const NatTransform& f) {
  std::vector<Matrix> comp;
  for (size_t c = 0; c < f.comp.size(); ++c) comp.push_back(g.comp[c] * f.comp[c]);
  return make_nat(f.source, g.target, std::move(comp));
}

inline NatTransform add_nat(const NatTransform& f, const NatTransform& g) {
  std::vector<Matrix> comp;
  for (size_t c = 0; c < f.comp.size(); ++c) comp.push_back(f.comp[c] + g.comp[c]);
  return NatTransform{f.source, f.target, std::move(comp)};
}

inline NatTransform scale_nat(const NatTransform& f, uint32_t k) {
  std::vector<Matrix> comp;
  for (size_t c = 0; c < f.comp.size(); ++c) comp.push_back(f.comp[c].scaled(k));
  return NatTransform{f.source, f.target, std::move(comp)};
}

// Basis of Nat(M, N): solves the naturality system over the generating
// arrows. Naturality over all morphisms follows because both sides satisfy
// the relations.
inline std::vector<NatTransform> nat_hom(const CModule& m, const CModule& n) {
  const Category& cat = m.category();
  if (&cat != &n.category()) throw InternalError("nat_hom across categories");
  const Fp& f = cat.field();
  int nobj = cat.object_count();
  std::vector<size_t> offset(size_t(nobj) + 1, 0);
  for (int c = 0; c < nobj; ++c)
    offset[size_t(c) + 1] = offset[size_t(c)] + size_t(n.dim(c)) * size_t(m.dim(c));
  size_t total = offset[size_t(nobj)];

  auto var = [&](int c, size_t r, size_t s) { return offset[size_t(c)] + r * size_t(m.dim(c)) + s; };

  std::vector<std::vector<uint32_t>> rows;
  for (int a = 0; a < cat.arrow_count(); ++a) {
    const ArrowDecl& ar = cat.arrow(a);
    const Matrix& ma = m.act_arrow(a);
    const Matrix& na = n.act_arrow(a);
    // eta_dst . M(a) - N(a) . eta_src = 0
    for (int i = 0; i < n.dim(ar.dst); ++i)
      for (int j = 0; j < m.dim(ar.src); ++j) {
        std::vector<uint32_t> row(total, 0);
        bool nonzero = false;
        for (int k = 0; k < m.dim(ar.dst); ++k)
          if (uint32_t v = ma.at(size_t(k), size_t(j))) {
            size_t idx = var(ar.dst, size_t(i), size_t(k));
            row[idx] = f.add(row[idx], v);
            nonzero = true;
          }
        for (int k = 0; k < n.dim(ar.src); ++k)
          if (uint32_t v = na.at(size_t(i), size_t(k))) {
            size_t idx = var(ar.src, size_t(k), size_t(j));
            row[idx] = f.sub(row[idx], v);
            nonzero = true;
          }
        if (nonzero) rows.push_back(std::move(row));
      }
  }
  Matrix sys(f, rows.size(), total);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < total; ++j) sys.set(i, j, rows[i][j]);
  Matrix basis = kernel_basis(sys);

  std::vector<NatTransform> out;
  for (size_t r = 0; r < basis.rows(); ++r) {
    std::vector<Matrix> comp;
    for (int c = 0; c < nobj; ++c) {
      Matrix mc(f, size_t(n.dim(c)), size_t(m.dim(c)));
      for (int i = 0; i < n.dim(c); ++i)
        for (int j = 0; j < m.dim(c); ++j) mc.set(size_t(i), size_t(j), basis.at(r, var(c, size_t(i), size_t(j))));
      comp.push_back(std::move(mc));
    }
    out.push_back(make_nat(m, n, std::move(comp)));
  }
  return out;
}

// Flattens a transformation's components for coordinate work in Nat spaces.
inline std::vector<uint32_t> nat_to_vector(const NatTransform& t) {
  std::vector<uint32_t> v;
  for (const Matrix& m : t.comp)
    for (size_t i = 0; i < m.rows(); ++i)
      for (size_t j = 0; j < m.cols(); ++j) v.push_back(m.at(i, j));
  return v;
}

// Coordinates of t in the given basis of its Nat space.
inline std::vector<uint32_t> nat_coords(const std::vector<NatTransform>& basis, const NatTransform& t) {
  const Fp& f = t.source.category().field();
  std::vector<uint32_t> tv = nat_to_vector(t);
  Matrix sys(f, tv.size(), basis.size());
  for (size_t b = 0; b < basis.size(); ++b) {
    std::vector<uint32_t> bv = nat_to_vector(basis[b]);
    for (size_t i = 0; i < bv.size(); ++i) sys.set(i, b, bv[i]);
  }
  auto sol = solve(sys, Matrix::column(f, tv));
  if (!sol) throw InternalError("transformation outside spanned Nat space");
  return sol->particular.col(0);
}

// The Yoneda image of x in M(c): the transformation P_c -> M sending a basis
// morphism h to M(h).x; evaluating at the identity recovers x.
inline NatTransform yoneda_element(const CModule& m, int c, const std::vector<uint32_t>& x) {
  const Category& cat = m.category();
  std::vector<Matrix> comp;
  for (int xo = 0; xo < cat.object_count(); ++xo) {
    const auto& paths = cat.basis_paths(c, xo);
    Matrix e(cat.field(), size_t(m.dim(xo)), paths.size());
    for (size_t j = 0; j < paths.size(); ++j) {
      std::vector<uint32_t> col = m.act_path(c, paths[j]).apply(x);
      for (size_t i = 0; i < col.size(); ++i) e.set(i, j, col[i]);
    }
    comp.push_back(std::move(e));
  }
  return make_nat(representable(cat, c), m, std::move(comp));
}

// ---- subfunctors ----

// One subspace per object, closed under every arrow action of the parent.
struct Subfunctor {
  std::vector<Subspace> fibers;

  int dim(int c) const { return int(fibers[size_t(c)].dim()); }
  int total_dim() const {
    int t = 0;
    for (const Subspace& s : fibers) t += int(s.dim());
    return t;
  }
  friend bool operator==(const Subfunctor&, const Subfunctor&) = default;
  friend bool operator<(const Subfunctor& a, const Subfunctor& b) { return a.fibers < b.fibers; }
};

inline bool is_closed_under_action(const CModule& m, const std::vector<Subspace>& fibers) {
  const Category& cat = m.category();
  for (int a = 0; a < cat.arrow_count(); ++a) {
    const ArrowDecl& ar = cat.arrow(a);
    Subspace img = image_of_subspace(m.act_arrow(a), fibers[size_t(ar.src)]);
    if (!fibers[size_t(ar.dst)].contains(img)) return false;
  }
  return true;
}

inline Subfunctor make_subfunctor(const CModule& m, std::vector<Subspace> fibers) {
  if (fibers.size() != size_t(m.category().object_count())) throw InternalError("fiber count mismatch");
  for (int c = 0; c < m.category().object_count(); ++c)
    if (fibers[size_t(c)].ambient_dim() != size_t(m.dim(c))) throw InternalError("fiber ambient mismatch");
  if (!is_closed_under_action(m, fibers)) throw InternalError("fibers not closed under the action");
  return Subfunctor{std::move(fibers)};
}

inline Subfunctor zero_subfunctor(const CModule& m) {
  std::vector<Subspace> fibers;
  for (int c = 0; c < m.category().object_count(); ++c)
    fibers.push_back(Subspace::zero(m.category().field(), size_t(m.dim(c))));
  return Subfunctor{std::move(fibers)};
}

inline Subfunctor full_subfunctor(const CModule& m) {
  std::vector<Subspace> fibers;
  for (int c = 0; c < m.category().object_count(); ++c)
    fibers.push_back(Subspace::full(m.category().field(), size_t(m.dim(c))));
  return Subfunctor{std::move(fibers)};
}

inline Subfunctor kernel(const NatTransform& f) {
  std::vector<Subspace> fibers;
  for (const Matrix& m : f.comp) fibers.push_back(glw::kernel(m));
  return make_subfunctor(f.source, std::move(fibers));
}

inline Subfunctor image(const NatTransform& f) {
  std::vector<Subspace> fibers;
  for (const Matrix& m : f.comp) fibers.push_back(glw::image(m));
  return make_subfunctor(f.target, std::move(fibers));
}

// Smallest subfunctor containing the listed elements: closes the spans under
// all arrow actions to a fixpoint.
inline Subfunctor sub_generated(const CModule& m, const std::vector<std::pair<int, std::vector<uint32_t>>>& elems) {
  const Category& cat = m.category();
  std::vector<Subspace> fibers;
  for (int c = 0; c < cat.object_count(); ++c)
    fibers.push_back(Subspace::zero(cat.field(), size_t(m.dim(c))));
  for (const auto& [c, v] : elems) {
    if (v.size() != size_t(m.dim(c))) throw InputError("generator does not lie in the stated fiber");
    Matrix row(cat.field(), 1, v.size());
    for (size_t j = 0; j < v.size(); ++j) row.set(0, j, v[j]);
    fibers[size_t(c)] = join(fibers[size_t(c)], Subspace::span(row));
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < cat.arrow_count(); ++a) {
      const ArrowDecl& ar = cat.arrow(a);
      Subspace img = image_of_subspace(m.act_arrow(a), fibers[size_t(ar.src)]);
      Subspace joined = join(fibers[size_t(ar.dst)], img);
      if (joined.dim() != fibers[size_t(ar.dst)].dim()) {
        fibers[size_t(ar.dst)] = joined;
        changed = true;
      }
    }
  }
  return make_subfunctor(m, std::move(fibers));
}

inline Subfunctor sub_meet(const CModule& m, const Subfunctor& s, const Subfunctor& t) {
  std::vector<Subspace> fibers;
  for (size_t c = 0; c < s.fibers.size(); ++c) fibers.push_back(meet(s.fibers[c], t.fibers[c]));
  return make_subfunctor(m, std::move(fibers));
}

inline Subfunctor sub_join(const CModule& m, const Subfunctor& s, const Subfunctor& t) {
  std::vector<Subspace> fibers;
  for (size_t c = 0; c < s.fibers.size(); ++c) fibers.push_back(join(s.fibers[c], t.fibers[c]));
  return make_subfunctor(m, std::move(fibers));
}

inline bool sub_contains(const Subfunctor& outer, const Subfunctor& inner) {
  for (size_t c = 0; c < outer.fibers.size(); ++c)
    if (!outer.fibers[c].contains(inner.fibers[c])) return false;
  return true;
}

struct QuotientModule {
  CModule module;
  NatTransform projection;
};

// Pointwise quotient with induced actions; the projection is natural with
// kernel exactly the subfunctor.
inline QuotientModule quotient(const CModule& m, const Subfunctor& s) {
  const Category& cat = m.category();
  std::vector<int> dims;
  std::vector<Matrix> proj, sect;
  for (int c = 0; c < cat.object_count(); ++c) {
    proj.push_back(s.fibers[size_t(c)].quotient_map());
    sect.push_back(s.fibers[size_t(c)].quotient_section());
    dims.push_back(int(proj.back().rows()));
  }
  std::vector<Matrix> action;
  for (int a = 0; a < cat.arrow_count(); ++a) {
    const ArrowDecl& ar = cat.arrow(a);
    action.push_back(proj[size_t(ar.dst)] * m.act_arrow(a) * sect[size_t(ar.src)]);
  }
  CModule q(cat, std::move(dims), std::move(action));
  q.validate();
  NatTransform p = make_nat(m, q, std::move(proj));
  if (!(kernel(p) == s)) throw InternalError("projection kernel differs from subfunctor");
  return QuotientModule{std::move(q), std::move(p)};
}

struct SubmoduleView {
  CModule module;
  NatTransform inclusion;
};

// The subfunctor as a module in the fiber bases, with its inclusion.
inline SubmoduleView submodule(const CModule& m, const Subfunctor& s) {
  const Category& cat = m.category();
  std::vector<int> dims;
  for (int c = 0; c < cat.object_count(); ++c) dims.push_back(s.dim(c));
  std::vector<Matrix> action;
  for (int a = 0; a < cat.arrow_count(); ++a) {
    const ArrowDecl& ar = cat.arrow(a);
    const Subspace& src = s.fibers[size_t(ar.src)];
    const Subspace& dst = s.fibers[size_t(ar.dst)];
    Matrix r(cat.field(), dst.dim(), src.dim());
    for (size_t j = 0; j < src.dim(); ++j) {
      std::vector<uint32_t> w = m.act_arrow(a).apply(src.basis().row(j));
      auto coords = dst.coords_of(w);
      if (!coords) throw InternalError("subfunctor not closed under action");
      for (size_t i = 0; i < coords->size(); ++i) r.set(i, j, (*coords)[i]);
    }
    action.push_back(std::move(r));
  }
  CModule sub(cat, std::move(dims), std::move(action));
  sub.validate();
  std::vector<Matrix> inc;
  for (int c = 0; c < cat.object_count(); ++c) inc.push_back(s.fibers[size_t(c)].basis_columns());
  NatTransform i = make_nat(sub, m, std::move(inc));
  return SubmoduleView{std::move(sub), std::move(i)};
}

// ---- module file format ----

// Parses the module text format:
//   module over <category file>
//   space <object> dim <d>
//   map <arrow> = [[...],[...]]
// Rows are indexed by the target basis; omitted spaces have dimension zero
// and omitted maps are zero.
inline CModule parse_module(std::string_view src, const Category& cat, std::string* over_file = nullptr) {
  text::Tokenizer tk(src);
  const QuiverPresentation& q = cat.presentation();
  std::vector<int> dims(size_t(cat.object_count()), 0);
  std::vector<char> have_dim(size_t(cat.object_count()), 0);
  std::vector<std::optional<std::vector<std::vector<int64_t>>>> maps(size_t(cat.arrow_count()));

  text::Token head = tk.next();
  if (!head.is("module")) text::Tokenizer::fail(head, "expected 'module over <file>'");
  tk.expect("over");
  std::string over = tk.rest_of_line();
  if (over.empty()) throw ParseError("missing category file after 'over'", head.line, head.col);
  if (over_file) *over_file = over;

  for (;;) {
    text::Token t = tk.next();
    if (t.kind == text::TokKind::End) break;
    if (t.is("space")) {
      text::Token id = tk.expect_ident();
      int c = q.object_index(id.text);
      if (c < 0) text::Tokenizer::fail(id, "unknown object '" + id.text + "'");
      if (have_dim[size_t(c)]) text::Tokenizer::fail(id, "duplicate space for '" + id.text + "'");
      tk.expect("dim");
      int64_t d = tk.expect_int();
      if (d < 0) text::Tokenizer::fail(id, "negative dimension");
      dims[size_t(c)] = int(d);
      have_dim[size_t(c)] = 1;
    } else if (t.is("map")) {
      text::Token id = tk.expect_ident();
      int a = q.arrow_index(id.text);
      if (a < 0) text::Tokenizer::fail(id, "unknown arrow '" + id.text + "'");
      if (maps[size_t(a)]) text::Tokenizer::fail(id, "duplicate map for '" + id.text + "'");
      tk.expect("=");
      tk.expect("[");
      std::vector<std::vector<int64_t>> rows;
      if (!tk.accept("]")) {
        do {
          tk.expect("[");
          std::vector<int64_t> row;
          if (!tk.accept("]")) {
            do {
              row.push_back(tk.expect_int());
            } while (tk.accept(","));
            tk.expect("]");
          }
          rows.push_back(std::move(row));
        } while (tk.accept(","));
        tk.expect("]");
      }
      maps[size_t(a)] = std::move(rows);
    } else {
      text::Tokenizer::fail(t, "expected 'space' or 'map'");
    }
  }

  std::vector<Matrix> action;
  for (int a = 0; a < cat.arrow_count(); ++a) {
    const ArrowDecl& ar = cat.arrow(a);
    size_t r = size_t(dims[size_t(ar.dst)]);
    size_t c = size_t(dims[size_t(ar.src)]);
    if (!maps[size_t(a)]) {
      action.emplace_back(cat.field(), r, c);
      continue;
    }
    const auto& rows = *maps[size_t(a)];
    if (rows.size() != r || (r > 0 && rows[0].size() != c))
      throw InputError("map for arrow '" + ar.name + "' has wrong shape (expected " + std::to_string(r) + "x" +
                       std::to_string(c) + ")");
    action.push_back(Matrix::from_rows(cat.field(), rows));
  }
  return make_module(cat, std::move(dims), std::move(action));
}

}  // namespace glw
