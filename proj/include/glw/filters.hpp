#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "glw/cmodule.hpp"
#include "glw/errors.hpp"
#include "glw/linalg.hpp"
#include "glw/presentation.hpp"
#include "glw/textio.hpp"

namespace glw {

// A left ideal of the representable at `base`: a subfunctor of Hom(base,-),
// i.e. a family of subspaces closed under postcomposition.
struct LeftIdeal {
  int base;
  Subfunctor body;
  friend bool operator==(const LeftIdeal&, const LeftIdeal&) = default;
};

// Ann(x,-) for x in M(c): pointwise kernel of h |-> M(h).x. `rep` must be the
// representable at c; the overload below rebuilds it.
inline LeftIdeal annihilator(const CModule& rep, const CModule& m, int c, const std::vector<uint32_t>& x) {
  const Category& cat = m.category();
  std::vector<Subspace> fibers;
  for (int xo = 0; xo < cat.object_count(); ++xo) {
    const auto& paths = cat.basis_paths(c, xo);
    Matrix eval(cat.field(), size_t(m.dim(xo)), paths.size());
    for (size_t j = 0; j < paths.size(); ++j) {
      std::vector<uint32_t> col = m.act_path(c, paths[j]).apply(x);
      for (size_t i = 0; i < col.size(); ++i) eval.set(i, j, col[i]);
    }
    fibers.push_back(kernel(eval));
  }
  return LeftIdeal{c, make_subfunctor(rep, std::move(fibers))};
}

inline LeftIdeal annihilator(const CModule& m, int c, const std::vector<uint32_t>& x) {
  return annihilator(representable(m.category(), c), m, c, x);
}

// (I : h) for h: c -> b, the pullback of I along precomposition with h.
inline LeftIdeal colon(const Category& cat, const LeftIdeal& ideal, const Morphism& h) {
  if (h.src != ideal.base) throw InputError("colon morphism must start at the ideal's base object");
  int b = h.dst;
  std::vector<Subspace> fibers;
  for (int x = 0; x < cat.object_count(); ++x)
    fibers.push_back(preimage(cat.precompose_matrix(h, x), ideal.body.fibers[size_t(x)]));
  return LeftIdeal{b, make_subfunctor(representable(cat, b), std::move(fibers))};
}

// The full lattice of left ideals of Hom(base,-), in canonical order
// (total dimension, then lexicographic on the RREF fiber bases).
struct IdealLattice {
  int base = -1;
  CModule rep;
  std::vector<LeftIdeal> ideals;
  std::vector<std::string> labels;             // gen(...) shorthand per ideal
  std::vector<std::vector<char>> leq;          // leq[i][j]: ideals[i] <= ideals[j]
  std::vector<std::pair<int, int>> covers;     // (lower, upper)
  std::vector<std::vector<int>> meet_of, join_of;
  int bottom = -1, top = -1;

  explicit IdealLattice(CModule r) : rep(std::move(r)) {}

  int size() const { return int(ideals.size()); }

  int index_of(const Subfunctor& s) const {
    for (int i = 0; i < size(); ++i)
      if (ideals[size_t(i)].body == s) return i;
    return -1;
  }

  const std::vector<int>& dim_vector(int i) const { return dim_vectors[size_t(i)]; }
  std::vector<std::vector<int>> dim_vectors;
};

namespace detail {

inline bool canonical_less(const Subfunctor& a, const Subfunctor& b) {
  int ta = a.total_dim(), tb = b.total_dim();
  if (ta != tb) return ta < tb;
  return a.fibers < b.fibers;
}

// Greedy minimal generator label for an ideal of Hom(base,-).
inline std::string ideal_label(const Category& cat, const CModule& rep, int base, const Subfunctor& body) {
  if (body.total_dim() == 0) return "zero";
  bool full = true;
  for (int c = 0; c < cat.object_count(); ++c)
    if (body.dim(c) != rep.dim(c)) full = false;
  if (full) return "full";
  std::vector<std::pair<int, std::vector<uint32_t>>> gens;
  Subfunctor have = zero_subfunctor(rep);
  for (int c = 0; c < cat.object_count(); ++c)
    for (size_t r = 0; r < body.fibers[size_t(c)].dim(); ++r) {
      std::vector<uint32_t> v = body.fibers[size_t(c)].basis().row(r);
      if (have.fibers[size_t(c)].contains(v)) continue;
      gens.emplace_back(c, v);
      have = sub_generated(rep, gens);
    }
  // Drop generators that later ones made redundant.
  for (size_t k = 0; k < gens.size();) {
    std::vector<std::pair<int, std::vector<uint32_t>>> rest;
    for (size_t i = 0; i < gens.size(); ++i)
      if (i != k) rest.push_back(gens[i]);
    if (sub_generated(rep, rest) == body)
      gens = std::move(rest);
    else
      ++k;
  }
  std::string s = "gen(";
  for (size_t k = 0; k < gens.size(); ++k) {
    if (k) s += ", ";
    s += cat.morphism_label(Morphism{base, gens[k].first, gens[k].second});
  }
  return s + ")";
}

}  // namespace detail

// Collects every left ideal of Hom(c,-): cyclic subfunctors generated by each
// fiber vector, closed under join. Every subfunctor is a join of cyclic ones,
// so the result is the complete submodule lattice.
inline IdealLattice ideal_lattice(const Category& cat, int c, uint64_t cap, size_t lattice_cap = 64) {
  CModule rep = representable(cat, c);
  std::set<Subfunctor> found;
  found.insert(zero_subfunctor(rep));
  for (int x = 0; x < cat.object_count(); ++x)
    for (auto& v : enumerate_vectors(cat.field(), size_t(rep.dim(x)), cap)) {
      bool zero = true;
      for (uint32_t e : v)
        if (e) zero = false;
      if (zero) continue;
      found.insert(sub_generated(rep, {{x, v}}));
      if (found.size() > lattice_cap) throw CapExceeded("ideal lattice exceeds cap");
    }
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Subfunctor> cur(found.begin(), found.end());
    for (size_t i = 0; i < cur.size(); ++i)
      for (size_t j = i + 1; j < cur.size(); ++j) {
        Subfunctor jn = sub_join(rep, cur[i], cur[j]);
        if (found.insert(jn).second) {
          grew = true;
          if (found.size() > lattice_cap) throw CapExceeded("ideal lattice exceeds cap");
        }
      }
  }

  std::vector<Subfunctor> sorted(found.begin(), found.end());
  std::sort(sorted.begin(), sorted.end(), detail::canonical_less);

  IdealLattice lat(rep);
  lat.base = c;
  for (auto& s : sorted) {
    lat.labels.push_back(detail::ideal_label(cat, lat.rep, c, s));
    std::vector<int> dv;
    for (int x = 0; x < cat.object_count(); ++x) dv.push_back(s.dim(x));
    lat.dim_vectors.push_back(std::move(dv));
    lat.ideals.push_back(LeftIdeal{c, std::move(s)});
  }
  int n = lat.size();
  lat.leq.assign(size_t(n), std::vector<char>(size_t(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      lat.leq[size_t(i)][size_t(j)] = sub_contains(lat.ideals[size_t(j)].body, lat.ideals[size_t(i)].body);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || !lat.leq[size_t(i)][size_t(j)]) continue;
      bool cover = true;
      for (int k = 0; k < n && cover; ++k)
        if (k != i && k != j && lat.leq[size_t(i)][size_t(k)] && lat.leq[size_t(k)][size_t(j)]) cover = false;
      if (cover) lat.covers.emplace_back(i, j);
    }
  lat.meet_of.assign(size_t(n), std::vector<int>(size_t(n), -1));
  lat.join_of.assign(size_t(n), std::vector<int>(size_t(n), -1));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int mi = lat.index_of(sub_meet(lat.rep, lat.ideals[size_t(i)].body, lat.ideals[size_t(j)].body));
      int ji = lat.index_of(sub_join(lat.rep, lat.ideals[size_t(i)].body, lat.ideals[size_t(j)].body));
      if (mi < 0 || ji < 0) throw InternalError("lattice not closed under meet/join");
      lat.meet_of[size_t(i)][size_t(j)] = lat.meet_of[size_t(j)][size_t(i)] = mi;
      lat.join_of[size_t(i)][size_t(j)] = lat.join_of[size_t(j)][size_t(i)] = ji;
    }
  lat.bottom = lat.index_of(zero_subfunctor(lat.rep));
  lat.top = lat.index_of(full_subfunctor(lat.rep));
  if (lat.bottom < 0 || lat.top < 0) throw InternalError("lattice missing bottom or top");
  return lat;
}

// The per-object ideal lattices of a category plus precomputed colon tables:
// colon_idx[c][i][b][code] is the lattice index at b of (I_i : h) where h is
// the morphism c -> b with lexicographic code `code`, and elem_codes[c][i][b]
// lists the codes of the fiber elements I_i(b).
struct LatticeSet {
  const Category* cat = nullptr;
  std::vector<IdealLattice> at;
  std::vector<std::vector<std::vector<std::vector<int>>>> colon_idx;
  std::vector<std::vector<std::vector<std::vector<uint64_t>>>> elem_codes;

  const Category& category() const { return *cat; }
  int object_count() const { return int(at.size()); }
};

inline LatticeSet build_lattices(const Category& cat, uint64_t cap, size_t lattice_cap = 64) {
  LatticeSet ls;
  ls.cat = &cat;
  for (int c = 0; c < cat.object_count(); ++c) ls.at.push_back(ideal_lattice(cat, c, cap, lattice_cap));
  int n = cat.object_count();
  ls.colon_idx.resize(size_t(n));
  ls.elem_codes.resize(size_t(n));
  for (int c = 0; c < n; ++c) {
    int sz = ls.at[size_t(c)].size();
    ls.colon_idx[size_t(c)].resize(size_t(sz));
    ls.elem_codes[size_t(c)].resize(size_t(sz));
    for (int i = 0; i < sz; ++i) {
      ls.colon_idx[size_t(c)][size_t(i)].resize(size_t(n));
      ls.elem_codes[size_t(c)][size_t(i)].resize(size_t(n));
      for (int b = 0; b < n; ++b) {
        auto morphisms = cat.enumerate_morphisms(c, b, cap);
        auto& row = ls.colon_idx[size_t(c)][size_t(i)][size_t(b)];
        row.reserve(morphisms.size());
        for (const Morphism& h : morphisms) {
          LeftIdeal col = colon(cat, ls.at[size_t(c)].ideals[size_t(i)], h);
          int idx = ls.at[size_t(b)].index_of(col.body);
          if (idx < 0) throw InternalError("colon ideal missing from lattice");
          row.push_back(idx);
        }
        auto& codes = ls.elem_codes[size_t(c)][size_t(i)][size_t(b)];
        for (auto& v : enumerate_elements(ls.at[size_t(c)].ideals[size_t(i)].body.fibers[size_t(b)], cap))
          codes.push_back(cat.morphism_code(Morphism{c, b, v}));
        std::sort(codes.begin(), codes.end());
      }
    }
  }
  return ls;
}

// A family of ideal sets, one per object, stored as sorted lattice indices.
struct Filter {
  std::vector<std::vector<int>> members;
  friend bool operator==(const Filter&, const Filter&) = default;

  bool contains(int c, int ideal) const {
    const auto& m = members[size_t(c)];
    return std::binary_search(m.begin(), m.end(), ideal);
  }
};

class EmptyFilterError : public InputError {
 public:
  using InputError::InputError;
};

inline void require_nonempty(const LatticeSet& ls, const Filter& f) {
  if (f.members.size() != size_t(ls.object_count())) throw InputError("filter object count mismatch");
  for (int c = 0; c < ls.object_count(); ++c)
    if (f.members[size_t(c)].empty())
      throw EmptyFilterError("empty filter set at object " + ls.category().object_name(c));
}

inline Filter trivial_filter(const LatticeSet& ls) {
  Filter f;
  for (const auto& lat : ls.at) f.members.push_back({lat.top});
  return f;
}

inline Filter improper_filter(const LatticeSet& ls) {
  Filter f;
  for (const auto& lat : ls.at) {
    std::vector<int> all(size_t(lat.size()));
    for (int i = 0; i < lat.size(); ++i) all[size_t(i)] = i;
    f.members.push_back(std::move(all));
  }
  return f;
}

// The up-set of one chosen ideal per object. Every nonempty up-closed
// meet-closed subset of a finite lattice has this form.
inline Filter principal_filter(const LatticeSet& ls, const std::vector<int>& min_ideal) {
  Filter f;
  for (int c = 0; c < ls.object_count(); ++c) {
    const IdealLattice& lat = ls.at[size_t(c)];
    std::vector<int> set;
    for (int j = 0; j < lat.size(); ++j)
      if (lat.leq[size_t(min_ideal[size_t(c)])][size_t(j)]) set.push_back(j);
    f.members.push_back(std::move(set));
  }
  return f;
}

// ---- axiom checker ----

enum class Axiom { T1, T2, T3, T4 };

inline const char* axiom_name(Axiom a) {
  switch (a) {
    case Axiom::T1: return "T1";
    case Axiom::T2: return "T2";
    case Axiom::T3: return "T3";
    default: return "T4";
  }
}

struct AxiomWitness {
  int c = -1;           // object where the violation lives
  int ideal_i = -1;     // T1 member / T2 first member / T3 member / T4 candidate I
  int ideal_j = -1;     // T1 superset outside / T2 second member / T4 member J
  int b = -1;           // T3 target object
  std::optional<Morphism> h;  // T3 morphism
  int result_ideal = -1;      // T2 meet / T3 colon result
};

struct AxiomVerdict {
  bool pass = true;
  std::optional<AxiomWitness> witness;
};

struct AxiomReport {
  AxiomVerdict t1, t2, t3, t4;
  bool linear() const { return t1.pass && t2.pass && t3.pass; }
  bool gabriel() const { return linear() && t4.pass; }
  const AxiomVerdict& verdict(Axiom a) const {
    switch (a) {
      case Axiom::T1: return t1;
      case Axiom::T2: return t2;
      case Axiom::T3: return t3;
      default: return t4;
    }
  }
};

namespace detail {

// True when every colon of I along every element of J's fibers stays in F.
inline bool t4_hypothesis(const LatticeSet& ls, const Filter& f, int c, int ideal_j, int ideal_i) {
  for (int b = 0; b < ls.object_count(); ++b) {
    const auto& codes = ls.elem_codes[size_t(c)][size_t(ideal_j)][size_t(b)];
    const auto& colons = ls.colon_idx[size_t(c)][size_t(ideal_i)][size_t(b)];
    for (uint64_t code : codes)
      if (!f.contains(b, colons[size_t(code)])) return false;
  }
  return true;
}

}  // namespace detail

inline AxiomReport check_axioms(const LatticeSet& ls, const Filter& f, uint64_t cap) {
  require_nonempty(ls, f);
  (void)cap;
  AxiomReport rep;
  int n = ls.object_count();

  for (int c = 0; c < n && rep.t1.pass; ++c) {
    const IdealLattice& lat = ls.at[size_t(c)];
    for (int i : f.members[size_t(c)]) {
      for (int j = 0; j < lat.size(); ++j)
        if (lat.leq[size_t(i)][size_t(j)] && !f.contains(c, j)) {
          rep.t1.pass = false;
          rep.t1.witness = AxiomWitness{c, i, j, -1, std::nullopt, -1};
          break;
        }
      if (!rep.t1.pass) break;
    }
  }

  for (int c = 0; c < n && rep.t2.pass; ++c) {
    const IdealLattice& lat = ls.at[size_t(c)];
    for (int i : f.members[size_t(c)]) {
      for (int j : f.members[size_t(c)]) {
        int m = lat.meet_of[size_t(i)][size_t(j)];
        if (!f.contains(c, m)) {
          rep.t2.pass = false;
          rep.t2.witness = AxiomWitness{c, i, j, -1, std::nullopt, m};
          break;
        }
      }
      if (!rep.t2.pass) break;
    }
  }

  for (int c = 0; c < n && rep.t3.pass; ++c) {
    for (int i : f.members[size_t(c)]) {
      for (int b = 0; b < n && rep.t3.pass; ++b) {
        const auto& colons = ls.colon_idx[size_t(c)][size_t(i)][size_t(b)];
        for (uint64_t code = 0; code < colons.size(); ++code)
          if (!f.contains(b, colons[size_t(code)])) {
            auto morphisms = ls.category().enumerate_morphisms(c, b, colons.size());
            rep.t3.pass = false;
            rep.t3.witness = AxiomWitness{c, i, -1, b, morphisms[size_t(code)], colons[size_t(code)]};
            break;
          }
      }
      if (!rep.t3.pass) break;
    }
  }

  for (int c = 0; c < n && rep.t4.pass; ++c) {
    const IdealLattice& lat = ls.at[size_t(c)];
    for (int j : f.members[size_t(c)]) {
      for (int i = 0; i < lat.size(); ++i) {
        if (f.contains(c, i)) continue;
        if (detail::t4_hypothesis(ls, f, c, j, i)) {
          rep.t4.pass = false;
          rep.t4.witness = AxiomWitness{c, i, j, -1, std::nullopt, -1};
          break;
        }
      }
      if (!rep.t4.pass) break;
    }
  }
  return rep;
}

// Re-validates a reported witness from scratch (recomputing colon ideals
// instead of trusting the cached tables). True means the violation is real.
inline bool recheck_witness(const LatticeSet& ls, const Filter& f, Axiom a, const AxiomWitness& w) {
  const Category& cat = ls.category();
  const IdealLattice& lat = ls.at[size_t(w.c)];
  switch (a) {
    case Axiom::T1:
      return f.contains(w.c, w.ideal_i) &&
             sub_contains(lat.ideals[size_t(w.ideal_j)].body, lat.ideals[size_t(w.ideal_i)].body) &&
             !f.contains(w.c, w.ideal_j);
    case Axiom::T2: {
      if (!f.contains(w.c, w.ideal_i) || !f.contains(w.c, w.ideal_j)) return false;
      Subfunctor m = sub_meet(lat.rep, lat.ideals[size_t(w.ideal_i)].body, lat.ideals[size_t(w.ideal_j)].body);
      int idx = lat.index_of(m);
      return idx == w.result_ideal && !f.contains(w.c, idx);
    }
    case Axiom::T3: {
      if (!f.contains(w.c, w.ideal_i) || !w.h) return false;
      LeftIdeal col = colon(cat, lat.ideals[size_t(w.ideal_i)], *w.h);
      int idx = ls.at[size_t(w.b)].index_of(col.body);
      return idx == w.result_ideal && !f.contains(w.b, idx);
    }
    case Axiom::T4: {
      if (!f.contains(w.c, w.ideal_j) || f.contains(w.c, w.ideal_i)) return false;
      // Recompute the hypothesis without the cached tables.
      for (int b = 0; b < ls.object_count(); ++b) {
        for (auto& v :
             enumerate_elements(lat.ideals[size_t(w.ideal_j)].body.fibers[size_t(b)], uint64_t(1) << 30)) {
          LeftIdeal col = colon(cat, lat.ideals[size_t(w.ideal_i)], Morphism{w.c, b, v});
          int idx = ls.at[size_t(b)].index_of(col.body);
          if (!f.contains(b, idx)) return false;
        }
      }
      return true;
    }
  }
  return false;
}

enum class CompletionMode { Upclose, UpcloseMeet };

// Smallest family containing the generators and closed under the requested
// operations, computed per object inside the finite lattice.
inline Filter complete_filter(const LatticeSet& ls, const Filter& gens, CompletionMode mode) {
  Filter out;
  for (int c = 0; c < ls.object_count(); ++c) {
    const IdealLattice& lat = ls.at[size_t(c)];
    std::set<int> set(gens.members[size_t(c)].begin(), gens.members[size_t(c)].end());
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<int> cur(set.begin(), set.end());
      for (int i : cur)
        for (int j = 0; j < lat.size(); ++j)
          if (lat.leq[size_t(i)][size_t(j)] && set.insert(j).second) changed = true;
      if (mode == CompletionMode::UpcloseMeet)
        for (int i : cur)
          for (int j : cur)
            if (set.insert(lat.meet_of[size_t(i)][size_t(j)]).second) changed = true;
    }
    out.members.emplace_back(set.begin(), set.end());
  }
  return out;
}

// A filter together with its axiom report; the torsion and localization
// layers take this to enforce their preconditions without re-checking.
struct CheckedFilter {
  Filter filter;
  AxiomReport report;
  bool linear() const { return report.linear(); }
  bool gabriel() const { return report.gabriel(); }
};

inline CheckedFilter check_filter(const LatticeSet& ls, Filter f, uint64_t cap) {
  AxiomReport rep = check_axioms(ls, f, cap);
  return CheckedFilter{std::move(f), std::move(rep)};
}

// Membership of an arbitrary ideal in F_c. Mode "subset" tests
// "some member of F_c is contained in it", which agrees with literal lattice
// lookup whenever T1 holds; the checker asserts that agreement.
inline bool ideal_in_filter(const LatticeSet& ls, const CheckedFilter& cf, int c, const Subfunctor& body) {
  const IdealLattice& lat = ls.at[size_t(c)];
  bool subset_member = false;
  for (int i : cf.filter.members[size_t(c)])
    if (sub_contains(body, lat.ideals[size_t(i)].body)) {
      subset_member = true;
      break;
    }
  if (cf.report.t1.pass) {
    int idx = lat.index_of(body);
    if (idx < 0) throw InternalError("ideal missing from lattice");
    bool literal = cf.filter.contains(c, idx);
    if (literal != subset_member) throw InternalError("membership tests disagree under T1");
  }
  return subset_member;
}

struct TorsionWitness {
  int c;
  std::vector<uint32_t> x;
  Subfunctor annihilator_body;
};

// First fiber element whose annihilator fails to lie in the filter;
// nullopt means M is F-torsion. Quantifies over every fiber vector.
inline std::optional<TorsionWitness> torsion_obstruction(const LatticeSet& ls, const CModule& m,
                                                         const CheckedFilter& cf, uint64_t cap) {
  if (!cf.linear()) throw InputError("torsion tests require a filter satisfying T1-T3");
  for (int c = 0; c < ls.object_count(); ++c)
    for (auto& x : enumerate_vectors(ls.category().field(), size_t(m.dim(c)), cap)) {
      LeftIdeal ann = annihilator(ls.at[size_t(c)].rep, m, c, x);
      if (!ideal_in_filter(ls, cf, c, ann.body)) return TorsionWitness{c, x, std::move(ann.body)};
    }
  return std::nullopt;
}

inline bool is_torsion(const LatticeSet& ls, const CModule& m, const CheckedFilter& cf, uint64_t cap) {
  return !torsion_obstruction(ls, m, cf, cap).has_value();
}

// t(M): pointwise the elements with annihilator in the filter, assembled as
// subspaces and verified to be a subfunctor.
inline Subfunctor torsion_radical(const LatticeSet& ls, const CModule& m, const CheckedFilter& cf, uint64_t cap) {
  if (!cf.linear()) throw InputError("torsion tests require a filter satisfying T1-T3");
  const Fp& f = ls.category().field();
  std::vector<Subspace> fibers;
  for (int c = 0; c < ls.object_count(); ++c) {
    std::vector<std::vector<uint32_t>> members;
    for (auto& x : enumerate_vectors(f, size_t(m.dim(c)), cap)) {
      LeftIdeal ann = annihilator(ls.at[size_t(c)].rep, m, c, x);
      if (ideal_in_filter(ls, cf, c, ann.body)) members.push_back(x);
    }
    Matrix rows(f, members.size(), size_t(m.dim(c)));
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = 0; j < members[i].size(); ++j) rows.set(i, j, members[i][j]);
    fibers.push_back(Subspace::span(rows));
  }
  return make_subfunctor(m, std::move(fibers));
}

// F_T: per object, the ideals whose representable quotient lies in the class.
inline Filter filter_of_torsion_class(const LatticeSet& ls, const std::function<bool(const CModule&)>& in_class) {
  Filter f;
  for (int c = 0; c < ls.object_count(); ++c) {
    const IdealLattice& lat = ls.at[size_t(c)];
    std::vector<int> set;
    for (int i = 0; i < lat.size(); ++i) {
      CModule q = quotient(lat.rep, lat.ideals[size_t(i)].body).module;
      if (in_class(q)) set.push_back(i);
    }
    f.members.push_back(std::move(set));
  }
  return f;
}

// Census of Gabriel filters. Nonempty up-closed meet-closed subsets of a
// finite lattice are exactly the principal up-sets, so candidates are one
// minimal ideal per object; T3 and T4 prune the product space.
inline std::vector<CheckedFilter> enumerate_gabriel_filters(const LatticeSet& ls, uint64_t cap,
                                                            uint64_t budget = 1 << 20) {
  int n = ls.object_count();
  uint64_t combos = 1;
  for (int c = 0; c < n; ++c) {
    combos *= uint64_t(ls.at[size_t(c)].size());
    if (combos > budget) throw CapExceeded("census search space exceeds budget");
  }

  std::vector<CheckedFilter> out;
  std::vector<int> min_ideal(size_t(n), 0);
  for (uint64_t tick = 0; tick < combos; ++tick) {
    uint64_t t = tick;
    for (int c = n - 1; c >= 0; --c) {
      min_ideal[size_t(c)] = int(t % uint64_t(ls.at[size_t(c)].size()));
      t /= uint64_t(ls.at[size_t(c)].size());
    }
    // T3 via the minimal ideals: colon(I0(c), h) must contain I0(b).
    bool ok = true;
    for (int c = 0; c < n && ok; ++c)
      for (int b = 0; b < n && ok; ++b) {
        const auto& colons = ls.colon_idx[size_t(c)][size_t(min_ideal[size_t(c)])][size_t(b)];
        for (uint64_t code = 0; code < colons.size(); ++code)
          if (!ls.at[size_t(b)].leq[size_t(min_ideal[size_t(b)])][size_t(colons[size_t(code)])]) {
            ok = false;
            break;
          }
      }
    if (!ok) continue;
    // T4 with J = I0(c): the weakest hypothesis, so it detects every violation.
    Filter f = principal_filter(ls, min_ideal);
    for (int c = 0; c < n && ok; ++c) {
      const IdealLattice& lat = ls.at[size_t(c)];
      for (int i = 0; i < lat.size() && ok; ++i) {
        if (f.contains(c, i)) continue;
        if (detail::t4_hypothesis(ls, f, c, min_ideal[size_t(c)], i)) ok = false;
      }
    }
    if (!ok) continue;
    CheckedFilter cf = check_filter(ls, std::move(f), cap);
    if (!cf.gabriel()) throw InternalError("census candidate failed the full axiom check");
    out.push_back(std::move(cf));
  }
  return out;
}

// ---- filter file format ----

struct ParsedFilter {
  std::string over;
  Filter literal;
  std::optional<CompletionMode> mode;
};

// Parses the filter text format:
//   filter over <category file>
//   at <object>: { <ideal-spec>, ... }
//   complete upclose | upclose+meet
// where <ideal-spec> is gen(<morphism expr>, ...), full, or zero.
inline ParsedFilter parse_filter(std::string_view src, const LatticeSet& ls) {
  const Category& cat = ls.category();
  const QuiverPresentation& q = cat.presentation();
  text::Tokenizer tk(src);
  ParsedFilter out;
  out.literal.members.assign(size_t(ls.object_count()), {});
  std::vector<char> seen(size_t(ls.object_count()), 0);

  text::Token head = tk.next();
  if (!head.is("filter")) text::Tokenizer::fail(head, "expected 'filter over <file>'");
  tk.expect("over");
  out.over = tk.rest_of_line();
  if (out.over.empty()) throw ParseError("missing category file after 'over'", head.line, head.col);

  auto parse_generator = [&](int c) -> std::pair<int, std::vector<uint32_t>> {
    // A linear combination of parallel paths out of c; '1' is the identity.
    std::optional<Morphism> acc;
    int64_t sign = 1;
    for (;;) {
      int64_t coeff = 1;
      text::Token t = tk.peek();
      if (t.kind == text::TokKind::Int && t.text != "1") {
        coeff = tk.expect_int();
        tk.expect("*");
      } else if (t.kind == text::TokKind::Int && t.text == "1") {
        // Either the identity path or a coefficient; decide by the next token.
        tk.next();
        if (tk.accept("*")) {
          coeff = 1;
        } else {
          Morphism id = cat.identity(c);
          Morphism term{c, c, id.coords};
          if (!acc) {
            acc = cat.zero_morphism(c, c);
          } else if (acc->dst != c) {
            text::Tokenizer::fail(t, "generator terms are not parallel");
          }
          for (size_t k = 0; k < term.coords.size(); ++k)
            acc->coords[k] = cat.field().add(acc->coords[k], cat.field().mul(cat.field().reduce(sign), term.coords[k]));
          if (tk.accept("+")) { sign = 1; continue; }
          if (tk.accept("-")) { sign = -1; continue; }
          break;
        }
      }
      // A path of arrow names, composition order in the text.
      std::vector<int> file_order;
      text::Token first = tk.expect_ident();
      int ai = q.arrow_index(first.text);
      if (ai < 0) text::Tokenizer::fail(first, "unknown arrow '" + first.text + "'");
      file_order.push_back(ai);
      while (tk.accept(".")) {
        text::Token nx = tk.expect_ident();
        ai = q.arrow_index(nx.text);
        if (ai < 0) text::Tokenizer::fail(nx, "unknown arrow '" + nx.text + "'");
        file_order.push_back(ai);
      }
      std::vector<int> app(file_order.rbegin(), file_order.rend());
      if (q.arrows[size_t(app.front())].src != c)
        text::Tokenizer::fail(first, "generator path does not start at the block's object");
      Morphism m = cat.path_morphism(c, app);
      uint32_t cf = cat.field().reduce(sign * coeff);
      if (!acc) {
        acc = cat.zero_morphism(c, m.dst);
      } else if (acc->dst != m.dst) {
        text::Tokenizer::fail(first, "generator terms are not parallel");
      }
      for (size_t k = 0; k < m.coords.size(); ++k)
        acc->coords[k] = cat.field().add(acc->coords[k], cat.field().mul(cf, m.coords[k]));
      if (tk.accept("+")) { sign = 1; continue; }
      if (tk.accept("-")) { sign = -1; continue; }
      break;
    }
    return {acc->dst, acc->coords};
  };

  for (;;) {
    text::Token t = tk.next();
    if (t.kind == text::TokKind::End) break;
    if (t.is("at")) {
      text::Token id = tk.expect_ident();
      int c = q.object_index(id.text);
      if (c < 0) text::Tokenizer::fail(id, "unknown object '" + id.text + "'");
      if (seen[size_t(c)]) text::Tokenizer::fail(id, "duplicate block for object '" + id.text + "'");
      seen[size_t(c)] = 1;
      tk.expect(":");
      tk.expect("{");
      const IdealLattice& lat = ls.at[size_t(c)];
      std::set<int> idxs;
      if (!tk.accept("}")) {
        do {
          text::Token spec = tk.peek();
          if (tk.accept("full")) {
            idxs.insert(lat.top);
          } else if (tk.accept("zero")) {
            idxs.insert(lat.bottom);
          } else if (tk.accept("gen")) {
            tk.expect("(");
            std::vector<std::pair<int, std::vector<uint32_t>>> gens;
            do {
              gens.push_back(parse_generator(c));
            } while (tk.accept(","));
            tk.expect(")");
            Subfunctor s = sub_generated(lat.rep, gens);
            int idx = lat.index_of(s);
            if (idx < 0) throw InternalError("generated ideal missing from lattice");
            idxs.insert(idx);
          } else {
            text::Tokenizer::fail(spec, "expected 'gen(...)', 'full', or 'zero'");
          }
        } while (tk.accept(","));
        tk.expect("}");
      }
      out.literal.members[size_t(c)].assign(idxs.begin(), idxs.end());
    } else if (t.is("complete")) {
      text::Token m = tk.expect_ident();
      if (m.text != "upclose") text::Tokenizer::fail(m, "expected 'upclose' or 'upclose+meet'");
      if (tk.accept("+")) {
        text::Token m2 = tk.expect_ident();
        if (m2.text != "meet") text::Tokenizer::fail(m2, "expected 'meet'");
        out.mode = CompletionMode::UpcloseMeet;
      } else {
        out.mode = CompletionMode::Upclose;
      }
    } else {
      text::Tokenizer::fail(t, "expected 'at' or 'complete'");
    }
  }
  require_nonempty(ls, out.literal);
  return out;
}

}  // namespace glw
