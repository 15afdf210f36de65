#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "glw/cmodule.hpp"
#include "glw/errors.hpp"
#include "glw/filters.hpp"
#include "glw/linalg.hpp"
#include "glw/presentation.hpp"
#include "glw/rng.hpp"

namespace glw {

// Nat(I-as-module, M) for a left ideal I of Hom(I.base, -).
inline std::vector<NatTransform> hom_from_ideal(const CModule& rep, const LeftIdeal& ideal, const CModule& m) {
  SubmoduleView v = submodule(rep, ideal.body);
  return nat_hom(v.module, m);
}

inline std::vector<NatTransform> hom_from_ideal(const Category& cat, const LeftIdeal& ideal, const CModule& m) {
  return hom_from_ideal(representable(cat, ideal.base), ideal, m);
}

namespace detail {

// Columns are M(h_j).x over the Hom(c,X) basis.
inline Matrix yoneda_eval(const CModule& m, int c, const std::vector<uint32_t>& x, int xo) {
  const auto& paths = m.category().basis_paths(c, xo);
  Matrix e(m.category().field(), size_t(m.dim(xo)), paths.size());
  for (size_t j = 0; j < paths.size(); ++j) {
    std::vector<uint32_t> col = m.act_path(c, paths[j]).apply(x);
    for (size_t i = 0; i < col.size(); ++i) e.set(i, j, col[i]);
  }
  return e;
}

// The Yoneda transformation of x restricted along an ideal inclusion:
// ideal-module -> M, h |-> M(h).x.
inline NatTransform yoneda_restricted(const CModule& m, int c, const std::vector<uint32_t>& x,
                                      const CModule& ideal_mod, const NatTransform& inclusion) {
  std::vector<Matrix> comp;
  for (int xo = 0; xo < m.category().object_count(); ++xo)
    comp.push_back(yoneda_eval(m, c, x, xo) * inclusion.at(xo));
  return make_nat(ideal_mod, m, std::move(comp));
}

// Coordinates of the inner fiber's basis inside the outer fiber's basis;
// requires inner <= outer pointwise.
inline Matrix fiber_embedding(const Subspace& outer, const Subspace& inner) {
  Matrix e(outer.field(), outer.dim(), inner.dim());
  for (size_t col = 0; col < inner.dim(); ++col) {
    auto coords = outer.coords_of(inner.basis().row(col));
    if (!coords) throw InternalError("fibers are not nested");
    for (size_t r = 0; r < coords->size(); ++r) e.set(r, col, (*coords)[r]);
  }
  return e;
}

// Restriction matrix of precomposition with h: the ideal fiber at_d(X),
// mapped by (- o h), expressed in the fiber basis of at_c(X).
inline Matrix precompose_restricted(const Category& cat, const Morphism& h, int xo, const Subspace& fiber_c,
                                    const Subspace& fiber_d) {
  Matrix amb = cat.precompose_matrix(h, xo) * fiber_d.basis_columns();
  Matrix r(cat.field(), fiber_c.dim(), fiber_d.dim());
  for (size_t j = 0; j < amb.cols(); ++j) {
    auto coords = fiber_c.coords_of(amb.col(j));
    if (!coords) throw InternalError("precomposition leaves the expected ideal fiber");
    for (size_t i = 0; i < coords->size(); ++i) r.set(i, j, (*coords)[i]);
  }
  return r;
}

}  // namespace detail

// The prelocalization of M at a filter F satisfying T1-T3. Because each F_c
// is finite, up-closed and meet-closed, it is the up-set of its minimum
// I0(c), and the direct limit of Nat(I, M) over F_c collapses to
// Nat(I0(c), M); the generic construction below double-checks this.
struct Prelocalized {
  CModule source;
  std::vector<int> min_ideal;                        // lattice index of I0(c)
  std::vector<CModule> ideal_module;                 // I0(c) as a module
  std::vector<NatTransform> ideal_inclusion;         // I0(c) -> Hom(c,-)
  std::vector<std::vector<NatTransform>> nat_basis;  // basis of Nat(I0(c), M)
  CModule result;
  NatTransform phi;  // M -> result
};

inline std::vector<int> minimal_ideals(const LatticeSet& ls, const CheckedFilter& cf) {
  std::vector<int> mins;
  for (int c = 0; c < ls.object_count(); ++c) {
    const auto& mem = cf.filter.members[size_t(c)];
    const IdealLattice& lat = ls.at[size_t(c)];
    int best = -1;
    for (int i : mem) {
      bool below_all = true;
      for (int j : mem)
        if (!lat.leq[size_t(i)][size_t(j)]) {
          below_all = false;
          break;
        }
      if (below_all) {
        best = i;
        break;
      }
    }
    if (best < 0) throw InternalError("filter has no minimal ideal although T1+T2 hold");
    mins.push_back(best);
  }
  return mins;
}

inline void require_linear(const CheckedFilter& cf, const char* what) {
  if (cf.linear()) return;
  const char* ax = !cf.report.t1.pass ? "T1" : (!cf.report.t2.pass ? "T2" : "T3");
  throw InputError(std::string(what) + " requires a filter satisfying T1-T3; " + ax + " fails");
}

inline void require_gabriel(const CheckedFilter& cf, const char* what) {
  require_linear(cf, what);
  if (!cf.report.t4.pass) throw InputError(std::string(what) + " requires a Gabriel filter; T4 fails");
}

inline Prelocalized prelocalize(const LatticeSet& ls, const CModule& m, const CheckedFilter& cf, uint64_t cap) {
  require_linear(cf, "prelocalization");
  require_nonempty(ls, cf.filter);
  (void)cap;
  const Category& cat = ls.category();
  const Fp& field = cat.field();
  int n = ls.object_count();

  Prelocalized out{m, minimal_ideals(ls, cf), {}, {}, {}, zero_module(cat), zero_nat(m, zero_module(cat))};
  std::vector<int> dims;
  for (int c = 0; c < n; ++c) {
    const Subfunctor& body = ls.at[size_t(c)].ideals[size_t(out.min_ideal[size_t(c)])].body;
    SubmoduleView v = submodule(ls.at[size_t(c)].rep, body);
    out.ideal_module.push_back(std::move(v.module));
    out.ideal_inclusion.push_back(std::move(v.inclusion));
    out.nat_basis.push_back(nat_hom(out.ideal_module.back(), m));
    dims.push_back(int(out.nat_basis.back().size()));
  }

  // Action of an arrow h: c -> d sends a class eta to f |-> eta(f o h),
  // defined on I0(d) since I0(d) <= (I0(c) : h) by T3 and minimality.
  std::vector<Matrix> action;
  for (int a = 0; a < cat.arrow_count(); ++a) {
    const ArrowDecl& ar = cat.arrow(a);
    int c = ar.src, d = ar.dst;
    Matrix act(field, size_t(dims[size_t(d)]), size_t(dims[size_t(c)]));
    if (dims[size_t(c)] > 0) {
      Morphism h = cat.arrow_morphism(a);
      std::vector<Matrix> restrict;
      for (int xo = 0; xo < n; ++xo) {
        const Subspace& fc = ls.at[size_t(c)].ideals[size_t(out.min_ideal[size_t(c)])].body.fibers[size_t(xo)];
        const Subspace& fd = ls.at[size_t(d)].ideals[size_t(out.min_ideal[size_t(d)])].body.fibers[size_t(xo)];
        restrict.push_back(detail::precompose_restricted(cat, h, xo, fc, fd));
      }
      for (size_t j = 0; j < out.nat_basis[size_t(c)].size(); ++j) {
        const NatTransform& eta = out.nat_basis[size_t(c)][j];
        std::vector<Matrix> comp;
        for (int xo = 0; xo < n; ++xo) comp.push_back(eta.at(xo) * restrict[size_t(xo)]);
        NatTransform shifted = make_nat(out.ideal_module[size_t(d)], m, std::move(comp));
        std::vector<uint32_t> col = nat_coords(out.nat_basis[size_t(d)], shifted);
        for (size_t i = 0; i < col.size(); ++i) act.set(i, j, col[i]);
      }
    }
    action.push_back(std::move(act));
  }
  out.result = CModule(cat, dims, std::move(action));
  out.result.validate();

  std::vector<Matrix> phi_comp;
  for (int c = 0; c < n; ++c) {
    Matrix pc(field, size_t(dims[size_t(c)]), size_t(m.dim(c)));
    for (int i = 0; i < m.dim(c); ++i) {
      std::vector<uint32_t> x(size_t(m.dim(c)), 0);
      x[size_t(i)] = 1;
      NatTransform eta =
          detail::yoneda_restricted(m, c, x, out.ideal_module[size_t(c)], out.ideal_inclusion[size_t(c)]);
      std::vector<uint32_t> col = nat_coords(out.nat_basis[size_t(c)], eta);
      for (size_t r = 0; r < col.size(); ++r) pc.set(r, size_t(i), col[r]);
    }
    phi_comp.push_back(std::move(pc));
  }
  out.phi = make_nat(m, out.result, std::move(phi_comp));
  return out;
}

// The induced map L(eta): postcomposition on each Nat(I0(c), -).
inline NatTransform prelocalize_map(const Prelocalized& lm, const Prelocalized& ln, const NatTransform& eta) {
  if (!(eta.source == lm.source) || !(eta.target == ln.source))
    throw InternalError("prelocalize_map endpoints mismatch");
  if (lm.min_ideal != ln.min_ideal) throw InternalError("prelocalize_map across different filters");
  const Fp& field = lm.source.category().field();
  int n = lm.source.category().object_count();
  std::vector<Matrix> comps;
  for (int c = 0; c < n; ++c) {
    Matrix mc(field, size_t(ln.result.dim(c)), size_t(lm.result.dim(c)));
    for (size_t j = 0; j < lm.nat_basis[size_t(c)].size(); ++j) {
      const NatTransform& beta = lm.nat_basis[size_t(c)][j];
      std::vector<Matrix> comp;
      for (int xo = 0; xo < n; ++xo) comp.push_back(eta.at(xo) * beta.at(xo));
      NatTransform shifted = make_nat(lm.ideal_module[size_t(c)], ln.source, std::move(comp));
      std::vector<uint32_t> col = nat_coords(ln.nat_basis[size_t(c)], shifted);
      for (size_t i = 0; i < col.size(); ++i) mc.set(i, j, col[i]);
    }
    comps.push_back(std::move(mc));
  }
  return make_nat(lm.result, ln.result, std::move(comps));
}

// The Gabriel localization G(M) = L(M / t(M)) with its unit Delta_M.
struct Localized {
  CModule source;
  Subfunctor torsion;
  QuotientModule torsion_quotient;
  Prelocalized prel;  // of M/t(M)
  NatTransform delta;
  std::vector<int> kernel_dims, cokernel_dims;

  const CModule& result() const { return prel.result; }
};

inline Localized gabriel_localize(const LatticeSet& ls, const CModule& m, const CheckedFilter& cf, uint64_t cap) {
  require_gabriel(cf, "localization");
  Subfunctor t = torsion_radical(ls, m, cf, cap);
  QuotientModule q = quotient(m, t);
  Prelocalized pre = prelocalize(ls, q.module, cf, cap);
  NatTransform delta = compose_nat(pre.phi, q.projection);
  if (!(kernel(delta) == t)) throw InternalError("Ker(Delta) differs from the torsion radical");
  std::vector<int> kdims, cdims;
  for (int c = 0; c < ls.object_count(); ++c) {
    kdims.push_back(t.dim(c));
    cdims.push_back(pre.result.dim(c) - int(rref(delta.at(c)).rank));
  }
  return Localized{m, std::move(t), std::move(q), std::move(pre), std::move(delta), std::move(kdims),
                   std::move(cdims)};
}

// G on morphisms: the induced map on torsion quotients, prelocalized.
inline NatTransform localize_map(const LatticeSet& ls, const Localized& gm, const Localized& gn,
                                 const NatTransform& f) {
  (void)ls;
  if (!(f.source == gm.source) || !(f.target == gn.source)) throw InternalError("localize_map endpoints mismatch");
  const Fp& field = f.source.category().field();
  std::vector<Matrix> comp;
  for (int c = 0; c < f.source.category().object_count(); ++c) {
    Matrix sect = gm.torsion.fibers[size_t(c)].quotient_section();
    comp.push_back(gn.torsion_quotient.projection.at(c) * f.at(c) * sect);
  }
  NatTransform fbar = make_nat(gm.torsion_quotient.module, gn.torsion_quotient.module, std::move(comp));
  return prelocalize_map(gm.prel, gn.prel, fbar);
}

// ---- F-closed modules ----

struct ClosednessWitness {
  int c;
  int ideal;  // lattice index of the filter ideal where theta degenerates
  bool injective;
  bool surjective;
  std::string note;
};

namespace detail {

// theta for one filter ideal: M(c) -> Nat(I-as-module, M) by restricting the
// Yoneda transformation. Returns (injective, surjective).
inline std::pair<bool, bool> theta_ranks(const LatticeSet& ls, const CModule& m, int c, const Subfunctor& body) {
  SubmoduleView v = submodule(ls.at[size_t(c)].rep, body);
  std::vector<NatTransform> basis = nat_hom(v.module, m);
  Matrix theta(m.category().field(), basis.size(), size_t(m.dim(c)));
  for (int i = 0; i < m.dim(c); ++i) {
    std::vector<uint32_t> x(size_t(m.dim(c)), 0);
    x[size_t(i)] = 1;
    std::vector<uint32_t> col = nat_coords(basis, yoneda_restricted(m, c, x, v.module, v.inclusion));
    for (size_t r = 0; r < col.size(); ++r) theta.set(r, size_t(i), col[r]);
  }
  size_t rank = rref(theta).rank;
  return {rank == size_t(m.dim(c)), rank == basis.size()};
}

}  // namespace detail

// M is F-closed when restriction Nat(Hom(c,-), M) -> Nat(I, M) is bijective
// for every c and every I in F_c. Torsion-free is necessary, so the radical
// is used as a short-circuit before the rank tests.
inline std::optional<ClosednessWitness> closedness_obstruction(const LatticeSet& ls, const CModule& m,
                                                               const CheckedFilter& cf, uint64_t cap) {
  require_linear(cf, "closedness test");
  Subfunctor t = torsion_radical(ls, m, cf, cap);
  if (t.total_dim() > 0) {
    for (int c = 0; c < ls.object_count(); ++c) {
      if (t.dim(c) == 0) continue;
      std::vector<uint32_t> x = t.fibers[size_t(c)].basis().row(0);
      LeftIdeal ann = annihilator(ls.at[size_t(c)].rep, m, c, x);
      int idx = ls.at[size_t(c)].index_of(ann.body);
      auto [inj, surj] = detail::theta_ranks(ls, m, c, ann.body);
      return ClosednessWitness{c, idx, inj, surj,
                               "t(M) is nonzero at " + ls.category().object_name(c) +
                                   "; the Yoneda image of a torsion element restricts to zero"};
    }
  }
  for (int c = 0; c < ls.object_count(); ++c)
    for (int i : cf.filter.members[size_t(c)]) {
      auto [inj, surj] = detail::theta_ranks(ls, m, c, ls.at[size_t(c)].ideals[size_t(i)].body);
      if (!inj || !surj) return ClosednessWitness{c, i, inj, surj, ""};
    }
  return std::nullopt;
}

inline bool is_closed(const LatticeSet& ls, const CModule& m, const CheckedFilter& cf, uint64_t cap) {
  return !closedness_obstruction(ls, m, cf, cap).has_value();
}

// The adjunction bijection Nat(G(M), N) -> Nat(M, N), alpha |-> alpha o Delta,
// for F-closed N.
inline bool check_adjunction(const LatticeSet& ls, const CModule& m, const CModule& n, const CheckedFilter& cf,
                             uint64_t cap) {
  require_gabriel(cf, "adjunction check");
  if (!is_closed(ls, n, cf, cap)) throw InputError("adjunction target module is not F-closed");
  Localized g = gabriel_localize(ls, m, cf, cap);
  std::vector<NatTransform> bg = nat_hom(g.result(), n);
  std::vector<NatTransform> bm = nat_hom(m, n);
  if (bg.size() != bm.size()) return false;
  Matrix map(ls.category().field(), bm.size(), bg.size());
  for (size_t j = 0; j < bg.size(); ++j) {
    std::vector<uint32_t> col = nat_coords(bm, compose_nat(bg[j], g.delta));
    for (size_t i = 0; i < col.size(); ++i) map.set(i, size_t(j), col[i]);
  }
  return rref(map).rank == bm.size();
}

// ---- generic direct-limit construction (oracle for the collapse) ----

// Builds L(M)(c) literally as the colimit of Nat(I, M) over all I in F_c:
// the direct sum of the Nat spaces modulo the restriction identifications,
// with structure maps through colon ideals. Exact at this scale because all
// spaces are finite dimensional.
struct GenericPrelocalized {
  CModule result;
  std::vector<Matrix> collapse;  // Nat(I0(c), M) coords -> colimit coords
};

inline GenericPrelocalized generic_prelocalize(const LatticeSet& ls, const CModule& m, const CheckedFilter& cf,
                                               uint64_t cap) {
  require_linear(cf, "generic prelocalization");
  const Category& cat = ls.category();
  const Fp& field = cat.field();
  int n = ls.object_count();
  std::vector<int> mins = minimal_ideals(ls, cf);

  struct ObjectData {
    std::vector<int> member;                     // lattice indices, block order
    std::map<int, int> block_of;                 // lattice index -> block
    std::vector<CModule> mod;                    // ideal modules
    std::vector<NatTransform> inc;               // inclusions into Hom(c,-)
    std::vector<std::vector<NatTransform>> bas;  // Nat bases
    std::vector<size_t> offset;                  // block offsets in the sum
    size_t total = 0;
    Matrix quot;                                  // sum -> colimit
    Matrix sect;                                  // colimit -> sum
    ObjectData() : quot(Fp(2), 0, 0), sect(Fp(2), 0, 0) {}
  };
  std::vector<ObjectData> data;
  data.resize(size_t(n));

  for (int c = 0; c < n; ++c) {
    ObjectData& d = data[size_t(c)];
    d.member = cf.filter.members[size_t(c)];
    for (size_t b = 0; b < d.member.size(); ++b) {
      d.block_of[d.member[b]] = int(b);
      SubmoduleView v = submodule(ls.at[size_t(c)].rep, ls.at[size_t(c)].ideals[size_t(d.member[b])].body);
      d.mod.push_back(std::move(v.module));
      d.inc.push_back(std::move(v.inclusion));
      d.bas.push_back(nat_hom(d.mod.back(), m));
      d.offset.push_back(d.total);
      d.total += d.bas.back().size();
    }
    // Identifications: for I <= J in F_c, a class of J restricts to I.
    std::vector<std::vector<uint32_t>> rows;
    for (size_t bj = 0; bj < d.member.size(); ++bj)
      for (size_t bi = 0; bi < d.member.size(); ++bi) {
        int i = d.member[bi], j = d.member[bj];
        if (i == j || !ls.at[size_t(c)].leq[size_t(i)][size_t(j)]) continue;
        // Embed the fibers of I into J's fiber coordinates.
        std::vector<Matrix> embed;
        for (int xo = 0; xo < n; ++xo)
          embed.push_back(detail::fiber_embedding(ls.at[size_t(c)].ideals[size_t(j)].body.fibers[size_t(xo)],
                                                  ls.at[size_t(c)].ideals[size_t(i)].body.fibers[size_t(xo)]));
        for (const NatTransform& beta : d.bas[bj]) {
          std::vector<Matrix> comp;
          for (int xo = 0; xo < n; ++xo) comp.push_back(beta.at(xo) * embed[size_t(xo)]);
          NatTransform restricted = make_nat(d.mod[bi], m, std::move(comp));
          std::vector<uint32_t> rc = nat_coords(d.bas[bi], restricted);
          std::vector<uint32_t> row(d.total, 0);
          size_t jpos = d.offset[bj] + size_t(&beta - d.bas[bj].data());
          row[jpos] = field.add(row[jpos], 1 % field.p());
          for (size_t k = 0; k < rc.size(); ++k)
            row[d.offset[bi] + k] = field.sub(row[d.offset[bi] + k], rc[k]);
          rows.push_back(std::move(row));
        }
      }
    Matrix rel(field, rows.size(), d.total);
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < d.total; ++j) rel.set(i, j, rows[i][j]);
    Subspace relsp = Subspace::span(rel);
    d.quot = relsp.quotient_map();
    d.sect = relsp.quotient_section();
  }

  std::vector<int> dims;
  for (int c = 0; c < n; ++c) dims.push_back(int(data[size_t(c)].quot.rows()));

  // Structure maps: a generator (I, beta) at c goes to ((I:h), beta o gamma)
  // at d, where gamma precomposes with h; T3 keeps (I:h) inside F_d.
  std::vector<Matrix> action;
  for (int a = 0; a < cat.arrow_count(); ++a) {
    const ArrowDecl& ar = cat.arrow(a);
    int c = ar.src, dd = ar.dst;
    ObjectData& dc = data[size_t(c)];
    ObjectData& dtgt = data[size_t(dd)];
    Morphism h = cat.arrow_morphism(a);
    uint64_t hcode = cat.morphism_code(h);
    Matrix whole(field, dtgt.total, dc.total);
    for (size_t bi = 0; bi < dc.member.size(); ++bi) {
      int i = dc.member[bi];
      int colon_i = ls.colon_idx[size_t(c)][size_t(i)][size_t(dd)][size_t(hcode)];
      auto it = dtgt.block_of.find(colon_i);
      if (it == dtgt.block_of.end()) throw InternalError("colon ideal escapes the filter despite T3");
      size_t bk = size_t(it->second);
      std::vector<Matrix> restrict;
      for (int xo = 0; xo < n; ++xo) {
        const Subspace& fi = ls.at[size_t(c)].ideals[size_t(i)].body.fibers[size_t(xo)];
        const Subspace& fk = ls.at[size_t(dd)].ideals[size_t(colon_i)].body.fibers[size_t(xo)];
        restrict.push_back(detail::precompose_restricted(cat, h, xo, fi, fk));
      }
      for (size_t j = 0; j < dc.bas[bi].size(); ++j) {
        const NatTransform& beta = dc.bas[bi][j];
        std::vector<Matrix> comp;
        for (int xo = 0; xo < n; ++xo) comp.push_back(beta.at(xo) * restrict[size_t(xo)]);
        NatTransform shifted = make_nat(dtgt.mod[bk], m, std::move(comp));
        std::vector<uint32_t> col = nat_coords(dtgt.bas[bk], shifted);
        for (size_t r = 0; r < col.size(); ++r)
          whole.set(dtgt.offset[bk] + r, dc.offset[bi] + j, col[r]);
      }
    }
    // Must kill the identifications, then factor through the quotient.
    Matrix pushed = dtgt.quot * whole;
    Matrix on_classes = pushed * dc.sect;
    // Well-definedness: the map must agree on any representative.
    if (!(on_classes * dc.quot == pushed)) throw InternalError("structure map does not respect identifications");
    action.push_back(std::move(on_classes));
  }

  CModule result(cat, dims, std::move(action));
  result.validate();

  // The collapse iso: include Nat(I0(c), M) as its block and pass to classes.
  std::vector<Matrix> collapse;
  for (int c = 0; c < n; ++c) {
    ObjectData& d = data[size_t(c)];
    size_t b = size_t(d.block_of.at(mins[size_t(c)]));
    Matrix embed(field, d.total, d.bas[b].size());
    for (size_t j = 0; j < d.bas[b].size(); ++j) embed.set(d.offset[b] + j, j, 1 % field.p());
    collapse.push_back(d.quot * embed);
  }
  (void)cap;
  return GenericPrelocalized{std::move(result), std::move(collapse)};
}

// ---- deterministic sampling ----

// Draws a valid module: uniform dims and matrices with rejection, falling
// back to a random quotient of representable sums when rejection stalls
// (relations make uniform draws vanishingly rare on larger quivers).
inline CModule sample_module(const Category& cat, Rng& rng, int dmax, int attempts = 40) {
  const Fp& field = cat.field();
  int n = cat.object_count();
  for (int t = 0; t < attempts; ++t) {
    std::vector<int> dims;
    for (int c = 0; c < n; ++c) dims.push_back(int(rng.below(uint64_t(dmax) + 1)));
    std::vector<Matrix> action;
    for (int a = 0; a < cat.arrow_count(); ++a) {
      const ArrowDecl& ar = cat.arrow(a);
      Matrix m(field, size_t(dims[size_t(ar.dst)]), size_t(dims[size_t(ar.src)]));
      for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) m.set(i, j, uint32_t(rng.below(field.p())));
      action.push_back(std::move(m));
    }
    try {
      return make_module(cat, std::move(dims), std::move(action));
    } catch (const InputError&) {
      continue;
    }
  }
  // Quotient of a sum of representables by a random generated subfunctor.
  CModule sum = representable(cat, int(rng.below(uint64_t(n))));
  for (uint64_t extra = rng.below(3); extra > 0; --extra)
    sum = direct_sum(sum, representable(cat, int(rng.below(uint64_t(n)))));
  std::vector<std::pair<int, std::vector<uint32_t>>> killed;
  for (uint64_t k = rng.below(4); k > 0; --k) {
    int c = int(rng.below(uint64_t(n)));
    if (sum.dim(c) == 0) continue;
    std::vector<uint32_t> v(size_t(sum.dim(c)));
    for (auto& e : v) e = uint32_t(rng.below(field.p()));
    killed.emplace_back(c, std::move(v));
  }
  CModule m = killed.empty() ? sum : quotient(sum, sub_generated(sum, killed)).module;
  // Shrink any oversized fiber by killing random cyclic submodules.
  for (int guard = 0; guard < 64; ++guard) {
    int big = -1;
    for (int c = 0; c < n; ++c)
      if (m.dim(c) > dmax) big = c;
    if (big < 0) break;
    std::vector<uint32_t> v(size_t(m.dim(big)), 0);
    while (std::all_of(v.begin(), v.end(), [](uint32_t x) { return x == 0; }))
      for (auto& e : v) e = uint32_t(rng.below(field.p()));
    m = quotient(m, sub_generated(m, {{big, v}})).module;
  }
  return m;
}

inline Subfunctor sample_subfunctor(const CModule& m, Rng& rng) {
  const Fp& field = m.category().field();
  int n = m.category().object_count();
  std::vector<std::pair<int, std::vector<uint32_t>>> gens;
  for (uint64_t k = rng.below(3); k > 0; --k) {
    int c = int(rng.below(uint64_t(n)));
    if (m.dim(c) == 0) continue;
    std::vector<uint32_t> v(size_t(m.dim(c)));
    for (auto& e : v) e = uint32_t(rng.below(field.p()));
    gens.emplace_back(c, std::move(v));
  }
  return gens.empty() ? zero_subfunctor(m) : sub_generated(m, gens);
}

}  // namespace glw
