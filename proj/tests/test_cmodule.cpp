#include <catch2/catch_amalgamated.hpp>

#include "glw/cmodule.hpp"
#include "glw/rng.hpp"
#include "glw/localization.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace glw;
using testing_helpers::build_dual;
using testing_helpers::build_w5;
using testing_helpers::fixture;

TEST_CASE("module file round trip against the hand-written representable") {
  Category cat = build_w5();
  CModule parsed = parse_module(fixture("w5_rep_v2.gmod"), cat);
  CModule p2 = representable(cat, 2);
  REQUIRE(parsed == p2);
  REQUIRE(p2.dims() == std::vector<int>{0, 1, 2, 1, 0});
}

TEST_CASE("zero module is valid") {
  Category cat = build_w5();
  CModule z = zero_module(cat);
  z.validate();
  REQUIRE(z.is_zero());
}

TEST_CASE("module validation names the violated relation") {
  Category cat = build_dual();
  REQUIRE_THROWS_WITH(parse_module(fixture("d_bad.gmod"), cat),
                      Catch::Matchers::ContainsSubstring("relation e.e violated"));
  // nilpotency violation without an explicit relation: loop with no e.e rule
  Category loop = Category::build(parse_category("field 2\nnilpotency 2\nobject s\narrow e : s -> s\n"));
  REQUIRE_THROWS_WITH(parse_module("module over x.gcat\nspace s dim 1\nmap e = [[1]]\n", loop),
                      Catch::Matchers::ContainsSubstring("length 2"));
  // dimension mismatch names the arrow
  REQUIRE_THROWS_WITH(parse_module("module over d.gcat\nspace s dim 2\nmap e = [[1,0]]\n", cat),
                      Catch::Matchers::ContainsSubstring("arrow 'e'"));
}

TEST_CASE("representables") {
  Category w5 = build_w5();
  for (int c = 0; c < 5; ++c) {
    CModule p = representable(w5, c);
    for (int x = 0; x < 5; ++x) REQUIRE(p.dim(x) == w5.hom_dim(c, x));
  }
  Category one = Category::build(parse_category("field 2\nnilpotency 1\nobject x\n"));
  CModule p = representable(one, 0);
  REQUIRE(p.dims() == std::vector<int>{1});

  Category d = build_dual();
  CModule pd = representable(d, 0);
  REQUIRE(pd.dim(0) == 2);
  REQUIRE(pd.act_arrow(0) == Matrix::from_rows(d.field(), {{0, 0}, {1, 0}}));
}

TEST_CASE("yoneda elements") {
  Category w5 = build_w5();
  CModule p2 = representable(w5, 2);
  // zero element gives the zero transformation
  NatTransform z = yoneda_element(p2, 2, {0, 0});
  REQUIRE(z.is_zero());
  // the identity gives the identity transformation
  NatTransform id = yoneda_element(p2, 2, {1, 0});
  REQUIRE(id.comp == identity_nat(p2).comp);
  // the loop sends 1 -> loop -> 0
  NatTransform loop = yoneda_element(p2, 2, {0, 1});
  REQUIRE(loop.at(2) == Matrix::from_rows(w5.field(), {{0, 0}, {1, 0}}));
  // evaluating at the identity recovers the element
  REQUIRE(loop.at(2).col(0) == std::vector<uint32_t>{0, 1});
}

TEST_CASE("nat_hom dimension equals the Yoneda fiber dimension") {
  Category w5 = build_w5();
  Rng rng(7);
  std::vector<CModule> mods;
  mods.push_back(representable(w5, 2));
  for (int t = 0; t < 4; ++t) mods.push_back(sample_module(w5, rng, 2));
  for (const CModule& m : mods)
    for (int c = 0; c < 5; ++c)
      REQUIRE(int(nat_hom(representable(w5, c), m).size()) == m.dim(c));

  Category d = build_dual();
  REQUIRE(nat_hom(zero_module(d), representable(d, 0)).empty());
  REQUIRE(nat_hom(representable(d, 0), representable(d, 0)).size() == 2);
}

TEST_CASE("nat_hom agrees with exhaustive enumeration on the dual numbers") {
  Category d = build_dual();
  Rng rng(9);
  for (int t = 0; t < 5; ++t) {
    CModule m = sample_module(d, rng, 2);
    CModule n = sample_module(d, rng, 2);
    size_t dim = nat_hom(m, n).size();
    size_t count = oracle::nat_count_by_enumeration(m, n);
    REQUIRE(count == (size_t(1) << dim));
  }
}

TEST_CASE("kernel and image of natural transformations") {
  Category w5 = build_w5();
  CModule p2 = representable(w5, 2);
  NatTransform id = identity_nat(p2);
  REQUIRE(kernel(id).total_dim() == 0);
  REQUIRE(image(id) == full_subfunctor(p2));
  NatTransform z = zero_nat(p2, p2);
  REQUIRE(kernel(z) == full_subfunctor(p2));

  Rng rng(13);
  for (int t = 0; t < 6; ++t) {
    CModule m = sample_module(w5, rng, 2);
    CModule n = sample_module(w5, rng, 2);
    for (const NatTransform& f : nat_hom(m, n)) {
      Subfunctor k = kernel(f), im = image(f);
      for (int c = 0; c < 5; ++c) REQUIRE(k.dim(c) + im.dim(c) == m.dim(c));
    }
  }
}

TEST_CASE("generated subfunctors") {
  Category w5 = build_w5();
  CModule p2 = representable(w5, 2);
  REQUIRE(sub_generated(p2, {}) == zero_subfunctor(p2));
  // generated by the identity: everything
  REQUIRE(sub_generated(p2, {{2, {1, 0}}}) == full_subfunctor(p2));
  // generated by the loop: the one-dimensional ideal at v2
  Subfunctor s = sub_generated(p2, {{2, {0, 1}}});
  REQUIRE(s.dim(0) == 0);
  REQUIRE(s.dim(1) == 0);
  REQUIRE(s.dim(2) == 1);
  REQUIRE(s.dim(3) == 0);
  REQUIRE(s.dim(4) == 0);
}

TEST_CASE("subfunctor meet and join") {
  Category w5 = build_w5();
  CModule p2 = representable(w5, 2);
  Subfunctor loop = sub_generated(p2, {{2, {0, 1}}});        // dims (0,0,1,0,0)
  Subfunctor beta = sub_generated(p2, {{1, {1}}});           // dims (0,1,0,0,0)
  Subfunctor alpha = sub_generated(p2, {{3, {1}}});          // dims (0,0,1,1,0)
  REQUIRE(sub_meet(p2, beta, alpha) == zero_subfunctor(p2));
  Subfunctor join_bl = sub_join(p2, beta, loop);
  REQUIRE(join_bl.dim(1) == 1);
  REQUIRE(join_bl.dim(2) == 1);
  REQUIRE(join_bl.total_dim() == 2);
  REQUIRE(sub_meet(p2, loop, full_subfunctor(p2)) == loop);
  REQUIRE(sub_join(p2, loop, zero_subfunctor(p2)) == loop);
  // the loop ideal is contained in the ideal generated by a2
  REQUIRE(sub_contains(alpha, loop));
}

TEST_CASE("quotients") {
  Category w5 = build_w5();
  CModule p2 = representable(w5, 2);
  Subfunctor loop = sub_generated(p2, {{2, {0, 1}}});
  QuotientModule q = quotient(p2, loop);
  REQUIRE(q.module.dims() == std::vector<int>{0, 1, 1, 1, 0});
  REQUIRE(kernel(q.projection) == loop);

  QuotientModule by_zero = quotient(p2, zero_subfunctor(p2));
  REQUIRE(by_zero.module.dims() == p2.dims());
  for (int c = 0; c < 5; ++c)
    REQUIRE(by_zero.projection.at(c) == Matrix::identity(w5.field(), size_t(p2.dim(c))));

  QuotientModule by_full = quotient(p2, full_subfunctor(p2));
  REQUIRE(by_full.module.is_zero());
}

TEST_CASE("submodule views") {
  Category w5 = build_w5();
  Rng rng(17);
  for (int t = 0; t < 6; ++t) {
    CModule m = sample_module(w5, rng, 3);
    Subfunctor s = sample_subfunctor(m, rng);
    SubmoduleView v = submodule(m, s);
    REQUIRE(image(v.inclusion) == s);
    REQUIRE(kernel(v.inclusion).total_dim() == 0);
  }
}

TEST_CASE("closure invariant is enforced") {
  Category w5 = build_w5();
  CModule p2 = representable(w5, 2);
  // the line spanned by the identity alone is not closed under a2
  std::vector<Subspace> fibers;
  for (int c = 0; c < 5; ++c) fibers.push_back(Subspace::zero(w5.field(), size_t(p2.dim(c))));
  fibers[2] = Subspace::span(Matrix::from_rows(w5.field(), {{1, 0}}));
  REQUIRE_THROWS_AS(make_subfunctor(p2, fibers), InternalError);
}

TEST_CASE("direct sums") {
  Category d = build_dual();
  CModule p = representable(d, 0);
  CModule s = direct_sum(p, p);
  s.validate();
  REQUIRE(s.dim(0) == 4);
  REQUIRE(nat_hom(p, s).size() == 2 * nat_hom(p, p).size());
}

TEST_CASE("sampled modules validate and respect the dimension bound") {
  for (const Category& cat : {build_w5(), build_dual()}) {
    Rng rng(23);
    for (int t = 0; t < 30; ++t) {
      CModule m = sample_module(cat, rng, 3);
      m.validate();
      for (int c = 0; c < cat.object_count(); ++c) REQUIRE(m.dim(c) <= 3);
    }
  }
}
