#include <catch2/catch_amalgamated.hpp>

#include "glw/presentation.hpp"
#include "helpers.hpp"

using namespace glw;
using testing_helpers::build_dual;
using testing_helpers::build_w5;
using testing_helpers::fixture;

TEST_CASE("window fixture parses to the expected presentation") {
  QuiverPresentation q = parse_category(fixture("w5.gcat"));
  REQUIRE(q.p == 2);
  REQUIRE(q.nilpotency == 3);
  REQUIRE(q.objects.size() == 5);
  REQUIRE(q.arrows.size() == 8);
  REQUIRE(q.relations.size() == 10);
  REQUIRE(q.object_index("v2") == 2);
  REQUIRE(q.arrow_index("b3") == 7);
}

TEST_CASE("parser rejects malformed input") {
  REQUIRE_THROWS_AS(parse_category("field 2\nnilpotency 1\n"), ParseError);  // no objects
  REQUIRE_THROWS_AS(parse_category("field 6\nnilpotency 1\nobject x\n"), ParseError);  // not prime
  REQUIRE_THROWS_AS(parse_category("field 2\nnilpotency 0\nobject x\n"), ParseError);  // N < 1
  REQUIRE_THROWS_AS(parse_category("field 2\nobject x\n"), ParseError);  // no nilpotency
  REQUIRE_THROWS_AS(parse_category("field 2\nnilpotency 1\nobject x\narrow a : x -> y\n"), ParseError);
  REQUIRE_THROWS_AS(parse_category("field 2\nnilpotency 1\nobject x\nobject x\n"), ParseError);
  // non-parallel relation: paths v0->v1 and v0->v2
  const char* bad =
      "field 2\nnilpotency 3\nobject v0\nobject v1\nobject v2\n"
      "arrow a : v0 -> v1\narrow b : v0 -> v2\nrelation a + b = 0\n";
  REQUIRE_THROWS_WITH(parse_category(bad), Catch::Matchers::ContainsSubstring("non-parallel"));
  // non-composable path
  const char* bad2 =
      "field 2\nnilpotency 3\nobject v0\nobject v1\n"
      "arrow a : v0 -> v1\nrelation a.a = 0\n";
  REQUIRE_THROWS_WITH(parse_category(bad2), Catch::Matchers::ContainsSubstring("non-composable"));
  // parse errors carry positions
  try {
    parse_category("field 2\nnilpotency 1\nobject x\nurp\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    REQUIRE(e.line() == 4);
  }
}

TEST_CASE("window hom dimensions match the interior-vertex computation") {
  Category cat = build_w5();
  int expected[5][5] = {{2, 1, 0, 0, 0},
                        {1, 2, 1, 0, 0},
                        {0, 1, 2, 1, 0},
                        {0, 0, 1, 2, 1},
                        {0, 0, 0, 1, 1}};
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) REQUIRE(cat.hom_dim(a, b) == expected[a][b]);
  REQUIRE(cat.basis_label(2, 2, 0) == "1_v2");
  REQUIRE(cat.basis_label(2, 2, 1) == "b2.a2");
  REQUIRE(cat.basis_label(2, 3, 0) == "a2");
  REQUIRE(cat.basis_label(2, 1, 0) == "b1");
}

TEST_CASE("window composition facts") {
  Category cat = build_w5();
  int a2 = cat.presentation().arrow_index("a2");
  int b2 = cat.presentation().arrow_index("b2");
  Morphism fa2 = cat.arrow_morphism(a2);
  Morphism fb2 = cat.arrow_morphism(b2);

  // a2 o b2 = 0 by the forward-after-backward relation
  REQUIRE(cat.compose(fa2, fb2) == cat.zero_morphism(3, 3));
  // b2 o a2 is the nonzero loop, and it squares to zero
  Morphism loop = cat.compose(fb2, fa2);
  REQUIRE(cat.morphism_label(loop) == "b2.a2");
  REQUIRE(cat.compose(loop, loop) == cat.zero_morphism(2, 2));
  // identities are units
  Morphism id2 = cat.identity(2);
  REQUIRE(cat.compose(id2, loop) == loop);
  REQUIRE(cat.compose(loop, id2) == loop);
  REQUIRE_THROWS_AS(cat.compose(fa2, fa2), InputError);  // non-composable
}

TEST_CASE("every window path of length 3 reduces to zero") {
  // Rebuild with the truncation pushed out to 4, so that length-3 paths are
  // not cut off by nilpotency: they must die by the relations alone.
  QuiverPresentation loose = parse_category(fixture("w5.gcat"));
  loose.nilpotency = 4;
  Category cat4 = Category::build(loose);
  int checked = 0;
  for (int a = 0; a < 5; ++a) {
    std::vector<std::pair<int, std::vector<int>>> frontier{{a, {}}};
    for (int len = 0; len < 3; ++len) {
      std::vector<std::pair<int, std::vector<int>>> next;
      for (auto& [at, path] : frontier)
        for (int ai = 0; ai < cat4.arrow_count(); ++ai) {
          if (loose.arrows[size_t(ai)].src != at) continue;
          auto ext = path;
          ext.push_back(ai);
          next.emplace_back(loose.arrows[size_t(ai)].dst, std::move(ext));
        }
      frontier = std::move(next);
    }
    for (auto& [at, path] : frontier) {
      Morphism m = cat4.path_morphism(a, path);
      REQUIRE(m == cat4.zero_morphism(a, at));
      ++checked;
    }
  }
  REQUIRE(checked > 0);
}

TEST_CASE("dual numbers build") {
  Category cat = build_dual();
  REQUIRE(cat.hom_dim(0, 0) == 2);
  Morphism e = cat.arrow_morphism(0);
  REQUIRE(cat.compose(e, e) == cat.zero_morphism(0, 0));
  REQUIRE(cat.basis_label(0, 0, 0) == "1_s");
  REQUIRE(cat.basis_label(0, 0, 1) == "e");
}

TEST_CASE("identity-only category") {
  Category cat = Category::build(parse_category("field 2\nnilpotency 1\nobject x\n"));
  REQUIRE(cat.hom_dim(0, 0) == 1);
  REQUIRE(cat.identity(0).coords == std::vector<uint32_t>{1});
}

TEST_CASE("morphism enumeration is lexicographic and capped") {
  Category cat = build_dual();
  auto all = cat.enumerate_morphisms(0, 0, 1 << 20);
  REQUIRE(all.size() == 4);
  REQUIRE(all[0].coords == std::vector<uint32_t>{0, 0});
  REQUIRE(all[1].coords == std::vector<uint32_t>{0, 1});
  REQUIRE(all[2].coords == std::vector<uint32_t>{1, 0});
  REQUIRE(all[3].coords == std::vector<uint32_t>{1, 1});
  for (size_t k = 0; k < all.size(); ++k) REQUIRE(cat.morphism_code(all[k]) == k);
  // closure of Hom(v2,v2) under the table in the window category
  Category w5 = build_w5();
  auto loops = w5.enumerate_morphisms(2, 2, 1 << 20);
  REQUIRE(loops.size() == 4);
  for (const Morphism& f : loops)
    for (const Morphism& g : loops) {
      Morphism h = w5.compose(g, f);
      REQUIRE(h.coords.size() == 2);
    }
  REQUIRE_THROWS_AS(w5.enumerate_morphisms(2, 2, 2), CapExceeded);
}

TEST_CASE("pretty print round trip") {
  for (const char* name : {"w5.gcat", "d.gcat"}) {
    QuiverPresentation q = parse_category(fixture(name));
    REQUIRE(parse_category(pretty_print(q)) == q);
  }
}

TEST_CASE("relations with coefficients over F_3") {
  // one object, two parallel loops with x = 2y as a relation
  const char* src =
      "field 3\nnilpotency 2\nobject s\narrow x : s -> s\narrow y : s -> s\n"
      "relation x - 2*y = 0\nrelation x.x = 0\nrelation x.y = 0\nrelation y.x = 0\nrelation y.y = 0\n";
  Category cat = Category::build(parse_category(src));
  // basis: identity plus a single surviving loop
  REQUIRE(cat.hom_dim(0, 0) == 2);
  Morphism x = cat.arrow_morphism(0);
  Morphism y = cat.arrow_morphism(1);
  // the two loops have proportional normal forms: x = 2y (hence y = 2x)
  std::vector<uint32_t> twice_y = y.coords;
  for (auto& v : twice_y) v = cat.field().mul(2, v);
  REQUIRE(x.coords == twice_y);
  REQUIRE(!x.coords.empty());
}
