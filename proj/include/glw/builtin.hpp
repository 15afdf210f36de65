#pragma once

namespace glw::builtin {

// Five-vertex window of the doubly infinite zig-zag quiver, truncated at path
// length 3. Read the computations at the interior vertex v2: its representable
// is supported on v1..v3 and does not feel the boundary.
inline const char* window_category() {
  return R"(# zig-zag window: v0 <-> v1 <-> v2 <-> v3 <-> v4
# forward arrows a_i, backward arrows b_i; all two-step forward, two-step
# backward, and forward-after-backward composites vanish.
field 2
nilpotency 3

object v0
object v1
object v2
object v3
object v4

arrow a0 : v0 -> v1
arrow a1 : v1 -> v2
arrow a2 : v2 -> v3
arrow a3 : v3 -> v4
arrow b0 : v1 -> v0
arrow b1 : v2 -> v1
arrow b2 : v3 -> v2
arrow b3 : v4 -> v3

relation a1.a0 = 0
relation a2.a1 = 0
relation a3.a2 = 0
relation b0.b1 = 0
relation b1.b2 = 0
relation b2.b3 = 0
relation a0.b0 = 0
relation a1.b1 = 0
relation a2.b2 = 0
relation a3.b3 = 0
)";
}

// The four-ideal family {[b_(i-1)], [a_i], [b_(i-1)]+[a_i], full} translated
// across the interior vertices v1, v2, v3. The boundary vertices v0, v4 carry
// every ideal of their (chain) lattices: the window is a stand-in for the
// infinite quiver, where every vertex is interior and the completed family
// contains the zero ideal everywhere.
inline const char* window_filter() {
  return R"(filter over w5.gcat

at v0: { zero, gen(b0.a0), gen(a0), full }
at v1: { gen(b0), gen(a1), gen(b0, a1), full }
at v2: { gen(b1), gen(a2), gen(b1, a2), full }
at v3: { gen(b2), gen(a3), gen(b2, a3), full }
at v4: { zero, gen(b3), full }
)";
}

// One object, one loop squaring to zero: the smallest category where the
// fourth filter axiom has teeth.
inline const char* dual_numbers_category() {
  return R"(field 2
nilpotency 2
object s
arrow e : s -> s
relation e.e = 0
)";
}

}  // namespace glw::builtin
