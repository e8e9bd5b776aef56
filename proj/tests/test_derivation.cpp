#include "udwit/derivation.hpp"

#include <stdexcept>
#include <unordered_set>

#include "doctest.h"
#include "udwit/cayley_menger.hpp"

using udwit::all_checks_pass;
using udwit::CheckResult;
using udwit::CoreNode;
using udwit::CorePtr;
using udwit::Derivation;
using udwit::derivation_depth;
using udwit::derive_membership;
using udwit::DerivKind;
using udwit::DerivPtr;
using udwit::elaborate;
using udwit::k_of_n;
using udwit::Rational;
using udwit::rho_sq;
using udwit::RhoPowerCache;
using udwit::stretch_factor_sq;
using udwit::validate_derivation;

namespace {

// Leaf with an arbitrary claimed target, for building deliberately broken
// nodes in validation tests.
DerivPtr claimed(const Rational& target_sq) {
  Derivation leaf;
  leaf.target_sq = target_sq;
  return Derivation::make_raw(std::move(leaf));
}

bool check_failed(const std::vector<CheckResult>& results, const std::string& name) {
  for (const CheckResult& r : results)
    if (r.check == name && !r.pass) return true;
  return false;
}

size_t count_nodes(const DerivPtr& root) {
  std::unordered_set<const Derivation*> seen;
  std::vector<DerivPtr> stack = {root};
  while (!stack.empty()) {
    DerivPtr cur = stack.back();
    stack.pop_back();
    if (!seen.insert(cur.get()).second) continue;
    for (const DerivPtr& s : cur->subs) stack.push_back(s);
  }
  return seen.size();
}

}  // namespace

TEST_CASE("stretch factor and contraction constants") {
  CHECK(stretch_factor_sq(2) == Rational(3));
  CHECK(stretch_factor_sq(3) == Rational(8, 3));
  CHECK(stretch_factor_sq(10) == Rational(11, 5));
  CHECK_THROWS_AS(stretch_factor_sq(1), std::invalid_argument);
}

TEST_CASE("k_of_n: frozen values and defining property") {
  CHECK(k_of_n(3) == 0);
  CHECK(k_of_n(4) == 0);
  CHECK(k_of_n(5) == 1);
  CHECK(k_of_n(6) == 1);
  CHECK(k_of_n(7) == 2);
  CHECK(k_of_n(10) == 3);
  CHECK(k_of_n(100) == 10);
  CHECK_THROWS_AS(k_of_n(2), std::invalid_argument);

  for (int n = 3; n <= 60; ++n) {
    const long k = k_of_n(n);
    const Rational base(4, static_cast<long>(n) * n);
    const Rational quarter(1, 4);
    CHECK(base * stretch_factor_sq(n).pow(k) >= quarter);  // k works
    if (k > 0) CHECK(base * stretch_factor_sq(n).pow(k - 1) < quarter);  // minimal
  }
}

TEST_CASE("rho_sq: frozen values and range invariant") {
  CHECK(rho_sq(3) == Rational(4, 9));
  CHECK(rho_sq(4) == Rational(1, 4));
  CHECK(rho_sq(5) == Rational(48, 125));
  CHECK(rho_sq(7) == Rational(1024, 2401));
  for (int n = 3; n <= 60; ++n) {
    CHECK(rho_sq(n) >= Rational(1, 4));
    CHECK(rho_sq(n) < Rational(1));
  }
}

TEST_CASE("unit derivation") {
  const DerivPtr u = Derivation::unit();
  CHECK(u->kind == DerivKind::Unit);
  CHECK(u->target_sq == Rational(1));
  CHECK(all_checks_pass(validate_derivation(u)));
}

TEST_CASE("bipyramid factory enforces preconditions") {
  const DerivPtr u = Derivation::unit();
  // d = e = eps = 1 in the plane: the stretch step, target 3.
  const DerivPtr ok = Derivation::bipyramid(2, u, u, u);
  CHECK(ok->target_sq == Rational(3));
  CHECK(all_checks_pass(validate_derivation(ok)));

  CHECK_THROWS_AS(Derivation::bipyramid(1, u, u, u), std::invalid_argument);
  // Apex fails to span: 2n*e_sq == (n-1)*d_sq  (n=2: e=1, d=4).
  CHECK_THROWS_AS(Derivation::bipyramid(2, claimed(Rational(4)), u, u),
                  std::invalid_argument);
  // Tie too long: eps_sq = 13 > 4*r_sq = 12.
  CHECK_THROWS_AS(Derivation::bipyramid(2, u, u, claimed(Rational(13))),
                  std::invalid_argument);
  // Tie exactly 2r is allowed.
  CHECK(Derivation::bipyramid(2, u, u, claimed(Rational(12)))->target_sq == Rational(3));
  // Nonpositive ingredient.
  CHECK_THROWS_AS(Derivation::bipyramid(2, claimed(Rational(0)), u, u),
                  std::invalid_argument);
}

TEST_CASE("stretch factory") {
  const DerivPtr u = Derivation::unit();
  CHECK(Derivation::stretch(2, 0, u).get() == u.get());  // identity pass-through
  const DerivPtr s3 = Derivation::stretch(2, 3, u);
  CHECK(s3->target_sq == Rational(27));
  const DerivPtr t = Derivation::stretch(3, 2, u);
  CHECK(t->target_sq == Rational(64, 9));
  CHECK_THROWS_AS(Derivation::stretch(2, -1, u), std::invalid_argument);
  CHECK(all_checks_pass(validate_derivation(s3)));
}

TEST_CASE("rhombus factory and its two-apex reading") {
  const DerivPtr u = Derivation::unit();
  const DerivPtr side = Derivation::stretch(2, 1, u);  // sqrt(3)
  const DerivPtr r = Derivation::rhombus(u, side);     // diagonals 1 and sqrt(11)
  CHECK(r->target_sq == Rational(11));
  CHECK(all_checks_pass(validate_derivation(r)));

  const CorePtr core = elaborate(r);
  CHECK(core->kind == CoreNode::Kind::Bipyramid);
  CHECK(core->n == 2);
  CHECK(core->d_sq == Rational(1));
  CHECK(core->e_sq == Rational(3));
  CHECK(core->eps_sq == Rational(1));  // tie reuses the first diagonal
  CHECK(core->sub_d.get() == core->sub_eps.get());

  // Boundary: a_sq == (16/5) b_sq allowed, beyond it rejected.
  CHECK(Derivation::rhombus(claimed(Rational(16, 5)), u)->target_sq == Rational(4, 5));
  CHECK_THROWS_AS(Derivation::rhombus(claimed(Rational(17, 5)), u), std::invalid_argument);
}

TEST_CASE("kite factory checks ingredient ratios exactly") {
  const DerivPtr base = Derivation::unit();
  const DerivPtr near = Derivation::stretch(2, 1, base);
  const DerivPtr far = Derivation::rhombus(base, near);
  const DerivPtr cross = Derivation::rhombus(far, Derivation::stretch(2, 2, base));
  CHECK(near->target_sq == Rational(3));
  CHECK(far->target_sq == Rational(11));
  CHECK(cross->target_sq == Rational(25));

  const DerivPtr k = Derivation::kite(base, near, far, cross);
  CHECK(k->target_sq == Rational(11, 25));
  CHECK(all_checks_pass(validate_derivation(k)));

  CHECK_THROWS_AS(Derivation::kite(base, far, near, cross), std::invalid_argument);
  CHECK_THROWS_AS(Derivation::kite(base, near, far, claimed(Rational(24))),
                  std::invalid_argument);
}

TEST_CASE("shrink factory picks the minimal tie exponent") {
  RhoPowerCache cache3(3);
  // e = 1, n = 3: bound (16/9) >= 1, so the tie is the unit itself.
  const DerivPtr s = Derivation::shrink(3, Derivation::unit(), cache3);
  CHECK(s->target_sq == Rational(4, 9));
  CHECK(s->count == 0);
  CHECK(s->subs[1]->kind == DerivKind::Unit);
  CHECK(all_checks_pass(validate_derivation(s)));

  // Chain twice: e = 4/9, bound = (16/9)*(4/9) = 64/81 < 1, rho_sq(3) = 4/9
  // <= 64/81, so count = 1.
  const DerivPtr s2 = Derivation::shrink(3, s, cache3);
  CHECK(s2->target_sq == Rational(16, 81));
  CHECK(s2->count == 1);
  CHECK(s2->eps_sq == Rational(4, 9));
  CHECK(all_checks_pass(validate_derivation(s2)));

  CHECK_THROWS_AS(Derivation::shrink(2, Derivation::unit(), cache3), std::invalid_argument);
  RhoPowerCache cache5(5);
  CHECK_THROWS_AS(Derivation::shrink(3, Derivation::unit(), cache5), std::invalid_argument);
}

TEST_CASE("rho power derivations are exact and shared") {
  RhoPowerCache cache(5);
  const DerivPtr p1 = cache.power(1);
  CHECK(p1->target_sq == Rational(48, 125));
  CHECK(all_checks_pass(validate_derivation(p1)));

  const DerivPtr p2 = cache.power(2);
  CHECK(p2->target_sq == Rational(48, 125) * Rational(48, 125));
  CHECK(p2->subs[1].get() == p1.get());  // tie derivation reused from the cache
  CHECK(all_checks_pass(validate_derivation(p2)));

  const DerivPtr p10 = cache.power(10);
  CHECK(p10->target_sq == rho_sq(5).pow(10));
  CHECK(all_checks_pass(validate_derivation(p10)));
  CHECK(cache.power(10).get() == p10.get());
}

TEST_CASE("membership derivations hit their exact targets") {
  SUBCASE("planar family (11/25)^k * 3^l") {
    CHECK(derive_membership(2, 0, 0)->target_sq == Rational(1));
    CHECK(derive_membership(2, 1, 0)->target_sq == Rational(11, 25));
    CHECK(derive_membership(2, 0, 2)->target_sq == Rational(9));
    CHECK(derive_membership(2, 3, 2)->target_sq ==
          Rational(11, 25).pow(3) * Rational(9));
  }
  SUBCASE("higher-dimensional family (2+2/n)^k * (4/n^2)^l") {
    CHECK(derive_membership(3, 2, 1)->target_sq == Rational(256, 81));
    CHECK(derive_membership(5, 1, 2)->target_sq == Rational(192, 3125));
    CHECK(derive_membership(4, 0, 1)->target_sq == Rational(1, 4));
    CHECK(derive_membership(7, 3, 0)->target_sq == Rational(16, 7).pow(3));
  }
  SUBCASE("bad arguments") {
    CHECK_THROWS_AS(derive_membership(1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(derive_membership(2, -1, 0), std::invalid_argument);
    CHECK_THROWS_AS(derive_membership(3, 0, -2), std::invalid_argument);
  }
}

TEST_CASE("membership derivations validate clean on a small grid") {
  for (int n : {2, 3, 4, 5, 7}) {
    for (long k = 0; k <= 2; ++k) {
      for (long l = 0; l <= 2; ++l) {
        CAPTURE(n);
        CAPTURE(k);
        CAPTURE(l);
        const DerivPtr d = derive_membership(n, k, l);
        CHECK(all_checks_pass(validate_derivation(d)));
      }
    }
  }
}

TEST_CASE("membership derivations stay compact at scale") {
  const DerivPtr big3 = derive_membership(3, 10, 40);
  CHECK(big3->target_sq == stretch_factor_sq(3).pow(10) * Rational(4, 9).pow(40));
  CHECK(count_nodes(big3) < 400);

  const DerivPtr big2 = derive_membership(2, 10, 10);
  CHECK(big2->target_sq == Rational(11, 25).pow(10) * Rational(3).pow(10));
  CHECK(count_nodes(big2) < 120);

  const DerivPtr big7 = derive_membership(7, 5, 30);
  CHECK(big7->target_sq == stretch_factor_sq(7).pow(5) * Rational(4, 49).pow(30));
  CHECK(count_nodes(big7) < 700);
}

TEST_CASE("planar membership shares ingredient sub-derivations") {
  const DerivPtr k = derive_membership(2, 1, 0);
  REQUIRE(k->kind == DerivKind::Kite);
  // far = rhombus(base, near): near is the same node as the kite's near.
  CHECK(k->subs[2]->subs[1].get() == k->subs[1].get());
  CHECK(k->subs[2]->subs[0].get() == k->subs[0].get());
}

TEST_CASE("validation flags deliberately broken nodes") {
  SUBCASE("apex fails to span") {
    Derivation bad;
    bad.kind = DerivKind::Bipyramid;
    bad.n = 2;
    bad.d_sq = Rational(4);
    bad.e_sq = Rational(1);
    bad.eps_sq = Rational(1);
    bad.target_sq = Rational(0);  // the root formula gives 0 here
    bad.subs = {claimed(Rational(4)), claimed(Rational(1)), claimed(Rational(1))};
    const auto results = validate_derivation(Derivation::make_raw(std::move(bad)));
    CHECK(check_failed(results, "apex-spans"));
    CHECK_FALSE(all_checks_pass(results));
  }
  SUBCASE("tie out of range") {
    Derivation bad;
    bad.kind = DerivKind::Bipyramid;
    bad.n = 2;
    bad.d_sq = Rational(1);
    bad.e_sq = Rational(1);
    bad.eps_sq = Rational(13);
    bad.target_sq = Rational(3);
    bad.subs = {claimed(Rational(1)), claimed(Rational(1)), claimed(Rational(13))};
    CHECK(check_failed(validate_derivation(Derivation::make_raw(std::move(bad))),
                       "tie-range"));
  }
  SUBCASE("stretch with a forged target") {
    Derivation bad;
    bad.kind = DerivKind::Stretch;
    bad.n = 2;
    bad.count = 1;
    bad.target_sq = Rational(5);  // should be 3
    bad.subs = {Derivation::unit()};
    CHECK(check_failed(validate_derivation(Derivation::make_raw(std::move(bad))),
                       "target-scale"));
  }
  SUBCASE("kite with forged ingredient ratios") {
    Derivation bad;
    bad.kind = DerivKind::Kite;
    bad.n = 2;
    bad.d_sq = Rational(1);
    bad.target_sq = Rational(11, 25);
    bad.subs = {claimed(Rational(1)), claimed(Rational(3)), claimed(Rational(12)),
                claimed(Rational(25))};
    CHECK(check_failed(validate_derivation(Derivation::make_raw(std::move(bad))),
                       "ingredient-ratios"));
  }
  SUBCASE("shrink with a forged tie") {
    Derivation bad;
    bad.kind = DerivKind::Shrink;
    bad.n = 3;
    bad.count = 5;  // claims rho^10, actual tie stored below disagrees
    bad.e_sq = Rational(1);
    bad.eps_sq = Rational(1);
    bad.target_sq = Rational(4, 9);
    bad.subs = {Derivation::unit(), Derivation::unit()};
    CHECK(check_failed(validate_derivation(Derivation::make_raw(std::move(bad))),
                       "tie-exponent"));
  }
  SUBCASE("unit with a forged target") {
    CHECK(check_failed(validate_derivation(claimed(Rational(2))), "unit-target"));
  }
}

TEST_CASE("elaboration unfolds to the three primitive kinds") {
  SUBCASE("unit") { CHECK(elaborate(Derivation::unit())->kind == CoreNode::Kind::Unit); }
  SUBCASE("stretch chain shares its single ingredient") {
    const CorePtr c = elaborate(Derivation::stretch(2, 2, Derivation::unit()));
    REQUIRE(c->kind == CoreNode::Kind::Bipyramid);
    CHECK(c->target_sq == Rational(9));
    CHECK(c->d_sq == Rational(3));
    CHECK(c->sub_d.get() == c->sub_e.get());
    CHECK(c->sub_d.get() == c->sub_eps.get());
    REQUIRE(c->sub_d->kind == CoreNode::Kind::Bipyramid);
    CHECK(c->sub_d->target_sq == Rational(3));
    CHECK(c->sub_d->sub_d->kind == CoreNode::Kind::Unit);
  }
  SUBCASE("shrink unfolds with an explicit side ingredient") {
    RhoPowerCache cache(3);
    const CorePtr c = elaborate(Derivation::shrink(3, Derivation::unit(), cache));
    REQUIRE(c->kind == CoreNode::Kind::Bipyramid);
    CHECK(c->n == 3);
    CHECK(c->d_sq == Rational(8, 3));
    CHECK(c->e_sq == Rational(1));
    CHECK(c->eps_sq == Rational(1));
    CHECK(c->target_sq == Rational(4, 9));
    REQUIRE(c->sub_d->kind == CoreNode::Kind::Bipyramid);
    CHECK(c->sub_d->target_sq == Rational(8, 3));  // one stretch step of e
    CHECK(c->sub_e->kind == CoreNode::Kind::Unit);
  }
  SUBCASE("kite keeps its four ingredients") {
    const CorePtr c = elaborate(derive_membership(2, 1, 0));
    REQUIRE(c->kind == CoreNode::Kind::Kite);
    CHECK(c->d_sq == Rational(1));
    CHECK(c->target_sq == Rational(11, 25));
    CHECK(c->sub_base->kind == CoreNode::Kind::Unit);
    CHECK(c->sub_near->target_sq == Rational(3));
    CHECK(c->sub_far->target_sq == Rational(11));
    CHECK(c->sub_cross->target_sq == Rational(25));
  }
  SUBCASE("shared derivation nodes elaborate to shared core nodes") {
    const DerivPtr k = derive_membership(2, 1, 0);
    const CorePtr c = elaborate(k);
    CHECK(c->sub_far->sub_e.get() == c->sub_near.get());
  }
}

TEST_CASE("derivation depth counts the longest construction chain") {
  CHECK(derivation_depth(elaborate(Derivation::unit())) == 0);
  CHECK(derivation_depth(elaborate(Derivation::stretch(2, 3, Derivation::unit()))) == 3);
  CHECK(derivation_depth(elaborate(derive_membership(2, 1, 0))) == 4);
  RhoPowerCache cache(3);
  CHECK(derivation_depth(elaborate(Derivation::shrink(3, Derivation::unit(), cache))) == 2);
}

TEST_CASE("the bordered determinant vanishes on every elaborated node's configuration") {
  // Walk a mixed derivation and confirm each two-apex / kite layer is exactly
  // flat: the geometric content of the membership certificates.
  const DerivPtr d = derive_membership(2, 2, 1);
  std::vector<CorePtr> stack = {elaborate(d)};
  std::unordered_set<const CoreNode*> seen;
  int checked = 0;
  while (!stack.empty()) {
    CorePtr cur = stack.back();
    stack.pop_back();
    if (!cur || !seen.insert(cur.get()).second) continue;
    if (cur->kind == CoreNode::Kind::Bipyramid) {
      CHECK(udwit::cm_determinant(
                udwit::bipyramid_spec(cur->n, cur->d_sq, cur->e_sq, cur->target_sq))
                .is_zero());
      ++checked;
    } else if (cur->kind == CoreNode::Kind::Kite) {
      CHECK(udwit::cm_determinant(udwit::kite_spec(cur->d_sq, cur->target_sq)).is_zero());
      ++checked;
    }
    for (const CorePtr* s : {&cur->sub_d, &cur->sub_e, &cur->sub_eps, &cur->sub_base,
                             &cur->sub_near, &cur->sub_far, &cur->sub_cross})
      if (*s) stack.push_back(*s);
  }
  CHECK(checked > 5);
}
