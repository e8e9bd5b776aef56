#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "udwit/rational.hpp"

namespace udwit {

// A derivation certifies that the distance sqrt(target_sq) can be forced by
// a finite unit-distance graph in R^n: every node names a construction step
// whose ingredient distances are certified by its sub-derivations.
//
// Node kinds:
//   Unit      - the unit distance itself (target_sq = 1, no ingredients).
//   Bipyramid - two apexes x, y over a regular n-simplex (side d, apex
//               distance e), plus a mirrored apex y~ tied to y at distance
//               eps.  Forces |xy| = r with r_sq = 4*e_sq - 2*((n-1)/n)*d_sq.
//               Ingredients: d, e, eps.
//   Stretch   - `count` repetitions of the scaling step: each step turns a
//               certified s into sqrt(2 + 2/n)*s (a Bipyramid with
//               d = e = eps = s).
//   Rhombus   - the planar special case: from certified a, b (with
//               a_sq <= (16/5)*b_sq) forces the second diagonal
//               sqrt(4*b_sq - a_sq) of the rhombus with side b and first
//               diagonal a (a Bipyramid with n = 2, d = eps = a, e = b).
//   Kite      - the planar contraction: from certified d, sqrt(3)d,
//               sqrt(11)d, 5d forces (sqrt(11)/5)*d, i.e. target
//               (11/25)*d_sq.
//   Shrink    - the contraction step for n >= 3: from certified e forces
//               (2/n)*e (a Bipyramid with d_sq = (2+2/n)*e_sq, apex
//               distance e, and tie eps = rho(n)^m, m minimal).
//
// Nodes are immutable and shared: a derivation is a DAG.
enum class DerivKind { Unit, Bipyramid, Stretch, Rhombus, Kite, Shrink };

struct Derivation;
using DerivPtr = std::shared_ptr<const Derivation>;

class RhoPowerCache;

struct Derivation {
  DerivKind kind = DerivKind::Unit;
  int n = 0;        // ambient dimension (Bipyramid, Stretch, Shrink); 2 for Rhombus/Kite
  long count = 0;   // Stretch: number of steps; Shrink: tie exponent m
  Rational d_sq{0}; // Bipyramid: simplex side^2; Rhombus: first diagonal^2; Kite: base^2
  Rational e_sq{0}; // Bipyramid/Shrink: apex distance^2; Rhombus: side^2
  Rational eps_sq{0};  // Bipyramid/Shrink: tie distance^2
  Rational target_sq{1};
  std::vector<DerivPtr> subs;  // ingredient derivations, kind-specific order

  // --- checked factories (throw std::invalid_argument on violated
  // preconditions; what they enforce is exactly what validate_derivation
  // re-checks) ---

  static DerivPtr unit();

  // subs order: {d, e, eps}.  Preconditions: n >= 2, d_sq > 0, e_sq > 0,
  // 2n*e_sq > (n-1)*d_sq (the apex spans), 0 < eps_sq <= 4*r_sq.
  static DerivPtr bipyramid(int n, DerivPtr sub_d, DerivPtr sub_e, DerivPtr sub_eps);

  // subs order: {base}.  count >= 0; count == 0 returns base unchanged.
  static DerivPtr stretch(int n, long count, DerivPtr base);

  // subs order: {a, b}.  Preconditions: a_sq, b_sq > 0, a_sq <= (16/5)*b_sq.
  static DerivPtr rhombus(DerivPtr sub_a, DerivPtr sub_b);

  // subs order: {base, near, far, cross} with targets d_sq, 3*d_sq, 11*d_sq,
  // 25*d_sq (checked exactly).  d_sq > 0.
  static DerivPtr kite(DerivPtr sub_base, DerivPtr sub_near, DerivPtr sub_far,
                       DerivPtr sub_cross);

  // subs order: {e, eps}.  n >= 3, e_sq > 0.  Chooses the minimal tie
  // exponent m >= 0 with rho_sq(n)^m <= (16/n^2)*e_sq and derives the tie
  // itself.  Pass a shared cache to reuse tie derivations across many calls.
  static DerivPtr shrink(int n, DerivPtr sub_e, RhoPowerCache& cache);

  // Unchecked construction, for tests that need deliberately broken nodes.
  static DerivPtr make_raw(Derivation node);
};

// Minimal m >= 0 such that (4/n^2) * (2 + 2/n)^m >= 1/4.  Requires n >= 3.
long k_of_n(int n);

// rho(n)^2 = (4/n^2) * (2 + 2/n)^k_of_n(n).  Always in [1/4, 1).
Rational rho_sq(int n);

// The squared scaling factor of one stretch step: 2 + 2/n.  Requires n >= 2.
Rational stretch_factor_sq(int n);

// Memoizing builder for derivations of rho(n)^j (shared tie sub-DAGs).
class RhoPowerCache {
 public:
  explicit RhoPowerCache(int n);  // n >= 3
  int n() const { return n_; }
  // Derivation with target_sq = rho_sq(n)^j.
  DerivPtr power(long j);

 private:
  int n_;
  long k_;
  Rational rho_;
  std::map<long, DerivPtr> cache_;
};

// Membership witness for the certified-distance family in dimension n:
//   n == 2:  target_sq = (11/25)^k * 3^l   (l stretch steps, then k kites)
//   n >= 3:  target_sq = (2+2/n)^k * (4/n^2)^l  (k stretch steps, then l
//            shrink steps)
// Throws std::invalid_argument for n < 2 or negative k, l.
DerivPtr derive_membership(int n, long k, long l);

// One validation finding.  `node` identifies the node (walk order + kind),
// `check` names the invariant.
struct CheckResult {
  std::string node;
  std::string check;
  bool pass = false;
  std::string detail;
};

// Re-verifies every invariant of every node reachable from `root`,
// including the exact vanishing of the bordered determinant of each node's
// underlying point configuration.  Shared sub-DAGs are checked once.
std::vector<CheckResult> validate_derivation(const DerivPtr& root);

bool all_checks_pass(const std::vector<CheckResult>& results);

// --- elaborated view -------------------------------------------------------
//
// Every derivation unfolds into a DAG over just three primitive kinds; the
// geometric modules (witness construction, embedding) consume this view.

struct CoreNode;
using CorePtr = std::shared_ptr<const CoreNode>;

struct CoreNode {
  enum class Kind { Unit, Bipyramid, Kite };
  Kind kind = Kind::Unit;
  int n = 0;  // ambient dimension (Bipyramid); Kite is planar
  Rational d_sq{0}, e_sq{0}, eps_sq{0};
  Rational target_sq{1};
  // Bipyramid ingredients:
  CorePtr sub_d, sub_e, sub_eps;
  // Kite ingredients:
  CorePtr sub_base, sub_near, sub_far, sub_cross;
};

// Unfolds Stretch/Rhombus/Shrink nodes into their underlying Bipyramids.
// Shared sub-derivations elaborate to shared core nodes.
CorePtr elaborate(const DerivPtr& root);

// Longest chain of construction steps above a unit edge (Unit = 0).
long derivation_depth(const CorePtr& root);

}  // namespace udwit
