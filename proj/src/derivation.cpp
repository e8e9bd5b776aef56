#include "udwit/derivation.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "udwit/cayley_menger.hpp"

namespace udwit {

namespace {

const char* kind_name(DerivKind k) {
  switch (k) {
    case DerivKind::Unit: return "Unit";
    case DerivKind::Bipyramid: return "Bipyramid";
    case DerivKind::Stretch: return "Stretch";
    case DerivKind::Rhombus: return "Rhombus";
    case DerivKind::Kite: return "Kite";
    case DerivKind::Shrink: return "Shrink";
  }
  return "?";
}

Rational bipyramid_root_sq(int n, const Rational& d_sq, const Rational& e_sq) {
  return Rational(4) * e_sq - Rational(2 * (n - 1), n) * d_sq;
}

// Minimal m >= 0 with rho^m <= bound (0 < rho < 1, bound > 0): log-space
// estimate, then exact adjustment.
long minimal_tie_exponent(const Rational& rho, const Rational& bound) {
  if (bound >= Rational(1)) return 0;
  const double estimate = bound.log2_approx() / rho.log2_approx();
  long m = static_cast<long>(std::ceil(estimate - 0.5));
  if (m < 1) m = 1;
  while (rho.pow(m) > bound) ++m;
  while (m > 1 && rho.pow(m - 1) <= bound) --m;
  return m;
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(std::string("Derivation: ") + what);
}

}  // namespace

DerivPtr Derivation::make_raw(Derivation node) {
  return std::make_shared<const Derivation>(std::move(node));
}

DerivPtr Derivation::unit() {
  static const DerivPtr instance = make_raw(Derivation{});
  return instance;
}

DerivPtr Derivation::bipyramid(int n, DerivPtr sub_d, DerivPtr sub_e, DerivPtr sub_eps) {
  require(n >= 2, "bipyramid needs n >= 2");
  require(sub_d && sub_e && sub_eps, "bipyramid needs three ingredient derivations");
  Derivation node;
  node.kind = DerivKind::Bipyramid;
  node.n = n;
  node.d_sq = sub_d->target_sq;
  node.e_sq = sub_e->target_sq;
  node.eps_sq = sub_eps->target_sq;
  require(node.d_sq.sign() > 0 && node.e_sq.sign() > 0 && node.eps_sq.sign() > 0,
          "bipyramid ingredient lengths must be positive");
  require(Rational(2 * n) * node.e_sq > Rational(n - 1) * node.d_sq,
          "bipyramid apex must span: 2n*e_sq > (n-1)*d_sq");
  node.target_sq = bipyramid_root_sq(n, node.d_sq, node.e_sq);
  require(node.eps_sq <= Rational(4) * node.target_sq,
          "bipyramid tie out of range: eps_sq <= 4*r_sq");
  node.subs = {std::move(sub_d), std::move(sub_e), std::move(sub_eps)};
  return make_raw(std::move(node));
}

DerivPtr Derivation::stretch(int n, long count, DerivPtr base) {
  require(n >= 2, "stretch needs n >= 2");
  require(count >= 0, "stretch count must be >= 0");
  require(base != nullptr, "stretch needs a base derivation");
  if (count == 0) return base;
  Derivation node;
  node.kind = DerivKind::Stretch;
  node.n = n;
  node.count = count;
  node.target_sq = stretch_factor_sq(n).pow(count) * base->target_sq;
  node.subs = {std::move(base)};
  return make_raw(std::move(node));
}

DerivPtr Derivation::rhombus(DerivPtr sub_a, DerivPtr sub_b) {
  require(sub_a && sub_b, "rhombus needs two ingredient derivations");
  Derivation node;
  node.kind = DerivKind::Rhombus;
  node.n = 2;
  node.d_sq = sub_a->target_sq;  // first diagonal
  node.e_sq = sub_b->target_sq;  // side
  require(node.d_sq.sign() > 0 && node.e_sq.sign() > 0,
          "rhombus ingredient lengths must be positive");
  require(Rational(5) * node.d_sq <= Rational(16) * node.e_sq,
          "rhombus diagonal out of range: a_sq <= (16/5)*b_sq");
  node.target_sq = Rational(4) * node.e_sq - node.d_sq;
  node.subs = {std::move(sub_a), std::move(sub_b)};
  return make_raw(std::move(node));
}

DerivPtr Derivation::kite(DerivPtr sub_base, DerivPtr sub_near, DerivPtr sub_far,
                          DerivPtr sub_cross) {
  require(sub_base && sub_near && sub_far && sub_cross,
          "kite needs four ingredient derivations");
  Derivation node;
  node.kind = DerivKind::Kite;
  node.n = 2;
  node.d_sq = sub_base->target_sq;
  require(node.d_sq.sign() > 0, "kite base length must be positive");
  require(sub_near->target_sq == Rational(3) * node.d_sq,
          "kite near ingredient must have target 3*d_sq");
  require(sub_far->target_sq == Rational(11) * node.d_sq,
          "kite far ingredient must have target 11*d_sq");
  require(sub_cross->target_sq == Rational(25) * node.d_sq,
          "kite cross ingredient must have target 25*d_sq");
  node.target_sq = Rational(11, 25) * node.d_sq;
  node.subs = {std::move(sub_base), std::move(sub_near), std::move(sub_far),
               std::move(sub_cross)};
  return make_raw(std::move(node));
}

DerivPtr Derivation::shrink(int n, DerivPtr sub_e, RhoPowerCache& cache) {
  require(n >= 3, "shrink needs n >= 3");
  require(sub_e != nullptr, "shrink needs an ingredient derivation");
  require(cache.n() == n, "shrink cache dimension mismatch");
  const Rational e2 = sub_e->target_sq;
  require(e2.sign() > 0, "shrink ingredient length must be positive");

  Derivation node;
  node.kind = DerivKind::Shrink;
  node.n = n;
  node.e_sq = e2;
  node.target_sq = Rational(4, static_cast<long>(n) * n) * e2;
  const Rational bound = Rational(4) * node.target_sq;  // (16/n^2) * e_sq
  node.count = minimal_tie_exponent(rho_sq(n), bound);
  node.eps_sq = rho_sq(n).pow(node.count);
  DerivPtr sub_eps = cache.power(node.count);
  node.subs = {std::move(sub_e), std::move(sub_eps)};
  return make_raw(std::move(node));
}

long k_of_n(int n) {
  if (n < 3) throw std::invalid_argument("k_of_n: n must be >= 3");
  const Rational quarter(1, 4);
  const Rational factor = stretch_factor_sq(n);
  Rational acc(4, static_cast<long>(n) * n);
  long m = 0;
  while (acc < quarter) {
    acc *= factor;
    ++m;
  }
  return m;
}

Rational rho_sq(int n) {
  return Rational(4, static_cast<long>(n) * n) * stretch_factor_sq(n).pow(k_of_n(n));
}

Rational stretch_factor_sq(int n) {
  if (n < 2) throw std::invalid_argument("stretch_factor_sq: n must be >= 2");
  return Rational(2 * n + 2, n);
}

RhoPowerCache::RhoPowerCache(int n) : n_(n), k_(k_of_n(n)), rho_(rho_sq(n)) {}

DerivPtr RhoPowerCache::power(long j) {
  if (j < 0) throw std::invalid_argument("RhoPowerCache::power: exponent must be >= 0");
  if (j == 0) return Derivation::unit();
  const auto found = cache_.find(j);
  if (found != cache_.end()) return found->second;

  // rho^j = (2/n) * stretch^k(rho^(j-1)): a shrink node whose tie is a
  // smaller rho power (minimal exponent, strictly below j).
  DerivPtr sub_e = Derivation::stretch(n_, k_, power(j - 1));
  Derivation node;
  node.kind = DerivKind::Shrink;
  node.n = n_;
  node.e_sq = sub_e->target_sq;
  node.target_sq = Rational(4, static_cast<long>(n_) * n_) * node.e_sq;
  node.count = minimal_tie_exponent(rho_, Rational(4) * node.target_sq);
  node.eps_sq = rho_.pow(node.count);
  DerivPtr sub_eps = power(node.count);
  node.subs = {std::move(sub_e), std::move(sub_eps)};
  DerivPtr built = Derivation::make_raw(std::move(node));
  cache_.emplace(j, built);
  return built;
}

DerivPtr derive_membership(int n, long k, long l) {
  if (n < 2) throw std::invalid_argument("derive_membership: n must be >= 2");
  if (k < 0 || l < 0) throw std::invalid_argument("derive_membership: exponents must be >= 0");

  if (n == 2) {
    // target (11/25)^k * 3^l: l stretch steps, then k kite contractions.
    DerivPtr cur = Derivation::stretch(2, l, Derivation::unit());
    for (long i = 0; i < k; ++i) {
      DerivPtr near = Derivation::stretch(2, 1, cur);
      DerivPtr far = Derivation::rhombus(cur, near);
      DerivPtr cross = Derivation::rhombus(far, Derivation::stretch(2, 2, cur));
      cur = Derivation::kite(cur, near, far, cross);
    }
    return cur;
  }

  // target (2+2/n)^k * (4/n^2)^l: k stretch steps, then l shrink steps.
  DerivPtr cur = Derivation::stretch(n, k, Derivation::unit());
  RhoPowerCache cache(n);
  for (long i = 0; i < l; ++i) cur = Derivation::shrink(n, cur, cache);
  return cur;
}

namespace {

class Validator {
 public:
  std::vector<CheckResult> run(const DerivPtr& root) {
    walk(root);
    return std::move(results_);
  }

 private:
  void walk(const DerivPtr& node) {
    if (!node || !seen_.insert(node.get()).second) return;
    const std::string label =
        "#" + std::to_string(order_++) + " " + kind_name(node->kind);
    check_node(*node, label);
    for (const DerivPtr& sub : node->subs) walk(sub);
  }

  void add(const std::string& node, const char* check, bool pass, std::string detail = {}) {
    results_.push_back({node, check, pass, std::move(detail)});
  }

  void check_node(const Derivation& d, const std::string& label) {
    switch (d.kind) {
      case DerivKind::Unit:
        add(label, "unit-target", d.target_sq == Rational(1),
            "target_sq = " + d.target_sq.to_string());
        add(label, "no-ingredients", d.subs.empty());
        break;
      case DerivKind::Bipyramid:
        check_bipyramid(d, label);
        break;
      case DerivKind::Stretch:
        check_stretch(d, label);
        break;
      case DerivKind::Rhombus:
        check_rhombus(d, label);
        break;
      case DerivKind::Kite:
        check_kite(d, label);
        break;
      case DerivKind::Shrink:
        check_shrink(d, label);
        break;
    }
  }

  // Checks shared by every node that elaborates to a two-apex configuration
  // with parameters (n, d_sq, e_sq, eps_sq) and target r_sq.
  void check_two_apex_geometry(const std::string& label, int n, const Rational& d_sq,
                               const Rational& e_sq, const Rational& eps_sq,
                               const Rational& target_sq) {
    const bool positive = d_sq.sign() > 0 && e_sq.sign() > 0 && eps_sq.sign() > 0;
    add(label, "positive-lengths", positive);
    if (!positive || n < 2) return;
    const bool spans = Rational(2 * n) * e_sq > Rational(n - 1) * d_sq &&
                       apex_simplex_independent(n, d_sq, e_sq);
    add(label, "apex-spans", spans, "2n*e_sq > (n-1)*d_sq");
    const Rational root = bipyramid_root_sq(n, d_sq, e_sq);
    add(label, "target-root", target_sq == root,
        "expected " + root.to_string() + ", stored " + target_sq.to_string());
    add(label, "tie-range", eps_sq <= Rational(4) * root, "eps_sq <= 4*r_sq");
    if (target_sq == root && root.sign() > 0) {
      add(label, "configuration-flat",
          cm_determinant(bipyramid_spec(n, d_sq, e_sq, target_sq)).is_zero(),
          "bordered determinant vanishes at the root");
    }
  }

  void check_bipyramid(const Derivation& d, const std::string& label) {
    add(label, "ingredient-count", d.subs.size() == 3);
    add(label, "dimension", d.n >= 2);
    if (d.subs.size() == 3) {
      add(label, "params-match-ingredients",
          d.d_sq == d.subs[0]->target_sq && d.e_sq == d.subs[1]->target_sq &&
              d.eps_sq == d.subs[2]->target_sq);
    }
    if (d.n >= 2) check_two_apex_geometry(label, d.n, d.d_sq, d.e_sq, d.eps_sq, d.target_sq);
  }

  void check_stretch(const Derivation& d, const std::string& label) {
    add(label, "ingredient-count", d.subs.size() == 1);
    add(label, "dimension", d.n >= 2);
    add(label, "step-count", d.count >= 1);
    if (d.subs.size() == 1 && d.n >= 2 && d.count >= 1) {
      const Rational expected = stretch_factor_sq(d.n).pow(d.count) * d.subs[0]->target_sq;
      add(label, "target-scale", d.target_sq == expected);
    }
  }

  void check_rhombus(const Derivation& d, const std::string& label) {
    add(label, "ingredient-count", d.subs.size() == 2);
    if (d.subs.size() == 2) {
      add(label, "params-match-ingredients",
          d.d_sq == d.subs[0]->target_sq && d.e_sq == d.subs[1]->target_sq);
    }
    const Rational expected = Rational(4) * d.e_sq - d.d_sq;
    add(label, "target-diagonal", d.target_sq == expected);
    // A rhombus is the planar two-apex configuration with tie = first diagonal.
    check_two_apex_geometry(label, 2, d.d_sq, d.e_sq, d.d_sq, d.target_sq);
  }

  void check_kite(const Derivation& d, const std::string& label) {
    add(label, "ingredient-count", d.subs.size() == 4);
    const bool positive = d.d_sq.sign() > 0;
    add(label, "positive-lengths", positive);
    if (d.subs.size() == 4) {
      add(label, "ingredient-ratios",
          d.subs[0]->target_sq == d.d_sq &&
              d.subs[1]->target_sq == Rational(3) * d.d_sq &&
              d.subs[2]->target_sq == Rational(11) * d.d_sq &&
              d.subs[3]->target_sq == Rational(25) * d.d_sq,
          "ingredients must be d, sqrt(3)d, sqrt(11)d, 5d");
    }
    add(label, "target-contract", d.target_sq == Rational(11, 25) * d.d_sq);
    if (positive) {
      add(label, "anchor-triangle-spans", kite_triangle_independent(d.d_sq));
      add(label, "configuration-flat",
          cm_determinant(kite_spec(d.d_sq, d.target_sq)).is_zero(),
          "bordered determinant vanishes at the contracted length");
    }
  }

  void check_shrink(const Derivation& d, const std::string& label) {
    add(label, "ingredient-count", d.subs.size() == 2);
    add(label, "dimension", d.n >= 3);
    if (d.n < 3 || d.subs.size() != 2) return;
    add(label, "params-match-ingredients", d.e_sq == d.subs[0]->target_sq);
    add(label, "tie-exponent",
        d.count >= 0 && d.eps_sq == rho_sq(d.n).pow(d.count) &&
            d.eps_sq == d.subs[1]->target_sq,
        "tie is rho(n)^(2*count) and matches its derivation");
    add(label, "target-contract",
        d.target_sq == Rational(4, static_cast<long>(d.n) * d.n) * d.e_sq);
    // Elaborates to the two-apex configuration over side sqrt(2+2/n)*e.
    check_two_apex_geometry(label, d.n, stretch_factor_sq(d.n) * d.e_sq, d.e_sq, d.eps_sq,
                            d.target_sq);
  }

  std::vector<CheckResult> results_;
  std::unordered_set<const Derivation*> seen_;
  int order_ = 0;
};

}  // namespace

std::vector<CheckResult> validate_derivation(const DerivPtr& root) {
  if (!root) throw std::invalid_argument("validate_derivation: null derivation");
  return Validator{}.run(root);
}

bool all_checks_pass(const std::vector<CheckResult>& results) {
  for (const CheckResult& r : results)
    if (!r.pass) return false;
  return true;
}

namespace {

class Elaborator {
 public:
  CorePtr run(const DerivPtr& node) {
    const auto found = memo_.find(node.get());
    if (found != memo_.end()) return found->second;
    CorePtr built = build(*node);
    memo_.emplace(node.get(), built);
    return built;
  }

 private:
  static CorePtr core_unit() {
    static const CorePtr instance = std::make_shared<const CoreNode>();
    return instance;
  }

  static CorePtr two_apex(int n, Rational d_sq, Rational e_sq, Rational eps_sq,
                          Rational target_sq, CorePtr sub_d, CorePtr sub_e, CorePtr sub_eps) {
    CoreNode c;
    c.kind = CoreNode::Kind::Bipyramid;
    c.n = n;
    c.d_sq = std::move(d_sq);
    c.e_sq = std::move(e_sq);
    c.eps_sq = std::move(eps_sq);
    c.target_sq = std::move(target_sq);
    c.sub_d = std::move(sub_d);
    c.sub_e = std::move(sub_e);
    c.sub_eps = std::move(sub_eps);
    return std::make_shared<const CoreNode>(std::move(c));
  }

  CorePtr build(const Derivation& d) {
    switch (d.kind) {
      case DerivKind::Unit:
        return core_unit();
      case DerivKind::Bipyramid:
        return two_apex(d.n, d.d_sq, d.e_sq, d.eps_sq, d.target_sq, run(d.subs[0]),
                        run(d.subs[1]), run(d.subs[2]));
      case DerivKind::Stretch: {
        CorePtr cur = run(d.subs[0]);
        Rational s = d.subs[0]->target_sq;
        const Rational factor = stretch_factor_sq(d.n);
        for (long i = 0; i < d.count; ++i) {
          Rational next = factor * s;
          cur = two_apex(d.n, s, s, s, next, cur, cur, cur);
          s = std::move(next);
        }
        return cur;
      }
      case DerivKind::Rhombus: {
        CorePtr a = run(d.subs[0]);
        CorePtr b = run(d.subs[1]);
        return two_apex(2, d.d_sq, d.e_sq, d.d_sq, d.target_sq, a, b, a);
      }
      case DerivKind::Kite: {
        CoreNode c;
        c.kind = CoreNode::Kind::Kite;
        c.n = 2;
        c.d_sq = d.d_sq;
        c.target_sq = d.target_sq;
        c.sub_base = run(d.subs[0]);
        c.sub_near = run(d.subs[1]);
        c.sub_far = run(d.subs[2]);
        c.sub_cross = run(d.subs[3]);
        return std::make_shared<const CoreNode>(std::move(c));
      }
      case DerivKind::Shrink: {
        CorePtr e = run(d.subs[0]);
        CorePtr eps = run(d.subs[1]);
        const Rational side_sq = stretch_factor_sq(d.n) * d.e_sq;
        // The side ingredient sqrt(2+2/n)*e is itself one stretch step of e.
        CorePtr side = two_apex(d.n, d.e_sq, d.e_sq, d.e_sq, side_sq, e, e, e);
        return two_apex(d.n, side_sq, d.e_sq, d.eps_sq, d.target_sq, side, e, eps);
      }
    }
    throw std::logic_error("elaborate: unknown node kind");
  }

  std::unordered_map<const Derivation*, CorePtr> memo_;
};

}  // namespace

CorePtr elaborate(const DerivPtr& root) {
  if (!root) throw std::invalid_argument("elaborate: null derivation");
  return Elaborator{}.run(root);
}

namespace {

long depth_walk(const CoreNode* node, std::unordered_map<const CoreNode*, long>& memo) {
  if (node->kind == CoreNode::Kind::Unit) return 0;
  const auto found = memo.find(node);
  if (found != memo.end()) return found->second;
  long best = 0;
  const CorePtr* subs[] = {&node->sub_d,    &node->sub_e,   &node->sub_eps, &node->sub_base,
                           &node->sub_near, &node->sub_far, &node->sub_cross};
  for (const CorePtr* sub : subs) {
    if (*sub) {
      const long d = depth_walk(sub->get(), memo);
      if (d > best) best = d;
    }
  }
  memo.emplace(node, best + 1);
  return best + 1;
}

}  // namespace

long derivation_depth(const CorePtr& root) {
  if (!root) throw std::invalid_argument("derivation_depth: null node");
  std::unordered_map<const CoreNode*, long> memo;
  return depth_walk(root.get(), memo);
}

}  // namespace udwit
