#include "raabe/rl_quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "raabe/errors.hpp"
#include "raabe/special_fn.hpp"

namespace raabe::quad {

namespace {

// Abscissa pair for +tau and -tau: the node near 1 is `big` (= t at +tau), the
// node near 0 is `small` (= 1 - big, computed without cancellation).
struct Node {
  BigReal big;
  BigReal small;
  BigReal weight;  // pi cosh(tau) t (1-t)
};

using NodeList = std::vector<Node>;

// New nodes of level L: tau = k h for k odd (k = 0, 1, 2, ... at level 0),
// h = 2^{-L}, until the small abscissa drops below 2^{-20 bits}.
NodeList build_level(int level, PrecisionContext w) {
  NodeList out;
  const BigReal h = pow2(-level, w);
  const BigReal half_pi = const_pi(w) / 2L;
  const long floor_exp = -20L * w.bits;
  const long step = (level == 0) ? 1 : 2;
  for (long k = (level == 0) ? 0 : 1;; k += step) {
    const BigReal tau = h * k;
    const BigReal u = half_pi * sinh(tau);
    const BigReal e = exp(-(u * 2L));  // exp(-pi sinh tau)
    const BigReal denom = e + 1L;
    Node n{1L / denom, e / denom, BigReal(w)};
    n.weight = half_pi * 2L * cosh(tau) * n.big * n.small;
    const bool last = n.small.is_zero() || n.small.exponent() < floor_exp;
    out.push_back(std::move(n));
    if (last) break;
  }
  return out;
}

std::shared_ptr<const NodeList> nodes(int level, PrecisionContext w) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const NodeList>> cache;
  const auto key = std::make_pair(w.bits, level);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const NodeList>(build_level(level, w));
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(built)).first->second;
}

// gamma, zeta(2), zeta(3), ... for log Gamma(1-u) = gamma u + sum_k zeta(k) u^k / k.
struct NearOne {
  BigReal gamma;
  std::vector<BigReal> zeta_over_k;  // index k -> zeta(k)/k, k >= 2
};

constexpr int kNearOneLog2 = 16;  // Taylor form used for 1 - t < 2^{-16}

std::shared_ptr<const NearOne> near_one(PrecisionContext w) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const NearOne>> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(w.bits); it != cache.end()) return it->second;
  }
  auto t = std::make_shared<NearOne>();
  t->gamma = special::euler_gamma(w);
  const int terms = w.bits / kNearOneLog2 + 3;
  t->zeta_over_k.assign(2, BigReal(w));
  for (int k = 2; k <= terms; ++k) {
    t->zeta_over_k.push_back(special::zeta(BigReal(k, w), w).value / static_cast<long>(k));
  }
  std::lock_guard lock(mu);
  return cache.emplace(w.bits, std::move(t)).first->second;
}

BigReal log_gamma_one_minus(const BigReal& u, const NearOne& c) {
  BigReal acc(u.ctx());
  const auto& z = c.zeta_over_k;
  for (std::size_t k = z.size() - 1; k >= 2; --k) {
    acc += z[k];
    acc *= u;
  }
  acc += c.gamma;
  return acc * u;
}

// kernel(t) with s = 1 - t supplied exactly.
BigReal kernel_at(Kernel k, const BigReal& t, const BigReal& s, const NearOne& c, PrecisionContext w) {
  switch (k) {
    case Kernel::kLogGamma:
      if (s.exponent() < -kNearOneLog2) return log_gamma_one_minus(s, c);
      return special::log_gamma(t, w);
    case Kernel::kLogGammaOver1mt:
      if (s.exponent() < -kNearOneLog2) return log_gamma_one_minus(s, c) / s;
      return special::log_gamma(t, w) / s;
    case Kernel::kLogSinPi:
      return log(sin(const_pi(w) * min(t, s)));
    case Kernel::kDigamma:
      return special::digamma(t, w);
  }
  throw DomainError("tanh_sinh: unknown kernel");
}

BigReal power(const BigReal& x, const BigReal& e) {
  if (e.is_zero()) return BigReal(1L, x.ctx());
  if (e.is_integer() && abs(e) < 1000L) return pow(x, e.to_long());
  return exp(e * log(x));
}

class Evaluator {
 public:
  Evaluator(const WeightedIntegrand& w, PrecisionContext ctx)
      : p_(w.p.rounded(ctx)), q_(w.q.rounded(ctx)), kernel_(w.kernel), ctx_(ctx), near_(near_one(ctx)) {}

  // f(t) t^p (1-t)^q with s = 1 - t.
  BigReal operator()(const BigReal& t, const BigReal& s) {
    ++evals;
    BigReal v = kernel_at(kernel_, t, s, *near_, ctx_);
    v *= power(t, p_);
    if (kernel_ != Kernel::kLogGammaOver1mt) v *= power(s, q_);
    return v;
  }

  long evals = 0;

 private:
  BigReal p_;
  BigReal q_;
  Kernel kernel_;
  PrecisionContext ctx_;
  std::shared_ptr<const NearOne> near_;
};

bool negligible(const BigReal& term, long floor_exp) { return term.is_zero() || term.exponent() < floor_exp; }

// Sum of weight * f over the level's nodes on both sides of tau = 0, walking
// outward and stopping a side after three consecutive negligible terms.
BigReal level_sum(const NodeList& list, int level, Evaluator& f, long floor_exp, PrecisionContext w) {
  BigReal sum(w);
  const bool has_center = (level == 0);
  if (has_center) sum += list[0].weight * f(list[0].big, list[0].small);
  for (int side = 0; side < 2; ++side) {
    int quiet = 0;
    for (std::size_t i = has_center ? 1 : 0; i < list.size(); ++i) {
      const Node& n = list[i];
      BigReal term = (side == 0) ? f(n.big, n.small) : f(n.small, n.big);
      term *= n.weight;
      sum += term;
      quiet = negligible(term, floor_exp) ? quiet + 1 : 0;
      if (quiet >= 3) break;
    }
  }
  return sum;
}

}  // namespace

void WeightedIntegrand::validate() const {
  if (!(p > -1L)) throw DomainError("WeightedIntegrand: p must be > -1");
  if (kernel != Kernel::kLogGammaOver1mt && !(q > -1L)) throw DomainError("WeightedIntegrand: q must be > -1");
  if (kernel == Kernel::kDigamma && !(p > 0L)) throw DomainError("WeightedIntegrand: DIGAMMA kernel needs p > 0");
}

QuadResult tanh_sinh(const WeightedIntegrand& w, double tol, PrecisionContext ctx, int max_levels) {
  w.validate();
  if (!(tol >= std::ldexp(1.0, -ctx.bits + 8))) {
    throw DomainError("tanh_sinh: tol must be >= 2^(-bits+8)");
  }
  if (max_levels < 1) throw DomainError("tanh_sinh: max_levels must be >= 1");

  Evaluator f(w, ctx);
  const long floor_exp = -ctx.bits - 16;
  QuadResult r;
  BigReal raw = level_sum(*nodes(0, ctx), 0, f, floor_exp, ctx);  // sum at step 1
  BigReal prev = raw;
  for (int level = 1; level <= max_levels; ++level) {
    raw += level_sum(*nodes(level, ctx), level, f, floor_exp, ctx);
    BigReal cur = ldexp(raw, -level);
    r.err_est = abs(cur - prev).to_double();
    r.levels = level;
    prev = std::move(cur);
    if (level >= 3 && r.err_est <= tol) {
      r.converged = true;
      break;
    }
  }
  r.value = std::move(prev);
  r.n_evals = f.evals;
  return r;
}

QuadResult rl_eval(Side side, const BigReal& alpha, const BigReal& weight_p, const BigReal& weight_q,
                   PrecisionContext ctx, double tol) {
  if (!(alpha > 0L)) throw DomainError("rl_eval: alpha must be > 0");
  const PrecisionContext w = ctx.widened(16);
  const BigReal am1 = alpha.rounded(w) - 1L;
  WeightedIntegrand integrand = (side == Side::kLeftAt1)
                                    ? WeightedIntegrand(weight_p.rounded(w), am1 + weight_q, Kernel::kLogGamma)
                                    : WeightedIntegrand(am1 + weight_p, weight_q.rounded(w), Kernel::kLogGamma);
  const BigReal inv_gamma = exp(-special::log_gamma(alpha, w));
  QuadResult r = tanh_sinh(integrand, tol / std::max(1.0, inv_gamma.to_double()), w);
  r.value = (r.value * inv_gamma).rounded(ctx);
  r.err_est *= inv_gamma.to_double();
  return r;
}

QuadResult rl_eval(Side side, double alpha, double weight_p, double weight_q, PrecisionContext ctx, double tol) {
  const PrecisionContext w = ctx.widened(64);
  return rl_eval(side, BigReal(alpha, w), BigReal(weight_p, w), BigReal(weight_q, w), ctx, tol);
}

}  // namespace raabe::quad
