#include "kato/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "kato/error.hpp"

namespace kato {

OrbitPolicy OrbitPolicy::exact(std::uint64_t max_steps) {
  OrbitPolicy p;
  p.max_steps = max_steps;
  return p;
}

OrbitPolicy OrbitPolicy::pruned(Rational tolerance, std::uint64_t max_steps) {
  OrbitPolicy p;
  p.mode = OrbitMode::PrunedDedup;
  p.tolerance = std::move(tolerance);
  p.max_steps = max_steps;
  return p;
}

void OrbitPolicy::validate() const {
  if (sgn(tolerance) < 0) throw Error(ErrorKind::InvalidArgument, "orbit tolerance must be nonnegative");
  if (max_set_size == 0) throw Error(ErrorKind::InvalidArgument, "max_set_size must be positive");
  if (max_steps == 0) throw Error(ErrorKind::InvalidArgument, "max_steps must be positive");
}

namespace {

// Keeps max_size points spread evenly over the canonical order.
std::vector<Point> thin_out(const std::vector<Point>& pts, std::size_t max_size) {
  std::vector<Point> out;
  out.reserve(max_size);
  for (std::size_t i = 0; i < max_size; ++i) out.push_back(pts[i * pts.size() / max_size]);
  return out;
}

void check_steps(std::uint64_t n, const OrbitPolicy& policy) {
  if (n > policy.max_steps)
    throw Error(ErrorKind::InvalidArgument,
                "n = " + std::to_string(n) + " exceeds max_steps = " + std::to_string(policy.max_steps));
}

}  // namespace

OrbitSet step_orbit(const MultiMapping& f, const OrbitSet& current, const OrbitPolicy& policy) {
  std::vector<Point> images;
  images.reserve(current.set.size() * f.size());
  for (const auto& p : current.set.points())
    for (const auto& m : f.maps()) images.push_back(eval_map(m, f.space(), p));

  const std::uint64_t step = current.step + 1;
  if (policy.mode == OrbitMode::ExactEnumeration) {
    FiniteSet set = FiniteSet::make(f.space(), std::move(images));
    if (set.size() > policy.max_set_size)
      throw Error(ErrorKind::BlowupRefused, "orbit set at step " + std::to_string(step) + " has " +
                                                std::to_string(set.size()) + " points (max_set_size " +
                                                std::to_string(policy.max_set_size) + ")");
    return OrbitSet{step, std::move(set), current.truncated};
  }
  FiniteSet set = FiniteSet::make_pruned(f.space(), std::move(images), policy.tolerance);
  if (set.size() <= policy.max_set_size) return OrbitSet{step, std::move(set), current.truncated};
  return OrbitSet{step, FiniteSet::make(f.space(), thin_out(set.points(), policy.max_set_size)), true};
}

OrbitSet iterate_set(const MultiMapping& f, const FiniteSet& a, std::uint64_t n, const OrbitPolicy& policy) {
  policy.validate();
  check_steps(n, policy);
  if (!(a.space() == f.space())) throw Error(ErrorKind::SpaceMismatch, "start set is not in " + f.space().describe());
  OrbitSet s{0, a, false};
  if (policy.mode == OrbitMode::PrunedDedup) s.set = FiniteSet::make_pruned(a.space(), a.points(), policy.tolerance);
  for (std::uint64_t j = 0; j < n; ++j) s = step_orbit(f, s, policy);
  return s;
}

OrbitSet iterate_point(const MultiMapping& f, const Point& x, std::uint64_t n, const OrbitPolicy& policy) {
  if (!belongs_to(x, f.space())) throw Error(ErrorKind::VariantMismatch, x.describe() + " is not in " + f.space().describe());
  return iterate_set(f, FiniteSet::singleton(f.space(), x), n, policy);
}

std::vector<OrbitSet> point_trajectory(const MultiMapping& f, const Point& x, std::uint64_t n, const OrbitPolicy& policy) {
  policy.validate();
  check_steps(n, policy);
  std::vector<OrbitSet> out;
  out.reserve(n + 1);
  out.push_back(OrbitSet{0, FiniteSet::singleton(f.space(), x), false});
  for (std::uint64_t j = 0; j < n; ++j) out.push_back(step_orbit(f, out.back(), policy));
  return out;
}

std::string word_to_string(const Word& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && (w[i] >= 10 || w[i - 1] >= 10)) s += '.';
    s += std::to_string(w[i]);
  }
  return s;
}

namespace {

void check_word_budget(const MultiMapping& f, std::uint64_t n, const OrbitPolicy& policy) {
  long double words = std::pow(static_cast<long double>(f.size()), static_cast<long double>(n));
  if (words > static_cast<long double>(policy.max_set_size))
    throw Error(ErrorKind::BlowupRefused, "word enumeration of length " + std::to_string(n) + " over " +
                                              std::to_string(f.size()) + " maps exceeds max_set_size");
}

// Depth-first over application order; each prefix image is computed once.
template <typename Visit>
bool walk_words(const MultiMapping& f, const Point& p, std::uint64_t remaining, Word& reversed, Visit&& visit) {
  if (remaining == 0) {
    Word w(reversed.rbegin(), reversed.rend());
    return visit(std::move(w), p);
  }
  for (std::size_t i = 0; i < f.size(); ++i) {
    reversed.push_back(i + 1);
    Point q = eval_map(f[i], f.space(), p);
    bool stop = walk_words(f, q, remaining - 1, reversed, visit);
    reversed.pop_back();
    if (stop) return true;
  }
  return false;
}

}  // namespace

std::vector<WordImage> enumerate_words(const MultiMapping& f, const Point& x, std::uint64_t n, const OrbitPolicy& policy) {
  check_steps(n, policy);
  check_word_budget(f, n, policy);
  std::vector<WordImage> out;
  Word scratch;
  walk_words(f, x, n, scratch, [&](Word w, const Point& img) {
    out.push_back({std::move(w), img});
    return false;
  });
  return out;
}

std::optional<Word> branch_witness(const MultiMapping& f, const Point& x, std::uint64_t n, const Point& target,
                                   const Rational& tol, const OrbitPolicy& policy) {
  check_steps(n, policy);
  check_word_budget(f, n, policy);
  if (!belongs_to(target, f.space())) throw Error(ErrorKind::VariantMismatch, "target is not in the system's space");
  std::optional<Word> found;
  Word scratch;
  walk_words(f, x, n, scratch, [&](Word w, const Point& img) {
    Distance d = point_distance(f.space(), img, target);
    if (!d.upper_bound && d.value <= tol) {
      found = std::move(w);
      return true;
    }
    return false;
  });
  return found;
}

ApproxOrbit iterate_point_approx(const MultiMapping& f, double x, std::uint64_t n, double tolerance, std::size_t max_set_size) {
  if (tolerance < 0) throw Error(ErrorKind::InvalidArgument, "tolerance must be nonnegative");
  const Space& s = f.space();
  ApproxOrbit orbit{0, {x}, false};
  std::vector<double> next;
  for (std::uint64_t j = 0; j < n; ++j) {
    next.clear();
    for (double p : orbit.points)
      for (const auto& m : f.maps()) next.push_back(eval_map_approx(m, s, p));
    std::sort(next.begin(), next.end());
    std::vector<double> kept;
    for (double p : next)
      if (kept.empty() || p - kept.back() > tolerance) kept.push_back(p);
    if (kept.size() > max_set_size) {
      std::vector<double> thinned;
      for (std::size_t i = 0; i < max_set_size; ++i) thinned.push_back(kept[i * kept.size() / max_set_size]);
      kept = std::move(thinned);
      orbit.truncated = true;
    }
    orbit.points = std::move(kept);
    orbit.step = j + 1;
  }
  return orbit;
}

}  // namespace kato
