#include "kato/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kato/error.hpp"

namespace kato {

const char* to_string(SpaceKind kind) noexcept {
  switch (kind) {
    case SpaceKind::UnitInterval: return "unit_interval";
    case SpaceKind::Finite: return "finite";
    case SpaceKind::Circle: return "circle";
    case SpaceKind::Shift: return "shift";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Space

Space Space::unit_interval() { return Space(); }

Space Space::finite(std::size_t size) {
  if (size == 0) throw Error(ErrorKind::InvalidArgument, "finite space must be nonempty");
  Space s;
  s.kind_ = SpaceKind::Finite;
  s.size_ = size;
  return s;
}

Space Space::finite(std::size_t size, std::vector<Rational> metric) {
  Space s = finite(size);
  if (metric.size() != size * size)
    throw Error(ErrorKind::InvalidArgument, "finite metric must be a size x size matrix");
  auto at = [&](std::size_t i, std::size_t j) -> const Rational& { return metric[i * size + j]; };
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (sgn(at(i, j)) < 0) throw Error(ErrorKind::InvalidArgument, "finite metric has a negative entry");
      if ((i == j) != (sgn(at(i, j)) == 0))
        throw Error(ErrorKind::InvalidArgument, "finite metric must vanish exactly on the diagonal");
      if (at(i, j) != at(j, i)) throw Error(ErrorKind::InvalidArgument, "finite metric is not symmetric");
    }
  }
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j)
      for (std::size_t k = 0; k < size; ++k)
        if (at(i, k) > at(i, j) + at(j, k))
          throw Error(ErrorKind::InvalidArgument, "finite metric violates the triangle inequality");
  s.metric_ = std::make_shared<const std::vector<Rational>>(std::move(metric));
  return s;
}

Space Space::circle(CircleMetric metric) {
  Space s;
  s.kind_ = SpaceKind::Circle;
  s.circle_metric_ = metric;
  return s;
}

Space Space::shift(std::uint64_t horizon) {
  if (horizon < 1) throw Error(ErrorKind::InvalidArgument, "shift space truncation horizon must be >= 1");
  Space s;
  s.kind_ = SpaceKind::Shift;
  s.horizon_ = horizon;
  return s;
}

std::size_t Space::finite_size() const {
  if (kind_ != SpaceKind::Finite) throw Error(ErrorKind::VariantMismatch, "not a finite space");
  return size_;
}

Rational Space::finite_metric(std::size_t i, std::size_t j) const {
  if (kind_ != SpaceKind::Finite) throw Error(ErrorKind::VariantMismatch, "not a finite space");
  if (i >= size_ || j >= size_) throw Error(ErrorKind::InvalidArgument, "element index out of range");
  if (metric_) return (*metric_)[i * size_ + j];
  return i == j ? Rational(0) : Rational(1);
}

CircleMetric Space::circle_metric() const {
  if (kind_ != SpaceKind::Circle) throw Error(ErrorKind::VariantMismatch, "not a circle");
  return circle_metric_;
}

std::uint64_t Space::horizon() const {
  if (kind_ != SpaceKind::Shift) throw Error(ErrorKind::VariantMismatch, "not a shift space");
  return horizon_;
}

Rational Space::diameter() const {
  switch (kind_) {
    case SpaceKind::UnitInterval: return Rational(1);
    case SpaceKind::Circle: return circle_metric_ == CircleMetric::Arc ? Rational(1, 2) : Rational(1);
    case SpaceKind::Shift: return Rational(1);
    case SpaceKind::Finite: {
      if (!metric_) return size_ > 1 ? Rational(1) : Rational(0);
      Rational best = 0;
      for (const auto& v : *metric_) best = std::max(best, v);
      return best;
    }
  }
  return Rational(1);
}

std::string Space::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case SpaceKind::UnitInterval: os << "[0,1]"; break;
    case SpaceKind::Finite: os << "finite(" << size_ << (metric_ ? ", metric" : ", discrete") << ")"; break;
    case SpaceKind::Circle: os << "circle(" << (circle_metric_ == CircleMetric::Arc ? "arc" : "literal") << ")"; break;
    case SpaceKind::Shift: os << "shift(L=" << horizon_ << ")"; break;
  }
  return os.str();
}

bool operator==(const Space& a, const Space& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case SpaceKind::UnitInterval: return true;
    case SpaceKind::Circle: return a.circle_metric_ == b.circle_metric_;
    case SpaceKind::Shift: return a.horizon_ == b.horizon_;
    case SpaceKind::Finite:
      if (a.size_ != b.size_) return false;
      if (!a.metric_ || !b.metric_) return !a.metric_ && !b.metric_;
      return *a.metric_ == *b.metric_;
  }
  return false;
}

// ---------------------------------------------------------------------------
// omega

std::uint64_t omega_block_zero_start(std::uint64_t m) {
  if (m < 1 || m > 62) throw Error(ErrorKind::InvalidArgument, "omega block index out of range");
  return 2 * ((std::uint64_t{1} << m) - 1) + m * (m - 1) / 2;
}

std::uint64_t omega_block_end(std::uint64_t m) {
  if (m < 1 || m > 62) throw Error(ErrorKind::InvalidArgument, "omega block index out of range");
  return 2 * ((std::uint64_t{1} << m) - 1) + m * (m + 1) / 2;
}

namespace {

bool omega_bit_closed_form(std::uint64_t i) {
  unsigned __int128 start = 0;
  for (unsigned m = 1;; ++m) {
    unsigned __int128 ones = static_cast<unsigned __int128>(1) << m;
    if (i < start + ones) return true;
    if (i < start + ones + m) return false;
    start += ones + m;
  }
}

constexpr std::uint64_t kOmegaCacheBits = std::uint64_t{1} << 20;

const std::vector<bool>& omega_cache() {
  static const std::vector<bool> cache = [] {
    std::vector<bool> bits;
    bits.reserve(kOmegaCacheBits);
    for (unsigned m = 1; bits.size() < kOmegaCacheBits; ++m) {
      for (std::uint64_t k = 0; k < (std::uint64_t{1} << m) && bits.size() < kOmegaCacheBits; ++k) bits.push_back(true);
      for (unsigned k = 0; k < m && bits.size() < kOmegaCacheBits; ++k) bits.push_back(false);
    }
    return bits;
  }();
  return cache;
}

}  // namespace

bool omega_bit(std::uint64_t i) {
  if (i < kOmegaCacheBits) return omega_cache()[i];
  return omega_bit_closed_form(i);
}

// ---------------------------------------------------------------------------
// SequenceSpec

SequenceSpec SequenceSpec::theta() { return SequenceSpec(); }

SequenceSpec SequenceSpec::omega() {
  SequenceSpec s;
  s.kind_ = Kind::Omega;
  return s;
}

SequenceSpec SequenceSpec::prefix(std::vector<bool> bits, const SequenceSpec& tail) {
  SequenceSpec base = tail;
  if (tail.kind_ == Kind::Prefix) {
    bits.insert(bits.end(), tail.bits_->begin(), tail.bits_->end());
    base = *tail.tail_;
  }
  if (base.kind_ == Kind::Theta) {
    while (!bits.empty() && !bits.back()) bits.pop_back();
  }
  if (bits.empty()) return base;
  SequenceSpec s;
  s.kind_ = Kind::Prefix;
  s.bits_ = std::make_shared<const std::vector<bool>>(std::move(bits));
  s.tail_ = std::make_shared<const SequenceSpec>(std::move(base));
  return s;
}

bool SequenceSpec::bit(std::uint64_t i) const {
  switch (kind_) {
    case Kind::Theta: return false;
    case Kind::Omega: return omega_bit(i);
    case Kind::Prefix:
      if (i < bits_->size()) return (*bits_)[i];
      return tail_->bit(i - bits_->size());
  }
  return false;
}

const std::vector<bool>& SequenceSpec::bits() const {
  static const std::vector<bool> empty;
  return bits_ ? *bits_ : empty;
}

const SequenceSpec& SequenceSpec::tail() const {
  if (!tail_) throw Error(ErrorKind::InvalidArgument, "sequence has no explicit prefix");
  return *tail_;
}

bool operator==(const SequenceSpec& a, const SequenceSpec& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const SequenceSpec& a, const SequenceSpec& b) {
  if (auto c = static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_); c != 0) return c;
  if (a.kind_ != SequenceSpec::Kind::Prefix) return std::strong_ordering::equal;
  const auto& x = *a.bits_;
  const auto& y = *b.bits_;
  if (auto c = std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end()); c != 0) return c;
  return *a.tail_ <=> *b.tail_;
}

// ---------------------------------------------------------------------------
// Point

Point Point::real(Rational value) {
  value.canonicalize();
  if (sgn(value) < 0 || value > 1) throw Error(ErrorKind::InvalidArgument, "real point outside [0,1]: " + to_string(value));
  return Point(Real{std::move(value)});
}

Point Point::element(std::size_t index) { return Point(Element{index}); }

Point Point::angle(Rational turns) {
  turns.canonicalize();
  return Point(Angle{frac(turns)});
}

Point Point::seq(SequenceSpec spec, std::uint64_t offset) {
  if (spec.kind() == SequenceSpec::Kind::Theta) return Point(Seq{std::move(spec), 0});
  if (spec.kind() == SequenceSpec::Kind::Prefix) {
    const auto& bits = spec.bits();
    if (offset >= bits.size()) return seq(spec.tail(), offset - bits.size());
    if (offset > 0) {
      std::vector<bool> rest(bits.begin() + static_cast<std::ptrdiff_t>(offset), bits.end());
      return seq(SequenceSpec::prefix(std::move(rest), spec.tail()), 0);
    }
  }
  return Point(Seq{std::move(spec), offset});
}

SpaceKind Point::kind() const noexcept {
  switch (v_.index()) {
    case 0: return SpaceKind::UnitInterval;
    case 1: return SpaceKind::Finite;
    case 2: return SpaceKind::Circle;
    default: return SpaceKind::Shift;
  }
}

const Rational& Point::value() const {
  if (auto* r = std::get_if<Real>(&v_)) return r->value;
  throw Error(ErrorKind::VariantMismatch, "point is not a real value");
}

std::size_t Point::index() const {
  if (auto* e = std::get_if<Element>(&v_)) return e->index;
  throw Error(ErrorKind::VariantMismatch, "point is not a finite element");
}

const Rational& Point::turns() const {
  if (auto* a = std::get_if<Angle>(&v_)) return a->turns;
  throw Error(ErrorKind::VariantMismatch, "point is not an angle");
}

const SequenceSpec& Point::spec() const {
  if (auto* s = std::get_if<Seq>(&v_)) return s->spec;
  throw Error(ErrorKind::VariantMismatch, "point is not a sequence");
}

std::uint64_t Point::offset() const {
  if (auto* s = std::get_if<Seq>(&v_)) return s->offset;
  throw Error(ErrorKind::VariantMismatch, "point is not a sequence");
}

namespace {

std::string describe_spec(const SequenceSpec& s) {
  switch (s.kind()) {
    case SequenceSpec::Kind::Theta: return "theta";
    case SequenceSpec::Kind::Omega: return "omega";
    case SequenceSpec::Kind::Prefix: {
      std::string out = "[";
      for (bool b : s.bits()) out.push_back(b ? '1' : '0');
      return out + "]" + describe_spec(s.tail());
    }
  }
  return "?";
}

}  // namespace

std::string Point::describe() const {
  switch (kind()) {
    case SpaceKind::UnitInterval: return to_string(value());
    case SpaceKind::Finite: return "#" + std::to_string(index());
    case SpaceKind::Circle: return to_string(turns()) + " turn";
    case SpaceKind::Shift: {
      std::string body = describe_spec(spec());
      return offset() == 0 ? body : "sigma^" + std::to_string(offset()) + "(" + body + ")";
    }
  }
  return "?";
}

bool operator==(const Point& a, const Point& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Point& a, const Point& b) {
  if (auto c = a.v_.index() <=> b.v_.index(); c != 0) return c;
  switch (a.kind()) {
    case SpaceKind::UnitInterval: {
      int c = cmp(a.value(), b.value());
      return c <=> 0;
    }
    case SpaceKind::Finite: return a.index() <=> b.index();
    case SpaceKind::Circle: {
      int c = cmp(a.turns(), b.turns());
      return c <=> 0;
    }
    case SpaceKind::Shift: {
      if (auto c = a.spec() <=> b.spec(); c != 0) return c;
      return a.offset() <=> b.offset();
    }
  }
  return std::strong_ordering::equal;
}

bool seq_bit(const Point& p, std::uint64_t i) { return p.spec().bit(i + p.offset()); }

bool belongs_to(const Point& p, const Space& s) {
  if (p.kind() != s.kind()) return false;
  if (s.kind() == SpaceKind::Finite) return p.index() < s.finite_size();
  return true;
}

// ---------------------------------------------------------------------------
// SelfMap

SelfMap SelfMap::piecewise_linear(std::vector<std::pair<Rational, Rational>> breakpoints) {
  if (breakpoints.size() < 2) throw Error(ErrorKind::InvalidArgument, "piecewise-linear map needs at least two breakpoints");
  for (auto& [x, y] : breakpoints) {
    x.canonicalize();
    y.canonicalize();
    if (sgn(y) < 0 || y > 1) throw Error(ErrorKind::InvalidArgument, "breakpoint value outside [0,1]: " + to_string(y));
  }
  if (sgn(breakpoints.front().first) != 0) throw Error(ErrorKind::InvalidArgument, "first breakpoint must be at x = 0");
  if (breakpoints.back().first != 1) throw Error(ErrorKind::InvalidArgument, "last breakpoint must be at x = 1");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (breakpoints[i].first <= breakpoints[i - 1].first)
      throw Error(ErrorKind::InvalidArgument, "breakpoint abscissae must be strictly increasing");
  }
  return SelfMap(PiecewiseLinear{std::move(breakpoints)});
}

SelfMap SelfMap::constant(const Rational& c) { return piecewise_linear({{Rational(0), c}, {Rational(1), c}}); }

SelfMap SelfMap::identity_interval() { return piecewise_linear({{Rational(0), Rational(0)}, {Rational(1), Rational(1)}}); }

SelfMap SelfMap::finite_table(std::vector<std::size_t> images) {
  if (images.empty()) throw Error(ErrorKind::InvalidArgument, "finite table must be nonempty");
  return SelfMap(FiniteTable{std::move(images)});
}

SelfMap SelfMap::angle_scale(Rational factor) {
  factor.canonicalize();
  if (sgn(factor) <= 0 || factor > 1) throw Error(ErrorKind::InvalidArgument, "angle scale factor must lie in (0,1]");
  return SelfMap(AngleScale{std::move(factor)});
}

SelfMap SelfMap::shift_power(std::uint64_t power) {
  if (power == 0) throw Error(ErrorKind::InvalidArgument, "shift power must be positive");
  return SelfMap(ShiftPower{power});
}

SelfMap SelfMap::rotation(Rational turns) {
  turns.canonicalize();
  return SelfMap(Rotation{frac(turns)});
}

SelfMap SelfMap::composite(std::vector<SelfMap> stages) {
  if (stages.empty()) throw Error(ErrorKind::InvalidArgument, "composite map needs at least one stage");
  return SelfMap(Composite{std::make_shared<const std::vector<SelfMap>>(std::move(stages))});
}

bool SelfMap::compatible_with(const Space& s) const {
  return std::visit(
      [&](const auto& m) -> bool {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PiecewiseLinear>) {
          return s.kind() == SpaceKind::UnitInterval;
        } else if constexpr (std::is_same_v<T, FiniteTable>) {
          if (s.kind() != SpaceKind::Finite || m.images.size() != s.finite_size()) return false;
          return std::all_of(m.images.begin(), m.images.end(), [&](std::size_t i) { return i < s.finite_size(); });
        } else if constexpr (std::is_same_v<T, AngleScale> || std::is_same_v<T, Rotation>) {
          return s.kind() == SpaceKind::Circle;
        } else if constexpr (std::is_same_v<T, ShiftPower>) {
          return s.kind() == SpaceKind::Shift;
        } else {
          return std::all_of(m.stages->begin(), m.stages->end(), [&](const SelfMap& f) { return f.compatible_with(s); });
        }
      },
      v_);
}

std::string SelfMap::describe() const {
  std::ostringstream os;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, PiecewiseLinear>) {
          os << "pl[";
          for (std::size_t i = 0; i < m.breakpoints.size(); ++i)
            os << (i ? "," : "") << "(" << to_string(m.breakpoints[i].first) << "," << to_string(m.breakpoints[i].second) << ")";
          os << "]";
        } else if constexpr (std::is_same_v<T, FiniteTable>) {
          os << "table[";
          for (std::size_t i = 0; i < m.images.size(); ++i) os << (i ? "," : "") << m.images[i];
          os << "]";
        } else if constexpr (std::is_same_v<T, AngleScale>) {
          os << "scale(" << to_string(m.factor) << ")";
        } else if constexpr (std::is_same_v<T, ShiftPower>) {
          os << "sigma^" << m.power;
        } else if constexpr (std::is_same_v<T, Rotation>) {
          os << "rot(" << to_string(m.turns) << ")";
        } else {
          os << "compose(";
          for (std::size_t i = 0; i < m.stages->size(); ++i) os << (i ? "; " : "") << (*m.stages)[i].describe();
          os << ")";
        }
      },
      v_);
  return os.str();
}

bool operator==(const SelfMap& a, const SelfMap& b) {
  if (a.v_.index() != b.v_.index()) return false;
  return std::visit(
      [&](const auto& m) -> bool {
        using T = std::decay_t<decltype(m)>;
        const auto& o = std::get<T>(b.v_);
        if constexpr (std::is_same_v<T, SelfMap::PiecewiseLinear>) return m.breakpoints == o.breakpoints;
        else if constexpr (std::is_same_v<T, SelfMap::FiniteTable>) return m.images == o.images;
        else if constexpr (std::is_same_v<T, SelfMap::AngleScale>) return m.factor == o.factor;
        else if constexpr (std::is_same_v<T, SelfMap::ShiftPower>) return m.power == o.power;
        else if constexpr (std::is_same_v<T, SelfMap::Rotation>) return m.turns == o.turns;
        else return *m.stages == *o.stages;
      },
      a.v_);
}

namespace {

[[noreturn]] void mismatch(const SelfMap& m, const Space& s, const Point& p) {
  throw Error(ErrorKind::VariantMismatch, "map " + m.describe() + " cannot evaluate point " + p.describe() + " on " + s.describe());
}

Rational eval_pl(const std::vector<std::pair<Rational, Rational>>& bp, const Rational& x) {
  auto it = std::upper_bound(bp.begin(), bp.end(), x, [](const Rational& v, const auto& b) { return v < b.first; });
  std::size_t i = static_cast<std::size_t>(it - bp.begin());
  i = i == 0 ? 0 : i - 1;
  if (i + 1 >= bp.size()) i = bp.size() - 2;
  const auto& [x0, y0] = bp[i];
  const auto& [x1, y1] = bp[i + 1];
  Rational y = y0 + (y1 - y0) * (x - x0) / (x1 - x0);
  y.canonicalize();
  return y;
}

}  // namespace

Point eval_map(const SelfMap& m, const Space& s, const Point& p) {
  if (!belongs_to(p, s)) mismatch(m, s, p);
  return std::visit(
      [&](const auto& f) -> Point {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SelfMap::PiecewiseLinear>) {
          if (s.kind() != SpaceKind::UnitInterval) mismatch(m, s, p);
          return Point::real(eval_pl(f.breakpoints, p.value()));
        } else if constexpr (std::is_same_v<T, SelfMap::FiniteTable>) {
          if (s.kind() != SpaceKind::Finite || f.images.size() != s.finite_size()) mismatch(m, s, p);
          std::size_t image = f.images[p.index()];
          if (image >= s.finite_size()) mismatch(m, s, p);
          return Point::element(image);
        } else if constexpr (std::is_same_v<T, SelfMap::AngleScale>) {
          if (s.kind() != SpaceKind::Circle) mismatch(m, s, p);
          return Point::angle(p.turns() * f.factor);
        } else if constexpr (std::is_same_v<T, SelfMap::ShiftPower>) {
          if (s.kind() != SpaceKind::Shift) mismatch(m, s, p);
          return Point::seq(p.spec(), p.offset() + f.power);
        } else if constexpr (std::is_same_v<T, SelfMap::Rotation>) {
          if (s.kind() != SpaceKind::Circle) mismatch(m, s, p);
          return Point::angle(p.turns() + f.turns);
        } else {
          Point q = p;
          for (const auto& stage : *f.stages) q = eval_map(stage, s, q);
          return q;
        }
      },
      m.variant());
}

double eval_map_approx(const SelfMap& m, const Space& s, double x) {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SelfMap::PiecewiseLinear>) {
          if (s.kind() != SpaceKind::UnitInterval) throw Error(ErrorKind::VariantMismatch, "fast path: map/space mismatch");
          const auto& bp = f.breakpoints;
          std::size_t i = 0;
          while (i + 2 < bp.size() && x >= bp[i + 1].first.get_d()) ++i;
          double x0 = bp[i].first.get_d(), y0 = bp[i].second.get_d();
          double x1 = bp[i + 1].first.get_d(), y1 = bp[i + 1].second.get_d();
          return std::clamp(y0 + (y1 - y0) * (x - x0) / (x1 - x0), 0.0, 1.0);
        } else if constexpr (std::is_same_v<T, SelfMap::AngleScale>) {
          if (s.kind() != SpaceKind::Circle) throw Error(ErrorKind::VariantMismatch, "fast path: map/space mismatch");
          return x * f.factor.get_d();
        } else if constexpr (std::is_same_v<T, SelfMap::Rotation>) {
          if (s.kind() != SpaceKind::Circle) throw Error(ErrorKind::VariantMismatch, "fast path: map/space mismatch");
          double y = std::fmod(x + f.turns.get_d(), 1.0);
          return y < 0 ? y + 1.0 : y;
        } else if constexpr (std::is_same_v<T, SelfMap::Composite>) {
          double y = x;
          for (const auto& stage : *f.stages) y = eval_map_approx(stage, s, y);
          return y;
        } else {
          throw Error(ErrorKind::VariantMismatch, "fast path supports only interval and circle maps");
        }
      },
      m.variant());
}

// ---------------------------------------------------------------------------
// MultiMapping

MultiMapping::MultiMapping(Space space, std::vector<SelfMap> maps) : space_(std::move(space)), maps_(std::move(maps)) {
  if (maps_.empty()) throw Error(ErrorKind::InvalidArgument, "multiple mapping needs at least one map");
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    if (!maps_[i].compatible_with(space_))
      throw Error(ErrorKind::VariantMismatch, "map " + std::to_string(i + 1) + " (" + maps_[i].describe() +
                                                  ") is not a self-map of " + space_.describe());
  }
}

}  // namespace kato
