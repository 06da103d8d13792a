#include "kato/io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

#include "kato/error.hpp"

namespace kato::io {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& msg) {
  throw Error(ErrorKind::Schema, path + ": " + msg);
}

const json& field(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string kind_of(const json& j, const std::string& path) {
  const json& k = field(j, "kind", path);
  if (!k.is_string()) schema(path + ".kind", "expected a string");
  return k.get<std::string>();
}

std::uint64_t decode_u64(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (!j.is_number_unsigned() && j.get<std::int64_t>() < 0))
    schema(path, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

mpz_class decode_integer(const json& j, const std::string& path) {
  if (j.is_number_unsigned()) return mpz_class(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return mpz_class(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    mpz_class z;
    if (z.set_str(j.get<std::string>(), 10) != 0) schema(path, "malformed integer \"" + j.get<std::string>() + "\"");
    return z;
  }
  schema(path, "expected an integer");
}

json encode_integer(const mpz_class& z) {
  if (z.fits_slong_p()) return json(z.get_si());
  return json(z.get_str());
}

json encode_spec(const SequenceSpec& s) {
  switch (s.kind()) {
    case SequenceSpec::Kind::Theta: return "theta";
    case SequenceSpec::Kind::Omega: return "omega";
    case SequenceSpec::Kind::Prefix: {
      std::string bits;
      for (bool b : s.bits()) bits.push_back(b ? '1' : '0');
      return json{{"prefix", bits}, {"tail", encode_spec(s.tail())}};
    }
  }
  return "theta";
}

SequenceSpec decode_spec(const json& j, const std::string& path) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "theta") return SequenceSpec::theta();
    if (s == "omega") return SequenceSpec::omega();
    schema(path, "unknown sequence \"" + s + "\"");
  }
  const json& bits = field(j, "prefix", path);
  if (!bits.is_string()) schema(path + ".prefix", "expected a 0/1 string");
  std::vector<bool> v;
  for (char c : bits.get<std::string>()) {
    if (c != '0' && c != '1') schema(path + ".prefix", "expected a 0/1 string");
    v.push_back(c == '1');
  }
  SequenceSpec tail = j.contains("tail") ? decode_spec(j.at("tail"), path + ".tail") : SequenceSpec::theta();
  return SequenceSpec::prefix(std::move(v), tail);
}

std::vector<std::pair<Rational, Rational>> decode_breakpoints(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of [x, y] breakpoints");
  std::vector<std::pair<Rational, Rational>> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!j[i].is_array() || j[i].size() != 2) schema(p, "expected [x, y]");
    out.emplace_back(decode_rational(j[i][0], p + "[0]"), decode_rational(j[i][1], p + "[1]"));
  }
  return out;
}

json encode_breakpoints(const std::vector<std::pair<Rational, Rational>>& bp) {
  json out = json::array();
  for (const auto& [x, y] : bp) out.push_back(json::array({encode(x), encode(y)}));
  return out;
}

std::vector<std::size_t> decode_indices(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of indices");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(decode_u64(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

// Wraps library validation failures raised while building a value from JSON.
template <typename Fn>
auto at_path(const std::string& path, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    schema(path, e.what());
  }
}

}  // namespace

json parse_json(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Schema, origin + ": " + e.what());
  }
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

Rational decode_rational(const json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(decode_integer(j, path));
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      schema(path, e.what());
    }
  }
  if (j.is_array() && j.size() == 2) {
    mpz_class num = decode_integer(j[0], path + "[0]");
    mpz_class den = decode_integer(j[1], path + "[1]");
    if (den == 0) schema(path, "denominator zero");
    return make_rational(num, den);
  }
  schema(path, "expected a rational [num, den]");
}

json encode(const Rational& q) {
  return json::array({encode_integer(q.get_num()), encode_integer(q.get_den())});
}

Space decode_space(const json& j, const std::string& path) {
  const std::string kind = kind_of(j, path);
  if (kind == "unit_interval") return Space::unit_interval();
  if (kind == "circle") {
    CircleMetric metric = CircleMetric::Literal;
    if (j.contains("metric")) {
      const json& m = j.at("metric");
      if (m == "literal") metric = CircleMetric::Literal;
      else if (m == "arc") metric = CircleMetric::Arc;
      else schema(path + ".metric", "expected \"literal\" or \"arc\"");
    }
    return Space::circle(metric);
  }
  if (kind == "shift") {
    const std::uint64_t horizon = decode_u64(field(j, "horizon", path), path + ".horizon");
    return at_path(path, [&] { return Space::shift(horizon); });
  }
  if (kind == "finite") {
    const std::uint64_t size = decode_u64(field(j, "size", path), path + ".size");
    if (!j.contains("metric")) return at_path(path, [&] { return Space::finite(size); });
    const json& rows = j.at("metric");
    if (!rows.is_array() || rows.size() != size) schema(path + ".metric", "expected " + std::to_string(size) + " rows");
    std::vector<Rational> metric;
    for (std::size_t r = 0; r < size; ++r) {
      const std::string rp = path + ".metric[" + std::to_string(r) + "]";
      if (!rows[r].is_array() || rows[r].size() != size) schema(rp, "expected " + std::to_string(size) + " entries");
      for (std::size_t c = 0; c < size; ++c) metric.push_back(decode_rational(rows[r][c], rp + "[" + std::to_string(c) + "]"));
    }
    return at_path(path + ".metric", [&] { return Space::finite(size, std::move(metric)); });
  }
  schema(path + ".kind", "unknown space kind \"" + kind + "\"");
}

json encode(const Space& s) {
  switch (s.kind()) {
    case SpaceKind::UnitInterval: return json{{"kind", "unit_interval"}};
    case SpaceKind::Circle:
      return json{{"kind", "circle"}, {"metric", s.circle_metric() == CircleMetric::Arc ? "arc" : "literal"}};
    case SpaceKind::Shift: return json{{"kind", "shift"}, {"horizon", s.horizon()}};
    case SpaceKind::Finite: {
      json out{{"kind", "finite"}, {"size", s.finite_size()}};
      if (s.has_explicit_metric()) {
        json rows = json::array();
        for (std::size_t i = 0; i < s.finite_size(); ++i) {
          json row = json::array();
          for (std::size_t k = 0; k < s.finite_size(); ++k) row.push_back(encode(s.finite_metric(i, k)));
          rows.push_back(std::move(row));
        }
        out["metric"] = std::move(rows);
      }
      return out;
    }
  }
  return json{};
}

SelfMap decode_map(const json& j, const std::string& path) {
  const std::string kind = kind_of(j, path);
  if (kind == "piecewise_linear") {
    auto bp = decode_breakpoints(field(j, "breakpoints", path), path + ".breakpoints");
    return at_path(path, [&] { return SelfMap::piecewise_linear(std::move(bp)); });
  }
  if (kind == "constant") {
    Rational c = decode_rational(field(j, "c", path), path + ".c");
    return at_path(path, [&] { return SelfMap::constant(c); });
  }
  if (kind == "finite_table") {
    auto images = decode_indices(field(j, "images", path), path + ".images");
    return at_path(path, [&] { return SelfMap::finite_table(std::move(images)); });
  }
  if (kind == "angle_scale") {
    Rational f = decode_rational(field(j, "factor", path), path + ".factor");
    return at_path(path, [&] { return SelfMap::angle_scale(std::move(f)); });
  }
  if (kind == "shift_power") {
    const std::uint64_t p = decode_u64(field(j, "p", path), path + ".p");
    return at_path(path, [&] { return SelfMap::shift_power(p); });
  }
  if (kind == "rotation") {
    Rational t = decode_rational(field(j, "turns", path), path + ".turns");
    return SelfMap::rotation(std::move(t));
  }
  if (kind == "composite") {
    const json& stages = field(j, "stages", path);
    if (!stages.is_array()) schema(path + ".stages", "expected an array of maps");
    std::vector<SelfMap> maps;
    for (std::size_t i = 0; i < stages.size(); ++i)
      maps.push_back(decode_map(stages[i], path + ".stages[" + std::to_string(i) + "]"));
    return at_path(path, [&] { return SelfMap::composite(std::move(maps)); });
  }
  schema(path + ".kind", "unknown map kind \"" + kind + "\"");
}

json encode(const SelfMap& m) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SelfMap::PiecewiseLinear>) {
          return json{{"kind", "piecewise_linear"}, {"breakpoints", encode_breakpoints(v.breakpoints)}};
        } else if constexpr (std::is_same_v<T, SelfMap::FiniteTable>) {
          return json{{"kind", "finite_table"}, {"images", v.images}};
        } else if constexpr (std::is_same_v<T, SelfMap::AngleScale>) {
          return json{{"kind", "angle_scale"}, {"factor", encode(v.factor)}};
        } else if constexpr (std::is_same_v<T, SelfMap::ShiftPower>) {
          return json{{"kind", "shift_power"}, {"p", v.power}};
        } else if constexpr (std::is_same_v<T, SelfMap::Rotation>) {
          return json{{"kind", "rotation"}, {"turns", encode(v.turns)}};
        } else {
          json stages = json::array();
          for (const auto& s : *v.stages) stages.push_back(encode(s));
          return json{{"kind", "composite"}, {"stages", std::move(stages)}};
        }
      },
      m.variant());
}

MultiMapping decode_system(const json& j, const std::string& path) {
  Space space = decode_space(field(j, "space", path), path + ".space");
  const json& maps = field(j, "maps", path);
  if (!maps.is_array() || maps.empty()) schema(path + ".maps", "expected a nonempty array of maps");
  std::vector<SelfMap> out;
  for (std::size_t i = 0; i < maps.size(); ++i) out.push_back(decode_map(maps[i], path + ".maps[" + std::to_string(i) + "]"));
  return at_path(path + ".maps", [&] { return MultiMapping(space, std::move(out)); });
}

json encode(const MultiMapping& f) {
  json maps = json::array();
  for (const auto& m : f.maps()) maps.push_back(encode(m));
  return json{{"space", encode(f.space())}, {"maps", std::move(maps)}};
}

Point decode_point(const json& j, const Space& s, const std::string& path) {
  switch (s.kind()) {
    case SpaceKind::UnitInterval: {
      Rational v = decode_rational(j, path);
      return at_path(path, [&] { return Point::real(std::move(v)); });
    }
    case SpaceKind::Circle: return Point::angle(decode_rational(j, path));
    case SpaceKind::Finite: {
      const std::uint64_t i = decode_u64(j, path);
      if (i >= s.finite_size()) schema(path, "element " + std::to_string(i) + " outside the space");
      return Point::element(i);
    }
    case SpaceKind::Shift: {
      if (j.is_string()) return Point::seq(decode_spec(j, path));
      const json& spec = field(j, "seq", path);
      const std::uint64_t offset = j.contains("offset") ? decode_u64(j.at("offset"), path + ".offset") : 0;
      return Point::seq(decode_spec(spec, path + ".seq"), offset);
    }
  }
  schema(path, "unsupported space");
}

json encode(const Point& p) {
  switch (p.kind()) {
    case SpaceKind::UnitInterval: return encode(p.value());
    case SpaceKind::Circle: return encode(p.turns());
    case SpaceKind::Finite: return json(p.index());
    case SpaceKind::Shift: return json{{"seq", encode_spec(p.spec())}, {"offset", p.offset()}};
  }
  return json{};
}

FiniteSet decode_set(const json& j, const Space& s, const std::string& path) {
  if (!j.is_array() || j.empty()) schema(path, "expected a nonempty array of points");
  std::vector<Point> pts;
  for (std::size_t i = 0; i < j.size(); ++i) pts.push_back(decode_point(j[i], s, path + "[" + std::to_string(i) + "]"));
  return FiniteSet::make(s, std::move(pts));
}

json encode(const FiniteSet& a) {
  json out = json::array();
  for (const auto& p : a.points()) out.push_back(encode(p));
  return out;
}

Homeomorphism decode_homeomorphism(const json& j, const Space& source, const std::string& path) {
  const std::string kind = kind_of(j, path);
  if (kind == "identity") return at_path(path, [&] { return Homeomorphism::identity(source); });
  if (kind == "piecewise_linear") {
    if (source.kind() != SpaceKind::UnitInterval) schema(path, "piecewise-linear homeomorphisms act on the unit interval");
    auto bp = decode_breakpoints(field(j, "breakpoints", path), path + ".breakpoints");
    return at_path(path, [&] { return Homeomorphism::piecewise_linear(std::move(bp)); });
  }
  if (kind == "permutation") {
    auto images = decode_indices(field(j, "images", path), path + ".images");
    return at_path(path, [&] { return Homeomorphism::permutation(source, std::move(images)); });
  }
  if (kind == "rotation") {
    if (source.kind() != SpaceKind::Circle) schema(path, "rotations act on the circle");
    Rational t = decode_rational(field(j, "turns", path), path + ".turns");
    return Homeomorphism::rotation(std::move(t), source.circle_metric());
  }
  schema(path + ".kind", "unknown homeomorphism kind \"" + kind + "\"");
}

json encode(const Homeomorphism& t) {
  const auto& v = t.forward().variant();
  if (const auto* pl = std::get_if<SelfMap::PiecewiseLinear>(&v))
    return json{{"kind", "piecewise_linear"}, {"breakpoints", encode_breakpoints(pl->breakpoints)}};
  if (const auto* table = std::get_if<SelfMap::FiniteTable>(&v))
    return json{{"kind", "permutation"}, {"images", table->images}};
  if (const auto* rot = std::get_if<SelfMap::Rotation>(&v)) return json{{"kind", "rotation"}, {"turns", encode(rot->turns)}};
  return json{{"kind", "identity"}};
}

json encode(const Distance& d) { return json{{"value", encode(d.value)}, {"upper_bound", d.upper_bound}}; }

json encode(const Evidence& e, std::size_t max_witnesses) {
  json params = json::object();
  for (const auto& [k, v] : e.params) params[k] = v;
  json witnesses = json::array();
  for (const auto& w : e.witnesses) {
    if (max_witnesses && witnesses.size() == max_witnesses) break;
    witnesses.push_back(json{{"u", w.u_index}, {"v", w.v_index}, {"x", encode(w.x)}, {"y", encode(w.y)},
                             {"n", w.n}, {"distance", encode(w.distance)}});
  }
  return json{{"verdict", to_string(e.verdict)},
              {"horizon", e.horizon},
              {"params", std::move(params)},
              {"witness_count", e.witnesses.size()},
              {"witnesses", std::move(witnesses)},
              {"unresolved", e.unresolved},
              {"refuted", e.refuted},
              {"notes", e.notes}};
}

}  // namespace kato::io
