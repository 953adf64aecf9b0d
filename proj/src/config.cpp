// Copyright 2026 The Moreau Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "moreau/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace moreau {

namespace {

using nlohmann::json;
using Path = std::vector<std::string>;

std::string Join(const Path& path) {
  if (path.empty()) return "<root>";
  std::string out;
  for (const auto& k : path) out += (out.empty() ? "" : ".") + k;
  return out;
}

// Reads fields of a parsed document and reports failures against the line
// of the key in the original text.
class Reader {
 public:
  Reader(const std::string& text, const std::string& source) : text_(text), source_(source) {}

  int LineOf(const Path& path) const {
    std::size_t pos = 0;
    std::size_t found = 0;
    for (const auto& key : path) {
      const std::size_t at = text_.find("\"" + key + "\"", pos);
      if (at == std::string::npos) break;
      found = at;
      pos = at + key.size() + 2;
    }
    return LineAt(found);
  }

  int LineAt(std::size_t byte) const {
    byte = std::min(byte, text_.size());
    return 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + byte, '\n'));
  }

  [[noreturn]] void Fail(const Path& path, const std::string& message) const {
    std::ostringstream os;
    os << source_ << ":" << LineOf(path) << ": " << Join(path) << ": " << message;
    throw Error(ErrorCode::kConfigError, os.str());
  }

  const json& Field(const json& obj, const Path& path, const std::string& key) const {
    if (!obj.is_object()) Fail(path, "expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) Fail(path, "missing field '" + key + "'");
    return *it;
  }

  bool Has(const json& obj, const std::string& key) const {
    return obj.is_object() && obj.contains(key);
  }

  // null stands for `null_value` (used for unbounded box faces).
  double Number(const json& v, const Path& path, std::optional<double> null_value = {}) const {
    if (v.is_null() && null_value) return *null_value;
    if (!v.is_number()) Fail(path, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) Fail(path, "expected a finite number");
    return d;
  }

  double Number(const json& obj, Path path, const std::string& key) const {
    const json& v = Field(obj, path, key);
    path.push_back(key);
    return Number(v, path);
  }

  double Positive(const json& obj, Path path, const std::string& key) const {
    const double d = Number(obj, path, key);
    path.push_back(key);
    if (!(d > 0.0)) Fail(path, "must be positive");
    return d;
  }

  double NonNegative(const json& obj, Path path, const std::string& key) const {
    const double d = Number(obj, path, key);
    path.push_back(key);
    if (d < 0.0) Fail(path, "must be nonnegative");
    return d;
  }

  std::string String(const json& obj, Path path, const std::string& key) const {
    const json& v = Field(obj, path, key);
    path.push_back(key);
    if (!v.is_string()) Fail(path, "expected a string");
    return v.get<std::string>();
  }

  Point Vector(const json& obj, Path path, const std::string& key, int dim,
               std::optional<double> null_value = {}) const {
    const json& v = Field(obj, path, key);
    path.push_back(key);
    if (!v.is_array() || v.empty() || v.size() > static_cast<std::size_t>(kMaxDim)) {
      Fail(path, "expected an array of 1 to " + std::to_string(kMaxDim) + " numbers");
    }
    if (dim > 0 && static_cast<int>(v.size()) != dim) {
      Fail(path, "expected " + std::to_string(dim) + " entries, got " + std::to_string(v.size()));
    }
    Point p(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      Path item = path;
      item.back() += "[" + std::to_string(i) + "]";
      p[static_cast<Eigen::Index>(i)] = Number(v[i], item, null_value);
    }
    return p;
  }

  Matrix MatrixField(const json& obj, Path path, const std::string& key, int dim) const {
    const json& v = Field(obj, path, key);
    path.push_back(key);
    if (!v.is_array() || static_cast<int>(v.size()) != dim) {
      Fail(path, "expected " + std::to_string(dim) + " rows");
    }
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      const json& r = v[static_cast<std::size_t>(i)];
      if (!r.is_array() || static_cast<int>(r.size()) != dim) {
        Fail(path, "row " + std::to_string(i) + " must have " + std::to_string(dim) + " entries");
      }
      for (int j = 0; j < dim; ++j) m(i, j) = Number(r[static_cast<std::size_t>(j)], path);
    }
    return m;
  }

 private:
  const std::string& text_;
  const std::string& source_;
};

json Parse(const std::string& text, const std::string& source, const Reader& reader) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << source << ":" << reader.LineAt(e.byte > 0 ? e.byte - 1 : 0) << ": " << e.what();
    throw Error(ErrorCode::kConfigError, os.str());
  }
}

MovingSet ParseSet(const Reader& in, const json& doc) {
  const Path path{"set"};
  const json& s = in.Field(doc, {}, "set");
  const std::string type = in.String(s, path, "type");
  if (type == "interval") {
    const double a0 = in.Number(s, path, "a0");
    const double b0 = in.Number(s, path, "b0");
    if (a0 > b0) in.Fail(path, "a0 must not exceed b0");
    return MovingSet::Interval(a0, in.Number(s, path, "a1"), b0, in.Number(s, path, "b1"));
  }
  if (type == "box") {
    const Point lo = in.Vector(s, path, "lower", 0);
    const int n = static_cast<int>(lo.size());
    const Point hi = in.Vector(s, path, "upper", n);
    if ((hi - lo).minCoeff() < 0.0) in.Fail(path, "lower exceeds upper");
    const Point lr = in.Has(s, "lower_rate") ? in.Vector(s, path, "lower_rate", n) : Point::Zero(n);
    const Point ur = in.Has(s, "upper_rate") ? in.Vector(s, path, "upper_rate", n) : Point::Zero(n);
    double t_max = kInf;
    for (int i = 0; i < n; ++i) {
      if (lr[i] > ur[i]) t_max = std::min(t_max, (hi[i] - lo[i]) / (lr[i] - ur[i]));
    }
    if (in.Has(s, "t_max") && !s["t_max"].is_null()) {
      const double given = in.NonNegative(s, path, "t_max");
      if (given > t_max) in.Fail(Path{"set", "t_max"}, "box is empty before t_max");
      t_max = given;
    }
    return MovingSet::Box(BoxShape{lo, lr, hi, ur}, t_max);
  }
  if (type == "box_minus_ball") {
    const Point lo = in.Vector(s, path, "lower", 0);
    const int n = static_cast<int>(lo.size());
    const Point hi = in.Vector(s, path, "upper", n);
    if ((hi - lo).minCoeff() < 0.0) in.Fail(path, "lower exceeds upper");
    return MovingSet::BoxMinusBall(lo, hi, in.Vector(s, path, "center", n),
                                   in.Positive(s, path, "radius"));
  }
  in.Fail(Path{"set", "type"}, "unknown set type '" + type + "' (interval, box, box_minus_ball)");
}

ControlField ParseControl(const Reader& in, const json& doc, int n) {
  const Path path{"control"};
  const json& c = in.Field(doc, {}, "control");
  const std::string type = in.String(c, path, "type");
  const Matrix drift = in.Has(c, "drift") ? in.MatrixField(c, path, "drift", n) : Matrix::Zero(n, n);
  const double bound = in.NonNegative(c, path, "M");
  const double lip = in.NonNegative(c, path, "L_G");
  if (type == "polytope") {
    const json& offsets = in.Field(c, path, "offsets");
    if (!offsets.is_array() || offsets.empty()) {
      in.Fail(Path{"control", "offsets"}, "expected a nonempty array of vectors");
    }
    std::vector<Point> pts;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      Path item{"control", "offsets"};
      item.back() += "[" + std::to_string(i) + "]";
      if (!offsets[i].is_array() || static_cast<int>(offsets[i].size()) != n) {
        in.Fail(item, "expected " + std::to_string(n) + " entries");
      }
      Point p(n);
      for (int j = 0; j < n; ++j) p[j] = in.Number(offsets[i][static_cast<std::size_t>(j)], item);
      pts.push_back(p);
    }
    return ControlField::Polytope(drift, std::move(pts), bound, lip);
  }
  if (type == "ball") {
    return ControlField::Ball(drift, in.Vector(c, path, "center", n),
                              in.Positive(c, path, "radius"), bound, lip);
  }
  in.Fail(Path{"control", "type"}, "unknown control type '" + type + "' (polytope, ball)");
}

StaticSet ParseStatic(const Reader& in, const json& s, const Path& path, int n) {
  const std::string type = in.String(s, path, "type");
  if (type == "half_space") {
    const int dim = in.Has(s, "dim") ? static_cast<int>(in.Positive(s, path, "dim")) : n;
    if (dim < 1 || dim > kMaxDim || (n > 0 && dim != n)) {
      in.Fail(path, "dim " + std::to_string(dim) + " does not match dimension " + std::to_string(n));
    }
    const double axis = in.Number(s, path, "axis");
    if (axis < 0 || axis >= dim || axis != std::floor(axis)) {
      Path p = path;
      p.push_back("axis");
      in.Fail(p, "axis must be an integer in [0, " + std::to_string(dim) + ")");
    }
    const std::string side = in.String(s, path, "side");
    if (side != "upper" && side != "lower") {
      Path p = path;
      p.push_back("side");
      in.Fail(p, "side must be 'upper' or 'lower'");
    }
    return StaticSet::HalfSpace(dim, static_cast<int>(axis), in.Number(s, path, "value"),
                                side == "upper");
  }
  if (type == "box") {
    const Point lo = in.Vector(s, path, "lower", n, -kInf);
    const Point hi = in.Vector(s, path, "upper", static_cast<int>(lo.size()), kInf);
    if ((hi - lo).minCoeff() < 0.0) in.Fail(path, "lower exceeds upper");
    const int dim = static_cast<int>(lo.size());
    return StaticSet(BoxShape{lo, Point::Zero(dim), hi, Point::Zero(dim)});
  }
  if (type == "ball") {
    return StaticSet(BallShape{in.Vector(s, path, "center", n), in.Positive(s, path, "radius")});
  }
  Path p = path;
  p.push_back("type");
  in.Fail(p, "unknown set type '" + type + "' (half_space, box, ball)");
}

json Vec(const Point& p) {
  json out = json::array();
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    out.push_back(std::isfinite(p[i]) ? json(p[i]) : json(nullptr));
  }
  return out;
}

json SetToJson(const MovingSet& set) {
  if (const auto* b = std::get_if<BoxShape>(&set.shape())) {
    if (b->dimension() == 1) {
      return {{"type", "interval"},
              {"a0", b->lower[0]},
              {"a1", b->lower_rate[0]},
              {"b0", b->upper[0]},
              {"b1", b->upper_rate[0]}};
    }
    return {{"type", "box"},
            {"lower", Vec(b->lower)},
            {"upper", Vec(b->upper)},
            {"lower_rate", Vec(b->lower_rate)},
            {"upper_rate", Vec(b->upper_rate)},
            {"t_max", std::isfinite(set.t_max()) ? json(set.t_max()) : json(nullptr)}};
  }
  if (const auto* s = std::get_if<BoxMinusBallShape>(&set.shape())) {
    return {{"type", "box_minus_ball"},
            {"lower", Vec(s->box.lower)},
            {"upper", Vec(s->box.upper)},
            {"center", Vec(s->center)},
            {"radius", s->radius}};
  }
  throw Error(ErrorCode::kConfigError, "oracle-defined sets cannot be serialized");
}

json ControlToJson(const ControlField& field) {
  json drift = json::array();
  for (Eigen::Index i = 0; i < field.drift().rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < field.drift().cols(); ++j) row.push_back(field.drift()(i, j));
    drift.push_back(row);
  }
  json out = {{"drift", drift}, {"M", field.bound()}, {"L_G", field.lipschitz()}};
  if (field.kind() == ControlField::Kind::kPolytope) {
    out["type"] = "polytope";
    json offsets = json::array();
    for (const Point& u : field.offsets()) offsets.push_back(Vec(u));
    out["offsets"] = offsets;
  } else {
    out["type"] = "ball";
    out["center"] = Vec(field.center());
    out["radius"] = field.radius();
  }
  return out;
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

ScenarioBundle parse_scenario(const std::string& text, const std::string& source) {
  const Reader in(text, source);
  const json doc = Parse(text, source, in);
  if (!doc.is_object()) in.Fail({}, "expected an object");
  const std::string name = in.Has(doc, "name") ? in.String(doc, {}, "name") : "custom";
  MovingSet set = ParseSet(in, doc);
  const int n = set.dimension();
  ControlField field = ParseControl(in, doc, n);
  StaticSet target = ParseStatic(in, in.Field(doc, {}, "target"), {"target"}, n);
  if (target.dimension() != n) in.Fail({"target"}, "dimension differs from the set");
  double rho = set.lipschitz() + field.bound();
  if (in.Has(doc, "rho")) rho = in.Positive(doc, {}, "rho");
  return ScenarioBundle{name, std::move(set), std::move(field), std::move(target), std::nullopt,
                        {}, rho};
}

ScenarioBundle load_scenario_file(const std::filesystem::path& path) {
  return parse_scenario(ReadFile(path), path.string());
}

ScenarioBundle resolve_scenario(const std::string& name_or_path) {
  if (name_or_path == "example1" || name_or_path == "example2") {
    return scenario_by_name(name_or_path);
  }
  if (std::filesystem::exists(name_or_path)) return load_scenario_file(name_or_path);
  throw Error(ErrorCode::kConfigError,
              "'" + name_or_path + "' is neither a built-in scenario nor a readable file");
}

json scenario_to_json(const ScenarioBundle& bundle) {
  return {{"name", bundle.name},
          {"set", SetToJson(bundle.set)},
          {"control", ControlToJson(bundle.field)},
          {"target", static_set_to_json(bundle.target)},
          {"rho", bundle.rho}};
}

StaticSet parse_static_set(const std::string& text, const std::string& source, int dimension) {
  const Reader in(text, source);
  const json doc = Parse(text, source, in);
  return ParseStatic(in, doc, {}, dimension);
}

json static_set_to_json(const StaticSet& set) {
  if (const auto* b = std::get_if<BoxShape>(&set.shape())) {
    return {{"type", "box"}, {"lower", Vec(b->lower)}, {"upper", Vec(b->upper)}};
  }
  const auto& ball = std::get<BallShape>(set.shape());
  return {{"type", "ball"}, {"center", Vec(ball.center)}, {"radius", ball.radius}};
}

std::filesystem::path output_directory(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("MOREAU_OUT_DIR"); env != nullptr && *env != '\0') return env;
  return std::filesystem::current_path();
}

}  // namespace moreau
