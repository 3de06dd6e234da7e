#include "obtk/field.hpp"

#include <algorithm>
#include <cmath>

#include "obtk/errors.hpp"
#include "obtk/format.hpp"

namespace obtk {

struct ScalarField::Node {
  Kind kind;
  std::vector<double> params;
  std::vector<ScalarField> children;
};

namespace {

std::vector<double> parse_list(std::string_view body, std::size_t expected,
                               std::string_view spec) {
  const auto parts = split_top_level(body, ',');
  if (parts.size() != expected) {
    throw ValidationError("field spec '" + std::string(spec) + "' expects " +
                          std::to_string(expected) + " numbers");
  }
  std::vector<double> out;
  for (const auto& p : parts) out.push_back(parse_number(p));
  return out;
}

std::string wrap_if_sum(const std::string& s) {
  return split_top_level(s, '+').size() > 1 ? "(" + s + ")" : s;
}

}  // namespace

ScalarField ScalarField::constant(double c) {
  if (!std::isfinite(c)) throw ValidationError("constant field value must be finite");
  return ScalarField(std::make_shared<Node>(Node{Kind::constant, {c}, {}}));
}

ScalarField ScalarField::coordinate(int i) {
  if (i != 1 && i != 2) throw ValidationError("coordinate index must be 1 or 2");
  return ScalarField(std::make_shared<Node>(Node{Kind::coordinate, {double(i)}, {}}));
}

ScalarField ScalarField::gaussian(Point center, double sigma) {
  if (!(sigma > 0.0)) throw ValidationError("gaussian sigma must be positive");
  return ScalarField(
      std::make_shared<Node>(Node{Kind::gaussian, {center.x, center.y, sigma}, {}}));
}

ScalarField ScalarField::cutoff(Point x, double r, double t) {
  if (!(r > 0.0 && r < t && std::isfinite(t))) {
    throw ValidationError("cutoff needs 0 < r < t, got r = " + format_exact(r) +
                          ", t = " + format_exact(t));
  }
  return ScalarField(std::make_shared<Node>(Node{Kind::cutoff, {x.x, x.y, r, t}, {}}));
}

ScalarField ScalarField::sum(std::vector<ScalarField> parts) {
  if (parts.empty()) throw ValidationError("sum field needs at least one part");
  return ScalarField(std::make_shared<Node>(Node{Kind::sum, {}, std::move(parts)}));
}

ScalarField ScalarField::scale(double c, ScalarField u) {
  if (!std::isfinite(c)) throw ValidationError("scale factor must be finite");
  return ScalarField(std::make_shared<Node>(Node{Kind::scale, {c}, {std::move(u)}}));
}

ScalarField ScalarField::dilate(double r, ScalarField u) {
  if (!(r > 0.0) || !std::isfinite(r)) throw ValidationError("dilation factor must be positive");
  return ScalarField(std::make_shared<Node>(Node{Kind::dilate, {r}, {std::move(u)}}));
}

ScalarField ScalarField::truncate(double cap, ScalarField u) {
  if (!std::isfinite(cap)) throw ValidationError("truncation level must be finite");
  return ScalarField(std::make_shared<Node>(Node{Kind::truncate, {cap}, {std::move(u)}}));
}

ScalarField ScalarField::parse(std::string_view spec) {
  spec = trim(strip_parens(trim(spec)));
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ValidationError("malformed field spec '" + std::string(spec) + "'");
  }
  const auto name = spec.substr(0, colon);
  const auto body = spec.substr(colon + 1);
  if (name == "const") return constant(parse_number(body));
  if (name == "coord") {
    const double i = parse_number(body);
    if (i != 1.0 && i != 2.0) {
      throw ValidationError("coordinate index must be 1 or 2, got '" + std::string(body) + "'");
    }
    return coordinate(static_cast<int>(i));
  }
  if (name == "gauss") {
    const auto v = parse_list(body, 3, spec);
    return gaussian({v[0], v[1]}, v[2]);
  }
  if (name == "cutoff") {
    const auto v = parse_list(body, 4, spec);
    return cutoff({v[0], v[1]}, v[2], v[3]);
  }
  if (name == "sum") {
    std::vector<ScalarField> parts;
    for (const auto& piece : split_top_level(body, '+')) parts.push_back(parse(piece));
    return sum(std::move(parts));
  }
  if (name == "scale" || name == "dil" || name == "min") {
    const auto star = body.find('*');
    if (star == std::string_view::npos) {
      throw ValidationError("field spec '" + std::string(spec) + "' must read " +
                            std::string(name) + ":<number>*<spec>");
    }
    const double c = parse_number(body.substr(0, star));
    auto inner = parse(body.substr(star + 1));
    if (name == "scale") return scale(c, std::move(inner));
    if (name == "dil") return dilate(c, std::move(inner));
    return truncate(c, std::move(inner));
  }
  throw ValidationError("unknown field kind '" + std::string(name) + "'");
}

std::string ScalarField::spec() const {
  const auto& p = node_->params;
  switch (node_->kind) {
    case Kind::constant:
      return "const:" + format_exact(p[0]);
    case Kind::coordinate:
      return "coord:" + format_exact(p[0]);
    case Kind::gaussian:
      return "gauss:" + format_exact(p[0]) + "," + format_exact(p[1]) + "," + format_exact(p[2]);
    case Kind::cutoff:
      return "cutoff:" + format_exact(p[0]) + "," + format_exact(p[1]) + "," +
             format_exact(p[2]) + "," + format_exact(p[3]);
    case Kind::sum: {
      std::string out = "sum:";
      for (std::size_t i = 0; i < node_->children.size(); ++i) {
        if (i > 0) out += "+";
        out += wrap_if_sum(node_->children[i].spec());
      }
      return out;
    }
    case Kind::scale:
      return "scale:" + format_exact(p[0]) + "*" + node_->children[0].spec();
    case Kind::dilate:
      return "dil:" + format_exact(p[0]) + "*" + node_->children[0].spec();
    case Kind::truncate:
      return "min:" + format_exact(p[0]) + "*" + node_->children[0].spec();
  }
  return {};
}

double ScalarField::operator()(Point z) const {
  const auto& p = node_->params;
  switch (node_->kind) {
    case Kind::constant:
      return p[0];
    case Kind::coordinate:
      return p[0] == 1.0 ? z.x : z.y;
    case Kind::gaussian: {
      const double dx = z.x - p[0];
      const double dy = z.y - p[1];
      return std::exp(-(dx * dx + dy * dy) / (2.0 * p[2] * p[2]));
    }
    case Kind::cutoff: {
      const double d = std::hypot(z.x - p[0], z.y - p[1]);
      if (d <= p[2]) return 1.0;
      if (d >= p[3]) return 0.0;
      return (p[3] - d) / (p[3] - p[2]);
    }
    case Kind::sum: {
      double s = 0.0;
      for (const auto& c : node_->children) s += c(z);
      return s;
    }
    case Kind::scale:
      return p[0] * node_->children[0](z);
    case Kind::dilate:
      return node_->children[0](p[0] * z);
    case Kind::truncate:
      return std::min(node_->children[0](z), p[0]);
  }
  return 0.0;
}

ScalarField::Kind ScalarField::kind() const { return node_->kind; }

std::optional<ScalarField::Support> ScalarField::support() const {
  const auto& p = node_->params;
  switch (node_->kind) {
    case Kind::constant:
      return Support{Box{}, p[0], true};
    case Kind::coordinate:
      return std::nullopt;
    case Kind::gaussian: {
      const double h = 8.0 * p[2];
      return Support{Box{{p[0] - h, p[1] - h}, {p[0] + h, p[1] + h}}, 0.0, false};
    }
    case Kind::cutoff:
      return Support{Box{{p[0] - p[3], p[1] - p[3]}, {p[0] + p[3], p[1] + p[3]}}, 0.0, false};
    case Kind::sum: {
      std::optional<Box> box;
      double outside = 0.0;
      for (const auto& c : node_->children) {
        const auto s = c.support();
        if (!s) return std::nullopt;
        outside += s->outside;
        if (!s->everywhere) box = box ? bounding_box(*box, s->box) : s->box;
      }
      if (!box) return Support{Box{}, outside, true};
      return Support{*box, outside, false};
    }
    case Kind::scale: {
      auto s = node_->children[0].support();
      if (s) s->outside *= p[0];
      return s;
    }
    case Kind::dilate: {
      auto s = node_->children[0].support();
      if (s && !s->everywhere) s->box = Box{(1.0 / p[0]) * s->box.lo, (1.0 / p[0]) * s->box.hi};
      return s;
    }
    case Kind::truncate: {
      auto s = node_->children[0].support();
      if (s) s->outside = std::min(s->outside, p[0]);
      return s;
    }
  }
  return std::nullopt;
}

}  // namespace obtk
