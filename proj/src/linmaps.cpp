#include "opmean/linmaps.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <variant>

#include "opmean/matrix_io.hpp"

namespace opmean {

namespace detail {

struct IdentityMap {};
struct CompressionMap {
  Matrix v;
};
struct PinchingMap {
  std::vector<std::vector<std::size_t>> blocks;
};
struct TraceMap {};
struct ConvexMap {
  std::vector<std::pair<double, MapDescriptor>> terms;
};
struct ScaleMap {
  double k;
};
struct UnitalizedMap {
  MapDescriptor inner;
  SymMatrix inv_root;  // Phi(I)^{-1/2}
};

struct MapNode {
  std::size_t in = 1;
  std::size_t out = 1;
  std::variant<IdentityMap, CompressionMap, PinchingMap, TraceMap, ConvexMap, ScaleMap,
               UnitalizedMap>
      body;
};

}  // namespace detail

namespace {

using detail::MapNode;

template <class T>
const T& body_as(const std::shared_ptr<const MapNode>& node, const char* what) {
  if (const T* p = std::get_if<T>(&node->body)) return *p;
  throw ConfigError(std::string("MapDescriptor: not a ") + what + " map");
}

std::string number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::size_t parse_count(const std::string& s) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); }))
    throw ConfigError("expected a positive integer, got '" + s + "'");
  return static_cast<std::size_t>(std::stoul(s));
}

double parse_real(const std::string& s, const std::string& context) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = std::string::npos;
  }
  if (used != s.size()) throw ConfigError(context + ": expected a number, got '" + s + "'");
  return v;
}

}  // namespace

MapDescriptor::MapDescriptor() : MapDescriptor(identity(1)) {}

MapDescriptor MapDescriptor::identity(std::size_t n) {
  if (n == 0) throw DimensionError("identity map: dimension must be at least 1");
  return MapDescriptor(std::make_shared<const MapNode>(MapNode{n, n, detail::IdentityMap{}}));
}

MapDescriptor MapDescriptor::compression(Matrix v) {
  if (v.rows() == 0 || v.cols() == 0 || v.cols() > v.rows())
    throw DimensionError("compression: V must be n x k with 1 <= k <= n");
  const double err = (v.transpose() * v - Matrix::identity(v.cols())).frobenius();
  if (err > 1e-11) {
    std::ostringstream os;
    os << "compression: V does not have orthonormal columns (||V^T V - I||_F = " << err << ")";
    throw ConfigError(os.str());
  }
  const std::size_t n = v.rows(), k = v.cols();
  return MapDescriptor(
      std::make_shared<const MapNode>(MapNode{n, k, detail::CompressionMap{std::move(v)}}));
}

MapDescriptor MapDescriptor::pinching(std::size_t n, std::vector<std::vector<std::size_t>> blocks) {
  if (n == 0) throw DimensionError("pinching: dimension must be at least 1");
  std::vector<int> seen(n, 0);
  for (const auto& block : blocks) {
    if (block.empty()) throw ConfigError("pinching: empty block");
    for (std::size_t i : block) {
      if (i >= n) throw ConfigError("pinching: index out of range");
      ++seen[i];
    }
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
    throw ConfigError("pinching: blocks must partition the index set");
  return MapDescriptor(
      std::make_shared<const MapNode>(MapNode{n, n, detail::PinchingMap{std::move(blocks)}}));
}

MapDescriptor MapDescriptor::normalized_trace(std::size_t n) {
  if (n == 0) throw DimensionError("trace map: dimension must be at least 1");
  return MapDescriptor(std::make_shared<const MapNode>(MapNode{n, n, detail::TraceMap{}}));
}

MapDescriptor MapDescriptor::convex_combination(
    std::vector<std::pair<double, MapDescriptor>> terms) {
  if (terms.empty()) throw ConfigError("convex combination: no terms");
  double total = 0.0;
  for (const auto& [w, map] : terms) {
    if (!(w >= 0.0)) throw ConfigError("convex combination: negative weight");
    if (map.input_dim() != terms.front().second.input_dim() ||
        map.output_dim() != terms.front().second.output_dim())
      throw DimensionError("convex combination: terms have different shapes");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ConfigError("convex combination: weights must sum to 1");
  const std::size_t in = terms.front().second.input_dim();
  const std::size_t out = terms.front().second.output_dim();
  return MapDescriptor(
      std::make_shared<const MapNode>(MapNode{in, out, detail::ConvexMap{std::move(terms)}}));
}

MapDescriptor MapDescriptor::scale(std::size_t n, double k) {
  if (n == 0) throw DimensionError("scale map: dimension must be at least 1");
  if (!(k > 0.0) || !std::isfinite(k)) throw ConfigError("scale map: factor must be > 0");
  return MapDescriptor(std::make_shared<const MapNode>(MapNode{n, n, detail::ScaleMap{k}}));
}

MapDescriptor MapDescriptor::parse(const std::string& text, std::size_t n) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  const bool has_arg = colon != std::string::npos;

  if (head == "identity" && !has_arg) return identity(n);
  if (head == "trace" && !has_arg) return normalized_trace(n);
  if (head == "scale" && has_arg) return scale(n, parse_real(arg, "scale"));
  if (head == "mix" && has_arg) {
    const double w = parse_real(arg, "mix");
    if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("mix: weight must lie in [0, 1]");
    return convex_combination({{w, identity(n)}, {1.0 - w, normalized_trace(n)}});
  }
  if (head == "pinch" && has_arg) {
    const std::size_t k = parse_count(arg);
    if (k == 0 || k >= n) throw ConfigError("pinch:k needs 0 < k < dim");
    std::vector<std::size_t> first, second;
    for (std::size_t i = 0; i < n; ++i) (i < k ? first : second).push_back(i);
    return pinching(n, {first, second});
  }
  if (head == "compress" && has_arg) {
    const bool numeric =
        std::all_of(arg.begin(), arg.end(), [](unsigned char c) { return std::isdigit(c); });
    if (numeric && !arg.empty()) {
      const std::size_t k = parse_count(arg);
      if (k == 0 || k > n) throw ConfigError("compress:k needs 1 <= k <= dim");
      Matrix v(n, k);
      for (std::size_t i = 0; i < k; ++i) v(i, i) = 1.0;
      return compression(std::move(v));
    }
    std::ifstream in(arg);
    if (!in) throw ConfigError("compress: cannot open '" + arg + "'");
    Matrix v = read_general_matrix(in);
    if (v.rows() != n) throw DimensionError("compress: isometry rows must equal the input dimension");
    return compression(std::move(v));
  }
  throw ConfigError("unknown map '" + text +
                    "' (expected identity, trace, scale:k, pinch:k, compress:k|file, mix:w)");
}

MapDescriptor::Kind MapDescriptor::kind() const noexcept {
  return static_cast<Kind>(node_->body.index());
}

std::size_t MapDescriptor::input_dim() const noexcept { return node_->in; }
std::size_t MapDescriptor::output_dim() const noexcept { return node_->out; }

std::string MapDescriptor::name() const {
  struct Namer {
    const MapNode& node;
    std::string operator()(const detail::IdentityMap&) const { return "identity"; }
    std::string operator()(const detail::CompressionMap& c) const {
      return "compress(" + std::to_string(c.v.rows()) + "->" + std::to_string(c.v.cols()) + ")";
    }
    std::string operator()(const detail::PinchingMap& p) const {
      std::string s = "pinch(";
      for (std::size_t b = 0; b < p.blocks.size(); ++b) {
        if (b) s += "|";
        for (std::size_t i = 0; i < p.blocks[b].size(); ++i) {
          if (i) s += ",";
          s += std::to_string(p.blocks[b][i]);
        }
      }
      return s + ")";
    }
    std::string operator()(const detail::TraceMap&) const { return "trace"; }
    std::string operator()(const detail::ConvexMap& c) const {
      std::string s = "mix(";
      for (std::size_t i = 0; i < c.terms.size(); ++i) {
        if (i) s += " + ";
        s += number(c.terms[i].first) + "*" + c.terms[i].second.name();
      }
      return s + ")";
    }
    std::string operator()(const detail::ScaleMap& s) const { return "scale:" + number(s.k); }
    std::string operator()(const detail::UnitalizedMap& u) const {
      return "unitalized(" + u.inner.name() + ")";
    }
  };
  return std::visit(Namer{*node_}, node_->body);
}

SymMatrix MapDescriptor::apply(const SymMatrix& a) const {
  if (a.dim() != node_->in) {
    std::ostringstream os;
    os << "apply_map " << name() << ": input has dimension " << a.dim() << ", expected "
       << node_->in;
    throw DimensionError(os.str());
  }
  struct Apply {
    const SymMatrix& a;
    SymMatrix operator()(const detail::IdentityMap&) const { return a; }
    SymMatrix operator()(const detail::CompressionMap& c) const { return congruence(a, c.v); }
    SymMatrix operator()(const detail::PinchingMap& p) const {
      SymMatrix r(a.dim());
      for (const auto& block : p.blocks)
        for (std::size_t i : block)
          for (std::size_t j : block) r.set(i, j, a(i, j));
      return r;
    }
    SymMatrix operator()(const detail::TraceMap&) const {
      return SymMatrix::scalar(a.dim(), a.trace() / static_cast<double>(a.dim()));
    }
    SymMatrix operator()(const detail::ConvexMap& c) const {
      SymMatrix r(c.terms.front().second.output_dim());
      for (const auto& [w, map] : c.terms) r += w * map.apply(a);
      return r;
    }
    SymMatrix operator()(const detail::ScaleMap& s) const { return s.k * a; }
    SymMatrix operator()(const detail::UnitalizedMap& u) const {
      return congruence(u.inner.apply(a), u.inv_root);
    }
  };
  return std::visit(Apply{a}, node_->body);
}

const Matrix& MapDescriptor::isometry() const {
  return body_as<detail::CompressionMap>(node_, "compression").v;
}
const std::vector<std::vector<std::size_t>>& MapDescriptor::blocks() const {
  return body_as<detail::PinchingMap>(node_, "pinching").blocks;
}
const std::vector<std::pair<double, MapDescriptor>>& MapDescriptor::terms() const {
  return body_as<detail::ConvexMap>(node_, "convex-combination").terms;
}
double MapDescriptor::factor() const { return body_as<detail::ScaleMap>(node_, "scale").k; }
const MapDescriptor& MapDescriptor::inner() const {
  return body_as<detail::UnitalizedMap>(node_, "unitalized").inner;
}

SymMatrix apply_map(const MapDescriptor& phi, const SymMatrix& a) { return phi.apply(a); }

bool is_unital(const MapDescriptor& phi, double tol) {
  const SymMatrix image = phi.apply(SymMatrix::identity(phi.input_dim()));
  return distance(image, SymMatrix::identity(phi.output_dim())) <= tol;
}

MapDescriptor unitalize(const MapDescriptor& phi) {
  const SymMatrix image = phi.apply(SymMatrix::identity(phi.input_dim()));
  const double lo = min_eig(image);
  if (lo <= kInverseFloor) {
    std::ostringstream os;
    os << "unitalize: Phi(I) is singular (lambda_min = " << lo
       << "); add an explicit epsilon * identity perturbation first";
    throw NotPositiveDefinite(os.str());
  }
  return MapDescriptor(std::make_shared<const MapNode>(MapNode{
      phi.input_dim(), phi.output_dim(), detail::UnitalizedMap{phi, inv_sqrtm(image)}}));
}

}  // namespace opmean
