#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "opmean/symmat.hpp"

namespace opmean {

namespace detail {
struct MapNode;
}

/// A positive linear map from a closed catalog. Immutable; copies share state.
///
/// Text grammar (resolved against an input dimension n):
///   identity | trace | scale:k | pinch:k | compress:k | compress:<file> | mix:w
/// `pinch:k` splits the indices into [0,k) and [k,n); `compress:k` keeps the
/// first k coordinates; `compress:<file>` reads an isometry V (first line
/// `rows cols`); `mix:w` is w * identity + (1 - w) * trace.
class MapDescriptor {
 public:
  enum class Kind {
    identity,
    compression,
    pinching,
    normalized_trace,
    convex_combination,
    scale,
    unitalized
  };

  /// Identity on 1x1 matrices.
  MapDescriptor();

  static MapDescriptor identity(std::size_t n);
  /// A -> V^T A V. V must have orthonormal columns (||V^T V - I||_F <= 1e-11).
  static MapDescriptor compression(Matrix v);
  /// Block-diagonal projection onto the given index blocks, which must
  /// partition {0, ..., n-1}.
  static MapDescriptor pinching(std::size_t n, std::vector<std::vector<std::size_t>> blocks);
  /// A -> (tr A / n) I
  static MapDescriptor normalized_trace(std::size_t n);
  /// Weights must be non-negative and sum to 1 within 1e-12; all terms must
  /// share input and output dimensions.
  static MapDescriptor convex_combination(std::vector<std::pair<double, MapDescriptor>> terms);
  /// A -> k A with k > 0 (not unital unless k = 1).
  static MapDescriptor scale(std::size_t n, double k);

  static MapDescriptor parse(const std::string& text, std::size_t input_dim);

  Kind kind() const noexcept;
  std::size_t input_dim() const noexcept;
  std::size_t output_dim() const noexcept;
  std::string name() const;

  /// Throws DimensionError when A does not match input_dim().
  SymMatrix apply(const SymMatrix& a) const;

  // Kind-specific accessors, for serialization.
  const Matrix& isometry() const;                                  // compression
  const std::vector<std::vector<std::size_t>>& blocks() const;     // pinching
  const std::vector<std::pair<double, MapDescriptor>>& terms() const;  // convex_combination
  double factor() const;                                           // scale
  const MapDescriptor& inner() const;                              // unitalized

 private:
  explicit MapDescriptor(std::shared_ptr<const detail::MapNode> node) : node_(std::move(node)) {}
  friend MapDescriptor unitalize(const MapDescriptor& phi);

  std::shared_ptr<const detail::MapNode> node_;
};

SymMatrix apply_map(const MapDescriptor& phi, const SymMatrix& a);

/// ||Phi(I) - I||_F <= tol
bool is_unital(const MapDescriptor& phi, double tol = 1e-10);

/// Psi(A) = Phi(I)^{-1/2} Phi(A) Phi(I)^{-1/2}. Throws NotPositiveDefinite
/// when Phi(I) is singular; perturb Phi explicitly (e.g. mix in the identity)
/// before calling in that case.
MapDescriptor unitalize(const MapDescriptor& phi);

}  // namespace opmean
