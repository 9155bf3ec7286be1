#pragma once

#include <memory>
#include <optional>

#include "latticewave/linalg.hpp"
#include "latticewave/lp.hpp"

namespace lw {

enum class Region { Inside, Boundary, Outside };

struct Halfspace {
  Vec a;
  Rat b;  // <a, x> <= b
};

// A rational convex polytope in H-representation. Vertex enumeration and
// exact volume are available for n <= 3; membership, transforms and the
// LP-based predicates work in any dimension.
class Polytope {
 public:
  Polytope(int n, std::vector<Halfspace> halfspaces);

  static Polytope box(const Vec& lo, const Vec& hi);

  int dim() const { return n_; }
  const std::vector<Halfspace>& halfspaces() const { return hs_; }

  Region member(const Vec& x) const;

  // Max slack LP: positive iff the interior is nonempty.
  bool has_interior() const;

  // Exact vertex set (n <= 3), cached. Throws DimensionCap above that.
  const std::vector<Vec>& vertices() const;

  // Exact volume via simplicial decomposition (n <= 3).
  Rat volume() const;

  // Image under x -> P x, supplied as the inverse map P^(-1).
  Polytope linear_image_by_inverse(const Mat& p_inv) const;
  Polytope translated(const Vec& t) const;

  // Componentwise bounds via LP. Cached.
  std::pair<Vec, Vec> bbox() const;

  // Largest inscribed l-inf ball: (center, radius).
  std::pair<Vec, Rat> chebyshev() const;

  // min / max of ||x||_inf over the polytope (min via LP, max via bbox).
  Rat min_linf() const;
  Rat max_linf() const;

 private:
  struct Cache {
    std::optional<std::vector<Vec>> verts;
    std::optional<Rat> vol;
    std::optional<bool> interior;
    std::optional<std::pair<Vec, Vec>> box;
  };

  int n_;
  std::vector<Halfspace> hs_;
  std::shared_ptr<Cache> cache_;  // value-semantics copies share the cache
};

}  // namespace lw
