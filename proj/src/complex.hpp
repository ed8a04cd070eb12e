#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "diagram.hpp"

namespace khtor {

// An enhanced state: a Kauffman state (bitmask, bit k = B-label at crossing
// k) plus a sign for each circle of the smoothing. Circles are in canonical
// order (ascending minimal arc, free circles last); sign bit set = minus.
struct EnhancedState {
  uint32_t mask = 0;
  uint32_t signs = 0;

  friend bool operator==(const EnhancedState&, const EnhancedState&) = default;
  friend auto operator<=>(const EnhancedState& a, const EnhancedState& b) {
    if (auto c = a.mask <=> b.mask; c != 0) return c;
    return a.signs <=> b.signs;
  }
  uint64_t key() const { return (uint64_t(mask) << 32) | signs; }
};

// Sparse integer combination of enhanced states at a fixed bidegree.
struct ChainVector {
  int i = 0;
  int j = 0;
  std::map<EnhancedState, mpz_class> terms;

  bool is_zero() const { return terms.empty(); }
  void add(const EnhancedState& s, const mpz_class& c);
  friend bool operator==(const ChainVector&, const ChainVector&) = default;
};

ChainVector operator*(const mpz_class& c, const ChainVector& z);
ChainVector operator+(const ChainVector& a, const ChainVector& b);
ChainVector operator-(const ChainVector& a, const ChainVector& b);

// Matrix of the differential C^{i,j} -> C^{i+1,j} over the canonical bases.
struct BoundaryMatrix {
  int i = 0;
  int j = 0;
  std::vector<EnhancedState> source;
  std::vector<EnhancedState> target;
  // Per source column: (row, entry) with entries in {-1,+1}.
  std::vector<std::vector<std::pair<int, int>>> cols;

  int rows() const { return static_cast<int>(target.size()); }
  int columns() const { return static_cast<int>(source.size()); }
  std::string to_triplet_text() const;
};

// Lightweight view into the cached circle data of one Kauffman state.
struct CirclesView {
  int count = 0;
  int arc_circle_count = 0;
  const int8_t* arc_circle = nullptr;
};

// Per-diagram context: memoized smoothing circles for every Kauffman state
// plus the enhanced-state complex built on top of them. Immutable after
// construction; all queries are const and safe to run concurrently.
class ComplexContext {
 public:
  explicit ComplexContext(const LinkDiagram& diagram);

  const LinkDiagram& diagram() const { return diagram_; }
  int crossing_count() const { return n_; }

  CirclesView circles(uint32_t mask) const;
  int theta(const EnhancedState& s) const;
  int homological_degree(const EnhancedState& s) const {
    return __builtin_popcount(s.mask);
  }
  int quantum_degree(const EnhancedState& s) const {
    return homological_degree(s) + theta(s);
  }

  std::vector<EnhancedState> enumerate_basis(int i, int j) const;
  int dim(int i, int j) const;
  // All (i,j) with dim > 0, ordered.
  std::vector<std::pair<int, int>> bidegrees() const;

  int incidence(const EnhancedState& s, const EnhancedState& t) const;
  ChainVector differential(const ChainVector& z) const;
  BoundaryMatrix boundary_matrix(int i, int j) const;

  // Coordinates of z in the canonical basis of C^{z.i, z.j}.
  std::vector<mpz_class> coordinates(const ChainVector& z) const;
  ChainVector from_coordinates(int i, int j,
                               const std::vector<mpz_class>& coords) const;

 private:
  struct Flip {
    EnhancedState target;
    int sign;
  };
  // All enhanced states reachable from s by relabeling crossing x to B,
  // with their incidence signs.
  void flips(const EnhancedState& s, int x, std::vector<Flip>& out) const;

  LinkDiagram diagram_;
  int n_ = 0;
  std::vector<int8_t> circle_counts_;
  std::vector<int8_t> arc_circles_;  // 2^n rows of arc_count entries
  std::vector<std::vector<uint32_t>> masks_by_weight_;
};

}  // namespace khtor
