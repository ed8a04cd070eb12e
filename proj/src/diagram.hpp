#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace khtor {

// A crossing in planar-diagram convention: the four incident arcs listed
// counterclockwise starting from the incoming under-strand. The under-strand
// runs slot 0 -> slot 2; the over-strand occupies slots 1 and 3.
//
// Smoothing a crossing re-pairs the four arc ends:
//   A-label: (slot0,slot1) and (slot2,slot3)
//   B-label: (slot0,slot3) and (slot1,slot2)
// A crossing is positive exactly when the over-strand enters at slot 3.
struct Crossing {
  std::array<int, 4> arcs;  // internal arc indices, 0-based
  int sign = 0;             // +1 or -1
  // over_in_slot: 1 or 3, the slot where the over-strand points into the
  // crossing under the induced orientation.
  int over_in_slot = 0;
};

// One end of an arc: where it attaches to a crossing.
struct ArcEnd {
  int crossing = -1;
  int slot = -1;
};

class CircleSet;
struct ChordDiagram;

class LinkDiagram {
 public:
  // Build from raw tuples of 0-based arc indices (arc labels already
  // normalized to 0..2n-1). Orientation and signs are derived here.
  static LinkDiagram from_tuples(const std::vector<std::array<int, 4>>& tuples,
                                 int free_circles,
                                 const std::vector<std::string>& arc_names = {});

  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int arc_count() const { return arc_count_; }
  int free_circle_count() const { return free_circles_; }
  const Crossing& crossing(int k) const { return crossings_[k]; }
  const std::vector<Crossing>& crossings() const { return crossings_; }

  int positive_count() const { return positive_; }
  int negative_count() const { return negative_; }
  int writhe() const { return positive_ - negative_; }

  // Arc label as written in the source text (defaults to 1-based index).
  const std::string& arc_name(int arc) const { return arc_names_[arc]; }

  // Where an arc starts (tail, leaves a crossing) and ends (head).
  ArcEnd arc_tail(int arc) const { return arc_tail_[arc]; }
  ArcEnd arc_head(int arc) const { return arc_head_[arc]; }

  // Link components. 0..component_count-1 cover the arcs; free circles are
  // counted separately on top.
  int component_count() const { return component_count_ + free_circles_; }
  int arc_component(int arc) const { return arc_component_[arc]; }

  // Half the signed count of crossings between two distinct components.
  int linking_number(int comp_a, int comp_b) const;

  LinkDiagram renumber_crossings(const std::vector<int>& perm) const;

  std::string to_pd_text() const;
  std::string to_json() const;

 private:
  std::vector<Crossing> crossings_;
  int arc_count_ = 0;
  int free_circles_ = 0;
  int positive_ = 0;
  int negative_ = 0;
  std::vector<std::string> arc_names_;
  std::vector<ArcEnd> arc_tail_;
  std::vector<ArcEnd> arc_head_;
  std::vector<int> arc_component_;
  int component_count_ = 0;
};

// A Kauffman state: a choice of A or B at every crossing, stored as a
// bitmask over the fixed crossing order (bit k set = B at crossing k).
struct KauffmanState {
  uint32_t mask = 0;
  int crossing_count = 0;

  int b_count() const { return __builtin_popcount(mask); }
  bool is_b(int k) const { return (mask >> k) & 1u; }
};

// The circles of a smoothed diagram. Circles are canonically ordered by
// their minimal arc index; free circles come after all arc-bearing circles.
class CircleSet {
 public:
  int count() const { return count_; }
  int circle_of_arc(int arc) const { return arc_circle_[arc]; }
  // Cyclic arc sequences, one per arc-bearing circle (free circles rank at
  // the end and have empty sequences).
  const std::vector<std::vector<int>>& arc_cycles() const { return cycles_; }

 private:
  friend CircleSet smooth(const LinkDiagram&, const KauffmanState&);
  int count_ = 0;
  std::vector<int> arc_circle_;
  std::vector<std::vector<int>> cycles_;
};

CircleSet smooth(const LinkDiagram& diagram, const KauffmanState& state);

// Chord diagram of the all-A smoothing. Each crossing contributes one chord;
// its two endpoints are the two A-strands of the crossing, sitting on the
// smoothed circles in cyclic order.
struct ChordDiagram {
  struct Endpoint {
    int crossing = -1;
    int strand = -1;  // 0 = the (slot0,slot1) strand, 1 = (slot2,slot3)
  };
  // For every circle: its chord endpoints in cyclic order, and the arc that
  // follows each endpoint along the circle.
  std::vector<std::vector<Endpoint>> circle_endpoints;
  std::vector<std::vector<int>> circle_arcs;
  int chord_count = 0;

  int circle_count() const { return static_cast<int>(circle_endpoints.size()); }
  // Circle index of each endpoint of chord k, endpoint order by strand.
  std::array<int, 2> chord_circles(int k) const;
  bool is_monochord(int k) const {
    auto c = chord_circles(k);
    return c[0] == c[1];
  }

  std::string to_text() const;
  static ChordDiagram from_text(const std::string& text);
};

ChordDiagram a_smoothing_chord_diagram(const LinkDiagram& diagram);

LinkDiagram parse_pd(const std::string& text);
LinkDiagram parse_pd_json(const std::string& json_text);

}  // namespace khtor
