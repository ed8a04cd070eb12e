#pragma once

#include <optional>
#include <vector>

#include "diagram.hpp"

namespace khtor {

// Assembles diagrams from crossings with explicit port geometry. Each
// crossing has four ports in counterclockwise order; the under-strand runs
// through ports 0 and 2, and the A-smoothing joins ports {0,1} and {2,3}.
// Orientations are traced at build time, seeded by hints where given.
class PlanarBuilder {
 public:
  int add_crossing();
  void connect(int c1, int p1, int c2, int p2);
  bool connected(int c, int p) const;
  // Declares that the strand points into crossing `c` at port `p`.
  void orient_incoming(int c, int p);

  LinkDiagram build(int free_circles = 0) const;

 private:
  struct Port {
    int partner = -1;  // global port id, -1 while dangling
  };
  std::vector<Port> ports_;
  std::vector<std::pair<int, bool>> hints_;  // (global port id, incoming)
};

LinkDiagram pretzel_diagram(int g, int h);

// Closure of a braid word; letter +i / -i is a positive / negative crossing
// between strands i and i+1 (1-based). Strands beyond every letter close
// into free circles.
LinkDiagram braid_closure(const std::vector<int>& word, int strands);

// Splices the g+h monochord pattern into the named arc of the base diagram,
// so the A-smoothing grows the pattern on the circle the arc lies on.
// Pattern crossings are appended after the base crossings, outer family
// first. `arc_label` is the arc's label in the base's PD text.
LinkDiagram insert_pattern(const LinkDiagram& base, long long arc_label, int g,
                           int h);

}  // namespace khtor
