#include "builder.hpp"

#include <algorithm>
#include <string>

namespace khtor {

int PlanarBuilder::add_crossing() {
  ports_.resize(ports_.size() + 4);
  return static_cast<int>(ports_.size() / 4) - 1;
}

void PlanarBuilder::connect(int c1, int p1, int c2, int p2) {
  int a = 4 * c1 + p1;
  int b = 4 * c2 + p2;
  if (a < 0 || b < 0 || a >= static_cast<int>(ports_.size()) ||
      b >= static_cast<int>(ports_.size()) || a == b)
    fail(ErrorCode::invalid_argument, "bad port pair in connect()");
  if (ports_[a].partner >= 0 || ports_[b].partner >= 0)
    fail(ErrorCode::invalid_argument, "port already connected");
  ports_[a].partner = b;
  ports_[b].partner = a;
}

bool PlanarBuilder::connected(int c, int p) const {
  return ports_[4 * c + p].partner >= 0;
}

void PlanarBuilder::orient_incoming(int c, int p) {
  hints_.push_back({4 * c + p, true});
}

LinkDiagram PlanarBuilder::build(int free_circles) const {
  int nports = static_cast<int>(ports_.size());
  for (int p = 0; p < nports; ++p)
    if (ports_[p].partner < 0)
      fail(ErrorCode::invalid_argument,
           "dangling port " + std::to_string(p % 4) + " at crossing " +
               std::to_string(p / 4));

  // Polarity: incoming = strand points into the crossing at this port.
  // Connected ports and through-ports (p, p^2) carry opposite polarities.
  std::vector<int8_t> incoming(nports, -1);
  std::vector<int> stack;
  auto assign = [&](int p, bool in) {
    int8_t v = in ? 1 : 0;
    if (incoming[p] == v) return;
    if (incoming[p] != -1)
      fail(ErrorCode::internal, "conflicting orientation hints");
    incoming[p] = v;
    stack.push_back(p);
  };
  auto drain = [&]() {
    while (!stack.empty()) {
      int p = stack.back();
      stack.pop_back();
      bool in = incoming[p] == 1;
      assign(p ^ 2, !in);
      assign(ports_[p].partner, !in);
    }
  };
  for (auto [p, in] : hints_) {
    if (incoming[p] == -1) {
      assign(p, in);
      drain();
    }
  }
  for (int p = 0; p < nports; ++p) {
    if (incoming[p] == -1) {
      assign(p, true);
      drain();
    }
  }

  // Arcs: one per connection, numbered along each oriented strand starting
  // at the component's smallest outgoing port.
  std::vector<int> arc_at(nports, -1);
  int arc_count = 0;
  for (int p0 = 0; p0 < nports; ++p0) {
    if (arc_at[p0] >= 0 || incoming[p0] != 0) continue;
    int p = p0;
    do {
      int q = ports_[p].partner;  // arc from p (tail) to q (head)
      arc_at[p] = arc_at[q] = arc_count++;
      p = q ^ 2;  // continue through the crossing
    } while (p != p0);
  }

  int n = nports / 4;
  std::vector<std::array<int, 4>> tuples(n);
  for (int k = 0; k < n; ++k) {
    int under_in = incoming[4 * k] == 1 ? 0 : 2;
    for (int s = 0; s < 4; ++s)
      tuples[k][s] = arc_at[4 * k + (under_in + s) % 4];
  }
  return LinkDiagram::from_tuples(tuples, free_circles);
}

namespace {

// Pretzel layout shared by pretzel_diagram and insert_pattern. Crossings
// base+0..base+g-1 are the outer family x_1..x_g (A-smoothing caps), ports
// 0=SW 1=SE 2=NE 3=NW; crossings base+g..base+g+h-1 are the inner twist
// ladder y_1..y_h (A-smoothing rungs), ports 0=NW 1=SW 2=SE 3=NE. All
// connections are made except the top wrap arc (y_1 port 3) -- (x_1 port 3),
// which the caller either closes or splices into a host diagram.
void lay_pretzel_tangle(PlanarBuilder& b, int g, int h) {
  int x0 = -1, y0 = -1;
  for (int i = 0; i < g; ++i) {
    int c = b.add_crossing();
    if (i == 0) x0 = c;
  }
  for (int j = 0; j < h; ++j) {
    int c = b.add_crossing();
    if (j == 0) y0 = c;
  }
  for (int i = 0; i + 1 < g; ++i) {
    b.connect(x0 + i, 2, x0 + i + 1, 3);  // top chain
    b.connect(x0 + i, 1, x0 + i + 1, 0);  // bottom chain
  }
  b.connect(x0 + g - 1, 2, y0, 0);          // top chain into the ladder
  b.connect(x0 + g - 1, 1, y0 + h - 1, 1);  // bottom chain into the ladder
  b.connect(y0 + h - 1, 2, x0, 0);          // bottom wrap
  for (int j = 0; j + 1 < h; ++j) {
    b.connect(y0 + j, 1, y0 + j + 1, 0);  // ladder left side
    b.connect(y0 + j, 2, y0 + j + 1, 3);  // ladder right side
  }
}

}  // namespace

LinkDiagram pretzel_diagram(int g, int h) {
  if (g < 1 || h < 1)
    fail(ErrorCode::invalid_argument, "pretzel_diagram needs g,h >= 1");
  PlanarBuilder b;
  lay_pretzel_tangle(b, g, h);
  b.connect(g, 3, 0, 3);  // top wrap
  return b.build();
}

LinkDiagram braid_closure(const std::vector<int>& word, int strands) {
  if (strands < 2) fail(ErrorCode::invalid_argument, "need at least 2 strands");
  PlanarBuilder b;
  std::vector<std::pair<int, int>> dangle(strands, {-1, -1});
  std::vector<std::pair<int, int>> first_top(strands, {-1, -1});
  auto attach = [&](int lane, int c, int top_port, int bottom_port) {
    if (dangle[lane].first < 0)
      first_top[lane] = {c, top_port};
    else
      b.connect(dangle[lane].first, dangle[lane].second, c, top_port);
    dangle[lane] = {c, bottom_port};
  };
  for (int letter : word) {
    int lane = std::abs(letter) - 1;
    if (letter == 0 || lane + 1 >= strands)
      fail(ErrorCode::invalid_argument, "braid letter out of range");
    int c = b.add_crossing();
    b.orient_incoming(c, 0);
    if (letter > 0) {
      attach(lane, c, 0, 1);
      attach(lane + 1, c, 3, 2);
    } else {
      attach(lane, c, 1, 2);
      attach(lane + 1, c, 0, 3);
    }
  }
  int free_circles = 0;
  for (int lane = 0; lane < strands; ++lane) {
    if (dangle[lane].first < 0) {
      ++free_circles;
      continue;
    }
    b.connect(dangle[lane].first, dangle[lane].second, first_top[lane].first,
              first_top[lane].second);
  }
  return b.build(free_circles);
}

LinkDiagram insert_pattern(const LinkDiagram& base, long long arc_label, int g,
                           int h) {
  if (g < 2 || h < 2)
    fail(ErrorCode::invalid_argument, "insert_pattern needs g,h >= 2");
  int arc = -1;
  for (int a = 0; a < base.arc_count(); ++a)
    if (base.arc_name(a) == std::to_string(arc_label)) arc = a;
  if (arc < 0)
    fail(ErrorCode::invalid_argument,
         "no arc labeled " + std::to_string(arc_label) + " in the base diagram");

  PlanarBuilder b;
  int nb = base.crossing_count();
  for (int k = 0; k < nb; ++k) {
    b.add_crossing();
    b.orient_incoming(k, 0);
  }
  for (int a = 0; a < base.arc_count(); ++a) {
    if (a == arc) continue;
    ArcEnd t = base.arc_tail(a), hd = base.arc_head(a);
    b.connect(t.crossing, t.slot, hd.crossing, hd.slot);
  }
  lay_pretzel_tangle(b, g, h);
  ArcEnd t = base.arc_tail(arc), hd = base.arc_head(arc);
  b.connect(t.crossing, t.slot, nb, 3);          // into x_1 top
  b.connect(nb + g, 3, hd.crossing, hd.slot);    // out of y_1 top
  return b.build(base.free_circle_count());
}

}  // namespace khtor
