#include "diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "json.hpp"

namespace khtor {

namespace {

// Slot polarity while deriving orientations: does the arc in this slot point
// into the crossing?
enum Polarity : int8_t { kUnknown = -1, kOut = 0, kIn = 1 };

}  // namespace

LinkDiagram LinkDiagram::from_tuples(
    const std::vector<std::array<int, 4>>& tuples, int free_circles,
    const std::vector<std::string>& arc_names) {
  LinkDiagram d;
  d.free_circles_ = free_circles;

  int max_arc = -1;
  for (const auto& t : tuples)
    for (int a : t) max_arc = std::max(max_arc, a);
  d.arc_count_ = max_arc + 1;

  std::vector<std::vector<ArcEnd>> occ(d.arc_count_);
  for (int k = 0; k < static_cast<int>(tuples.size()); ++k) {
    for (int s = 0; s < 4; ++s) {
      int a = tuples[k][s];
      if (a < 0) fail(ErrorCode::parse, "negative arc index");
      occ[a].push_back({k, s});
    }
  }
  for (int a = 0; a < d.arc_count_; ++a) {
    if (occ[a].size() != 2)
      fail(ErrorCode::parse, "arc " + std::to_string(a + 1) + " appears " +
                                 std::to_string(occ[a].size()) +
                                 " times, expected exactly 2");
  }

  // Solve slot polarities. Slot 0 is always incoming, slot 2 outgoing; the
  // over-strand slots 1 and 3 carry opposite polarities, and the two
  // occurrences of an arc carry opposite polarities.
  int n = static_cast<int>(tuples.size());
  std::vector<std::array<int8_t, 4>> pol(n, {kUnknown, kUnknown, kUnknown, kUnknown});
  std::vector<ArcEnd> queue;
  auto assign = [&](int k, int s, int8_t value) {
    if (pol[k][s] == value) return;
    if (pol[k][s] != kUnknown)
      fail(ErrorCode::parse, "inconsistent orientation at crossing " +
                                 std::to_string(k + 1));
    pol[k][s] = value;
    queue.push_back({k, s});
  };
  for (int k = 0; k < n; ++k) {
    assign(k, 0, kIn);
    assign(k, 2, kOut);
  }
  auto drain = [&]() {
    while (!queue.empty()) {
      ArcEnd e = queue.back();
      queue.pop_back();
      int8_t v = pol[e.crossing][e.slot];
      if (e.slot == 1 || e.slot == 3)
        assign(e.crossing, e.slot ^ 2, v == kIn ? kOut : kIn);
      int arc = tuples[e.crossing][e.slot];
      for (const ArcEnd& o : occ[arc]) {
        if (o.crossing == e.crossing && o.slot == e.slot) continue;
        assign(o.crossing, o.slot, v == kIn ? kOut : kIn);
      }
    }
  };
  drain();
  for (int k = 0; k < n; ++k) {
    if (pol[k][3] == kUnknown) {
      assign(k, 3, kIn);  // component that never passes under: pick a direction
      drain();
    }
  }

  d.crossings_.resize(n);
  for (int k = 0; k < n; ++k) {
    d.crossings_[k].arcs = tuples[k];
    d.crossings_[k].over_in_slot = pol[k][3] == kIn ? 3 : 1;
    d.crossings_[k].sign = pol[k][3] == kIn ? +1 : -1;
    if (d.crossings_[k].sign > 0)
      ++d.positive_;
    else
      ++d.negative_;
  }

  d.arc_tail_.resize(d.arc_count_);
  d.arc_head_.resize(d.arc_count_);
  for (int a = 0; a < d.arc_count_; ++a) {
    for (const ArcEnd& e : occ[a]) {
      if (pol[e.crossing][e.slot] == kIn)
        d.arc_head_[a] = e;
      else
        d.arc_tail_[a] = e;
    }
    if (d.arc_head_[a].crossing < 0 || d.arc_tail_[a].crossing < 0)
      fail(ErrorCode::parse, "inconsistent orientation on arc " +
                                 std::to_string(a + 1));
  }

  // Components: follow strands straight through crossings (slot s continues
  // at slot s^2).
  d.arc_component_.assign(d.arc_count_, -1);
  int comp = 0;
  for (int a0 = 0; a0 < d.arc_count_; ++a0) {
    if (d.arc_component_[a0] >= 0) continue;
    int a = a0;
    do {
      d.arc_component_[a] = comp;
      ArcEnd h = d.arc_head_[a];
      a = tuples[h.crossing][h.slot ^ 2];
    } while (a != a0);
    ++comp;
  }
  d.component_count_ = comp;

  d.arc_names_.resize(d.arc_count_);
  for (int a = 0; a < d.arc_count_; ++a)
    d.arc_names_[a] = a < static_cast<int>(arc_names.size()) && !arc_names[a].empty()
                          ? arc_names[a]
                          : std::to_string(a + 1);
  return d;
}

int LinkDiagram::linking_number(int comp_a, int comp_b) const {
  if (comp_a == comp_b) fail(ErrorCode::invalid_argument, "components must differ");
  int total = 0;
  for (const Crossing& c : crossings_) {
    int under = arc_component_[c.arcs[0]];
    int over = arc_component_[c.arcs[1]];
    if ((under == comp_a && over == comp_b) || (under == comp_b && over == comp_a))
      total += c.sign;
  }
  if (total % 2 != 0) fail(ErrorCode::internal, "odd crossing parity between components");
  return total / 2;
}

LinkDiagram LinkDiagram::renumber_crossings(const std::vector<int>& perm) const {
  int n = crossing_count();
  if (static_cast<int>(perm.size()) != n)
    fail(ErrorCode::invalid_argument, "permutation size mismatch");
  std::vector<int> seen(n, 0);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]++)
      fail(ErrorCode::invalid_argument, "not a permutation");
  }
  LinkDiagram d = *this;
  std::vector<int> inv(n);
  for (int k = 0; k < n; ++k) {
    d.crossings_[k] = crossings_[perm[k]];
    inv[perm[k]] = k;
  }
  for (ArcEnd& e : d.arc_tail_) e.crossing = inv[e.crossing];
  for (ArcEnd& e : d.arc_head_) e.crossing = inv[e.crossing];
  return d;
}

CircleSet smooth(const LinkDiagram& diagram, const KauffmanState& state) {
  if (state.crossing_count != diagram.crossing_count())
    fail(ErrorCode::invalid_argument, "state domain does not match the diagram");
  CircleSet cs;
  cs.arc_circle_.assign(diagram.arc_count(), -1);

  // Smoothing pairs the slots of each crossing; entering slot s we leave by
  // pair_of(s).
  auto pair_of = [&](int k, int s) {
    static const int a_pair[4] = {1, 0, 3, 2};
    static const int b_pair[4] = {3, 2, 1, 0};
    return state.is_b(k) ? b_pair[s] : a_pair[s];
  };

  int circle = 0;
  for (int a0 = 0; a0 < diagram.arc_count(); ++a0) {
    if (cs.arc_circle_[a0] >= 0) continue;
    std::vector<int> cycle;
    // Walk the circle; direction along each arc is tracked by which end we
    // are about to consume.
    int arc = a0;
    bool forward = true;  // heading toward arc_head
    do {
      cs.arc_circle_[arc] = circle;
      cycle.push_back(arc);
      ArcEnd e = forward ? diagram.arc_head(arc) : diagram.arc_tail(arc);
      int next_slot = pair_of(e.crossing, e.slot);
      int next_arc = diagram.crossing(e.crossing).arcs[next_slot];
      ArcEnd t = diagram.arc_tail(next_arc);
      // Leave via next_arc; we exit from its end at (e.crossing, next_slot).
      forward = (t.crossing == e.crossing && t.slot == next_slot);
      if (!forward) {
        ArcEnd h = diagram.arc_head(next_arc);
        if (!(h.crossing == e.crossing && h.slot == next_slot))
          fail(ErrorCode::internal, "broken arc end bookkeeping");
      }
      arc = next_arc;
    } while (!(arc == a0 && forward));
    cs.cycles_.push_back(std::move(cycle));
    ++circle;
  }
  for (int f = 0; f < diagram.free_circle_count(); ++f) {
    cs.cycles_.emplace_back();
    ++circle;
  }
  cs.count_ = circle;
  return cs;
}

namespace {

// Shared walk for the chord diagram: like smooth() with the all-A state but
// also records the crossing passages between consecutive arcs.
struct APassageWalk {
  std::vector<std::vector<ChordDiagram::Endpoint>> endpoints;
  std::vector<std::vector<int>> arcs_after;
};

APassageWalk walk_a_smoothing(const LinkDiagram& diagram) {
  APassageWalk w;
  std::vector<int> arc_done(diagram.arc_count(), 0);
  static const int a_pair[4] = {1, 0, 3, 2};
  for (int a0 = 0; a0 < diagram.arc_count(); ++a0) {
    if (arc_done[a0]) continue;
    std::vector<ChordDiagram::Endpoint> ends;
    std::vector<int> arcs_after;
    int arc = a0;
    bool forward = true;
    do {
      arc_done[arc] = 1;
      ArcEnd e = forward ? diagram.arc_head(arc) : diagram.arc_tail(arc);
      int next_slot = a_pair[e.slot];
      int next_arc = diagram.crossing(e.crossing).arcs[next_slot];
      ends.push_back({e.crossing, e.slot < 2 ? 0 : 1});
      arcs_after.push_back(next_arc);
      ArcEnd t = diagram.arc_tail(next_arc);
      forward = (t.crossing == e.crossing && t.slot == next_slot);
      arc = next_arc;
    } while (!(arc == a0 && forward));
    w.endpoints.push_back(std::move(ends));
    w.arcs_after.push_back(std::move(arcs_after));
  }
  for (int f = 0; f < diagram.free_circle_count(); ++f) {
    w.endpoints.emplace_back();
    w.arcs_after.emplace_back();
  }
  return w;
}

}  // namespace

std::array<int, 2> ChordDiagram::chord_circles(int k) const {
  std::array<int, 2> out{-1, -1};
  for (int c = 0; c < circle_count(); ++c)
    for (const Endpoint& e : circle_endpoints[c])
      if (e.crossing == k) out[e.strand] = c;
  return out;
}

ChordDiagram a_smoothing_chord_diagram(const LinkDiagram& diagram) {
  APassageWalk w = walk_a_smoothing(diagram);
  ChordDiagram cd;
  cd.circle_endpoints = std::move(w.endpoints);
  cd.circle_arcs = std::move(w.arcs_after);
  cd.chord_count = diagram.crossing_count();
  return cd;
}

std::string ChordDiagram::to_text() const {
  std::ostringstream os;
  for (const auto& circle : circle_endpoints) {
    os << "circle";
    for (const Endpoint& e : circle) os << ' ' << (2 * e.crossing + e.strand);
    os << '\n';
  }
  for (int k = 0; k < chord_count; ++k)
    os << "chord " << 2 * k << ' ' << 2 * k + 1 << '\n';
  return os.str();
}

ChordDiagram ChordDiagram::from_text(const std::string& text) {
  ChordDiagram cd;
  std::map<long long, std::pair<int, int>> where;  // label -> (circle, pos)
  std::vector<std::vector<long long>> circle_labels;
  std::vector<std::array<long long, 2>> chords;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "circle") {
      std::vector<long long> labels;
      long long v;
      while (ls >> v) labels.push_back(v);
      circle_labels.push_back(std::move(labels));
    } else if (kind == "chord") {
      long long u, v;
      if (!(ls >> u >> v)) fail(ErrorCode::parse, "chord line needs two labels");
      chords.push_back({u, v});
    } else {
      fail(ErrorCode::parse, "unknown chord-diagram line: " + kind);
    }
  }
  for (int c = 0; c < static_cast<int>(circle_labels.size()); ++c) {
    for (int p = 0; p < static_cast<int>(circle_labels[c].size()); ++p) {
      long long label = circle_labels[c][p];
      if (where.count(label))
        fail(ErrorCode::parse, "endpoint label repeated: " + std::to_string(label));
      where[label] = {c, p};
    }
  }
  cd.circle_endpoints.resize(circle_labels.size());
  cd.circle_arcs.resize(circle_labels.size());
  for (int c = 0; c < static_cast<int>(circle_labels.size()); ++c) {
    cd.circle_endpoints[c].resize(circle_labels[c].size());
    cd.circle_arcs[c].resize(circle_labels[c].size());
  }
  int next_arc = 0;
  for (auto& arcs : cd.circle_arcs)
    for (int& a : arcs) a = next_arc++;
  cd.chord_count = static_cast<int>(chords.size());
  std::map<long long, int> used;
  for (int k = 0; k < cd.chord_count; ++k) {
    for (int strand = 0; strand < 2; ++strand) {
      long long label = chords[k][strand];
      auto it = where.find(label);
      if (it == where.end())
        fail(ErrorCode::parse, "chord references unknown endpoint " +
                                   std::to_string(label));
      if (used.count(label))
        fail(ErrorCode::parse, "endpoint used by two chords: " + std::to_string(label));
      used[label] = k;
      auto [c, p] = it->second;
      cd.circle_endpoints[c][p] = {k, strand};
    }
  }
  if (static_cast<int>(used.size()) != 2 * cd.chord_count ||
      used.size() != where.size())
    fail(ErrorCode::parse, "every endpoint must belong to exactly one chord");
  return cd;
}

namespace {

struct Token {
  enum Kind { kCrossing, kCircle } kind;
  std::array<long long, 4> labels;
};

std::vector<Token> tokenize_pd(const std::string& text) {
  std::vector<Token> tokens;
  size_t i = 0;
  auto skip_ws = [&]() {
    while (i < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',') {
        ++i;
      } else if (text[i] == '#') {
        while (i < text.size() && text[i] != '\n') ++i;
      } else {
        break;
      }
    }
  };
  while (true) {
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] == 'X' || text[i] == 'x') {
      ++i;
      skip_ws();
      if (i >= text.size() || (text[i] != '(' && text[i] != '['))
        fail(ErrorCode::parse, "expected '(' after X");
      char close = text[i] == '(' ? ')' : ']';
      ++i;
      Token t{Token::kCrossing, {}};
      for (int s = 0; s < 4; ++s) {
        skip_ws();
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) fail(ErrorCode::parse, "expected arc label in crossing tuple");
        t.labels[s] = std::stoll(text.substr(start, i - start));
        if (t.labels[s] <= 0) fail(ErrorCode::parse, "arc labels must be positive");
      }
      skip_ws();
      if (i >= text.size() || text[i] != close)
        fail(ErrorCode::parse, std::string("expected '") + close + "' closing crossing tuple");
      ++i;
      tokens.push_back(t);
    } else if (std::isalpha(static_cast<unsigned char>(text[i]))) {
      size_t start = i;
      while (i < text.size() && std::isalpha(static_cast<unsigned char>(text[i]))) ++i;
      std::string word = text.substr(start, i - start);
      if (word == "circle" || word == "CIRCLE")
        tokens.push_back({Token::kCircle, {}});
      else
        fail(ErrorCode::parse, "unknown token: " + word);
    } else {
      fail(ErrorCode::parse, std::string("unexpected character: ") + text[i]);
    }
  }
  return tokens;
}

LinkDiagram diagram_from_labeled_tuples(
    const std::vector<std::array<long long, 4>>& labeled, int free_circles) {
  std::map<long long, int> index;
  std::vector<std::string> names;
  std::vector<std::array<int, 4>> tuples;
  for (const auto& t : labeled) {
    std::array<int, 4> u{};
    for (int s = 0; s < 4; ++s) {
      auto it = index.find(t[s]);
      if (it == index.end()) {
        it = index.emplace(t[s], static_cast<int>(index.size())).first;
        names.push_back(std::to_string(t[s]));
      }
      u[s] = it->second;
    }
    tuples.push_back(u);
  }
  if (tuples.empty() && free_circles == 0)
    fail(ErrorCode::parse, "empty diagram: need at least one crossing or circle");
  return LinkDiagram::from_tuples(tuples, free_circles, names);
}

}  // namespace

LinkDiagram parse_pd(const std::string& text) {
  std::vector<std::array<long long, 4>> labeled;
  int free_circles = 0;
  for (const Token& t : tokenize_pd(text)) {
    if (t.kind == Token::kCircle)
      ++free_circles;
    else
      labeled.push_back(t.labels);
  }
  return diagram_from_labeled_tuples(labeled, free_circles);
}

LinkDiagram parse_pd_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse, std::string("bad JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("crossings") || !j["crossings"].is_array())
    fail(ErrorCode::parse, "expected an object with a \"crossings\" array");
  std::vector<std::array<long long, 4>> labeled;
  for (const auto& row : j["crossings"]) {
    if (!row.is_array() || row.size() != 4)
      fail(ErrorCode::parse, "each crossing must be a 4-element array");
    std::array<long long, 4> t{};
    for (int s = 0; s < 4; ++s) {
      if (!row[s].is_number_integer() || row[s].get<long long>() <= 0)
        fail(ErrorCode::parse, "arc labels must be positive integers");
      t[s] = row[s].get<long long>();
    }
    labeled.push_back(t);
  }
  int free_circles = j.value("free_circles", 0);
  if (free_circles < 0) fail(ErrorCode::parse, "free_circles must be >= 0");
  return diagram_from_labeled_tuples(labeled, free_circles);
}

std::string LinkDiagram::to_pd_text() const {
  std::ostringstream os;
  bool first = true;
  for (const Crossing& c : crossings_) {
    if (!first) os << ' ';
    first = false;
    os << "X(" << arc_names_[c.arcs[0]] << ',' << arc_names_[c.arcs[1]] << ','
       << arc_names_[c.arcs[2]] << ',' << arc_names_[c.arcs[3]] << ')';
  }
  for (int f = 0; f < free_circles_; ++f) {
    if (!first) os << ' ';
    first = false;
    os << "circle";
  }
  return os.str();
}

std::string LinkDiagram::to_json() const {
  nlohmann::json j;
  j["crossings"] = nlohmann::json::array();
  for (const Crossing& c : crossings_) {
    nlohmann::json row = nlohmann::json::array();
    for (int s = 0; s < 4; ++s) row.push_back(std::stoll(arc_names_[c.arcs[s]]));
    j["crossings"].push_back(row);
  }
  if (free_circles_ > 0) j["free_circles"] = free_circles_;
  return j.dump();
}

}  // namespace khtor
