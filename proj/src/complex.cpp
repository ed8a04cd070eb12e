#include "complex.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace khtor {

void ChainVector::add(const EnhancedState& s, const mpz_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

ChainVector operator*(const mpz_class& c, const ChainVector& z) {
  ChainVector out{z.i, z.j, {}};
  if (c == 0) return out;
  for (const auto& [s, v] : z.terms) out.terms.emplace(s, c * v);
  return out;
}

ChainVector operator+(const ChainVector& a, const ChainVector& b) {
  if (!a.terms.empty() && !b.terms.empty() && (a.i != b.i || a.j != b.j))
    fail(ErrorCode::invalid_argument, "adding chains of different bidegrees");
  ChainVector out = a;
  if (out.terms.empty()) {
    out.i = b.i;
    out.j = b.j;
  }
  for (const auto& [s, v] : b.terms) out.add(s, v);
  return out;
}

ChainVector operator-(const ChainVector& a, const ChainVector& b) {
  return a + (mpz_class(-1) * b);
}

std::string BoundaryMatrix::to_triplet_text() const {
  std::ostringstream os;
  os << rows() << ' ' << columns() << '\n';
  for (int c = 0; c < columns(); ++c)
    for (const auto& [r, v] : cols[c]) os << r + 1 << ' ' << c + 1 << ' ' << v << '\n';
  return os.str();
}

ComplexContext::ComplexContext(const LinkDiagram& diagram)
    : diagram_(diagram), n_(diagram.crossing_count()) {
  if (n_ > 20)
    fail(ErrorCode::limit_exceeded,
         "diagram has " + std::to_string(n_) +
             " crossings; enhanced-state enumeration is capped at 20");
  int arcs = diagram_.arc_count();
  size_t states = size_t(1) << n_;
  circle_counts_.resize(states);
  arc_circles_.resize(states * arcs);

  std::vector<int> parent(arcs);
  std::vector<int8_t> root_circle(arcs);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (uint32_t mask = 0; mask < states; ++mask) {
    std::iota(parent.begin(), parent.end(), 0);
    auto join = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    for (int k = 0; k < n_; ++k) {
      const auto& t = diagram_.crossing(k).arcs;
      if ((mask >> k) & 1u) {
        join(t[0], t[3]);
        join(t[1], t[2]);
      } else {
        join(t[0], t[1]);
        join(t[2], t[3]);
      }
    }
    int circles = 0;
    std::fill(root_circle.begin(), root_circle.end(), int8_t(-1));
    int8_t* row = arc_circles_.data() + size_t(mask) * arcs;
    for (int a = 0; a < arcs; ++a) {
      int r = find(a);
      if (root_circle[r] < 0) root_circle[r] = static_cast<int8_t>(circles++);
      row[a] = root_circle[r];
    }
    circle_counts_[mask] =
        static_cast<int8_t>(circles + diagram_.free_circle_count());
  }

  masks_by_weight_.resize(n_ + 1);
  for (uint32_t mask = 0; mask < states; ++mask)
    masks_by_weight_[__builtin_popcount(mask)].push_back(mask);
}

CirclesView ComplexContext::circles(uint32_t mask) const {
  if (n_ < 32 && mask >= (uint32_t(1) << n_))
    fail(ErrorCode::invalid_argument, "state mask out of range");
  CirclesView v;
  v.count = circle_counts_[mask];
  v.arc_circle_count = v.count - diagram_.free_circle_count();
  v.arc_circle = arc_circles_.data() + size_t(mask) * diagram_.arc_count();
  return v;
}

int ComplexContext::theta(const EnhancedState& s) const {
  int c = circles(s.mask).count;
  return c - 2 * __builtin_popcount(s.signs);
}

std::vector<EnhancedState> ComplexContext::enumerate_basis(int i, int j) const {
  std::vector<EnhancedState> out;
  if (i < 0 || i > n_) return out;
  for (uint32_t mask : masks_by_weight_[i]) {
    int c = circle_counts_[mask];
    int th = j - i;
    if ((c - th) % 2 != 0) continue;
    int minus = (c - th) / 2;
    if (minus < 0 || minus > c) continue;
    if (minus == 0) {
      out.push_back({mask, 0});
      continue;
    }
    uint32_t v = (uint32_t(1) << minus) - 1;
    uint32_t limit = c < 32 ? uint32_t(1) << c : 0;
    while (c >= 32 || v < limit) {
      out.push_back({mask, v});
      // Gosper's hack: next subset of the same size.
      uint32_t t = v | (v - 1);
      if (t == ~uint32_t(0)) break;
      v = (t + 1) | (((~t & (t + 1)) - 1) >> (__builtin_ctz(v) + 1));
      if (c < 32 && v >= limit) break;
    }
  }
  return out;
}

int ComplexContext::dim(int i, int j) const {
  if (i < 0 || i > n_) return 0;
  long long total = 0;
  for (uint32_t mask : masks_by_weight_[i]) {
    int c = circle_counts_[mask];
    int th = j - i;
    if ((c - th) % 2 != 0) continue;
    int minus = (c - th) / 2;
    if (minus < 0 || minus > c) continue;
    // binomial(c, minus)
    long long b = 1;
    for (int t = 0; t < minus; ++t) b = b * (c - t) / (t + 1);
    total += b;
  }
  return static_cast<int>(total);
}

std::vector<std::pair<int, int>> ComplexContext::bidegrees() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i <= n_; ++i) {
    int cmin = 100, cmax = -1;
    for (uint32_t mask : masks_by_weight_[i]) {
      cmin = std::min<int>(cmin, circle_counts_[mask]);
      cmax = std::max<int>(cmax, circle_counts_[mask]);
    }
    if (cmax < 0) continue;
    for (int j = i - cmax; j <= i + cmax; ++j)
      if (dim(i, j) > 0) out.push_back({i, j});
  }
  return out;
}

void ComplexContext::flips(const EnhancedState& s, int x,
                           std::vector<Flip>& out) const {
  out.clear();
  if ((s.mask >> x) & 1u) return;  // B-label already
  uint32_t tmask = s.mask | (uint32_t(1) << x);
  CirclesView src = circles(s.mask);
  CirclesView dst = circles(tmask);
  const auto& arcs = diagram_.crossing(x).arcs;
  int c1 = src.arc_circle[arcs[0]];
  int c2 = src.arc_circle[arcs[2]];
  int sign = __builtin_popcount(s.mask & ((uint32_t(1) << x) - 1)) % 2 ? -1 : 1;

  // Transfer signs of untouched circles; src circle of each dst circle is
  // read off any arc it contains (free circles keep their trailing slots).
  uint32_t base = 0;
  int affected1 = -1, affected2 = -1;  // dst circles built from c1 (and c2)
  std::vector<int8_t> seen(dst.count, 0);
  for (int a = 0; a < diagram_.arc_count(); ++a) {
    int cd = dst.arc_circle[a];
    if (seen[cd]) continue;
    seen[cd] = 1;
    int cs = src.arc_circle[a];
    if (cs == c1 || cs == c2) {
      (affected1 < 0 ? affected1 : affected2) = cd;
      continue;
    }
    if ((s.signs >> cs) & 1u) base |= uint32_t(1) << cd;
  }
  for (int f = 0; f < diagram_.free_circle_count(); ++f) {
    int cs = src.arc_circle_count + f;
    int cd = dst.arc_circle_count + f;
    if ((s.signs >> cs) & 1u) base |= uint32_t(1) << cd;
  }

  bool minus1 = (s.signs >> c1) & 1u;
  if (c1 != c2) {
    // Merge. (-,-) is not a face; (+,+) -> +, mixed -> -.
    bool minus2 = (s.signs >> c2) & 1u;
    if (minus1 && minus2) return;
    uint32_t signs = base;
    if (minus1 || minus2) signs |= uint32_t(1) << affected1;
    out.push_back({{tmask, signs}, sign});
  } else {
    // Split. + -> (+,-) and (-,+); - -> (-,-).
    if (affected2 < 0) fail(ErrorCode::internal, "split produced one circle");
    if (minus1) {
      uint32_t signs = base | (uint32_t(1) << affected1) | (uint32_t(1) << affected2);
      out.push_back({{tmask, signs}, sign});
    } else {
      out.push_back({{tmask, base | (uint32_t(1) << affected1)}, sign});
      out.push_back({{tmask, base | (uint32_t(1) << affected2)}, sign});
    }
  }
}

int ComplexContext::incidence(const EnhancedState& s,
                              const EnhancedState& t) const {
  uint32_t diff = s.mask ^ t.mask;
  if (__builtin_popcount(diff) != 1 || (s.mask & diff)) return 0;
  int x = __builtin_ctz(diff);
  std::vector<Flip> f;
  flips(s, x, f);
  for (const Flip& fl : f)
    if (fl.target == t) return fl.sign;
  return 0;
}

ChainVector ComplexContext::differential(const ChainVector& z) const {
  ChainVector out{z.i + 1, z.j, {}};
  std::vector<Flip> f;
  for (const auto& [s, coef] : z.terms) {
    for (int x = 0; x < n_; ++x) {
      flips(s, x, f);
      for (const Flip& fl : f) out.add(fl.target, coef * fl.sign);
    }
  }
  return out;
}

BoundaryMatrix ComplexContext::boundary_matrix(int i, int j) const {
  BoundaryMatrix m;
  m.i = i;
  m.j = j;
  m.source = enumerate_basis(i, j);
  m.target = enumerate_basis(i + 1, j);
  std::unordered_map<uint64_t, int> row_of;
  row_of.reserve(m.target.size() * 2);
  for (int r = 0; r < m.rows(); ++r) row_of[m.target[r].key()] = r;
  m.cols.resize(m.source.size());
  std::vector<Flip> f;
  for (int c = 0; c < m.columns(); ++c) {
    const EnhancedState& s = m.source[c];
    for (int x = 0; x < n_; ++x) {
      flips(s, x, f);
      for (const Flip& fl : f) {
        auto it = row_of.find(fl.target.key());
        if (it == row_of.end())
          fail(ErrorCode::internal, "differential left the expected bidegree");
        m.cols[c].push_back({it->second, fl.sign});
      }
    }
    std::sort(m.cols[c].begin(), m.cols[c].end());
  }
  return m;
}

std::vector<mpz_class> ComplexContext::coordinates(const ChainVector& z) const {
  auto basis = enumerate_basis(z.i, z.j);
  std::vector<mpz_class> out(basis.size(), 0);
  std::unordered_map<uint64_t, int> pos;
  for (int k = 0; k < static_cast<int>(basis.size()); ++k) pos[basis[k].key()] = k;
  for (const auto& [s, c] : z.terms) {
    auto it = pos.find(s.key());
    if (it == pos.end())
      fail(ErrorCode::invalid_argument, "chain term outside its bidegree basis");
    out[it->second] = c;
  }
  return out;
}

ChainVector ComplexContext::from_coordinates(
    int i, int j, const std::vector<mpz_class>& coords) const {
  auto basis = enumerate_basis(i, j);
  if (coords.size() != basis.size())
    fail(ErrorCode::invalid_argument, "coordinate vector has wrong length");
  ChainVector out{i, j, {}};
  for (size_t k = 0; k < basis.size(); ++k) out.add(basis[k], coords[k]);
  return out;
}

}  // namespace khtor
