#include "smith.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

namespace khtor {

int SmithResult::rank_mod2() const {
  int r = 0;
  for (const mpz_class& f : factors)
    if (mpz_odd_p(f.get_mpz_t())) ++r;
  return r;
}

std::vector<long long> SmithResult::torsion() const {
  std::vector<long long> out;
  for (const mpz_class& f : factors) {
    if (f <= 1) continue;
    if (!f.fits_slong_p())
      fail(ErrorCode::internal, "torsion factor exceeds int64");
    out.push_back(f.get_si());
  }
  return out;
}

SmithEngine::SmithEngine(int rows, int cols) : nrows_(rows), ncols_(cols) {
  build_.resize(rows);
}

void SmithEngine::add(int r, int c, const mpz_class& v) {
  if (r < 0 || r >= nrows_ || c < 0 || c >= ncols_)
    fail(ErrorCode::invalid_argument, "matrix entry out of range");
  build_[r].push_back({c, v});
}

void SmithEngine::set_rhs(std::vector<mpz_class> rhs) {
  if (static_cast<int>(rhs.size()) != nrows_)
    fail(ErrorCode::invalid_argument, "rhs length mismatch");
  rhs_ = std::move(rhs);
}

void SmithEngine::track_right_transform() { want_v_ = true; }

SmithResult SmithEngine::run() {
  SmithResult res;
  std::vector<std::map<int, mpz_class>> rows(nrows_);
  std::vector<std::set<int>> cols(ncols_);
  for (int r = 0; r < nrows_; ++r) {
    for (auto& [c, v] : build_[r]) {
      auto [it, fresh] = rows[r].emplace(c, v);
      if (!fresh) it->second += v;
    }
    for (auto it = rows[r].begin(); it != rows[r].end();) {
      if (it->second == 0)
        it = rows[r].erase(it);
      else
        cols[it->first].insert(r), ++it;
    }
  }
  build_.clear();
  build_.shrink_to_fit();

  std::vector<mpz_class> rhs;
  if (rhs_) rhs = std::move(*rhs_);
  std::vector<std::vector<mpz_class>> vcols;
  if (want_v_) {
    vcols.assign(ncols_, {});
    for (int c = 0; c < ncols_; ++c) {
      vcols[c].assign(ncols_, 0);
      vcols[c][c] = 1;
    }
  }

  std::vector<char> row_done(nrows_, 0), col_done(ncols_, 0);

  // Stage 1: unit pivots, smallest columns first, within a column the row
  // with least fill. Touched columns re-enter the queue; stale entries are
  // skipped on pop.
  using QE = std::pair<size_t, int>;
  std::priority_queue<QE, std::vector<QE>, std::greater<>> pq;
  for (int c = 0; c < ncols_; ++c)
    if (!cols[c].empty()) pq.push({cols[c].size(), c});

  auto touch_col = [&](int c) {
    if (!col_done[c] && !cols[c].empty()) pq.push({cols[c].size(), c});
  };
  auto add_entry = [&](int r, int c, const mpz_class& delta) {
    auto [it, fresh] = rows[r].emplace(c, delta);
    if (!fresh) {
      it->second += delta;
      if (it->second == 0) {
        rows[r].erase(it);
        cols[c].erase(r);
        touch_col(c);
        return;
      }
    } else {
      cols[c].insert(r);
      touch_col(c);
    }
  };

  while (!pq.empty()) {
    auto [sz, c] = pq.top();
    pq.pop();
    if (col_done[c] || cols[c].empty()) continue;
    int pivot_row = -1;
    size_t best = SIZE_MAX;
    for (int r : cols[c]) {
      const mpz_class& v = rows[r].at(c);
      if (mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0 && rows[r].size() < best) {
        best = rows[r].size();
        pivot_row = r;
      }
    }
    if (pivot_row < 0) continue;  // revisited if the column is touched again

    int r = pivot_row;
    mpz_class p = rows[r].at(c);  // +1 or -1
    std::vector<int> others(cols[c].begin(), cols[c].end());
    for (int r2 : others) {
      if (r2 == r) continue;
      mpz_class f = rows[r2].at(c) * p;
      for (const auto& [c2, v] : rows[r]) add_entry(r2, c2, -f * v);
      if (!rhs.empty()) rhs[r2] -= f * rhs[r];
    }
    for (const auto& [c2, v] : rows[r]) {
      if (c2 == c) continue;
      if (want_v_) {
        mpz_class g = v * p;
        for (int t = 0; t < ncols_; ++t) vcols[c2][t] -= g * vcols[c][t];
      }
      cols[c2].erase(r);
      touch_col(c2);
    }
    rows[r].clear();
    cols[c].clear();
    row_done[r] = 1;
    col_done[c] = 1;
    res.factors.push_back(1);
    res.pivot_rows.push_back(r);
    res.pivot_cols.push_back(c);
  }

  // Stage 2: dense sweep over whatever the unit pivots left behind.
  std::vector<int> ar, ac;
  for (int r = 0; r < nrows_; ++r)
    if (!row_done[r] && !rows[r].empty()) ar.push_back(r);
  {
    std::set<int> acs;
    for (int r : ar)
      for (const auto& [c, v] : rows[r]) acs.insert(c);
    ac.assign(acs.begin(), acs.end());
  }
  if (!ar.empty()) {
    int R = static_cast<int>(ar.size()), C = static_cast<int>(ac.size());
    std::map<int, int> cpos;
    for (int t = 0; t < C; ++t) cpos[ac[t]] = t;
    std::vector<std::vector<mpz_class>> d(R, std::vector<mpz_class>(C, 0));
    std::vector<mpz_class> drhs(R, 0);
    for (int t = 0; t < R; ++t) {
      for (const auto& [c, v] : rows[ar[t]]) d[t][cpos[c]] = v;
      if (!rhs.empty()) drhs[t] = rhs[ar[t]];
    }

    auto row_sub = [&](int dst, int src, const mpz_class& q) {
      for (int c = 0; c < C; ++c) d[dst][c] -= q * d[src][c];
      if (!rhs.empty()) drhs[dst] -= q * drhs[src];
    };
    auto col_sub = [&](int dst, int src, const mpz_class& q) {
      for (int r = 0; r < R; ++r) d[r][dst] -= q * d[r][src];
      if (want_v_)
        for (int t = 0; t < ncols_; ++t)
          vcols[ac[dst]][t] -= q * vcols[ac[src]][t];
    };

    int t = 0;
    while (t < R && t < C) {
      int br = -1, bc = -1;
      for (int r = t; r < R; ++r)
        for (int c = t; c < C; ++c)
          if (d[r][c] != 0 &&
              (br < 0 || mpz_cmpabs(d[r][c].get_mpz_t(), d[br][bc].get_mpz_t()) < 0)) {
            br = r;
            bc = c;
          }
      if (br < 0) break;
      if (br != t) {
        std::swap(d[br], d[t]);
        std::swap(drhs[br], drhs[t]);
        std::swap(ar[br], ar[t]);
      }
      if (bc != t) {
        for (int r = 0; r < R; ++r) std::swap(d[r][bc], d[r][t]);
        if (want_v_) std::swap(vcols[ac[bc]], vcols[ac[t]]);
        std::swap(ac[bc], ac[t]);
      }
      bool again = true;
      while (again) {
        again = false;
        for (int r = t + 1; r < R; ++r) {
          if (d[r][t] == 0) continue;
          mpz_class q;
          mpz_tdiv_q(q.get_mpz_t(), d[r][t].get_mpz_t(), d[t][t].get_mpz_t());
          if (q != 0) row_sub(r, t, q);
          if (d[r][t] != 0) {
            std::swap(d[r], d[t]);
            std::swap(drhs[r], drhs[t]);
            std::swap(ar[r], ar[t]);
            again = true;
          }
        }
        for (int c = t + 1; c < C; ++c) {
          if (d[t][c] == 0) continue;
          mpz_class q;
          mpz_tdiv_q(q.get_mpz_t(), d[t][c].get_mpz_t(), d[t][t].get_mpz_t());
          if (q != 0) col_sub(c, t, q);
          if (d[t][c] != 0) {
            for (int r = 0; r < R; ++r) std::swap(d[r][c], d[r][t]);
            if (want_v_) std::swap(vcols[ac[c]], vcols[ac[t]]);
            std::swap(ac[c], ac[t]);
            again = true;
          }
        }
      }
      if (d[t][t] < 0) {
        for (int c = 0; c < C; ++c) d[t][c] = -d[t][c];
        if (!rhs.empty()) drhs[t] = -drhs[t];
      }
      bool divides = true;
      for (int r = t + 1; r < R && divides; ++r)
        for (int c = t + 1; c < C && divides; ++c)
          if (d[r][c] % d[t][t] != 0) {
            row_sub(t, r, -1);  // pull the offending row into the pivot row
            divides = false;
          }
      if (!divides) continue;
      res.factors.push_back(d[t][t]);
      res.pivot_rows.push_back(ar[t]);
      res.pivot_cols.push_back(ac[t]);
      ++t;
    }
    if (!rhs.empty())
      for (int r = 0; r < R; ++r) rhs[ar[r]] = drhs[r];
  }

  res.rhs = std::move(rhs);
  res.vcols = std::move(vcols);
  return res;
}

SmithResult smith_normal_form(const std::vector<std::vector<long long>>& m) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  SmithEngine e(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (m[r][c]) e.add(r, c, m[r][c]);
  return e.run();
}

}  // namespace khtor
