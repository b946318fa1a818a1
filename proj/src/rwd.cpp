#include "repsim/rwd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "repsim/errors.hpp"
#include "repsim/topology.hpp"

namespace repsim {

std::vector<int> split_degree(int r, const std::vector<std::uint32_t>& weights,
                              const std::vector<std::uint32_t>& caps) {
  if (weights.size() != caps.size())
    throw std::invalid_argument("split_degree: weights/caps size mismatch");
  const std::size_t L = weights.size();
  std::vector<int> out(L, 0);
  if (r <= 0 || L == 0) return out;

  std::uint64_t wsum = 0, capsum = 0;
  for (auto w : weights) wsum += w;
  for (auto c : caps) capsum += c;
  const int target = int(std::min<std::uint64_t>(std::uint64_t(r), capsum));
  if (target == 0) return out;

  std::vector<double> quota(L, 0.0);
  if (wsum > 0)
    for (std::size_t l = 0; l < L; ++l)
      quota[l] = double(r) * double(weights[l]) / double(wsum);

  int assigned = 0;
  for (std::size_t l = 0; l < L; ++l) {
    out[l] = std::min(int(quota[l]), int(caps[l]));
    assigned += out[l];
  }

  std::vector<std::size_t> order(L);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double ra = quota[a] - std::floor(quota[a]);
    const double rb = quota[b] - std::floor(quota[b]);
    return ra != rb ? ra > rb : a < b;
  });
  // hand out the leftover by remainder rank, cycling past capped regions
  while (assigned < target) {
    for (std::size_t l : order) {
      if (assigned == target) break;
      if (out[l] < int(caps[l])) {
        ++out[l];
        ++assigned;
      }
    }
  }
  return out;
}

std::vector<double> coverage_weights(const TableView& table, RegionId l) {
  const std::uint32_t T = table.slots, V = table.vspace;
  std::vector<double> w(T, 0.0);
  std::vector<std::uint32_t> pop;
  for (std::uint32_t v = 0; v < V; ++v)
    if (table.count(l, v) > 0) pop.push_back(v);
  if (pop.empty()) {
    std::fill(w.begin(), w.end(), 1.0 / double(T));
    return w;
  }
  double avg = 0.0;
  for (std::uint32_t v : pop)
    for (std::uint32_t t = 0; t < T; ++t) avg += table.at(l, v, t);
  avg /= double(pop.size()) * double(T);

  std::vector<std::uint32_t> cnt(T, 0);
  for (std::uint32_t v : pop)
    for (std::uint32_t t = 0; t < T; ++t)
      if (table.at(l, v, t) <= avg) cnt[t] += 1;
  std::uint64_t total = 0;
  for (std::uint32_t c : cnt) total += c;
  for (std::uint32_t t = 0; t < T; ++t) w[t] = double(cnt[t]) / double(total);
  return w;
}

void finalize_instance(RwdInstance& ins) {
  if (ins.vspace == 0 || ins.slots == 0)
    throw std::invalid_argument("instance: empty dimensions");
  if (ins.vspace != (1u << ins.prefix_bits))
    throw std::invalid_argument("instance: vspace != 2^prefix_bits");
  if (ins.ut.size() != std::size_t(ins.vspace) * ins.slots ||
      ins.counts.size() != ins.vspace || ins.weights.size() != ins.slots)
    throw std::invalid_argument("instance: field shape mismatch");
  ins.active.clear();
  for (std::uint32_t v = 0; v < ins.vspace; ++v)
    if (ins.counts[v] > 0) ins.active.push_back(std::uint16_t(v));
  ins.c.assign(std::size_t(ins.vspace) * ins.vspace, 0);
  for (std::uint32_t i = 0; i < ins.vspace; ++i)
    for (std::uint32_t j = 0; j < ins.vspace; ++j)
      ins.c[i * ins.vspace + j] =
          std::uint8_t(common_prefix(i, j, ins.prefix_bits));
}

RwdInstance build_instance(const TableView& table, RegionId l, int sub_degree,
                           std::vector<double> weights) {
  RwdInstance ins;
  ins.vspace = table.vspace;
  ins.slots = table.slots;
  ins.prefix_bits = ceil_log2(table.vspace);
  ins.sub_degree = sub_degree;
  ins.weights = std::move(weights);
  ins.ut.resize(std::size_t(ins.vspace) * ins.slots);
  ins.counts.resize(ins.vspace);
  for (std::uint32_t v = 0; v < ins.vspace; ++v) {
    ins.counts[v] = table.count(l, v);
    for (std::uint32_t t = 0; t < ins.slots; ++t)
      ins.ut[std::size_t(v) * ins.slots + t] = table.at(l, v, t);
  }
  finalize_instance(ins);
  return ins;
}

double objective_of(const RwdInstance& ins,
                    const std::vector<std::uint16_t>& x) {
  const std::size_t T = ins.slots;
  if (x.size() != ins.active.size() * T)
    throw std::invalid_argument("assignment shape mismatch");
  double s = 0.0;
  for (std::size_t aj = 0; aj < ins.active.size(); ++aj)
    for (std::size_t t = 0; t < T; ++t)
      s += ins.contrib(x[aj * T + t], ins.active[aj], std::uint32_t(t));
  return s;
}

void check_solution(const RwdInstance& ins, const RwdSolution& sol) {
  const auto& A = ins.active;
  if (sol.y.size() != std::size_t(ins.sub_degree))
    throw std::logic_error("y size != sub-degree");
  for (std::size_t i = 0; i < sol.y.size(); ++i) {
    if (i > 0 && sol.y[i] <= sol.y[i - 1])
      throw std::logic_error("y not strictly ascending");
    if (!std::binary_search(A.begin(), A.end(), sol.y[i]))
      throw std::logic_error("y member not a populated id");
  }
  if (sol.x.size() != A.size() * ins.slots)
    throw std::logic_error("x does not assign every (requester, slot)");
  std::vector<std::uint32_t> served(sol.y.size(), 0);
  for (std::uint16_t xi : sol.x) {
    auto it = std::lower_bound(sol.y.begin(), sol.y.end(), xi);
    if (it == sol.y.end() || *it != xi)
      throw std::logic_error("x assigns an id outside y");
    served[std::size_t(it - sol.y.begin())] += 1;
  }
  for (std::size_t m = 0; m < served.size(); ++m)
    if (served[m] == 0)
      throw std::logic_error("chosen id serves no (requester, slot)");
  if (objective_of(ins, sol.x) != sol.objective)
    throw std::logic_error("stored objective mismatch");
}

namespace {

// Lexicographic k-combinations of [0, n).
struct ComboIter {
  std::vector<int> idx;
  int n;

  ComboIter(int n_, int k) : idx(k), n(n_) {
    std::iota(idx.begin(), idx.end(), 0);
  }
  bool next() {
    const int k = int(idx.size());
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    return true;
  }
};

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Minimum-loss injective assignment of members to pairs (depth-first with
// sorted candidate lists and an admissible per-member bound). Returns the
// chosen pair per member.
struct WitnessRepair {
  int r, P;
  std::vector<std::vector<std::pair<double, int>>> cand;  // per member
  std::vector<int> ord;          // starved members first
  std::vector<double> suffix_min;
  std::vector<char> used;
  std::vector<int> cur, best;
  double best_loss = std::numeric_limits<double>::infinity();

  WitnessRepair(int r_, int P_) : r(r_), P(P_), cand(r_), used(P_, 0),
                                  cur(r_, -1), best(r_, -1) {}

  void dfs(int i, double acc) {
    if (acc + suffix_min[i] >= best_loss) return;
    if (i == r) {
      best_loss = acc;
      best = cur;
      return;
    }
    const int m = ord[i];
    for (const auto& [loss, p] : cand[m]) {
      if (acc + loss + suffix_min[i + 1] >= best_loss) break;
      if (used[p]) continue;
      used[p] = 1;
      cur[m] = p;
      dfs(i + 1, acc + loss);
      used[p] = 0;
    }
  }

  void run() {
    suffix_min.assign(r + 1, 0.0);
    for (int i = r - 1; i >= 0; --i)
      suffix_min[i] = suffix_min[i + 1] + cand[ord[i]].front().first;
    dfs(0, 0.0);
  }
};

}  // namespace

RwdSolution solve_rwd(const RwdInstance& ins) {
  const auto& A = ins.active;
  const int nA = int(A.size());
  const int T = int(ins.slots);
  const int r = ins.sub_degree;
  if (r < 1 || r > nA)
    throw RwdError("sub-degree must be in [1, populated id count]");
  const int P = nA * T;

  // contrib of candidate a (index into active) for pair p = aj * T + t;
  // pair order matches the canonical objective accumulation.
  std::vector<double> M(std::size_t(nA) * P);
  for (int a = 0; a < nA; ++a)
    for (int aj = 0; aj < nA; ++aj)
      for (int t = 0; t < T; ++t)
        M[std::size_t(a) * P + aj * T + t] =
            ins.contrib(A[a], A[aj], std::uint32_t(t));

  RwdSolution bestsol;
  bool have = false;

  std::vector<int> holder(P);
  std::vector<double> pmax(P);
  std::vector<std::uint32_t> held;
  std::vector<std::uint16_t> x(P);

  ComboIter combo(nA, r);
  do {
    const std::vector<int>& sel = combo.idx;
    double base = 0.0;
    for (int p = 0; p < P; ++p) {
      int bm = 0;
      double bv = M[std::size_t(sel[0]) * P + p];
      for (int m = 1; m < r; ++m) {
        const double v = M[std::size_t(sel[m]) * P + p];
        if (v > bv) {
          bv = v;
          bm = m;
        }
      }
      holder[p] = bm;
      pmax[p] = bv;
      base += bv;
    }
    if (have && base <= bestsol.objective) continue;  // repair only lowers it

    held.assign(r, 0);
    for (int p = 0; p < P; ++p) held[holder[p]] += 1;
    bool covered = true;
    for (int m = 0; m < r; ++m)
      if (held[m] == 0) covered = false;

    double obj;
    if (covered) {
      for (int p = 0; p < P; ++p) x[p] = A[sel[holder[p]]];
      obj = base;
    } else {
      WitnessRepair rep(r, P);
      for (int m = 0; m < r; ++m) {
        auto& list = rep.cand[m];
        list.resize(P);
        for (int p = 0; p < P; ++p)
          list[p] = {pmax[p] - M[std::size_t(sel[m]) * P + p], p};
        std::sort(list.begin(), list.end());
      }
      for (int m = 0; m < r; ++m)
        if (held[m] == 0) rep.ord.push_back(m);
      for (int m = 0; m < r; ++m)
        if (held[m] > 0) rep.ord.push_back(m);
      rep.run();
      for (int p = 0; p < P; ++p) x[p] = A[sel[holder[p]]];
      for (int m = 0; m < r; ++m) x[rep.best[m]] = A[sel[m]];
      obj = objective_of(ins, x);
      if (have && obj <= bestsol.objective) continue;
    }

    if (!have || obj > bestsol.objective) {
      bestsol.y.assign(sel.size(), 0);
      for (int m = 0; m < r; ++m) bestsol.y[m] = A[sel[m]];
      bestsol.x = x;
      bestsol.objective = obj;
      have = true;
    }
  } while (combo.next());
  return bestsol;
}

RwdSolution brute_force_rwd(const RwdInstance& ins) {
  const auto& A = ins.active;
  const int nA = int(A.size());
  const int T = int(ins.slots);
  const int r = ins.sub_degree;
  if (r < 1 || r > nA)
    throw RwdError("sub-degree must be in [1, populated id count]");
  if (nA > 6 || T > 4 || r > 3)
    throw RwdError("instance exceeds exhaustive-solver bounds");
  const int P = nA * T;
  const int full = (1 << r) - 1;

  std::vector<double> M(std::size_t(nA) * P);
  for (int a = 0; a < nA; ++a)
    for (int aj = 0; aj < nA; ++aj)
      for (int t = 0; t < T; ++t)
        M[std::size_t(a) * P + aj * T + t] =
            ins.contrib(A[a], A[aj], std::uint32_t(t));

  RwdSolution bestsol;
  bool have = false;

  std::vector<double> g(std::size_t(P + 1) << r);
  std::vector<std::uint16_t> x(P);

  ComboIter combo(nA, r);
  do {
    const std::vector<int>& sel = combo.idx;
    // g[p][need]: best value of pairs p.. with `need` members still uncovered
    for (int need = 0; need <= full; ++need)
      g[(std::size_t(P) << r) | need] = need == 0 ? 0.0 : kNegInf;
    for (int p = P - 1; p >= 0; --p)
      for (int need = 0; need <= full; ++need) {
        double bv = kNegInf;
        for (int m = 0; m < r; ++m) {
          const double sub =
              g[(std::size_t(p + 1) << r) | (need & ~(1 << m))];
          if (sub == kNegInf) continue;
          const double v = M[std::size_t(sel[m]) * P + p] + sub;
          if (v > bv) bv = v;
        }
        g[(std::size_t(p) << r) | need] = bv;
      }

    // lex-least maximizing assignment
    int need = full;
    for (int p = 0; p < P; ++p) {
      const double want = g[(std::size_t(p) << r) | need];
      for (int m = 0; m < r; ++m) {
        const int nn = need & ~(1 << m);
        const double sub = g[(std::size_t(p + 1) << r) | nn];
        if (sub == kNegInf) continue;
        if (M[std::size_t(sel[m]) * P + p] + sub == want) {
          x[p] = A[sel[m]];
          need = nn;
          break;
        }
      }
    }
    const double obj = objective_of(ins, x);
    if (!have || obj > bestsol.objective) {
      bestsol.y.assign(sel.size(), 0);
      for (int m = 0; m < r; ++m) bestsol.y[m] = A[sel[m]];
      bestsol.x = x;
      bestsol.objective = obj;
      have = true;
    }
  } while (combo.next());
  return bestsol;
}

}  // namespace repsim
