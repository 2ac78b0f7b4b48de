#include "pathpack/lp.hpp"

#include <algorithm>
#include <stdexcept>

#include "pathpack/round_path.hpp"
#include "pathpack/round_tree.hpp"

namespace pathpack {

namespace {

// maximize c.v subject to A.v <= b, v >= 0, with b >= 0 so the all-slack
// basis starts feasible. Dense tableau, Bland's rule throughout, so the walk
// terminates without cycling. Every LP here bounds each variable from above,
// hence no unbounded rays.
struct SimplexResult {
  std::vector<Rat> v;
  std::vector<Rat> dual;
  Rat objective = Rat(0);
};

SimplexResult simplex_max(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                          const std::vector<Rat>& c) {
  const long m = static_cast<long>(A.size());
  const long n = static_cast<long>(c.size());
  std::vector<std::vector<Rat>> t(static_cast<size_t>(m) + 1,
                                  std::vector<Rat>(static_cast<size_t>(n + m) + 1, Rat(0)));
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < n; ++j) t[static_cast<size_t>(i)][static_cast<size_t>(j)] = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
    t[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1;
    t[static_cast<size_t>(i)][static_cast<size_t>(n + m)] = b[static_cast<size_t>(i)];
  }
  for (long j = 0; j < n; ++j) t[static_cast<size_t>(m)][static_cast<size_t>(j)] = c[static_cast<size_t>(j)];

  std::vector<long> basis(static_cast<size_t>(m));
  for (long i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;

  for (;;) {
    long enter = -1;
    for (long j = 0; j < n + m; ++j) {
      if (t[static_cast<size_t>(m)][static_cast<size_t>(j)] > 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    long leave = -1;
    Rat best_ratio;
    for (long i = 0; i < m; ++i) {
      const Rat& a = t[static_cast<size_t>(i)][static_cast<size_t>(enter)];
      if (a <= 0) continue;
      Rat ratio = t[static_cast<size_t>(i)][static_cast<size_t>(n + m)] / a;
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) throw std::logic_error("relaxation is unbounded");
    Rat piv = t[static_cast<size_t>(leave)][static_cast<size_t>(enter)];
    for (long j = 0; j <= n + m; ++j) t[static_cast<size_t>(leave)][static_cast<size_t>(j)] /= piv;
    for (long i = 0; i <= m; ++i) {
      if (i == leave) continue;
      Rat f = t[static_cast<size_t>(i)][static_cast<size_t>(enter)];
      if (f == 0) continue;
      for (long j = 0; j <= n + m; ++j)
        t[static_cast<size_t>(i)][static_cast<size_t>(j)] -= f * t[static_cast<size_t>(leave)][static_cast<size_t>(j)];
    }
    basis[static_cast<size_t>(leave)] = enter;
  }

  SimplexResult out;
  out.v.assign(static_cast<size_t>(n), Rat(0));
  for (long i = 0; i < m; ++i)
    if (basis[static_cast<size_t>(i)] < n)
      out.v[static_cast<size_t>(basis[static_cast<size_t>(i)])] =
          t[static_cast<size_t>(i)][static_cast<size_t>(n + m)];
  out.dual.assign(static_cast<size_t>(m), Rat(0));
  for (long i = 0; i < m; ++i) {
    Rat d = -t[static_cast<size_t>(m)][static_cast<size_t>(n + i)];
    out.dual[static_cast<size_t>(i)] = d;
  }
  Rat z = -t[static_cast<size_t>(m)][static_cast<size_t>(n + m)];
  out.objective = z;
  return out;
}

// Exact optimality certificate: primal feasibility, dual feasibility, and
// strong duality. A failure means a solver bug, never bad input.
void certify(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
             const std::vector<Rat>& c, const SimplexResult& r) {
  const size_t m = A.size();
  const size_t n = c.size();
  for (size_t j = 0; j < n; ++j)
    if (r.v[j] < 0) throw std::logic_error("certificate: negative primal entry");
  for (size_t i = 0; i < m; ++i) {
    Rat lhs(0);
    for (size_t j = 0; j < n; ++j) lhs += A[i][j] * r.v[j];
    if (lhs > b[i]) throw std::logic_error("certificate: primal constraint violated");
    if (r.dual[i] < 0) throw std::logic_error("certificate: negative dual entry");
  }
  for (size_t j = 0; j < n; ++j) {
    Rat lhs(0);
    for (size_t i = 0; i < m; ++i) lhs += A[i][j] * r.dual[i];
    if (lhs < c[j]) throw std::logic_error("certificate: dual constraint violated");
  }
  Rat primal(0), dual(0);
  for (size_t j = 0; j < n; ++j) primal += c[j] * r.v[j];
  for (size_t i = 0; i < m; ++i) dual += b[i] * r.dual[i];
  if (primal != dual) throw std::logic_error("certificate: duality gap");
  if (primal != r.objective) throw std::logic_error("certificate: objective mismatch");
}

SimplexResult solve_certified(const std::vector<std::vector<Rat>>& A, const std::vector<Rat>& b,
                              const std::vector<Rat>& c) {
  SimplexResult r = simplex_max(A, b, c);
  certify(A, b, c, r);
  return r;
}

// Rows: one per edge (load <= capacity), then one per request (x <= 1).
template <typename Instance>
FractionalSolution ufp_lp_core(const Instance& inst, const std::vector<long>& edge_ids,
                               const std::vector<std::vector<long>>& spans) {
  const long n = inst.size();
  const long m = static_cast<long>(edge_ids.size());
  std::vector<std::vector<Rat>> A(static_cast<size_t>(m + n),
                                  std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
  std::vector<Rat> b(static_cast<size_t>(m + n), Rat(0));
  std::vector<Rat> c(static_cast<size_t>(n), Rat(0));
  std::vector<long> row_of_edge(edge_ids.empty() ? 0 : static_cast<size_t>(*std::max_element(edge_ids.begin(), edge_ids.end())) + 1, -1);
  for (long r = 0; r < m; ++r) {
    row_of_edge[static_cast<size_t>(edge_ids[static_cast<size_t>(r)])] = r;
    b[static_cast<size_t>(r)] = inst.net().capacity(edge_ids[static_cast<size_t>(r)]);
  }
  for (long i = 0; i < n; ++i) {
    const Request& q = inst.requests()[static_cast<size_t>(i)];
    c[static_cast<size_t>(i)] = q.w;
    for (long e : spans[static_cast<size_t>(i)])
      A[static_cast<size_t>(row_of_edge[static_cast<size_t>(e)])][static_cast<size_t>(i)] = q.d;
    A[static_cast<size_t>(m + i)][static_cast<size_t>(i)] = 1;
    b[static_cast<size_t>(m + i)] = 1;
  }
  SimplexResult r = solve_certified(A, b, c);
  FractionalSolution out;
  out.x = r.v;
  out.objective = r.objective;
  return out;
}

}  // namespace

FractionalSolution solve_ufp_lp(const UfpInstance& inst) {
  std::vector<long> edges;
  for (long e = 1; e <= inst.net().edges(); ++e) edges.push_back(e);
  std::vector<std::vector<long>> spans(static_cast<size_t>(inst.size()));
  for (long i = 0; i < inst.size(); ++i) {
    const Request& q = inst.requests()[static_cast<size_t>(i)];
    for (long e = q.s; e < q.t; ++e) spans[static_cast<size_t>(i)].push_back(e);
  }
  return ufp_lp_core(inst, edges, spans);
}

FractionalSolution solve_ufp_lp(const TreeUfpInstance& inst) {
  std::vector<long> edges;
  for (long v = 2; v <= inst.net().vertices(); ++v) edges.push_back(v);
  std::vector<std::vector<long>> spans(static_cast<size_t>(inst.size()));
  for (long i = 0; i < inst.size(); ++i) spans[static_cast<size_t>(i)] = inst.span(i);
  return ufp_lp_core(inst, edges, spans);
}

FractionalSolution solve_bag_lp(const BagInstance& inst) {
  const long n = inst.size();
  const long m = inst.net().edges();
  const long p = inst.bags();
  std::vector<std::vector<Rat>> A(static_cast<size_t>(m + p),
                                  std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
  std::vector<Rat> b(static_cast<size_t>(m + p), Rat(0));
  std::vector<Rat> c(static_cast<size_t>(n), Rat(0));
  for (long e = 1; e <= m; ++e) b[static_cast<size_t>(e - 1)] = inst.net().capacity(e);
  for (long j = 0; j < p; ++j) b[static_cast<size_t>(m + j)] = 1;
  for (long i = 0; i < n; ++i) {
    const Request& q = inst.requests()[static_cast<size_t>(i)];
    c[static_cast<size_t>(i)] = inst.bag_profit(inst.bag_of(i));
    for (long e = q.s; e < q.t; ++e) A[static_cast<size_t>(e - 1)][static_cast<size_t>(i)] = q.d;
    A[static_cast<size_t>(m + inst.bag_of(i))][static_cast<size_t>(i)] = 1;
  }
  SimplexResult r = solve_certified(A, b, c);
  FractionalSolution out;
  out.x = r.v;
  out.y.assign(static_cast<size_t>(p), Rat(0));
  for (long i = 0; i < n; ++i) out.y[static_cast<size_t>(inst.bag_of(i))] += r.v[static_cast<size_t>(i)];
  out.objective = r.objective;
  return out;
}

namespace {

std::vector<long> snap_entries(std::vector<Rat>& xs, long k) {
  std::vector<long> mult;
  mult.reserve(xs.size());
  for (Rat& x : xs) {
    Rat scaled = x * k;
    if (scaled < 1) {
      x = 0;
      mult.push_back(0);
      continue;
    }
    long a = to_long(floor_rat(scaled));
    x = rat(a, k);
    mult.push_back(a);
  }
  return mult;
}

}  // namespace

FractionalSolution snap_to_grid(const FractionalSolution& sol, long k) {
  if (k < 1) throw std::invalid_argument("grid denominator must be positive");
  FractionalSolution out = sol;
  out.K = k;
  out.alpha = snap_entries(out.x, k);
  out.bag_alpha = snap_entries(out.y, k);
  return out;
}

FractionalSolution quantize(const FractionalSolution& sol, long fallback_k) {
  Int lcm = 1;
  bool small = true;
  auto fold = [&](const std::vector<Rat>& xs) {
    for (const Rat& x : xs) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
      if (lcm > kDenominatorGuard) {
        small = false;
        return;
      }
    }
  };
  fold(sol.x);
  if (small) fold(sol.y);
  if (!small) return snap_to_grid(sol, fallback_k);

  FractionalSolution out = sol;
  out.K = to_long(lcm);
  auto mults = [&](const std::vector<Rat>& xs) {
    std::vector<long> m;
    m.reserve(xs.size());
    for (const Rat& x : xs) {
      Rat scaled = x * out.K;
      m.push_back(to_long(floor_rat(scaled)));
    }
    return m;
  };
  out.alpha = mults(out.x);
  out.bag_alpha = mults(out.y);
  return out;
}

namespace {

void require_quantized(const FractionalSolution& sol, long n) {
  if (sol.K < 1 || static_cast<long>(sol.alpha.size()) != n)
    throw std::invalid_argument("solution must be quantized before decomposition");
}

Decomposition finish_decomposition(const std::vector<std::vector<long>>& classes,
                                   const std::vector<Request>& requests, long K) {
  Decomposition out;
  out.K = K;
  out.classes = classes;
  out.class_profit.reserve(classes.size());
  for (const std::vector<long>& cls : classes) {
    Rat p(0);
    for (long i : cls) p += requests[static_cast<size_t>(i)].w;
    out.class_profit.push_back(p);
  }
  for (size_t k = 0; k < out.class_profit.size(); ++k)
    if (out.best < 0 || out.class_profit[k] > out.class_profit[static_cast<size_t>(out.best)])
      out.best = static_cast<long>(k);
  return out;
}

std::vector<long> integral_class(const std::vector<long>& alpha) {
  std::vector<long> cls;
  for (size_t i = 0; i < alpha.size(); ++i)
    if (alpha[i] > 0) cls.push_back(static_cast<long>(i));
  return cls;
}

}  // namespace

Decomposition convex_decompose(const UfpInstance& inst, const FractionalSolution& sol) {
  require_quantized(sol, inst.size());
  require_nba(inst);
  for (long i = 0; i < inst.size(); ++i)
    if (classify_demand(inst, i, rat(1, 4)) != DemandSize::Small)
      throw std::invalid_argument("decomposition needs small demands only");

  const long K = sol.K;
  bool any = false;
  for (long a : sol.alpha) any = any || a > 0;
  if (!any) {
    Decomposition out;
    out.K = K;
    return out;
  }
  if (K == 1) {
    // Integral solution: the support is feasible outright by the capacity
    // rows, so it forms the single class.
    return finish_decomposition({integral_class(sol.alpha)}, inst.requests(), K);
  }

  std::vector<Request> copies;
  std::vector<long> origin;
  for (long i = 0; i < inst.size(); ++i)
    for (long tally = 0; tally < sol.alpha[static_cast<size_t>(i)]; ++tally) {
      copies.push_back(inst.requests()[static_cast<size_t>(i)]);
      origin.push_back(i);
    }
  UfpInstance expanded(inst.net(), copies);
  Coloring col = color_small_arbitrary(expanded, origin, 17 * K);
  std::vector<std::vector<long>> classes(static_cast<size_t>(col.classes));
  for (size_t j = 0; j < origin.size(); ++j)
    classes[static_cast<size_t>(col.color[j] - 1)].push_back(origin[j]);
  return finish_decomposition(classes, inst.requests(), K);
}

Decomposition convex_decompose(const TreeUfpInstance& inst, const FractionalSolution& sol) {
  require_quantized(sol, inst.size());
  require_nba(inst);

  const long K = sol.K;
  bool any = false;
  for (long a : sol.alpha) any = any || a > 0;
  if (!any) {
    Decomposition out;
    out.K = K;
    return out;
  }
  if (K == 1)
    return finish_decomposition({integral_class(sol.alpha)}, inst.requests(), K);

  std::vector<Request> copies;
  std::vector<long> origin;
  for (long i = 0; i < inst.size(); ++i)
    for (long tally = 0; tally < sol.alpha[static_cast<size_t>(i)]; ++tally) {
      copies.push_back(inst.requests()[static_cast<size_t>(i)]);
      origin.push_back(i);
    }
  TreeUfpInstance expanded(inst.net(), copies);
  Coloring col = round_ufp_tree(expanded);

  // Per-class loads and per-origin counts, for the duplicate-repair sweep.
  const long nclasses = col.classes;
  const long nedges = inst.net().vertices();
  std::vector<std::vector<Rat>> load(static_cast<size_t>(nclasses),
                                     std::vector<Rat>(static_cast<size_t>(nedges) + 1, Rat(0)));
  std::vector<std::vector<long>> count(static_cast<size_t>(nclasses),
                                       std::vector<long>(static_cast<size_t>(inst.size()), 0));
  std::vector<long> home(origin.size());
  for (size_t j = 0; j < origin.size(); ++j) {
    long k = col.color[j] - 1;
    home[j] = k;
    ++count[static_cast<size_t>(k)][static_cast<size_t>(origin[j])];
    for (long e : expanded.span(static_cast<long>(j)))
      load[static_cast<size_t>(k)][static_cast<size_t>(e)] += copies[j].d;
  }

  // Copies of one request sharing a class are moved to any class with room
  // that lacks the request; leftovers collapse to a single occurrence below.
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t j = 0; j < origin.size(); ++j) {
      long k = home[static_cast<size_t>(j)];
      long o = origin[j];
      if (count[static_cast<size_t>(k)][static_cast<size_t>(o)] <= 1) continue;
      for (long k2 = 0; k2 < nclasses; ++k2) {
        if (k2 == k || count[static_cast<size_t>(k2)][static_cast<size_t>(o)] > 0) continue;
        bool fits = true;
        for (long e : expanded.span(static_cast<long>(j))) {
          Rat after = load[static_cast<size_t>(k2)][static_cast<size_t>(e)] + copies[j].d;
          if (after > inst.net().capacity(e)) {
            fits = false;
            break;
          }
        }
        if (!fits) continue;
        for (long e : expanded.span(static_cast<long>(j))) {
          load[static_cast<size_t>(k)][static_cast<size_t>(e)] -= copies[j].d;
          load[static_cast<size_t>(k2)][static_cast<size_t>(e)] += copies[j].d;
        }
        --count[static_cast<size_t>(k)][static_cast<size_t>(o)];
        ++count[static_cast<size_t>(k2)][static_cast<size_t>(o)];
        home[static_cast<size_t>(j)] = k2;
        moved = true;
        break;
      }
    }
  }

  std::vector<std::vector<long>> classes(static_cast<size_t>(nclasses));
  for (long k = 0; k < nclasses; ++k)
    for (long i = 0; i < inst.size(); ++i)
      if (count[static_cast<size_t>(k)][static_cast<size_t>(i)] > 0)
        classes[static_cast<size_t>(k)].push_back(i);
  return finish_decomposition(classes, inst.requests(), K);
}

}  // namespace pathpack
