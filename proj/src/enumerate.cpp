#include <algorithm>
#include <cmath>
#include <limits>

#include "zc1/numtheory.hpp"
#include "zc1/simplex.hpp"
#include "zc1/solver.hpp"

#ifdef ZC1_HAVE_OPENMP
#include <omp.h>
#endif

namespace zc1 {
namespace {

std::vector<const Constraint*> all_constraints(const ConstraintSystem& sys) {
  std::vector<const Constraint*> cs;
  for (const auto& c : sys.equalities) cs.push_back(&c);
  for (const auto& c : sys.mu_forms) cs.push_back(&c);
  return cs;
}

long rational_floor_long(const Rational& q) {
  mpz_class f = q.floor();
  if (!f.fits_slong_p()) throw error(errc::internal, "box bound does not fit a long");
  return f.get_si();
}

long rational_ceil_long(const Rational& q) {
  mpz_class f = q.ceil();
  if (!f.fits_slong_p()) throw error(errc::internal, "box bound does not fit a long");
  return f.get_si();
}

// A constraint scaled to integers: value*scale in [lo, hi], and when
// `integral`, value*scale divisible by scale.
struct ScaledForm {
  std::vector<long long> coeff;
  long long cst = 0;
  long long lo = 0, hi = 0;
  long long scale = 1;
  bool integral = true;
  const std::string* note = nullptr;
};

std::vector<ScaledForm> scale_forms(const ConstraintSystem& sys, const SolutionBox& box) {
  auto cs = all_constraints(sys);
  std::vector<ScaledForm> out;
  out.reserve(cs.size());
  int nv = static_cast<int>(sys.variables.size());
  for (const Constraint* c : cs) {
    mpz_class D(1);
    auto fold_den = [&D](const Rational& q) { mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), q.den().get_mpz_t()); };
    fold_den(c->form.constant);
    for (const auto& [v, q] : c->form.coefficients) fold_den(q);
    ScaledForm f;
    f.integral = c->integral;
    f.note = &c->note;
    Rational scale{D};
    f.coeff.assign(nv, 0);
    mpz_class maxabs(0);
    auto to_ll = [](const Rational& q) {
      Rational r = q;
      if (!r.is_integer()) throw error(errc::internal, "scaling failed");
      mpz_class z = r.num();
      if (!z.fits_slong_p()) throw error(errc::internal, "scaled coefficient overflow");
      return static_cast<long long>(z.get_si());
    };
    for (int i = 0; i < nv; ++i) {
      auto it = c->form.coefficients.find(sys.variables[i]);
      if (it != c->form.coefficients.end()) f.coeff[i] = to_ll(it->second * scale);
      mpz_class mag(static_cast<long>(f.coeff[i] < 0 ? -f.coeff[i] : f.coeff[i]));
      mpz_class span(std::max(std::labs(box.lo[i]), std::labs(box.hi[i])));
      maxabs += mag * span;
    }
    f.cst = to_ll(c->form.constant * scale);
    f.lo = static_cast<long long>(rational_ceil_long(c->lo * scale));
    f.hi = static_cast<long long>(rational_floor_long(c->hi * scale));
    if (!D.fits_slong_p()) throw error(errc::internal, "scale overflow");
    f.scale = static_cast<long long>(D.get_si());
    maxabs += mpz_class(static_cast<long>(f.cst < 0 ? -f.cst : f.cst));
    if (maxabs > mpz_class("1152921504606846976"))  // 2^60 headroom
      throw error(errc::internal, "enumeration values would overflow");
    out.push_back(std::move(f));
  }
  return out;
}

struct SearchContext {
  const ConstraintSystem* sys;
  const SolutionBox* box;
  long unit_order;
  std::vector<int> order;                        // variable visit order
  std::vector<ScaledForm> forms;
  std::vector<std::vector<long long>> sufmin;    // per form, per depth
  std::vector<std::vector<long long>> sufmax;
  std::vector<int> cl_idx;                       // variable indices in the CL sum
  long long cl_mod = 0;
};

void dfs(const SearchContext& ctx, int depth, std::vector<long>& x,
         std::vector<long long>& partial, std::vector<PAVector>& out,
         EliminationCounts* stats) {
  int nv = static_cast<int>(ctx.order.size());
  const auto& box = *ctx.box;
  if (depth == nv) {
    for (size_t fi = 0; fi < ctx.forms.size(); ++fi) {
      const auto& f = ctx.forms[fi];
      long long v = partial[fi];
      bool ok = v >= f.lo && v <= f.hi && (!f.integral || v % f.scale == 0);
      if (!ok) {
        if (stats) stats->first_violation[*f.note] += 1;
        return;
      }
    }
    if (ctx.cl_mod > 1) {
      long long s = 0;
      for (int i : ctx.cl_idx) s += x[i];
      s %= ctx.cl_mod;
      if (s == 0) {
        if (stats) stats->first_violation["cohn-livingstone"] += 1;
        return;
      }
    }
    PAVector pa;
    pa.unit_order = ctx.unit_order;
    for (int i = 0; i < nv; ++i)
      if (x[i] != 0) pa.entries[ctx.sys->variables[i]] = x[i];
    out.push_back(std::move(pa));
    return;
  }
  int vi = ctx.order[depth];
  std::uint64_t rest = 1;
  if (stats) {
    for (int d = depth + 1; d < nv; ++d) {
      int k = ctx.order[d];
      std::uint64_t span = static_cast<std::uint64_t>(box.hi[k] - box.lo[k] + 1);
      std::uint64_t nr = rest * span;
      if (span != 0 && nr / span != rest) nr = std::numeric_limits<std::uint64_t>::max();
      rest = nr;
    }
  }
  for (long val = box.lo[vi]; val <= box.hi[vi]; ++val) {
    x[vi] = val;
    bool ok = true;
    size_t bad = 0;
    for (size_t fi = 0; fi < ctx.forms.size(); ++fi) {
      const auto& f = ctx.forms[fi];
      if (f.coeff[vi] != 0) partial[fi] += f.coeff[vi] * val;
      long long v = partial[fi];
      if (v + ctx.sufmax[fi][depth + 1] < f.lo || v + ctx.sufmin[fi][depth + 1] > f.hi) {
        ok = false;
        bad = fi;
        // roll back the already-applied increments up to and including fi
        for (size_t k = 0; k <= fi; ++k)
          if (ctx.forms[k].coeff[vi] != 0) partial[k] -= ctx.forms[k].coeff[vi] * val;
        break;
      }
    }
    if (!ok) {
      if (stats) stats->first_violation[*ctx.forms[bad].note] += rest;
      x[vi] = 0;
      continue;
    }
    dfs(ctx, depth + 1, x, partial, out, stats);
    for (size_t fi = 0; fi < ctx.forms.size(); ++fi)
      if (ctx.forms[fi].coeff[vi] != 0) partial[fi] -= ctx.forms[fi].coeff[vi] * val;
    x[vi] = 0;
  }
}

SearchContext make_context(const ConstraintSystem& sys, const SolutionBox& box, long unit_order) {
  SearchContext ctx;
  ctx.sys = &sys;
  ctx.box = &box;
  ctx.unit_order = unit_order;
  int nv = static_cast<int>(sys.variables.size());
  ctx.order.resize(nv);
  for (int i = 0; i < nv; ++i) ctx.order[i] = i;
  std::sort(ctx.order.begin(), ctx.order.end(), [&](int a, int b) {
    long ra = box.hi[a] - box.lo[a], rb = box.hi[b] - box.lo[b];
    if (ra != rb) return ra < rb;
    return a < b;
  });
  ctx.forms = scale_forms(sys, box);
  size_t nf = ctx.forms.size();
  ctx.sufmin.assign(nf, std::vector<long long>(nv + 1, 0));
  ctx.sufmax.assign(nf, std::vector<long long>(nv + 1, 0));
  for (size_t fi = 0; fi < nf; ++fi) {
    for (int d = nv - 1; d >= 0; --d) {
      int k = ctx.order[d];
      long long a = ctx.forms[fi].coeff[k];
      long long mn = a >= 0 ? a * box.lo[k] : a * box.hi[k];
      long long mx = a >= 0 ? a * box.hi[k] : a * box.lo[k];
      ctx.sufmin[fi][d] = ctx.sufmin[fi][d + 1] + mn;
      ctx.sufmax[fi][d] = ctx.sufmax[fi][d + 1] + mx;
    }
  }
  if (sys.cl_modulus > 1) {
    ctx.cl_mod = sys.cl_modulus;
    for (const auto& cid : sys.cl_classes) {
      auto it = std::find(sys.variables.begin(), sys.variables.end(), cid);
      if (it != sys.variables.end())
        ctx.cl_idx.push_back(static_cast<int>(it - sys.variables.begin()));
    }
    // classes of exact order n that are forced to zero contribute 0 to the sum
  }
  return ctx;
}

void sort_solutions(const ConstraintSystem& sys, std::vector<PAVector>& sols) {
  std::sort(sols.begin(), sols.end(), [&](const PAVector& a, const PAVector& b) {
    for (const auto& v : sys.variables) {
      long av = a.at(v), bv = b.at(v);
      if (av != bv) return av < bv;
    }
    return false;
  });
}

}  // namespace

void EliminationCounts::merge(const EliminationCounts& o) {
  for (const auto& [k, v] : o.first_violation) {
    std::uint64_t& slot = first_violation[k];
    std::uint64_t nv = slot + v;
    slot = nv < slot ? std::numeric_limits<std::uint64_t>::max() : nv;
  }
}

SolutionBox solve_box(const ConstraintSystem& sys) {
  int nv = static_cast<int>(sys.variables.size());
  auto cs = all_constraints(sys);
  SolutionBox box;
  box.lo.assign(nv, 0);
  box.hi.assign(nv, 0);
  std::vector<bool> has_lo(nv, false), has_hi(nv, false);
  auto empty_box = [&] {
    box.lo.assign(nv, 0);
    box.hi.assign(nv, -1);
    return box;
  };

  std::map<std::string, int> vidx;
  for (int i = 0; i < nv; ++i) vidx[sys.variables[i]] = i;
  struct Row {
    std::vector<std::pair<int, Rational>> a;
    Rational cst, lo, hi;
  };
  std::vector<Row> rows;
  for (const Constraint* c : cs) {
    Row r;
    r.cst = c->form.constant;
    r.lo = c->lo;
    r.hi = c->hi;
    for (const auto& [vid, q] : c->form.coefficients)
      if (!q.is_zero()) r.a.push_back({vidx.at(vid), q});
    if (r.a.empty()) {
      // constant-only constraint decides feasibility outright
      if (r.cst < r.lo || r.cst > r.hi || (c->integral && !r.cst.is_integer()))
        return empty_box();
      continue;
    }
    rows.push_back(std::move(r));
  }

  // exact interval propagation
  for (int round = 0; round < 256; ++round) {
    bool changed = false;
    for (const Row& r : rows) {
      for (const auto& [i, a] : r.a) {
        Rational smin = r.cst, smax = r.cst;
        bool ok = true;
        for (const auto& [k, b] : r.a) {
          if (k == i) continue;
          if (!has_lo[k] || !has_hi[k]) {
            ok = false;
            break;
          }
          if (b > Rational(0)) {
            smin += b * Rational(box.lo[k]);
            smax += b * Rational(box.hi[k]);
          } else {
            smin += b * Rational(box.hi[k]);
            smax += b * Rational(box.lo[k]);
          }
        }
        if (!ok) continue;
        Rational nlo_q, nhi_q;
        if (a > Rational(0)) {
          nlo_q = (r.lo - smax) / a;
          nhi_q = (r.hi - smin) / a;
        } else {
          nlo_q = (r.hi - smin) / a;
          nhi_q = (r.lo - smax) / a;
        }
        long nlo = rational_ceil_long(nlo_q);
        long nhi = rational_floor_long(nhi_q);
        if (!has_lo[i] || nlo > box.lo[i]) {
          box.lo[i] = nlo;
          has_lo[i] = true;
          changed = true;
        }
        if (!has_hi[i] || nhi < box.hi[i]) {
          box.hi[i] = nhi;
          has_hi[i] = true;
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  for (int i = 0; i < nv; ++i)
    if (has_lo[i] && has_hi[i] && box.lo[i] > box.hi[i]) return empty_box();

  // exact LP fallback for anything still unbounded
  if (std::find(has_lo.begin(), has_lo.end(), false) != has_lo.end() ||
      std::find(has_hi.begin(), has_hi.end(), false) != has_hi.end()) {
    std::vector<std::pair<std::vector<Rational>, Rational>> lprows;
    for (const Row& r : rows) {
      std::vector<Rational> a(nv, Rational(0));
      for (const auto& [i, q] : r.a) a[i] = q;
      lprows.push_back({a, r.hi - r.cst});
      std::vector<Rational> neg(nv);
      for (int i = 0; i < nv; ++i) neg[i] = -a[i];
      lprows.push_back({std::move(neg), r.cst - r.lo});
    }
    for (int i = 0; i < nv; ++i) {
      if (has_lo[i] && has_hi[i]) continue;
      auto up = lp_bound(lprows, nv, i, 1);
      auto dn = lp_bound(lprows, nv, i, -1);
      if (up.status == LpStatus::infeasible || dn.status == LpStatus::infeasible)
        return empty_box();
      if (up.status == LpStatus::unbounded || dn.status == LpStatus::unbounded)
        throw error(errc::validation,
                    "unbounded-variable: no mu form bounds eps[" + sys.variables[i] + "]");
      long nhi = rational_floor_long(up.value);
      long nlo = rational_ceil_long(-dn.value);
      if (!has_hi[i] || nhi < box.hi[i]) box.hi[i] = nhi;
      if (!has_lo[i] || nlo > box.lo[i]) box.lo[i] = nlo;
      has_lo[i] = has_hi[i] = true;
    }
    for (int i = 0; i < nv; ++i)
      if (box.lo[i] > box.hi[i]) return empty_box();
  }
  return box;
}

std::vector<PAVector> enumerate_integer_solutions_serial(const ConstraintSystem& sys,
                                                         const SolutionBox& box, long unit_order,
                                                         EliminationCounts* stats) {
  int nv = static_cast<int>(sys.variables.size());
  if (box.empty()) return {};
  if (nv == 0) {
    for (const auto* c : all_constraints(sys)) {
      if (c->form.constant < c->lo || c->form.constant > c->hi) return {};
    }
    PAVector pa;
    pa.unit_order = unit_order;
    return {pa};
  }
  SearchContext ctx = make_context(sys, box, unit_order);
  std::vector<long> x(nv, 0);
  std::vector<long long> partial(ctx.forms.size());
  for (size_t fi = 0; fi < ctx.forms.size(); ++fi) partial[fi] = ctx.forms[fi].cst;
  std::vector<PAVector> out;
  dfs(ctx, 0, x, partial, out, stats);
  sort_solutions(sys, out);
  return out;
}

std::vector<PAVector> enumerate_integer_solutions(const ConstraintSystem& sys,
                                                  const SolutionBox& box, long unit_order,
                                                  EliminationCounts* stats) {
#ifndef ZC1_HAVE_OPENMP
  return enumerate_integer_solutions_serial(sys, box, unit_order, stats);
#else
  int nv = static_cast<int>(sys.variables.size());
  if (box.empty() || nv == 0)
    return enumerate_integer_solutions_serial(sys, box, unit_order, stats);
  SearchContext ctx = make_context(sys, box, unit_order);
  int top = ctx.order[0];
  long lo = box.lo[top], hi = box.hi[top];
  long span = hi - lo + 1;
  std::vector<std::vector<PAVector>> results(span);
  std::vector<EliminationCounts> counts(span);
#pragma omp parallel for schedule(dynamic)
  for (long k = 0; k < span; ++k) {
    long val = lo + k;
    std::vector<long> x(nv, 0);
    std::vector<long long> partial(ctx.forms.size());
    for (size_t fi = 0; fi < ctx.forms.size(); ++fi) partial[fi] = ctx.forms[fi].cst;
    // fix the top variable, then search the rest
    x[top] = val;
    bool ok = true;
    size_t bad = 0;
    for (size_t fi = 0; fi < ctx.forms.size(); ++fi) {
      if (ctx.forms[fi].coeff[top] != 0) partial[fi] += ctx.forms[fi].coeff[top] * val;
      long long v = partial[fi];
      if (v + ctx.sufmax[fi][1] < ctx.forms[fi].lo || v + ctx.sufmin[fi][1] > ctx.forms[fi].hi) {
        ok = false;
        bad = fi;
        break;
      }
    }
    if (!ok) {
      if (stats) {
        std::uint64_t rest = 1;
        for (int d = 1; d < nv; ++d) {
          int kk = ctx.order[d];
          std::uint64_t s = static_cast<std::uint64_t>(box.hi[kk] - box.lo[kk] + 1);
          std::uint64_t nr = rest * s;
          if (s != 0 && nr / s != rest) nr = std::numeric_limits<std::uint64_t>::max();
          rest = nr;
        }
        counts[k].first_violation[*ctx.forms[bad].note] += rest;
      }
      continue;
    }
    dfs(ctx, 1, x, partial, results[k], stats ? &counts[k] : nullptr);
  }
  std::vector<PAVector> out;
  for (long k = 0; k < span; ++k) {
    for (auto& pa : results[k]) out.push_back(std::move(pa));
    if (stats) stats->merge(counts[k]);
  }
  sort_solutions(sys, out);
  return out;
#endif
}

}  // namespace zc1
