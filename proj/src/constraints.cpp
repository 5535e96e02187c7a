#include "zc1/constraints.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "zc1/numtheory.hpp"

namespace zc1 {
namespace {

// Tr_{Q(zeta_L)/Q}(zeta_L^k) for k in [0, L); cached per L.
const std::vector<long>& trace_table(long L) {
  static std::map<long, std::vector<long>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(L);
  if (it != cache.end()) return it->second;
  std::vector<long> t(L);
  long ph = euler_phi(L);
  for (long k = 0; k < L; ++k) {
    long d = L / std::gcd(L, k);
    int m = mobius(d);
    t[k] = m == 0 ? 0 : m * (ph / euler_phi(d));
  }
  return cache.emplace(L, std::move(t)).first->second;
}

// j -> trace_in_field(x * zeta_A^{-j}, A), evaluated via the lifted
// coefficient vector of x and the root trace table.
class TraceSeries {
 public:
  TraceSeries(const Cyclotomic& x, long A) : A_(A) {
    L_ = lcm_long(x.conductor(), A);
    step_ = L_ / A;
    scale_ = Rational(euler_phi(A), euler_phi(L_));
    coeffs_ = x.lift_to(L_);
    for (size_t i = 0; i < coeffs_.size(); ++i)
      if (!coeffs_[i].is_zero()) support_.push_back(static_cast<long>(i));
  }
  Rational at(long j) const {
    const auto& t = trace_table(L_);
    long js = (j % A_) * step_ % L_;
    Rational tot(0);
    for (long i : support_) {
      long idx = i - js;
      idx %= L_;
      if (idx < 0) idx += L_;
      long w = t[idx];
      if (w != 0) tot += coeffs_[i] * Rational(w);
    }
    return tot * scale_;
  }

 private:
  long A_, L_, step_;
  Rational scale_;
  std::vector<Rational> coeffs_;
  std::vector<long> support_;
};

std::string su_key_impl(const SolvedUnit& u) {
  std::ostringstream os;
  os << u.order << "{";
  for (const auto& [c, v] : u.pa.entries) os << c << ":" << v << ",";
  os << "}[";
  for (const auto& [p, ch] : u.children) os << p << "->" << ch->key() << ";";
  os << "]";
  return os.str();
}

}  // namespace

std::string SolvedUnit::key() const { return su_key_impl(*this); }

SolvedUnitPtr trivial_unit(const GroupData& g, int ci) {
  auto u = std::make_shared<SolvedUnit>();
  u->order = g.cls(ci).element_order;
  u->pa.unit_order = u->order;
  u->pa.entries[g.cls(ci).id] = 1;
  for (long p : prime_factors(u->order)) u->children[p] = trivial_unit(g, g.power_map(p, ci));
  return u;
}

SolvedUnitPtr unit_power(const GroupData& g, const SolvedUnitPtr& u, long k) {
  long n = u->order;
  k %= n;
  if (k < 0) k += n;
  if (k == 0) return trivial_unit(g, g.class_index("1a"));
  long e = std::gcd(k, n);
  SolvedUnitPtr w = u;
  long ee = e;
  for (long p : prime_factors(e)) {
    while (ee % p == 0) {
      w = w->children.at(p);
      ee /= p;
    }
  }
  long t = (k / e) % (n / e);
  if (t == 1 || w->order == 1) return w;
  if (!w->trivial_here())
    throw error(errc::internal, "coprime power of a non-trivial solved unit is undefined");
  int ci = g.class_index(w->pa.entries.begin()->first);
  return trivial_unit(g, g.power_class(ci, t));
}

Cyclotomic value_of_character_at_unit(const GroupData& g, const PAVector& pa,
                                      const Character& chi) {
  if (chi.values.size() != static_cast<size_t>(g.class_count()))
    throw error(errc::invalid_argument, "character not indexed by the group's class list");
  Cyclotomic acc;
  for (const auto& [cid, v] : pa.entries) {
    int i = g.class_index(cid);
    acc = acc + chi.values[i].scale(Rational(v));
  }
  return acc;
}

Cyclotomic value_of_brauer_at_unit(const GroupData& g, const PAVector& pa, const Character& phi,
                                   long p) {
  if (pa.unit_order % p == 0)
    throw error(errc::invalid_argument,
                "unit of order " + std::to_string(pa.unit_order) + " is not " +
                    std::to_string(p) + "-regular");
  auto preg = g.p_regular_classes(p);
  if (phi.values.size() != preg.size())
    throw error(errc::invalid_argument, "brauer character not indexed by p-regular classes");
  std::map<std::string, size_t> pos;
  for (size_t k = 0; k < preg.size(); ++k) pos[g.cls(preg[k]).id] = k;
  Cyclotomic acc;
  for (const auto& [cid, v] : pa.entries) {
    auto it = pos.find(cid);
    if (it == pos.end())
      throw error(errc::invalid_argument, "unit supported on a p-singular class: " + cid);
    acc = acc + phi.values[it->second].scale(Rational(v));
  }
  return acc;
}

namespace {

struct CharView {
  std::string id;
  long degree;
  // per class index: value, or nullptr where undefined (p-singular for Brauer)
  std::vector<const Cyclotomic*> values;
};

// mu forms for one character at ambient root order N (n | N). Returns false
// if some needed Galois twist is undefined (forms skipped; sound).
bool mu_forms_ambient(const GroupData& g, long n, const PowerAssignment& powers,
                      const CharView& chi, long N, const std::vector<int>& variables,
                      std::vector<Constraint>& out) {
  struct ConstTerm {
    long d;
    Cyclotomic value;
  };
  std::vector<ConstTerm> const_terms;
  std::vector<long> coprime_ds;
  for (long d : divisors(N)) {
    if (d == 1) {
      if (n == 1) const_terms.push_back({d, Cyclotomic(Rational(chi.degree))});
      continue;
    }
    if (d % n == 0) {
      const_terms.push_back({d, Cyclotomic(Rational(chi.degree))});
      continue;
    }
    long e = std::gcd(d, n);
    if (e > 1) {
      SolvedUnitPtr w = powers.at(e);
      Cyclotomic val;
      for (const auto& [cid, v] : w->pa.entries) {
        const Cyclotomic* x = chi.values[g.class_index(cid)];
        if (x == nullptr) return false;  // value undefined on the unit's support
        val = val + x->scale(Rational(v));
      }
      long t = (d / e) % (n / e);
      if (t != 1) {
        if (!val.galois_defined(t)) return false;
        val = val.galois(t);
      }
      const_terms.push_back({d, std::move(val)});
    } else {
      coprime_ds.push_back(d);
    }
  }
  // per-variable series for d = 1 (and sigma_d-twisted for coprime d > 1)
  struct VarSeries {
    int ci;
    std::vector<TraceSeries> series;  // aligned with [1, coprime_ds...]
  };
  std::vector<VarSeries> var_series;
  for (int ci : variables) {
    const Cyclotomic* x = chi.values[ci];
    if (x == nullptr) continue;  // zero coefficient (outside the character's domain)
    VarSeries vs;
    vs.ci = ci;
    vs.series.emplace_back(*x, N);
    for (long d : coprime_ds) {
      long t = d % n;
      if (!x->galois_defined(t)) return false;
      vs.series.emplace_back(x->galois(t), N / d);
    }
    var_series.push_back(std::move(vs));
  }
  std::vector<TraceSeries> const_series;
  for (const auto& ct : const_terms) const_series.emplace_back(ct.value, N / ct.d);
  Rational invN(1, N);
  // sanity: sum over all exponents must telescope to the degree
  Rational sum_consts(0);
  std::map<int, Rational> sum_coeffs;
  size_t first = out.size();
  for (long j = 0; j < N; ++j) {
    Constraint c;
    c.lo = Rational(0);
    c.hi = Rational(chi.degree);
    c.integral = true;
    for (const auto& vs : var_series) {
      Rational acc = vs.series[0].at(j);
      for (size_t k = 0; k < coprime_ds.size(); ++k) acc += vs.series[k + 1].at(j);
      if (!acc.is_zero()) {
        Rational q = acc * invN;
        c.form.coefficients[g.cls(vs.ci).id] = q;
        sum_coeffs[vs.ci] += q;
      }
    }
    Rational cst(0);
    for (const auto& s : const_series) cst += s.at(j);
    c.form.constant = cst * invN;
    sum_consts += c.form.constant;
    std::ostringstream tag;
    tag << "mu[" << chi.id << ",zeta_" << N << "^" << j << "]";
    c.note = tag.str();
    out.push_back(std::move(c));
  }
  for (const auto& [ci, s] : sum_coeffs)
    if (!s.is_zero()) throw error(errc::internal, "mu forms do not telescope (coefficients)");
  if (sum_consts != Rational(chi.degree))
    throw error(errc::internal, "mu forms do not telescope (constant) for " + chi.id);
  (void)first;
  return true;
}

CharView view_of_ordinary(const Character& ch) {
  CharView v;
  v.id = ch.id;
  v.degree = ch.degree;
  for (const auto& x : ch.values) v.values.push_back(&x);
  return v;
}

}  // namespace

LinearForm mu_form(const GroupData& g, long xi_exponent, long n, const Character& chi,
                   const PowerAssignment& powers) {
  for (long d : divisors(n))
    if (d > 1 && d < n && !powers.count(d))
      throw error(errc::invalid_argument,
                  "incomplete power assignment: missing u^" + std::to_string(d));
  std::vector<int> vars;
  for (int i = 0; i < g.class_count(); ++i) vars.push_back(i);
  std::vector<Constraint> forms;
  if (!mu_forms_ambient(g, n, powers, view_of_ordinary(chi), n, vars, forms))
    throw error(errc::invalid_argument, "mu_form: Galois twist undefined for given powers");
  long j = xi_exponent % n;
  if (j < 0) j += n;
  return forms[static_cast<size_t>(j)].form;
}

ConstraintSystem build_system(const GroupData& g, long n, const PowerAssignment& powers,
                              const Toggles& toggles, const GroupData* quotient,
                              const SolvedUnitPtr& qimage) {
  if (n < 2) throw error(errc::invalid_argument, "build_system needs order >= 2");
  for (long d : divisors(n))
    if (d > 1 && d < n && !powers.count(d))
      throw error(errc::dependency, "power assignment missing u^" + std::to_string(d));

  ConstraintSystem sys;
  std::vector<int> var_idx;
  for (int i = 0; i < g.class_count(); ++i) {
    const auto& c = g.cls(i);
    if (toggles.remark2 && n % c.element_order != 0) {
      sys.notes.push_back("remark2: eps[" + c.id + "] = 0 (order " +
                          std::to_string(c.element_order) + " does not divide " +
                          std::to_string(n) + ")");
      continue;
    }
    if (toggles.berman_higman && g.is_central(i)) {
      sys.notes.push_back("berman-higman: eps[" + c.id + "] = 0 (central class)");
      continue;
    }
    var_idx.push_back(i);
    sys.variables.push_back(c.id);
  }

  {
    Constraint aug;
    for (const auto& v : sys.variables) aug.form.coefficients[v] = Rational(1);
    aug.lo = aug.hi = Rational(1);
    aug.note = "augmentation-one";
    sys.equalities.push_back(std::move(aug));
  }

  if (toggles.fusion && qimage != nullptr) {
    if (quotient == nullptr)
      throw error(errc::dependency, "fusion constraints need the quotient group");
    const QuotientLink& link = g.quotients().at(0);
    for (const auto& qc : quotient->classes()) {
      Constraint eq;
      for (const auto& v : sys.variables)
        if (link.fusion.at(v) == qc.id) eq.form.coefficients[v] = Rational(1);
      eq.lo = eq.hi = Rational(qimage->pa.at(qc.id));
      eq.note = "fusion[" + qc.id + "->" + std::to_string(qimage->pa.at(qc.id)) + "]";
      if (eq.form.coefficients.empty() && eq.lo.is_zero()) continue;
      sys.equalities.push_back(std::move(eq));
    }
  }

  if (toggles.ordinary) {
    for (const auto& ch : g.characters()) {
      CharView cv = view_of_ordinary(ch);
      long N = n;
      for (const auto& x : ch.values) N = lcm_long(N, x.conductor());
      if (N > n) {
        // spec ambient first, then the conductor-extended system
        if (!mu_forms_ambient(g, n, powers, cv, n, var_idx, sys.mu_forms))
          sys.notes.push_back("skipped mu forms for " + ch.id + " (undefined Galois twist)");
      }
      if (!mu_forms_ambient(g, n, powers, cv, N, var_idx, sys.mu_forms))
        sys.notes.push_back("skipped extended mu forms for " + ch.id);
    }
  }

  for (long p : toggles.modular_primes) {
    if (n % p == 0) continue;  // checked per order, not globally
    for (const auto& bt : g.brauer_tables()) {
      if (bt.p != p) continue;
      auto preg = g.p_regular_classes(p);
      for (const auto& diff : bt.differences) {
        Character phi = g.brauer_from_ordinary_difference(p, diff.plus, diff.minus);
        CharView cv;
        cv.id = diff.id + "(mod " + std::to_string(p) + ")";
        cv.degree = phi.degree;
        cv.values.assign(g.class_count(), nullptr);
        for (size_t k = 0; k < preg.size(); ++k) cv.values[preg[k]] = &phi.values[k];
        long N = n;
        for (const auto& x : phi.values) N = lcm_long(N, x.conductor());
        if (N > n) {
          if (!mu_forms_ambient(g, n, powers, cv, n, var_idx, sys.mu_forms))
            sys.notes.push_back("skipped modular mu forms for " + cv.id);
        }
        if (!mu_forms_ambient(g, n, powers, cv, N, var_idx, sys.mu_forms))
          sys.notes.push_back("skipped extended modular mu forms for " + cv.id);
      }
    }
  }

  if (toggles.cohn_livingstone) {
    auto ps = prime_factors(n);
    if (ps.size() == 1) {
      sys.cl_modulus = ps[0];
      for (const auto& c : g.classes())
        if (c.element_order == n) sys.cl_classes.push_back(c.id);
      sys.notes.push_back("cohn-livingstone: sum of eps over order-" + std::to_string(n) +
                          " classes is nonzero mod " + std::to_string(ps[0]));
    }
  }
  return sys;
}

}  // namespace zc1
