#include "zc1/solver.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "zc1/numtheory.hpp"

namespace zc1 {
namespace {

PAVector fused_pa(const QuotientLink& link, const PAVector& pa, long image_order) {
  PAVector out;
  out.unit_order = image_order;
  for (const auto& [cid, v] : pa.entries) {
    const std::string& q = link.fusion.at(cid);
    out.entries[q] += v;
    if (out.entries[q] == 0) out.entries.erase(q);
  }
  return out;
}

bool same_pa(const PAVector& a, const PAVector& b) { return a.entries == b.entries; }

bool solved_unit_less(const SolvedUnitPtr& a, const SolvedUnitPtr& b,
                      const std::vector<ConjClass>& classes) {
  for (const auto& c : classes) {
    long av = a->pa.at(c.id), bv = b->pa.at(c.id);
    if (av != bv) return av < bv;
  }
  return a->key() < b->key();
}

}  // namespace

const char* to_string(Zc1Status s) {
  switch (s) {
    case Zc1Status::verified_trivial:
      return "verified-trivial";
    case Zc1Status::reduced_via_central_translation:
      return "reduced-via-central-translation";
    case Zc1Status::open:
      return "open";
  }
  return "?";
}

std::vector<SolvedUnitPtr> trivial_solutions(const GroupData& g, long n) {
  std::vector<SolvedUnitPtr> out;
  for (int i = 0; i < g.class_count(); ++i)
    if (g.cls(i).element_order == n) out.push_back(trivial_unit(g, i));
  return out;
}

std::vector<PowerAssignment> enumerate_power_assignments(
    const GroupData& g, const std::map<long, OrderVerdict>& solved, long n) {
  auto primes = prime_factors(n);
  std::vector<const OrderVerdict*> pools;
  for (long p : primes) {
    auto it = solved.find(n / p);
    if (it == solved.end())
      throw error(errc::dependency, "missing verdict for order " + std::to_string(n / p));
    pools.push_back(&it->second);
  }
  std::vector<PowerAssignment> out;
  std::vector<size_t> pick(primes.size(), 0);
  for (;;) {
    // current combination
    bool ok = true;
    for (size_t i = 0; i < primes.size() && ok; ++i) {
      if (pools[i]->solutions.empty()) ok = false;
    }
    if (!ok) return {};
    std::vector<SolvedUnitPtr> combo(primes.size());
    for (size_t i = 0; i < primes.size(); ++i) combo[i] = pools[i]->solutions[pick[i]];
    // diamond coherence between the maximal proper divisors
    bool coherent = true;
    for (size_t i = 0; i < primes.size() && coherent; ++i)
      for (size_t j = i + 1; j < primes.size() && coherent; ++j) {
        const auto& a = combo[i]->children.at(primes[j]);
        const auto& b = combo[j]->children.at(primes[i]);
        if (a->key() != b->key()) coherent = false;
      }
    if (coherent) {
      PowerAssignment amap;
      for (size_t i = 0; i < primes.size(); ++i) amap[primes[i]] = combo[i];
      for (long d : divisors(n)) {
        if (d <= 1 || d >= n || amap.count(d)) continue;
        long p = prime_factors(d)[0];
        amap[d] = unit_power(g, amap[p], d / p);
      }
      out.push_back(std::move(amap));
    }
    // next combination
    size_t k = 0;
    while (k < pick.size()) {
      if (++pick[k] < pools[k]->solutions.size()) break;
      pick[k] = 0;
      ++k;
    }
    if (k == pick.size()) break;
  }
  return out;
}

PAVector central_translate(const GroupData& g, const PAVector& pa, const std::string& z_class) {
  int z = g.class_index(z_class);
  if (!g.is_central(z))
    throw error(errc::invalid_argument, "central_translate: " + z_class + " is not central");
  long zo = g.cls(z).element_order;
  PAVector out;
  long n = pa.unit_order;
  out.unit_order = n / std::gcd(n, zo) * zo;  // lcm; exact for coprime translates
  for (const auto& [cid, v] : pa.entries) {
    int i = g.class_index(cid);
    out.entries[g.cls(g.central_mult(z, i)).id] = v;
  }
  return out;
}

std::vector<long> candidate_orders(const GroupData& g, const GroupData* quotient,
                                   const Toggles& toggles) {
  std::set<long> elt_orders;
  for (const auto& c : g.classes()) elt_orders.insert(c.element_order);
  std::vector<long> out;
  for (long n : divisors(g.exponent())) {
    bool ok = true;
    for (long p : prime_factors(n)) {
      long pp = 1;
      while (n % (pp * p) == 0) pp *= p;
      if (!elt_orders.count(pp)) ok = false;
    }
    if (!ok) continue;
    if (quotient != nullptr && toggles.fusion && n > 1 && !g.quotients().empty()) {
      const auto& link = g.quotients()[0];
      std::set<long> kernel_orders;
      for (const auto& k : link.kernel_class_ids)
        kernel_orders.insert(g.cls(g.class_index(k)).element_order);
      std::set<long> q_orders;
      for (const auto& c : quotient->classes()) q_orders.insert(c.element_order);
      bool feasible = false;
      for (long mp : divisors(n))
        if (q_orders.count(mp) && kernel_orders.count(n / std::gcd(n, mp))) feasible = true;
      if (!feasible) continue;
    }
    out.push_back(n);
  }
  return out;
}

Engine::Engine(const GroupData& g, const GroupData* quotient, const Toggles& toggles)
    : g_(g), quotient_(quotient), toggles_(toggles) {
  if (quotient_ != nullptr && !g_.quotients().empty()) {
    validate_quotient_link(g_, g_.quotients()[0], *quotient_);
    // The quotient is solved with its own canonical toggles: every constraint
    // family on, with the modular primes its data provides. Fusion constraints
    // presuppose the quotient's solved state.
    Toggles qt;
    for (const auto& bt : quotient_->brauer_tables()) qt.modular_primes.push_back(bt.p);
    quotient_engine_ = std::make_unique<Engine>(*quotient_, nullptr, qt);
    quotient_engine_->verify_zc1();
  }
}

std::vector<SolvedUnitPtr> Engine::quotient_branches(long n, const PowerAssignment& powers) {
  std::vector<SolvedUnitPtr> out;
  const auto& link = g_.quotients()[0];
  const auto& qv = quotient_engine_->verdicts();
  const GroupData& q = *quotient_;
  for (long mp : divisors(n)) {
    std::vector<SolvedUnitPtr> cands;
    if (mp == 1) {
      cands.push_back(trivial_unit(q, q.class_index("1a")));
    } else {
      auto it = qv.find(mp);
      if (it == qv.end() || it->second.solutions.empty()) continue;
      cands = it->second.solutions;
    }
    for (const auto& vb : cands) {
      bool coherent = true;
      for (long d : divisors(n)) {
        if (d == 1 || d == n) continue;
        PAVector want = fused_pa(link, powers.at(d).get()->pa, 1);
        try {
          SolvedUnitPtr vd = unit_power(q, vb, d);
          if (!same_pa(want, vd->pa)) coherent = false;
        } catch (const error&) {
          // coprime power of a non-trivial quotient unit: cannot decide, keep
        }
        if (!coherent) break;
      }
      if (coherent) out.push_back(vb);
    }
  }
  return out;
}

OrderVerdict Engine::solve_order(long n) {
  auto it = verdicts_.find(n);
  if (it != verdicts_.end()) return it->second;
  for (long d : divisors(n))
    if (d < n && !verdicts_.count(d)) solve_order(d);
  OrderVerdict v = solve_order_impl(n);
  verdicts_[n] = v;
  return v;
}

OrderVerdict Engine::solve_order_impl(long n) {
  OrderVerdict V;
  V.order = n;
  if (n == 1) {
    V.solutions.push_back(trivial_unit(g_, g_.class_index("1a")));
    V.status = Zc1Status::verified_trivial;
    return V;
  }
  // orders outside the spectrum have no torsion units at all
  auto spectrum = candidate_orders(g_, toggles_.fusion ? quotient_ : nullptr, toggles_);
  if (std::find(spectrum.begin(), spectrum.end(), n) == spectrum.end()) {
    V.status = Zc1Status::verified_trivial;
    V.notes.push_back("order excluded by the order-spectrum rule; no torsion units");
    return V;
  }

  bool use_fusion = toggles_.fusion && quotient_engine_ != nullptr && !g_.quotients().empty();

  // ---- direct path
  std::vector<SolvedUnitPtr> direct;
  auto assignments = enumerate_power_assignments(g_, verdicts_, n);
  for (const auto& amap : assignments) {
    std::vector<SolvedUnitPtr> branches;
    if (use_fusion) {
      branches = quotient_branches(n, amap);
    } else {
      branches.push_back(nullptr);
    }
    for (const auto& vb : branches) {
      if (vb != nullptr && vb->order == 1) {
        // central lifting: pi(u) = 1 forces u into the kernel
        const auto& link = g_.quotients()[0];
        for (const auto& kid : link.kernel_class_ids) {
          int ki = g_.class_index(kid);
          if (g_.cls(ki).element_order != n) continue;
          SolvedUnitPtr zu = trivial_unit(g_, ki);
          bool match = true;
          for (long d : divisors(n)) {
            if (d == 1 || d == n) continue;
            if (unit_power(g_, zu, d)->key() != amap.at(d)->key()) match = false;
          }
          if (match) direct.push_back(zu);
        }
        continue;
      }
      ConstraintSystem sys =
          build_system(g_, n, amap, toggles_, use_fusion ? quotient_ : nullptr, vb);
      SolutionBox box = solve_box(sys);
      EliminationCounts stats;
      auto sols = enumerate_integer_solutions(sys, box, n, &stats);
      V.eliminations.merge(stats);
      for (auto& pa : sols) {
        auto su = std::make_shared<SolvedUnit>();
        su->order = n;
        su->pa = pa;
        for (long p : prime_factors(n))
          su->children[p] = n / p == 1 ? trivial_unit(g_, g_.class_index("1a")) : amap.at(p);
        direct.push_back(std::move(su));
      }
    }
  }
  // dedup by full tree, canonical order
  std::sort(direct.begin(), direct.end(),
            [&](const SolvedUnitPtr& a, const SolvedUnitPtr& b) {
              return solved_unit_less(a, b, g_.classes());
            });
  direct.erase(std::unique(direct.begin(), direct.end(),
                           [](const SolvedUnitPtr& a, const SolvedUnitPtr& b) {
                             return a->key() == b->key();
                           }),
               direct.end());

  // ---- central-translation reduction
  std::vector<SolvedUnitPtr> translated;
  bool fired = false;
  if (toggles_.central_translation) {
    for (long m : divisors(n)) {
      long k = n / m;
      if (m <= 1 || k <= 1 || std::gcd(m, k) != 1) continue;
      std::vector<int> central_k;
      for (int zi : g_.central_class_indices())
        if (g_.cls(zi).element_order == k) central_k.push_back(zi);
      if (central_k.empty()) continue;
      bool trigger = false;
      auto vk = verdicts_.find(k);
      if (vk != verdicts_.end() && !vk->second.solutions.empty()) {
        trigger = std::all_of(vk->second.solutions.begin(), vk->second.solutions.end(),
                              [&](const SolvedUnitPtr& s) {
                                if (!s->trivial_here()) return false;
                                int ci = g_.class_index(s->pa.entries.begin()->first);
                                return g_.is_central(ci) && g_.cls(ci).element_order == k;
                              });
      }
      if (!trigger && use_fusion) {
        const auto& link = g_.quotients()[0];
        std::set<long> kernel_orders;
        for (const auto& kid : link.kernel_class_ids)
          kernel_orders.insert(g_.cls(g_.class_index(kid)).element_order);
        std::vector<long> realizable;
        for (long mp : divisors(n)) {
          auto qit = quotient_engine_->verdicts().find(mp);
          bool nonempty = mp == 1 || (qit != quotient_engine_->verdicts().end() &&
                                      !qit->second.solutions.empty());
          if (nonempty && kernel_orders.count(n / std::gcd(n, mp))) realizable.push_back(mp);
        }
        if (!realizable.empty() &&
            std::all_of(realizable.begin(), realizable.end(), [&](long mp) { return m % mp == 0; }))
          trigger = true;
      }
      if (!trigger) continue;
      auto vm = verdicts_.find(m);
      if (vm == verdicts_.end()) continue;
      bool all_trivial = std::all_of(vm->second.solutions.begin(), vm->second.solutions.end(),
                                     [](const SolvedUnitPtr& s) { return s->trivial_pattern(); });
      if (!all_trivial) {
        V.notes.push_back("central translation skipped: order-" + std::to_string(m) +
                          " solutions not all trivial");
        continue;
      }
      for (int zi : central_k) {
        for (const auto& w : vm->second.solutions) {
          int ci = g_.class_index(w->pa.entries.begin()->first);
          int ti = g_.central_mult(zi, ci);
          if (g_.cls(ti).element_order != n)
            throw error(errc::internal, "central translation produced wrong order");
          translated.push_back(trivial_unit(g_, ti));
        }
      }
      fired = true;
      std::ostringstream note;
      note << "central translation: order " << n << " = " << k << " (central) x " << m
           << "; bijection with order-" << m << " solutions";
      V.notes.push_back(note.str());
      break;
    }
  }
  if (fired) {
    std::sort(translated.begin(), translated.end(),
              [&](const SolvedUnitPtr& a, const SolvedUnitPtr& b) {
                return solved_unit_less(a, b, g_.classes());
              });
    translated.erase(std::unique(translated.begin(), translated.end(),
                                 [](const SolvedUnitPtr& a, const SolvedUnitPtr& b) {
                                   return a->key() == b->key();
                                 }),
                     translated.end());
    // cross-validation of the two argument styles
    std::vector<std::string> dk, tk;
    for (const auto& s : direct) dk.push_back(s->key());
    for (const auto& s : translated) tk.push_back(s->key());
    if (dk != tk)
      throw error(errc::internal,
                  "central-translation and direct solving disagree at order " + std::to_string(n));
    V.status = Zc1Status::reduced_via_central_translation;
    V.solutions = translated;
    return V;
  }
  V.solutions = direct;
  bool all_trivial = std::all_of(direct.begin(), direct.end(),
                                 [](const SolvedUnitPtr& s) { return s->trivial_pattern(); });
  V.status = all_trivial ? Zc1Status::verified_trivial : Zc1Status::open;
  return V;
}

std::map<long, OrderVerdict> Engine::verify_zc1() {
  for (long n : candidate_orders(g_, toggles_.fusion ? quotient_ : nullptr, toggles_))
    solve_order(n);
  return verdicts_;
}

bool Engine::all_verified() const {
  for (const auto& [n, v] : verdicts_)
    if (v.status == Zc1Status::open) return false;
  return true;
}

}  // namespace zc1
