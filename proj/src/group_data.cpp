#include "zc1/group_data.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "zc1/numtheory.hpp"

namespace zc1 {
namespace {

using ordered_json = nlohmann::ordered_json;

Cyclotomic cyclotomic_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) {
    return Cyclotomic(Rational(static_cast<long>(v.get<long long>())));
  }
  if (v.is_string()) {
    return Cyclotomic(Rational::parse(v.get<std::string>()));
  }
  if (v.is_object()) {
    if (!v.contains("n") || !v.contains("terms"))
      throw error(errc::parse, "cyclotomic literal needs 'n' and 'terms'");
    long n = v.at("n").get<long>();
    if (n < 1) throw error(errc::parse, "cyclotomic literal with non-positive conductor");
    Cyclotomic acc;
    for (const auto& term : v.at("terms")) {
      if (!term.is_array() || term.size() != 2)
        throw error(errc::parse, "cyclotomic term must be [exponent, rational]");
      long k = term.at(0).get<long>();
      Rational a = term.at(1).is_string() ? Rational::parse(term.at(1).get<std::string>())
                                          : Rational(static_cast<long>(term.at(1).get<long long>()));
      acc = acc + Cyclotomic::root_of_unity(n, k).scale(a);
    }
    return acc;
  }
  throw error(errc::parse, "invalid cyclotomic literal");
}

nlohmann::ordered_json cyclotomic_to_json(const Cyclotomic& x) {
  if (auto r = x.to_rational()) {
    if (r->is_integer() && r->num().fits_slong_p()) return r->num().get_si();
    return r->str();
  }
  ordered_json terms = ordered_json::array();
  for (size_t i = 0; i < x.coeffs().size(); ++i) {
    const Rational& a = x.coeffs()[i];
    if (a.is_zero()) continue;
    ordered_json t = ordered_json::array();
    t.push_back(static_cast<long long>(i));
    t.push_back(a.str());
    terms.push_back(std::move(t));
  }
  ordered_json o;
  o["n"] = x.conductor();
  o["terms"] = std::move(terms);
  return o;
}

[[noreturn]] void fail(const std::string& invariant, const std::string& detail) {
  throw error(errc::validation, "validation failed [" + invariant + "]: " + detail);
}

}  // namespace

int GroupData::class_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end())
    throw error(errc::invalid_argument, "unknown class id '" + id + "' in group " + name_);
  return it->second;
}

std::optional<int> GroupData::find_class(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int GroupData::power_map(long p, int i) const {
  auto it = power_.find(p);
  if (it == power_.end())
    throw error(errc::invalid_argument, "no power map for prime " + std::to_string(p));
  return it->second[i];
}

int GroupData::power_class(int i, long k) const {
  long o = classes_[i].element_order;
  k %= o;
  if (k < 0) k += o;
  if (k == 0) return class_index("1a");
  int c = i;
  for (long p : prime_factors(k)) {
    long kk = k;
    while (kk % p == 0) {
      c = power_map(p, c);
      kk /= p;
    }
    k = kk;
  }
  return c;
}

const Character& GroupData::character(const std::string& id) const {
  for (const auto& ch : characters_)
    if (ch.id == id) return ch;
  throw error(errc::invalid_argument, "unknown character id '" + id + "'");
}

int GroupData::central_mult(int zi, int i) const {
  auto it = central_mult_.find(zi);
  if (it == central_mult_.end())
    throw error(errc::invalid_argument, "class is not central: " + classes_[zi].id);
  return it->second[i];
}

std::vector<int> GroupData::p_regular_classes(long p) const {
  std::vector<int> out;
  for (int i = 0; i < class_count(); ++i)
    if (classes_[i].element_order % p != 0) out.push_back(i);
  return out;
}

Character GroupData::brauer_from_ordinary_difference(long p, const std::string& plus,
                                                     const std::string& minus) const {
  const Character& a = character(plus);
  const Character& b = character(minus);
  if (a.degree < b.degree)
    throw error(errc::invalid_argument, "brauer difference " + plus + " - " + minus +
                                            " has negative degree");
  Character out;
  out.id = plus + "-" + minus;
  out.degree = a.degree - b.degree;
  for (int i : p_regular_classes(p)) out.values.push_back(a.values[i] - b.values[i]);
  return out;
}

std::vector<std::string> GroupData::fused_partition(const QuotientLink& link,
                                                    const std::string& quotient_class) const {
  bool seen = false;
  std::vector<std::string> out;
  for (const auto& c : classes_) {
    auto it = link.fusion.find(c.id);
    if (it == link.fusion.end()) fail("fusion-totality", "class " + c.id + " has no fusion image");
    if (it->second == quotient_class) {
      out.push_back(c.id);
      seen = true;
    }
  }
  if (!seen)
    throw error(errc::invalid_argument,
                "no class fuses to quotient class '" + quotient_class + "'");
  return out;
}

GroupData GroupData::load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error(errc::io, "cannot open group file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_string(ss.str());
}

GroupData GroupData::load_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse, std::string("group file is not valid JSON: ") + e.what());
  }
  GroupData g;
  try {
    g.name_ = j.at("name").get<std::string>();
    g.order_ = j.at("order").get<long>();
    for (const auto& c : j.at("classes")) {
      ConjClass cc;
      cc.id = c.at("id").get<std::string>();
      cc.element_order = c.at("order").get<long>();
      cc.size = c.at("size").get<long>();
      if (g.index_.count(cc.id)) fail("class-ids-unique", "duplicate class id " + cc.id);
      g.index_[cc.id] = static_cast<int>(g.classes_.size());
      g.classes_.push_back(std::move(cc));
    }
    for (const auto& c : g.classes_) g.exponent_ = lcm_long(g.exponent_, c.element_order);
    for (auto it = j.at("power_maps").begin(); it != j.at("power_maps").end(); ++it) {
      long p = std::stol(it.key());
      std::vector<int> pm(g.classes_.size(), -1);
      for (auto e = it.value().begin(); e != it.value().end(); ++e)
        pm[g.class_index(e.key())] = g.class_index(e.value().get<std::string>());
      for (int v : pm)
        if (v < 0) fail("power-map-totality", "power map " + it.key() + " misses a class");
      g.power_[p] = std::move(pm);
    }
    g.central_inverse_.assign(g.classes_.size(), -1);
    if (j.contains("central")) {
      for (const auto& pair : j.at("central").at("classes")) {
        int z = g.class_index(pair.at(0).get<std::string>());
        int zi = g.class_index(pair.at(1).get<std::string>());
        g.central_indices_.push_back(z);
        g.central_inverse_[z] = zi;
      }
      for (const auto& [zid, row] : j.at("central").at("mult").items()) {
        int z = g.class_index(zid);
        std::vector<int> m(g.classes_.size(), -1);
        for (auto e = row.begin(); e != row.end(); ++e)
          m[g.class_index(e.key())] = g.class_index(e.value().get<std::string>());
        for (int v : m)
          if (v < 0) fail("central-mult-totality", "central mult for " + zid + " misses a class");
        g.central_mult_[z] = std::move(m);
      }
    }
    for (const auto& c : j.at("characters")) {
      Character ch;
      ch.id = c.at("id").get<std::string>();
      ch.degree = c.at("degree").get<long>();
      for (const auto& v : c.at("values")) ch.values.push_back(cyclotomic_from_json(v));
      if (ch.values.size() != g.classes_.size())
        fail("character-length", ch.id + " has wrong number of values");
      g.characters_.push_back(std::move(ch));
    }
    if (j.contains("brauer")) {
      for (const auto& b : j.at("brauer")) {
        BrauerTable t;
        t.p = b.at("p").get<long>();
        for (const auto& d : b.at("differences"))
          t.differences.push_back({d.at("id").get<std::string>(),
                                   d.at("plus").get<std::string>(),
                                   d.at("minus").get<std::string>()});
        g.brauer_.push_back(std::move(t));
      }
    }
    if (j.contains("quotients")) {
      for (const auto& q : j.at("quotients")) {
        QuotientLink link;
        link.quotient_name = q.at("name").get<std::string>();
        for (const auto& k : q.at("kernel")) link.kernel_class_ids.push_back(k.get<std::string>());
        for (const auto& [from, to] : q.at("fusion").items())
          link.fusion[from] = to.get<std::string>();
        g.quotients_.push_back(std::move(link));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::parse, std::string("malformed group file: ") + e.what());
  }
  g.validate(true);
  return g;
}

void GroupData::validate(bool deep) const {
  // classes
  if (classes_.empty() || classes_[0].id != "1a" || classes_[0].element_order != 1 ||
      classes_[0].size != 1)
    fail("identity-class", "first class must be 1a with order 1 and size 1");
  long total = 0;
  for (const auto& c : classes_) {
    if (c.element_order < 1 || order_ % c.element_order != 0)
      fail("element-order-divides", c.id);
    if (c.size < 1) fail("class-sizes", c.id + " has non-positive size");
    total += c.size;
  }
  if (total != order_) fail("class-sizes", "class sizes sum to " + std::to_string(total) +
                                               ", expected " + std::to_string(order_));
  // power maps for every prime dividing the exponent
  for (long p : prime_factors(exponent_))
    if (!power_.count(p)) fail("power-map-presence", "missing prime " + std::to_string(p));
  for (const auto& [p, pm] : power_) {
    for (int i = 0; i < class_count(); ++i) {
      long o = classes_[i].element_order;
      long expect = (o % p == 0) ? o / p : o;
      if (classes_[pm[i]].element_order != expect)
        fail("power-map-consistency",
             "class " + classes_[i].id + " ^" + std::to_string(p) + " -> " + classes_[pm[i]].id);
    }
  }
  // characters
  if (characters_.size() != classes_.size())
    fail("character-count", "need one character per class");
  long sq = 0;
  for (const auto& ch : characters_) {
    sq += ch.degree * ch.degree;
    auto deg = ch.values[0].to_rational();
    if (!deg || *deg != Rational(ch.degree))
      fail("degree-at-identity", ch.id);
  }
  if (sq != order_) fail("degree-squares", "sum of squared degrees != group order");
  if (deep) {
    // first orthogonality: sum_c |c| chi(c) conj(psi(c)) = |G| delta
    for (size_t a = 0; a < characters_.size(); ++a) {
      for (size_t b = a; b < characters_.size(); ++b) {
        Cyclotomic s;
        for (int i = 0; i < class_count(); ++i)
          s = s + (characters_[a].values[i] * characters_[b].values[i].conj())
                      .scale(Rational(classes_[i].size));
        Rational want(a == b ? order_ : 0);
        if (s != Cyclotomic(want))
          fail("first-orthogonality", characters_[a].id + "," + characters_[b].id);
      }
    }
    // second orthogonality: sum_chi chi(c) conj(chi(c')) = delta |C_G(c)|
    for (int i = 0; i < class_count(); ++i) {
      for (int k = i; k < class_count(); ++k) {
        Cyclotomic s;
        for (const auto& ch : characters_) s = s + ch.values[i] * ch.values[k].conj();
        Rational want(i == k ? order_ / classes_[i].size : 0);
        if (s != Cyclotomic(want))
          fail("second-orthogonality", classes_[i].id + "," + classes_[k].id);
      }
    }
    // chi(g^p) = sigma_p(chi(g)) whenever p does not divide order(g)
    for (const auto& [p, pm] : power_) {
      for (int i = 0; i < class_count(); ++i) {
        if (classes_[i].element_order % p == 0) continue;
        for (const auto& ch : characters_) {
          if (!ch.values[i].galois_defined(p)) fail("galois-power", ch.id);
          if (ch.values[pm[i]] != ch.values[i].galois(p))
            fail("galois-power", ch.id + " at " + classes_[i].id + " p=" + std::to_string(p));
        }
      }
    }
  }
  // central classes: exactly the size-1 classes, with involutive inverse map
  for (int i = 0; i < class_count(); ++i) {
    bool listed = central_inverse_[i] >= 0;
    if (listed != (classes_[i].size == 1))
      fail("central-classes", classes_[i].id);
  }
  for (int z : central_indices_) {
    auto it = central_mult_.find(z);
    if (it == central_mult_.end()) fail("central-mult-presence", classes_[z].id);
    const auto& m = it->second;
    std::vector<int> seen(class_count(), 0);
    for (int v : m) seen[v]++;
    if (std::any_of(seen.begin(), seen.end(), [](int x) { return x != 1; }))
      fail("central-mult-bijectivity", classes_[z].id);
    if (m[central_inverse_[z]] != class_index("1a"))
      fail("central-inverse", classes_[z].id);
    // compatibility with power maps: (z g)^p = z^p g^p
    for (const auto& [p, pm] : power_) {
      int zp = pm[z];
      if (central_inverse_[zp] < 0) fail("central-classes", "power of central not central");
      if (!central_mult_.count(zp)) fail("central-mult-presence", classes_[zp].id);
      for (int i = 0; i < class_count(); ++i) {
        if (pm[m[i]] != central_mult_.at(zp)[pm[i]])
          fail("central-mult-power", classes_[z].id + "*" + classes_[i].id);
      }
    }
    if (deep) {
      // chi(z g) = (chi(z)/chi(1)) chi(g)
      for (const auto& ch : characters_) {
        Cyclotomic lam = ch.values[z].scale(Rational(1, ch.degree));
        for (int i = 0; i < class_count(); ++i)
          if (ch.values[m[i]] != lam * ch.values[i])
            fail("central-character", ch.id + " at " + classes_[z].id + "*" + classes_[i].id);
      }
    }
  }
  // brauer recipes
  for (const auto& t : brauer_) {
    for (const auto& d : t.differences) {
      const Character& a = character(d.plus);
      const Character& b = character(d.minus);
      if (a.degree - b.degree < 0) fail("brauer-degree", d.id);
    }
  }
  // quotient links: local structure only (cross checks need the quotient table)
  for (const auto& q : quotients_) {
    for (const auto& k : q.kernel_class_ids) {
      int i = class_index(k);
      if (classes_[i].size != 1) fail("kernel-central", k);
      if (q.fusion.at(k) != "1a") fail("kernel-fuses-to-identity", k);
    }
    for (const auto& c : classes_)
      if (!q.fusion.count(c.id)) fail("fusion-totality", c.id);
  }
}

void validate_quotient_link(const GroupData& g, const QuotientLink& link,
                            const GroupData& quotient) {
  if (quotient.name() != link.quotient_name)
    throw error(errc::config, "quotient group name mismatch: expected " + link.quotient_name +
                                  ", got " + quotient.name());
  long kernel = static_cast<long>(link.kernel_class_ids.size());
  if (g.order() != kernel * quotient.order())
    fail("fusion-size", "kernel size * quotient order != group order");
  // surjectivity + fiber size equation + order divisibility
  for (const auto& qc : quotient.classes()) {
    long tot = 0;
    for (const auto& c : g.classes()) {
      if (link.fusion.at(c.id) == qc.id) {
        tot += c.size;
        if (c.element_order % qc.element_order != 0) fail("fusion-order", c.id);
      }
    }
    if (tot == 0) fail("fusion-surjectivity", qc.id);
    if (tot != kernel * qc.size) fail("fusion-size", qc.id);
  }
  for (const auto& c : g.classes())
    if (!quotient.find_class(link.fusion.at(c.id))) fail("fusion-target", c.id);
}

std::string GroupData::serialize() const {
  ordered_json j;
  j["name"] = name_;
  j["order"] = order_;
  j["classes"] = ordered_json::array();
  for (const auto& c : classes_) {
    ordered_json cc;
    cc["id"] = c.id;
    cc["order"] = c.element_order;
    cc["size"] = c.size;
    j["classes"].push_back(std::move(cc));
  }
  j["power_maps"] = ordered_json::object();
  for (const auto& [p, pm] : power_) {
    ordered_json row;
    for (int i = 0; i < class_count(); ++i) row[classes_[i].id] = classes_[pm[i]].id;
    j["power_maps"][std::to_string(p)] = std::move(row);
  }
  j["central"] = ordered_json::object();
  j["central"]["classes"] = ordered_json::array();
  for (int z : central_indices_) {
    ordered_json pair = ordered_json::array();
    pair.push_back(classes_[z].id);
    pair.push_back(classes_[central_inverse_[z]].id);
    j["central"]["classes"].push_back(std::move(pair));
  }
  j["central"]["mult"] = ordered_json::object();
  for (int z : central_indices_) {
    ordered_json row;
    const auto& m = central_mult_.at(z);
    for (int i = 0; i < class_count(); ++i) row[classes_[i].id] = classes_[m[i]].id;
    j["central"]["mult"][classes_[z].id] = std::move(row);
  }
  j["characters"] = ordered_json::array();
  for (const auto& ch : characters_) {
    ordered_json cc;
    cc["id"] = ch.id;
    cc["degree"] = ch.degree;
    cc["values"] = ordered_json::array();
    for (const auto& v : ch.values) cc["values"].push_back(cyclotomic_to_json(v));
    j["characters"].push_back(std::move(cc));
  }
  if (!brauer_.empty()) {
    j["brauer"] = ordered_json::array();
    for (const auto& t : brauer_) {
      ordered_json bt;
      bt["p"] = t.p;
      bt["differences"] = ordered_json::array();
      for (const auto& d : t.differences) {
        ordered_json dd;
        dd["id"] = d.id;
        dd["plus"] = d.plus;
        dd["minus"] = d.minus;
        bt["differences"].push_back(std::move(dd));
      }
      j["brauer"].push_back(std::move(bt));
    }
  }
  if (!quotients_.empty()) {
    j["quotients"] = ordered_json::array();
    for (const auto& q : quotients_) {
      ordered_json qq;
      qq["name"] = q.quotient_name;
      qq["kernel"] = q.kernel_class_ids;
      ordered_json fus;
      for (const auto& c : classes_) fus[c.id] = q.fusion.at(c.id);
      qq["fusion"] = std::move(fus);
      j["quotients"].push_back(std::move(qq));
    }
  }
  return j.dump(1) + "\n";
}

}  // namespace zc1
