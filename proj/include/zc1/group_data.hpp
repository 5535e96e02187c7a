#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zc1/cyclotomic.hpp"

namespace zc1 {

struct ConjClass {
  std::string id;      // short label, e.g. "8a"
  long element_order;  // order of the elements in the class
  long size;           // number of elements
};

struct Character {
  std::string id;
  long degree;
  std::vector<Cyclotomic> values;  // one per class, in class order
};

struct BrauerDifference {
  std::string id;
  std::string plus;
  std::string minus;
};

struct BrauerTable {
  long p;
  std::vector<BrauerDifference> differences;
};

struct QuotientLink {
  std::string quotient_name;
  std::vector<std::string> kernel_class_ids;   // classes of the central kernel N
  std::map<std::string, std::string> fusion;   // class id -> quotient class id
};

// Immutable class/character data for one finite group. Loaded from the JSON
// group format and fully validated; see docs/group-format.md.
class GroupData {
 public:
  static GroupData load_file(const std::string& path);
  static GroupData load_string(const std::string& text);
  std::string serialize() const;  // canonical JSON bytes

  const std::string& name() const { return name_; }
  long order() const { return order_; }
  long exponent() const { return exponent_; }

  const std::vector<ConjClass>& classes() const { return classes_; }
  int class_count() const { return static_cast<int>(classes_.size()); }
  int class_index(const std::string& id) const;  // throws on unknown id
  std::optional<int> find_class(const std::string& id) const;
  const ConjClass& cls(int i) const { return classes_[i]; }

  // class of g^p for g in class i and p one of the stored primes
  int power_map(long p, int i) const;
  // class of g^k for any k >= 0, via the prime power maps
  int power_class(int i, long k) const;

  const std::vector<Character>& characters() const { return characters_; }
  const Character& character(const std::string& id) const;

  bool is_central(int i) const { return central_inverse_[i] >= 0; }
  const std::vector<int>& central_class_indices() const { return central_indices_; }
  // class of z*g for z central class zi; identity of the data file
  int central_mult(int zi, int i) const;

  const std::vector<BrauerTable>& brauer_tables() const { return brauer_; }
  const std::vector<QuotientLink>& quotients() const { return quotients_; }

  // Classes of elements of order coprime to p, in table order.
  std::vector<int> p_regular_classes(long p) const;

  // (chi_plus - chi_minus) restricted to p-regular classes. Values are indexed
  // by the p-regular class list returned by p_regular_classes(p).
  Character brauer_from_ordinary_difference(long p, const std::string& plus,
                                            const std::string& minus) const;

  // Preimage classes of a quotient class under the fusion map, in table order.
  std::vector<std::string> fused_partition(const QuotientLink& link,
                                           const std::string& quotient_class) const;

  // Runs all structural validations; called by load. `deep` additionally
  // checks both orthogonality relations and Galois-power consistency.
  void validate(bool deep = true) const;

  friend void validate_quotient_link(const GroupData& g, const QuotientLink& link,
                                     const GroupData& quotient);

 private:
  std::string name_;
  long order_ = 0;
  long exponent_ = 1;
  std::vector<ConjClass> classes_;
  std::map<std::string, int> index_;
  std::map<long, std::vector<int>> power_;           // prime -> per-class image
  std::vector<Character> characters_;
  std::vector<int> central_indices_;
  std::vector<int> central_inverse_;                 // -1 if not central
  std::map<long, std::vector<int>> central_mult_;    // central idx -> permutation
  std::vector<BrauerTable> brauer_;
  std::vector<QuotientLink> quotients_;
};

// Cross-file checks for one quotient link: surjectivity, fiber sizes, order
// divisibility. Throws errc::validation on failure.
void validate_quotient_link(const GroupData& g, const QuotientLink& link,
                            const GroupData& quotient);

}  // namespace zc1
