#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcsym/contact_jets.hpp"

namespace dcsym {

/// Map together with its values at the shared sample points.
struct GroupElement {
  ContactMap map;
  std::string word;  // product of generator labels, "e" for the identity
  std::vector<std::vector<Complex>> values;
};

/// Shared sample points; elements are compared by their values there.
class GroupSamples {
 public:
  explicit GroupSamples(const JetLayout& layout, std::uint64_t seed = 42, int count = 8, double tolerance = 1e-9);

  GroupElement element(const ContactMap& map, const std::string& word) const;
  GroupElement identity() const;
  /// Values of a o b, obtained by evaluating a at the values of b.
  std::vector<std::vector<Complex>> product_values(const GroupElement& a, const GroupElement& b) const;
  GroupElement product(const GroupElement& a, const GroupElement& b) const;

  bool equal(const std::vector<std::vector<Complex>>& a, const std::vector<std::vector<Complex>>& b) const;
  bool equal(const GroupElement& a, const GroupElement& b) const { return equal(a.values, b.values); }
  bool is_identity(const std::vector<std::vector<Complex>>& v) const { return equal(v, points_); }

  const std::vector<std::vector<Complex>>& points() const { return points_; }
  const JetLayout& layout() const { return layout_; }

 private:
  JetLayout layout_;
  double tolerance_;
  std::vector<std::vector<Complex>> points_;
};

/// Smallest m <= max_order with g^m = identity at the samples.
std::optional<int> element_order(const GroupSamples& samples, const GroupElement& g, int max_order);

class UnboundedGroup : public std::runtime_error {
 public:
  UnboundedGroup(const std::string& message, std::size_t orbit_size)
      : std::runtime_error(message), orbit_size_(orbit_size) {}
  std::size_t orbit_size() const { return orbit_size_; }

 private:
  std::size_t orbit_size_;
};

struct Fingerprint {
  int order = 0;
  bool abelian = false;
  std::map<int, int> order_multiset;  // element order -> count

  std::string to_string() const;
  /// Name of a small group with this fingerprint, or empty.
  std::string name() const;
  bool operator==(const Fingerprint&) const = default;
};

struct CayleyTable {
  std::vector<GroupElement> elements;
  std::vector<std::vector<int>> table;  // table[a][b] = index of a o b
  std::vector<int> orders;
  std::vector<int> inverses;
  bool abelian = false;

  bool latin_square() const;
  Fingerprint fingerprint() const;
  std::string to_text() const;
};

/// Breadth-first closure under left multiplication by the generators.
CayleyTable closure_and_table(const GroupSamples& samples, const std::vector<ContactMap>& generators, int max_size);

}  // namespace dcsym
