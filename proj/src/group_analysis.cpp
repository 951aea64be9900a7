#include "dcsym/group_analysis.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace dcsym {

GroupSamples::GroupSamples(const JetLayout& layout, std::uint64_t seed, int count, double tolerance)
    : layout_(layout), tolerance_(tolerance) {
  SampleDomain domain;
  if (layout.n_indep() == 1) {
    domain = ode_domain(layout.size());
  } else {
    std::vector<std::pair<double, double>> ranges(static_cast<size_t>(layout.size()), {-2.0, 2.0});
    ranges.back() = {0.1, 2.0};
    domain = SampleDomain::box(ranges);
  }
  for (int k = 0; k < count; ++k) points_.push_back(draw_sample(domain, seed, k, 0));
}

GroupElement GroupSamples::element(const ContactMap& map, const std::string& word) const {
  GroupElement g{map, word, {}};
  for (const auto& p : points_) g.values.push_back(map.evaluate<Complex>(p));
  return g;
}

GroupElement GroupSamples::identity() const { return {ContactMap::identity(layout_), "e", points_}; }

std::vector<std::vector<Complex>> GroupSamples::product_values(const GroupElement& a, const GroupElement& b) const {
  std::vector<std::vector<Complex>> out;
  for (const auto& v : b.values) out.push_back(a.map.evaluate<Complex>(v));
  return out;
}

GroupElement GroupSamples::product(const GroupElement& a, const GroupElement& b) const {
  const std::string word = a.word == "e" ? b.word : b.word == "e" ? a.word : a.word + "*" + b.word;
  return {compose(a.map, b.map), word, product_values(a, b)};
}

bool GroupSamples::equal(const std::vector<std::vector<Complex>>& a, const std::vector<std::vector<Complex>>& b) const {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t k = 0; k < a[i].size(); ++k)
      if (std::abs(a[i][k] - b[i][k]) > tolerance_ * (1.0 + std::abs(b[i][k]))) return false;
  }
  return true;
}

std::optional<int> element_order(const GroupSamples& samples, const GroupElement& g, int max_order) {
  std::vector<std::vector<Complex>> v = g.values;
  for (int m = 1; m <= max_order; ++m) {
    if (samples.is_identity(v)) return m;
    for (auto& point : v) point = g.map.evaluate<Complex>(point);
  }
  return std::nullopt;
}

CayleyTable closure_and_table(const GroupSamples& samples, const std::vector<ContactMap>& generators, int max_size) {
  std::vector<GroupElement> gens;
  for (const auto& g : generators) gens.push_back(samples.element(g, g.label));
  CayleyTable out;
  out.elements.push_back(samples.identity());
  auto find = [&](const std::vector<std::vector<Complex>>& values) {
    for (size_t k = 0; k < out.elements.size(); ++k)
      if (samples.equal(out.elements[k].values, values)) return static_cast<int>(k);
    return -1;
  };
  for (size_t next = 0; next < out.elements.size(); ++next) {
    for (const auto& g : gens) {
      const auto values = samples.product_values(g, out.elements[next]);
      if (find(values) >= 0) continue;
      if (static_cast<int>(out.elements.size()) >= max_size)
        throw UnboundedGroup("closure exceeds " + std::to_string(max_size) + " elements", out.elements.size() + 1);
      out.elements.push_back(samples.product(g, out.elements[next]));
    }
  }
  const size_t n = out.elements.size();
  out.table.assign(n, std::vector<int>(n, -1));
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) {
      const int idx = find(samples.product_values(out.elements[a], out.elements[b]));
      if (idx < 0) throw EvalError("product " + out.elements[a].word + " * " + out.elements[b].word + " left the closure");
      out.table[a][b] = idx;
    }
  out.abelian = true;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b) out.abelian = out.abelian && out.table[a][b] == out.table[b][a];
  for (size_t a = 0; a < n; ++a) {
    int power = static_cast<int>(a), order = 1;
    while (power != 0 && order <= static_cast<int>(n)) {
      power = out.table[a][static_cast<size_t>(power)];
      ++order;
    }
    out.orders.push_back(order);
    int inverse = -1;
    for (size_t b = 0; b < n; ++b)
      if (out.table[a][b] == 0) inverse = static_cast<int>(b);
    out.inverses.push_back(inverse);
  }
  return out;
}

bool CayleyTable::latin_square() const {
  const size_t n = table.size();
  for (size_t r = 0; r < n; ++r) {
    std::vector<bool> row(n, false), col(n, false);
    for (size_t c = 0; c < n; ++c) {
      const int x = table[r][c], y = table[c][r];
      if (x < 0 || y < 0 || row[static_cast<size_t>(x)] || col[static_cast<size_t>(y)]) return false;
      row[static_cast<size_t>(x)] = col[static_cast<size_t>(y)] = true;
    }
  }
  return true;
}

Fingerprint CayleyTable::fingerprint() const {
  Fingerprint f;
  f.order = static_cast<int>(elements.size());
  f.abelian = abelian;
  for (int o : orders) f.order_multiset[o]++;
  return f;
}

std::string Fingerprint::to_string() const {
  std::ostringstream os;
  os << "order " << order << ", " << (abelian ? "abelian" : "non-abelian") << ", element orders {";
  bool first = true;
  for (const auto& [o, count] : order_multiset) {
    os << (first ? "" : ",") << o << ":" << count;
    first = false;
  }
  os << "}";
  return os.str();
}

std::string Fingerprint::name() const {
  struct Known {
    int order;
    bool abelian;
    std::map<int, int> orders;
    const char* name;
  };
  static const std::vector<Known> known = {
      {1, true, {{1, 1}}, "trivial"},
      {2, true, {{1, 1}, {2, 1}}, "Z2"},
      {3, true, {{1, 1}, {3, 2}}, "Z3"},
      {4, true, {{1, 1}, {2, 1}, {4, 2}}, "Z4"},
      {4, true, {{1, 1}, {2, 3}}, "Z2xZ2"},
      {6, true, {{1, 1}, {2, 1}, {3, 2}, {6, 2}}, "Z6"},
      {6, false, {{1, 1}, {2, 3}, {3, 2}}, "S3"},
      {8, true, {{1, 1}, {2, 1}, {4, 2}, {8, 4}}, "Z8"},
      {8, true, {{1, 1}, {2, 3}, {4, 4}}, "Z4xZ2"},
      {8, true, {{1, 1}, {2, 7}}, "Z2xZ2xZ2"},
      {8, false, {{1, 1}, {2, 5}, {4, 2}}, "D4"},
      {8, false, {{1, 1}, {2, 1}, {4, 6}}, "Q8"},
  };
  for (const auto& k : known)
    if (k.order == order && k.abelian == abelian && k.orders == order_multiset) return k.name;
  return "";
}

std::string CayleyTable::to_text() const {
  const size_t n = elements.size();
  size_t width = 1;
  for (const auto& e : elements) width = std::max(width, e.word.size());
  std::ostringstream os;
  for (size_t k = 0; k < n; ++k)
    os << std::setw(3) << k << "  " << std::left << std::setw(static_cast<int>(width)) << elements[k].word << std::right
       << "  order " << orders[k] << "\n";
  os << "\n    |";
  for (size_t c = 0; c < n; ++c) os << std::setw(3) << c;
  os << "\n----+" << std::string(3 * n, '-') << "\n";
  for (size_t r = 0; r < n; ++r) {
    os << std::setw(3) << r << " |";
    for (size_t c = 0; c < n; ++c) os << std::setw(3) << table[r][c];
    os << "\n";
  }
  return os.str();
}

}  // namespace dcsym
