#include "skewrad/finring.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_set>

#include "skewrad/error.hpp"

namespace skewrad {

namespace {

constexpr Int kMaxModulus = Int{1} << 31;

std::string gen_name(std::size_t i) { return "g" + std::to_string(i + 1); }

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return a * b;
}

std::uint64_t power_count(Int base, std::uint64_t exponent) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) r = saturating_mul(r, static_cast<std::uint64_t>(base));
  return r;
}

void require_count(std::uint64_t count, std::uint64_t cap, const std::string& what) {
  if (count > cap) {
    throw Error(ErrorCode::SizeCapExceeded,
                what + " has " + (count == std::numeric_limits<std::uint64_t>::max()
                                      ? std::string("too many")
                                      : std::to_string(count)) +
                    " elements, cap is " + std::to_string(cap));
  }
}

Element unit_vector(std::size_t k, std::size_t i, Int value = 1) {
  Element e(std::vector<Int>(k, 0));
  e.residues[i] = value;
  return e;
}

// Additive subgroup stored with an index set for O(1) membership.
class Subgroup {
 public:
  Subgroup(const FiniteRing& ring, std::uint64_t cap) : ring_(ring), cap_(cap) {
    if (ring.order() >= (std::uint64_t{1} << 62)) {
      throw Error(ErrorCode::SizeCapExceeded, "ring too large to index");
    }
    insert(ring.zero());
  }

  bool contains(const Element& a) const { return index_.count(ring_.index_of(a)) != 0; }

  // Returns true if the subgroup grew.
  bool add(const Element& y) {
    if (contains(y)) return false;
    std::vector<Element> multiples;
    Element cur = y;
    while (!contains(cur)) {
      multiples.push_back(cur);
      cur = ring_.add(cur, y);
    }
    require_count(saturating_mul(elements_.size(), multiples.size() + 1), cap_, "subgroup");
    const std::size_t base = elements_.size();
    for (const Element& m : multiples) {
      for (std::size_t i = 0; i < base; ++i) insert(ring_.add(elements_[i], m));
    }
    return true;
  }

  std::vector<Element> take() && { return std::move(elements_); }
  const std::vector<Element>& elements() const { return elements_; }

 private:
  void insert(Element a) {
    if (index_.insert(ring_.index_of(a)).second) elements_.push_back(std::move(a));
  }

  const FiniteRing& ring_;
  std::uint64_t cap_;
  std::vector<Element> elements_;
  std::unordered_set<std::uint64_t> index_;
};

std::vector<Element> additive_generators(const FiniteRing& ring, const ElementSet& set,
                                         std::uint64_t cap) {
  Subgroup span(ring, cap);
  std::vector<Element> gens;
  for (const Element& a : set) {
    if (span.add(a)) gens.push_back(a);
  }
  return gens;
}

}  // namespace

bool Element::is_zero() const {
  return std::all_of(residues.begin(), residues.end(), [](Int r) { return r == 0; });
}

FiniteRing FiniteRing::from_structure(std::vector<Int> moduli,
                                      std::vector<std::vector<Element>> table,
                                      std::optional<Element> unit,
                                      std::vector<std::string> labels) {
  const std::size_t k = moduli.size();
  FiniteRing ring;
  for (std::size_t i = 0; i < k; ++i) {
    if (moduli[i] < 1 || moduli[i] >= kMaxModulus) {
      throw Error(ErrorCode::ShapeError, "modulus of " + gen_name(i) + " must lie in [1, 2^31)");
    }
    ring.order_ = saturating_mul(ring.order_, static_cast<std::uint64_t>(moduli[i]));
    ring.exponent_ = lcm(ring.exponent_, moduli[i]);
  }
  if (table.size() != k) throw Error(ErrorCode::ShapeError, "table must have one row per generator");
  ring.moduli_ = std::move(moduli);
  for (std::size_t i = 0; i < k; ++i) {
    if (table[i].size() != k) throw Error(ErrorCode::ShapeError, "table must be square");
    for (std::size_t j = 0; j < k; ++j) {
      if (!ring.is_member(table[i][j])) {
        throw Error(ErrorCode::ShapeError, "entry " + gen_name(i) + "*" + gen_name(j) +
                                               " is not a reduced residue vector of length " +
                                               std::to_string(k));
      }
    }
  }
  ring.table_ = std::move(table);

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const Element& p = ring.table_[i][j];
      for (std::size_t c = 0; c < k; ++c) {
        const Int m = ring.moduli_[c];
        if (mul_mod(ring.moduli_[i], p.residues[c], m) != 0 ||
            mul_mod(ring.moduli_[j], p.residues[c], m) != 0) {
          throw Error(ErrorCode::OrderIncompatibility,
                      "witness (" + gen_name(i) + ", " + gen_name(j) + "): product " +
                          format_element(ring, p) + " is not killed by the generator orders");
        }
      }
    }
  }

  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) {
        const Element left = ring.mul(ring.table_[i][j], ring.generator(l));
        const Element right = ring.mul(ring.generator(i), ring.table_[j][l]);
        if (left != right) {
          throw Error(ErrorCode::AssociativityViolation,
                      "witness (" + gen_name(i) + ", " + gen_name(j) + ", " + gen_name(l) +
                          "): " + format_element(ring, left) + " != " +
                          format_element(ring, right));
        }
      }
    }
  }

  if (unit) {
    if (!ring.is_member(*unit)) throw Error(ErrorCode::ShapeError, "unit is not a reduced element");
    for (std::size_t i = 0; i < k; ++i) {
      const Element g = ring.generator(i);
      if (ring.mul(*unit, g) != g || ring.mul(g, *unit) != g) {
        throw Error(ErrorCode::ShapeError, "declared unit does not fix " + gen_name(i));
      }
    }
    ring.unit_ = std::move(unit);
  }

  if (!labels.empty()) {
    if (labels.size() != k) throw Error(ErrorCode::ShapeError, "need one label per generator");
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::ShapeError, "generator labels must be distinct");
    }
    ring.labels_ = std::move(labels);
  }
  return ring;
}

Element FiniteRing::zero() const { return Element(std::vector<Int>(rank(), 0)); }

Element FiniteRing::generator(std::size_t i) const {
  return unit_vector(rank(), i, mod(1, moduli_[i]));
}

Element FiniteRing::from_residues(std::vector<Int> residues) const {
  if (residues.size() != rank()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(rank()) + " residues");
  }
  for (std::size_t i = 0; i < rank(); ++i) residues[i] = mod(residues[i], moduli_[i]);
  return Element(std::move(residues));
}

bool FiniteRing::is_member(const Element& a) const {
  if (a.size() != rank()) return false;
  for (std::size_t i = 0; i < rank(); ++i) {
    if (a.residues[i] < 0 || a.residues[i] >= moduli_[i]) return false;
  }
  return true;
}

void FiniteRing::require_member(const Element& a) const {
  if (!is_member(a)) {
    throw Error(ErrorCode::DimensionMismatch, "element is not a reduced residue vector of length " +
                                                  std::to_string(rank()));
  }
}

Element FiniteRing::add(const Element& a, const Element& b) const {
  require_member(a);
  require_member(b);
  Element r{std::vector<Int>(rank())};
  for (std::size_t i = 0; i < rank(); ++i) {
    const Int s = a.residues[i] + b.residues[i];
    r.residues[i] = s >= moduli_[i] ? s - moduli_[i] : s;
  }
  return r;
}

Element FiniteRing::neg(const Element& a) const {
  require_member(a);
  Element r{std::vector<Int>(rank())};
  for (std::size_t i = 0; i < rank(); ++i) {
    r.residues[i] = a.residues[i] == 0 ? 0 : moduli_[i] - a.residues[i];
  }
  return r;
}

Element FiniteRing::sub(const Element& a, const Element& b) const { return add(a, neg(b)); }

Element FiniteRing::mul(const Element& a, const Element& b) const {
  require_member(a);
  require_member(b);
  const std::size_t k = rank();
  std::vector<Int> r(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (a.residues[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (b.residues[j] == 0) continue;
      const Element& t = table_[i][j];
      for (std::size_t c = 0; c < k; ++c) {
        if (t.residues[c] == 0) continue;
        const Int m = moduli_[c];
        const Int coeff = mul_mod(a.residues[i], b.residues[j], m);
        r[c] = mod(r[c] + mul_mod(coeff, t.residues[c], m), m);
      }
    }
  }
  return Element(std::move(r));
}

Element FiniteRing::scale(Int n, const Element& a) const {
  require_member(a);
  Element r{std::vector<Int>(rank())};
  for (std::size_t i = 0; i < rank(); ++i) {
    r.residues[i] = mul_mod(mod(n, moduli_[i]), a.residues[i], moduli_[i]);
  }
  return r;
}

Element FiniteRing::power(const Element& a, std::uint64_t n) const {
  if (n == 0) throw Error(ErrorCode::ShapeError, "a^0 is undefined in a non-unital ring");
  Element result = a;
  for (std::uint64_t i = 1; i < n; ++i) result = mul(result, a);
  return result;
}

bool FiniteRing::is_commutative() const {
  for (std::size_t i = 0; i < rank(); ++i) {
    for (std::size_t j = i + 1; j < rank(); ++j) {
      if (table_[i][j] != table_[j][i]) return false;
    }
  }
  return true;
}

std::uint64_t FiniteRing::index_of(const Element& a) const {
  require_member(a);
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < rank(); ++i) {
    idx = idx * static_cast<std::uint64_t>(moduli_[i]) + static_cast<std::uint64_t>(a.residues[i]);
  }
  return idx;
}

Element FiniteRing::element_at(std::uint64_t index) const {
  std::vector<Int> r(rank(), 0);
  for (std::size_t i = rank(); i-- > 0;) {
    const auto m = static_cast<std::uint64_t>(moduli_[i]);
    r[i] = static_cast<Int>(index % m);
    index /= m;
  }
  return Element(std::move(r));
}

void FiniteRing::require_order_at_most(std::uint64_t cap, const char* what) const {
  require_count(order_, cap, std::string("ring (") + what + ")");
}

std::vector<Element> FiniteRing::elements(std::uint64_t cap) const {
  require_order_at_most(cap, "enumeration");
  std::vector<Element> out;
  out.reserve(order_);
  for (std::uint64_t i = 0; i < order_; ++i) out.push_back(element_at(i));
  return out;
}

bool FiniteRing::verify_axioms_exhaustive(std::uint64_t cap) const {
  const auto all = elements(cap);
  for (const auto& a : all) {
    for (const auto& b : all) {
      const Element ab = mul(a, b);
      for (const auto& c : all) {
        if (mul(ab, c) != mul(a, mul(b, c))) return false;
        if (mul(a, add(b, c)) != add(ab, mul(a, c))) return false;
        if (mul(add(a, b), c) != add(mul(a, c), mul(b, c))) return false;
      }
    }
  }
  return true;
}

ElementSet::ElementSet(std::vector<Element> elements) : elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool ElementSet::contains(const Element& a) const {
  return std::binary_search(elements_.begin(), elements_.end(), a);
}

bool ElementSet::is_zero_set() const { return elements_.size() == 1 && elements_[0].is_zero(); }

bool ElementSet::subset_of(const ElementSet& other) const {
  return std::includes(other.elements_.begin(), other.elements_.end(), elements_.begin(),
                       elements_.end());
}

FiniteRing build_structure(std::vector<Int> moduli, std::vector<std::vector<Element>> table,
                           std::optional<Element> unit) {
  return FiniteRing::from_structure(std::move(moduli), std::move(table), std::move(unit));
}

FiniteRing build_zn(Int n, const Caps& caps) {
  if (n < 1) throw Error(ErrorCode::ShapeError, "Z_n needs n >= 1");
  require_count(static_cast<std::uint64_t>(n), caps.enumeration, "Z_n");
  Element one(std::vector<Int>{mod(1, n)});
  return FiniteRing::from_structure({n}, {{one}}, one);
}

FiniteRing build_matrix_ring(int n, Int m, const Caps& caps) {
  if (n < 1 || m < 2) throw Error(ErrorCode::ShapeError, "M_n(Z_m) needs n >= 1, m >= 2");
  require_count(power_count(m, static_cast<std::uint64_t>(n) * n), caps.enumeration, "M_n(Z_m)");
  const std::size_t k = static_cast<std::size_t>(n) * n;
  auto at = [n](int i, int j) { return static_cast<std::size_t>(i * n + j); };
  std::vector<std::vector<Element>> table(k, std::vector<Element>(k, Element(std::vector<Int>(k, 0))));
  std::vector<std::string> labels;
  Element unit(std::vector<Int>(k, 0));
  for (int i = 0; i < n; ++i) {
    unit.residues[at(i, i)] = 1;
    for (int j = 0; j < n; ++j) {
      if (n <= 9) labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      for (int l = 0; l < n; ++l) table[at(i, j)][at(j, l)] = unit_vector(k, at(i, l));
    }
  }
  return FiniteRing::from_structure(std::vector<Int>(k, m), std::move(table), std::move(unit),
                                    std::move(labels));
}

FiniteRing build_triangular_ring(int n, Int m, const Caps& caps) {
  if (n < 1 || m < 2) throw Error(ErrorCode::ShapeError, "T_n(Z_m) needs n >= 1, m >= 2");
  const std::size_t k = static_cast<std::size_t>(n) * (n + 1) / 2;
  require_count(power_count(m, k), caps.enumeration, "T_n(Z_m)");
  std::vector<std::vector<int>> pos(n, std::vector<int>(n, -1));
  std::vector<std::string> labels;
  int next = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      pos[i][j] = next++;
      if (n <= 9) labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  }
  std::vector<std::vector<Element>> table(k, std::vector<Element>(k, Element(std::vector<Int>(k, 0))));
  Element unit(std::vector<Int>(k, 0));
  for (int i = 0; i < n; ++i) {
    unit.residues[pos[i][i]] = 1;
    for (int j = i; j < n; ++j) {
      for (int l = j; l < n; ++l) table[pos[i][j]][pos[j][l]] = unit_vector(k, pos[i][l]);
    }
  }
  return FiniteRing::from_structure(std::vector<Int>(k, m), std::move(table), std::move(unit),
                                    std::move(labels));
}

FiniteRing build_truncated_poly(Int m, int e, const Caps& caps) {
  if (m < 2 || e < 1) throw Error(ErrorCode::ShapeError, "Z_m[t]/(t^e) needs m >= 2, e >= 1");
  require_count(power_count(m, static_cast<std::uint64_t>(e)), caps.enumeration, "Z_m[t]/(t^e)");
  const auto k = static_cast<std::size_t>(e);
  std::vector<std::vector<Element>> table(k, std::vector<Element>(k, Element(std::vector<Int>(k, 0))));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; i + j < k; ++j) table[i][j] = unit_vector(k, i + j);
  }
  return FiniteRing::from_structure(std::vector<Int>(k, m), std::move(table), unit_vector(k, 0));
}

FiniteRing build_product(const FiniteRing& left, const FiniteRing& right, const Caps& caps) {
  require_count(saturating_mul(left.order(), right.order()), caps.enumeration, "product ring");
  const std::size_t k1 = left.rank(), k2 = right.rank(), k = k1 + k2;
  std::vector<Int> moduli = left.moduli();
  moduli.insert(moduli.end(), right.moduli().begin(), right.moduli().end());
  std::vector<std::vector<Element>> table(k, std::vector<Element>(k, Element(std::vector<Int>(k, 0))));
  for (std::size_t i = 0; i < k1; ++i) {
    for (std::size_t j = 0; j < k1; ++j) {
      std::vector<Int> r = left.generator_product(i, j).residues;
      r.resize(k, 0);
      table[i][j] = Element(std::move(r));
    }
  }
  for (std::size_t i = 0; i < k2; ++i) {
    for (std::size_t j = 0; j < k2; ++j) {
      std::vector<Int> r(k1, 0);
      const Element& p = right.generator_product(i, j);
      r.insert(r.end(), p.residues.begin(), p.residues.end());
      table[k1 + i][k1 + j] = Element(std::move(r));
    }
  }
  std::optional<Element> unit;
  if (left.unit() && right.unit()) {
    std::vector<Int> r = left.unit()->residues;
    r.insert(r.end(), right.unit()->residues.begin(), right.unit()->residues.end());
    unit = Element(std::move(r));
  }
  std::vector<std::string> labels;
  if (!left.labels().empty() && !right.labels().empty()) {
    labels = left.labels();
    labels.insert(labels.end(), right.labels().begin(), right.labels().end());
    std::vector<std::string> sorted = labels;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) labels.clear();
  }
  return FiniteRing::from_structure(std::move(moduli), std::move(table), std::move(unit),
                                    std::move(labels));
}

Element embed_left(const FiniteRing& product, const FiniteRing& left, const Element& a) {
  left.require_member(a);
  std::vector<Int> r = a.residues;
  r.resize(std::max(product.rank(), left.rank()), 0);
  return Element(std::move(r));
}

Element embed_right(const FiniteRing& product, const FiniteRing& left, const Element& b) {
  std::vector<Int> r(left.rank(), 0);
  r.insert(r.end(), b.residues.begin(), b.residues.end());
  if (r.size() != product.rank()) {
    throw Error(ErrorCode::DimensionMismatch, "right factor element does not fit the product");
  }
  return Element(std::move(r));
}

ElementSet centre(const FiniteRing& ring, const Caps& caps) {
  std::vector<Element> out;
  for (Element& z : ring.elements(caps.enumeration)) {
    bool central = true;
    for (std::size_t i = 0; i < ring.rank() && central; ++i) {
      const Element g = ring.generator(i);
      central = ring.mul(z, g) == ring.mul(g, z);
    }
    if (central) out.push_back(std::move(z));
  }
  return ElementSet(std::move(out));
}

IdealSet ideal_closure(const FiniteRing& ring, const std::vector<Element>& gens, const Caps& caps) {
  Subgroup group(ring, caps.enumeration);
  std::deque<Element> work;
  std::vector<Element> kept;
  for (const Element& g : gens) {
    ring.require_member(g);
    if (!g.is_zero() && std::find(kept.begin(), kept.end(), g) == kept.end()) kept.push_back(g);
    if (group.add(g)) work.push_back(g);
  }
  while (!work.empty()) {
    const Element w = std::move(work.front());
    work.pop_front();
    for (std::size_t i = 0; i < ring.rank(); ++i) {
      const Element g = ring.generator(i);
      for (Element p : {ring.mul(g, w), ring.mul(w, g)}) {
        if (group.add(p)) work.push_back(std::move(p));
      }
    }
  }
  return IdealSet{ElementSet(std::move(group).take()), std::move(kept)};
}

bool is_ideal(const FiniteRing& ring, const ElementSet& set) {
  if (!set.contains(ring.zero())) return false;
  for (const Element& x : set) {
    if (!ring.is_member(x)) return false;
    if (!set.contains(ring.neg(x))) return false;
    for (std::size_t i = 0; i < ring.rank(); ++i) {
      const Element g = ring.generator(i);
      if (!set.contains(ring.mul(g, x)) || !set.contains(ring.mul(x, g))) return false;
    }
  }
  for (const Element& x : set) {
    for (const Element& y : set) {
      if (!set.contains(ring.add(x, y))) return false;
    }
  }
  return true;
}

IdealSet as_ideal(const FiniteRing& ring, const ElementSet& set, const Caps& caps) {
  if (!is_ideal(ring, set)) throw Error(ErrorCode::NotAnIdeal, "set is not a two-sided ideal");
  return IdealSet{set, additive_generators(ring, set, caps.enumeration)};
}

ElementSet additive_span(const FiniteRing& ring, const std::vector<Element>& gens, const Caps& caps) {
  Subgroup group(ring, caps.enumeration);
  for (const Element& g : gens) group.add(g);
  return ElementSet(std::move(group).take());
}

IdealSet ideal_product(const FiniteRing& ring, const IdealSet& a, const IdealSet& b, const Caps& caps) {
  const auto left = additive_generators(ring, a.elements, caps.enumeration);
  const auto right = additive_generators(ring, b.elements, caps.enumeration);
  std::vector<Element> products;
  for (const Element& x : left) {
    for (const Element& y : right) products.push_back(ring.mul(x, y));
  }
  IdealSet out = ideal_closure(ring, products, caps);
  out.generators = additive_generators(ring, out.elements, caps.enumeration);
  return out;
}

Element Quotient::project(const FiniteRing& source, const Element& a) const {
  source.require_member(a);
  const FiniteRing& q = *ring;
  std::vector<Int> r(q.rank(), 0);
  for (std::size_t t = 0; t < q.rank(); ++t) {
    const Int m = q.moduli()[t];
    for (std::size_t i = 0; i < source.rank(); ++i) {
      r[t] = mod(r[t] + mul_mod(a.residues[i], projection[i][t], m), m);
    }
  }
  return Element(std::move(r));
}

Element Quotient::lift(const FiniteRing& source, const Element& a) const {
  ring->require_member(a);
  Element out = source.zero();
  for (std::size_t t = 0; t < ring->rank(); ++t) {
    out = source.add(out, source.scale(a.residues[t], lifts[t]));
  }
  return out;
}

Quotient quotient_ring(const FiniteRing& ring, const IdealSet& ideal, const Caps& caps) {
  ring.require_order_at_most(caps.ideal, "quotient construction");
  if (!is_ideal(ring, ideal.elements)) throw Error(ErrorCode::NotAnIdeal, "cannot form R/I");
  const std::size_t k = ring.rank();

  IntMatrix relations;
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Int> row(k, 0);
    row[i] = ring.moduli()[i];
    relations.push_back(std::move(row));
  }
  for (const Element& g : additive_generators(ring, ideal.elements, caps.enumeration)) {
    relations.push_back(g.residues);
  }
  const Diagonalization diag = diagonalize(std::move(relations), k);

  Quotient out;
  std::vector<Int> moduli;
  std::vector<std::size_t> kept;
  for (std::size_t t = 0; t < k; ++t) {
    if (diag.diagonal[t] == 0) {
      throw Error(ErrorCode::InternalInconsistency, "quotient of a finite group came out infinite");
    }
    if (diag.diagonal[t] > 1) {
      kept.push_back(t);
      moduli.push_back(diag.diagonal[t]);
    }
  }
  const std::size_t q = kept.size();
  out.projection.assign(k, std::vector<Int>(q, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t s = 0; s < q; ++s) {
      out.projection[i][s] = mod(diag.column_transform[i][kept[s]], moduli[s]);
    }
  }
  for (std::size_t s = 0; s < q; ++s) {
    out.lifts.push_back(ring.from_residues(diag.inverse_column_transform[kept[s]]));
  }

  // Temporary ring carrying only the moduli so project() can be used to fill the table.
  std::vector<std::vector<Element>> zero_table(q, std::vector<Element>(q, Element(std::vector<Int>(q, 0))));
  out.ring = std::make_shared<const FiniteRing>(FiniteRing::from_structure(moduli, zero_table));
  std::vector<std::vector<Element>> table(q, std::vector<Element>(q));
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      table[a][b] = out.project(ring, ring.mul(out.lifts[a], out.lifts[b]));
    }
  }
  std::optional<Element> unit;
  if (ring.unit()) unit = out.project(ring, *ring.unit());
  out.ring = std::make_shared<const FiniteRing>(
      FiniteRing::from_structure(std::move(moduli), std::move(table), std::move(unit)));
  return out;
}

std::vector<IdealSet> enumerate_ideals(const FiniteRing& ring, const Caps& caps) {
  ring.require_order_at_most(caps.ideal, "ideal enumeration");
  const auto all = ring.elements(caps.ideal);
  std::map<std::vector<Element>, IdealSet> found;
  std::deque<IdealSet> work;
  IdealSet zero = ideal_closure(ring, {}, caps);
  found.emplace(zero.elements.elements(), zero);
  work.push_back(zero);
  while (!work.empty()) {
    const IdealSet current = std::move(work.front());
    work.pop_front();
    const auto base = additive_generators(ring, current.elements, caps.enumeration);
    for (const Element& a : all) {
      if (current.contains(a)) continue;
      std::vector<Element> gens = base;
      gens.push_back(a);
      IdealSet next = ideal_closure(ring, gens, caps);
      next.generators = additive_generators(ring, next.elements, caps.enumeration);
      if (found.count(next.elements.elements()) != 0) continue;
      require_count(found.size() + 1, caps.enumeration, "ideal lattice");
      found.emplace(next.elements.elements(), next);
      work.push_back(std::move(next));
    }
  }
  std::vector<IdealSet> out;
  for (auto& [key, ideal] : found) out.push_back(std::move(ideal));
  std::stable_sort(out.begin(), out.end(), [](const IdealSet& a, const IdealSet& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements.elements() < b.elements.elements();
  });
  return out;
}

std::string format_element(const FiniteRing& /*ring*/, const Element& a) {
  std::string out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Int c = a.residues[i];
    if (c == 0) continue;
    if (!out.empty()) out += " + ";
    if (c != 1) out += std::to_string(c);
    out += gen_name(i);
  }
  return out.empty() ? "0" : out;
}

}  // namespace skewrad
