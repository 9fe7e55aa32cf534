#include "skewrad/parse.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <set>

#include "skewrad/error.hpp"

namespace skewrad {

namespace {

constexpr std::size_t kMaxPolyDegree = 1 << 16;

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

class Cursor {
 public:
  Cursor(std::string_view text, int line, int first_column)
      : text_(text), line_(line), first_column_(first_column) {}

  void skip_ws() {
    while (pos_ < text_.size() && is_space(text_[pos_])) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool consume(char c) {
    if (peek() == c && pos_ < text_.size()) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!consume(c)) fail(std::string("expected '") + c + "'");
  }
  int column() {
    skip_ws();
    return first_column_ + static_cast<int>(pos_);
  }
  int line() const { return line_; }

  Int integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected an integer");
    Int value = 0;
    const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
    if (ec != std::errc() || ptr != text_.data() + pos_) {
      pos_ = start;
      fail("integer out of range");
    }
    return value;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !is_ident_start(text_[pos_])) fail("expected an identifier");
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string& message) {
    throw ParseError(line_, first_column_ + static_cast<int>(pos_), message);
  }

 private:
  std::string_view text_;
  int line_;
  int first_column_;
  std::size_t pos_ = 0;
};

// Signed sum of terms; stops before ')' or at end of input.
ElementLiteral read_element(Cursor& cur) {
  ElementLiteral lit;
  lit.line = cur.line();
  lit.column = cur.column();
  bool first = true;
  while (true) {
    Int sign = 1;
    if (cur.consume('-')) {
      sign = -1;
    } else if (!first) {
      if (!cur.consume('+')) cur.fail("expected '+' or '-'");
    }
    ElementLiteral::Term term;
    term.column = cur.column();
    const char c = cur.peek();
    if (is_digit(c)) {
      term.coefficient = cur.integer();
      if (is_ident_start(cur.peek())) term.name = cur.identifier();
    } else if (is_ident_start(c)) {
      term.name = cur.identifier();
    } else {
      cur.fail("expected an element term");
    }
    if (term.name.empty() && term.coefficient != 0) {
      cur.fail("a bare integer is only allowed for the zero element");
    }
    term.coefficient *= sign;
    lit.terms.push_back(std::move(term));
    first = false;
    const char next = cur.peek();
    if (next == '\0' || next == ')') break;
    if (next != '+' && next != '-') cur.fail("expected '+' or '-'");
  }
  return lit;
}

std::vector<Int> read_int_list(Cursor& cur) {
  std::vector<Int> out;
  if (cur.at_end()) return out;
  out.push_back(cur.integer());
  while (cur.consume(',')) out.push_back(cur.integer());
  if (!cur.at_end()) cur.fail("expected ',' or end of line");
  return out;
}

const std::set<std::string>& builder_kinds() {
  static const std::set<std::string> kinds{"zn", "matrix", "triangular", "truncpoly"};
  return kinds;
}

std::size_t expected_params(const std::string& kind) { return kind == "zn" ? 1 : 2; }

void check_kind_params(const std::string& kind, const std::vector<Int>& params, int line) {
  if (params.size() != expected_params(kind)) {
    throw ParseError(line, 1, "ring kind '" + kind + "' takes " +
                                  std::to_string(expected_params(kind)) + " parameter(s)");
  }
}

FiniteRing build_kind(const std::string& kind, const std::vector<Int>& p, const Caps& caps, int line) {
  auto as_int = [&](Int v) {
    if (v < 0 || v > (1 << 20)) throw ParseError(line, 1, "parameter out of range");
    return static_cast<int>(v);
  };
  if (kind == "zn") return build_zn(p[0], caps);
  if (kind == "matrix") return build_matrix_ring(as_int(p[0]), p[1], caps);
  if (kind == "triangular") return build_triangular_ring(as_int(p[0]), p[1], caps);
  return build_truncated_poly(p[0], as_int(p[1]), caps);
}

std::map<std::string, std::size_t> generator_names(const FiniteRing& ring) {
  std::map<std::string, std::size_t> names;
  for (std::size_t i = 0; i < ring.rank(); ++i) names["g" + std::to_string(i + 1)] = i;
  for (std::size_t i = 0; i < ring.labels().size(); ++i) names.emplace(ring.labels()[i], i);
  return names;
}

std::size_t resolve_generator(const std::map<std::string, std::size_t>& names, const std::string& name,
                              int line, int column) {
  const auto it = names.find(name);
  if (it == names.end()) throw ParseError(line, column, "unknown generator '" + name + "'");
  return it->second;
}

Element resolve_with(const FiniteRing& ring, const std::map<std::string, std::size_t>& names,
                     const ElementLiteral& lit) {
  Element out = ring.zero();
  for (const auto& term : lit.terms) {
    if (term.name.empty()) continue;
    const std::size_t g = resolve_generator(names, term.name, lit.line, term.column);
    out = ring.add(out, ring.scale(term.coefficient, ring.generator(g)));
  }
  return out;
}

struct Line {
  std::string_view text;
  int number;
  int column;  // column of text[0]
};

Line trim_line(std::string_view raw, int number) {
  const std::size_t hash = raw.find('#');
  if (hash != std::string_view::npos) raw = raw.substr(0, hash);
  std::size_t start = 0;
  while (start < raw.size() && is_space(raw[start])) ++start;
  std::size_t end = raw.size();
  while (end > start && is_space(raw[end - 1])) --end;
  return Line{raw.substr(start, end - start), number, static_cast<int>(start) + 1};
}

// Splits "key = value" at the first '='.
std::optional<std::pair<Line, Line>> split_assignment(const Line& line) {
  const std::size_t eq = line.text.find('=');
  if (eq == std::string_view::npos) return std::nullopt;
  Line key = trim_line(line.text.substr(0, eq), line.number);
  key.column += line.column - 1;
  Line value = trim_line(line.text.substr(eq + 1), line.number);
  value.column += line.column + static_cast<int>(eq);
  return std::make_pair(key, value);
}

}  // namespace

RingFile parse_ringfile(std::string_view text) {
  RingFile file;
  enum class Section { Ring, Structure, Derivation };
  Section section = Section::Ring;
  std::set<std::string> seen_sections;
  std::set<std::string> seen_keys;
  bool ring_header_allowed = true;
  std::set<std::pair<std::string, std::string>> seen_products;
  std::set<std::string> seen_images;

  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    ++number;
    const Line line = trim_line(text.substr(pos, nl - pos), number);
    pos = nl + 1;
    if (line.text.empty()) continue;

    if (line.text.front() == '[') {
      if (line.text.back() != ']') throw ParseError(number, line.column, "unterminated section header");
      Line name = trim_line(line.text.substr(1, line.text.size() - 2), number);
      const std::string header(name.text);
      if (header != "ring" && header != "structure" && header != "derivation") {
        throw ParseError(number, line.column, "unknown section '" + header + "'");
      }
      if (header == "ring" && !ring_header_allowed) {
        throw ParseError(number, line.column, "the ring section must come first and only once");
      }
      if (!seen_sections.insert(header).second) {
        throw ParseError(number, line.column, "duplicate section [" + header + "]");
      }
      ring_header_allowed = false;
      section = header == "ring" ? Section::Ring
                                 : header == "structure" ? Section::Structure : Section::Derivation;
      if (section == Section::Derivation) {
        file.derivation = DerivationSpec{};
        file.derivation->line = number;
      }
      continue;
    }
    ring_header_allowed = false;

    if (section == Section::Ring) {
      const auto kv = split_assignment(line);
      if (!kv) throw ParseError(number, line.column, "expected 'key = value'");
      const auto& [key_line, value_line] = *kv;
      const std::string key(key_line.text);
      Cursor value(value_line.text, number, value_line.column);
      if (key != "ring.factor" && !seen_keys.insert(key).second) {
        throw ParseError(number, key_line.column, "duplicate key '" + key + "'");
      }
      if (key == "ring.kind") {
        Cursor cur(value_line.text, number, value_line.column);
        file.ring.kind = cur.identifier();
        if (!cur.at_end()) cur.fail("unexpected text after ring kind");
        if (!builder_kinds().count(file.ring.kind) && file.ring.kind != "product" &&
            file.ring.kind != "structure") {
          throw ParseError(number, value_line.column, "unknown ring kind '" + file.ring.kind + "'");
        }
        file.ring.line = number;
      } else if (key == "ring.params") {
        file.ring.params = read_int_list(value);
      } else if (key == "ring.factor") {
        FactorSpec factor;
        factor.line = number;
        factor.kind = value.identifier();
        if (!builder_kinds().count(factor.kind)) {
          throw ParseError(number, value_line.column, "unknown factor kind '" + factor.kind + "'");
        }
        value.expect(':');
        factor.params = read_int_list(value);
        check_kind_params(factor.kind, factor.params, number);
        file.ring.factors.push_back(std::move(factor));
      } else if (key == "ring.unit") {
        file.ring.unit = read_element(value);
        if (!value.at_end()) value.fail("unexpected text after element");
      } else if (key == "ring.labels") {
        std::set<std::string> distinct;
        file.ring.labels.push_back(value.identifier());
        while (value.consume(',')) file.ring.labels.push_back(value.identifier());
        if (!value.at_end()) value.fail("expected ',' or end of line");
        for (const auto& l : file.ring.labels) {
          if (!distinct.insert(l).second) throw ParseError(number, value_line.column, "duplicate label '" + l + "'");
        }
      } else {
        throw ParseError(number, key_line.column, "unknown key '" + key + "'");
      }
    } else if (section == Section::Structure) {
      const auto kv = split_assignment(line);
      if (!kv) throw ParseError(number, line.column, "expected 'gi*gj = element'");
      Cursor lhs(kv->first.text, number, kv->first.column);
      StructureEntry entry;
      entry.line = number;
      entry.column = kv->first.column;
      entry.left = lhs.identifier();
      lhs.expect('*');
      entry.right = lhs.identifier();
      if (!lhs.at_end()) lhs.fail("expected end of product");
      if (!seen_products.insert({entry.left, entry.right}).second) {
        throw ParseError(number, entry.column, "product " + entry.left + "*" + entry.right + " given twice");
      }
      Cursor rhs(kv->second.text, number, kv->second.column);
      entry.value = read_element(rhs);
      if (!rhs.at_end()) rhs.fail("unexpected text after element");
      file.ring.structure.push_back(std::move(entry));
    } else {
      DerivationSpec& spec = *file.derivation;
      const bool empty_so_far = !spec.inner && spec.images.empty() && spec.kind == DerivationSpec::Kind::Zero &&
                                seen_images.count("<zero>") == 0;
      if (line.text == "zero") {
        if (!empty_so_far) throw ParseError(number, line.column, "'zero' must be the only derivation line");
        seen_images.insert("<zero>");
        spec.kind = DerivationSpec::Kind::Zero;
        continue;
      }
      const auto kv = split_assignment(line);
      if (!kv) throw ParseError(number, line.column, "expected 'zero', 'inner = element' or 'D(g) = element'");
      Cursor lhs(kv->first.text, number, kv->first.column);
      Cursor rhs(kv->second.text, number, kv->second.column);
      const std::string head = lhs.identifier();
      if (head == "inner") {
        if (!lhs.at_end()) lhs.fail("unexpected text after 'inner'");
        if (!empty_so_far) throw ParseError(number, line.column, "'inner' must be the only derivation line");
        spec.kind = DerivationSpec::Kind::Inner;
        spec.inner = read_element(rhs);
      } else if (head == "D") {
        if (spec.kind == DerivationSpec::Kind::Inner || seen_images.count("<zero>") != 0) {
          throw ParseError(number, line.column, "cannot mix generator images with 'zero' or 'inner'");
        }
        lhs.expect('(');
        const std::string gen = lhs.identifier();
        lhs.expect(')');
        if (!lhs.at_end()) lhs.fail("unexpected text after D(...)");
        if (!seen_images.insert(gen).second) throw ParseError(number, line.column, "D(" + gen + ") given twice");
        spec.kind = DerivationSpec::Kind::Images;
        spec.images.emplace_back(gen, read_element(rhs));
      } else {
        throw ParseError(number, line.column, "expected 'zero', 'inner = element' or 'D(g) = element'");
      }
      if (!rhs.at_end()) rhs.fail("unexpected text after element");
    }
  }

  const int kind_line = file.ring.line == 0 ? 1 : file.ring.line;
  if (file.ring.kind.empty()) throw ParseError(std::max(number, 1), 1, "missing ring.kind");
  const std::string& kind = file.ring.kind;
  if (builder_kinds().count(kind)) {
    check_kind_params(kind, file.ring.params, kind_line);
  } else if (kind == "structure") {
    if (file.ring.params.empty()) throw ParseError(kind_line, 1, "structure rings need ring.params = moduli");
  } else if (kind == "product") {
    if (!file.ring.params.empty()) throw ParseError(kind_line, 1, "product rings take ring.factor lines, not params");
    if (file.ring.factors.size() < 2) throw ParseError(kind_line, 1, "product rings need at least two ring.factor lines");
  }
  if (kind != "product" && !file.ring.factors.empty()) {
    throw ParseError(file.ring.factors.front().line, 1, "ring.factor is only valid for product rings");
  }
  if (kind != "structure" && (seen_sections.count("structure") || file.ring.unit)) {
    throw ParseError(kind_line, 1, "[structure] and ring.unit are only valid for structure rings");
  }
  return file;
}

LoadedRing load_ringfile(const RingFile& file, const Caps& caps) {
  const RingSpec& spec = file.ring;
  std::optional<FiniteRing> built;
  if (builder_kinds().count(spec.kind)) {
    built = build_kind(spec.kind, spec.params, caps, spec.line);
  } else if (spec.kind == "product") {
    built = build_kind(spec.factors[0].kind, spec.factors[0].params, caps, spec.factors[0].line);
    for (std::size_t i = 1; i < spec.factors.size(); ++i) {
      const FiniteRing next = build_kind(spec.factors[i].kind, spec.factors[i].params, caps, spec.factors[i].line);
      built = build_product(*built, next, caps);
    }
  } else {
    const std::vector<Int>& moduli = spec.params;
    const std::size_t k = moduli.size();
    std::uint64_t order = 1;
    for (Int m : moduli) {
      if (m < 1) throw ParseError(spec.line, 1, "moduli must be positive");
      order *= static_cast<std::uint64_t>(std::min<Int>(m, Int{1} << 31));
      if (order > caps.enumeration) throw Error(ErrorCode::SizeCapExceeded, "structure ring exceeds the element cap");
    }
    std::map<std::string, std::size_t> names;
    for (std::size_t i = 0; i < k; ++i) names["g" + std::to_string(i + 1)] = i;
    for (std::size_t i = 0; i < spec.labels.size() && spec.labels.size() == k; ++i) names.emplace(spec.labels[i], i);
    // element literals are resolved against a ring carrying only the moduli
    std::vector<std::vector<Element>> zeros(k, std::vector<Element>(k, Element(std::vector<Int>(k, 0))));
    const FiniteRing carrier = FiniteRing::from_structure(moduli, zeros);
    auto table = zeros;
    for (const StructureEntry& e : spec.structure) {
      const std::size_t i = resolve_generator(names, e.left, e.line, e.column);
      const std::size_t j = resolve_generator(names, e.right, e.line, e.column);
      table[i][j] = resolve_with(carrier, names, e.value);
    }
    std::optional<Element> unit;
    if (spec.unit) unit = resolve_with(carrier, names, *spec.unit);
    built = FiniteRing::from_structure(moduli, std::move(table), std::move(unit));
  }

  if (!spec.labels.empty()) {
    if (spec.labels.size() != built->rank()) {
      throw ParseError(spec.line, 1, "ring.labels needs " + std::to_string(built->rank()) + " names");
    }
    for (const std::string& l : spec.labels) {
      if (l.size() > 1 && l[0] == 'g' && std::all_of(l.begin() + 1, l.end(), is_digit)) {
        throw ParseError(spec.line, 1, "label '" + l + "' collides with canonical generator names");
      }
    }
    std::vector<std::vector<Element>> table(built->rank());
    for (std::size_t i = 0; i < built->rank(); ++i) {
      for (std::size_t j = 0; j < built->rank(); ++j) table[i].push_back(built->generator_product(i, j));
    }
    built = FiniteRing::from_structure(built->moduli(), std::move(table), built->unit(), spec.labels);
  }

  LoadedRing out;
  out.ring = std::make_shared<const FiniteRing>(std::move(*built));
  const FiniteRing& ring = *out.ring;
  const auto names = generator_names(ring);
  if (!file.derivation || file.derivation->kind == DerivationSpec::Kind::Zero) {
    out.derivation = std::make_shared<const Derivation>(zero_derivation(out.ring));
  } else if (file.derivation->kind == DerivationSpec::Kind::Inner) {
    out.derivation = std::make_shared<const Derivation>(
        inner_derivation(out.ring, resolve_with(ring, names, *file.derivation->inner)));
  } else {
    std::vector<Element> images(ring.rank(), ring.zero());
    for (const auto& [gen, lit] : file.derivation->images) {
      images[resolve_generator(names, gen, lit.line, 1)] = resolve_with(ring, names, lit);
    }
    out.derivation = std::make_shared<const Derivation>(make_derivation(out.ring, std::move(images)));
  }
  return out;
}

ElementLiteral parse_element_literal(std::string_view text) {
  Cursor cur(text, 1, 1);
  ElementLiteral lit = read_element(cur);
  if (!cur.at_end()) cur.fail("unexpected text after element");
  return lit;
}

Element resolve_element(const FiniteRing& ring, const ElementLiteral& literal) {
  return resolve_with(ring, generator_names(ring), literal);
}

Element parse_element(const FiniteRing& ring, std::string_view text) {
  return resolve_element(ring, parse_element_literal(text));
}

SkewPoly parse_poly(std::string_view text, const DerivationPtr& context) {
  const FiniteRing& ring = context->ring();
  const auto names = generator_names(ring);
  Cursor cur(text, 1, 1);
  if (cur.peek() == '0') {
    cur.integer();
    if (!cur.at_end()) cur.fail("unexpected text after '0'");
    return SkewPoly::zero(context);
  }
  std::vector<Element> coeffs;
  while (true) {
    std::size_t degree = 0;
    if (cur.consume('x')) {
      degree = 1;
      if (cur.consume('^')) {
        const Int d = cur.integer();
        if (d > static_cast<Int>(kMaxPolyDegree)) cur.fail("degree too large");
        degree = static_cast<std::size_t>(d);
      }
      cur.expect('*');
      cur.expect('(');
    } else if (!cur.consume('(')) {
      cur.fail("expected 'x^n*(...)', 'x*(...)' or '(...)'");
    }
    const ElementLiteral lit = read_element(cur);
    cur.expect(')');
    if (coeffs.size() <= degree) coeffs.resize(degree + 1, ring.zero());
    coeffs[degree] = ring.add(coeffs[degree], resolve_with(ring, names, lit));
    if (cur.at_end()) break;
    cur.expect('+');
  }
  return SkewPoly(context, std::move(coeffs));
}

MultilinearIdentity parse_identity(std::string_view text) {
  Cursor cur(text, 1, 1);
  MultilinearIdentity f;
  std::vector<std::vector<std::size_t>> vars;
  std::vector<int> columns;
  bool first = true;
  while (true) {
    Int sign = 1;
    if (cur.consume('-')) {
      sign = -1;
    } else if (!cur.consume('+') && !first) {
      cur.fail("expected '+' or '-'");
    }
    columns.push_back(cur.column());
    Int coeff = 1;
    if (is_digit(cur.peek())) {
      coeff = cur.integer();
      cur.consume('*');
    }
    std::vector<std::size_t> term;
    do {
      cur.expect('x');
      const Int idx = cur.integer();
      if (idx < 1 || idx > 12) cur.fail("variable index must lie in 1..12");
      term.push_back(static_cast<std::size_t>(idx - 1));
    } while (cur.consume('*'));
    f.terms.push_back({{}, sign * coeff});
    vars.push_back(std::move(term));
    first = false;
    if (cur.at_end()) break;
  }
  std::size_t arity = 0;
  for (const auto& t : vars) {
    for (std::size_t v : t) arity = std::max(arity, v + 1);
  }
  f.arity = arity;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::vector<std::size_t> sorted = vars[i];
    std::sort(sorted.begin(), sorted.end());
    bool perm = sorted.size() == arity;
    for (std::size_t j = 0; perm && j < sorted.size(); ++j) perm = sorted[j] == j;
    if (!perm) throw ParseError(1, columns[i], "term is not multilinear in x1..x" + std::to_string(arity));
    f.terms[i].permutation = std::move(vars[i]);
  }
  return f;
}

}  // namespace skewrad
