#include "hilbert/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hilbert {

std::size_t MonomialKeyHash::operator()(const MonomialKey& key) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto b : key) {
    h ^= b;
    h *= 1099511628211ull;
  }
  h ^= key.size();
  return static_cast<std::size_t>(h);
}

AlgebraKind::AlgebraKind(AlgebraFamily family, std::vector<int> groups)
    : family_(family), variables_(0), groups_(std::move(groups)) {
  if (groups_.empty()) throw std::invalid_argument("algebra needs at least one variable group");
  for (int g : groups_) {
    if (g < 1) throw std::invalid_argument("variable counts must be positive");
    variables_ += g;
  }
  if (variables_ > 255) throw std::invalid_argument("at most 255 variables are supported");
}

AlgebraKind AlgebraKind::commutative(int n) { return {AlgebraFamily::commutative, {n}}; }
AlgebraKind AlgebraKind::exterior(int n) { return {AlgebraFamily::exterior, {n}}; }
AlgebraKind AlgebraKind::tensor(int n) { return {AlgebraFamily::tensor, {n}}; }
AlgebraKind AlgebraKind::bigraded(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("bigraded ambient needs m, n >= 1");
  return {AlgebraFamily::multigraded, {m + 1, n + 1}};
}
AlgebraKind AlgebraKind::multigraded(std::vector<int> group_sizes) {
  return {AlgebraFamily::multigraded, std::move(group_sizes)};
}

int AlgebraKind::group_of(int variable) const {
  int start = 0;
  for (int g = 0; g < grading_rank(); ++g) {
    start += groups_[static_cast<std::size_t>(g)];
    if (variable < start) return g;
  }
  throw std::out_of_range("variable index out of range");
}

std::string AlgebraKind::name() const {
  switch (family_) {
    case AlgebraFamily::commutative:
      return "commutative(" + std::to_string(variables_) + ")";
    case AlgebraFamily::exterior:
      return "exterior(" + std::to_string(variables_) + ")";
    case AlgebraFamily::tensor:
      return "tensor(" + std::to_string(variables_) + ")";
    case AlgebraFamily::multigraded: {
      std::string s = "multigraded(";
      for (std::size_t g = 0; g < groups_.size(); ++g) {
        if (g) s += ",";
        s += std::to_string(groups_[g]);
      }
      return s + ")";
    }
  }
  return {};
}

bool degrevlex_greater(const MonomialKey& a, const MonomialKey& b) {
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Grade grade_of(const AlgebraKind& kind, const MonomialKey& key) {
  if (kind.family() == AlgebraFamily::tensor) return {static_cast<int>(key.size())};
  Grade g(static_cast<std::size_t>(kind.grading_rank()), 0);
  std::size_t v = 0;
  for (int group = 0; group < kind.grading_rank(); ++group) {
    for (int k = 0; k < kind.groups()[static_cast<std::size_t>(group)]; ++k, ++v) g[static_cast<std::size_t>(group)] += key[v];
  }
  return g;
}

namespace {

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void check_grade(const AlgebraKind& kind, const Grade& grade) {
  if (static_cast<int>(grade.size()) != kind.grading_rank()) {
    throw std::invalid_argument("grade has the wrong number of components for " + kind.name());
  }
  for (int g : grade) {
    if (g < 0) throw std::invalid_argument("grades must be non-negative");
  }
}

// Exponent vectors of total degree t in n variables, optionally capped at 1.
void enumerate_exponents(int n, int t, bool squarefree, std::vector<MonomialKey>& out) {
  MonomialKey cur(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == n - 1) {
      if (squarefree && left > 1) return;
      if (left > 255) throw std::invalid_argument("exponent exceeds 255");
      cur[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(left);
      out.push_back(cur);
      return;
    }
    const int top = squarefree ? std::min(left, 1) : left;
    for (int e = top; e >= 0; --e) {
      if (e > 255) continue;
      cur[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(e);
      self(self, var + 1, left - e);
    }
  };
  if (n == 0) {
    if (t == 0) out.emplace_back();
    return;
  }
  rec(rec, 0, t);
}

std::vector<MonomialKey> degrevlex_basis(int n, int t, bool squarefree) {
  std::vector<MonomialKey> out;
  enumerate_exponents(n, t, squarefree, out);
  std::sort(out.begin(), out.end(), [](const MonomialKey& a, const MonomialKey& b) { return degrevlex_greater(a, b); });
  return out;
}

}  // namespace

std::size_t basis_size(const AlgebraKind& kind, const Grade& grade) {
  check_grade(kind, grade);
  const auto n = static_cast<std::size_t>(kind.variables());
  const auto t = static_cast<std::size_t>(grade[0]);
  switch (kind.family()) {
    case AlgebraFamily::commutative:
      return binomial(n - 1 + t, t);
    case AlgebraFamily::exterior:
      return binomial(n, t);
    case AlgebraFamily::tensor: {
      std::size_t r = 1;
      for (std::size_t i = 0; i < t; ++i) {
        if (r > std::numeric_limits<std::size_t>::max() / n) throw std::overflow_error("tensor basis too large");
        r *= n;
      }
      return r;
    }
    case AlgebraFamily::multigraded: {
      std::size_t r = 1;
      for (std::size_t g = 0; g < grade.size(); ++g) {
        const auto size = static_cast<std::size_t>(kind.groups()[g]);
        r *= binomial(size - 1 + static_cast<std::size_t>(grade[g]), static_cast<std::size_t>(grade[g]));
      }
      return r;
    }
  }
  return 0;
}

std::vector<MonomialKey> monomial_basis(const AlgebraKind& kind, const Grade& grade) {
  check_grade(kind, grade);
  const int n = kind.variables();
  switch (kind.family()) {
    case AlgebraFamily::commutative:
      return degrevlex_basis(n, grade[0], false);
    case AlgebraFamily::exterior:
      return degrevlex_basis(n, grade[0], true);
    case AlgebraFamily::tensor: {
      const std::size_t count = basis_size(kind, grade);
      const auto t = static_cast<std::size_t>(grade[0]);
      std::vector<MonomialKey> out;
      out.reserve(count);
      MonomialKey word(t, 0);
      for (std::size_t i = 0; i < count; ++i) {
        out.push_back(word);
        for (std::size_t pos = t; pos-- > 0;) {
          if (++word[pos] < n) break;
          word[pos] = 0;
        }
      }
      return out;
    }
    case AlgebraFamily::multigraded: {
      std::vector<MonomialKey> out{MonomialKey{}};
      for (std::size_t g = 0; g < grade.size(); ++g) {
        const auto part = degrevlex_basis(kind.groups()[g], grade[g], false);
        std::vector<MonomialKey> next;
        next.reserve(out.size() * part.size());
        for (const auto& prefix : out) {
          for (const auto& p : part) {
            MonomialKey key = prefix;
            key.insert(key.end(), p.begin(), p.end());
            next.push_back(std::move(key));
          }
        }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

BasisIndex::BasisIndex(const AlgebraKind& kind, const Grade& grade) : monomials_(monomial_basis(kind, grade)) {
  index_.reserve(monomials_.size());
  for (std::size_t i = 0; i < monomials_.size(); ++i) index_.emplace(monomials_[i], static_cast<std::uint32_t>(i));
}

std::uint32_t BasisIndex::index(const MonomialKey& key) const {
  auto it = index_.find(key);
  if (it == index_.end()) throw std::out_of_range("monomial not in this graded piece");
  return it->second;
}

std::optional<std::pair<MonomialKey, int>> multiply_monomials(const AlgebraKind& kind, const MonomialKey& a,
                                                              const MonomialKey& b) {
  switch (kind.family()) {
    case AlgebraFamily::tensor: {
      MonomialKey w = a;
      w.insert(w.end(), b.begin(), b.end());
      return std::make_pair(std::move(w), 1);
    }
    case AlgebraFamily::exterior: {
      MonomialKey m(a.size(), 0);
      int inversions = 0;
      int above = 0;  // variables of a with index greater than the current one
      for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] && b[i]) return std::nullopt;
        if (b[i]) inversions += above;
        if (a[i]) ++above;
        m[i] = static_cast<std::uint8_t>(a[i] | b[i]);
      }
      return std::make_pair(std::move(m), inversions % 2 ? -1 : 1);
    }
    case AlgebraFamily::commutative:
    case AlgebraFamily::multigraded: {
      MonomialKey m(a.size(), 0);
      for (std::size_t i = 0; i < a.size(); ++i) {
        const int e = a[i] + b[i];
        if (e > 255) throw std::overflow_error("exponent exceeds 255");
        m[i] = static_cast<std::uint8_t>(e);
      }
      return std::make_pair(std::move(m), 1);
    }
  }
  return std::nullopt;
}

Form monomial_form(const AlgebraKind& kind, MonomialKey key, std::uint32_t coefficient) {
  Form f;
  f.grade = grade_of(kind, key);
  if (coefficient != 0) f.terms.emplace(std::move(key), coefficient);
  return f;
}

Form multiply(const AlgebraKind& kind, const PrimeField& field, const Form& a, const Form& b) {
  Form out;
  out.grade = a.grade;
  for (std::size_t i = 0; i < out.grade.size(); ++i) out.grade[i] += b.grade[i];
  for (const auto& [ka, ca] : a.terms) {
    for (const auto& [kb, cb] : b.terms) {
      auto prod = multiply_monomials(kind, ka, kb);
      if (!prod) continue;
      std::uint32_t c = field.mul(ca, cb);
      if (prod->second < 0) c = field.neg(c);
      auto [it, inserted] = out.terms.emplace(std::move(prod->first), c);
      if (!inserted) {
        it->second = field.add(it->second, c);
        if (it->second == 0) out.terms.erase(it);
      }
    }
  }
  return out;
}

Form power(const AlgebraKind& kind, const PrimeField& field, const Form& a, int exponent) {
  if (exponent < 1) throw std::invalid_argument("power exponent must be positive");
  Form out = a;
  for (int i = 1; i < exponent; ++i) out = multiply(kind, field, out, a);
  return out;
}

Form add_scaled(const PrimeField& field, const Form& a, const Form& b, std::uint32_t c) {
  if (a.grade != b.grade && !a.is_zero() && !b.is_zero()) throw std::invalid_argument("adding forms of different grades");
  Form out = a.is_zero() ? Form{b.grade, {}} : a;
  for (const auto& [k, v] : b.terms) {
    const std::uint32_t add = field.mul(v, c % field.prime());
    if (add == 0) continue;
    auto [it, inserted] = out.terms.emplace(k, add);
    if (!inserted) {
      it->second = field.add(it->second, add);
      if (it->second == 0) out.terms.erase(it);
    }
  }
  return out;
}

Form commutator(const AlgebraKind& kind, const PrimeField& field, const Form& a, const Form& b) {
  return add_scaled(field, multiply(kind, field, a, b), multiply(kind, field, b, a), field.prime() - 1);
}

std::string format_monomial(const AlgebraKind& kind, const MonomialKey& key) {
  std::string s;
  auto append = [&](const std::string& factor) {
    if (!s.empty()) s += "*";
    s += factor;
  };
  if (kind.family() == AlgebraFamily::tensor) {
    for (auto letter : key) append("x" + std::to_string(letter + 1));
  } else {
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (key[i] == 0) continue;
      std::string f = "x" + std::to_string(i + 1);
      if (key[i] > 1) f += "^" + std::to_string(key[i]);
      append(f);
    }
  }
  return s.empty() ? "1" : s;
}

std::string format_form(const AlgebraKind& kind, const PrimeField& field, const Form& form) {
  if (form.is_zero()) return "0";
  std::string s;
  for (const auto& [key, c] : form.terms) {
    const std::int64_t v = field.lift(c);
    const std::int64_t mag = v < 0 ? -v : v;
    if (s.empty()) {
      if (v < 0) s += "-";
    } else {
      s += v < 0 ? " - " : " + ";
    }
    const std::string mono = format_monomial(kind, key);
    if (mag != 1 || mono == "1") {
      s += std::to_string(mag);
      if (mono != "1") s += "*" + mono;
    } else {
      s += mono;
    }
  }
  return s;
}

namespace {

class FormParser {
 public:
  FormParser(const AlgebraKind& kind, const PrimeField& field, std::string_view text)
      : kind_(kind), field_(field), text_(text) {}

  Form parse() {
    Form total;
    bool have_total = false;
    skip_space();
    bool negative = false;
    if (peek() == '+' || peek() == '-') negative = get() == '-';
    while (true) {
      Form term = parse_term();
      if (negative) term = add_scaled(field_, Form{term.grade, {}}, term, field_.prime() - 1);
      if (have_total && term.grade != total.grade) throw error("polynomial is not homogeneous");
      total = have_total ? add_scaled(field_, total, term, 1) : term;
      have_total = true;
      skip_space();
      if (pos_ == text_.size()) break;
      const char c = get();
      if (c != '+' && c != '-') throw error("expected '+' or '-'");
      negative = c == '-';
    }
    return total;
  }

 private:
  Form parse_term() {
    std::uint32_t coefficient = 1;
    Form product;
    bool have_product = false;
    while (true) {
      skip_space();
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coefficient = field_.mul(coefficient, field_.reduce(parse_number()));
      } else if (peek() == 'x') {
        ++pos_;
        const std::uint64_t index = parse_number();
        if (index < 1 || index > static_cast<std::uint64_t>(kind_.variables())) throw error("variable index out of range");
        std::uint64_t exponent = 1;
        skip_space();
        if (peek() == '^') {
          ++pos_;
          skip_space();
          exponent = parse_number();
          if (exponent < 1 || exponent > 255) throw error("exponent out of range");
        }
        MonomialKey key;
        if (kind_.family() == AlgebraFamily::tensor) {
          key.assign(1, static_cast<std::uint8_t>(index - 1));
        } else {
          key.assign(static_cast<std::size_t>(kind_.variables()), 0);
          key[index - 1] = 1;
        }
        Form factor = power(kind_, field_, monomial_form(kind_, key), static_cast<int>(exponent));
        product = have_product ? multiply(kind_, field_, product, factor) : factor;
        have_product = true;
      } else {
        throw error("expected a number or a variable");
      }
      skip_space();
      if (peek() != '*') break;
      ++pos_;
    }
    if (!have_product) throw error("constant terms are not allowed");
    Form scaled{product.grade, {}};
    return add_scaled(field_, scaled, product, coefficient);
  }

  std::uint64_t parse_number() {
    skip_space();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) throw error("expected a number");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(get() - '0');
      if (v > (1ull << 40)) throw error("number too large");
    }
    return v;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  char get() { return text_[pos_++]; }
  std::invalid_argument error(const std::string& what) const {
    return std::invalid_argument("cannot parse form '" + std::string(text_) + "' at position " + std::to_string(pos_) +
                                 ": " + what);
  }

  const AlgebraKind& kind_;
  const PrimeField& field_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Form parse_form(const AlgebraKind& kind, const PrimeField& field, std::string_view text) {
  return FormParser(kind, field, text).parse();
}

}  // namespace hilbert
