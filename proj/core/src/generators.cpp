#include "hilbert/generators.hpp"

#include <bit>
#include <cctype>
#include <charconv>
#include <random>
#include <stdexcept>
#include <type_traits>

namespace hilbert {

namespace {

constexpr int kRedraws = 32;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Realizer {
 public:
  Realizer(const AlgebraKind& kind, const PrimeField& field, std::uint64_t seed)
      : kind_(kind), field_(field), rng_(seed) {}

  void realize(const GeneratorSpec& spec, std::vector<Form>& out) {
    std::visit(overloaded{
                   [&](const Generic& g) { out.push_back(redrawn([&] { return random_form(g.grade); })); },
                   [&](const PowerOfGeneric& g) {
                     require_single_graded("generic powers");
                     out.push_back(redrawn([&] { return power(kind_, field_, random_form({g.degree}), g.exponent); }));
                   },
                   [&](const ProductOfGenerics& g) {
                     require_single_graded("generic products");
                     out.push_back(redrawn([&] {
                       Form f = random_form({g.degrees.at(0)});
                       for (std::size_t i = 1; i < g.degrees.size(); ++i) {
                         f = multiply(kind_, field_, f, random_form({g.degrees[i]}));
                       }
                       return f;
                     }));
                   },
                   [&](const ProductOfLinearPowers& g) {
                     require_single_graded("products of linear powers");
                     out.push_back(redrawn([&] {
                       Form f = power(kind_, field_, random_form({1}), g.exponents.at(0));
                       for (std::size_t i = 1; i < g.exponents.size(); ++i) {
                         f = multiply(kind_, field_, f, power(kind_, field_, random_form({1}), g.exponents[i]));
                       }
                       return f;
                     }));
                   },
                   [&](const PowerOfLinear& g) {
                     require_single_graded("linear powers");
                     out.push_back(redrawn([&] { return power(kind_, field_, random_form({1}), g.degree); }));
                   },
                   [&](const VariablePower& g) {
                     out.push_back(nonzero(power(kind_, field_, variable(g.variable), g.degree), "variable power"));
                   },
                   [&](const SumOddVariables& g) {
                     require_single_graded("sums of variables");
                     if (g.subset.size() % 2 == 0) throw std::invalid_argument("odd sums need an odd number of variables");
                     Form l;
                     for (int v : g.subset) l = add_scaled(field_, l, variable(v), 1);
                     out.push_back(nonzero(power(kind_, field_, l, g.degree), "odd sum power"));
                   },
                   [&](const SignedSumPower& g) {
                     require_single_graded("signed sums");
                     Form l = variable(0);
                     for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(kind_.variables()); ++i) {
                       const int s = i < g.signs.size() ? g.signs[i] : 1;
                       l = add_scaled(field_, l, variable(static_cast<int>(i) + 1), s < 0 ? field_.prime() - 1 : 1);
                     }
                     out.push_back(nonzero(power(kind_, field_, l, g.degree), "signed sum power"));
                   },
                   [&](const LieQuadratic&) {
                     require_tensor("Lie elements");
                     out.push_back(redrawn([&] {
                       Form f{{2}, {}};
                       for (int i = 0; i < kind_.variables(); ++i) {
                         for (int j = i + 1; j < kind_.variables(); ++j) {
                           f = add_scaled(field_, f, commutator(kind_, field_, variable(i), variable(j)), draw());
                         }
                       }
                       return f;
                     }));
                   },
                   [&](const Commutator& g) {
                     require_tensor("commutators");
                     if (g.i == g.j) throw std::invalid_argument("commutator of a variable with itself is zero");
                     out.push_back(commutator(kind_, field_, variable(g.i), variable(g.j)));
                   },
                   [&](const Explicit& g) {
                     if (static_cast<int>(g.form.grade.size()) != kind_.grading_rank()) {
                       throw std::invalid_argument("explicit form does not fit " + kind_.name());
                     }
                     out.push_back(nonzero(g.form, "explicit form"));
                   },
                   [&](const IdealPower& g) {
                     if (g.power < 1) throw std::invalid_argument("ideal power must be positive");
                     std::vector<Form> base;
                     for (const auto& s : g.inner) realize(s, base);
                     if (base.empty()) throw std::invalid_argument("ideal power of the zero ideal");
                     std::vector<std::size_t> pick(static_cast<std::size_t>(g.power), 0);
                     while (true) {
                       Form f = base[pick[0]];
                       for (std::size_t i = 1; i < pick.size(); ++i) f = multiply(kind_, field_, f, base[pick[i]]);
                       if (!f.is_zero()) out.push_back(std::move(f));
                       // Next non-decreasing index tuple.
                       std::size_t pos = pick.size();
                       while (pos > 0 && pick[pos - 1] == base.size() - 1) --pos;
                       if (pos == 0) break;
                       const std::size_t v = ++pick[pos - 1];
                       for (std::size_t i = pos; i < pick.size(); ++i) pick[i] = v;
                     }
                   },
               },
               spec.value);
  }

 private:
  std::uint32_t draw() { return static_cast<std::uint32_t>(rng_() % field_.prime()); }

  Form random_form(const Grade& grade) {
    if (static_cast<int>(grade.size()) != kind_.grading_rank()) {
      throw std::invalid_argument("generator grade does not fit " + kind_.name());
    }
    const auto basis = monomial_basis(kind_, grade);
    if (basis.empty()) throw std::invalid_argument("no forms of this degree in " + kind_.name());
    Form f;
    f.grade = grade;
    for (const auto& m : basis) {
      const std::uint32_t c = draw();
      if (c != 0) f.terms.emplace(m, c);
    }
    return f;
  }

  Form variable(int v) {
    if (v < 0 || v >= kind_.variables()) throw std::invalid_argument("variable index out of range");
    MonomialKey key;
    if (kind_.family() == AlgebraFamily::tensor) {
      key.assign(1, static_cast<std::uint8_t>(v));
    } else {
      key.assign(static_cast<std::size_t>(kind_.variables()), 0);
      key[static_cast<std::size_t>(v)] = 1;
    }
    return monomial_form(kind_, key);
  }

  template <class F>
  Form redrawn(F make) {
    for (int attempt = 0; attempt < kRedraws; ++attempt) {
      Form f = make();
      if (!f.is_zero()) return f;
    }
    throw std::runtime_error("random generator came out zero after repeated draws in " + kind_.name());
  }

  Form nonzero(Form f, const char* what) {
    if (f.is_zero()) throw std::invalid_argument(std::string(what) + " is zero in " + kind_.name());
    return f;
  }

  void require_single_graded(const char* what) {
    if (kind_.grading_rank() != 1) throw std::invalid_argument(std::string(what) + " need a singly graded algebra");
  }
  void require_tensor(const char* what) {
    if (kind_.family() != AlgebraFamily::tensor) throw std::invalid_argument(std::string(what) + " need the tensor algebra");
  }

  const AlgebraKind& kind_;
  const PrimeField& field_;
  std::mt19937_64 rng_;
};

}  // namespace

GeneratorSpec generic(int degree) { return {Generic{{degree}}}; }
GeneratorSpec generic(Grade grade) { return {Generic{std::move(grade)}}; }

std::string describe(const GeneratorSpec& spec) {
  auto join = [](const std::vector<int>& v, const char* sep, int offset) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += sep;
      s += std::to_string(v[i] + offset);
    }
    return s;
  };
  return std::visit(
      overloaded{
          [&](const Generic& g) { return "generic:" + join(g.grade, "/", 0); },
          [&](const PowerOfGeneric& g) {
            return "genpow:" + std::to_string(g.degree) + "^" + std::to_string(g.exponent);
          },
          [&](const ProductOfGenerics& g) { return "prodgen:" + join(g.degrees, "+", 0); },
          [&](const ProductOfLinearPowers& g) { return "prodlin:" + join(g.exponents, "+", 0); },
          [&](const PowerOfLinear& g) { return "linpow:" + std::to_string(g.degree); },
          [&](const VariablePower& g) {
            return "varpow:" + std::to_string(g.degree) + "@" + std::to_string(g.variable + 1);
          },
          [&](const SumOddVariables& g) { return "oddsum:" + std::to_string(g.degree) + "@" + join(g.subset, "+", 1); },
          [&](const SignedSumPower& g) {
            std::string signs;
            for (int s : g.signs) signs += s < 0 ? '-' : '+';
            return "signedsum:" + std::to_string(g.degree) + "@" + signs;
          },
          [&](const LieQuadratic&) { return std::string("lie:2"); },
          [&](const Commutator& g) { return "commutator:" + std::to_string(g.i + 1) + "-" + std::to_string(g.j + 1); },
          [&](const Explicit& g) { return "explicit:" + g.text; },
          [&](const IdealPower& g) {
            return "idealpow:s=" + std::to_string(g.power) + "(" + describe(g.inner) + ")";
          },
      },
      spec.value);
}

std::string describe(const std::vector<GeneratorSpec>& specs) {
  std::string out;
  for (std::size_t i = 0; i < specs.size();) {
    const std::string term = describe(specs[i]);
    std::size_t j = i + 1;
    while (j < specs.size() && describe(specs[j]) == term) ++j;
    if (!out.empty()) out += ",";
    out += term;
    // Explicit forms end in a variable name, so a count would be ambiguous.
    if (j - i > 1 && !std::holds_alternative<Explicit>(specs[i].value)) {
      out += "x" + std::to_string(j - i);
    } else {
      for (std::size_t k = i + 1; k < j; ++k) out += "," + term;
    }
    i = j;
  }
  return out;
}

namespace {

std::vector<std::string_view> split_top_level(std::string_view text) {
  std::vector<std::string_view> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')' && --depth < 0) throw std::invalid_argument("unbalanced ')' in generator list");
    if (text[i] == ',' && depth == 0) {
      parts.push_back(text.substr(start, i - start));
      start = i + 1;
    }
  }
  if (depth != 0) throw std::invalid_argument("unbalanced '(' in generator list");
  parts.push_back(text.substr(start));
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view s, const std::string& context) {
  s = trim(s);
  int v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw std::invalid_argument("expected an integer in '" + context + "', got '" + std::string(s) + "'");
  }
  return v;
}

std::vector<int> parse_ints(std::string_view s, char sep, const std::string& context) {
  std::vector<int> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(parse_int(s.substr(start, i - start), context));
      start = i + 1;
    }
  }
  return out;
}

// Splits "params x count" when the term ends in x<digits>.
std::pair<std::string_view, int> split_count(std::string_view params, const std::string& context) {
  const auto x = params.rfind('x');
  if (x == std::string_view::npos || x + 1 == params.size()) return {params, 1};
  const auto tail = params.substr(x + 1);
  for (char c : tail) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return {params, 1};
  }
  const int count = parse_int(tail, context);
  if (count < 1) throw std::invalid_argument("repeat count must be positive in '" + context + "'");
  return {params.substr(0, x), count};
}

void parse_terms(std::string_view text, const AlgebraKind& kind, const PrimeField& field,
                 std::vector<GeneratorSpec>& out) {
  const int n = kind.variables();
  auto variable_index = [&](int one_based, const std::string& context) {
    if (one_based < 1 || one_based > n) {
      throw std::invalid_argument("variable " + std::to_string(one_based) + " out of range in '" + context + "'");
    }
    return one_based - 1;
  };
  for (auto raw : split_top_level(text)) {
    const auto term = trim(raw);
    if (term.empty()) throw std::invalid_argument("empty generator term");
    const std::string context(term);
    const auto colon = term.find(':');
    if (colon == std::string_view::npos) throw std::invalid_argument("generator term '" + context + "' needs kind:params");
    const auto name = trim(term.substr(0, colon));
    const auto params = trim(term.substr(colon + 1));

    if (name == "explicit") {
      Form f = parse_form(kind, field, params);
      out.push_back({Explicit{f, format_form(kind, field, f)}});
      continue;
    }
    if (name == "fl-family") {
      if (kind.family() != AlgebraFamily::tensor || n != 4) {
        throw std::invalid_argument("fl-family needs the tensor algebra in 4 variables");
      }
      if (params.substr(0, 2) != "q=") throw std::invalid_argument("fl-family needs q=Q or q=inf");
      const auto q = params.substr(2);
      std::optional<int> qv;
      if (q != "inf") qv = parse_int(q, context);
      for (auto& f : froberg_lofwall_relations(field, qv)) out.push_back({Explicit{f, format_form(kind, field, f)}});
      continue;
    }
    if (name == "idealpow") {
      const auto open = params.find('(');
      const auto close = params.rfind(')');
      if (params.substr(0, 2) != "s=" || open == std::string_view::npos || close == std::string_view::npos ||
          close < open) {
        throw std::invalid_argument("idealpow needs s=S(<terms>)");
      }
      IdealPower p;
      p.power = parse_int(params.substr(2, open - 2), context);
      parse_terms(params.substr(open + 1, close - open - 1), kind, field, p.inner);
      const auto [rest, count] = split_count(params.substr(close + 1), context);
      if (!trim(rest).empty()) throw std::invalid_argument("unexpected text after idealpow in '" + context + "'");
      for (int i = 0; i < count; ++i) out.push_back({p});
      continue;
    }

    const auto [body, count] = split_count(params, context);
    auto repeat = [&](GeneratorSpec spec) {
      for (int i = 0; i < count; ++i) out.push_back(spec);
    };
    const auto at = body.find('@');
    const auto head = body.substr(0, at);
    const std::optional<std::string_view> where =
        at == std::string_view::npos ? std::nullopt : std::optional<std::string_view>(body.substr(at + 1));
    if (name == "generic") {
      repeat({Generic{parse_ints(body, '/', context)}});
    } else if (name == "genpow") {
      const auto parts = parse_ints(body, '^', context);
      if (parts.size() != 2) throw std::invalid_argument("genpow needs D^K");
      repeat({PowerOfGeneric{parts[0], parts[1]}});
    } else if (name == "prodgen") {
      repeat({ProductOfGenerics{parse_ints(body, '+', context)}});
    } else if (name == "prodlin") {
      repeat({ProductOfLinearPowers{parse_ints(body, '+', context)}});
    } else if (name == "linpow") {
      repeat({PowerOfLinear{parse_int(body, context)}});
    } else if (name == "varpow") {
      const int d = parse_int(head, context);
      if (where) {
        repeat({VariablePower{d, variable_index(parse_int(*where, context), context)}});
      } else {
        for (int v = 0; v < n; ++v) repeat({VariablePower{d, v}});
      }
    } else if (name == "oddsum") {
      const int d = parse_int(head, context);
      if (where) {
        auto subset = parse_ints(*where, '+', context);
        for (int& v : subset) v = variable_index(v, context);
        repeat({SumOddVariables{d, subset}});
      } else {
        if (n > 20) throw std::invalid_argument("oddsum over every subset needs n <= 20");
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
          if (std::popcount(mask) % 2 == 0) continue;
          std::vector<int> subset;
          for (int v = 0; v < n; ++v) {
            if ((mask >> v) & 1u) subset.push_back(v);
          }
          repeat({SumOddVariables{d, subset}});
        }
      }
    } else if (name == "signedsum") {
      const int d = parse_int(head, context);
      if (where) {
        std::vector<int> signs;
        for (char c : *where) {
          if (c != '+' && c != '-') throw std::invalid_argument("signedsum signs must be + or -");
          signs.push_back(c == '-' ? -1 : 1);
        }
        if (static_cast<int>(signs.size()) != n - 1) throw std::invalid_argument("signedsum needs n - 1 signs");
        repeat({SignedSumPower{d, signs}});
      } else {
        if (n > 21) throw std::invalid_argument("signedsum over every sign pattern needs n <= 21");
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << (n - 1)); ++mask) {
          std::vector<int> signs;
          for (int v = 0; v < n - 1; ++v) signs.push_back((mask >> v) & 1u ? -1 : 1);
          repeat({SignedSumPower{d, signs}});
        }
      }
    } else if (name == "lie") {
      if (parse_int(body, context) != 2) throw std::invalid_argument("only quadratic Lie elements are supported");
      repeat({LieQuadratic{}});
    } else if (name == "commutator") {
      const auto parts = parse_ints(body, '-', context);
      if (parts.size() != 2) throw std::invalid_argument("commutator needs I-J");
      repeat({Commutator{variable_index(parts[0], context), variable_index(parts[1], context)}});
    } else {
      throw std::invalid_argument("unknown generator kind '" + std::string(name) + "'");
    }
  }
}

}  // namespace

std::vector<GeneratorSpec> parse_generator_specs(std::string_view text, const AlgebraKind& kind,
                                                 const PrimeField& field) {
  std::vector<GeneratorSpec> out;
  if (trim(text).empty()) return out;
  parse_terms(text, kind, field, out);
  return out;
}

std::size_t form_count(const GeneratorSpec& spec) {
  if (const auto* p = std::get_if<IdealPower>(&spec.value)) {
    std::size_t r = 0;
    for (const auto& s : p->inner) r += form_count(s);
    // C(power + r - 1, r - 1)
    std::size_t c = 1;
    for (int i = 1; i <= p->power; ++i) c = c * (r - 1 + static_cast<std::size_t>(i)) / static_cast<std::size_t>(i);
    return c;
  }
  return 1;
}

std::vector<Form> realize_generators(const AlgebraKind& kind, const std::vector<GeneratorSpec>& specs,
                                     const PrimeField& field, std::uint64_t seed) {
  Realizer realizer(kind, field, seed);
  std::vector<Form> out;
  for (const auto& spec : specs) realizer.realize(spec, out);
  return out;
}

std::vector<Form> froberg_lofwall_relations(const PrimeField& field, std::optional<int> q) {
  const auto kind = AlgebraKind::tensor(4);
  auto word = [&](int a, int b) {
    return monomial_form(kind, MonomialKey{static_cast<std::uint8_t>(a - 1), static_cast<std::uint8_t>(b - 1)});
  };
  const std::uint32_t minus_one = field.prime() - 1;
  Form f1 = add_scaled(field, word(1, 2), word(1, 3), minus_one);
  Form f2 = add_scaled(field, word(2, 3), word(3, 2), minus_one);
  if (q) {
    if (*q <= 0 || field.reduce(static_cast<std::uint64_t>(*q)) == 0) {
      throw std::invalid_argument("q must be a positive integer invertible in the field");
    }
    f2 = add_scaled(field, f2, word(2, 2), field.inv(field.reduce(static_cast<std::uint64_t>(*q))));
  }
  Form f3 = word(3, 4);
  return {f1, f2, f3};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace hilbert
