#include "tdho/wick.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tdho {
namespace wick {

namespace {

std::int64_t factorial(int n) {
  if (n < 0) throw DomainError("factorial of negative integer");
  if (n > 20) throw DomainError("factorial argument too large for int64");
  std::int64_t v = 1;
  for (int k = 2; k <= n; ++k) v *= k;
  return v;
}

// (-1)!! == 1 by the only convention this code ever needs.
std::int64_t double_factorial(int n) {
  if (n < -1) throw DomainError("double factorial below -1 not defined here");
  std::int64_t v = 1;
  for (int k = n; k > 1; k -= 2) v *= k;
  return v;
}

bool term_key_less(const WickTerm& a, const WickTerm& b) {
  if (a.propagators != b.propagators) return a.propagators < b.propagators;
  return a.f_derivatives < b.f_derivatives;
}

bool same_key(const WickTerm& a, const WickTerm& b) {
  return a.propagators == b.propagators && a.f_derivatives == b.f_derivatives;
}

}  // namespace

std::vector<Pairing> enumerate_pairings(const OperatorWord& word) {
  const int n = static_cast<int>(word.size());
  std::vector<Pairing> out;
  if (n % 2 == 1) return out;
  Pairing current;
  std::vector<bool> used(n, false);
  // Pair the smallest open index with each later open index in order.
  auto recurse = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < n; ++i)
      if (!used[i]) {
        first = i;
        break;
      }
    if (first < 0) {
      out.push_back(current);
      return;
    }
    used[first] = true;
    for (int j = first + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      current.emplace_back(first, j);
      self(self);
      current.pop_back();
      used[j] = false;
    }
    used[first] = false;
  };
  recurse(recurse);
  return out;
}

Rational multiplicity_c(int n, int m, int l) {
  if (l < 0 || l > std::min(n, m))
    throw DomainError("multiplicity_c: l outside [0, min(n,m)]");
  if ((n + m) % 2 != 0)
    throw DomainError("multiplicity_c: n+m must be even");
  if ((n - l) % 2 != 0)
    throw DomainError("multiplicity_c: l must share the parity of n and m");
  Rational value(double_factorial(n - l - 1));
  value *= Rational(double_factorial(m - l - 1));
  value *= Rational(factorial(n));
  value *= Rational(factorial(m));
  value = value / Rational(factorial(l));
  value = value / Rational(factorial(n - l));
  value = value / Rational(factorial(m - l));
  return value;
}

PropagatorFactor contract(const Letter& a, const Letter& b) {
  if (a.kind == LetterKind::kX && b.kind == LetterKind::kX)
    return {Channel::kJJ, std::min(a.label, b.label),
            std::max(a.label, b.label)};
  if (a.kind == LetterKind::kP && b.kind == LetterKind::kP)
    return {Channel::kKK, std::min(a.label, b.label),
            std::max(a.label, b.label)};
  // kj(a,b) == jk(b,a): store with the x slot first.
  const Letter& x = (a.kind == LetterKind::kX) ? a : b;
  const Letter& p = (a.kind == LetterKind::kX) ? b : a;
  return {Channel::kJK, x.label, p.label};
}

WickExpression::WickExpression(std::vector<WickTerm> terms)
    : terms_(std::move(terms)) {
  canonicalize();
}

void WickExpression::canonicalize() {
  for (WickTerm& t : terms_)
    std::sort(t.propagators.begin(), t.propagators.end());
  std::sort(terms_.begin(), terms_.end(), term_key_less);
  std::vector<WickTerm> merged;
  for (WickTerm& t : terms_) {
    if (!merged.empty() && same_key(merged.back(), t))
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  std::erase_if(merged, [](const WickTerm& t) { return t.coeff.is_zero(); });
  terms_ = std::move(merged);
}

WickExpression& WickExpression::operator+=(const WickExpression& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  canonicalize();
  return *this;
}

WickExpression WickExpression::scaled(const Rational& factor) const {
  std::vector<WickTerm> terms = terms_;
  for (WickTerm& t : terms) t.coeff *= factor;
  return WickExpression(std::move(terms));
}

WickExpression WickExpression::times_propagator(
    const PropagatorFactor& f) const {
  std::vector<WickTerm> terms = terms_;
  for (WickTerm& t : terms) t.propagators.push_back(f);
  return WickExpression(std::move(terms));
}

std::string WickExpression::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const WickTerm& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coeff.to_string();
    for (const auto& p : t.propagators)
      os << "*G_" << tdho::to_string(p.channel) << "(" << p.a << "," << p.b
         << ")";
    for (const auto& [label, order] : t.f_derivatives)
      os << "*F" << label << "^(" << order << ")";
  }
  return os.str();
}

WickExpression expression_from_pairings(const OperatorWord& word) {
  std::vector<WickTerm> terms;
  for (const Pairing& pairing : enumerate_pairings(word)) {
    WickTerm t;
    t.coeff = Rational(1);
    t.propagators.reserve(pairing.size());
    for (const auto& [i, j] : pairing)
      t.propagators.push_back(contract(word[i], word[j]));
    terms.push_back(std::move(t));
  }
  return WickExpression(std::move(terms));
}

namespace {

PropagatorFactor equal_time_factor(LetterKind kind, int label) {
  return kind == LetterKind::kX ? PropagatorFactor{Channel::kJJ, label, label}
                                : PropagatorFactor{Channel::kKK, label, label};
}

PropagatorFactor cross_factor(LetterKind kind1, LetterKind kind2) {
  return contract(Letter{kind1, 1}, Letter{kind2, 2});
}

}  // namespace

WickExpression mixed_two_point(int n, int m, LetterKind kind1,
                               LetterKind kind2) {
  if (n < 0 || m < 0) throw DomainError("mixed_two_point: negative power");
  if ((n + m) % 2 != 0) return WickExpression();
  const int alpha = n % 2;
  std::vector<WickTerm> terms;
  for (int l = alpha; l <= std::min(n, m); l += 2) {
    WickTerm t;
    t.coeff = multiplicity_c(n, m, l);
    for (int r = 0; r < (n - l) / 2; ++r)
      t.propagators.push_back(equal_time_factor(kind1, 1));
    for (int r = 0; r < l; ++r)
      t.propagators.push_back(cross_factor(kind1, kind2));
    for (int r = 0; r < (m - l) / 2; ++r)
      t.propagators.push_back(equal_time_factor(kind2, 2));
    terms.push_back(std::move(t));
  }
  return WickExpression(std::move(terms));
}

CouplingRule parse_rule(const std::string& name) {
  if (name == "xx") return CouplingRule::kXX;
  if (name == "xp") return CouplingRule::kXP;
  if (name == "pp") return CouplingRule::kPP;
  if (name == "px") return CouplingRule::kPX;
  throw DomainError("unknown coupling rule: " + name);
}

namespace {

LetterKind power_kind(CouplingRule rule) {
  return (rule == CouplingRule::kXX || rule == CouplingRule::kPX)
             ? LetterKind::kX
             : LetterKind::kP;
}

LetterKind function_kind(CouplingRule rule) {
  return (rule == CouplingRule::kXX || rule == CouplingRule::kXP)
             ? LetterKind::kX
             : LetterKind::kP;
}

}  // namespace

WickExpression derivative_rule(int n, CouplingRule rule) {
  if (n < 0) throw DomainError("derivative_rule: negative power");
  const LetterKind fk = function_kind(rule);
  const LetterKind zk = power_kind(rule);
  const PropagatorFactor equal = equal_time_factor(zk, 2);
  const PropagatorFactor cross = contract(Letter{fk, 1}, Letter{zk, 2});
  const int alpha = n % 2;
  std::vector<WickTerm> terms;
  for (int l = alpha; l <= n; l += 2) {
    WickTerm t;
    t.coeff = Rational(factorial(n)) /
              (Rational(double_factorial(n - l)) * Rational(factorial(l)));
    for (int r = 0; r < (n - l) / 2; ++r) t.propagators.push_back(equal);
    for (int r = 0; r < l; ++r) t.propagators.push_back(cross);
    t.f_derivatives[1] = l;
    terms.push_back(std::move(t));
  }
  return WickExpression(std::move(terms));
}

namespace {

WickExpression reduce_recursive(int n, int d, const PropagatorFactor& equal,
                                const PropagatorFactor& cross) {
  if (n == 0) {
    WickTerm t;
    t.coeff = Rational(1);
    t.f_derivatives[1] = d;
    return WickExpression({t});
  }
  // F-contraction branch: raise the derivative order, consume one letter.
  WickExpression result =
      reduce_recursive(n - 1, d + 1, equal, cross).times_propagator(cross);
  if (n >= 2) {
    // Self-contraction branch with multiplicity n-1.
    result += reduce_recursive(n - 2, d, equal, cross)
                  .times_propagator(equal)
                  .scaled(Rational(n - 1));
  }
  return result;
}

}  // namespace

WickExpression generalized_wick_reduce(int n, CouplingRule rule) {
  if (n < 1) throw DomainError("generalized_wick_reduce: n >= 1");
  const LetterKind fk = function_kind(rule);
  const LetterKind zk = power_kind(rule);
  return reduce_recursive(n, 0, equal_time_factor(zk, 2),
                          contract(Letter{fk, 1}, Letter{zk, 2}));
}

std::string DiagramSignature::to_string() const {
  auto kind_name = [](LetterKind k) { return k == LetterKind::kX ? "x" : "p"; };
  auto edge_channel = [&](const std::pair<LetterKind, LetterKind>& e) {
    // Typed as a contraction of (kind at v1, kind at v2).
    std::string l = e.first == LetterKind::kX ? "j" : "k";
    std::string r = e.second == LetterKind::kX ? "j" : "k";
    return l + r;
  };
  (void)kind_name;
  std::ostringstream os;
  os << "[v1-v2:";
  for (std::size_t i = 0; i < cross.size();) {
    std::size_t j = i;
    while (j < cross.size() && cross[j] == cross[i]) ++j;
    os << " " << edge_channel(cross[i]);
    if (j - i > 1) os << " x" << (j - i);
    if (j < cross.size()) os << ";";
    i = j;
  }
  auto print_loops = [&os](const std::vector<Channel>& loops,
                           const char* name) {
    os << "; " << name << ":";
    if (loops.empty()) {
      os << " -";
      return;
    }
    for (std::size_t i = 0; i < loops.size();) {
      std::size_t j = i;
      while (j < loops.size() && loops[j] == loops[i]) ++j;
      os << " " << tdho::to_string(loops[i]);
      if (j - i > 1) os << " x" << (j - i);
      if (j < loops.size()) os << ";";
      i = j;
    }
  };
  print_loops(loops_a, "v1-loops");
  print_loops(loops_b, "v2-loops");
  os << "]";
  return os.str();
}

namespace {

Channel loop_channel(LetterKind a, LetterKind b) {
  if (a == LetterKind::kX && b == LetterKind::kX) return Channel::kJJ;
  if (a == LetterKind::kP && b == LetterKind::kP) return Channel::kKK;
  return Channel::kJK;  // equal-time mixed loop, orientation immaterial
}

DiagramSignature swapped(const DiagramSignature& s) {
  DiagramSignature out;
  out.cross.reserve(s.cross.size());
  for (const auto& e : s.cross) out.cross.emplace_back(e.second, e.first);
  std::sort(out.cross.begin(), out.cross.end());
  out.loops_a = s.loops_b;
  out.loops_b = s.loops_a;
  return out;
}

}  // namespace

CensusResult connected_census(const OperatorWord& vertex, int order) {
  if (order != 2)
    throw DomainError("connected_census: only order 2 is grouped by signature");
  const int L = static_cast<int>(vertex.size());
  OperatorWord doubled;
  doubled.reserve(2 * L);
  for (const Letter& l : vertex) doubled.push_back({l.kind, 1});
  for (const Letter& l : vertex) doubled.push_back({l.kind, 2});

  std::map<DiagramSignature, std::int64_t> groups;
  std::int64_t disconnected = 0;
  std::int64_t total = 0;
  for (const Pairing& pairing : enumerate_pairings(doubled)) {
    ++total;
    DiagramSignature sig;
    bool has_cross = false;
    for (const auto& [i, j] : pairing) {
      bool i_first = i < L;
      bool j_first = j < L;
      if (i_first == j_first) {
        (i_first ? sig.loops_a : sig.loops_b)
            .push_back(loop_channel(doubled[i].kind, doubled[j].kind));
      } else {
        has_cross = true;
        const Letter& at1 = i_first ? doubled[i] : doubled[j];
        const Letter& at2 = i_first ? doubled[j] : doubled[i];
        sig.cross.emplace_back(at1.kind, at2.kind);
      }
    }
    if (!has_cross) {
      ++disconnected;
      continue;
    }
    std::sort(sig.cross.begin(), sig.cross.end());
    std::sort(sig.loops_a.begin(), sig.loops_a.end());
    std::sort(sig.loops_b.begin(), sig.loops_b.end());
    DiagramSignature alt = swapped(sig);
    if (alt < sig) sig = alt;
    ++groups[sig];
  }

  CensusResult result;
  result.disconnected = disconnected;
  result.total_pairings = total;
  for (auto& [sig, count] : groups)
    result.entries.push_back({sig, count});
  std::sort(result.entries.begin(), result.entries.end(),
            [](const CensusEntry& a, const CensusEntry& b) {
              if (a.multiplicity != b.multiplicity)
                return a.multiplicity > b.multiplicity;
              return a.signature < b.signature;
            });
  return result;
}

OperatorWord parse_vertex_word(const std::string& text, int label) {
  OperatorWord word;
  std::size_t i = 0;
  auto skip_sep = [&] {
    while (i < text.size() &&
           (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == '*'))
      ++i;
  };
  skip_sep();
  while (i < text.size()) {
    char c = text[i];
    LetterKind kind;
    if (c == 'x' || c == 'X')
      kind = LetterKind::kX;
    else if (c == 'p' || c == 'P')
      kind = LetterKind::kP;
    else
      throw DomainError(std::string("vertex word: unexpected character '") + c +
                        "'");
    ++i;
    int power = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
        ++i;
      if (start == i) throw DomainError("vertex word: missing exponent");
      power = std::stoi(text.substr(start, i - start));
      if (power < 1 || power > 12)
        throw DomainError("vertex word: exponent out of range");
    }
    for (int r = 0; r < power; ++r) word.push_back({kind, label});
    skip_sep();
  }
  if (word.empty()) throw DomainError("vertex word is empty");
  return word;
}

std::complex<double> evaluate_expression(
    const WickExpression& expr, const GreensEvaluator& evaluator,
    const std::map<int, double>& label_times, const PhysicalParams& params,
    const std::map<int, std::complex<double>>& f_table) {
  params.validate();
  auto time_of = [&](int label) {
    auto it = label_times.find(label);
    if (it == label_times.end())
      throw DomainError("evaluate_expression: unresolved time label " +
                        std::to_string(label));
    return it->second;
  };
  const std::complex<double> i_hbar(0.0, params.hbar);
  std::complex<double> total = 0.0;
  for (const WickTerm& term : expr.terms()) {
    std::complex<double> value = term.coeff.to_double();
    for (const PropagatorFactor& f : term.propagators) {
      double g = evaluator.green(f.channel, time_of(f.a), time_of(f.b));
      switch (f.channel) {
        case Channel::kJJ: value *= i_hbar / params.mass * g; break;
        case Channel::kJK:
        case Channel::kKJ: value *= i_hbar * g; break;
        case Channel::kKK: value *= i_hbar * params.mass * g; break;
      }
    }
    for (const auto& [label, order] : term.f_derivatives) {
      auto it = f_table.find(order);
      if (it == f_table.end())
        throw DomainError("evaluate_expression: missing F derivative of order " +
                          std::to_string(order));
      value *= it->second;
    }
    total += value;
  }
  return total;
}

}  // namespace wick
}  // namespace tdho
