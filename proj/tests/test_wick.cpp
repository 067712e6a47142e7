#include <doctest.h>

#include <cmath>
#include <complex>

#include "tdho/wick.hpp"

using namespace tdho;
using namespace tdho::wick;

namespace {

OperatorWord word_of(int n, LetterKind k1, int m, LetterKind k2) {
  OperatorWord w;
  for (int r = 0; r < n; ++r) w.push_back({k1, 1});
  for (int r = 0; r < m; ++r) w.push_back({k2, 2});
  return w;
}

WickExpression single_term(Rational coeff,
                           std::vector<PropagatorFactor> props,
                           std::map<int, int> fder = {}) {
  WickTerm t;
  t.coeff = coeff;
  t.propagators = std::move(props);
  t.f_derivatives = std::move(fder);
  return WickExpression({t});
}

}  // namespace

TEST_CASE("pairing enumeration counts and determinism") {
  CHECK(enumerate_pairings(word_of(1, LetterKind::kX, 1, LetterKind::kX))
            .size() == 1);
  auto four = enumerate_pairings(word_of(2, LetterKind::kX, 2, LetterKind::kX));
  REQUIRE(four.size() == 3);
  CHECK(four[0] == Pairing{{0, 1}, {2, 3}});  // lexicographic order
  CHECK(four[1] == Pairing{{0, 2}, {1, 3}});
  CHECK(four[2] == Pairing{{0, 3}, {1, 2}});
  CHECK(enumerate_pairings(word_of(4, LetterKind::kX, 4, LetterKind::kX))
            .size() == 105);
  CHECK(enumerate_pairings(word_of(2, LetterKind::kX, 1, LetterKind::kX))
            .empty());
  CHECK(enumerate_pairings({}).size() == 1);  // the empty pairing
}

TEST_CASE("multiplicity factor c_l") {
  CHECK(multiplicity_c(2, 2, 0) == Rational(1));
  CHECK(multiplicity_c(2, 2, 2) == Rational(2));
  CHECK(multiplicity_c(4, 4, 4) == Rational(24));
  CHECK(multiplicity_c(4, 4, 2) == Rational(72));
  CHECK(multiplicity_c(3, 1, 1) == Rational(3));
  CHECK_THROWS_AS(multiplicity_c(3, 1, 0), DomainError);   // parity of l
  CHECK_THROWS_AS(multiplicity_c(2, 1, 1), DomainError);   // odd total
}

TEST_CASE("mixed two-point closed forms") {
  CHECK(mixed_two_point(1, 1, LetterKind::kX, LetterKind::kX) ==
        single_term(1, {{Channel::kJJ, 1, 2}}));
  CHECK(mixed_two_point(2, 2, LetterKind::kX, LetterKind::kP) ==
        single_term(1, {{Channel::kJJ, 1, 1}, {Channel::kKK, 2, 2}}) +
            single_term(2, {{Channel::kJK, 1, 2}, {Channel::kJK, 1, 2}}));
  // <p^3(t1) x(t2)> = 3 kk(1,1) jk(2,1).
  CHECK(mixed_two_point(3, 1, LetterKind::kP, LetterKind::kX) ==
        single_term(3, {{Channel::kKK, 1, 1}, {Channel::kJK, 2, 1}}));
  CHECK(mixed_two_point(1, 2, LetterKind::kX, LetterKind::kX).is_zero());
}

TEST_CASE("closed forms reproduce brute-force enumeration exactly") {
  for (LetterKind k1 : {LetterKind::kX, LetterKind::kP})
    for (LetterKind k2 : {LetterKind::kX, LetterKind::kP})
      for (int n = 0; n <= 8; ++n)
        for (int m = 0; n + m <= 8; ++m) {
          auto closed = mixed_two_point(n, m, k1, k2);
          auto enumerated = expression_from_pairings(word_of(n, k1, m, k2));
          CHECK(closed == enumerated);
        }
}

TEST_CASE("derivative rules") {
  CHECK(derivative_rule(1, CouplingRule::kXX) ==
        single_term(1, {{Channel::kJJ, 1, 2}}, {{1, 1}}));
  CHECK(derivative_rule(2, CouplingRule::kXP) ==
        single_term(1, {{Channel::kKK, 2, 2}}, {{1, 0}}) +
            single_term(1, {{Channel::kJK, 1, 2}, {Channel::kJK, 1, 2}},
                        {{1, 2}}));
  // Quartic coefficients 3, 6, 1 (enumeration-normative).
  auto quartic = derivative_rule(4, CouplingRule::kXX);
  REQUIRE(quartic.terms().size() == 3);
  CHECK(quartic.terms()[0].coeff + quartic.terms()[1].coeff +
            quartic.terms()[2].coeff ==
        Rational(10));
  bool saw3 = false, saw6 = false, saw1 = false;
  for (const auto& t : quartic.terms()) {
    if (t.coeff == Rational(3)) saw3 = t.f_derivatives.at(1) == 0;
    if (t.coeff == Rational(6)) saw6 = t.f_derivatives.at(1) == 2;
    if (t.coeff == Rational(1)) saw1 = t.f_derivatives.at(1) == 4;
  }
  CHECK(saw3);
  CHECK(saw6);
  CHECK(saw1);
}

TEST_CASE("generalized reduction matches the closed derivative rules") {
  CHECK(generalized_wick_reduce(1, CouplingRule::kXX) ==
        derivative_rule(1, CouplingRule::kXX));
  // n = 3: 3 jj(1,2) jj(2,2) F' + jj(1,2)^3 F'''.
  CHECK(generalized_wick_reduce(3, CouplingRule::kXX) ==
        single_term(3, {{Channel::kJJ, 1, 2}, {Channel::kJJ, 2, 2}}, {{1, 1}}) +
            single_term(1,
                        {{Channel::kJJ, 1, 2},
                         {Channel::kJJ, 1, 2},
                         {Channel::kJJ, 1, 2}},
                        {{1, 3}}));
  for (auto rule : {CouplingRule::kXX, CouplingRule::kXP, CouplingRule::kPP,
                    CouplingRule::kPX})
    for (int n = 1; n <= 6; ++n)
      CHECK(generalized_wick_reduce(n, rule) == derivative_rule(n, rule));
}

TEST_CASE("generating-function expansion reproduces the xp rule") {
  // Formal series in the source variable: exp(kk(2,2) s^2 / 2) times
  // sum_l jk(1,2)^l F^(l) s^l / l!; the n-th coefficient times n! must be
  // derivative_rule(n, xp).
  const int max_n = 5;
  std::vector<WickExpression> series(max_n + 1);
  auto factorial = [](int k) {
    std::int64_t v = 1;
    for (int i = 2; i <= k; ++i) v *= i;
    return v;
  };
  for (int a = 0; 2 * a <= max_n; ++a) {
    // (kk(2,2)/2)^a / a!
    for (int l = 0; 2 * a + l <= max_n; ++l) {
      WickTerm t;
      t.coeff = Rational(1, (1LL << a) * factorial(a) * factorial(l));
      for (int r = 0; r < a; ++r) t.propagators.push_back({Channel::kKK, 2, 2});
      for (int r = 0; r < l; ++r) t.propagators.push_back({Channel::kJK, 1, 2});
      t.f_derivatives[1] = l;
      series[2 * a + l] += WickExpression({t});
    }
  }
  for (int n = 0; n <= max_n; ++n)
    CHECK(series[n].scaled(Rational(factorial(n))) ==
          derivative_rule(n, CouplingRule::kXP));
}

TEST_CASE("second-order diagram census") {
  SUBCASE("x^4 vertex: 72 + 24") {
    auto census = connected_census(parse_vertex_word("x^4"), 2);
    REQUIRE(census.entries.size() == 2);
    CHECK(census.entries[0].multiplicity == 72);
    CHECK(census.entries[1].multiplicity == 24);
    CHECK(census.disconnected == 9);
    CHECK(census.total_pairings == 105);
    CHECK(census.connected_total() + census.disconnected == 105);
  }
  SUBCASE("x^2 p^2 vertex: ten signatures summing to 96") {
    auto census = connected_census(parse_vertex_word("x^2 p^2"), 2);
    std::vector<std::int64_t> got;
    for (const auto& e : census.entries) got.push_back(e.multiplicity);
    std::sort(got.begin(), got.end());
    CHECK(got == std::vector<std::int64_t>{2, 2, 4, 4, 4, 16, 16, 16, 16, 16});
    CHECK(census.connected_total() == 96);
    CHECK(census.disconnected == 9);
  }
  SUBCASE("x^2 vertex: a single double edge") {
    auto census = connected_census(parse_vertex_word("x^2"), 2);
    REQUIRE(census.entries.size() == 1);
    CHECK(census.entries[0].multiplicity == 2);
    CHECK(census.disconnected == 1);
  }
  CHECK_THROWS_AS(connected_census(parse_vertex_word("x^2"), 3), DomainError);
}

TEST_CASE("vertex word parsing") {
  CHECK(parse_vertex_word("x^4").size() == 4);
  CHECK(parse_vertex_word("x^2 p^2").size() == 4);
  CHECK(parse_vertex_word("x*p^2").size() == 3);
  CHECK(parse_vertex_word("x x p").size() == 3);
  CHECK_THROWS_AS(parse_vertex_word(""), DomainError);
  CHECK_THROWS_AS(parse_vertex_word("y^2"), DomainError);
  CHECK_THROWS_AS(parse_vertex_word("x^"), DomainError);
}

TEST_CASE("derivative rule with a polynomial factor matches enumeration") {
  // <x~^4(t1) x~^2(t2)> two ways: the derivative rule with the Gaussian
  // moments of F = x^4 supplied through the f_table, and the brute-force
  // pairing sum over the six-letter word.
  PhysicalParams params;
  auto pair = solve_fundamental(
      FrequencyProfile::polynomial({1.0, 0.4}, 0.0, 1.0), 512);
  GreensEvaluator ev(pair, GreensEvaluator::Representation::kDirichletX);
  const double t1 = 0.3, t2 = 0.8;
  std::map<int, double> times{{1, t1}, {2, t2}};

  std::complex<double> g11(0.0, ev.green(Channel::kJJ, t1, t1));
  std::map<int, std::complex<double>> f_table{
      {0, 3.0 * g11 * g11},  // <x~^4>
      {2, 12.0 * g11},       // <12 x~^2>
      {4, 24.0}};
  auto via_rule = evaluate_expression(derivative_rule(2, CouplingRule::kXX),
                                      ev, times, params, f_table);

  OperatorWord word;
  for (int r = 0; r < 4; ++r) word.push_back({LetterKind::kX, 1});
  for (int r = 0; r < 2; ++r) word.push_back({LetterKind::kX, 2});
  auto via_enumeration =
      evaluate_expression(expression_from_pairings(word), ev, times, params);
  CHECK(std::abs(via_rule - via_enumeration) < 1e-13);
}

TEST_CASE("expression evaluation against the contraction dictionary") {
  PhysicalParams params;
  auto pair = solve_fundamental(FrequencyProfile::constant(1.0, 0.0, 1.0), 512);
  GreensEvaluator ev(pair, GreensEvaluator::Representation::kDirichletX);
  std::map<int, double> times{{1, 0.3}, {2, 0.7}};

  auto two_point = expression_from_pairings(
      {{LetterKind::kX, 1}, {LetterKind::kX, 2}});
  std::complex<double> value = evaluate_expression(two_point, ev, times, params);
  std::complex<double> expected(0.0, ev.green(Channel::kJJ, 0.3, 0.7));
  CHECK(std::abs(value - expected) < 1e-14);

  CHECK(evaluate_expression(WickExpression{}, ev, times, params) ==
        std::complex<double>(0.0));

  auto with_f = derivative_rule(2, CouplingRule::kXX);
  CHECK_THROWS_AS(evaluate_expression(with_f, ev, times, params, {{0, 1.0}}),
                  DomainError);

  // Odd words vanish identically.
  CHECK(expression_from_pairings(
            {{LetterKind::kX, 1}, {LetterKind::kX, 1}, {LetterKind::kP, 2}})
            .is_zero());
}
