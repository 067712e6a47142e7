#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tdho/greens.hpp"
#include "tdho/rational.hpp"

namespace tdho {
namespace wick {

enum class LetterKind { kX, kP };

/// One operator letter: position or momentum deviation at a labelled time.
struct Letter {
  LetterKind kind;
  int label;
};

/// Ordered product of letters; the label -> time map is held by the caller.
using OperatorWord = std::vector<Letter>;

/// A perfect matching of word indices.
using Pairing = std::vector<std::pair<int, int>>;

/// All (len-1)!! perfect matchings in deterministic lexicographic order
/// (smallest open index paired with each later index in turn).  Odd length
/// gives an empty list (vanishing expectation); length zero gives the single
/// empty pairing.
std::vector<Pairing> enumerate_pairings(const OperatorWord& word);

/// Pairing count with exactly l cross contractions between an n-letter and an
/// m-letter group:  c_l = (n-l-1)!! (m-l-1)!! n! m! / (l! (n-l)! (m-l)!)
/// with (-1)!! = 1.  Requires n+m even and l of the shared parity.
Rational multiplicity_c(int n, int m, int l);

/// One propagator factor in canonical form: kj is normalised away
/// (kj(a,b) == jk(b,a)), jj/kk labels are sorted.
struct PropagatorFactor {
  Channel channel;
  int a;
  int b;
  friend auto operator<=>(const PropagatorFactor&,
                          const PropagatorFactor&) = default;
};

struct WickTerm {
  Rational coeff;
  std::vector<PropagatorFactor> propagators;  // sorted
  std::map<int, int> f_derivatives;           // label -> derivative order
  friend bool operator==(const WickTerm&, const WickTerm&) = default;
};

/// A finite sum of terms with exact coefficients; equality is syntactic on
/// the canonical form (sorted factors, combined like terms).
class WickExpression {
 public:
  WickExpression() = default;
  explicit WickExpression(std::vector<WickTerm> terms);

  const std::vector<WickTerm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  WickExpression& operator+=(const WickExpression& other);
  friend WickExpression operator+(WickExpression a, const WickExpression& b) {
    a += b;
    return a;
  }
  /// Multiply every term by a scalar and optional extra factors / derivative
  /// bumps.
  WickExpression scaled(const Rational& factor) const;
  WickExpression times_propagator(const PropagatorFactor& f) const;
  friend bool operator==(const WickExpression&, const WickExpression&) = default;

  std::string to_string() const;

 private:
  void canonicalize();
  std::vector<WickTerm> terms_;
};

/// Canonical contraction factor of two letters.
PropagatorFactor contract(const Letter& a, const Letter& b);

/// Sum over all pairings of the word; the brute-force enumeration oracle.
WickExpression expression_from_pairings(const OperatorWord& word);

/// Closed-form mixed two-point moment < y1^n(t1) y2^m(t2) > as a sum over l
/// with the c_l multiplicities; labels 1 and 2.
WickExpression mixed_two_point(int n, int m, LetterKind kind1,
                               LetterKind kind2);

/// Which function/power coupling a derivative rule expands.
enum class CouplingRule { kXX, kXP, kPP, kPX };

CouplingRule parse_rule(const std::string& name);

/// Closed-form expansion of < F(y(t1)) z^n(t2) >:
/// sum_l n!/((n-l)!! l!) [equal-time]^{(n-l)/2} [cross]^l F^{(l)}.
WickExpression derivative_rule(int n, CouplingRule rule);

/// Same object produced by the two-branch power-reduction recursion
/// (self-contraction with multiplicity n-1 plus an F-contraction raising the
/// derivative order).  Must match derivative_rule syntactically.
WickExpression generalized_wick_reduce(int n, CouplingRule rule);

/// Diagram signature of a connected second-order pairing: typed cross edges
/// (kind at vertex 1, kind at vertex 2) plus self-loop channels per vertex,
/// canonicalized under the vertex swap.
struct DiagramSignature {
  std::vector<std::pair<LetterKind, LetterKind>> cross;
  std::vector<Channel> loops_a;
  std::vector<Channel> loops_b;
  friend auto operator<=>(const DiagramSignature&,
                          const DiagramSignature&) = default;
  std::string to_string() const;
};

struct CensusEntry {
  DiagramSignature signature;
  std::int64_t multiplicity;
};

struct CensusResult {
  std::vector<CensusEntry> entries;  // descending multiplicity
  std::int64_t disconnected = 0;
  std::int64_t total_pairings = 0;
  std::int64_t connected_total() const {
    std::int64_t s = 0;
    for (const auto& e : entries) s += e.multiplicity;
    return s;
  }
};

/// Census of the two-vertex (order 2) vacuum pairings of `vertex` * `vertex`.
CensusResult connected_census(const OperatorWord& vertex, int order);

/// Parse a vertex word like "x^4" or "x^2 p^2" (also "x*p^2", "x x p").
OperatorWord parse_vertex_word(const std::string& text, int label = 1);

/// Contraction dictionary values: jj -> (i hbar / M) G_jj, jk -> i hbar G_jk,
/// kk -> i hbar M G_kk; F^{(l)} factors come from f_table (order -> value).
std::complex<double> evaluate_expression(
    const WickExpression& expr, const GreensEvaluator& evaluator,
    const std::map<int, double>& label_times, const PhysicalParams& params,
    const std::map<int, std::complex<double>>& f_table = {});

}  // namespace wick
}  // namespace tdho
