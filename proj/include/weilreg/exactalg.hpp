#pragma once

// Exact multivariate polynomials over Q and the Groebner-basis engine.

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "weilreg/errors.hpp"

namespace weilreg {

/// Arbitrary-precision rational, always canonical (lowest terms, den > 0).
using Scalar = mpq_class;

Scalar make_scalar(long num, long den = 1);
std::string to_string(const Scalar& s);

/// Exponent vector. Equality and ordering here are plain lexicographic on the
/// vector; term orders live in MonomialOrder.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t arity) : exps_(arity, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps);

  std::size_t arity() const { return exps_.size(); }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }
  bool is_one() const { return degree_ == 0; }

  Monomial operator*(const Monomial& o) const;
  /// Requires o | *this.
  Monomial operator/(const Monomial& o) const;
  bool divides(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.exps_ < b.exps_; }

 private:
  std::vector<std::uint32_t> exps_;
  std::uint32_t degree_ = 0;
};

/// Term order: ordered blocks of variables, graded reverse lexicographic
/// inside each block. Lex is the all-singleton case; grevlex a single block.
class MonomialOrder {
 public:
  enum class Kind { Lex, Grevlex, Block };

  static MonomialOrder lex();
  static MonomialOrder grevlex();
  /// Two blocks: variables flagged in `eliminate` form the leading block.
  static MonomialOrder block(const std::vector<bool>& eliminate);
  /// General blocks: `block_of_var[i]` is the rank of variable i's block
  /// (smaller rank = more significant).
  static MonomialOrder blocks(std::vector<int> block_of_var);

  Kind kind() const { return kind_; }
  /// Negative, zero or positive as a <, ==, > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }
  std::string key() const;

  friend bool operator==(const MonomialOrder& a, const MonomialOrder& b) {
    return a.kind_ == b.kind_ && a.block_of_var_ == b.block_of_var_;
  }

 private:
  Kind kind_ = Kind::Grevlex;
  std::vector<int> block_of_var_;
  // Variables grouped per block, most significant block first.
  std::vector<std::vector<std::size_t>> groups_;
};

struct Term {
  Monomial mono;
  Scalar coeff;
};

/// Sparse polynomial in a fixed number of variables. Terms are stored in
/// strictly descending grevlex order with nonzero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::size_t arity) : arity_(arity) {}

  static Polynomial constant(std::size_t arity, const Scalar& c);
  static Polynomial variable(std::size_t arity, std::size_t index);
  static Polynomial monomial(const Monomial& m, const Scalar& c);
  /// Builds from arbitrary (possibly repeated, zero) terms.
  static Polynomial from_terms(std::size_t arity, std::vector<Term> terms);

  std::size_t arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term value if constant, else nullopt.
  std::optional<Scalar> constant_value() const;
  std::uint32_t total_degree() const;
  std::uint32_t degree_in(std::size_t var) const;
  bool uses_var(std::size_t var) const;
  bool uses_any(const std::vector<bool>& vars) const;
  /// Leading term under the canonical grevlex storage order.
  const Term& lead() const { return terms_.front(); }

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Scalar& c) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial mul_term(const Monomial& m, const Scalar& c) const;
  Polynomial pow(unsigned k) const;

  /// Scales so that the leading (grevlex) coefficient is 1.
  Polynomial monic() const;
  /// Scales to integer coefficients with gcd 1 and positive leading coefficient.
  Polynomial primitive() const;

  Scalar evaluate(std::span<const Scalar> point) const;
  /// Substitutes values for the variables flagged in `which` (values indexed by
  /// variable); arity is unchanged.
  Polynomial partial_evaluate(const std::vector<std::optional<Scalar>>& values) const;
  /// Replaces variable i by images[i]; all images share the result arity.
  Polynomial substitute(std::span<const Polynomial> images) const;
  /// Re-homes into a ring of `new_arity` variables, variable i going to map[i].
  Polynomial embed(std::size_t new_arity, std::span<const std::size_t> map) const;
  /// Places variable i at offset + i in a ring of `new_arity` variables.
  Polynomial shift(std::size_t new_arity, std::size_t offset) const;
  /// Removes the first `count` variables; throws ArityMismatch if they occur.
  Polynomial drop_front(std::size_t count) const;
  Polynomial derivative(std::size_t var) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

 private:
  void normalize();

  std::size_t arity_ = 0;
  std::vector<Term> terms_;
};

/// Exact quotient f / g if g divides f in Q[x], else nullopt.
std::optional<Polynomial> exact_divide(const Polynomial& f, const Polynomial& g);
/// Monic greatest common divisor (0 only if both inputs are 0).
Polynomial gcd(const Polynomial& f, const Polynomial& g);

// ---------------------------------------------------------------------------
// Step budget and statistics.

inline constexpr std::uint64_t kDefaultMaxGroebnerSteps = 200000;

/// Per-thread configuration for the Buchberger engine. A budget caps the
/// number of S-pairs processed by any single basis computation.
struct GroebnerSettings {
  std::uint64_t max_steps = kDefaultMaxGroebnerSteps;
};

GroebnerSettings& groebner_settings();
/// Cumulative count of S-pairs processed on this thread.
std::uint64_t groebner_steps_taken();

/// RAII override of the per-thread step budget.
class ScopedGroebnerBudget {
 public:
  explicit ScopedGroebnerBudget(std::uint64_t max_steps);
  ~ScopedGroebnerBudget();
  ScopedGroebnerBudget(const ScopedGroebnerBudget&) = delete;
  ScopedGroebnerBudget& operator=(const ScopedGroebnerBudget&) = delete;

 private:
  std::uint64_t saved_;
};

// ---------------------------------------------------------------------------

/// Polynomial ideal with a lazily filled, shared, compute-once basis cache.
class Ideal {
 public:
  Ideal() : Ideal(0) {}
  explicit Ideal(std::size_t arity);
  Ideal(std::size_t arity, std::vector<Polynomial> generators);

  static Ideal unit(std::size_t arity);

  std::size_t arity() const { return arity_; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  /// Reduced Groebner basis (monic, sorted by descending leading monomial).
  const std::vector<Polynomial>& groebner_basis(const MonomialOrder& ord) const;

  Ideal operator+(const Ideal& o) const;
  Ideal with(const Polynomial& f) const;
  Ideal with(const std::vector<Polynomial>& fs) const;
  Ideal embed(std::size_t new_arity, std::span<const std::size_t> map) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::string, std::shared_ptr<const std::vector<Polynomial>>> bases;
  };

  std::size_t arity_ = 0;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Reduced Groebner basis of the given generators (Buchberger with the
/// product and chain criteria, normal pair selection).
std::vector<Polynomial> groebner_basis(const Ideal& ideal, const MonomialOrder& ord);
std::vector<Polynomial> compute_groebner_basis(std::size_t arity, std::vector<Polynomial> gens,
                                               const MonomialOrder& ord);

/// Remainder of full reduction modulo the reduced basis; zero iff f in I.
Polynomial normal_form(const Polynomial& f, const Ideal& ideal,
                       const MonomialOrder& ord = MonomialOrder::grevlex());
/// Remainder of full reduction by an explicit (Groebner) basis.
Polynomial reduce(const Polynomial& f, std::span<const Polynomial> basis, const MonomialOrder& ord);

bool contains(const Ideal& ideal, const Polynomial& f);
bool contains(const Ideal& big, const Ideal& small);
bool ideals_equal(const Ideal& a, const Ideal& b);
/// f in rad(I), via 1 in I + (1 - t f).
bool radical_contains(const Ideal& ideal, const Polynomial& f);
bool radicals_equal(const Ideal& a, const Ideal& b);
/// True iff 1 in I, i.e. V(I) is empty over the algebraic closure.
bool is_empty_variety(const Ideal& ideal);

/// I intersected with the ring of the variables not listed; arity is kept.
Ideal eliminate(const Ideal& ideal, const std::vector<std::size_t>& vars);
/// I : f^infinity.
Ideal saturate(const Ideal& ideal, const Polynomial& f);
/// I : J^infinity.
Ideal saturate(const Ideal& ideal, const Ideal& by);
Ideal intersect(const Ideal& a, const Ideal& b);
Ideal product(const Ideal& a, const Ideal& b);

/// Coefficients of f viewed as a polynomial in `vars`, ordered by descending
/// grevlex monomial in those variables. Coefficients live in the same ring.
std::vector<Polynomial> coefficients_wrt(const Polynomial& f, const std::vector<std::size_t>& vars);
std::vector<std::pair<Monomial, Polynomial>> collect_wrt(const Polynomial& f,
                                                          const std::vector<std::size_t>& vars);

/// S-polynomial of two nonzero polynomials under an order.
Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& ord);
/// Leading term of f under an order.
Term leading_term(const Polynomial& f, const MonomialOrder& ord);

// ---------------------------------------------------------------------------
// Text I/O with named variables.

std::string to_string(const Polynomial& p, std::span<const std::string> names);
/// Parses +, -, *, ^ (non-negative integer exponents), integer/decimal-free
/// rational literals and parentheses. Division only by scalar literals.
Polynomial parse_polynomial(std::string_view text, std::span<const std::string> names);

}  // namespace weilreg
