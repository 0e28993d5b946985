#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bslab/numeric.hpp"

namespace bslab {

// Parameters of BS(m,n) = <s,t | t s^m t^-1 = s^n>, with 0 < |m| <= n.
class GroupParams {
 public:
  GroupParams(int m, int n);
  int m() const { return m_; }
  int n() const { return n_; }
  int abs_m() const { return m_ < 0 ? -m_ : m_; }
  friend bool operator==(const GroupParams& a, const GroupParams& b) {
    return a.m_ == b.m_ && a.n_ == b.n_;
  }
  friend bool operator!=(const GroupParams& a, const GroupParams& b) {
    return !(a == b);
  }

 private:
  int m_;
  int n_;
};

enum class Letter : std::uint8_t { s, s_inv, t, t_inv };

Letter inverse(Letter l);

// Free input word over {s, s^-1, t, t^-1}.
struct Word {
  std::vector<Letter> letters;
};

// Accepts "tssT" (capitals are inverses) and power syntax "s^3 t^{-1} s^-2".
Word parse_word(const std::string& text);
std::string word_to_string(const Word& w);

struct Syllable {
  int eps;  // +1 for t, -1 for t^-1
  Int a;
};

bool operator==(const Syllable& a, const Syllable& b);

// Britton-reduced canonical word  s^{a0} t^{e1} s^{a1} ... t^{ek} s^{ak}.
//
// s-powers are pushed rightward with
//   s^a t     = s^{a mod n}   t     s^{m * floor(a/n)}
//   s^a t^-1  = s^{a mod |m|} t^-1  s^{sgn(m) * n * floor(a/|m|)}
// so every exponent before a t-letter lies in the transversal range and the
// trailing exponent a_k is unconstrained.  Pinches reduce to literal t t^-1
// cancellations, which makes the form unique.
class NormalForm {
 public:
  explicit NormalForm(const GroupParams& params);  // identity
  static NormalForm s_power(const GroupParams& params, const Int& k);

  const GroupParams& params() const { return params_; }
  const Int& leading() const { return a0_; }  // a0
  const std::vector<Syllable>& syllables() const { return syllables_; }
  const Int& last_exponent() const;  // a_k, or a0 when there are no syllables
  std::size_t syllable_count() const { return syllables_.size(); }
  bool is_identity() const;

  // Same element with the trailing exponent zeroed: the canonical
  // representative of the coset (this)<s>.
  NormalForm coset_representative() const;

  bool operator==(const NormalForm& other) const;
  bool operator!=(const NormalForm& other) const { return !(*this == other); }
  bool operator<(const NormalForm& other) const;  // total order for sets

 private:
  friend class NormalFormBuilder;
  GroupParams params_;
  Int a0_;
  std::vector<Syllable> syllables_;
};

// Incremental right-multiplication keeping the canonical form.  A builder is
// the only way to mutate; published NormalForm values stay immutable.
class NormalFormBuilder {
 public:
  explicit NormalFormBuilder(const GroupParams& params);
  explicit NormalFormBuilder(NormalForm seed);

  void push_s(const Int& k);
  void push_t(int eps);
  void push(Letter l);
  void push_word(const Word& w);
  void push(const NormalForm& h);  // throws param_mismatch

  const Int& last_exponent() const { return nf_.last_exponent(); }
  std::size_t depth() const { return nf_.syllable_count(); }
  const NormalForm& view() const { return nf_; }
  NormalForm build() const { return nf_; }

 private:
  NormalForm nf_;
};

NormalForm reduce(const Word& w, const GroupParams& params);
NormalForm multiply(const NormalForm& g, const NormalForm& h);
NormalForm invert(const NormalForm& g);

// t-exponent sum; a homomorphism onto the integers that kills s.
long height(const NormalForm& g);

// Letter expansion of the canonical form (throws budget_error when the
// exponents are too large to expand).
Word expand(const NormalForm& g, std::size_t max_letters = 1u << 20);

// Structural check of the transversal and no-pinch invariants.
bool is_canonical(const NormalForm& g);

inline constexpr std::size_t kDefaultBallBudget = 2'000'000;
inline constexpr long kMaxBallRadius = 16;

// All distinct elements of word length <= radius, sorted canonically.
std::vector<NormalForm> ball(long radius, const GroupParams& params,
                             std::size_t max_elements = kDefaultBallBudget);

std::string to_string(const NormalForm& g);  // e.g. "s^2 t s^2", "1"

}  // namespace bslab
