#include "bslab/group.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

namespace bslab {

GroupParams::GroupParams(int m, int n) : m_(m), n_(n) {
  if (m == 0) throw std::invalid_argument("m must be nonzero");
  if (n <= 0) throw std::invalid_argument("n must be positive");
  const int am = m < 0 ? -m : m;
  if (am > n) throw std::invalid_argument("require 0 < |m| <= n");
}

Letter inverse(Letter l) {
  switch (l) {
    case Letter::s: return Letter::s_inv;
    case Letter::s_inv: return Letter::s;
    case Letter::t: return Letter::t_inv;
    case Letter::t_inv: return Letter::t;
  }
  throw std::logic_error("bad letter");
}

namespace {

constexpr std::size_t kMaxParsedLetters = 1u << 20;

void append_power(std::vector<Letter>& out, Letter base, long exp) {
  Letter l = exp < 0 ? inverse(base) : base;
  unsigned long count = exp < 0 ? static_cast<unsigned long>(-exp)
                                : static_cast<unsigned long>(exp);
  if (out.size() + count > kMaxParsedLetters)
    throw parse_error("word too long to expand");
  for (unsigned long i = 0; i < count; ++i) out.push_back(l);
}

}  // namespace

Word parse_word(const std::string& text) {
  Word w;
  std::size_t i = 0;
  const std::size_t len = text.size();
  while (i < len) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == '*') {
      ++i;
      continue;
    }
    Letter base;
    switch (c) {
      case 's': base = Letter::s; break;
      case 'S': base = Letter::s_inv; break;
      case 't': base = Letter::t; break;
      case 'T': base = Letter::t_inv; break;
      default:
        throw parse_error("unexpected character '" + std::string(1, c) +
                          "' at position " + std::to_string(i + 1));
    }
    ++i;
    long exp = 1;
    if (i < len && text[i] == '^') {
      ++i;
      bool braced = false;
      if (i < len && text[i] == '{') {
        braced = true;
        ++i;
      }
      std::size_t start = i;
      if (i < len && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < len && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start || (i == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
        throw parse_error("missing exponent at position " + std::to_string(start + 1));
      try {
        exp = std::stol(text.substr(start, i - start));
      } catch (const std::out_of_range&) {
        throw parse_error("exponent out of range at position " + std::to_string(start + 1));
      }
      if (exp <= -static_cast<long>(kMaxParsedLetters) ||
          exp >= static_cast<long>(kMaxParsedLetters))
        throw parse_error("exponent too large to expand");
      if (braced) {
        if (i >= len || text[i] != '}')
          throw parse_error("missing '}' at position " + std::to_string(i + 1));
        ++i;
      }
    }
    append_power(w.letters, base, exp);
  }
  return w;
}

std::string word_to_string(const Word& w) {
  std::string out;
  for (Letter l : w.letters) {
    switch (l) {
      case Letter::s: out += 's'; break;
      case Letter::s_inv: out += 'S'; break;
      case Letter::t: out += 't'; break;
      case Letter::t_inv: out += 'T'; break;
    }
  }
  return out;
}

bool operator==(const Syllable& a, const Syllable& b) {
  return a.eps == b.eps && a.a == b.a;
}

NormalForm::NormalForm(const GroupParams& params) : params_(params), a0_(0) {}

NormalForm NormalForm::s_power(const GroupParams& params, const Int& k) {
  NormalForm nf(params);
  nf.a0_ = k;
  return nf;
}

const Int& NormalForm::last_exponent() const {
  return syllables_.empty() ? a0_ : syllables_.back().a;
}

bool NormalForm::is_identity() const {
  return syllables_.empty() && a0_ == 0;
}

NormalForm NormalForm::coset_representative() const {
  NormalForm copy = *this;
  if (copy.syllables_.empty())
    copy.a0_ = 0;
  else
    copy.syllables_.back().a = 0;
  return copy;
}

bool NormalForm::operator==(const NormalForm& other) const {
  return params_ == other.params_ && a0_ == other.a0_ &&
         syllables_ == other.syllables_;
}

bool NormalForm::operator<(const NormalForm& other) const {
  if (int c = cmp(a0_, other.a0_); c != 0) return c < 0;
  if (syllables_.size() != other.syllables_.size())
    return syllables_.size() < other.syllables_.size();
  for (std::size_t i = 0; i < syllables_.size(); ++i) {
    if (syllables_[i].eps != other.syllables_[i].eps)
      return syllables_[i].eps < other.syllables_[i].eps;
    if (int c = cmp(syllables_[i].a, other.syllables_[i].a); c != 0)
      return c < 0;
  }
  return false;
}

NormalFormBuilder::NormalFormBuilder(const GroupParams& params) : nf_(params) {}

NormalFormBuilder::NormalFormBuilder(NormalForm seed) : nf_(std::move(seed)) {}

void NormalFormBuilder::push_s(const Int& k) {
  if (nf_.syllables_.empty())
    nf_.a0_ += k;
  else
    nf_.syllables_.back().a += k;
}

void NormalFormBuilder::push_t(int eps) {
  if (eps != 1 && eps != -1) throw std::invalid_argument("eps must be +-1");
  const GroupParams& P = nf_.params_;
  Int& cur = nf_.syllables_.empty() ? nf_.a0_ : nf_.syllables_.back().a;
  Int rem, carry;
  if (eps == 1) {
    const Int base(P.n());
    rem = floor_mod(cur, base);
    carry = Int(P.m()) * floor_div(cur, base);
  } else {
    const Int base(P.abs_m());
    rem = floor_mod(cur, base);
    carry = Int(P.n()) * floor_div(cur, base);
    if (P.m() < 0) carry = -carry;
  }
  if (rem == 0 && !nf_.syllables_.empty() &&
      nf_.syllables_.back().eps == -eps) {
    nf_.syllables_.pop_back();
    push_s(carry);
    return;
  }
  cur = rem;
  nf_.syllables_.push_back(Syllable{eps, carry});
}

void NormalFormBuilder::push(Letter l) {
  switch (l) {
    case Letter::s: push_s(1); break;
    case Letter::s_inv: push_s(-1); break;
    case Letter::t: push_t(1); break;
    case Letter::t_inv: push_t(-1); break;
  }
}

void NormalFormBuilder::push_word(const Word& w) {
  for (Letter l : w.letters) push(l);
}

void NormalFormBuilder::push(const NormalForm& h) {
  if (h.params() != nf_.params_)
    throw param_mismatch("operands have different (m, n)");
  push_s(h.leading());
  for (const Syllable& syl : h.syllables()) {
    push_t(syl.eps);
    push_s(syl.a);
  }
}

NormalForm reduce(const Word& w, const GroupParams& params) {
  NormalFormBuilder b(params);
  b.push_word(w);
  return b.build();
}

NormalForm multiply(const NormalForm& g, const NormalForm& h) {
  NormalFormBuilder b(g);
  b.push(h);
  return b.build();
}

NormalForm invert(const NormalForm& g) {
  NormalFormBuilder b(g.params());
  const auto& syl = g.syllables();
  b.push_s(-g.last_exponent());
  for (std::size_t i = syl.size(); i-- > 0;) {
    b.push_t(-syl[i].eps);
    b.push_s(i == 0 ? Int(-g.leading()) : Int(-syl[i - 1].a));
  }
  return b.build();
}

long height(const NormalForm& g) {
  long h = 0;
  for (const Syllable& syl : g.syllables()) h += syl.eps;
  return h;
}

Word expand(const NormalForm& g, std::size_t max_letters) {
  Word w;
  auto push_power = [&](Letter base, const Int& k) {
    if (k == 0) return;
    Int count = abs(k);
    if (!count.fits_ulong_p() ||
        w.letters.size() + count.get_ui() > max_letters)
      throw budget_error("expansion exceeds letter budget");
    Letter l = k < 0 ? inverse(base) : base;
    for (unsigned long i = 0, n = count.get_ui(); i < n; ++i)
      w.letters.push_back(l);
  };
  push_power(Letter::s, g.leading());
  for (const Syllable& syl : g.syllables()) {
    if (w.letters.size() + 1 > max_letters)
      throw budget_error("expansion exceeds letter budget");
    w.letters.push_back(syl.eps == 1 ? Letter::t : Letter::t_inv);
    push_power(Letter::s, syl.a);
  }
  return w;
}

bool is_canonical(const NormalForm& g) {
  const GroupParams& P = g.params();
  const auto& syl = g.syllables();
  for (std::size_t i = 0; i < syl.size(); ++i) {
    const Int& before = i == 0 ? g.leading() : syl[i - 1].a;
    const int bound = syl[i].eps == 1 ? P.n() : P.abs_m();
    if (before < 0 || before >= bound) return false;
    if (i > 0 && before == 0 && syl[i - 1].eps == -syl[i].eps) return false;
  }
  return true;
}

std::vector<NormalForm> ball(long radius, const GroupParams& params,
                             std::size_t max_elements) {
  if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
  if (radius > kMaxBallRadius)
    throw budget_error("ball radius beyond desk-scale guard");
  std::set<NormalForm> seen;
  std::vector<NormalForm> frontier;
  NormalForm id(params);
  seen.insert(id);
  frontier.push_back(id);
  const Letter gens[4] = {Letter::s, Letter::s_inv, Letter::t, Letter::t_inv};
  for (long len = 1; len <= radius; ++len) {
    std::vector<NormalForm> next;
    for (const NormalForm& g : frontier) {
      for (Letter l : gens) {
        NormalFormBuilder b(g);
        b.push(l);
        NormalForm candidate = b.build();
        if (seen.insert(candidate).second) {
          if (seen.size() > max_elements)
            throw budget_error("ball exceeds element budget");
          next.push_back(std::move(candidate));
        }
      }
    }
    frontier = std::move(next);
  }
  return std::vector<NormalForm>(seen.begin(), seen.end());
}

std::string to_string(const NormalForm& g) {
  std::string out;
  auto append_factor = [&](const std::string& base, const Int& k) {
    if (k == 0) return;
    if (!out.empty()) out += ' ';
    out += base;
    if (k != 1) out += "^" + k.get_str();
  };
  append_factor("s", g.leading());
  for (const Syllable& syl : g.syllables()) {
    if (!out.empty()) out += ' ';
    out += syl.eps == 1 ? "t" : "t^-1";
    append_factor("s", syl.a);
  }
  return out.empty() ? "1" : out;
}

}  // namespace bslab
