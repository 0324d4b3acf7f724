#include "looplemma/words.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "looplemma/errors.hpp"

namespace looplemma {

  Word::Word(std::vector<Letter> letters, std::size_t alphabet)
      : letters_(std::move(letters)), alphabet_(alphabet) {
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (letters_[i] >= alphabet_) {
        throw InvalidArgument("letter " + std::to_string(letters_[i]) + " at position "
                              + std::to_string(i) + " is outside the alphabet [0, "
                              + std::to_string(alphabet_) + ")");
      }
    }
  }

  Word Word::constant(Letter letter, std::size_t length, std::size_t alphabet) {
    return Word(std::vector<Letter>(length, letter), alphabet);
  }

  Word Word::from_code(std::uint64_t code, std::size_t length, std::size_t alphabet) {
    if (alphabet == 0) {
      throw InvalidArgument("alphabet must be non-empty");
    }
    std::vector<Letter> letters(length);
    for (std::size_t i = length; i-- > 0;) {
      letters[i] = static_cast<Letter>(code % alphabet);
      code /= alphabet;
    }
    if (code != 0) {
      throw InvalidArgument("word code does not fit the requested length");
    }
    Word w;
    w.letters_  = std::move(letters);
    w.alphabet_ = alphabet;
    return w;
  }

  Word Word::slice(std::size_t i, std::size_t j) const {
    if (i > j || j > size()) {
      throw InvalidArgument("invalid slice [" + std::to_string(i) + ":" + std::to_string(j)
                            + "] of a word of length " + std::to_string(size()));
    }
    Word w;
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(i),
                      letters_.begin() + static_cast<std::ptrdiff_t>(j));
    w.alphabet_ = alphabet_;
    return w;
  }

  Word Word::shifted(Letter next) const {
    if (empty()) {
      throw InvalidArgument("cannot shift an empty word");
    }
    if (next >= alphabet_) {
      throw InvalidArgument("shift letter outside the alphabet");
    }
    Word w;
    w.letters_.reserve(size());
    w.letters_.assign(letters_.begin() + 1, letters_.end());
    w.letters_.push_back(next);
    w.alphabet_ = alphabet_;
    return w;
  }

  bool Word::is_constant() const noexcept {
    return std::adjacent_find(letters_.begin(), letters_.end(), std::not_equal_to<>())
           == letters_.end();
  }

  std::uint64_t Word::code() const {
    std::uint64_t c = 0;
    for (Letter l : letters_) {
      if (c > (std::numeric_limits<std::uint64_t>::max() - l) / std::max<std::size_t>(alphabet_, 1)) {
        throw BudgetExceeded("word code overflows 64 bits", size(), 64);
      }
      c = c * alphabet_ + l;
    }
    return c;
  }

  Word operator+(Word const& lhs, Word const& rhs) {
    if (lhs.alphabet_ != rhs.alphabet_) {
      throw InvalidArgument("cannot concatenate words over different alphabets");
    }
    Word w;
    w.letters_.reserve(lhs.size() + rhs.size());
    w.letters_.insert(w.letters_.end(), lhs.letters_.begin(), lhs.letters_.end());
    w.letters_.insert(w.letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
    w.alphabet_ = lhs.alphabet_;
    return w;
  }

  bool is_periodic(std::span<Letter const> x, std::size_t k) {
    if (k == 0) {
      throw InvalidArgument("period must be positive");
    }
    if (k >= x.size()) {
      return true;
    }
    return std::equal(x.begin(), x.end() - static_cast<std::ptrdiff_t>(k),
                      x.begin() + static_cast<std::ptrdiff_t>(k));
  }

  std::size_t shortest_period(std::span<Letter const> x) {
    if (x.empty()) {
      throw InvalidArgument("the empty word has no shortest period");
    }
    for (std::size_t k = 1;; ++k) {
      if (is_periodic(x, k)) {
        return k;
      }
    }
  }

  bool periodicity_lemma_check(Word const& x, std::size_t a, std::size_t b) {
    if (a == 0 || b == 0) {
      throw InvalidArgument("periods must be positive");
    }
    std::size_t const g = std::gcd(a, b);
    if (x.size() < a + b - g || !is_periodic(x, a) || !is_periodic(x, b)) {
      return true;
    }
    return is_periodic(x, g);
  }

  std::uint64_t checked_pow(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
      if (n != 0 && r > cap / n) {
        throw BudgetExceeded(std::to_string(n) + "^" + std::to_string(k) + " exceeds the budget",
                             std::numeric_limits<std::size_t>::max(), cap);
      }
      r *= n;
    }
    if (r > cap) {
      throw BudgetExceeded(std::to_string(n) + "^" + std::to_string(k) + " exceeds the budget",
                           r, cap);
    }
    return r;
  }

}  // namespace looplemma
