#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace looplemma {

  using Letter = std::uint32_t;

  // A finite word over the alphabet [0, n). Immutable value type; slicing
  // copies. Indexing follows the half-open convention x[i:j].
  class Word {
   public:
    Word() = default;
    Word(std::vector<Letter> letters, std::size_t alphabet);

    static Word constant(Letter letter, std::size_t length, std::size_t alphabet);

    // Inverse of code(): the word of the given length whose base-n
    // expansion (leftmost letter most significant) equals `code`.
    static Word from_code(std::uint64_t code, std::size_t length, std::size_t alphabet);

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    std::size_t alphabet() const noexcept { return alphabet_; }

    Letter operator[](std::size_t i) const { return letters_[i]; }
    Letter at(std::size_t i) const { return letters_.at(i); }
    std::span<Letter const> letters() const noexcept { return letters_; }

    // x[i:j]; requires i <= j <= size().
    Word slice(std::size_t i, std::size_t j) const;
    Word slice_from(std::size_t i) const { return slice(i, size()); }
    Word prefix(std::size_t j) const { return slice(0, j); }

    // x[1:] + [next], the successor word used throughout the construction.
    Word shifted(Letter next) const;

    bool is_constant() const noexcept;

    // Base-n code, leftmost letter most significant. Requires n^|x| < 2^64.
    std::uint64_t code() const;

    friend Word operator+(Word const& lhs, Word const& rhs);
    friend bool operator==(Word const&, Word const&) = default;
    friend auto operator<=>(Word const& lhs, Word const& rhs) {
      return lhs.letters_ <=> rhs.letters_;
    }

   private:
    std::vector<Letter> letters_;
    std::size_t         alphabet_ = 0;
  };

  // True iff x[i] == x[i+k] whenever both indices are valid. k = 0 throws.
  bool is_periodic(std::span<Letter const> x, std::size_t k);
  inline bool is_periodic(Word const& x, std::size_t k) {
    return is_periodic(x.letters(), k);
  }

  // Smallest k >= 1 such that x is k-periodic. Empty words throw.
  std::size_t shortest_period(std::span<Letter const> x);
  inline std::size_t shortest_period(Word const& x) {
    return shortest_period(x.letters());
  }

  // One instance of the Fine-Wilf periodicity lemma: if |x| >= a+b-gcd(a,b)
  // and x is both a- and b-periodic then x is gcd(a,b)-periodic. Returns the
  // truth value of the implication, so it must always be true.
  bool periodicity_lemma_check(Word const& x, std::size_t a, std::size_t b);

  // Checked integer power n^k; throws BudgetExceeded when the result would
  // exceed `cap`.
  std::uint64_t checked_pow(std::uint64_t n, std::uint64_t k, std::uint64_t cap);

}  // namespace looplemma
