#ifndef SIGMAL_WORD_HPP
#define SIGMAL_WORD_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace sigmal {

// A word over the alphabet {0, 1, ..., d}. Letter 0 is reserved for the time
// coordinate of time-augmented paths. Letters are stored as raw bytes, not
// ASCII; to_digits()/from_digits() convert to the printable form used by the
// text serialization, where the empty word is written "e".
class Word {
 public:
  Word() = default;

  static Word single(int letter) {
    Word w;
    w.push_back(letter);
    return w;
  }

  // Parses a digit string such as "01101". "e" (or "") is the empty word.
  static Word from_digits(std::string_view digits);

  std::string to_digits() const;

  int size() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  int letter(int i) const { return static_cast<unsigned char>(letters_[i]); }
  int max_letter() const;
  // Number of occurrences of `letter` in the word.
  int count(int letter) const;

  void push_back(int letter) { letters_.push_back(static_cast<char>(letter)); }

  Word concat(const Word& other) const {
    Word w;
    w.letters_ = letters_ + other.letters_;
    return w;
  }
  // letters [from, from+len)
  Word sub(int from, int len) const {
    Word w;
    w.letters_ = letters_.substr(from, len);
    return w;
  }
  Word prefix(int len) const { return sub(0, len); }
  Word suffix(int from) const { return sub(from, size() - from); }
  Word reversed() const;

  bool matches_at(const Word& pattern, int pos) const {
    return letters_.compare(pos, pattern.letters_.size(), pattern.letters_) == 0;
  }

  bool operator==(const Word& other) const { return letters_ == other.letters_; }
  bool operator!=(const Word& other) const { return letters_ != other.letters_; }

  // Graded lexicographic order: by length first, then letter-wise. This is the
  // canonical term order of TensorPoly, so the last term of a poly has maximal
  // length.
  bool operator<(const Word& other) const {
    if (letters_.size() != other.letters_.size())
      return letters_.size() < other.letters_.size();
    return letters_ < other.letters_;
  }

  const std::string& bytes() const { return letters_; }

 private:
  std::string letters_;
};

}  // namespace sigmal

#endif
