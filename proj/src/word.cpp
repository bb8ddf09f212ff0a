#include "sigmal/word.hpp"

#include <algorithm>
#include <stdexcept>

namespace sigmal {

Word Word::from_digits(std::string_view digits) {
  Word w;
  if (digits == "e" || digits.empty()) return w;
  for (char c : digits) {
    if (c < '0' || c > '9')
      throw std::invalid_argument("word digit string may only contain 0-9, got '" +
                                  std::string(digits) + "'");
    w.push_back(c - '0');
  }
  return w;
}

std::string Word::to_digits() const {
  if (empty()) return "e";
  std::string out;
  out.reserve(letters_.size());
  for (char c : letters_) out.push_back(static_cast<char>('0' + c));
  return out;
}

int Word::max_letter() const {
  int m = -1;
  for (char c : letters_) m = std::max(m, static_cast<int>(static_cast<unsigned char>(c)));
  return m;
}

int Word::count(int letter) const {
  return static_cast<int>(
      std::count(letters_.begin(), letters_.end(), static_cast<char>(letter)));
}

Word Word::reversed() const {
  Word w;
  w.letters_.assign(letters_.rbegin(), letters_.rend());
  return w;
}

}  // namespace sigmal
