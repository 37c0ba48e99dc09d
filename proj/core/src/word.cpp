#include "schottky/word.hpp"

#include "schottky/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace schottky {

ReducedWord::ReducedWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (std::size_t i = 1; i < letters_.size(); ++i) {
    if (letters_[i - 1].cancels(letters_[i])) {
      throw InputError("word is not reduced at position " + std::to_string(i));
    }
  }
}

ReducedWord ReducedWord::parse(std::string_view text) {
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    const bool inverse = std::isupper(static_cast<unsigned char>(tok[0])) != 0;
    const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(tok[0])));
    if (tok.size() == 1 && lower >= 'a' && lower <= 'z') {
      letters.push_back({static_cast<std::size_t>(lower - 'a'), inverse});
    } else if (lower == 'g' && tok.size() > 1 &&
               std::all_of(tok.begin() + 1, tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
      letters.push_back({std::stoul(tok.substr(1)) - 1, inverse});
    } else {
      throw InputError("bad letter '" + tok + "'");
    }
  }
  return ReducedWord(std::move(letters));
}

std::size_t ReducedWord::hash() const {
  std::size_t h = letters_.size();
  for (const auto& l : letters_) h = h * 1000003U + l.code();
  return h;
}

std::string ReducedWord::to_string() const {
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    if (l.generator < 26) {
      const char c = static_cast<char>('a' + l.generator);
      out += l.inverse ? static_cast<char>(std::toupper(c)) : c;
    } else {
      out += (l.inverse ? "G" : "g") + std::to_string(l.generator + 1);
    }
  }
  return out;
}

std::strong_ordering operator<=>(const ReducedWord& a, const ReducedWord& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(), b.letters_.begin(),
                                                b.letters_.end());
}

}  // namespace schottky
