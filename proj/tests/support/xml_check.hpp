// Minimal XML well-formedness checker (tags balanced, attributes quoted);
// enough to validate the emitted SVG documents independently.

#ifndef MOCAPCHECK_TESTS_XML_CHECK_HPP
#define MOCAPCHECK_TESTS_XML_CHECK_HPP

#include <cctype>
#include <string>
#include <vector>

namespace xmlcheck {

inline bool well_formed(const std::string& doc, std::string* why = nullptr) {
  auto fail = [&](const std::string& reason) {
    if (why) *why = reason;
    return false;
  };
  std::vector<std::string> stack;
  std::size_t i = 0;
  const std::size_t n = doc.size();
  bool saw_element = false;
  while (i < n) {
    if (doc[i] != '<') {
      ++i;
      continue;
    }
    if (doc.compare(i, 2, "<?") == 0) {
      const auto end = doc.find("?>", i);
      if (end == std::string::npos) return fail("unterminated declaration");
      i = end + 2;
      continue;
    }
    if (doc.compare(i, 4, "<!--") == 0) {
      const auto end = doc.find("-->", i);
      if (end == std::string::npos) return fail("unterminated comment");
      i = end + 3;
      continue;
    }
    const auto end = doc.find('>', i);
    if (end == std::string::npos) return fail("unterminated tag");
    std::string tag = doc.substr(i + 1, end - i - 1);
    i = end + 1;
    if (tag.empty()) return fail("empty tag");

    bool closing = false, self_closing = false;
    if (tag.front() == '/') {
      closing = true;
      tag.erase(0, 1);
    } else if (tag.back() == '/') {
      self_closing = true;
      tag.pop_back();
    }
    // quotes inside the tag must pair up
    int quotes = 0;
    for (char c : tag)
      if (c == '"') ++quotes;
    if (quotes % 2 != 0) return fail("unbalanced attribute quotes in <" + tag + ">");

    std::string name;
    for (char c : tag) {
      if (std::isspace(static_cast<unsigned char>(c))) break;
      name += c;
    }
    if (name.empty()) return fail("nameless tag");

    if (closing) {
      if (stack.empty()) return fail("closing </" + name + "> with empty stack");
      if (stack.back() != name)
        return fail("mismatch: expected </" + stack.back() + ">, got </" + name + ">");
      stack.pop_back();
    } else if (!self_closing) {
      stack.push_back(name);
      saw_element = true;
    } else {
      saw_element = true;
    }
  }
  if (!stack.empty()) return fail("unclosed <" + stack.back() + ">");
  if (!saw_element) return fail("no elements");
  return true;
}

inline std::size_t count_occurrences(const std::string& doc, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = doc.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace xmlcheck

#endif  // MOCAPCHECK_TESTS_XML_CHECK_HPP
