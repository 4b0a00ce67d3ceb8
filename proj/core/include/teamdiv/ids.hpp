#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace teamdiv {

// Dense identifiers handed out by Corpus. Numeric order equals the
// lexicographic order of the underlying names, so sorting by id is the
// same as sorting by name.
struct AuthorId {
  std::uint32_t value = 0;
  friend auto operator<=>(const AuthorId&, const AuthorId&) = default;
};

struct TopicId {
  std::uint32_t value = 0;
  friend auto operator<=>(const TopicId&, const TopicId&) = default;
};

// Position of a paper inside a Corpus (record order).
using PaperIndex = std::uint32_t;

}  // namespace teamdiv

template <>
struct std::hash<teamdiv::AuthorId> {
  std::size_t operator()(teamdiv::AuthorId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};

template <>
struct std::hash<teamdiv::TopicId> {
  std::size_t operator()(teamdiv::TopicId id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
