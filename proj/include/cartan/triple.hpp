#pragma once

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "cartan/types.hpp"

namespace cartan {

// The triple (U(n), U(n_1) x ... x U(n_k), U(m_1) x ... x U(m_l)).
struct TripleSpec {
  int n = 0;
  std::vector<int> l_parts;
  std::vector<int> h_parts;

  void validate() const {
    if (n < 2 || l_parts.size() < 2 || h_parts.size() < 2)
      throw InvalidSpec("need n >= 2 and at least two parts on each side");
    auto check = [&](const std::vector<int>& parts) {
      int s = 0;
      for (int p : parts) {
        if (p < 1) throw InvalidSpec("parts must be positive");
        s += p;
      }
      if (s != n) throw InvalidSpec("parts must sum to n");
    };
    check(l_parts);
    check(h_parts);
  }

  int k() const { return static_cast<int>(l_parts.size()); }
  int l() const { return static_cast<int>(h_parts.size()); }
  int min_l_part() const { return *std::min_element(l_parts.begin(), l_parts.end()); }
  int min_h_part() const { return *std::min_element(h_parts.begin(), h_parts.end()); }

  TripleSpec swapped() const { return {n, h_parts, l_parts}; }
  TripleSpec flipped() const {
    TripleSpec t = *this;
    std::reverse(t.l_parts.begin(), t.l_parts.end());
    std::reverse(t.h_parts.begin(), t.h_parts.end());
    return t;
  }
};

enum class Case {
  Zero,
  I,
  II,
  III,
  IPrime,
  IIPrime,
  IIIPrime,
  NotSurjective,
};

inline std::string case_name(Case c) {
  switch (c) {
    case Case::Zero: return "0";
    case Case::I: return "I";
    case Case::II: return "II";
    case Case::III: return "III";
    case Case::IPrime: return "I'";
    case Case::IIPrime: return "II'";
    case Case::IIIPrime: return "III'";
    case Case::NotSurjective: return "NotSurjective";
  }
  return "?";
}

inline bool is_primed(Case c) {
  return c == Case::IPrime || c == Case::IIPrime || c == Case::IIIPrime;
}

inline Case unprimed(Case c) {
  switch (c) {
    case Case::IPrime: return Case::I;
    case Case::IIPrime: return Case::II;
    case Case::IIIPrime: return Case::III;
    default: return c;
  }
}

// Case label together with the normalization that maps the spec onto the
// construction actually run: an optional side swap (decompose g^{-1} with the
// roles of L and H exchanged) followed by an optional reversal conjugation
// (coordinate i -> n+1-i on both sides).
struct CaseLabel {
  Case c = Case::NotSurjective;
  bool swapped = false;
  bool flipped = false;
};

namespace detail {

inline bool wants_flip(Case base, const TripleSpec& s) {
  switch (base) {
    case Case::I: {
      // put a unit block first when one sits at either end
      const auto& lp = s.l_parts;
      return lp.front() != 1 && lp.back() == 1;
    }
    case Case::II:
      return s.h_parts[0] > s.h_parts[1];  // want p <= q, i.e. p = 2 first
    case Case::III:
      return s.h_parts[0] != 1 && s.h_parts[1] == 1;  // want h-parts (1, n-1)
    default:
      return false;
  }
}

}  // namespace detail

// Theorem A(iii) condition table on (k, l, N, M), with the documented
// precedence 0 > I > II > III > I' > II' > III' when rows overlap.
inline CaseLabel classify(const TripleSpec& spec) {
  spec.validate();
  const int k = spec.k(), l = spec.l();
  const int N = spec.min_l_part(), M = spec.min_h_part();
  Case c = Case::NotSurjective;
  if (k == 2 && l == 2)
    c = Case::Zero;
  else if (k == 3 && N == 1 && l == 2)
    c = Case::I;
  else if (k == 3 && N >= 2 && l == 2 && M == 2)
    c = Case::II;
  else if (l == 2 && M == 1)
    c = Case::III;
  else if (k == 2 && l == 3 && M == 1)
    c = Case::IPrime;
  else if (k == 2 && N == 2 && l == 3 && M >= 2)
    c = Case::IIPrime;
  else if (k == 2 && N == 1)
    c = Case::IIIPrime;

  CaseLabel label;
  label.c = c;
  if (c == Case::NotSurjective) return label;
  label.swapped = is_primed(c);
  TripleSpec normalized = label.swapped ? spec.swapped() : spec;
  label.flipped = detail::wants_flip(unprimed(c), normalized);
  return label;
}

// Expected rotation-word length for Theorem B's shape table, evaluated on the
// spec as given (the swap for primed cases is applied internally).
struct BShape {
  int length = 0;
  // canonical plane list (1-based, word order) when the normalized layout
  // admits one; empty otherwise
  std::vector<std::pair<int, int>> planes;
  bool planes_canonical = false;
};

inline BShape b_shape(Case c, const TripleSpec& spec) {
  spec.validate();
  if (c == Case::NotSurjective) throw NotApplicable("no word shape for a non-surjective spec");
  TripleSpec s = is_primed(c) ? spec.swapped() : spec;
  const Case base = unprimed(c);
  const int n = s.n;
  BShape out;
  switch (base) {
    case Case::Zero: {
      const int len = std::min(std::min(s.l_parts[0], s.l_parts[1]),
                               std::min(s.h_parts[0], s.h_parts[1]));
      out.length = len;
      for (int i = 1; i <= len; ++i) out.planes.emplace_back(i, n + 1 - i);
      out.planes_canonical = !is_primed(c);
      break;
    }
    case Case::I: {
      // non-unit parts act as (n2, n3)
      std::vector<int> rest;
      bool unit_taken = false;
      for (int part : s.l_parts) {
        if (part == 1 && !unit_taken) {
          unit_taken = true;
          continue;
        }
        rest.push_back(part);
      }
      const int p = s.h_parts[0], q = s.h_parts[1];
      const int len = std::min(std::min(2 * p, 2 * q),
                               std::min(2 * rest[0] + 1, 2 * rest[1] + 1));
      out.length = len;
      const int nc = len / 2, nb = (len + 1) / 2;
      if (!is_primed(c) && s.l_parts[0] == 1) {
        for (int i = 1; i <= nc; ++i) out.planes.emplace_back(i + 1, n + 1 - i);
        for (int i = nb; i >= 1; --i) out.planes.emplace_back(i, n + 1 - i);
        out.planes_canonical = true;
      }
      break;
    }
    case Case::II: {
      out.length = 5;
      const int n1 = s.l_parts[0];
      const bool normalized = s.h_parts[0] == 2 && s.h_parts[0] <= s.h_parts[1];
      if (!is_primed(c) && normalized) {
        out.planes = {{n1 + 1, n}, {n1 + 2, n - 1}, {n1 + 1, n - 1}, {1, n}, {2, n - 1}};
        out.planes_canonical = true;
      }
      break;
    }
    case Case::III: {
      out.length = s.k() - 1;
      if (!is_primed(c) && s.h_parts[0] == 1) {
        int acc = 0;
        for (int j = 0; j + 1 < s.k(); ++j) {
          acc += s.l_parts[j];
          out.planes.emplace_back(1, acc + 1);
        }
        out.planes_canonical = true;
      }
      break;
    }
    default:
      break;
  }
  return out;
}

}  // namespace cartan
