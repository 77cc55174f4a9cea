#include "toric/normal_form.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace toric {

std::vector<Integer> SmithForm::invariant_factors() const {
  std::vector<Integer> out;
  const std::size_t k = std::min(S.rows(), S.cols());
  for (std::size_t i = 0; i < k; ++i)
    if (S(i, i) != 0) out.push_back(S(i, i));
  return out;
}

namespace {

// Position of the nonzero entry of smallest magnitude in the block [t.., t..].
std::optional<std::pair<std::size_t, std::size_t>> smallest_entry(const IntegerMatrix& s, std::size_t t) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  for (std::size_t i = t; i < s.rows(); ++i)
    for (std::size_t j = t; j < s.cols(); ++j) {
      if (s(i, j) == 0) continue;
      if (!best || abs(s(i, j)) < abs(s(best->first, best->second))) best = {i, j};
    }
  return best;
}

}  // namespace

SmithForm smith_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithForm f{IntegerMatrix::identity(m), a, IntegerMatrix::identity(n)};
  IntegerMatrix& S = f.S;
  IntegerMatrix& U = f.U;
  IntegerMatrix& V = f.V;

  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    for (;;) {
      auto pos = smallest_entry(S, t);
      if (!pos) return f;  // remaining block is zero
      S.swap_rows(t, pos->first);
      U.swap_rows(t, pos->first);
      S.swap_cols(t, pos->second);
      V.swap_cols(t, pos->second);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (S(i, t) == 0) continue;
        Integer q = -floor_div(S(i, t), S(t, t));
        S.add_row_multiple(i, t, q);
        U.add_row_multiple(i, t, q);
        if (S(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (S(t, j) == 0) continue;
        Integer q = -floor_div(S(t, j), S(t, t));
        S.add_col_multiple(j, t, q);
        V.add_col_multiple(j, t, q);
        if (S(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // Enforce divisibility of the rest of the block by the pivot.
      std::optional<std::size_t> offender;
      for (std::size_t i = t + 1; i < m && !offender; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (S(i, j) % S(t, t) != 0) {
            offender = i;
            break;
          }
      if (!offender) break;
      S.add_row_multiple(t, *offender, 1);
      U.add_row_multiple(t, *offender, 1);
    }
    if (S(t, t) < 0) {
      S.negate_row(t);
      U.negate_row(t);
    }
  }
  return f;
}

IntegerMatrix HermiteForm::basis() const {
  IntegerMatrix b(rank, H.cols());
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < H.cols(); ++j) b(i, j) = H(i, j);
  return b;
}

HermiteForm hermite_normal_form(const IntegerMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  HermiteForm f{a, IntegerMatrix::identity(m), 0, {}};
  IntegerMatrix& H = f.H;
  IntegerMatrix& U = f.U;
  std::size_t r = 0;

  for (std::size_t c = 0; c < n && r < m; ++c) {
    for (;;) {
      std::optional<std::size_t> p;
      for (std::size_t i = r; i < m; ++i)
        if (H(i, c) != 0 && (!p || abs(H(i, c)) < abs(H(*p, c)))) p = i;
      if (!p) break;
      H.swap_rows(r, *p);
      U.swap_rows(r, *p);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (H(i, c) == 0) continue;
        Integer q = -floor_div(H(i, c), H(r, c));
        H.add_row_multiple(i, r, q);
        U.add_row_multiple(i, r, q);
        if (H(i, c) != 0) clean = false;
      }
      if (clean) break;
    }
    if (H(r, c) == 0) continue;  // no pivot in this column
    if (H(r, c) < 0) {
      H.negate_row(r);
      U.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = -floor_div(H(i, c), H(r, c));
      H.add_row_multiple(i, r, q);
      U.add_row_multiple(i, r, q);
    }
    f.pivot_cols.push_back(c);
    ++r;
  }
  f.rank = r;
  return f;
}

std::size_t rank_of(const IntegerMatrix& a) { return hermite_normal_form(a).rank; }

}  // namespace toric
