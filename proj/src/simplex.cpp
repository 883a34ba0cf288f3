#include "lyapcert/simplex.hpp"

#include <optional>
#include <stdexcept>

namespace lyapcert {

namespace {

class Tableau {
 public:
  Tableau(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b)
      : m_(a.size()), n_(a.empty() ? 0 : a.front().size()), flip_(m_, 1) {
    rows_.resize(m_);
    rhs_.resize(m_);
    basis_.resize(m_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (b[r].sign() < 0) flip_[r] = -1;
      const Rational s(flip_[r]);
      rows_[r].reserve(n_ + m_);
      for (const auto& v : a[r]) rows_[r].push_back(v * s);
      for (std::size_t i = 0; i < m_; ++i) rows_[r].push_back(Rational(i == r ? 1 : 0));
      rhs_[r] = b[r] * s;
      basis_[r] = n_ + r;
    }
  }

  std::size_t structural() const { return n_; }
  bool is_artificial(std::size_t j) const { return j >= n_; }

  // Minimizes cost.z over columns [0, allowed), returns false if unbounded.
  bool optimize(const std::vector<Rational>& cost, std::size_t allowed, unsigned& pivots) {
    for (;;) {
      const auto entering = entering_column(cost, allowed);
      if (!entering) return true;
      const auto leaving = leaving_row(*entering);
      if (!leaving) return false;
      pivot(*leaving, *entering);
      ++pivots;
    }
  }

  // Pivots basic artificials out where a structural column allows it. Rows
  // with no structural entry are redundant and keep their artificial at 0.
  void expel_artificials(unsigned& pivots) {
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!rows_[r][j].is_zero()) {
          pivot(r, j);
          ++pivots;
          break;
        }
      }
    }
  }

  Rational objective(const std::vector<Rational>& cost) const {
    Rational v;
    for (std::size_t r = 0; r < m_; ++r) v += cost[basis_[r]] * rhs_[r];
    return v;
  }

  std::vector<Rational> primal() const {
    std::vector<Rational> z(n_);
    for (std::size_t r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) z[basis_[r]] = rhs_[r];
    }
    return z;
  }

  // The artificial block of the tableau holds B^-1, so y = c_B B^-1.
  std::vector<Rational> duals(const std::vector<Rational>& cost) const {
    std::vector<Rational> y(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      Rational v;
      for (std::size_t r = 0; r < m_; ++r) v += cost[basis_[r]] * rows_[r][n_ + i];
      y[i] = v * Rational(flip_[i]);
    }
    return y;
  }

 private:
  Rational reduced_cost(const std::vector<Rational>& cost, std::size_t j) const {
    Rational d = cost[j];
    for (std::size_t r = 0; r < m_; ++r) {
      if (!rows_[r][j].is_zero()) d -= cost[basis_[r]] * rows_[r][j];
    }
    return d;
  }

  std::optional<std::size_t> entering_column(const std::vector<Rational>& cost, std::size_t allowed) const {
    for (std::size_t j = 0; j < allowed; ++j) {
      if (is_basic(j)) continue;
      if (reduced_cost(cost, j).sign() < 0) return j;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> leaving_row(std::size_t j) const {
    std::optional<std::size_t> best;
    Rational best_ratio;
    for (std::size_t r = 0; r < m_; ++r) {
      if (rows_[r][j].sign() <= 0) continue;
      const Rational ratio = rhs_[r] / rows_[r][j];
      if (!best || ratio < best_ratio || (ratio == best_ratio && basis_[r] < basis_[*best])) {
        best = r;
        best_ratio = ratio;
      }
    }
    return best;
  }

  bool is_basic(std::size_t j) const {
    for (const auto b : basis_) {
      if (b == j) return true;
    }
    return false;
  }

  void pivot(std::size_t r, std::size_t j) {
    const Rational inv = rows_[r][j].inverse();
    for (auto& v : rows_[r]) {
      if (!v.is_zero()) v *= inv;
    }
    rhs_[r] *= inv;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || rows_[i][j].is_zero()) continue;
      const Rational factor = rows_[i][j];
      for (std::size_t k = 0; k < rows_[i].size(); ++k) {
        if (!rows_[r][k].is_zero()) rows_[i][k] -= factor * rows_[r][k];
      }
      rhs_[i] -= factor * rhs_[r];
    }
    basis_[r] = j;
  }

  std::size_t m_;
  std::size_t n_;
  std::vector<int> flip_;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> rhs_;
  std::vector<std::size_t> basis_;
};

}  // namespace

StandardFormResult solve_standard_form(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b,
                                       const std::vector<Rational>& c) {
  if (a.size() != b.size()) throw std::invalid_argument("row count and rhs length differ");
  const std::size_t n = c.size();
  for (const auto& row : a) {
    if (row.size() != n) throw std::invalid_argument("constraint row length differs from cost length");
  }

  Tableau t(a, b);
  const std::size_t m = a.size();
  StandardFormResult out;

  std::vector<Rational> phase1(n + m);
  for (std::size_t i = n; i < n + m; ++i) phase1[i] = Rational(1);
  t.optimize(phase1, n + m, out.pivots);
  if (t.objective(phase1).sign() > 0) {
    out.status = StandardFormResult::Status::infeasible;
    out.duals = t.duals(phase1);
    return out;
  }

  t.expel_artificials(out.pivots);
  std::vector<Rational> phase2(n + m);
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  if (!t.optimize(phase2, n, out.pivots)) {
    out.status = StandardFormResult::Status::unbounded;
    return out;
  }
  out.status = StandardFormResult::Status::optimal;
  out.z = t.primal();
  out.value = t.objective(phase2);
  out.duals = t.duals(phase2);
  return out;
}

}  // namespace lyapcert
