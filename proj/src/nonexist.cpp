#include "lyapcert/nonexist.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>

#include "lyapcert/simplex.hpp"

namespace lyapcert {

namespace {

// Orientation of a row in the >= reading used by Farkas certificates.
Rational orientation(RowSense s) { return Rational(s == RowSense::le ? -1 : 1); }

std::vector<Rational> monomial_values(unsigned k, const Direction& d) {
  std::vector<Rational> out;
  out.reserve(k + 1);
  for (unsigned i = 0; i <= k; ++i) out.push_back(d.x.pow(k - i) * d.y.pow(i));
  return out;
}

Rational squared_norm(const Direction& d) { return d.x * d.x + d.y * d.y; }

Polynomial primitive(const Polynomial& p) {
  if (p.is_zero()) return p;
  mpz_class den = 1;
  for (const auto& [m, c] : p.terms()) den = lcm(den, c.denominator());
  mpz_class num = 0;
  for (const auto& [m, c] : p.terms()) num = gcd(num, mpz_class(c.numerator() * (den / c.denominator())));
  mpq_class scale(den, num);
  scale.canonicalize();
  return p * Rational(scale);
}

unsigned decrease_degree(unsigned k, const VectorField& f) {
  const auto d = f.degree();
  if (!d) throw std::invalid_argument("nonexistence sweep needs a nonzero f0");
  return k + *d - 1;
}

// Maximizes the margin tau in p(s) >= tau |s|^k and -<grad p, f0>(s) >=
// tau |s|^e at every sample, which picks a candidate in the interior of the
// feasible set rather than an arbitrary vertex.
Polynomial centered_candidate(unsigned k, const LinearProgram& lp, const SampleSet& samples, unsigned e) {
  LinearProgram aug;
  aug.variables = lp.variables + 1;
  for (const auto& row : lp.rows) {
    LpRow r = row;
    Rational tau;
    if (row.tag == RowTag::positivity) {
      tau = -squared_norm(samples.directions()[*row.direction]).pow(k / 2);
    } else if (row.tag == RowTag::decrease) {
      for (auto& c : r.coefficients) c = -c;
      r.sense = RowSense::ge;
      tau = -squared_norm(samples.directions()[*row.direction]).pow(e / 2);
    }
    r.coefficients.push_back(tau);
    aug.rows.push_back(std::move(r));
  }
  LpRow margin;
  margin.coefficients.assign(aug.variables, Rational(0));
  margin.coefficients.back() = Rational(1);
  margin.tag = RowTag::margin;
  aug.rows.push_back(std::move(margin));

  std::vector<Rational> objective(aug.variables);
  objective.back() = Rational(1);
  const auto best = maximize(aug, objective);
  if (best.status != LpOptimum::Status::optimal) throw std::logic_error("margin LP of a feasible LP must be optimal");
  std::vector<Rational> c(best.point.begin(), best.point.end() - 1);
  return primitive(form_from_coefficients(k, c));
}

void append_stern_brocot_level(std::vector<Rational>& level) {
  std::vector<Rational> next;
  for (const auto& q : level) {
    const Rational a(mpq_class(q.numerator()));
    const Rational b(mpq_class(q.denominator()));
    next.push_back(a / (a + b));
    next.push_back((a + b) / b);
  }
  level = std::move(next);
}

}  // namespace

Direction Direction::through(const Rational& x, const Rational& y) {
  if (x.is_zero()) {
    if (y.is_zero()) throw std::invalid_argument("(0, 0) is not a direction");
    return vertical();
  }
  return slope(y / x);
}

std::string Direction::to_string() const { return is_vertical() ? "inf" : y.to_string(); }

Direction Direction::parse(const std::string& text) {
  if (text == "inf") return vertical();
  return slope(Rational::parse(text));
}

SampleSet::SampleSet(std::vector<Direction> directions) {
  for (const auto& d : directions) {
    if (!add(Direction::through(d.x, d.y))) throw std::invalid_argument("duplicate direction " + d.to_string());
  }
}

bool SampleSet::contains(const Direction& d) const {
  return std::find(directions_.begin(), directions_.end(), d) != directions_.end();
}

bool SampleSet::add(const Direction& d) {
  const auto canonical = Direction::through(d.x, d.y);
  if (contains(canonical)) return false;
  directions_.push_back(canonical);
  return true;
}

SampleSet seed_directions(std::size_t count) {
  SampleSet out;
  if (count >= 1) out.add(Direction::slope(Rational(0)));
  if (count >= 2) out.add(Direction::vertical());
  std::vector<Rational> level{Rational(1)};
  while (out.size() < count) {
    auto sorted = level;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    for (const auto& q : sorted) {
      for (const auto& t : {q, -q}) {
        if (out.size() < count) out.add(Direction::slope(t));
      }
    }
    append_stern_brocot_level(level);
  }
  return out;
}

std::string to_string(RowSense s) {
  switch (s) {
    case RowSense::ge: return ">=";
    case RowSense::le: return "<=";
    case RowSense::eq: return "=";
  }
  return "=";
}

std::string to_string(RowTag t) {
  switch (t) {
    case RowTag::positivity: return "positivity";
    case RowTag::decrease: return "decrease";
    case RowTag::normalization: return "normalization";
    case RowTag::margin: return "margin";
  }
  return "margin";
}

std::string to_string(NonexistenceOutcome o) {
  switch (o) {
    case NonexistenceOutcome::infeasible_certified: return "infeasible_certified";
    case NonexistenceOutcome::candidate_survived: return "candidate_survived";
    case NonexistenceOutcome::iteration_cap_reached: return "iteration_cap_reached";
  }
  return "iteration_cap_reached";
}

LpSolution simplex_solve(const LinearProgram& lp) {
  const std::size_t n = lp.variables;
  // Columns of the alternative system: one per inequality row, two (y+, y-)
  // per equality row. Row j < n reads sum y_i o_i a_ij = 0, row n reads
  // sum y_i o_i b_i = 1.
  std::vector<std::vector<Rational>> a(n + 1);
  std::vector<std::pair<std::size_t, int>> column_source;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    const Rational o = orientation(row.sense);
    const int copies = row.sense == RowSense::eq ? 2 : 1;
    for (int s = 0; s < copies; ++s) {
      const Rational sign = o * Rational(s == 0 ? 1 : -1);
      for (std::size_t j = 0; j < n; ++j) a[j].push_back(sign * row.coefficients[j]);
      a[n].push_back(sign * row.rhs);
      column_source.emplace_back(i, s == 0 ? 1 : -1);
    }
  }
  std::vector<Rational> b(n + 1);
  b[n] = Rational(1);
  const std::vector<Rational> cost(column_source.size());

  const auto result = solve_standard_form(a, b, cost);
  LpSolution out;
  if (result.status == StandardFormResult::Status::optimal) {
    FarkasCertificate cert;
    cert.multipliers.assign(lp.rows.size(), Rational(0));
    for (std::size_t col = 0; col < column_source.size(); ++col) {
      const auto [row, sign] = column_source[col];
      cert.multipliers[row] += Rational(sign) * result.z[col];
    }
    out.certificate = std::move(cert);
    return out;
  }
  // Phase-I duals pi satisfy pi.column <= 0 for every column and pi_n > 0,
  // i.e. o_i (a_i.x) >= o_i b_i with x = -pi_x / pi_n.
  const Rational scale = -result.duals[n].inverse();
  out.feasible = true;
  out.point.reserve(n);
  for (std::size_t j = 0; j < n; ++j) out.point.push_back(result.duals[j] * scale);
  return out;
}

LpOptimum maximize(const LinearProgram& lp, const std::vector<Rational>& objective) {
  const std::size_t n = lp.variables;
  if (objective.size() != n) throw std::invalid_argument("objective length differs from variable count");
  // Dual: min -sum y_i o_i b_i s.t. sum y_i o_i a_i = -objective, y_ineq >= 0.
  std::vector<std::vector<Rational>> a(n);
  std::vector<Rational> cost;
  for (const auto& row : lp.rows) {
    const Rational o = orientation(row.sense);
    const int copies = row.sense == RowSense::eq ? 2 : 1;
    for (int s = 0; s < copies; ++s) {
      const Rational sign = o * Rational(s == 0 ? 1 : -1);
      for (std::size_t j = 0; j < n; ++j) a[j].push_back(sign * row.coefficients[j]);
      cost.push_back(-sign * row.rhs);
    }
  }
  std::vector<Rational> b;
  for (const auto& v : objective) b.push_back(-v);

  const auto dual = solve_standard_form(a, b, cost);
  LpOptimum out;
  switch (dual.status) {
    case StandardFormResult::Status::unbounded:
      out.status = LpOptimum::Status::infeasible;
      return out;
    case StandardFormResult::Status::infeasible:
      out.status = simplex_solve(lp).feasible ? LpOptimum::Status::unbounded : LpOptimum::Status::infeasible;
      return out;
    case StandardFormResult::Status::optimal:
      break;
  }
  out.status = LpOptimum::Status::optimal;
  for (const auto& v : dual.duals) out.point.push_back(-v);
  for (std::size_t j = 0; j < n; ++j) out.value += objective[j] * out.point[j];
  return out;
}

bool verify_farkas(const LinearProgram& lp, const FarkasCertificate& cert) {
  if (cert.multipliers.size() != lp.rows.size()) throw std::invalid_argument("multiplier count differs from row count");
  std::vector<Rational> combo(lp.variables);
  Rational bound;
  bool any_nonzero = false;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& row = lp.rows[i];
    if (row.coefficients.size() != lp.variables) throw std::invalid_argument("row length differs from variable count");
    const Rational& y = cert.multipliers[i];
    if (row.sense != RowSense::eq && y.sign() < 0) return false;
    if (y.is_zero()) continue;
    any_nonzero = true;
    const Rational w = y * orientation(row.sense);
    for (std::size_t j = 0; j < lp.variables; ++j) combo[j] += w * row.coefficients[j];
    bound += w * row.rhs;
  }
  if (!any_nonzero) return false;
  for (const auto& v : combo) {
    if (!v.is_zero()) return false;
  }
  return bound.sign() > 0;
}

VectorField lowest_order_part(const VectorField& field) {
  const auto lx = field.dx.lowest_degree();
  const auto ly = field.dy.lowest_degree();
  if (!lx && !ly) return field;
  const unsigned low = !lx ? *ly : !ly ? *lx : std::min(*lx, *ly);
  const auto part = [low](const Polynomial& p) {
    const auto parts = homogeneous_parts(p);
    const auto it = parts.find(low);
    return it == parts.end() ? Polynomial() : it->second;
  };
  return {part(field.dx), part(field.dy)};
}

Polynomial form_from_coefficients(unsigned k, const std::vector<Rational>& c) {
  if (c.size() != k + 1) throw std::invalid_argument("form needs k + 1 coefficients");
  Polynomial p;
  for (unsigned i = 0; i <= k; ++i) p += Polynomial::term(c[i], k - i, i);
  return p;
}

LinearProgram build_lp(unsigned k, const SampleSet& samples, const VectorField& f0) {
  if (k < 2 || k % 2 == 1) throw std::invalid_argument("LP degree must be even and at least 2");
  if (samples.size() < k + 1) throw std::invalid_argument("need at least k + 1 distinct directions");

  std::vector<Polynomial> monomial_decrease;
  for (unsigned i = 0; i <= k; ++i) monomial_decrease.push_back(lie_derivative(Polynomial::term(1, k - i, i), f0));

  LinearProgram lp;
  lp.variables = k + 1;
  LpRow normalization;
  normalization.coefficients.assign(k + 1, Rational(0));
  normalization.sense = RowSense::eq;
  normalization.rhs = Rational(1);
  normalization.tag = RowTag::normalization;

  const auto& dirs = samples.directions();
  for (std::size_t s = 0; s < dirs.size(); ++s) {
    const auto values = monomial_values(k, dirs[s]);
    lp.rows.push_back({values, RowSense::ge, Rational(0), RowTag::positivity, s});
    std::vector<Rational> dec;
    for (const auto& m : monomial_decrease) dec.push_back(m.evaluate(dirs[s].x, dirs[s].y));
    lp.rows.push_back({std::move(dec), RowSense::le, Rational(0), RowTag::decrease, s});
    for (unsigned i = 0; i <= k; ++i) normalization.coefficients[i] += values[i];
  }
  lp.rows.push_back(std::move(normalization));
  return lp;
}

NonexistenceReport cutting_plane(const VectorField& f0, unsigned k, unsigned iteration_cap) {
  if (k < 2 || k % 2 == 1) throw std::invalid_argument("sweep degree must be even and at least 2");
  const VectorField f = lowest_order_part(f0);
  const unsigned e = decrease_degree(k, f);
  if (e % 2 == 1) throw std::invalid_argument("decrease form has odd degree; it cannot be sign-definite");

  NonexistenceReport report;
  report.degree = k;
  report.samples = seed_directions(k + 3);
  for (unsigned iter = 0; iter < iteration_cap; ++iter) {
    report.iterations = iter + 1;
    report.lp = build_lp(k, report.samples, f);
    auto solution = simplex_solve(report.lp);
    if (!solution.feasible) {
      if (!verify_farkas(report.lp, *solution.certificate)) throw std::logic_error("simplex returned an invalid certificate");
      report.certificate = std::move(solution.certificate);
      report.outcome = NonexistenceOutcome::infeasible_certified;
      return report;
    }

    const Polynomial p = centered_candidate(k, report.lp, report.samples, e);
    const Polynomial decay = -lie_derivative(p, f);
    auto nonneg = homogeneous_nonnegative(p);
    auto decrease = homogeneous_nonnegative(decay);
    if (nonneg.holds && decrease.holds) {
      report.outcome = NonexistenceOutcome::candidate_survived;
      report.candidate = p;
      report.candidate_nonnegative = std::move(nonneg);
      report.candidate_decrease = std::move(decrease);
      return report;
    }

    const bool positivity_broken = !nonneg.holds;
    const auto point = find_negative_direction(positivity_broken ? p : decay);
    if (!point) throw std::logic_error("no violating direction for a form that is not nonnegative");
    const auto dir = Direction::through(point->first, point->second);
    if (!report.samples.add(dir)) throw std::logic_error("cut direction already sampled");
    report.cuts.push_back({dir, positivity_broken ? RowTag::positivity : RowTag::decrease, p});
  }
  report.outcome = NonexistenceOutcome::iteration_cap_reached;
  return report;
}

std::vector<NonexistenceReport> cutting_plane_sweep_serial(const DecomposedField& field, unsigned k_max,
                                                           unsigned iteration_cap) {
  if (k_max < 2) throw std::invalid_argument("k_max must be at least 2");
  std::vector<NonexistenceReport> out;
  for (unsigned k = 2; k <= k_max; k += 2) out.push_back(cutting_plane(field.base, k, iteration_cap));
  return out;
}

std::vector<NonexistenceReport> cutting_plane_sweep(const DecomposedField& field, unsigned k_max,
                                                    unsigned iteration_cap) {
  if (k_max < 2) throw std::invalid_argument("k_max must be at least 2");
  const int count = static_cast<int>(k_max / 2);
  std::vector<NonexistenceReport> out(static_cast<std::size_t>(count));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
  // Higher degrees take longest, so hand them out first.
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = count - 1; i >= 0; --i) {
    try {
      out[static_cast<std::size_t>(i)] = cutting_plane(field.base, 2 * static_cast<unsigned>(i + 1), iteration_cap);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

bool recheck(const NonexistenceReport& report, const VectorField& f0) {
  const VectorField f = lowest_order_part(f0);
  switch (report.outcome) {
    case NonexistenceOutcome::infeasible_certified:
      if (!report.certificate) return false;
      if (build_lp(report.degree, report.samples, f) != report.lp) return false;
      return verify_farkas(report.lp, *report.certificate);
    case NonexistenceOutcome::candidate_survived: {
      if (!report.candidate || !report.candidate_nonnegative || !report.candidate_decrease) return false;
      const Polynomial decay = -lie_derivative(*report.candidate, f);
      return report.candidate->degree() == report.degree && report.candidate_nonnegative->holds &&
             report.candidate_decrease->holds && recheck_form_sign(*report.candidate, *report.candidate_nonnegative) &&
             recheck_form_sign(decay, *report.candidate_decrease);
    }
    case NonexistenceOutcome::iteration_cap_reached:
      return !report.certificate;
  }
  return false;
}

IdentityWitness final_identity_check(const Polynomial& p, unsigned k0, const Rational& c) {
  if (c.is_zero()) throw std::invalid_argument("c must be nonzero");
  if (!p.is_homogeneous() || (!p.is_zero() && p.degree() != k0)) {
    throw std::invalid_argument("p must be homogeneous of degree k0");
  }
  const GaussianRational x = GaussianRational::i();
  const GaussianRational y{Rational(1), Rational(0)};
  const Polynomial r2 = Polynomial::x().pow(2) + Polynomial::y().pow(2);
  const Polynomial quartic = Polynomial::x().pow(4) + Polynomial::y().pow(4);
  const Polynomial lhs = r2.pow(k0) * p * p;
  const Polynomial rhs = c * c * quartic.pow(k0);
  return {lhs.evaluate(x, y), rhs.evaluate(x, y)};
}

}  // namespace lyapcert
