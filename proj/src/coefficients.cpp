#include "sle/coefficients.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "sle/errors.hpp"

namespace sle {

namespace {

Rational sign_power(long exponent) {
  return (exponent % 2 == 0) ? Rational(1) : Rational(-1);
}

}  // namespace

void validate_dimensions(int K, int N) {
  if (K < 2) {
    throw DomainError("K must be at least 2 (got " + std::to_string(K) + ")");
  }
  if (N < K) {
    throw DomainError("N must be at least K (got K=" + std::to_string(K) +
                      ", N=" + std::to_string(N) + ")");
  }
  if (static_cast<long>(K) * N > kMaxDimensionProduct) {
    throw ResourceError("K*N = " + std::to_string(static_cast<long>(K) * N) +
                        " exceeds the exact-arithmetic limit of " +
                        std::to_string(kMaxDimensionProduct));
  }
}

// ---------------------------------------------------------------------------
// CoefficientTable

CoefficientTable::CoefficientTable(int K, int N) : K_(K), N_(N) {
  validate_dimensions(K, N);
  rows_.resize(static_cast<std::size_t>(K));
  for (int i = 1; i <= K; ++i) {
    rows_[static_cast<std::size_t>(i - 1)].resize(
        static_cast<std::size_t>(j_max(i) - j_min() + 1));
  }
}

bool CoefficientTable::in_bounds(int i, int j) const {
  return i >= 1 && i <= K_ && j >= j_min() && j <= j_max(i);
}

std::size_t CoefficientTable::offset(int i, int j) const {
  if (!in_bounds(i, j)) {
    throw std::out_of_range("CoefficientTable: (" + std::to_string(i) + ", " +
                            std::to_string(j) + ") outside index bounds");
  }
  return static_cast<std::size_t>(j - j_min());
}

const Rational& CoefficientTable::at(int i, int j) const {
  const std::size_t k = offset(i, j);
  return rows_[static_cast<std::size_t>(i - 1)][k];
}

void CoefficientTable::set(int i, int j, Rational value) {
  const std::size_t k = offset(i, j);
  rows_[static_cast<std::size_t>(i - 1)][k] = std::move(value);
}

Rational CoefficientTable::normalization() const {
  Rational total;
  for (int i = 1; i <= K_; ++i) {
    for (int j = j_min(); j <= j_max(i); ++j) {
      const Rational& c = at(i, j);
      if (c.is_zero()) continue;
      total += c * factorial(j) / pow(Rational(i), j + 1);
    }
  }
  return total;
}

void CoefficientTable::verify_normalization() const {
  const Rational mass = normalization();
  if (mass != Rational(1)) {
    throw ConsistencyError("coefficient table for K=" + std::to_string(K_) +
                           ", N=" + std::to_string(N_) +
                           " has total mass " + mass.to_string() + ", not 1");
  }
}

// ---------------------------------------------------------------------------
// L polynomials and the Hankel system

ExpPolySum l_poly(int a) {
  if (a < 0) {
    throw DomainError("l_poly: negative index " + std::to_string(a));
  }
  std::vector<Rational> algebraic(3);
  for (int k = 0; k <= 2; ++k) {
    algebraic[k] = Rational(2) * factorial(a - k + 2) * sign_power(k) /
                   (factorial(k) * factorial(2 - k));
  }
  std::vector<Rational> decaying(static_cast<std::size_t>(a) + 1);
  const Rational a_fact = factorial(a);
  for (int k = 0; k <= a; ++k) {
    decaying[k] = -a_fact * factorial(a - k + 2) / (factorial(k) * factorial(a - k));
  }
  return ExpPolySum::term(0, Polynomial(std::move(algebraic))) +
         ExpPolySum::term(1, Polynomial(std::move(decaying)));
}

Rational d_constant(int K, int N) {
  if (K < 2 || N < K) {
    throw DomainError("d_constant: requires 2 <= K <= N");
  }
  Rational product = 1;
  for (int i = 1; i <= K; ++i) {
    product *= factorial(N - i) * factorial(K - i);
  }
  return product.inverse();
}

HankelSystem::HankelSystem(int K, int N) : K_(K), N_(N) {
  validate_dimensions(K, N);
  const int order = K - 1;
  diagonals_.reserve(static_cast<std::size_t>(2 * order - 1));
  for (int d = 0; d <= 2 * order - 2; ++d) {
    diagonals_.push_back(l_poly(N - K + d));
  }
}

const ExpPolySum& HankelSystem::entry(int r, int s) const {
  if (r < 0 || s < 0 || r >= size() || s >= size()) {
    throw std::out_of_range("HankelSystem: entry index out of range");
  }
  return diagonals_[static_cast<std::size_t>(r + s)];
}

// ---------------------------------------------------------------------------
// Determinants over Q[x, exp(-x)]

namespace {

void check_square(const ExpPolyMatrix& m) {
  for (const auto& row : m) {
    if (row.size() != m.size()) {
      throw DomainError("determinant: matrix is not square");
    }
  }
}

}  // namespace

ExpPolySum cofactor_determinant(const ExpPolyMatrix& m) {
  check_square(m);
  const int n = static_cast<int>(m.size());
  if (n == 0) {
    return ExpPolySum(Polynomial::constant(1));
  }
  if (n > 20) {
    throw ResourceError("cofactor_determinant: order too large");
  }
  // minors[S] = det of the bottom |S| rows restricted to columns S.
  std::unordered_map<std::uint32_t, ExpPolySum> minors;
  minors.emplace(0u, ExpPolySum(Polynomial::constant(1)));
  const std::uint32_t full = (1u << n) - 1u;
  for (int size = 1; size <= n; ++size) {
    const int row = n - size;
    std::unordered_map<std::uint32_t, ExpPolySum> next;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
      if (std::popcount(mask) != size) continue;
      ExpPolySum det;
      int position = 0;
      for (int c = 0; c < n; ++c) {
        if (!(mask & (1u << c))) continue;
        const ExpPolySum& a = m[row][c];
        if (!a.is_zero()) {
          const ExpPolySum term = a * minors.at(mask & ~(1u << c));
          if (position % 2 == 0) {
            det += term;
          } else {
            det -= term;
          }
        }
        ++position;
      }
      next.emplace(mask, std::move(det));
    }
    minors = std::move(next);
  }
  return minors.at(full);
}

ExpPolySum bareiss_determinant(const ExpPolyMatrix& input) {
  check_square(input);
  ExpPolyMatrix m = input;
  const int n = static_cast<int>(m.size());
  if (n == 0) {
    return ExpPolySum(Polynomial::constant(1));
  }
  bool negate = false;
  ExpPolySum previous(Polynomial::constant(1));
  for (int k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r) {
        if (!m[r][k].is_zero()) {
          swap_row = r;
          break;
        }
      }
      if (swap_row < 0) {
        return {};
      }
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        m[i][j] = exact_quotient(m[k][k] * m[i][j] - m[i][k] * m[k][j], previous);
      }
    }
    previous = m[k][k];
  }
  ExpPolySum det = m[n - 1][n - 1];
  if (negate) det *= Rational(-1);
  return det;
}

ExpPolySum determinant(const HankelSystem& system) {
  const int n = system.size();
  ExpPolyMatrix m(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    m[r].reserve(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) m[r].push_back(system.entry(r, s));
  }
  return n <= kCofactorMaxOrder ? cofactor_determinant(m) : bareiss_determinant(m);
}

// ---------------------------------------------------------------------------
// Density <-> table

ExpPolySum lambda1_density_from_hankel(int K, int N) {
  const HankelSystem system(K, N);
  return (determinant(system) * d_constant(K, N)).times_exp_monomial(1, N - K);
}

ExpPolySum lambda1_density(const CoefficientTable& table) {
  ExpPolySum out;
  for (int i = 1; i <= table.K(); ++i) {
    std::vector<Rational> coeffs(static_cast<std::size_t>(table.j_max(i)) + 1);
    for (int j = table.j_min(); j <= table.j_max(i); ++j) coeffs[j] = table.at(i, j);
    out += ExpPolySum::term(i, Polynomial(std::move(coeffs)));
  }
  return out;
}

CoefficientTable extract_table(int K, int N, const ExpPolySum& density) {
  CoefficientTable table(K, N);
  for (const auto& [i, p] : density.terms()) {
    const auto coeffs = p.coefficients();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k].is_zero()) continue;
      const int j = static_cast<int>(k);
      if (!table.in_bounds(i, j)) {
        throw ConsistencyError("density term exp(-" + std::to_string(i) + "x) x^" +
                               std::to_string(j) + " lies outside the index bounds");
      }
      table.set(i, j, coeffs[k]);
    }
  }
  table.verify_normalization();
  return table;
}

CoefficientTable hankel_coeffs(int K, int N) {
  validate_dimensions(K, N);
  return extract_table(K, N, lambda1_density_from_hankel(K, N));
}

// ---------------------------------------------------------------------------
// Closed forms

CoefficientTable closed_form_k2(int N) {
  if (N < 2) {
    throw DomainError("closed_form_k2: requires N >= 2");
  }
  CoefficientTable table(2, N);
  const Rational common = reciprocal_factorial(N - 2) * reciprocal_factorial(N - 1);
  for (int j = table.j_min(); j <= table.j_max(1); ++j) {
    table.set(1, j,
              Rational(2) * sign_power(j - N) * factorial(2 * N - j - 2) *
                  reciprocal_factorial(j - N + 2) * reciprocal_factorial(N - j) * common);
  }
  for (int j = table.j_min(); j <= table.j_max(2); ++j) {
    table.set(2, j,
              Rational(-(2 * N - j - 2)) * Rational(2 * N - j - 3) *
                  reciprocal_factorial(j - N + 2) * reciprocal_factorial(N - 1));
  }
  return table;
}

CoefficientTable closed_form_k3(int N) {
  if (N < 3) {
    throw DomainError("closed_form_k3: requires N >= 3");
  }
  CoefficientTable table(3, N);
  const Rational inv_n3 = reciprocal_factorial(N - 3);
  const Rational inv_n2 = reciprocal_factorial(N - 2);
  const Rational inv_n1 = reciprocal_factorial(N - 1);

  for (int j = table.j_min(); j <= table.j_max(1); ++j) {
    Rational sum;
    for (int k = std::max(0, j - N + 1); k <= std::min(j - N + 3, 2); ++k) {
      sum += Rational(2) * sign_power(j - N + 1) * factorial(N - k) *
             factorial(2 * N - j + k - 4) * Rational(-N + j - 2 * k + 4) *
             reciprocal_factorial(2 - k) * reciprocal_factorial(k) *
             reciprocal_factorial(N - j + k - 1) * reciprocal_factorial(-N + j - k + 3) *
             inv_n3 * inv_n2 * inv_n1;
    }
    table.set(1, j, std::move(sum));
  }

  for (int j = table.j_min(); j <= table.j_max(2); ++j) {
    Rational sum;
    for (int k = std::max(0, j - 2 * N + 4); k <= std::min(j - N + 3, 2); ++k) {
      const long m = 2L * N - j + k;  // shared offset of the falling products
      const Rational bracket =
          Rational(2) * factorial(N - k) * factorial_ratio(m - 3, m - 5) * inv_n3 * inv_n1 -
          factorial(N - k - 1) * factorial_ratio(m - 2, m - 4) * inv_n3 * inv_n2 -
          factorial(N - k + 1) * factorial_ratio(m - 4, m - 6) * inv_n2 * inv_n1;
      sum += sign_power(k) * reciprocal_factorial(2 - k) * reciprocal_factorial(k) *
             reciprocal_factorial(-N + j - k + 3) * bracket;
    }
    table.set(2, j, std::move(sum));
  }

  for (int j = table.j_min(); j <= table.j_max(3); ++j) {
    Rational sum;
    for (int k = std::max(0, j - 2 * N + 5); k <= std::min(j - N + 3, N - 1); ++k) {
      const long m = 2L * N - j + k;
      const Rational bracket =
          factorial_ratio(N - k + 1, N - k - 1) * factorial_ratio(m - 4, m - 6) -
          factorial_ratio(N - k, N - k - 2) * factorial_ratio(m - 3, m - 5) *
              Rational(N - 2) / Rational(N - 1);
      sum += reciprocal_factorial(k) * reciprocal_factorial(-N + j - k + 3) * inv_n2 *
             bracket / Rational(2);
    }
    table.set(3, j, std::move(sum));
  }
  return table;
}

ExpPolySum k4_five_term(int N) {
  if (N < 4) {
    throw DomainError("k4_five_term: requires N >= 4");
  }
  const ExpPolySum l0 = l_poly(N);
  const ExpPolySum l1 = l_poly(N - 1);
  const ExpPolySum l2 = l_poly(N - 2);
  const ExpPolySum l3 = l_poly(N - 3);
  const ExpPolySum l4 = l_poly(N - 4);
  return Rational(2) * (l1 * l2 * l3) + l0 * l2 * l4 - l3 * l3 * l0 - l1 * l1 * l4 -
         l2 * l2 * l2;
}

// ---------------------------------------------------------------------------
// Engine selection

Engine parse_engine(std::string_view name) {
  if (name == "auto") return Engine::automatic;
  if (name == "closed-form") return Engine::closed_form;
  if (name == "hankel") return Engine::hankel;
  throw DomainError("unknown engine '" + std::string(name) + "'");
}

std::string_view engine_name(Engine engine) {
  switch (engine) {
    case Engine::automatic:
      return "auto";
    case Engine::closed_form:
      return "closed-form";
    case Engine::hankel:
      return "hankel";
  }
  return "auto";
}

CoefficientTable compute_coefficients(int K, int N, Engine engine) {
  validate_dimensions(K, N);
  if (engine == Engine::automatic) {
    engine = (K <= 3) ? Engine::closed_form : Engine::hankel;
  }
  if (engine == Engine::hankel) {
    return hankel_coeffs(K, N);
  }
  if (K == 2) return closed_form_k2(N);
  if (K == 3) return closed_form_k3(N);
  throw DomainError("closed-form coefficients exist only for K = 2 and K = 3");
}

}  // namespace sle
