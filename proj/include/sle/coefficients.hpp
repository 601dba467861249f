#pragma once

#include <string_view>
#include <vector>

#include "json.hpp"

#include "sle/exp_poly_sum.hpp"
#include "sle/rational.hpp"

namespace sle {

/// Largest K*N accepted by the exact coefficient engines.
inline constexpr long kMaxDimensionProduct = 2000;

/// Checks 2 <= K <= N (DomainError) and K*N <= kMaxDimensionProduct
/// (ResourceError).
void validate_dimensions(int K, int N);

/// Coefficients c_{i,j} of the largest-eigenvalue density
///
///   f(x) = sum_{i=1..K} exp(-i x) sum_{j=N-K..(N+K)i-2i^2} c_{i,j} x^j.
///
/// Every (i, j) inside the bounds is stored (possibly as zero); access
/// outside them throws std::out_of_range.
class CoefficientTable {
 public:
  CoefficientTable(int K, int N);

  int K() const { return K_; }
  int N() const { return N_; }
  int j_min() const { return N_ - K_; }
  int j_max(int i) const { return (N_ + K_) * i - 2 * i * i; }
  bool in_bounds(int i, int j) const;

  const Rational& at(int i, int j) const;
  void set(int i, int j, Rational value);

  /// sum c_{i,j} j! / i^(j+1), the total mass of the density.
  Rational normalization() const;
  /// ConsistencyError unless normalization() == 1.
  void verify_normalization() const;

  friend bool operator==(const CoefficientTable&, const CoefficientTable&) = default;

 private:
  std::size_t offset(int i, int j) const;

  int K_;
  int N_;
  std::vector<std::vector<Rational>> rows_;
};

/// L_a(x) = int_0^x t^a (x - t)^2 exp(-t) dt in closed form.
ExpPolySum l_poly(int a);

/// D(K,N) = 1 / prod_{i=1..K} (N-i)! (K-i)!.
Rational d_constant(int K, int N);

/// (K-1)x(K-1) Hankel matrix with entry (r, s) = L_{N-K+r+s}.
class HankelSystem {
 public:
  HankelSystem(int K, int N);

  int K() const { return K_; }
  int N() const { return N_; }
  int size() const { return K_ - 1; }
  const ExpPolySum& entry(int r, int s) const;

 private:
  int K_;
  int N_;
  std::vector<ExpPolySum> diagonals_;  // indexed by r + s
};

using ExpPolyMatrix = std::vector<std::vector<ExpPolySum>>;

/// Laplace expansion with minors memoised by column subset.
ExpPolySum cofactor_determinant(const ExpPolyMatrix& m);
/// Fraction-free (Bareiss) elimination with exact ring division.
ExpPolySum bareiss_determinant(const ExpPolyMatrix& m);

/// Order at and below which determinant() uses cofactor expansion.
inline constexpr int kCofactorMaxOrder = 7;

ExpPolySum determinant(const HankelSystem& system);

/// D(K,N) x^(N-K) exp(-x) det[L_{N-K+r+s}(x)].
ExpPolySum lambda1_density_from_hankel(int K, int N);

/// Expands a table back into its density.
ExpPolySum lambda1_density(const CoefficientTable& table);

/// Reads c_{i,j} off a density; ConsistencyError for any nonzero term
/// outside the table bounds or a mass different from one.
CoefficientTable extract_table(int K, int N, const ExpPolySum& density);

CoefficientTable hankel_coeffs(int K, int N);
CoefficientTable closed_form_k2(int N);
CoefficientTable closed_form_k3(int N);

/// The five-term product combination of L polynomials for K = 4.
ExpPolySum k4_five_term(int N);

enum class Engine { automatic, closed_form, hankel };

Engine parse_engine(std::string_view name);
std::string_view engine_name(Engine engine);

/// automatic picks closed forms for K in {2, 3} and the Hankel engine
/// otherwise; closed_form with K >= 4 is a DomainError.
CoefficientTable compute_coefficients(int K, int N, Engine engine);

/// {"K", "N", "entries": [{"i","j","num","den"}]} with big integers as
/// decimal strings; every in-bounds entry (zeros included), sorted by (i, j).
nlohmann::ordered_json to_json(const CoefficientTable& table);
CoefficientTable table_from_json(const nlohmann::ordered_json& doc);

}  // namespace sle
