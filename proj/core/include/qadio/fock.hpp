#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qadio {

using Complex = std::complex<double>;

/// Occupation numbers (n_1..n_K) of a K-mode Fock state.
struct FockIndex {
  std::vector<std::uint32_t> occupations;

  std::size_t modes() const { return occupations.size(); }
  std::uint32_t operator[](std::size_t k) const { return occupations[k]; }

  /// Colon-separated occupations, e.g. "1:2".
  std::string to_string() const;

  friend bool operator==(const FockIndex&, const FockIndex&) = default;
};

/// Deterministic tie-break order on indices: lower total occupation first,
/// then lexicographically smaller.
bool graded_lex_less(const FockIndex& a, const FockIndex& b);

/// Default ceiling on the product-basis dimension.
inline constexpr std::size_t kDefaultDimCap = 20000;

/// Inclusive per-mode cutoffs m_1..m_K. The basis is row-major over
/// occupations with mode 1 varying slowest.
class Truncation {
 public:
  explicit Truncation(std::vector<std::uint32_t> cutoffs,
                      std::size_t dim_cap = kDefaultDimCap);

  std::size_t modes() const { return cutoffs_.size(); }
  std::uint32_t cutoff(std::size_t k) const { return cutoffs_[k]; }
  const std::vector<std::uint32_t>& cutoffs() const { return cutoffs_; }
  std::size_t dimension() const { return dimension_; }

  /// Distance in the flat layout between neighbouring occupations of mode k.
  std::size_t stride(std::size_t k) const { return strides_[k]; }

  bool contains(const FockIndex& index) const;
  /// Throws DomainError if `index` is outside the truncation.
  std::size_t flat(const FockIndex& index) const;
  FockIndex index_at(std::size_t flat) const;
  /// Occupation of mode k at a flat position.
  std::uint32_t occupation(std::size_t flat, std::size_t k) const {
    return static_cast<std::uint32_t>((flat / strides_[k]) % (cutoffs_[k] + 1));
  }

  friend bool operator==(const Truncation& a, const Truncation& b) {
    return a.cutoffs_ == b.cutoffs_;
  }

 private:
  std::vector<std::uint32_t> cutoffs_;
  std::vector<std::size_t> strides_;
  std::size_t dimension_ = 1;
};

/// Dense amplitudes over a truncated product Fock basis.
class StateVector {
 public:
  explicit StateVector(Truncation truncation);
  StateVector(Truncation truncation, std::vector<Complex> amplitudes,
              double norm_defect = 0.0);

  /// Unit amplitude on a single Fock state.
  static StateVector basis(Truncation truncation, const FockIndex& index);

  const Truncation& truncation() const { return truncation_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  std::span<Complex> amplitudes() { return amplitudes_; }
  Complex operator[](std::size_t i) const { return amplitudes_[i]; }
  Complex& operator[](std::size_t i) { return amplitudes_[i]; }

  /// Accumulated |1 - ||psi||| from renormalizations plus amplitude dropped at
  /// truncation boundaries.
  double norm_defect() const { return norm_defect_; }
  void add_norm_defect(double d) { norm_defect_ += d; }

  double norm_squared() const;
  double norm() const;
  /// Rescales to unit norm and adds |1 - ||psi||| to norm_defect. Throws
  /// NumericalError on a zero or non-finite norm.
  void normalize();

  /// Same amplitudes embedded into a truncation whose cutoffs are all at
  /// least as large; new entries are zero.
  StateVector embedded(const Truncation& larger) const;

 private:
  Truncation truncation_;
  std::vector<Complex> amplitudes_;
  double norm_defect_ = 0.0;
};

Complex inner_product(const StateVector& bra, const StateVector& ket);

/// Per-mode displacements alpha_1..alpha_K, all nonzero.
class CoherentParams {
 public:
  explicit CoherentParams(std::vector<Complex> alphas);

  /// K copies of one value.
  static CoherentParams uniform(std::size_t modes, Complex alpha);

  std::size_t modes() const { return alphas_.size(); }
  Complex operator[](std::size_t k) const { return alphas_[k]; }
  const std::vector<Complex>& alphas() const { return alphas_; }

 private:
  std::vector<Complex> alphas_;
};

enum class Ladder { annihilate, create, number };

/// Applies a, a^dagger or a^dagger a on one mode. Creation out of the top
/// level is dropped and its norm added to norm_defect; no renormalization.
StateVector ladder_apply(const StateVector& state, std::size_t mode, Ladder kind);

/// e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n = 0..m via the recurrence
/// c_{n+1} = c_n alpha / sqrt(n+1).
std::vector<Complex> coherent_amplitudes(Complex alpha, std::uint32_t m);

/// Sum_{n<=m} |<alpha|n>|^2, i.e. the Poisson(|alpha|^2) CDF at m.
double coherent_norm_squared(Complex alpha, std::uint32_t m);

/// Smallest m >= 1 with |1 - sqrt(<alpha;m|alpha;m>)| <= eps_tilde.
std::uint32_t truncation_for_alpha(Complex alpha, double eps_tilde);

/// Tensor product of per-mode coherent states, renormalized. Cutoffs come
/// from truncation_for_alpha unless `cutoffs` is non-empty, in which case
/// they are used as given. The pre-normalization deficit |1 - ||psi||| is
/// recorded as norm_defect.
StateVector product_coherent_state(const CoherentParams& params, double eps_tilde,
                                   std::span<const std::uint32_t> cutoffs = {},
                                   std::size_t dim_cap = kDefaultDimCap);

/// |amplitude|^2 / ||psi||^2 at `index`.
double fock_probability(const StateVector& state, const FockIndex& index);

}  // namespace qadio

namespace qadio {

struct RankedState {
  FockIndex index;
  double probability = 0.0;
};

/// The `k` most probable Fock states of the normalized state, in descending
/// probability; exact ties go to the graded_lex_less-smaller index.
std::vector<RankedState> top_components(const StateVector& state, std::size_t k);

}  // namespace qadio
