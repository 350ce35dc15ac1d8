#include "qadio/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qadio/error.hpp"

namespace qadio {

std::string FockIndex::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < occupations.size(); ++k) {
    if (k) out += ':';
    out += std::to_string(occupations[k]);
  }
  return out;
}

bool graded_lex_less(const FockIndex& a, const FockIndex& b) {
  const auto sa = std::accumulate(a.occupations.begin(), a.occupations.end(),
                                  std::uint64_t{0});
  const auto sb = std::accumulate(b.occupations.begin(), b.occupations.end(),
                                  std::uint64_t{0});
  if (sa != sb) return sa < sb;
  return a.occupations < b.occupations;
}

Truncation::Truncation(std::vector<std::uint32_t> cutoffs, std::size_t dim_cap)
    : cutoffs_(std::move(cutoffs)) {
  if (cutoffs_.empty()) throw DomainError("truncation needs at least one mode");
  strides_.assign(cutoffs_.size(), 1);
  for (std::size_t k = cutoffs_.size(); k-- > 0;) {
    if (cutoffs_[k] < 1) throw DomainError("cutoffs must be at least 1");
    strides_[k] = dimension_;
    const std::size_t levels = std::size_t{cutoffs_[k]} + 1;
    if (dimension_ > dim_cap / levels) {
      throw CapacityError("truncation dimension exceeds the cap of " +
                          std::to_string(dim_cap));
    }
    dimension_ *= levels;
  }
  if (dimension_ > dim_cap) {
    throw CapacityError("truncation dimension " + std::to_string(dimension_) +
                        " exceeds the cap of " + std::to_string(dim_cap));
  }
}

bool Truncation::contains(const FockIndex& index) const {
  if (index.modes() != modes()) return false;
  for (std::size_t k = 0; k < modes(); ++k) {
    if (index[k] > cutoffs_[k]) return false;
  }
  return true;
}

std::size_t Truncation::flat(const FockIndex& index) const {
  if (!contains(index)) {
    throw DomainError("Fock index " + index.to_string() +
                      " lies outside the truncation");
  }
  std::size_t f = 0;
  for (std::size_t k = 0; k < modes(); ++k) f += index[k] * strides_[k];
  return f;
}

FockIndex Truncation::index_at(std::size_t flat) const {
  FockIndex idx;
  idx.occupations.resize(modes());
  for (std::size_t k = 0; k < modes(); ++k) idx.occupations[k] = occupation(flat, k);
  return idx;
}

StateVector::StateVector(Truncation truncation)
    : truncation_(std::move(truncation)),
      amplitudes_(truncation_.dimension(), Complex{}) {}

StateVector::StateVector(Truncation truncation, std::vector<Complex> amplitudes,
                         double norm_defect)
    : truncation_(std::move(truncation)),
      amplitudes_(std::move(amplitudes)),
      norm_defect_(norm_defect) {
  if (amplitudes_.size() != truncation_.dimension()) {
    throw DomainError("amplitude count " + std::to_string(amplitudes_.size()) +
                      " does not match truncation dimension " +
                      std::to_string(truncation_.dimension()));
  }
}

StateVector StateVector::basis(Truncation truncation, const FockIndex& index) {
  StateVector s(std::move(truncation));
  s.amplitudes_[s.truncation_.flat(index)] = 1.0;
  return s;
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return acc;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

void StateVector::normalize() {
  const double n = norm();
  if (!std::isfinite(n) || n == 0.0) {
    throw NumericalError("cannot normalize a state with norm " + std::to_string(n));
  }
  norm_defect_ += std::abs(1.0 - n);
  const double inv = 1.0 / n;
  for (auto& a : amplitudes_) a *= inv;
}

StateVector StateVector::embedded(const Truncation& larger) const {
  if (larger.modes() != truncation_.modes()) {
    throw DomainError("embedding target has a different number of modes");
  }
  for (std::size_t k = 0; k < larger.modes(); ++k) {
    if (larger.cutoff(k) < truncation_.cutoff(k)) {
      throw DomainError("embedding target must not shrink any mode");
    }
  }
  StateVector out(larger);
  out.norm_defect_ = norm_defect_;
  for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
    std::size_t f = 0;
    for (std::size_t k = 0; k < larger.modes(); ++k) {
      f += truncation_.occupation(i, k) * larger.stride(k);
    }
    out.amplitudes_[f] = amplitudes_[i];
  }
  return out;
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
  if (!(bra.truncation() == ket.truncation())) {
    throw DomainError("inner product of states on different truncations");
  }
  Complex acc{};
  for (std::size_t i = 0; i < bra.dimension(); ++i) {
    acc += std::conj(bra[i]) * ket[i];
  }
  return acc;
}

CoherentParams::CoherentParams(std::vector<Complex> alphas)
    : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw DomainError("coherent parameters need at least one mode");
  for (std::size_t k = 0; k < alphas_.size(); ++k) {
    if (std::abs(alphas_[k]) == 0.0) {
      throw DomainError("alpha for mode " + std::to_string(k + 1) +
                        " must be nonzero");
    }
  }
}

CoherentParams CoherentParams::uniform(std::size_t modes, Complex alpha) {
  return CoherentParams(std::vector<Complex>(modes, alpha));
}

StateVector ladder_apply(const StateVector& state, std::size_t mode, Ladder kind) {
  const Truncation& tr = state.truncation();
  if (mode >= tr.modes()) {
    throw DomainError("mode " + std::to_string(mode) + " out of range for " +
                      std::to_string(tr.modes()) + " modes");
  }
  StateVector out(tr, std::vector<Complex>(tr.dimension()), state.norm_defect());
  const std::size_t stride = tr.stride(mode);
  const std::uint32_t top = tr.cutoff(mode);
  double lost = 0.0;
  for (std::size_t i = 0; i < tr.dimension(); ++i) {
    const std::uint32_t n = tr.occupation(i, mode);
    const Complex c = state[i];
    switch (kind) {
      case Ladder::number:
        out[i] = static_cast<double>(n) * c;
        break;
      case Ladder::annihilate:
        if (n > 0) out[i - stride] = std::sqrt(static_cast<double>(n)) * c;
        break;
      case Ladder::create:
        if (n < top) {
          out[i + stride] = std::sqrt(static_cast<double>(n) + 1.0) * c;
        } else {
          lost += (static_cast<double>(n) + 1.0) * std::norm(c);
        }
        break;
    }
  }
  out.add_norm_defect(std::sqrt(lost));
  return out;
}

std::vector<Complex> coherent_amplitudes(Complex alpha, std::uint32_t m) {
  std::vector<Complex> c(std::size_t{m} + 1);
  c[0] = std::exp(-0.5 * std::norm(alpha));
  for (std::uint32_t n = 0; n < m; ++n) {
    c[n + 1] = c[n] * alpha / std::sqrt(static_cast<double>(n) + 1.0);
  }
  return c;
}

double coherent_norm_squared(Complex alpha, std::uint32_t m) {
  const double lambda = std::norm(alpha);
  double term = std::exp(-lambda);
  double sum = term;
  for (std::uint32_t n = 1; n <= m; ++n) {
    term *= lambda / static_cast<double>(n);
    sum += term;
  }
  return sum;
}

std::uint32_t truncation_for_alpha(Complex alpha, double eps_tilde) {
  if (!(eps_tilde > 0.0 && eps_tilde < 1.0)) {
    throw DomainError("eps_tilde must lie in (0, 1)");
  }
  constexpr std::uint32_t kMaxCutoff = 100000;
  const double lambda = std::norm(alpha);
  double term = std::exp(-lambda);
  double sum = term;
  for (std::uint32_t m = 1; m <= kMaxCutoff; ++m) {
    term *= lambda / static_cast<double>(m);
    sum += term;
    if (std::abs(1.0 - std::sqrt(sum)) <= eps_tilde) return m;
  }
  throw DomainError("no cutoff up to " + std::to_string(kMaxCutoff) +
                    " meets the tolerance; |alpha| is too large");
}

StateVector product_coherent_state(const CoherentParams& params, double eps_tilde,
                                   std::span<const std::uint32_t> cutoffs,
                                   std::size_t dim_cap) {
  const std::size_t k_modes = params.modes();
  std::vector<std::uint32_t> m(k_modes);
  if (cutoffs.empty()) {
    for (std::size_t k = 0; k < k_modes; ++k) {
      m[k] = truncation_for_alpha(params[k], eps_tilde);
    }
  } else {
    if (cutoffs.size() != k_modes) {
      throw DomainError("cutoff count does not match the number of modes");
    }
    m.assign(cutoffs.begin(), cutoffs.end());
  }
  Truncation tr(m, dim_cap);

  std::vector<std::vector<Complex>> factors(k_modes);
  for (std::size_t k = 0; k < k_modes; ++k) {
    factors[k] = coherent_amplitudes(params[k], m[k]);
  }
  std::vector<Complex> amps(tr.dimension());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    Complex a = 1.0;
    for (std::size_t k = 0; k < k_modes; ++k) a *= factors[k][tr.occupation(i, k)];
    amps[i] = a;
  }
  StateVector state(std::move(tr), std::move(amps));
  state.normalize();
  return state;
}

double fock_probability(const StateVector& state, const FockIndex& index) {
  const std::size_t f = state.truncation().flat(index);
  const double total = state.norm_squared();
  if (total == 0.0) throw NumericalError("probability of a zero state");
  return std::norm(state[f]) / total;
}

}  // namespace qadio

namespace qadio {

std::vector<RankedState> top_components(const StateVector& state, std::size_t k) {
  const double total = state.norm_squared();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericalError("top components of a zero or non-finite state");
  }
  const Truncation& tr = state.truncation();
  std::vector<std::size_t> order(state.dimension());
  std::iota(order.begin(), order.end(), std::size_t{0});
  k = std::min(k, order.size());
  auto before = [&](std::size_t a, std::size_t b) {
    const double pa = std::norm(state[a]);
    const double pb = std::norm(state[b]);
    if (pa != pb) return pa > pb;
    return graded_lex_less(tr.index_at(a), tr.index_at(b));
  };
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k),
                    order.end(), before);
  std::vector<RankedState> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    out.push_back({tr.index_at(order[i]), std::norm(state[order[i]]) / total});
  }
  return out;
}

}  // namespace qadio
