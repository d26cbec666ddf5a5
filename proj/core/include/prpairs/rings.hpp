#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prpairs/forms.hpp"
#include "prpairs/types.hpp"

namespace prp {

enum class TauKind {
  Sqrt,  // tau = sqrt(-d), d = 1, 2 mod 4
  Half   // tau = (1 + sqrt(-d)) / 2, d = 3 mod 4
};

// Z[tau_d] inside Q(sqrt(-d)); d > 0 imaginary, d < 0 real.
class QuadraticRing {
 public:
  explicit QuadraticRing(i64 d);

  i64 d() const { return d_; }
  TauKind tau_kind() const { return kind_; }
  const BinaryQuadraticForm& norm_form() const { return norm_form_; }
  int unit_rank() const { return d_ > 0 ? 0 : 1; }
  i64 field_discriminant() const;
  // tau^2 = s*tau - t
  i64 tau_trace() const { return kind_ == TauKind::Sqrt ? 0 : 1; }
  i64 tau_norm() const { return kind_ == TauKind::Sqrt ? d_ : (d_ + 1) / 4; }
  bool operator==(const QuadraticRing& o) const { return d_ == o.d_; }

 private:
  i64 d_;
  TauKind kind_;
  BinaryQuadraticForm norm_form_;
};

class RingElement {
 public:
  RingElement(QuadraticRing ring, BigInt m, BigInt n);

  const QuadraticRing& ring() const { return ring_; }
  const BigInt& m() const { return m_; }
  const BigInt& n() const { return n_; }

  BigInt norm() const;
  RingElement conj() const;
  RingElement operator*(const RingElement& o) const;
  RingElement operator-() const;
  RingElement pow(i64 k) const;  // negative k only for units
  bool is_zero() const { return m_ == 0 && n_ == 0; }
  bool operator==(const RingElement& o) const;
  std::string to_string() const;

 private:
  QuadraticRing ring_;
  BigInt m_, n_;
};

BigInt norm(const RingElement& z);

inline constexpr i64 kCountBoxCap = 10'000;

u64 count_solutions(i64 d, i64 k, i64 N);
u64 count_ideals(i64 d, u64 k);

struct FundamentalUnit {
  RingElement unit;
  BigInt norm;  // +1 or -1
};
FundamentalUnit fundamental_unit(i64 d);

std::vector<RingElement> torsion_units(const QuadraticRing& ring);

bool is_C_regular(const RingElement& z, double C, i64 N_max);

struct RegularAssociate {
  i64 t;
  RingElement associate;
};
std::optional<RegularAssociate> find_regular_associate(const RingElement& z, double C, i64 N_max, i64 t_range);

struct CountingDiagnostic {
  double fitted_c;   // smallest c_d making the log bound hold on the sample
  u64 samples;       // k with C_{d,N}(k) > 0
};
// Monitored form of C_{d,N}(k) <= log+(c_d N / sqrt|k|) * ideals(|k|) over 1 <= |k| <= k_max.
CountingDiagnostic fit_counting_constant(i64 d, i64 k_max, i64 N);

// "m+n*tau" literal
RingElement parse_ring_element(const QuadraticRing& ring, const std::string& text);

}  // namespace prp
