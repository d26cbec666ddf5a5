#pragma once

#include <optional>
#include <vector>

#include "prpairs/forms.hpp"
#include "prpairs/multfunc.hpp"
#include "prpairs/types.hpp"

namespace prp {

struct WeightSpec {
  double delta;
  BinaryQuadraticForm P1, P2;
  WeightSpec(double delta, BinaryQuadraticForm P1, BinaryQuadraticForm P2);
};

// Trapezoid on the circle, phase in turns: 1 on |phase| <= delta/2, 0 on |phase| >= delta.
double trapezoid(double delta, double phase);

// Phase of P1/P2 in turns, reduced to [-1/2, 1/2).
double weight_phase(double p1, double p2);

double weight(const WeightSpec& spec, i128 m, i128 n);
// Same integrand at real points; scale invariant.
double weight_real(const WeightSpec& spec, double x, double y);

inline constexpr u64 kRiemannResolution = 4096;

struct MuEstimate {
  double grid;
  double riemann;
};
double mu_grid(const WeightSpec& spec, u64 N);
double mu_riemann(const WeightSpec& spec, u64 resolution = kRiemannResolution);
MuEstimate mu_estimate(const WeightSpec& spec, u64 N, u64 resolution = kRiemannResolution);

struct FolnerElement {
  ExponentMap exponents;
  BigInt expand() const { return prp::expand(exponents); }
};

inline constexpr u64 kFolnerEnumerationCap = 7;

bool in_phi_K(const FolnerElement& e, u64 K);
std::vector<FolnerElement> folner_enumerate(u64 K);
// Uniform sample from Phi_K for K beyond the enumeration cap; deterministic in seed.
std::vector<FolnerElement> folner_sample(u64 K, std::size_t count, u64 seed);

// Phi_{j,K}: support on the j-th partner prime set below K, K < l_p <= 3K/2.
std::vector<FolnerElement> folner_partner(u64 K, int j, const BinaryQuadraticForm& P1, const BinaryQuadraticForm& P2,
                                          const std::vector<u64>& excluded = {});

Complex folner_average(const MultiplicativeFunction& f, u64 K);
Complex folner_average_sampled(const MultiplicativeFunction& f, u64 K, std::size_t count, u64 seed);

inline constexpr u64 kDivisorStatCap = 5000;

// Frequency over m, n in [N] of p || P(Qm+a, Qn+b) and q || P(Qm+a, Qn+b).
double divisor_stat_exact(const BinaryQuadraticForm& P, i64 Q, i64 a, i64 b, u64 p, u64 q, u64 N);

// Primes dividing 2 Q disc(P) P(1,0).
bool divisor_exceptional(const BinaryQuadraticForm& P, i64 Q, u64 p);
double divisor_stat_predicted(const BinaryQuadraticForm& P, u64 p, u64 q, i64 Q = 1);

struct DivisorBound {
  double exact;      // frequency of l | P(Qm+a, Qn+b)
  double reference;  // Q^2 / l
};
DivisorBound divisor_bound_probe(const BinaryQuadraticForm& P, i64 Q, i64 a, i64 b, u64 l, u64 N);

// Grid mean of max_{1 <= Q <= Q_max} |w(Qm+a, Qn+b) - w(m, n)|.
double weight_stability(const WeightSpec& spec, u64 N, i64 Q_max = 50, i64 a = 1, i64 b = 0);

}  // namespace prp
