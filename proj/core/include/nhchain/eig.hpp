#pragma once

#include <optional>
#include <vector>

#include "nhchain/types.hpp"

namespace nhchain {

/// Relative reality threshold: a spectrum counts as real when
/// max |Im| <= tol * max(1, max |eigenvalue|).
inline constexpr double kDefaultRealityTol = 1e-7;

struct SpectrumReport {
  std::vector<cxd> eigenvalues;  // sorted by (real, imag)
  double max_abs_imag = 0.0;
  double scale = 0.0;  // max |eigenvalue|
  bool is_real = false;
  double tol_used = 0.0;
};

/// One row of a detection sweep.
struct SweepRecord {
  double control = 0.0;  // lambda2 for ATXY kinds, delta for XYZ kinds
  double predicted = 0.0;
  std::optional<double> detected;
  std::optional<double> difference;  // detected - predicted
  int n_sites = 0;
  double gamma = 0.0;
  double step = 0.0;
};

enum class SweepParam { Lambda1, Lambda };

struct SufficiencyPoint {
  double field = 0.0;
  double max_abs_imag = 0.0;
  bool is_real = false;
};

struct SufficiencyReport {
  bool all_real = false;
  std::vector<SufficiencyPoint> points;
};

struct GroundState {
  cxd energy;
  Vector vector;  // right eigenvector, unit Euclidean norm
  int degeneracy = 0;
};

struct EigenDecomposition {
  Vector values;   // sorted by (real, imag)
  Matrix vectors;  // right eigenvectors as columns, matching `values`
};

/// Full spectrum of a (generally non-normal) dense operator. The solver
/// exploits exact structure when present — parity block-diagonality,
/// Hermiticity, and the diagonal phase rotation that makes the
/// imaginary-anisotropy models real — and falls back to zgeev otherwise.
/// The eigenvalue sum is checked against the matrix trace.
SpectrumReport diagonalize(const DenseOperator& op,
                           double tol = kDefaultRealityTol);

/// Same spectrum computed directly from the model terms in translation
/// (by two sites) momentum sectors; used by the sweep operations where
/// thousands of spectra are needed. Agrees with diagonalize() on the
/// built matrix (see tests).
SpectrumReport spectrum_of(const ModelSpec& spec,
                           double tol = kDefaultRealityTol);

/// Eigenpairs of the operator (same structured dispatch, with vectors).
EigenDecomposition eigendecomposition(const DenseOperator& op);

/// Default detection window around a predicted onset.
struct OnsetWindow {
  double start;
  double stop;
};
OnsetWindow default_onset_window(double predicted);

enum class OnsetRule {
  /// Smallest grid value that is real and stays real on every later grid
  /// point up to `stop` (guards against re-entrant imaginary windows).
  StableReal,
  /// Smallest grid value whose spectrum is real, ignoring what happens
  /// above it (a plain first-crossing scan).
  FirstReal,
};

/// Detected onset of the real spectrum on the grid start, start+step, ...,
/// stop, under the chosen rule; empty when no grid value qualifies.
SweepRecord detect_onset(const ModelSpec& spec_template, SweepParam param,
                         double start, double stop, double step, double tol,
                         OnsetRule rule = OnsetRule::StableReal);

/// Spectrum reality on the n_points grid starting at the predicted
/// surface: field = max(0, lambda^s(alpha) + field_offset) + i*step,
/// i = 0..n_points-1. A negative offset probes below the surface.
SufficiencyReport verify_sufficiency(const ModelSpec& spec_template,
                                     int n_points, double step, double tol,
                                     double field_offset = 0.0);

/// Eigenpair with the smallest real part; requires a real spectrum at
/// `tol`. Degeneracy counts eigenvalues within 1e-8 * max(1, scale).
GroundState ground_state(const DenseOperator& op,
                         double tol = kDefaultRealityTol);

/// Largest distance from any eigenvalue with |Im| > tol*max(1,scale) to
/// its best conjugate-partner candidate (0 for a real spectrum); test aid
/// for the conjugate-pair symmetry that RT symmetry forces.
double conjugate_pair_defect(const SpectrumReport& report);

}  // namespace nhchain
