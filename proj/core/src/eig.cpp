#include "nhchain/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "nhchain/analytic.hpp"
#include "nhchain/model.hpp"
#include "lapack_eig.hpp"
#include "structured_eig.hpp"
#include "symmetry.hpp"

namespace nhchain {

using detail::ComplexEig;

namespace {

bool lex_less(cxd a, cxd b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

SpectrumReport make_report(std::vector<cxd> values, double tol,
                           cxd expected_trace) {
  if (tol <= 0.0) throw SpecError("tol: must be > 0");
  SpectrumReport report;
  report.tol_used = tol;
  double max_imag = 0.0, scale = 0.0;
  cxd sum{0.0, 0.0};
  for (cxd v : values) {
    max_imag = std::max(max_imag, std::abs(v.imag()));
    scale = std::max(scale, std::abs(v));
    sum += v;
  }
  report.max_abs_imag = max_imag;
  report.scale = scale;
  report.is_real = max_imag <= tol * std::max(1.0, scale);
  if (std::abs(sum - expected_trace) > 1e-8 * std::max(1.0, scale)) {
    throw NumericalError("eigenvalue sum disagrees with trace by " +
                         std::to_string(std::abs(sum - expected_trace)));
  }
  std::sort(values.begin(), values.end(), lex_less);
  report.eigenvalues = std::move(values);
  return report;
}

}  // namespace

namespace detail {

// Picks the cheapest exact solver for one diagonal block. `idx` are the
// block's basis states in the full chain (needed for the phase rotation).
ComplexEig eig_block(const Eigen::MatrixXcd& sub,
                     const std::vector<Eigen::Index>& idx, int n_sites,
                     bool want_vectors) {
  const Eigen::Index m = sub.rows();
  const double scale = std::max(1.0, sub.cwiseAbs().maxCoeff());
  const double tiny = 1e-13 * scale;

  const bool real_entries = sub.imag().cwiseAbs().maxCoeff() <= tiny;
  if (real_entries) {
    Eigen::MatrixXd re = sub.real();
    const bool symmetric = (re - re.transpose()).cwiseAbs().maxCoeff() <= tiny;
    return symmetric ? eig_symmetric_real(std::move(re), want_vectors)
                     : eig_general_real(std::move(re), want_vectors);
  }

  if ((sub - sub.adjoint()).cwiseAbs().maxCoeff() <= tiny) {
    return eig_hermitian(sub, want_vectors);
  }

  // Try the RT phase rotation: M = S sub S^-1 with S diagonal.
  Eigen::VectorXcd phases(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    phases(i) = realify_phase(idx[i], n_sites);
  }
  Eigen::MatrixXcd rotated = phases.asDiagonal() * sub *
                             phases.conjugate().asDiagonal();
  if (rotated.imag().cwiseAbs().maxCoeff() <= tiny) {
    Eigen::MatrixXd re = rotated.real();
    const bool symmetric = (re - re.transpose()).cwiseAbs().maxCoeff() <= tiny;
    ComplexEig eig = symmetric ? eig_symmetric_real(std::move(re), want_vectors)
                               : eig_general_real(std::move(re), want_vectors);
    if (want_vectors) {
      // Eigenvectors of sub are S^-1 times those of the rotated matrix.
      eig.vectors = phases.conjugate().asDiagonal() * eig.vectors;
    }
    return eig;
  }

  return eig_general_complex(sub, want_vectors);
}

StructuredEig eig_structured(const Eigen::MatrixXcd& h, bool want_vectors) {
  const Eigen::Index dim = h.rows();
  if (dim != h.cols()) throw SpecError("op: matrix must be square");
  const int n_sites = site_count_of_dim(dim);
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());

  StructuredEig out;
  out.dim = dim;

  const ParitySplit split = parity_split(dim);
  std::vector<std::vector<Eigen::Index>> blocks;
  if (is_parity_blocked(h, split, 1e-14 * scale)) {
    blocks = {split.even, split.odd};
  } else {
    std::vector<Eigen::Index> all(dim);
    std::iota(all.begin(), all.end(), Eigen::Index{0});
    blocks = {std::move(all)};
  }

  for (auto& idx : blocks) {
    const Eigen::Index m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd sub(m, m);
    for (Eigen::Index c = 0; c < m; ++c) {
      for (Eigen::Index r = 0; r < m; ++r) sub(r, c) = h(idx[r], idx[c]);
    }
    ComplexEig eig = eig_block(sub, idx, n_sites, want_vectors);
    out.blocks.push_back({std::move(idx), std::move(eig.values),
                          std::move(eig.vectors)});
  }
  return out;
}

}  // namespace detail

SpectrumReport diagonalize(const DenseOperator& op, double tol) {
  const detail::StructuredEig decomp = detail::eig_structured(op.entries, false);
  std::vector<cxd> values;
  values.reserve(op.entries.rows());
  for (const auto& block : decomp.blocks) {
    values.insert(values.end(), block.values.begin(), block.values.end());
  }
  return make_report(std::move(values), tol, op.entries.trace());
}

EigenDecomposition eigendecomposition(const DenseOperator& op) {
  const detail::StructuredEig decomp = detail::eig_structured(op.entries, true);
  const Eigen::Index dim = op.entries.rows();

  std::vector<std::pair<cxd, std::pair<int, Eigen::Index>>> order;
  order.reserve(dim);
  for (int b = 0; b < static_cast<int>(decomp.blocks.size()); ++b) {
    const auto& block = decomp.blocks[b];
    for (Eigen::Index j = 0; j < block.values.size(); ++j) {
      order.push_back({block.values(j), {b, j}});
    }
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });

  EigenDecomposition out;
  out.values.resize(dim);
  out.vectors = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto& [value, loc] = order[col];
    const auto& block = decomp.blocks[loc.first];
    out.values(col) = value;
    for (Eigen::Index r = 0; r < static_cast<Eigen::Index>(block.idx.size()); ++r) {
      out.vectors(block.idx[r], col) = block.vectors(r, loc.second);
    }
    const double norm = out.vectors.col(col).norm();
    if (norm > 0) out.vectors.col(col) /= norm;
  }
  return out;
}

GroundState ground_state(const DenseOperator& op, double tol) {
  const EigenDecomposition decomp = eigendecomposition(op);
  double max_imag = 0.0, scale = 0.0;
  for (Eigen::Index i = 0; i < decomp.values.size(); ++i) {
    max_imag = std::max(max_imag, std::abs(decomp.values(i).imag()));
    scale = std::max(scale, std::abs(decomp.values(i)));
  }
  if (max_imag > tol * std::max(1.0, scale)) {
    throw NumericalError(
        "ground_state: spectrum is not real at tolerance (max |Im| = " +
        std::to_string(max_imag) + ")");
  }
  // values are sorted by (real, imag): index 0 has the smallest real part.
  const double window = 1e-8 * std::max(1.0, scale);
  const double min_re = decomp.values(0).real();
  int degeneracy = 0;
  for (Eigen::Index i = 0; i < decomp.values.size(); ++i) {
    if (decomp.values(i).real() - min_re <= window) ++degeneracy;
  }
  GroundState gs;
  gs.energy = decomp.values(0);
  gs.vector = decomp.vectors.col(0);
  gs.degeneracy = degeneracy;
  return gs;
}

double conjugate_pair_defect(const SpectrumReport& report) {
  const double threshold = report.tol_used * std::max(1.0, report.scale);
  double worst = 0.0;
  for (cxd v : report.eigenvalues) {
    if (std::abs(v.imag()) <= threshold) continue;
    double best = std::numeric_limits<double>::infinity();
    for (cxd w : report.eigenvalues) {
      best = std::min(best, std::abs(w - std::conj(v)));
    }
    worst = std::max(worst, best);
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Momentum-sector sweep engine
// ---------------------------------------------------------------------------

namespace detail {

SweepBlocks prepare_sweep_blocks(const ModelSpec& spec) {
  ModelSpec base = spec;
  base.validate();
  const int n = base.n_sites;
  const Eigen::Index dim = Eigen::Index{1} << n;

  SweepBlocks sb;
  sb.spec = base;
  sb.table = build_orbit_table(n);
  const OrbitTable& table = sb.table;
  const int cells = table.cells;

  const auto pairs = pair_couplings(base);
  const bool hermitian = base.is_hermitian();
  const double j = base.coupling_j;

  // Per-state diagonal at lambda1 = 0: alternating field plus zz coupling;
  // the uniform field enters as (J/2) * lambda1 * magnetization.
  std::vector<double> diag0(dim, 0.0);
  for (Eigen::Index b = 0; b < dim; ++b) {
    diag0[b] = 0.5 * j * base.lambda2 * alternating_magnetization(b, n);
  }
  if (base.is_xyz()) {
    for (const auto& pc : pairs) {
      const Eigen::Index mask_a = Eigen::Index{1} << (n - pc.site_a);
      const Eigen::Index mask_b = Eigen::Index{1} << (n - pc.site_b);
      const double zz = base.delta * pc.strength / 4.0;
      for (Eigen::Index b = 0; b < dim; ++b) {
        const int sa = (b & mask_a) ? -1 : 1;
        const int sbz = (b & mask_b) ? -1 : 1;
        diag0[b] += zz * sa * sbz;
      }
    }
  }

  // Momentum sectors: q and cells - q have complex-conjugate blocks
  // (amplitudes are real in the rotated frame), so only q <= cells/2 is
  // materialized.
  sb.sectors.resize(cells);
  for (int q = 0; q <= cells / 2; ++q) {
    SweepSector& sector = sb.sectors[q];
    sector.q = q;
    sector.theta = 2.0 * M_PI * q / cells;

    std::vector<Eigen::Index> basis;
    for (Eigen::Index r : table.reps) {
      if ((Eigen::Index(q) * table.orbit_len[r]) % cells == 0) basis.push_back(r);
    }
    const Eigen::Index m = static_cast<Eigen::Index>(basis.size());
    std::vector<Eigen::Index> pos(dim, -1);
    for (Eigen::Index i = 0; i < m; ++i) pos[basis[i]] = i;

    Matrix block = Matrix::Zero(m, m);
    Eigen::VectorXd field_m(m);
    const cxd minus_i_theta{0.0, -sector.theta};
    for (Eigen::Index col = 0; col < m; ++col) {
      const Eigen::Index a = basis[col];
      const double la = table.orbit_len[a];
      block(col, col) += diag0[a];
      field_m(col) = 0.5 * j * magnetization(a, n);
      for (const auto& pc : pairs) {
        const Eigen::Index mask_a = Eigen::Index{1} << (n - pc.site_a);
        const Eigen::Index mask_b = Eigen::Index{1} << (n - pc.site_b);
        const bool bit_a = (a & mask_a) != 0;
        const bool bit_b = (a & mask_b) != 0;
        double amp;
        if (bit_a != bit_b) {
          amp = 0.5 * pc.strength;  // hop
        } else if (hermitian) {
          amp = 0.5 * base.gamma * pc.strength;
        } else {
          // rotated frame: raising both spins carries -gamma J/2,
          // lowering both +gamma J/2
          amp = (bit_a ? -0.5 : 0.5) * base.gamma * pc.strength;
        }
        if (amp == 0.0) continue;
        const Eigen::Index x = a ^ (mask_a | mask_b);
        const Eigen::Index rx = table.rep[x];
        if (pos[rx] < 0) continue;  // momentum not allowed for that orbit
        const double lx = table.orbit_len[rx];
        block(pos[rx], col) += amp * std::exp(minus_i_theta * double(table.shift[x])) *
                               std::sqrt(la / lx);
      }
    }
    sector.basis = std::move(basis);
    sector.block = std::move(block);
    sector.field_m = std::move(field_m);
  }
  return sb;
}

// All 2^N eigenvalues at the given uniform field. Sector q > cells/2 is
// the conjugate of sector cells - q.
std::vector<cxd> sweep_spectrum(const SweepBlocks& sb, double lambda1) {
  const int cells = sb.table.cells;
  std::vector<cxd> values;
  values.reserve(Eigen::Index{1} << sb.spec.n_sites);
  for (int q = 0; q <= cells / 2; ++q) {
    const SweepSector& sector = sb.sectors[q];
    Matrix w = sector.block;
    w.diagonal() += (lambda1 * sector.field_m).cast<cxd>();

    ComplexEig eig;
    const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    if (w.imag().cwiseAbs().maxCoeff() <= 1e-13 * scale) {
      Eigen::MatrixXd re = w.real();
      const bool symmetric =
          (re - re.transpose()).cwiseAbs().maxCoeff() <= 1e-13 * scale;
      eig = symmetric ? eig_symmetric_real(std::move(re), false)
                      : eig_general_real(std::move(re), false);
    } else if ((w - w.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale) {
      eig = eig_hermitian(std::move(w), false);
    } else {
      eig = eig_general_complex(std::move(w), false);
    }

    const bool mirrored = (q != 0) && (2 * q != cells);
    for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
      values.push_back(eig.values(i));
      if (mirrored) values.push_back(std::conj(eig.values(i)));
    }
  }
  return values;
}

cxd sweep_trace(const SweepBlocks& sb, double lambda1) {
  const int cells = sb.table.cells;
  cxd trace{0.0, 0.0};
  for (int q = 0; q <= cells / 2; ++q) {
    const SweepSector& sector = sb.sectors[q];
    cxd t = sector.block.trace() +
            cxd{lambda1 * sector.field_m.sum(), 0.0};
    const bool mirrored = (q != 0) && (2 * q != cells);
    trace += mirrored ? t + std::conj(t) : t;
  }
  return trace;
}

}  // namespace detail

SpectrumReport spectrum_of(const ModelSpec& spec, double tol) {
  const detail::SweepBlocks sb = detail::prepare_sweep_blocks(spec);
  return make_report(detail::sweep_spectrum(sb, spec.lambda1), tol,
                     detail::sweep_trace(sb, spec.lambda1));
}

OnsetWindow default_onset_window(double predicted) {
  return {std::max(0.0, predicted - 1.0), predicted + 2.0};
}

SweepRecord detect_onset(const ModelSpec& spec_template, SweepParam param,
                         double start, double stop, double step, double tol,
                         OnsetRule rule) {
  (void)param;  // Lambda1 and Lambda both name the uniform field
  if (!(start < stop)) throw SpecError("sweep: start must be < stop");
  if (!(step > 0.0)) throw SpecError("step: must be > 0");
  ModelSpec tmpl = spec_template;
  tmpl.validate();

  const double control = tmpl.is_xyz() ? tmpl.delta : tmpl.lambda2;
  const SurfacePrediction pred = reality_threshold(
      tmpl.kind, control, tmpl.gamma, tmpl.alpha,
      tmpl.is_long_range() ? std::optional<int>(tmpl.n_sites) : std::nullopt);

  const int last = static_cast<int>(std::floor((stop - start) / step + 1e-9));
  const detail::SweepBlocks sb = detail::prepare_sweep_blocks(tmpl);
  const auto real_at = [&](int m) {
    const double field = start + m * step;
    const SpectrumReport report =
        make_report(detail::sweep_spectrum(sb, field), tol,
                    detail::sweep_trace(sb, field));
    return report.is_real;
  };

  std::optional<double> detected;
  if (rule == OnsetRule::StableReal) {
    // Scan downward from `stop`: the first non-real grid point bounds the
    // detected onset from below, and every point above it has been checked,
    // which is exactly the look-ahead guard the definition asks for.
    for (int m = last;; --m) {
      if (m < 0) {
        detected = start;
        break;
      }
      if (!real_at(m)) {
        if (m < last) detected = start + (m + 1) * step;
        break;
      }
    }
  } else {
    for (int m = 0; m <= last; ++m) {
      if (real_at(m)) {
        detected = start + m * step;
        break;
      }
    }
  }

  SweepRecord record;
  record.control = control;
  record.predicted = pred.value;
  record.detected = detected;
  if (detected) record.difference = *detected - pred.value;
  record.n_sites = tmpl.n_sites;
  record.gamma = tmpl.gamma;
  record.step = step;
  return record;
}

SufficiencyReport verify_sufficiency(const ModelSpec& spec_template,
                                     int n_points, double step, double tol,
                                     double field_offset) {
  ModelSpec tmpl = spec_template;
  tmpl.validate();
  if (!tmpl.is_long_range()) {
    throw SpecError("kind: verify_sufficiency needs a long-range kind");
  }
  if (n_points < 1) throw SpecError("n_points: must be >= 1");
  if (!(step > 0.0)) throw SpecError("step: must be > 0");

  const double control = tmpl.is_xyz() ? tmpl.delta : tmpl.lambda2;
  const SurfacePrediction pred = reality_threshold(tmpl.kind, control,
                                                   tmpl.gamma, tmpl.alpha,
                                                   tmpl.n_sites);
  const double start = std::max(0.0, pred.value + field_offset);
  const detail::SweepBlocks sb = detail::prepare_sweep_blocks(tmpl);

  SufficiencyReport out;
  out.all_real = true;
  out.points.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double field = start + i * step;
    const SpectrumReport report =
        make_report(detail::sweep_spectrum(sb, field), tol,
                    detail::sweep_trace(sb, field));
    out.points.push_back({field, report.max_abs_imag, report.is_real});
    out.all_real = out.all_real && report.is_real;
  }
  return out;
}

}  // namespace nhchain
