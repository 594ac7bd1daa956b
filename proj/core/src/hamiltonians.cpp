#include "tiqs/hamiltonians.hpp"

#include <cmath>

#include "tiqs/errors.hpp"
#include "tiqs/linalg.hpp"
#include "tiqs/special_functions.hpp"

namespace tiqs {

OperatorExpr::OperatorExpr(SpinPhononSpace s) : space(std::move(s)) {
  static_part.resize(space.dim(), space.dim());
}

void OperatorExpr::add_static(const SpC& op) {
  if (op.rows() != dim() || op.cols() != dim()) throw DimensionError("static term has wrong dimension");
  static_part = static_part + op;
}

void OperatorExpr::add_term(const SpC& op, Coefficient f, std::string label) {
  if (op.rows() != dim() || op.cols() != dim()) throw DimensionError("time term has wrong dimension");
  terms.push_back({op, std::move(f), std::move(label)});
}

void OperatorExpr::add_hermitian_pair(const SpC& A, const Coefficient& f, const std::string& label) {
  add_term(A, f, label);
  SpC Ad = A.adjoint();
  add_term(Ad, [f](double t) { return std::conj(f(t)); }, label + "^dag");
}

SpC OperatorExpr::evaluate(double t) const {
  SpC H = static_part;
  for (const auto& term : terms) H = H + term.op * term.coeff(t);
  return H;
}

double OperatorExpr::hermiticity_defect(double t) const { return tiqs::hermiticity_defect(evaluate(t)); }

SpinPhononSpace make_space(int n_spins, const HamiltonianOptions& o) {
  SpinPhononSpace s{n_spins, o.n_max};
  for (int c : o.n_max)
    if (c < 1) throw DimensionError("Fock cutoff must be at least 1");
  if (s.dim() > o.max_dim) throw DimensionError("Hilbert space dimension " + std::to_string(s.dim()) + " exceeds limit");
  return s;
}

namespace {

SpC sigma_plus(int N, int i) {
  PauliSum p(N);
  p.add_single(0.5, i, Pauli::X).add_single(cplx(0.0, 0.5), i, Pauli::Y);
  return p.to_sparse();
}

void check_modes(const NormalModeData& m, const SpinPhononSpace& s) {
  if (s.n_modes() != m.n_modes()) throw DimensionError("Fock cutoffs must be given for every mode");
  if (s.n_spins != m.n_ions()) throw DimensionError("spin count does not match the crystal");
}

SpC total_x(const SpinPhononSpace& s) { return embed_spin(s, total_spin_op(s.n_spins, Pauli::X)); }

}  // namespace

SpC free_phonon_hamiltonian(const SpinPhononSpace& s, const VecR& freqs) {
  SpC H(s.dim(), s.dim());
  for (int n = 0; n < s.n_modes(); ++n) H = H + number_op(s, n) * cplx(freqs(n));
  return H;
}

OperatorExpr build_lab_hamiltonian(const NormalModeData& modes, const DriveSpec& d, const HamiltonianOptions& o) {
  SpinPhononSpace s = make_space(modes.n_ions(), o);
  check_modes(modes, s);
  const int N = s.n_spins;
  OperatorExpr H(s);
  H.add_static(free_phonon_hamiltonian(s, modes.frequencies));
  if (o.omega0 != 0.0) H.add_static(embed_spin(s, total_spin_op(N, Pauli::Z)) * cplx(0.5 * o.omega0));

  MatC F = force_matrix(modes, d) * I;
  SpC red(s.dim(), s.dim()), blue(s.dim(), s.dim());
  for (int n = 0; n < s.n_modes(); ++n) {
    SpC a = annihilation(s, n);
    SpC ad = a.adjoint();
    for (int i = 0; i < N; ++i) {
      if (F(i, n) == cplx(0.0)) continue;
      SpC sp = embed_spin(s, sigma_plus(N, i));
      red = red + SpC(sp * a) * F(i, n);
      blue = blue + SpC(sp * ad) * F(i, n);
    }
  }
  const double wr = o.omega0 - d.mu, wb = o.omega0 + d.mu;
  const double pr = d.phi_r, pb = d.phi_b;
  if (d.Omega_L != 0.0) {
    H.add_hermitian_pair(red, [pr, wr](double t) { return std::exp(I * (pr - wr * t)); }, "red");
    H.add_hermitian_pair(blue, [pb, wb](double t) { return std::exp(I * (pb - wb * t)); }, "blue");
  }
  if (d.h0 != 0.0) {
    SpC sp(s.dim(), s.dim());
    for (int i = 0; i < N; ++i) sp = sp + embed_spin(s, sigma_plus(N, i));
    const double h0 = d.h0, h2 = 0.5 * d.h0 * d.xi, w0 = o.omega0, D = d.Delta;
    H.add_hermitian_pair(
        sp,
        [h0, h2, w0, D](double t) {
          return h0 * std::exp(-I * w0 * t) + h2 * std::exp(-I * (w0 + D) * t) + h2 * std::exp(-I * (w0 - D) * t);
        },
        "carrier");
  }
  H.max_frequency = std::max({std::abs(wb), std::abs(wr), modes.frequencies.maxCoeff(), std::abs(o.omega0) + d.Delta});
  return H;
}

namespace {
// sum_i f_in sigma_i^{phi_s} for one mode
SpC force_spin_operator(const SpinPhononSpace& s, const MatC& f, int n, double phi_s) {
  SpC acc(s.dim(), s.dim());
  for (int i = 0; i < s.n_spins; ++i) {
    if (f(i, n) == cplx(0.0)) continue;
    acc = acc + embed_spin(s, spin_phase_op(s.n_spins, i, phi_s)) * f(i, n);
  }
  return acc;
}
}  // namespace

OperatorExpr build_interaction_hamiltonian(const NormalModeData& modes, const DriveSpec& d,
                                           const HamiltonianOptions& o) {
  SpinPhononSpace s = make_space(modes.n_ions(), o);
  check_modes(modes, s);
  OperatorExpr H(s);
  MatC f = force_matrix(modes, d);
  VecR dn = mode_detunings(modes, d);
  const double ps = d.phi_s(), pm = d.phi_m();
  for (int n = 0; n < s.n_modes(); ++n) {
    SpC C = SpC(force_spin_operator(s, f, n, ps) * annihilation(s, n));
    const double dl = dn(n);
    H.add_hermitian_pair(C, [pm, dl](double t) { return std::exp(I * (pm - dl * t)); }, "ms" + std::to_string(n));
  }
  if (d.h0 != 0.0) {
    const double h0 = d.h0, xi = d.xi, D = d.Delta;
    H.add_term(total_x(s), [h0, xi, D](double t) { return cplx(h0 * (1.0 + xi * std::cos(D * t))); }, "carrier");
  }
  H.max_frequency = std::max(dn.cwiseAbs().maxCoeff(), d.Delta);
  return H;
}

OperatorExpr build_beatnote_hamiltonian(const NormalModeData& modes, const DriveSpec& d,
                                        const HamiltonianOptions& o) {
  SpinPhononSpace s = make_space(modes.n_ions(), o);
  check_modes(modes, s);
  OperatorExpr H(s);
  MatC f = force_matrix(modes, d);
  VecR dn = mode_detunings(modes, d);
  H.add_static(free_phonon_hamiltonian(s, dn));
  const double ps = d.phi_s(), pm = d.phi_m();
  for (int n = 0; n < s.n_modes(); ++n) {
    SpC C = SpC(force_spin_operator(s, f, n, ps) * annihilation(s, n)) * std::exp(I * pm);
    H.add_static(C);
    H.add_static(SpC(C.adjoint()));
  }
  if (d.h0 != 0.0) {
    SpC X = total_x(s);
    H.add_static(X * cplx(d.h0));
    if (d.xi != 0.0) {
      const double a = d.h0 * d.xi, D = d.Delta;
      H.add_term(X, [a, D](double t) { return cplx(a * std::cos(D * t)); }, "carrier_mod");
    }
  }
  H.max_frequency = d.Delta;
  return H;
}

double carrier_angle(double t, const DriveSpec& d) {
  if (d.Delta == 0.0) return d.h0 * t * (1.0 + d.xi);
  return d.h0 * (t + d.xi * std::sin(d.Delta * t) / d.Delta);
}

std::array<double, 3> driven_pauli(double t, const DriveSpec& d, int m_max) {
  const double ps = d.phi_s();
  if (d.xi == 0.0 || d.Delta == 0.0) {
    double th = carrier_angle(t, d);
    return {std::cos(ps), -std::sin(ps) * std::cos(2.0 * th), std::sin(ps) * std::sin(2.0 * th)};
  }
  const double arg = comb_bessel_argument(d);
  if (m_max < 0) m_max = bessel_cutoff(arg, 1e-34);
  double c = 0.0, sn = 0.0;
  for (int m = -m_max; m <= m_max; ++m) {
    double jm = bessel_j(m, arg);
    double w = (2.0 * d.h0 + m * d.Delta) * t;
    c += jm * std::cos(w);
    sn += jm * std::sin(w);
  }
  return {std::cos(ps), -std::sin(ps) * c, std::sin(ps) * sn};
}

std::array<double, 3> driven_pauli_exact(double t, const DriveSpec& d) {
  const double th = carrier_angle(t, d);
  MatC X = MatC(pauli_matrix(Pauli::X)), Y = MatC(pauli_matrix(Pauli::Y)), Z = MatC(pauli_matrix(Pauli::Z));
  MatC U = std::cos(th) * MatC::Identity(2, 2) + I * std::sin(th) * X;
  MatC sp = std::cos(d.phi_s()) * X - std::sin(d.phi_s()) * Y;
  MatC R = U * sp * U.adjoint();
  return {0.5 * std::real((X * R).trace()), 0.5 * std::real((Y * R).trace()), 0.5 * std::real((Z * R).trace())};
}

PauliSum xyz_pauli_sum(const MatR& Jx, const MatR& Jy, const MatR& Jz) {
  const int N = static_cast<int>(Jx.rows());
  PauliSum p(N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      p.add_pair(Jx(i, j), i, Pauli::X, j, Pauli::X);
      p.add_pair(Jy(i, j), i, Pauli::Y, j, Pauli::Y);
      p.add_pair(Jz(i, j), i, Pauli::Z, j, Pauli::Z);
    }
  return p;
}

PauliSum ising_pauli_sum(const MatR& J, double phi) {
  const int N = static_cast<int>(J.rows());
  const double c = std::cos(phi), s = -std::sin(phi);
  PauliSum p(N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      if (J(i, j) == 0.0) continue;
      p.add_pair(J(i, j) * c * c, i, Pauli::X, j, Pauli::X);
      p.add_pair(J(i, j) * s * s, i, Pauli::Y, j, Pauli::Y);
      p.add_pair(J(i, j) * c * s, i, Pauli::X, j, Pauli::Y);
      p.add_pair(J(i, j) * c * s, i, Pauli::Y, j, Pauli::X);
    }
  return p;
}

PauliSum field_pauli_sum(int N, double h, double phi_d, const std::vector<int>& signs) {
  PauliSum p(N);
  for (int i = 0; i < N; ++i) {
    double sg = i < static_cast<int>(signs.size()) ? signs[i] : 1.0;
    p.add_single(h * sg * std::cos(phi_d), i, Pauli::X);
    p.add_single(-h * sg * std::sin(phi_d), i, Pauli::Y);
  }
  return p;
}

PauliSum heisenberg_pauli_sum(const MatR& Jt, double anisotropy) {
  const int N = static_cast<int>(Jt.rows());
  PauliSum p(N);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      if (Jt(i, j) == 0.0) continue;
      double q = 0.25 * Jt(i, j);
      p.add_pair(q, i, Pauli::X, j, Pauli::X);
      p.add_pair(q, i, Pauli::Y, j, Pauli::Y);
      p.add_pair(q * anisotropy, i, Pauli::Z, j, Pauli::Z);
    }
  return p;
}

OperatorExpr build_effective(const EffectiveModelSpec& sp) {
  const int N = sp.N;
  auto square = [N](const MatR& M, const char* what) {
    if (M.rows() != N || M.cols() != N) throw DimensionError(std::string("coupling matrix ") + what + " must be N x N");
  };
  SpinPhononSpace s{N, {}};
  OperatorExpr H(s);
  switch (sp.kind) {
    case EffectiveKind::XYZ: {
      square(sp.Jx, "Jx");
      square(sp.Jy, "Jy");
      square(sp.Jz, "Jz");
      H.add_static(xyz_pauli_sum(sp.Jx, sp.Jy, sp.Jz).to_sparse());
      break;
    }
    case EffectiveKind::QIM: {
      square(sp.J, "J");
      if (!sp.field_signs.empty() && static_cast<int>(sp.field_signs.size()) != N)
        throw DimensionError("field signs must have N entries");
      H.add_static(ising_pauli_sum(sp.J, sp.phi_s).to_sparse());
      double pd = std::isnan(sp.phi_d) ? sp.phi_s - 0.5 * pi : sp.phi_d;
      SpC F = field_pauli_sum(N, 1.0, pd, sp.field_signs).to_sparse();
      if (sp.field_profile) {
        auto prof = sp.field_profile;
        H.add_term(F, [prof](double t) { return cplx(prof(t)); }, "field");
      } else if (sp.h0 != 0.0) {
        H.add_static(F * cplx(sp.h0));
      }
      break;
    }
    case EffectiveKind::MODULATED_ISING: {
      square(sp.J, "J");
      const Pauli ax[3] = {Pauli::X, Pauli::Y, Pauli::Z};
      DriveSpec d = sp.drive;
      auto phase = sp.phi_s_profile;
      const double ps0 = sp.phi_s;
      auto coeffs = [d, phase, ps0](double t) {
        DriveSpec dd = d;
        dd.set_phases(phase ? phase(t) : ps0, d.phi_m());
        return driven_pauli_exact(t, dd);
      };
      for (int a = 0; a < 3; ++a)
        for (int b = a; b < 3; ++b) {
          PauliSum p(N);
          for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
              if (sp.J(i, j) == 0.0) continue;
              p.add_pair(sp.J(i, j), i, ax[a], j, ax[b]);
              if (a != b) p.add_pair(sp.J(i, j), i, ax[b], j, ax[a]);
            }
          H.add_term(p.to_sparse(), [coeffs, a, b](double t) {
            auto c = coeffs(t);
            return cplx(c[a] * c[b]);
          });
        }
      H.max_frequency = 4.0 * d.h0 + 2.0 * d.Delta;
      break;
    }
    case EffectiveKind::LRHM_XXZ: {
      square(sp.J, "J");
      H.add_static(heisenberg_pauli_sum(sp.J, sp.anisotropy).to_sparse());
      break;
    }
  }
  return H;
}

MatC carrier_frame(double t, const DriveSpec& d, int N) {
  const double th = carrier_angle(t, d);
  MatC u = std::cos(th) * MatC::Identity(2, 2) + I * std::sin(th) * MatC(pauli_matrix(Pauli::X));
  MatC U = MatC::Identity(1, 1);
  for (int i = 0; i < N; ++i) U = kron(U, u);
  return U;
}

FrameUnitaries frame_unitaries(double t, const DriveSpec& d, const NormalModeData& modes, const SpinPhononSpace& s,
                               double omega0) {
  FrameUnitaries f;
  f.Uhat = carrier_frame(t, d, s.n_spins);
  f.U0_diag.resize(s.dim());
  const Eigen::Index pd = s.phonon_dim();
  for (Eigen::Index sidx = 0; sidx < s.spin_dim(); ++sidx) {
    double ez = 0.0;
    for (int i = 0; i < s.n_spins; ++i) ez += ((sidx >> (s.n_spins - 1 - i)) & 1) ? -0.5 : 0.5;
    ez *= omega0;
    for (Eigen::Index p = 0; p < pd; ++p) {
      auto dig = s.fock_digits(p);
      double e = ez;
      for (int n = 0; n < s.n_modes(); ++n) e += modes.frequencies(n) * dig[n];
      f.U0_diag(sidx * pd + p) = std::exp(-I * e * t);
    }
  }
  return f;
}

VecC diagonal_phases(const SpC& H, double t) {
  VecC v(H.rows());
  VecC dg = H.diagonal();
  for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = std::exp(-I * std::real(dg(k)) * t);
  return v;
}

}  // namespace tiqs
