#include "cavicool/observables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavicool/errors.hpp"
#include "cavicool/hamiltonian.hpp"
#include "cavicool/lindblad.hpp"

namespace cavicool {

complexd expect_local(const QuantumState& state, const SpaceLayout& layout,
                      const std::vector<LocalFactor>& factors) {
  const std::size_t dim = layout.total_dim();
  if (state.rho.rows() != static_cast<Eigen::Index>(dim)) {
    throw validation_error("state dimension does not match the space layout");
  }
  if (factors.empty()) return state.rho.trace();
  constexpr std::size_t kMaxFactors = 8;
  if (factors.size() > kMaxFactors) {
    throw validation_error("expect_local supports at most 8 local factors");
  }
  const std::size_t k = factors.size();
  std::array<std::size_t, kMaxFactors> sub{}, fdim{}, fstride{};
  for (std::size_t t = 0; t < k; ++t) {
    const std::size_t s = factors[t].subsystem;
    if (s >= layout.n_subsystems()) {
      throw validation_error("expect_local: subsystem index out of range");
    }
    for (std::size_t u = 0; u < t; ++u) {
      if (sub[u] == s) {
        throw validation_error("expect_local: repeated subsystem in factor list");
      }
    }
    sub[t] = s;
    fdim[t] = layout.subsystem_dim(s);
    fstride[t] = layout.stride(s);
    if (factors[t].op.rows() != static_cast<Eigen::Index>(fdim[t]) ||
        factors[t].op.cols() != factors[t].op.rows()) {
      throw validation_error("expect_local: factor dimension mismatch");
    }
  }

  complexd sum(0.0, 0.0);
  std::array<std::size_t, kMaxFactors> dr{}, e{};
  for (std::size_t r = 0; r < dim; ++r) {
    std::size_t base = r;
    for (std::size_t t = 0; t < k; ++t) {
      dr[t] = layout.digit(r, sub[t]);
      base -= dr[t] * fstride[t];
    }
    e.fill(0);
    while (true) {
      std::size_t s = base;
      complexd w(1.0, 0.0);
      for (std::size_t t = 0; t < k; ++t) {
        s += e[t] * fstride[t];
        w *= factors[t].op(static_cast<Eigen::Index>(e[t]),
                           static_cast<Eigen::Index>(dr[t]));
      }
      sum += state.rho(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(s)) * w;
      std::size_t t = 0;
      while (t < k && ++e[t] == fdim[t]) e[t++] = 0;
      if (t == k) break;
    }
  }
  return sum;
}

namespace {

struct LocalOps {
  MatrixXcd b_ops[4];      // phonon-space basis operators, index 0 unused
  MatrixXcd sigma_ops[4];  // atom-space basis operators
  MatrixXcd c_ops[4];      // cavity-space basis operators
  MatrixXcd b_annihilate, b_create;
  MatrixXcd u_232_local;   // B2 B3 B2 on one mode
  MatrixXcd b2_squared;

  explicit LocalOps(const SpaceLayout& layout) {
    const std::size_t n_b = layout.phonon_cutoff();
    const std::size_t n_c = layout.cavity_cutoff();
    for (std::size_t w = 1; w <= 3; ++w) {
      b_ops[w] = basis_op(n_b, w);
      sigma_ops[w] = basis_op(2, w);
      c_ops[w] = basis_op(n_c, w);
    }
    b_annihilate = annihilation_truncated(n_b);
    b_create = b_annihilate.adjoint();
    u_232_local = b_ops[2] * b_ops[3] * b_ops[2];
    b2_squared = b_ops[2] * b_ops[2];
  }
};

// Accumulates the real value of a nominally real expectation, remembering the
// largest imaginary leak.
struct RealTaker {
  double residue = 0.0;
  double operator()(complexd v) {
    residue = std::max(residue, std::abs(v.imag()));
    return v.real();
  }
};

}  // namespace

double mean_phonon(const QuantumState& state, const SpaceLayout& layout) {
  const std::size_t n = layout.n_atoms();
  const MatrixXcd number = basis_op(layout.phonon_cutoff(), 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += expect_local(state, layout, {{layout.phonon_subsystem(i), number}}).real();
  }
  return sum / double(n);
}

double phonon_coherence(const QuantumState& state, const SpaceLayout& layout,
                        double* imag_residue) {
  const std::size_t n = layout.n_atoms();
  if (n < 2) {
    if (imag_residue) *imag_residue = 0.0;
    return 0.0;
  }
  const MatrixXcd lower = annihilation_truncated(layout.phonon_cutoff());
  const MatrixXcd raise = lower.adjoint();
  complexd sum(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      sum += expect_local(state, layout,
                          {{layout.phonon_subsystem(i), raise},
                           {layout.phonon_subsystem(j), lower}});
    }
  }
  sum /= double(n) * double(n - 1);
  if (imag_residue) *imag_residue = std::abs(sum.imag());
  return sum.real();
}

CoherenceCheck position_coherence_check(const QuantumState& state,
                                        const SpaceLayout& layout,
                                        const ModelParams& p) {
  CoherenceCheck out;
  out.zeta = phonon_coherence(state, layout);
  const std::size_t n = layout.n_atoms();
  const MatrixXcd b2 = basis_op(layout.phonon_cutoff(), 2);
  double mean_b2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_b2 += expect_local(state, layout, {{layout.phonon_subsystem(i), b2}}).real();
  }
  mean_b2 /= double(n);
  const double x_mean = mean_b2 / std::sqrt(2.0 * p.nu);
  out.position_estimate = 0.5 * p.nu * x_mean * x_mean;
  return out;
}

ExpectationBundle extract_bundle(const QuantumState& state, const SpaceLayout& layout) {
  const std::size_t n = layout.n_atoms();
  const LocalOps ops(layout);
  ExpectationBundle bundle;
  RealTaker real_of;

  bundle.m = mean_phonon(state, layout);
  double zeta_residue = 0.0;
  bundle.zeta = phonon_coherence(state, layout, &zeta_residue);
  real_of.residue = std::max(real_of.residue, zeta_residue);

  for (std::size_t a = 1; a <= 3; ++a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += real_of(expect_local(state, layout,
                                  {{layout.atom_subsystem(i), ops.sigma_ops[a]}}));
    }
    bundle.s[a - 1] = sum / double(n);
  }

  for (std::size_t a = 2; a <= 3; ++a) {
    for (std::size_t b = 0; b <= 3; ++b) {
      for (std::size_t c = 2; c <= 3; ++c) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<LocalFactor> f = {
              {layout.phonon_subsystem(i), ops.b_ops[a]},
              {layout.cavity_subsystem(), ops.c_ops[c]}};
          if (b != 0) f.push_back({layout.atom_subsystem(i), ops.sigma_ops[b]});
          sum += real_of(expect_local(state, layout, f));
        }
        bundle.x[x_index(a, b, c)] = sum / double(n);
      }
    }
  }

  if (n >= 2) {
    const double pairs = double(n) * double(n - 1);
    for (std::size_t a = 2; a <= 3; ++a) {
      for (std::size_t b = 0; b <= 3; ++b) {
        for (std::size_t c = 2; c <= 3; ++c) {
          double sum = 0.0;
          for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
              if (j == i) continue;
              std::vector<LocalFactor> f = {
                  {layout.phonon_subsystem(i), ops.b_ops[a]},
                  {layout.cavity_subsystem(), ops.c_ops[c]}};
              if (b != 0) f.push_back({layout.atom_subsystem(j), ops.sigma_ops[b]});
              sum += real_of(expect_local(state, layout, f));
            }
          }
          bundle.x_tilde[x_index(a, b, c)] = sum / pairs;
        }
      }
    }
    for (std::size_t a = 2; a <= 3; ++a) {
      for (std::size_t b = 2; b <= 3; ++b) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            sum += real_of(expect_local(state, layout,
                                        {{layout.phonon_subsystem(i), ops.b_ops[a]},
                                         {layout.phonon_subsystem(j), ops.b_ops[b]}}));
          }
        }
        bundle.y_tilde[y_index(a, b)] = sum / pairs;
      }
    }
    for (std::size_t a = 2; a <= 3; ++a) {
      for (std::size_t b = 2; b <= 3; ++b) {
        for (std::size_t c = 0; c <= 3; ++c) {
          for (std::size_t d = 0; d <= 3; ++d) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
              for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                std::vector<LocalFactor> f = {
                    {layout.phonon_subsystem(i), ops.b_ops[a]},
                    {layout.phonon_subsystem(j), ops.b_ops[b]}};
                if (c != 0) f.push_back({layout.atom_subsystem(i), ops.sigma_ops[c]});
                if (d != 0) f.push_back({layout.atom_subsystem(j), ops.sigma_ops[d]});
                sum += real_of(expect_local(state, layout, f));
              }
            }
            bundle.z_tilde[z_index(a, b, c, d)] = sum / pairs;
          }
        }
      }
    }
    double ut_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        ut_sum += real_of(expect_local(state, layout,
                                       {{layout.phonon_subsystem(i), ops.b2_squared},
                                        {layout.phonon_subsystem(j), ops.b_ops[3]}}));
      }
    }
    bundle.u_tilde_223 = ut_sum / pairs;
  }

  {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += real_of(expect_local(state, layout,
                                  {{layout.phonon_subsystem(i), ops.u_232_local}}));
    }
    bundle.u_232 = sum / double(n);
  }

  if (n >= 3) {
    std::array<double, 64> z_hat{};
    const double triples = double(n) * double(n - 1) * double(n - 2);
    for (std::size_t a = 2; a <= 3; ++a) {
      for (std::size_t b = 2; b <= 3; ++b) {
        for (std::size_t c = 0; c <= 3; ++c) {
          for (std::size_t d = 0; d <= 3; ++d) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
              for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                for (std::size_t kk = 0; kk < n; ++kk) {
                  if (kk == i || kk == j) continue;
                  std::vector<LocalFactor> f = {
                      {layout.phonon_subsystem(i), ops.b_ops[a]},
                      {layout.phonon_subsystem(kk), ops.b_ops[b]}};
                  if (c != 0) f.push_back({layout.atom_subsystem(j), ops.sigma_ops[c]});
                  if (d != 0) f.push_back({layout.atom_subsystem(kk), ops.sigma_ops[d]});
                  sum += real_of(expect_local(state, layout, f));
                }
              }
            }
            z_hat[z_index(a, b, c, d)] = sum / triples;
          }
        }
      }
    }
    bundle.z_hat = z_hat;
  }

  bundle.max_imag_residue = real_of.residue;
  return bundle;
}

std::vector<std::string> bundle_column_names(bool with_z_hat) {
  std::vector<std::string> names = {"m", "zeta", "s_1", "s_2", "s_3"};
  const auto push_x = [&](const char* prefix) {
    for (std::size_t i = 0; i < 16; ++i) {
      std::ostringstream os;
      os << prefix << "_" << x_a(i) << x_b(i) << x_c(i);
      names.push_back(os.str());
    }
  };
  push_x("x");
  push_x("xt");
  for (std::size_t a = 2; a <= 3; ++a) {
    for (std::size_t b = 2; b <= 3; ++b) {
      std::ostringstream os;
      os << "yt_" << a << b;
      names.push_back(os.str());
    }
  }
  names.push_back("u_232");
  names.push_back("ut_223");
  const auto push_z = [&](const char* prefix) {
    for (std::size_t a = 2; a <= 3; ++a) {
      for (std::size_t b = 2; b <= 3; ++b) {
        for (std::size_t c = 0; c <= 3; ++c) {
          for (std::size_t d = 0; d <= 3; ++d) {
            std::ostringstream os;
            os << prefix << "_" << a << b << c << d;
            names.push_back(os.str());
          }
        }
      }
    }
  };
  push_z("zt");
  if (with_z_hat) push_z("zh");
  names.push_back("imag_residue");
  return names;
}

std::vector<double> bundle_row(const ExpectationBundle& bundle) {
  std::vector<double> row = {bundle.m, bundle.zeta, bundle.s[0], bundle.s[1], bundle.s[2]};
  row.insert(row.end(), bundle.x.begin(), bundle.x.end());
  row.insert(row.end(), bundle.x_tilde.begin(), bundle.x_tilde.end());
  row.insert(row.end(), bundle.y_tilde.begin(), bundle.y_tilde.end());
  row.push_back(bundle.u_232);
  row.push_back(bundle.u_tilde_223);
  row.insert(row.end(), bundle.z_tilde.begin(), bundle.z_tilde.end());
  if (bundle.z_hat) row.insert(row.end(), bundle.z_hat->begin(), bundle.z_hat->end());
  row.push_back(bundle.max_imag_residue);
  return row;
}

double ehrenfest_rate(const QuantumState& state, const MatrixXcd& op,
                      const ModelParams& p, const SpaceLayout& layout,
                      const MatrixXcd& h) {
  const MatrixXcd deriv = lindblad_rhs(state.rho, h, p, layout);
  return deriv.transpose().cwiseProduct(op).sum().real();
}

double ehrenfest_rate(const QuantumState& state, const MatrixXcd& op,
                      const ModelParams& p, const SpaceLayout& layout) {
  return ehrenfest_rate(state, op, p, layout, build_h_interaction(p, layout));
}

}  // namespace cavicool
