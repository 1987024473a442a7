/*
   Copyright 2026 tracedyn developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include "ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "errors.hpp"

namespace td {

// ---------------------------------------------------------------------------
// Flat-measure coordinate chart

int phase_space_dim(int dim, int dofs) { return 2 * dim * dim * dofs; }

namespace {

// per Hermitian matrix: diag (N) then upper triangle (re, im) row-major
void matrix_to_coords(const ComplexMatrix& m, std::vector<double>& out) {
    const int n = static_cast<int>(m.rows());
    for (int i = 0; i < n; ++i) out.push_back(m(i, i).real());
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            out.push_back(m(i, j).real());
            out.push_back(m(i, j).imag());
        }
}

ComplexMatrix coords_to_matrix(const double*& x, int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = Complex(*x++, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double re = *x++;
            double im = *x++;
            m(i, j) = Complex(re, im);
            m(j, i) = Complex(re, -im);
        }
    return m;
}

}  // namespace

std::vector<double> flatten_state(const PhaseSpaceState& state) {
    std::vector<double> x;
    for (std::size_t i = 0; i < state.q.size(); ++i) {
        matrix_to_coords(state.q[i].complex_data(), x);
        matrix_to_coords(state.p[i].complex_data(), x);
    }
    return x;
}

PhaseSpaceState unflatten_state(const std::vector<double>& x, int dim,
                                int dofs) {
    if (static_cast<int>(x.size()) != phase_space_dim(dim, dofs))
        throw_config("coordinate vector has wrong length");
    PhaseSpaceState s;
    const double* ptr = x.data();
    for (int r = 0; r < dofs; ++r) {
        s.q.push_back(OperatorMatrix::from_complex(coords_to_matrix(ptr, dim)));
        s.p.push_back(OperatorMatrix::from_complex(coords_to_matrix(ptr, dim)));
    }
    return s;
}

ComplexMatrix default_lambda_tilde(int dim, double lambda) {
    ComplexMatrix l = ComplexMatrix::Zero(dim, dim);
    int half = dim / 2;
    for (int i = 0; i < half; ++i) l(i, i) = Complex(0.0, lambda);
    for (int i = dim - half; i < dim; ++i) l(i, i) = Complex(0.0, -lambda);
    return l;
}

// ---------------------------------------------------------------------------
// Sampler

namespace {

struct WeightEval {
    double exponent;
    double trH;
    ComplexMatrix ctilde;
};

class WeightFunction {
public:
    WeightFunction(const ModelSpec& model, const EnsembleParams& params)
        : model_(model), params_(params) {}

    WeightEval operator()(const std::vector<double>& x) const {
        PhaseSpaceState s = unflatten_state(x, model_.dim, model_.dof_count());
        Binding b = model_.bind_state(s);
        Complex trH = evaluate_scalar(model_.hamiltonian, b);
        OperatorMatrix c = compute_tildeC(s, *model_.symbols);
        Complex src = (params_.lambda_tilde * c.complex_data()).trace();
        Complex total = params_.tau * trH + src;
        if (std::abs(total.imag()) >
            1e-9 * (1.0 + std::abs(total.real())))
            throw_numerical("Boltzmann exponent is not real (Im = " +
                            std::to_string(total.imag()) + ")");
        return WeightEval{total.real(), trH.real(), c.complex_data()};
    }

private:
    const ModelSpec& model_;
    const EnsembleParams& params_;
};

void validate_params(const ModelSpec& model, const EnsembleParams& params) {
    if (params.tau <= 0) throw_config("tau must be positive");
    if (params.chains < 1) throw_config("chains must be >= 1");
    if (params.steps_per_chain < 20)
        throw_config("steps_per_chain must be >= 20 (batch means)");
    if (params.burn_in < 0) throw_config("burn_in must be >= 0");
    if (params.proposal_scale <= 0) throw_config("proposal_scale must be > 0");
    if (params.lambda_tilde.rows() != model.dim ||
        params.lambda_tilde.cols() != model.dim)
        throw_config("lambda_tilde dimension does not match the model");
    double ah = (params.lambda_tilde +
                 params.lambda_tilde.adjoint()).cwiseAbs().maxCoeff();
    if (ah > 1e-12)
        throw_config("lambda_tilde must be anti-Hermitian (deviation " +
                     std::to_string(ah) + ")");
    for (int id = 0; id < model.symbols->size(); ++id)
        if (model.symbols->info(id).grading == Grading::Odd)
            throw_config("fermionic ensemble terms are not supported "
                         "(Berezin integration out of scope)");
}

int max_qp_degree(const TracePolynomial& poly) {
    int deg = 0;
    for (const auto& w : poly.words()) {
        int d = 0;
        for (int id : w.letters) {
            SymbolKind k = poly.symbols()->info(id).kind;
            if (k == SymbolKind::Coordinate || k == SymbolKind::Momentum) ++d;
        }
        deg = std::max(deg, d);
    }
    return deg;
}

// Exact quadratic form of a function that is exactly quadratic with no
// linear part: A_ij = f(e_i+e_j) - f(e_i) - f(e_j), A_ii = 2 f(e_i).
Eigen::MatrixXd quadratic_form(const std::function<double(const std::vector<double>&)>& f,
                               int n) {
    Eigen::MatrixXd a(n, n);
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    std::vector<double> fi(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        x[static_cast<std::size_t>(i)] = 1.0;
        fi[static_cast<std::size_t>(i)] = f(x);
        x[static_cast<std::size_t>(i)] = 0.0;
        a(i, i) = 2.0 * fi[static_cast<std::size_t>(i)];
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            x[static_cast<std::size_t>(i)] = 1.0;
            x[static_cast<std::size_t>(j)] = 1.0;
            double fij = f(x);
            x[static_cast<std::size_t>(i)] = 0.0;
            x[static_cast<std::size_t>(j)] = 0.0;
            a(i, j) = a(j, i) =
                fij - fi[static_cast<std::size_t>(i)] - fi[static_cast<std::size_t>(j)];
        }
    return a;
}

void check_bounded_below(const ModelSpec& model, const EnsembleParams& params,
                         const WeightFunction& weight) {
    const int n = phase_space_dim(model.dim, model.dof_count());
    int deg = max_qp_degree(model.hamiltonian);
    if (deg <= 2) {
        Eigen::MatrixXd a =
            quadratic_form([&](const std::vector<double>& x) {
                return weight(x).exponent;
            }, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
        double mineig = es.eigenvalues().minCoeff();
        if (mineig <= 0)
            throw_numerical(
                "ensemble weight exponent is unbounded below: quadratic form "
                "has minimum eigenvalue " + std::to_string(mineig));
        return;
    }
    // Non-quadratic H: probe the split parts. The potential (q-only words)
    // and kinetic (p-only words) must stay nonnegative on random scaled
    // configurations; anything else is refused.
    Rng rng(0x5eedf00dull);
    for (double scale : {0.3, 1.0, 3.0, 10.0, 30.0}) {
        for (int trial = 0; trial < 40; ++trial) {
            PhaseSpaceState s;
            for (int r = 0; r < model.dof_count(); ++r) {
                s.q.push_back(OperatorMatrix::random_hermitian(
                    model.dim, rng.next_u64(), scale));
                s.p.push_back(OperatorMatrix::zero(model.dim));
            }
            Binding b = model.bind_state(s);
            double v = evaluate_scalar(model.hamiltonian, b).real();
            if (v < -1e-9 * std::pow(scale, 2))
                throw_numerical(
                    "ensemble weight exponent looks unbounded below: potential "
                    "reaches " + std::to_string(v) + " at scale " +
                    std::to_string(scale));
            for (auto& qm : s.q) qm = OperatorMatrix::zero(model.dim);
            for (int r = 0; r < model.dof_count(); ++r)
                s.p[static_cast<std::size_t>(r)] = OperatorMatrix::random_hermitian(
                    model.dim, rng.next_u64(), scale);
            b = model.bind_state(s);
            double t = evaluate_scalar(model.hamiltonian, b).real();
            if (t < -1e-9 * std::pow(scale, 2))
                throw_numerical(
                    "ensemble weight exponent looks unbounded below: kinetic "
                    "part reaches " + std::to_string(t));
        }
    }
    (void)params;
}

struct ChainAccum {
    double sum_trH = 0.0, sumsq_trH = 0.0;
    ComplexMatrix sumC;
    std::vector<double> batch_trH;           // one value per finished batch
    std::vector<ComplexMatrix> batch_C;
    double acceptance = 0.0;
    std::vector<double> trace;
};

void run_chain(const ModelSpec& model, const EnsembleParams& params,
               const WeightFunction& weight, int chain_index, long batch_len,
               ChainAccum& out) {
    const int n = phase_space_dim(model.dim, model.dof_count());
    Rng rng = Rng::stream(params.seed, static_cast<std::uint64_t>(chain_index));

    std::vector<double> x(static_cast<std::size_t>(n));
    for (auto& xi : x) xi = params.proposal_scale * rng.normal();
    WeightEval cur = weight(x);

    const long nbatches = 20;
    const long keep = nbatches * batch_len;
    long accepted = 0;
    out.sumC = ComplexMatrix::Zero(model.dim, model.dim);
    ComplexMatrix batch_sumC = ComplexMatrix::Zero(model.dim, model.dim);
    double batch_sum_trH = 0.0;
    if (params.keep_trh_trace) out.trace.reserve(static_cast<std::size_t>(keep));

    std::vector<double> prop(static_cast<std::size_t>(n));
    for (long step = 0; step < params.burn_in + keep; ++step) {
        for (int i = 0; i < n; ++i)
            prop[static_cast<std::size_t>(i)] =
                x[static_cast<std::size_t>(i)] + params.proposal_scale * rng.normal();
        WeightEval next = weight(prop);
        double log_ratio = cur.exponent - next.exponent;
        if (log_ratio >= 0.0 || rng.uniform() < std::exp(log_ratio)) {
            x = prop;
            cur = next;
            ++accepted;
        }
        if (step < params.burn_in) continue;

        out.sum_trH += cur.trH;
        out.sumsq_trH += cur.trH * cur.trH;
        out.sumC += cur.ctilde;
        batch_sum_trH += cur.trH;
        batch_sumC += cur.ctilde;
        if (params.keep_trh_trace) out.trace.push_back(cur.trH);
        if ((step - params.burn_in + 1) % batch_len == 0) {
            out.batch_trH.push_back(batch_sum_trH / static_cast<double>(batch_len));
            out.batch_C.push_back(batch_sumC / static_cast<double>(batch_len));
            batch_sum_trH = 0.0;
            batch_sumC.setZero();
        }
    }
    out.acceptance = static_cast<double>(accepted) /
                     static_cast<double>(params.burn_in + keep);
}

}  // namespace

double EnsembleResult::stderr_abs(int row, int col) const {
    return std::sqrt(stderr_re(row, col) * stderr_re(row, col) +
                     stderr_im(row, col) * stderr_im(row, col));
}

EnsembleResult metropolis_chain(const ModelSpec& model,
                                const EnsembleParams& params) {
    validate_params(model, params);
    WeightFunction weight(model, params);
    check_bounded_below(model, params, weight);

    const long batch_len = params.steps_per_chain / 20;
    std::vector<ChainAccum> accums(static_cast<std::size_t>(params.chains));

    int workers = std::max(1, std::min(params.threads, params.chains));
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    auto work = [&]() {
        for (;;) {
            int c = next.fetch_add(1);
            if (c >= params.chains) return;
            run_chain(model, params, weight, c, batch_len,
                      accums[static_cast<std::size_t>(c)]);
        }
    };
    if (workers == 1) {
        work();
    } else {
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    EnsembleResult res;
    const long keep = batch_len * 20;
    res.total_samples = keep * params.chains;
    res.avgC = ComplexMatrix::Zero(model.dim, model.dim);
    double sum_trH = 0.0, sumsq_trH = 0.0;
    std::vector<double> all_batch_trH;
    std::vector<ComplexMatrix> all_batch_C;
    for (const auto& a : accums) {
        sum_trH += a.sum_trH;
        sumsq_trH += a.sumsq_trH;
        res.avgC += a.sumC;
        all_batch_trH.insert(all_batch_trH.end(), a.batch_trH.begin(),
                             a.batch_trH.end());
        all_batch_C.insert(all_batch_C.end(), a.batch_C.begin(), a.batch_C.end());
        res.chain_acceptance.push_back(a.acceptance);
        res.acceptance_rate += a.acceptance / params.chains;
        if (params.keep_trh_trace)
            res.trh_trace.insert(res.trh_trace.end(), a.trace.begin(),
                                 a.trace.end());
    }
    const double nt = static_cast<double>(res.total_samples);
    res.mean_trH = sum_trH / nt;
    res.avgC /= nt;

    const std::size_t nb = all_batch_trH.size();
    double var_bm = 0.0;
    for (double b : all_batch_trH) {
        double d = b - res.mean_trH;
        var_bm += d * d;
    }
    var_bm /= (static_cast<double>(nb) - 1.0);
    res.stderr_trH = std::sqrt(var_bm / static_cast<double>(nb));

    res.stderr_re = Eigen::MatrixXd::Zero(model.dim, model.dim);
    res.stderr_im = Eigen::MatrixXd::Zero(model.dim, model.dim);
    for (int i = 0; i < model.dim; ++i)
        for (int j = 0; j < model.dim; ++j) {
            double vre = 0.0, vim = 0.0;
            for (const auto& bC : all_batch_C) {
                double dre = bC(i, j).real() - res.avgC(i, j).real();
                double dim_ = bC(i, j).imag() - res.avgC(i, j).imag();
                vre += dre * dre;
                vim += dim_ * dim_;
            }
            vre /= (static_cast<double>(nb) - 1.0);
            vim /= (static_cast<double>(nb) - 1.0);
            res.stderr_re(i, j) = std::sqrt(vre / static_cast<double>(nb));
            res.stderr_im(i, j) = std::sqrt(vim / static_cast<double>(nb));
        }

    double var_sample = sumsq_trH / nt - res.mean_trH * res.mean_trH;
    if (var_bm > 0 && var_sample > 0)
        res.ess_trH = std::clamp(
            nt * var_sample / (static_cast<double>(batch_len) * var_bm), 1.0, nt);
    else
        res.ess_trH = nt;

    if (res.acceptance_rate < 0.1 || res.acceptance_rate > 0.9)
        res.warnings.push_back(
            "acceptance rate " + std::to_string(res.acceptance_rate) +
            " outside [0.1, 0.9]; tune proposal_scale");
    return res;
}

// ---------------------------------------------------------------------------
// i_eff extraction

IeffDecomposition extract_ieff(const ComplexMatrix& avgC, double asym_tol) {
    const int n = static_cast<int>(avgC.rows());
    if (avgC.cols() != n) throw_config("avgC must be square");
    ComplexMatrix sym = avgC + avgC.adjoint();
    double max_asym = sym.cwiseAbs().maxCoeff();
    if (max_asym > asym_tol)
        throw_invariant("avgC asymmetry " + std::to_string(max_asym) +
                        " exceeds the allowed " + std::to_string(asym_tol));
    ComplexMatrix a = (avgC - avgC.adjoint()) / 2.0;  // anti-Hermitian part

    ComplexMatrix herm = Complex(0.0, -1.0) * a;  // Hermitian
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
    if (es.info() != Eigen::Success)
        throw_numerical("eigendecomposition failed in extract_ieff");
    Eigen::VectorXd mu = es.eigenvalues();
    ComplexMatrix u = es.eigenvectors();

    double dnorm = mu.cwiseAbs().maxCoeff();
    double cutoff = 1e-8 * dnorm;

    IeffDecomposition out;
    out.d_eigenvalues = mu.cwiseAbs();
    Eigen::VectorXd dvals = mu.cwiseAbs();
    Eigen::VectorXcd signs(n);
    double kept_sum = 0.0, kept_min = 0.0, kept_max = 0.0;
    int kept = 0;
    for (int i = 0; i < n; ++i) {
        if (dvals(i) > cutoff) {
            signs(i) = Complex(0.0, mu(i) > 0 ? 1.0 : -1.0);
            (mu(i) > 0 ? out.plus_count : out.minus_count)++;
            kept_sum += dvals(i);
            kept_min = (kept == 0) ? dvals(i) : std::min(kept_min, dvals(i));
            kept_max = std::max(kept_max, dvals(i));
            ++kept;
        } else {
            signs(i) = Complex(0.0, 0.0);
            ++out.defect;
        }
    }
    out.D = u * dvals.cast<Complex>().asDiagonal() * u.adjoint();
    out.i_eff = u * signs.asDiagonal() * u.adjoint();
    out.residual = (a - out.i_eff * out.D).norm();
    if (kept > 0) {
        out.hbar_estimate = kept_sum / kept;
        out.d_spread = (kept_max - kept_min) / out.hbar_estimate;
    }

    // structure diagnostics on the kept subspace
    Eigen::VectorXcd proj(n);
    for (int i = 0; i < n; ++i)
        proj(i) = (dvals(i) > cutoff) ? Complex(1.0) : Complex(0.0);
    ComplexMatrix p_kept = u * proj.asDiagonal() * u.adjoint();
    out.ieff_sq_dev = (out.i_eff * out.i_eff + p_kept).norm();
    out.anti_adjoint_dev = (out.i_eff.adjoint() + out.i_eff).norm();
    out.commute_dev = (out.i_eff * out.D - out.D * out.i_eff).norm();
    out.trace_abs = std::abs(out.i_eff.trace());
    return out;
}

// ---------------------------------------------------------------------------
// Liouville checks

namespace {

JacobianReport jacobian_of_map(
    const std::function<std::vector<double>(const std::vector<double>&)>& map,
    const std::vector<double>& at, double h) {
    const int n = static_cast<int>(at.size());
    Eigen::MatrixXd jac(n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<double> xp = at, xm = at;
        double hi = h * (1.0 + std::abs(at[static_cast<std::size_t>(i)]));
        xp[static_cast<std::size_t>(i)] += hi;
        xm[static_cast<std::size_t>(i)] -= hi;
        std::vector<double> fp = map(xp);
        std::vector<double> fm = map(xm);
        for (int j = 0; j < n; ++j)
            jac(j, i) = (fp[static_cast<std::size_t>(j)] -
                         fm[static_cast<std::size_t>(j)]) /
                        (2.0 * hi);
    }
    JacobianReport rep;
    rep.dim = n;
    rep.det = jac.partialPivLu().determinant();
    rep.deviation = std::abs(rep.det - 1.0);
    return rep;
}

void check_desk_scale(const ModelSpec& model) {
    if (model.dim > 3)
        throw_config("volume-preservation check is limited to N <= 3 "
                     "(Jacobian dimension would be " +
                     std::to_string(phase_space_dim(model.dim,
                                                    model.dof_count())) + ")");
}

void check_hermitian_chart(const PhaseSpaceState& s) {
    for (const auto& m : s.q)
        if (!m.is_hermitian(1e-9 * (1.0 + m.frobenius_norm())))
            throw_numerical("transformation left the Hermitian chart (q)");
    for (const auto& m : s.p)
        if (!m.is_hermitian(1e-9 * (1.0 + m.frobenius_norm())))
            throw_numerical("transformation left the Hermitian chart (p)");
}

}  // namespace

JacobianReport leapfrog_jacobian(const ModelSpec& model,
                                 const PhaseSpaceState& at, double dt,
                                 double h) {
    check_desk_scale(model);
    auto map = [&](const std::vector<double>& x) {
        PhaseSpaceState s = unflatten_state(x, model.dim, model.dof_count());
        PhaseSpaceState out = step_leapfrog(s, model, dt);
        check_hermitian_chart(out);
        return flatten_state(out);
    };
    return jacobian_of_map(map, flatten_state(at), h);
}

JacobianReport rk4_jacobian(const ModelSpec& model, const PhaseSpaceState& at,
                            double dt, double h) {
    check_desk_scale(model);
    auto map = [&](const std::vector<double>& x) {
        PhaseSpaceState s = unflatten_state(x, model.dim, model.dof_count());
        PhaseSpaceState out = step_rk4(s, model, dt);
        check_hermitian_chart(out);
        return flatten_state(out);
    };
    return jacobian_of_map(map, flatten_state(at), h);
}

JacobianReport generator_step_jacobian(const ModelSpec& model,
                                       const TracePolynomial& generator,
                                       const PhaseSpaceState& at, double dt,
                                       double h) {
    check_desk_scale(model);
    std::vector<OperatorPolynomial> dG_dq, dG_dp;
    for (int i = 0; i < model.dof_count(); ++i) {
        dG_dq.push_back(cyclic_derivative(generator,
                                          model.q_ids[static_cast<std::size_t>(i)]));
        dG_dp.push_back(cyclic_derivative(generator,
                                          model.p_ids[static_cast<std::size_t>(i)]));
    }
    auto map = [&](const std::vector<double>& x) {
        PhaseSpaceState s = unflatten_state(x, model.dim, model.dof_count());
        Binding b = model.bind_state(s);
        PhaseSpaceState out = s;
        for (int i = 0; i < model.dof_count(); ++i) {
            out.q[static_cast<std::size_t>(i)] =
                s.q[static_cast<std::size_t>(i)] +
                evaluate_operator(dG_dp[static_cast<std::size_t>(i)], b, model.dim) *
                    Complex(dt);
            out.p[static_cast<std::size_t>(i)] =
                s.p[static_cast<std::size_t>(i)] -
                evaluate_operator(dG_dq[static_cast<std::size_t>(i)], b, model.dim) *
                    Complex(dt);
        }
        check_hermitian_chart(out);
        return flatten_state(out);
    };
    return jacobian_of_map(map, flatten_state(at), h);
}

}  // namespace td
