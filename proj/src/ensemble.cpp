#include "gsc/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "gsc/rng.hpp"

namespace gsc {

double effective_action(const FockBuilder& fb, const GaugeConfig& a, const GaugeCouplings& c, Engine engine) {
    double log_z = 0.0;
    if (engine == Engine::DenseReference) {
        log_z = log_partition(fb.dense_hamiltonian(a), c.beta);
    } else {
        const BlockedSpectra sp = diagonalize_blocked(fb.blocked_hamiltonian(a), /*eigenvalues_only=*/true);
        log_z = log_partition_blocked(sp, c.beta);
    }
    return c.beta * gauge_energy(a, c) - log_z;
}

namespace {

struct NodeEval {
    double action;
    std::vector<Complex> obs;  // fermionic thermal expectations at this configuration
};

NodeEval evaluate_node(const FockBuilder& fb, const GaugeConfig& a, const GaugeCouplings& c,
                       std::span<const SparseOp> observables, Engine engine) {
    NodeEval out;
    out.obs.resize(observables.size());
    if (engine == Engine::DenseReference) {
        const DenseOp h = fb.dense_hamiltonian(a);
        out.action = c.beta * gauge_energy(a, c) - log_partition(h, c.beta);
        for (std::size_t i = 0; i < observables.size(); ++i)
            out.obs[i] = thermal_expectation(observables[i], h, c.beta);
    } else {
        const BlockedSpectra sp = diagonalize_blocked(fb.blocked_hamiltonian(a), /*eigenvalues_only=*/false);
        out.action = c.beta * gauge_energy(a, c) - log_partition_blocked(sp, c.beta);
        for (std::size_t i = 0; i < observables.size(); ++i)
            out.obs[i] = thermal_expectation_blocked(observables[i], fb.sectors(), sp, c.beta);
    }
    return out;
}

std::vector<Complex> quadrature_pass(const Lattice& lat, const FockBuilder& fb, const GaugeCouplings& c,
                                     std::span<const SparseOp> observables, int order, Engine engine, Exec exec,
                                     std::uint64_t* evals) {
    const int nb = lat.num_bonds();
    std::uint64_t n_nodes = 1;
    for (int b = 0; b < nb; ++b) n_nodes *= static_cast<std::uint64_t>(order);
    *evals += n_nodes;

    std::vector<double> actions(n_nodes);
    std::vector<Complex> obs_values(n_nodes * observables.size());

    const auto eval_one = [&](std::uint64_t node) {
        GaugeConfig a(lat);
        std::uint64_t rest = node;
        for (int b = 0; b < nb; ++b) {
            const auto digit = static_cast<double>(rest % static_cast<std::uint64_t>(order));
            rest /= static_cast<std::uint64_t>(order);
            a.set(b, -M_PI + 2.0 * M_PI * digit / order);
        }
        const NodeEval ev = evaluate_node(fb, a, c, observables, engine);
        actions[node] = ev.action;
        for (std::size_t i = 0; i < observables.size(); ++i) obs_values[node * observables.size() + i] = ev.obs[i];
    };

    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (std::int64_t node = 0; node < static_cast<std::int64_t>(n_nodes); ++node)
            eval_one(static_cast<std::uint64_t>(node));
    } else {
        for (std::uint64_t node = 0; node < n_nodes; ++node) eval_one(node);
    }

    // fixed-order reduction with max-action shift
    double s_min = actions[0];
    for (std::uint64_t node = 1; node < n_nodes; ++node) s_min = std::min(s_min, actions[node]);
    double den = 0.0;
    std::vector<Complex> num(observables.size(), Complex{0.0, 0.0});
    for (std::uint64_t node = 0; node < n_nodes; ++node) {
        const double w = std::exp(-(actions[node] - s_min));
        den += w;
        for (std::size_t i = 0; i < observables.size(); ++i) num[i] += w * obs_values[node * observables.size() + i];
    }
    for (auto& v : num) v /= den;
    return num;
}

}  // namespace

ExactResult exact_expectation(const Lattice& lat, const FermionModel& model, const GaugeCouplings& c,
                              std::span<const SparseOp> observables, const ExactOptions& opt) {
    c.validate();
    if (lat.num_bonds() > 6)
        throw std::invalid_argument("exact_expectation: tensor quadrature is limited to <= 6 bonds");
    if (opt.order < 2) throw std::invalid_argument("exact_expectation: order must be >= 2");

    const FockBuilder fb(lat, model);
    ExactResult res;
    const std::vector<Complex> coarse =
        quadrature_pass(lat, fb, c, observables, opt.order, opt.engine, opt.exec, &res.evaluations);
    const std::vector<Complex> fine =
        quadrature_pass(lat, fb, c, observables, 2 * opt.order, opt.engine, opt.exec, &res.evaluations);

    res.values = fine;
    res.order = 2 * opt.order;
    for (std::size_t i = 0; i < observables.size(); ++i) {
        const double change = std::abs(fine[i] - coarse[i]);
        const double scale = std::max(std::abs(fine[i]), std::abs(coarse[i]));
        const double rel = change / std::max(scale, 1e-14);
        res.max_rel_change = std::max(res.max_rel_change, rel);
    }
    if (res.max_rel_change > opt.rel_tol)
        throw std::runtime_error("exact_expectation: quadrature not converged (relative change " +
                                 std::to_string(res.max_rel_change) + " at order " + std::to_string(res.order) + ")");
    return res;
}

void SamplerOptions::validate(int num_bonds) const {
    if (chains < 1) throw std::invalid_argument("run_mc: need at least one chain");
    if (sweeps < 1) throw std::invalid_argument("run_mc: sweeps must be >= 1");
    if (thermalization < 0) throw std::invalid_argument("run_mc: thermalization must be >= 0");
    if (!(delta > 0.0) || delta > M_PI) throw std::invalid_argument("run_mc: delta must be in (0, pi]");
    if (measure_every < 1) throw std::invalid_argument("run_mc: measure_every must be >= 1");
    if (num_bonds < 1) throw std::invalid_argument("run_mc: lattice has no bonds");
    if (!chain_seeds.empty() && static_cast<int>(chain_seeds.size()) != chains)
        throw std::invalid_argument("run_mc: chain_seeds must match the chain count");
}

namespace {

struct ChainResult {
    std::uint64_t seed = 0;
    int index = 0;
    std::uint64_t proposals = 0;
    std::uint64_t accepted = 0;
    // per observable: raw-sample moments and bin means
    std::vector<double> sum, sum_sq;
    std::vector<std::vector<double>> bin_means;  // [obs][bin]
    std::uint64_t samples = 0;
};

class ChainState {
  public:
    ChainState(const Lattice& lat, const FockBuilder& fb, const GaugeCouplings& c, const SamplerOptions& opt,
               std::uint64_t stream_seed)
        : lat_(lat), fb_(fb), c_(c), flux_frozen_(opt.flux_frozen), engine_(opt.engine),
          rng_(SplitMix64(mix64(stream_seed))), a_(lat), chi_(static_cast<std::size_t>(lat.num_sites()), 0.0),
          delta_(opt.delta) {
        action_ = effective_action(fb_, a_, c_, engine_);
    }

    int sites_or_bonds() const { return flux_frozen_ ? lat_.num_sites() : lat_.num_bonds(); }

    // One full sweep; returns number of accepted proposals.
    int sweep() {
        int accepted = 0;
        const int n = sites_or_bonds();
        for (int i = 0; i < n; ++i) {
            const double shift = rng_.uniform(-delta_, delta_);
            if (flux_frozen_) {
                const double old_chi = chi_[static_cast<std::size_t>(i)];
                chi_[static_cast<std::size_t>(i)] = wrap_angle(old_chi + shift);
                const GaugeConfig trial = pure_gauge(lat_, chi_);
                if (metropolis(trial)) {
                    ++accepted;
                } else {
                    chi_[static_cast<std::size_t>(i)] = old_chi;
                }
            } else {
                GaugeConfig trial = a_;
                trial.set(i, trial.at(i) + shift);
                if (metropolis(trial)) ++accepted;
            }
        }
        return accepted;
    }

    void tune(double rate) {
        if (rate > 0.44)
            delta_ = std::min(M_PI, delta_ * 1.12);
        else if (rate < 0.36)
            delta_ = std::max(1e-3, delta_ / 1.12);
    }

    std::vector<double> measure(std::span<const Observable> observables) {
        std::vector<double> vals(observables.size());
        if (engine_ == Engine::DenseReference) {
            const DenseOp h = fb_.dense_hamiltonian(a_);
            for (std::size_t i = 0; i < observables.size(); ++i) {
                const Complex v = thermal_expectation(observables[i].op, h, c_.beta);
                vals[i] = observables[i].imaginary_part ? v.imag() : v.real();
            }
        } else {
            const BlockedSpectra sp = diagonalize_blocked(fb_.blocked_hamiltonian(a_), /*eigenvalues_only=*/false);
            for (std::size_t i = 0; i < observables.size(); ++i) {
                const Complex v = thermal_expectation_blocked(observables[i].op, fb_.sectors(), sp, c_.beta);
                vals[i] = observables[i].imaginary_part ? v.imag() : v.real();
            }
        }
        return vals;
    }

  private:
    bool metropolis(const GaugeConfig& trial) {
        const double trial_action = effective_action(fb_, trial, c_, engine_);
        const double d = trial_action - action_;
        if (d <= 0.0 || rng_.uniform01() < std::exp(-d)) {
            a_ = trial;
            action_ = trial_action;
            return true;
        }
        return false;
    }

    const Lattice& lat_;
    const FockBuilder& fb_;
    GaugeCouplings c_;
    bool flux_frozen_;
    Engine engine_;
    SplitMix64 rng_;
    GaugeConfig a_;
    ScalarField chi_;
    double delta_;
    double action_ = 0.0;
};

ChainResult run_chain(const Lattice& lat, const FockBuilder& fb, const GaugeCouplings& c,
                      std::span<const Observable> observables, const SamplerOptions& opt, int chain_index,
                      std::uint64_t chain_seed) {
    ChainState st(lat, fb, c, opt, chain_seed);

    // thermalization with windowed delta tuning
    const int window = 20;
    int win_accepts = 0;
    for (int s = 0; s < opt.thermalization; ++s) {
        win_accepts += st.sweep();
        if (opt.tune_delta && (s + 1) % window == 0) {
            st.tune(static_cast<double>(win_accepts) / (static_cast<double>(window) * st.sites_or_bonds()));
            win_accepts = 0;
        }
    }

    ChainResult res;
    res.seed = chain_seed;
    res.index = chain_index;
    res.sum.assign(observables.size(), 0.0);
    res.sum_sq.assign(observables.size(), 0.0);

    std::vector<std::vector<double>> series(observables.size());
    for (int s = 0; s < opt.sweeps; ++s) {
        const int acc = st.sweep();
        res.accepted += static_cast<std::uint64_t>(acc);
        res.proposals += static_cast<std::uint64_t>(st.sites_or_bonds());
        if ((s + 1) % opt.measure_every == 0) {
            const std::vector<double> vals = st.measure(observables);
            for (std::size_t i = 0; i < vals.size(); ++i) {
                series[i].push_back(vals[i]);
                res.sum[i] += vals[i];
                res.sum_sq[i] += vals[i] * vals[i];
            }
            ++res.samples;
        }
    }

    // equal-length bins; a trailing remainder is dropped
    const std::uint64_t n = res.samples;
    const std::uint64_t n_bins = std::min<std::uint64_t>(32, n);
    const std::uint64_t bin_len = n / std::max<std::uint64_t>(1, n_bins);
    res.bin_means.assign(observables.size(), {});
    for (std::size_t i = 0; i < observables.size(); ++i) {
        for (std::uint64_t b = 0; b < n_bins; ++b) {
            double acc = 0.0;
            for (std::uint64_t j = 0; j < bin_len; ++j) acc += series[i][b * bin_len + j];
            res.bin_means[i].push_back(acc / static_cast<double>(bin_len));
        }
    }
    return res;
}

}  // namespace

std::vector<MCEstimate> run_mc(const Lattice& lat, const FermionModel& model, const GaugeCouplings& c,
                               std::span<const Observable> observables, const SamplerOptions& opt) {
    c.validate();
    opt.validate(lat.num_bonds());
    const FockBuilder fb(lat, model);

    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(opt.chains));
    for (int k = 0; k < opt.chains; ++k)
        seeds[static_cast<std::size_t>(k)] =
            opt.chain_seeds.empty() ? mix64(opt.seed ^ static_cast<std::uint64_t>(k + 1)) : opt.chain_seeds[static_cast<std::size_t>(k)];

    std::vector<ChainResult> chains(static_cast<std::size_t>(opt.chains));
    if (opt.exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (int k = 0; k < opt.chains; ++k)
            chains[static_cast<std::size_t>(k)] = run_chain(lat, fb, c, observables, opt, k, seeds[static_cast<std::size_t>(k)]);
    } else {
        for (int k = 0; k < opt.chains; ++k)
            chains[static_cast<std::size_t>(k)] = run_chain(lat, fb, c, observables, opt, k, seeds[static_cast<std::size_t>(k)]);
    }

    // chain order must not matter: pool in (seed, index) order
    std::vector<const ChainResult*> ordered;
    ordered.reserve(chains.size());
    for (const auto& ch : chains) ordered.push_back(&ch);
    std::sort(ordered.begin(), ordered.end(), [](const ChainResult* a, const ChainResult* b) {
        return a->seed != b->seed ? a->seed < b->seed : a->index < b->index;
    });

    std::vector<MCEstimate> out(observables.size());
    std::uint64_t proposals = 0, accepted = 0;
    for (const ChainResult* ch : ordered) {
        proposals += ch->proposals;
        accepted += ch->accepted;
    }

    for (std::size_t i = 0; i < observables.size(); ++i) {
        MCEstimate& est = out[i];
        est.name = observables[i].name + (observables[i].imaginary_part ? " (im)" : "");
        est.chains = opt.chains;
        est.seed = opt.seed;
        est.proposals = proposals;
        est.acceptance = proposals ? static_cast<double>(accepted) / static_cast<double>(proposals) : 0.0;
        est.low_acceptance_warning = est.acceptance < 0.01;

        std::vector<double> bins;
        double sum = 0.0, sum_sq = 0.0;
        std::uint64_t n_raw = 0;
        for (const ChainResult* ch : ordered) {
            bins.insert(bins.end(), ch->bin_means[i].begin(), ch->bin_means[i].end());
            sum += ch->sum[i];
            sum_sq += ch->sum_sq[i];
            n_raw += ch->samples;
        }
        const auto n_bins = static_cast<double>(bins.size());
        double mean = 0.0;
        for (double b : bins) mean += b;
        mean /= n_bins;
        est.mean = mean;

        // jackknife over bins
        if (bins.size() >= 2) {
            double jk = 0.0;
            for (double b : bins) {
                const double loo = (mean * n_bins - b) / (n_bins - 1.0);
                jk += (loo - mean) * (loo - mean);
            }
            est.stderror = std::sqrt(jk * (n_bins - 1.0) / n_bins);
        } else {
            est.stderror = std::numeric_limits<double>::infinity();
        }

        const double raw_mean = sum / static_cast<double>(n_raw);
        const double raw_var = sum_sq / static_cast<double>(n_raw) - raw_mean * raw_mean;
        double bin_var = 0.0;
        for (double b : bins) bin_var += (b - mean) * (b - mean);
        bin_var /= n_bins;
        const double bin_len = static_cast<double>(n_raw) / n_bins;
        est.tau_int = raw_var > 0.0 ? 0.5 * bin_len * bin_var / raw_var : 0.0;
    }
    return out;
}

}  // namespace gsc
