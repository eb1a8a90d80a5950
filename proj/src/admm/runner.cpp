#include "rswipt/admm/runner.hpp"

#include <chrono>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>
#include <thread>

#include "rswipt/admm/consensus.hpp"
#include "rswipt/error.hpp"
#include "rswipt/experiments/csv.hpp"

namespace rswipt::admm {

namespace {

template <class F>
void for_each_agent(std::vector<Agent>& agents, Executor ex, F&& f) {
  if (ex == Executor::Sequential || agents.size() < 2) {
    for (auto& a : agents) f(a);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(agents.size());
  for (std::size_t k = 0; k < agents.size(); ++k) {
    threads.emplace_back([&, k] {
      try {
        f(agents[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

bool same_bits(const Vector& a, const Vector& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), static_cast<std::size_t>(a.size()) * sizeof(double)) == 0;
}

void check_replicas(const std::vector<Agent>& agents) {
  const Agent& ref = agents.front();
  for (const auto& a : agents) {
    bool same = same_bits(a.public_vector(), ref.public_vector());
    for (std::size_t k = 0; k < a.duals().size() && same; ++k) same = same_bits(a.duals()[k], ref.duals()[k]);
    if (!same) throw std::logic_error("ADMM replicas diverged");
  }
}

}  // namespace

const char* to_string(AdmmStatus s) {
  switch (s) {
    case AdmmStatus::Converged: return "converged";
    case AdmmStatus::NotConverged: return "not_converged";
    case AdmmStatus::LocalFailure: return "local_failure";
  }
  return "?";
}

AdmmResult run_admm(const SystemParams& params, const ChannelSet& ch, const AdmmConfig& cfg,
                    std::optional<double> reference_power) {
  params.validate();
  if (params.K != ch.K() || params.N != ch.N()) throw ValidationError("run_admm: params and channels disagree on K/N");
  if (!(cfg.c > 0.0) || cfg.max_iter < 1) throw ValidationError("run_admm: need c > 0 and max_iter >= 1");
  const int K = ch.K();
  std::vector<Agent> agents;
  for (int i = 0; i < K; ++i) agents.emplace_back(i, params, local_view(ch, i), cfg.c, cfg.solver);

  BroadcastBus bus(K);
  AdmmResult res;
  const auto start = std::chrono::steady_clock::now();
  double prev_power = std::numeric_limits<double>::quiet_NaN();
  for (int q = 0; q < cfg.max_iter; ++q) {
    for_each_agent(agents, cfg.executor, [](Agent& a) { a.local_step(); });
    bool failed = false;
    for (const auto& a : agents) failed = failed || a.last().status != conic::SolveStatus::Optimal;
    if (failed) {
      res.status = AdmmStatus::LocalFailure;
      break;
    }
    const auto round = static_cast<std::uint64_t>(q);
    for_each_agent(agents, cfg.executor, [&](Agent& a) { bus.post(a.outgoing(round)); });
    const std::vector<Message> delivered = bus.deliver(round);
    const std::vector<Vector> old_betas = agents.front().duals();
    for_each_agent(agents, cfg.executor, [&](Agent& a) { a.absorb(delivered); });
    check_replicas(agents);

    IterationRecord rec;
    rec.q = q;
    for (const auto& a : agents) rec.power += a.last().power;
    rec.delta_power = reference_power ? std::abs(rec.power - *reference_power) / *reference_power
                                      : std::numeric_limits<double>::quiet_NaN();
    std::vector<Vector> local;
    for (const auto& m : delivered) local.push_back(m.values);
    rec.residual = consensus_residual(K, agents.front().public_vector(), local);
    for (int i = 0; i < K; ++i) {
      const Vector d = agents.front().duals()[i] - old_betas[i];
      rec.dual_change = std::max(rec.dual_change, d.cwiseAbs().maxCoeff());
    }
    rec.messages = bus.messages_sent();
    rec.bytes = bus.bytes_sent();
    if (cfg.record_timing) {
      rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    res.trace.push_back(rec);

    const bool settled = q > 0 && std::abs(rec.power - prev_power) / std::max(rec.power, 1e-12) <= cfg.tol_power;
    prev_power = rec.power;
    if (rec.residual <= cfg.tol_residual && settled) {
      res.status = AdmmStatus::Converged;
      break;
    }
  }
  for (const auto& a : agents) {
    res.W.push_back(a.last().W);
    res.rho.push_back(a.last().rho);
    res.objective += a.last().power;
  }
  res.t = agents.front().public_vector();
  res.betas = agents.front().duals();
  return res;
}

void write_trace_csv(std::ostream& os, const std::vector<IterationRecord>& trace) {
  os << "q,P,deltaP,residual,messages,millis\n";
  for (const auto& r : trace) {
    os << r.q << ',' << experiments::format_double(r.power) << ',' << experiments::format_double(r.delta_power) << ','
       << experiments::format_double(r.residual) << ',' << r.messages << ',' << experiments::format_double(r.millis)
       << '\n';
  }
}

int iterations_to(const std::vector<IterationRecord>& trace, double level) {
  int first = -1;
  for (const auto& r : trace) {
    if (r.delta_power <= level) {
      if (first < 0) first = r.q + 1;
    } else {
      first = -1;
    }
  }
  return first;
}

}  // namespace rswipt::admm
