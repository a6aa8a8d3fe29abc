#include "aladin/app/csv.hpp"

#include <cstdio>
#include <stdexcept>

#include "aladin/numkernel.hpp"

namespace aladin::app {

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

Eigen::VectorXd pattern_reference(const Eigen::VectorXd& x) {
  if (x.size() % 2 != 0) {
    throw std::invalid_argument{"pattern_reference: odd dimension"};
  }
  const Eigen::Index k = x.size() / 2;
  Eigen::VectorXd ref = Eigen::VectorXd::Zero(x.size());
  for (Eigen::Index i = 0; i < k; ++i) {
    if (x(i) >= x(k + i)) {
      ref(i) = 1.0;
    } else {
      ref(k + i) = 1.0;
    }
  }
  return ref;
}

namespace {

std::string optional_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string{};
}

}  // namespace

void write_bench_csv(std::ostream& out, const std::vector<IterationRecord>& records,
                     const std::optional<Eigen::VectorXd>& reference) {
  out << kBenchHeader << '\n';
  for (const auto& rec : records) {
    std::optional<double> x_error = rec.x_error;
    if (reference) {
      x_error = (rec.x - *reference).norm();
    }
    out << rec.k << ',' << format_number(rec.mu) << ',' << format_number(rec.rho)
        << ',' << format_number(rec.objective) << ','
        << format_number(rec.comp_residual) << ','
        << optional_number(rec.consensus_residual) << ','
        << optional_number(rec.local_eq_residual) << ','
        << format_number(rec.step_norm) << ',' << optional_number(x_error) << ','
        << rec.inner_iters << ',' << format_number(rec.wall_time_s) << '\n';
  }
}

void write_trace_csv(std::ostream& out, const MpccOracle& oracle,
                     const Eigen::VectorXd& x0,
                     const std::vector<IterationRecord>& records) {
  if (x0.size() != 2) {
    throw std::invalid_argument{"write_trace_csv: expects a 2-D problem"};
  }
  out << kTraceHeader << '\n';
  out << 0 << ',' << format_number(x0(0)) << ',' << format_number(x0(1)) << ','
      << format_number(oracle.eval_f(x0)) << ','
      << format_number(inf_norm(oracle.eval_g(x0))) << '\n';
  for (const auto& rec : records) {
    out << rec.k << ',' << format_number(rec.x(0)) << ',' << format_number(rec.x(1))
        << ',' << format_number(rec.objective) << ','
        << format_number(rec.comp_residual) << '\n';
  }
}

}  // namespace aladin::app
