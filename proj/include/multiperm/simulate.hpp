#pragma once

// Monte Carlo channel simulation with LP decoding and CSV trial records.

#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "multiperm/channels.hpp"
#include "multiperm/codes.hpp"
#include "multiperm/decode.hpp"

namespace multiperm {

/// awgn / chebyshev add Gaussian noise to t X (chebyshev decodes with the
/// Chebyshev LP); qsc passes the symbol string through the q-ary symmetric channel.
enum class ChannelKind { Awgn, Qsc, Chebyshev };

inline const char* to_string(ChannelKind k) {
  switch (k) {
    case ChannelKind::Awgn:
      return "awgn";
    case ChannelKind::Qsc:
      return "qsc";
    case ChannelKind::Chebyshev:
      return "chebyshev";
  }
  return "?";
}

inline ChannelKind parse_channel(const std::string& name) {
  if (name == "awgn") return ChannelKind::Awgn;
  if (name == "qsc") return ChannelKind::Qsc;
  if (name == "chebyshev") return ChannelKind::Chebyshev;
  throw std::invalid_argument("unknown channel \"" + name + "\" (expected awgn, qsc or chebyshev)");
}

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr const char* kCsvHeader = "trial,seed,channel,param,codeword_index,certified,decoded_index,word_error";

struct SimulationRecord {
  std::size_t trial;
  std::uint64_t seed;
  ChannelKind channel;
  double param;
  std::size_t codeword_index;
  bool certified;
  long long decoded_index;
  bool word_error;
  std::optional<double> union_bound;
};

struct GridSummary {
  ChannelKind channel;
  double param;
  std::size_t trials = 0;
  std::size_t word_errors = 0;
  std::size_t certified = 0;

  double word_error_rate() const { return trials ? static_cast<double>(word_errors) / static_cast<double>(trials) : 0.0; }
  double certificate_rate() const { return trials ? static_cast<double>(certified) / static_cast<double>(trials) : 0.0; }
};

struct SimulationConfig {
  ChannelKind channel = ChannelKind::Awgn;
  std::vector<double> params;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  bool union_bound = false;
};

/// Cost matrix for decoding a q-SC output. At p = 0 the likelihood is
/// degenerate, so the 0/1 mismatch cost (same argmin as any admissible p) is used.
inline CostMatrix decoding_costs_qsc(std::span<const int> y, double p, std::size_t m) {
  if (p == 0.0) {
    RealMatrix g = RealMatrix::Ones(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(y.size()));
    for (std::size_t j = 0; j < y.size(); ++j) g(y[j] - 1, static_cast<Eigen::Index>(j)) = 0.0;
    return CostMatrix(std::move(g));
  }
  return cost_matrix_qsc(y, p, m);
}

/// Runs one trial: pick a codeword uniformly, transmit, decode.
inline SimulationRecord simulate_trial(const CodeSpec& spec, const Codebook& book, ChannelKind channel, double param,
                                       std::size_t trial, std::uint64_t trial_seed) {
  Rng pick(stream_seed(trial_seed, 0));
  std::uniform_int_distribution<std::size_t> index(0, book.size() - 1);
  const std::size_t k = index(pick);
  const auto& x = book[k];
  const std::uint64_t noise_seed = stream_seed(trial_seed, 1);

  DecodeResult res = [&] {
    switch (channel) {
      case ChannelKind::Awgn: {
        const auto y = sample_awgn(vector_from_matrix(x, spec.t), param, noise_seed);
        return decode_memoryless(spec, cost_matrix_awgn(y, spec.t, param));
      }
      case ChannelKind::Qsc: {
        const auto sent = book.symbols(k);
        const auto y = sample_qsc(sent, param, spec.m(), noise_seed);
        return decode_memoryless(spec, decoding_costs_qsc(y, param, spec.m()));
      }
      case ChannelKind::Chebyshev: {
        const auto y = sample_awgn(vector_from_matrix(x, spec.t), param, noise_seed);
        return decode_chebyshev(spec, y);
      }
    }
    throw std::logic_error("unhandled channel");
  }();

  long long decoded_index = -1;
  if (res.decoded.valid) {
    if (const auto found = book.find(res.decoded.symbols)) decoded_index = static_cast<long long>(*found);
  }
  return {trial, trial_seed, channel, param, k, res.certificate, decoded_index,
          res.decoded.symbols != book.symbols(k), std::nullopt};
}

inline void write_csv_preamble(std::ostream& out, const SimulationConfig& cfg) {
  out << "# schema_version=" << kCsvSchemaVersion << " rng=" << kRngAlgorithm << " seed=" << cfg.seed << '\n';
  out << kCsvHeader << (cfg.union_bound ? ",union_bound" : "") << '\n';
}

inline void write_csv_record(std::ostream& out, const SimulationRecord& r) {
  std::ostringstream line;
  line << std::setprecision(17);
  line << r.trial << ',' << r.seed << ',' << to_string(r.channel) << ',' << r.param << ',' << r.codeword_index << ','
       << (r.certified ? 1 : 0) << ',' << r.decoded_index << ',' << (r.word_error ? 1 : 0);
  if (r.union_bound) line << ',' << *r.union_bound;
  out << line.str() << '\n';
}

/// Runs every grid point in order; records go to csv (if given) in trial order.
inline std::vector<GridSummary> run_simulation(const CodeSpec& spec, const Codebook& book, const SimulationConfig& cfg,
                                               std::ostream* csv) {
  if (book.empty()) throw std::invalid_argument("cannot simulate an empty code");
  if (cfg.params.empty()) throw std::invalid_argument("parameter grid is empty");
  if (cfg.union_bound && cfg.channel != ChannelKind::Awgn) throw std::invalid_argument("the union bound column needs the awgn channel");
  if (csv) write_csv_preamble(*csv, cfg);
  std::vector<GridSummary> summaries;
  for (std::size_t g = 0; g < cfg.params.size(); ++g) {
    const double param = cfg.params[g];
    if (cfg.channel == ChannelKind::Qsc && !(param >= 0.0 && param < static_cast<double>(spec.m() - 1) / static_cast<double>(spec.m()))) {
      throw std::invalid_argument("q-SC parameter must lie in [0, (m-1)/m)");
    }
    if (cfg.channel != ChannelKind::Qsc && !(param > 0.0)) throw std::invalid_argument("sigma must be positive");
    GridSummary summary{cfg.channel, param};
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      const std::uint64_t trial_seed = stream_seed(cfg.seed, g * cfg.trials + trial);
      auto rec = simulate_trial(spec, book, cfg.channel, param, trial, trial_seed);
      if (cfg.union_bound && cfg.channel == ChannelKind::Awgn) {
        rec.union_bound = union_bound_awgn(book, book[rec.codeword_index], spec.t, param);
      }
      ++summary.trials;
      summary.word_errors += rec.word_error ? 1 : 0;
      summary.certified += rec.certified ? 1 : 0;
      if (csv) write_csv_record(*csv, rec);
    }
    summaries.push_back(summary);
  }
  return summaries;
}

}  // namespace multiperm
