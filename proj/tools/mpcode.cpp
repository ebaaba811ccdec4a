// mpcode: build, inspect, decode and simulate LP-decodable multipermutation codes.
//
// Exit codes: 0 success, 1 decode/simulation failure, 2 usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "multiperm/codes.hpp"
#include "multiperm/decode.hpp"
#include "multiperm/io.hpp"
#include "multiperm/simulate.hpp"
#include "multiperm/worked_examples.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_number_list(const std::string& text) {
  std::string normalized = text;
  for (char& c : normalized) {
    if (c == ',' || c == ';' || c == '(' || c == ')' || c == '[' || c == ']') c = ' ';
  }
  std::istringstream in(normalized);
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: \"" + token + "\"");
    }
    if (used != token.size()) throw UsageError("not a number: \"" + token + "\"");
    out.push_back(v);
  }
  return out;
}

std::string format_symbols(const std::vector<int>& s) {
  std::string out = "(";
  for (std::size_t k = 0; k < s.size(); ++k) out += (k ? "," : "") + std::to_string(s[k]);
  return out + ")";
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

int cmd_enumerate(const std::string& spec_path, std::size_t show, std::uint64_t limit) {
  const auto spec = multiperm::load_code_spec(spec_path);
  multiperm::Codebook book;
  try {
    book = multiperm::enumerate_codebook(spec, limit);
  } catch (const multiperm::EnumerationTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  std::cout << book.size() << " codewords";
  if (book.size() >= 2) {
    std::cout << ", d_inf_min = " << format_number(multiperm::min_distance(book, multiperm::Metric::Chebyshev, spec.t))
              << ", d_H_min = " << format_number(multiperm::min_distance(book, multiperm::Metric::Hamming, spec.t));
  }
  std::cout << '\n';
  for (std::size_t k = 0; k < book.size() && k < show; ++k) std::cout << k << ' ' << format_symbols(book.symbols(k)) << '\n';
  return 0;
}

int cmd_decode(const std::string& spec_path, const std::vector<std::string>& channel_args, const std::string& received) {
  const auto spec = multiperm::load_code_spec(spec_path);
  const auto channel = multiperm::parse_channel(channel_args.at(0));
  const auto y = parse_number_list(received);
  if (y.size() != spec.n()) {
    throw UsageError("received word has " + std::to_string(y.size()) + " entries, code length is " + std::to_string(spec.n()));
  }
  std::optional<double> param;
  if (channel_args.size() > 1) param = parse_number_list(channel_args[1]).at(0);
  if (channel != multiperm::ChannelKind::Chebyshev && !param) throw UsageError("--channel awgn|qsc needs a parameter");

  multiperm::DecodeResult res = [&] {
    switch (channel) {
      case multiperm::ChannelKind::Awgn:
        return multiperm::decode_memoryless(spec, multiperm::cost_matrix_awgn(y, spec.t, *param));
      case multiperm::ChannelKind::Qsc: {
        std::vector<int> symbols;
        for (double v : y) {
          if (v != static_cast<double>(static_cast<int>(v)) || v < 1 || v > static_cast<double>(spec.m())) {
            throw UsageError("q-SC received symbols must be integers in 1.." + std::to_string(spec.m()));
          }
          symbols.push_back(static_cast<int>(v));
        }
        return multiperm::decode_memoryless(spec, multiperm::decoding_costs_qsc(symbols, *param, spec.m()));
      }
      case multiperm::ChannelKind::Chebyshev:
        return multiperm::decode_chebyshev(spec, y);
    }
    throw std::logic_error("unhandled channel");
  }();

  auto doc = multiperm::decode_result_to_json(res);
  doc["channel"] = multiperm::to_string(channel);
  std::vector<double> levels;
  for (int s : res.decoded.symbols) levels.push_back(spec.t[static_cast<std::size_t>(s - 1)]);
  doc["decoded_levels"] = levels;
  std::cout << doc.dump() << '\n';
  return 0;
}

int cmd_simulate(const std::string& spec_path, const multiperm::SimulationConfig& cfg, const std::string& out_path) {
  const auto spec = multiperm::load_code_spec(spec_path);
  const auto book = multiperm::enumerate_codebook(spec);
  if (book.empty()) {
    std::cerr << "error: code is empty\n";
    return kExitFailure;
  }
  std::ofstream file;
  std::ostream* csv = nullptr;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "error: cannot write " << out_path << '\n';
      return kExitFailure;
    }
    csv = &file;
  }
  const auto summaries = multiperm::run_simulation(spec, book, cfg, csv);
  for (const auto& s : summaries) {
    std::cout << "channel=" << multiperm::to_string(s.channel) << " param=" << format_number(s.param)
              << " trials=" << s.trials << " word_errors=" << s.word_errors << " wer=" << format_number(s.word_error_rate())
              << " certificate_rate=" << format_number(s.certificate_rate()) << '\n';
  }
  return 0;
}

int cmd_worked_examples(double eps_int) {
  const auto checks = multiperm::run_worked_examples(eps_int);
  bool all = true;
  for (const auto& c : checks) {
    std::cout << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << " [" << c.detail << ']';
    std::cout << '\n';
    all = all && c.passed;
  }
  return all ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LP-decodable multipermutation codes"};
  app.require_subcommand(1);

  std::string spec_path;
  std::size_t show = 10;
  std::uint64_t limit = multiperm::kDefaultEnumerationLimit;
  auto* enumerate = app.add_subcommand("enumerate", "enumerate a code and print its size and minimum distances");
  enumerate->add_option("spec", spec_path, "code spec JSON file")->required();
  enumerate->add_option("--max", show, "number of codewords to list")->capture_default_str();
  enumerate->add_option("--limit", limit, "refuse when |M(r)| exceeds this")->capture_default_str();

  std::vector<std::string> channel_args;
  std::string received;
  auto* decode = app.add_subcommand("decode", "LP-decode one received word and print the result as JSON");
  decode->add_option("spec", spec_path, "code spec JSON file")->required();
  decode->add_option("--channel", channel_args, "awgn SIGMA | qsc P | chebyshev")->required()->expected(1, 2);
  decode->add_option("--received", received, "received word, comma or space separated")->required();

  multiperm::SimulationConfig sim;
  std::string sim_channel = "awgn";
  std::string grid;
  std::string out_path;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo word error and certificate rates");
  simulate->add_option("spec", spec_path, "code spec JSON file")->required();
  simulate->add_option("--channel", sim_channel, "awgn | qsc | chebyshev")->capture_default_str();
  simulate->add_option("--param-grid", grid, "comma separated sigma or p values")->required();
  simulate->add_option("--trials", sim.trials, "trials per grid point")->capture_default_str();
  simulate->add_option("--seed", sim.seed, "base seed")->capture_default_str();
  simulate->add_option("--out", out_path, "CSV output path");
  simulate->add_flag("--union-bound", sim.union_bound, "append the AWGN union bound column");

  double eps_int = multiperm::kIntegralityTolerance;
  auto* examples = app.add_subcommand("worked-examples", "run the golden worked-example checks");
  examples->add_option("--eps-int", eps_int, "integrality tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*enumerate) return cmd_enumerate(spec_path, show, limit);
    if (*decode) return cmd_decode(spec_path, channel_args, received);
    if (*simulate) {
      sim.channel = multiperm::parse_channel(sim_channel);
      sim.params = parse_number_list(grid);
      return cmd_simulate(spec_path, sim, out_path);
    }
    if (*examples) return cmd_worked_examples(eps_int);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const multiperm::SpecFormatError& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}
