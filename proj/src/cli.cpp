#include "hypcheck/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "hypcheck/error.hpp"

namespace hypcheck {

int exit_code_for(const std::vector<LemmaReport>& reports) {
  bool fail = false, inconclusive = false;
  for (const LemmaReport& r : reports) {
    if (r.verdict == Verdict::kFail) fail = true;
    if (r.verdict == Verdict::kInfeasible || r.verdict == Verdict::kIndeterminate) inconclusive = true;
  }
  if (fail) return kExitFail;
  if (inconclusive) return kExitInconclusive;
  return kExitPass;
}

namespace {

const RegistryEntry& lookup(const std::string& id) {
  for (const RegistryEntry& e : registry()) {
    if (e.id == id) return e;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown lemma id '" + id + "'");
}

std::vector<std::string> expand(const std::vector<std::string>& lemmas) {
  std::vector<std::string> out;
  for (const std::string& id : lemmas) {
    if (id == "all") {
      for (const RegistryEntry& e : registry()) out.push_back(e.id);
    } else {
      out.push_back(lookup(id).id);
    }
  }
  return out;
}

void validate(const RunConfig& c) {
  if (c.n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be at least 1");
  if (c.d < 4) throw Error(ErrorCode::kInvalidArgument, "d must be at least 4");
  if (c.trials == 0) throw Error(ErrorCode::kInvalidArgument, "trials must be positive");
  if (c.jobs == 0) throw Error(ErrorCode::kInvalidArgument, "jobs must be positive");
  if (c.seeds.empty()) throw Error(ErrorCode::kInvalidArgument, "need at least one seed");
  if (c.lemmas.empty()) throw Error(ErrorCode::kInvalidArgument, "need a lemma id or 'all'");
}

std::string dims_text(const LemmaReport& r) {
  if (r.lemma == "incidence") {
    for (const auto& [name, value] : r.dims) {
      if (name == "incidence_dimension") {
        const unsigned m = r.params.value("m", 0u);
        return "incidence_dimension(n=" + std::to_string(r.n) + ", d=" + std::to_string(r.d) +
               ", m=" + std::to_string(m) + ") = " + std::to_string(value);
      }
    }
  }
  std::string out;
  for (const auto& [name, value] : r.dims) {
    if (!out.empty()) out += ' ';
    out += name + '=' + std::to_string(value);
  }
  return out;
}

unsigned json_unsigned(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned()) throw Error(ErrorCode::kParse, std::string("config key '") + key + "' must be a natural number");
  return v.get<unsigned>();
}

// Fills fields not given on the command line from a JSON object.
void merge_config(const std::string& path, RunConfig& c, const std::function<bool(const char*)>& given,
                  bool& d_set) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot open config " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw Error(ErrorCode::kParse, "config must be a JSON object");
  static const std::vector<std::string> known{"n", "d", "m", "seeds", "seed", "trials", "jobs", "lemmas", "json"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorCode::kParse, "unknown config key '" + key + "'");
    }
  }
  try {
    if (j.contains("n") && !given("--n")) c.n = json_unsigned(j, "n");
    if (j.contains("d") && !given("--d")) {
      c.d = json_unsigned(j, "d");
      d_set = true;
    }
    if (j.contains("m") && !given("--m")) c.m = json_unsigned(j, "m");
    if (j.contains("trials") && !given("--trials")) c.trials = json_unsigned(j, "trials");
    if (j.contains("jobs") && !given("--jobs")) c.jobs = json_unsigned(j, "jobs");
    if (!given("--seed")) {
      if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
      else if (j.contains("seed")) c.seeds = {j.at("seed").get<std::uint64_t>()};
    }
    if (j.contains("lemmas") && !given("lemma")) c.lemmas = j.at("lemmas").get<std::vector<std::string>>();
    if (j.contains("json") && !given("--json")) c.output_path = j.at("json").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParse, std::string("config: ") + e.what());
  }
}

}  // namespace

std::vector<LemmaReport> run(const RunConfig& config) {
  validate(config);
  const std::vector<std::string> ids = expand(config.lemmas);
  std::vector<std::pair<const RegistryEntry*, std::uint64_t>> tasks;
  for (const std::string& id : ids) {
    for (std::uint64_t seed : config.seeds) tasks.emplace_back(&lookup(id), seed);
  }
  const VerifyParams params{config.n, config.d, config.m, config.trials};

  std::vector<LemmaReport> reports(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < tasks.size(); k = next++) {
      try {
        reports[k] = run_lemma(*tasks[k].first, params, tasks[k].second);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::min<std::size_t>(config.jobs, std::max<std::size_t>(tasks.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

void print_summary(const std::vector<LemmaReport>& reports, std::ostream& out) {
  std::vector<std::array<std::string, 5>> rows{{"lemma", "seed", "verdict", "ms", "dims"}};
  for (const LemmaReport& r : reports) {
    rows.push_back({r.lemma, std::to_string(r.seed), std::string(to_string(r.verdict)),
                    std::to_string(static_cast<long long>(r.elapsed_ms)), dims_text(r)});
  }
  std::array<std::size_t, 5> width{};
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      std::string cell = row[c];
      if (c + 1 < row.size()) cell.resize(width[c] + 2, ' ');
      line += cell;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
  std::size_t counts[5] = {};
  for (const LemmaReport& r : reports) ++counts[static_cast<int>(r.verdict)];
  out << reports.size() << " runs:";
  for (Verdict v : {Verdict::kPass, Verdict::kFail, Verdict::kIndeterminate, Verdict::kInfeasible, Verdict::kSkipped}) {
    if (counts[static_cast<int>(v)]) out << ' ' << to_string(v) << '=' << counts[static_cast<int>(v)];
  }
  out << '\n';
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks of the lemma registry for the Fermat-type family", "hypcheck"};
  app.require_subcommand(1);
  CLI::App* verify = app.add_subcommand("verify", "Run lemma checks");

  RunConfig config;
  std::vector<std::string> lemmas;
  std::vector<std::uint64_t> seeds;
  std::string json_path, config_path;
  verify->add_option("lemma", lemmas, "Lemma id(s) or 'all'");
  verify->add_option("--n", config.n, "Dimension parameter n");
  verify->add_option("--d", config.d, "Degree d (default 2n+2)");
  verify->add_option("--m", config.m, "Multiplicity for incidence/tangency (default n+1)");
  verify->add_option("--seed", seeds, "Seed; repeat for several")->take_all();
  verify->add_option("--trials", config.trials, "Samples per generic claim");
  verify->add_option("--jobs", config.jobs, "Concurrent runs");
  verify->add_option("--json", json_path, "Write JSON Lines reports to PATH");
  verify->add_option("--config", config_path, "JSON config; flags take precedence");

  auto usage = [&](const std::string& message) {
    err << "error: " << message << '\n' << app.help();
    return static_cast<int>(kExitUsage);
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    return usage(e.what());
  }

  const auto given = [&](const char* name) { return verify->get_option(name)->count() > 0; };
  bool d_set = given("--d");
  if (!lemmas.empty()) config.lemmas = lemmas;
  if (!seeds.empty()) config.seeds = seeds;
  if (!json_path.empty()) config.output_path = json_path;

  std::vector<LemmaReport> reports;
  try {
    if (!config_path.empty()) merge_config(config_path, config, given, d_set);
    if (!d_set) config.d = 2 * config.n + 2;
    reports = run(config);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidArgument || e.code() == ErrorCode::kParse) return usage(e.what());
    throw;
  }

  if (config.output_path) {
    std::ofstream file(*config.output_path);
    if (!file) {
      err << "error: cannot write " << *config.output_path << '\n';
      return kExitUsage;
    }
    for (const LemmaReport& r : reports) file << to_json(r).dump() << '\n';
  }
  print_summary(reports, out);
  return exit_code_for(reports);
}

}  // namespace hypcheck
