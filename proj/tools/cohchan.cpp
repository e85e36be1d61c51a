#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "cohchan/commands.hpp"

namespace {

using namespace cohchan;

void emit(const std::string& text, const std::string& output) {
  if (output.empty() || output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(output);
  if (!out) throw InvalidInputError("cannot write " + output);
  out << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherence monotones of quantum channels"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  ComputeOptions compute_opts;
  std::string compute_out;
  auto* compute = app.add_subcommand("compute", "Evaluate a coherence measure on a channel");
  compute->add_option("--channel", compute_opts.channel_path, "ChannelDocument (JSON)")->required();
  compute->add_option("--measure", compute_opts.measure, "urs | sandwiched-pure | sandwiched-roof");
  compute->add_option("--r", compute_opts.r, "Order r");
  compute->add_option("--s", compute_opts.s, "Second parameter s (urs only)");
  compute->add_option("--seed", compute_opts.seed, "Seed for randomized searches");
  compute->add_option("--incoherence-tol", compute_opts.incoherence_tol,
                      "Off-diagonal tolerance for the incoherent-channel flag");
  compute->add_option("--output", compute_out, "Write the ResultDocument here");

  SweepOptions sweep_opts;
  std::string sweep_channel;
  std::string sweep_format = "csv";
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "Tabulate closed form against the full pipeline");
  sweep->add_option("--param", sweep_opts.param, "gamma | r | s");
  sweep->add_option("--from", sweep_opts.from);
  sweep->add_option("--to", sweep_opts.to);
  sweep->add_option("--steps", sweep_opts.steps, "Number of grid points");
  sweep->add_option("--measure", sweep_opts.measure, "urs | sandwiched-pure");
  sweep->add_option("--r", sweep_opts.r);
  sweep->add_option("--s", sweep_opts.s);
  sweep->add_option("--alpha", sweep_opts.unitary.alpha);
  sweep->add_option("--beta", sweep_opts.unitary.beta);
  sweep->add_option("--gamma", sweep_opts.unitary.gamma);
  sweep->add_option("--delta", sweep_opts.unitary.delta);
  sweep->add_option("--channel", sweep_channel, "Sweep r or s on this channel instead");
  sweep->add_option("--format", sweep_format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--seed", sweep_opts.seed);
  sweep->add_option("--output", sweep_out);

  VerifyOptions verify_opts;
  std::size_t verify_samples = 0;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Run randomized property checks");
  verify->add_option("--suite", verify_opts.suite,
                     "oracle | theorem2 | bounds | convexity | faithfulness | postprocessing | all");
  verify->add_option("--seed", verify_opts.seed);
  auto* samples_opt = verify->add_option("--samples", verify_samples, "Override the sample count");
  verify->add_option("--r", verify_opts.r);
  verify->add_option("--s", verify_opts.s);
  verify->add_option("--output", verify_out);

  ExampleOptions example_opts;
  std::string example_out;
  auto* example = app.add_subcommand("example", "Write a built-in ChannelDocument");
  example->add_option("name", example_opts.name,
                      "hadamard | dephasing | identity | unitary | amplitude-damping")
      ->required();
  example->add_option("--gamma", example_opts.gamma,
                      "Rotation angle (unitary) or damping rate (amplitude-damping)");
  example->add_option("--alpha", example_opts.alpha);
  example->add_option("--beta", example_opts.beta);
  example->add_option("--delta", example_opts.delta);
  example->add_option("--output", example_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_code::kMalformedInput;
  }

  try {
    if (*compute) {
      emit(dump(to_json(cmd_compute(compute_opts))), compute_out);
    } else if (*sweep) {
      if (!sweep_channel.empty()) sweep_opts.channel_path = sweep_channel;
      const SweepTable table = cmd_sweep(sweep_opts);
      if (sweep_format == "json") {
        emit(dump(to_json(table)), sweep_out);
      } else {
        std::ostringstream os;
        write_csv(table, os);
        emit(os.str(), sweep_out);
      }
    } else if (*verify) {
      if (samples_opt->count() > 0) verify_opts.samples = verify_samples;
      const auto reports = cmd_verify(verify_opts);
      const json doc = to_json(reports);
      emit(dump(doc), verify_out);
      for (const auto& r : reports)
        std::cerr << (r.passed ? "PASS " : "FAIL ") << r.name << " (max violation "
                  << r.max_violation << ", tolerance " << r.tolerance << ")\n";
      return doc["pass"].get<bool>() ? exit_code::kSuccess : exit_code::kPropertyFailure;
    } else if (*example) {
      emit(dump(cmd_example(example_opts)), example_out);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
  return exit_code::kSuccess;
}
