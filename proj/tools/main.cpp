#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "berkline/errors.hpp"
#include "commands.hpp"

namespace {

const std::map<std::string, std::vector<std::string>> kCommands{
    {"tree", {"build", "spectrum", "axioms", "morphism", "tower"}},
    {"dendrite", {"classify", "admissible"}},
    {"shift", {"verify-relations", "partition", "pf", "pvm", "spectral-integral", "cyclic"}},
    {"group", {"orbit", "delta", "poincare", "ps-measure", "quasiconformal", "kms", "hamiltonian"}},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations on the Berkovich projective line"};
  app.require_subcommand(1);
  std::string config_path, out_dir = ".";
  std::size_t threads = 1;
  std::uint64_t seed = 0;
  app.add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "artifact directory");
  app.add_option("--threads", threads, "worker threads for orbit enumeration")->check(CLI::PositiveNumber);
  app.add_option("--seed", seed, "seed for sampled checks");

  std::string module, sub;
  for (const auto& [name, subs] : kCommands) {
    auto* m = app.add_subcommand(name)->require_subcommand(1)->fallthrough();
    for (const auto& s : subs)
      m->add_subcommand(s)->fallthrough()->callback([&module, &sub, name = name, s = s] {
        module = name;
        sub = s;
      });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kConfigError;
  }

  cli::Context ctx;
  ctx.out = out_dir;
  ctx.threads = threads;
  ctx.seed = seed;
  try {
    std::ifstream in(config_path);
    ctx.config = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config: " << e.what() << "\n";
    return cli::kConfigError;
  }

  try {
    if (module == "tree") return cli::run_tree(sub, ctx);
    if (module == "dendrite") return cli::run_dendrite(sub, ctx);
    if (module == "shift") return cli::run_shift(sub, ctx);
    return cli::run_group(sub, ctx);
  } catch (const berkline::ParseError& e) {
    std::cerr << e.what() << "\n";
    return cli::kConfigError;
  } catch (const berkline::CompositeModulus& e) {
    std::cerr << e.what() << "\n";
    return cli::kConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config: " << e.what() << "\n";
    return cli::kConfigError;
  } catch (const berkline::Error& e) {
    std::cerr << e.what() << "\n";
    return cli::kComputeError;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return cli::kComputeError;
  }
}
