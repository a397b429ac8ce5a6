#include <CLI11.hpp>

#include "qwave/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"quaternionic wavelet frame workbench"};
  app.require_subcommand(1);

  qwave::CliInvocation inv;
  const struct {
    const char* name;
    const char* desc;
  } subs[] = {
      {"grid", "enumerate the dilation-rotation-translation grid and check the ring-area bound"},
      {"analyze", "wavelet-analyze a field (from --set input=... or a seeded band-limited one)"},
      {"bounds", "estimate frame bounds and write the verdict report"},
      {"sweep", "frame-bound study across sweep.betas"},
      {"lift", "quaternionic lifting demo on the DFT basis fixture"},
      {"reconstruct", "conjugate-gradient reconstruction from wavelet coefficients"},
      {"report", "full study: bounds, sweep, reconstruction, lifted preservation"},
  };
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.desc);
    sub->add_option("--config", inv.config_path, "flat JSON config file");
    sub->add_option("--set", inv.overrides, "dotted.key=value override (repeatable)");
    sub->add_option("--out", inv.out, "output directory");
    sub->add_option("--threads", inv.threads, "worker threads");
    sub->add_option("--seed", inv.seed, "seed for probe directions and generated fields");
    sub->callback([&inv, name = s.name] { inv.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  return qwave::dispatch(inv);
}
