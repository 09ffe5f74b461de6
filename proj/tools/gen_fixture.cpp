// Regenerates the bundled synthetic event fixture. The output is
// deterministic for a fixed seed, so the committed file can be verified.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "folkso/ingest.hpp"
#include "folkso/synth.hpp"

int main(int argc, char** argv) {
  CLI::App app{"write a synthetic hashtag event stream"};
  std::string output = "data/events_1k.jsonl";
  std::size_t events = 1000;
  std::uint64_t seed = 42;
  app.add_option("--output", output, "JSONL file to write")->capture_default_str();
  app.add_option("--events", events, "number of events")->capture_default_str();
  app.add_option("--seed", seed, "stream seed")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::ofstream out(output, std::ios::binary);
  if (!out) {
    std::cerr << "cannot open '" << output << "' for writing\n";
    return 1;
  }
  for (const auto& event : folkso::synth::generate_events(events, seed)) {
    out << folkso::serialize_event(event) << "\n";
  }
  if (!out.flush()) {
    std::cerr << "write to '" << output << "' failed\n";
    return 1;
  }
  return 0;
}
