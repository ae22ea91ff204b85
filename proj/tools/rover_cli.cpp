#include <csignal>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#include <spdlog/cfg/helpers.h>
#include <spdlog/spdlog.h>

#include "rover/cli.hpp"
#include "rover/net/ws_service.hpp"

namespace {

void configure_logging() {
  spdlog::set_level(spdlog::level::info);
  if (const char* levels = std::getenv("ROVER_LOG")) spdlog::cfg::helpers::load_levels(levels);
}

int serve(const std::string& scenario_path, std::uint16_t port, const std::string& out_dir) {
  using namespace rover;
  const auto text = read_file(scenario_path);
  if (!text) {
    std::cerr << "error: cannot read scenario '" << scenario_path << "'\n";
    return exit_code::kMissingInput;
  }
  std::optional<Gateway> gateway;
  try {
    gateway.emplace(load_scenario(*text), scenario_path, std::filesystem::path(out_dir));
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code::kInvalidInput;
  }

  net::asio::io_context io;
  net::WsService service(io, *gateway, {net::asio::ip::make_address("0.0.0.0"), port});
  net::asio::signal_set signals(io, SIGINT, SIGTERM);
  signals.async_wait([&](const boost::system::error_code&, int) {
    spdlog::info("shutting down");
    service.stop();
    io.stop();
  });
  service.start();
  spdlog::info("serving '{}' on ws://0.0.0.0:{} (runs under {})", gateway->scenario().name, service.port(), out_dir);
  io.run();
  gateway->close_run();
  return exit_code::kOk;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Gesture-controlled rescue rover simulator"};
  app.require_subcommand(1);

  rover::SimulateOptions sim;
  std::uint64_t seed = 0;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario headless against a gesture trace");
  simulate->add_option("--scenario", sim.scenario_path, "Scenario JSON")->required();
  simulate->add_option("--trace", sim.trace_path, "Gesture trace CSV (tick,x_g,y_g)")->required();
  simulate->add_option("--out", sim.out_dir, "Output directory for events.jsonl and metrics.json")->required();
  auto* seed_opt = simulate->add_option("--seed", seed, "Override the scenario seed");

  std::string serve_scenario;
  std::uint16_t port = 8765;
  std::string runs_dir = "runs";
  auto* serve_cmd = app.add_subcommand("serve", "Run the live WebSocket operator service");
  serve_cmd->add_option("--scenario", serve_scenario, "Scenario JSON")->required();
  serve_cmd->add_option("--port", port, "TCP port")->required();
  serve_cmd->add_option("--out", runs_dir, "Directory for persisted runs")->capture_default_str();

  std::string trace_path;
  auto* decode = app.add_subcommand("decode-trace", "Print drive-command transitions of a gesture trace");
  decode->add_option("trace", trace_path, "Gesture trace CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (*simulate) {
    if (*seed_opt) sim.seed = seed;
    return rover::cli_simulate(sim, std::cout, std::cerr);
  }
  if (*serve_cmd) return serve(serve_scenario, port, runs_dir);
  return rover::cli_decode_trace(trace_path, std::cout, std::cerr);
}
