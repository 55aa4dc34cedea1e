#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include <dagiso/io.hpp>

int main(int argc, char** argv) {
  CLI::App app{
      "dagiso: decides whether a set of conditional independence statements\n"
      "is exactly the d-separation model of some dag, and prints a witness\n"
      "dag when one exists."};

  dagiso::RunConfig config;
  std::string mode = "backtrack";
  std::string emit = "text";

  app.add_option("input", config.input_path,
                 "statement file ('-' or omitted reads standard input)");
  app.add_flag("--basis", config.basis_mode,
               "treat the input as a basis and close it under the semigraphoid axioms");
  app.add_option("--mode", mode, "phase 2 search mode")
      ->check(CLI::IsMember({"backtrack", "failfast"}))
      ->capture_default_str();
  app.add_option("--emit", emit, "output format")
      ->check(CLI::IsMember({"json", "dot", "text"}))
      ->capture_default_str();
  app.add_flag("--trace", config.trace, "include the orientation/rule event log");
  app.add_flag("--check-oracle", config.check_oracle,
               "cross-check the verdict against exhaustive search (up to 4 variables)");
  app.add_option("--closure-cap", config.closure_cap,
                 "largest universe accepted in --basis mode")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  config.phase2_mode =
      mode == "failfast" ? dagiso::Phase2Mode::FailFast : dagiso::Phase2Mode::Backtrack;
  config.emit = emit == "json"  ? dagiso::EmitFormat::Json
                : emit == "dot" ? dagiso::EmitFormat::Dot
                                : dagiso::EmitFormat::Text;

  return dagiso::run(config, std::cout, std::cerr);
}
